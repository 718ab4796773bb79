"""Monte Carlo harness: random column errors through the decoder.

Every trial draws from its own PCG64 stream seeded by
``SeedSequence(seed, spawn_key=(trial,))``, so serial and parallel runs give
identical tallies.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from ..irs.codec import DEFAULT_STRATEGY, CodeSpec, decode, encode
from .bounds import TOutOfRange, bound_roth_vontobel, bound_ssb, max_radius
from .condition import error_rank, partial_inverse_condition


class ErrorModelError(ValueError):
    pass


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def parse_error_model(text: str):
    """``uniform`` or ``rank:<r>``; returns (name, r)."""
    if text == "uniform":
        return "uniform", None
    if text.startswith("rank:"):
        try:
            r = int(text[5:])
        except ValueError:
            raise ErrorModelError(f"bad rank in {text!r}") from None
        if r < 1:
            raise ErrorModelError("rank must be >= 1")
        return "rank", r
    raise ErrorModelError(f"unknown error model {text!r}; use uniform or rank:<r>")


def _nonzero_vector(rng, q, L):
    while True:
        v = [int(x) for x in rng.integers(0, q, L)]
        if any(v):
            return v


def sample_error(rng: np.random.Generator, code: CodeSpec, t: int, model: str = "uniform") -> list:
    """L x n error array with exactly t nonzero columns.

    ``uniform``: independent uniform nonzero columns.  ``rank:r``: columns
    B*c_l with B a random L x r matrix of rank r and the c_l nonzero and
    spanning F^r, so the array has rank exactly r.
    """
    F, n, L, q = code.field, code.n, code.L, code.field.q
    name, r = parse_error_model(model)
    if not 0 <= t <= n:
        raise TOutOfRange(f"t = {t} outside [0, {n}]")
    pos = sorted(int(x) for x in rng.choice(n, t, replace=False))
    E = [[0] * n for _ in range(L)]
    if name == "uniform":
        for l in pos:
            col = _nonzero_vector(rng, q, L)
            for i in range(L):
                E[i][l] = col[i]
        return E
    if r > L or r > t:
        raise ErrorModelError(f"rank {r} impossible with L = {L}, t = {t}")
    while True:
        B = [[int(x) for x in rng.integers(0, q, r)] for _ in range(L)]
        if error_rank(F, B) == r:
            break
    while True:
        cs = [_nonzero_vector(rng, q, r) for _ in pos]
        if error_rank(F, cs) == r:
            break
    for l, c in zip(pos, cs):
        for i in range(L):
            E[i][l] = F.dot(B[i], c)
    return E


def add_words(code: CodeSpec, a, b) -> list:
    F = code.field
    return [[F.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


@dataclass
class TrialOutcome:
    decoded: bool
    miscorrected: bool
    condition: bool | None
    consistent: bool
    paths_agree: bool | None


def run_trial(code: CodeSpec, t: int, seed: int, trial: int, error_model="uniform",
              strategy=DEFAULT_STRATEGY, recovery="interp", check_condition=False,
              zero_codeword=False, check_paths=False, debug=None, condition_variant="rs"):
    rng = trial_rng(seed, trial)
    F = code.field
    if zero_codeword:
        C = [[0] * code.n for _ in range(code.L)]
    else:
        msgs = [[int(x) for x in rng.integers(0, F.q, ki)] for ki in code.k]
        C = encode(code, msgs)
    E = sample_error(rng, code, t, error_model)
    Y = add_words(code, C, E)
    rep = decode(code, Y, strategy, recovery, check_paths=check_paths, debug=debug)
    decoded = rep.ok and rep.corrected == C
    mis = rep.ok and not decoded
    cond = None
    consistent = True
    if check_condition:
        cond = partial_inverse_condition(code, E, "error", variant=condition_variant, debug=debug)
        # the condition is sufficient for success
        consistent = decoded or not cond or t > code.n - code.k_max
    return TrialOutcome(decoded, mis, cond, consistent, rep.paths_agree if rep.ok else None)


@dataclass
class SimReport:
    trials: int
    t: int
    seed: int
    strategy: str
    error_model: str
    failures_decode: int
    miscorrections: int
    failures_condition: int | None
    consistency_violations: int
    path_disagreements: int | None
    empirical_rate: float
    bound_value: Fraction | None
    bound_float: float | None
    bound_note: str
    guaranteed_radius: int
    max_radius: int
    runtime: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bound_value"] = str(self.bound_value) if self.bound_value is not None else None
        return d


CSV_FIELDS = ("t", "strategy", "error_model", "trials", "failures_decode", "miscorrections",
              "failures_condition", "empirical_rate", "bound_value", "bound_float", "seed")


def _chunk(args):
    code, t, seed, trials, kw = args
    return [run_trial(code, t, seed, j, **kw) for j in trials]


def simulate(code: CodeSpec, t: int, trials: int, seed: int, error_model: str = "uniform",
             strategy: str = DEFAULT_STRATEGY, recovery: str = "interp",
             check_condition: bool = False, zero_codeword: bool = False,
             check_paths: bool = False, workers: int = 1, debug=None,
             condition_variant: str = "rs") -> SimReport:
    if not 0 <= t <= code.n:
        raise TOutOfRange(f"t = {t} outside [0, {code.n}]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    parse_error_model(error_model)
    kw = dict(error_model=error_model, strategy=strategy, recovery=recovery,
              check_condition=check_condition, zero_codeword=zero_codeword,
              check_paths=check_paths, debug=debug, condition_variant=condition_variant)
    start = time.perf_counter()
    if workers > 1:
        step = max(1, trials // (workers * 8))
        jobs = [(code, t, seed, range(a, min(a + step, trials)), kw) for a in range(0, trials, step)]
        with ProcessPoolExecutor(workers) as ex:
            outcomes = [o for part in ex.map(_chunk, jobs) for o in part]
    else:
        outcomes = [run_trial(code, t, seed, j, **kw) for j in range(trials)]
    runtime = time.perf_counter() - start
    fails = sum(1 for o in outcomes if not o.decoded and not o.miscorrected)
    mis = sum(1 for o in outcomes if o.miscorrected)
    cond = sum(1 for o in outcomes if o.condition is False) if check_condition else None
    incons = sum(1 for o in outcomes if not o.consistent)
    paths = sum(1 for o in outcomes if o.paths_agree is False) if check_paths else None
    bound, note = None, ""
    if t == 0:
        note = "no errors"
    elif code.L <= 1:
        note = "not applicable for L = 1"
    else:
        try:
            bound = bound_ssb(code.field.q, code.L, code.n, code.k_avg, t, code.k_max)
            note = "vacuous" if bound.vacuous else ""
        except TOutOfRange:
            note = "t beyond n - k_max"
    return SimReport(
        trials=trials, t=t, seed=seed, strategy=strategy, error_model=error_model,
        failures_decode=fails, miscorrections=mis, failures_condition=cond,
        consistency_violations=incons, path_disagreements=paths,
        empirical_rate=fails / trials,
        bound_value=bound.exact if bound else None, bound_float=bound.value if bound else None,
        bound_note=note,
        guaranteed_radius=bound_roth_vontobel(code.n, code.k_max, 1),
        max_radius=max_radius(code.n, code.L, code.k_max, code.k_avg),
        runtime=runtime,
    )
