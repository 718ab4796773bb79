"""Reverse Berlekamp-Massey style solvers for SPI instances.

One engine covers the four ways of producing the discrepancy kappa:

``rbm``        coefficient of x^d in b*Lambda mod m, recomputed each time
``monomial``   moduli are x^nu, so kappa is a single convolution coefficient
``qs``         quotient saving: keep Q_j with r_j = b_j*Lambda - Q_j*m_j
``rs``         remainder saving: keep r_j itself

and three stopping rules: plain SPI (stop when delta drops to 0), ``locate``
(shared, shrinking tau for error locating) and ``fixed`` (a fixed number of
kappa evaluations).  With ``debug`` every structural invariant of the
algorithm is checked as it runs.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass

from ..gf import Field
from ..poly import NEG_INF, Polynomial, _add, _deg, _divmod, _mul, _norm, _sub
from .core import SpiError, SpiInstance, SpiSolution, spi_validate

VARIANTS = ("rbm", "monomial", "qs", "rs")

# how often each labelled invariant has been checked in this process
ASSERTION_TALLY: Counter = Counter()


class NotMonomial(SpiError):
    pass


class MissingCounter(SpiError):
    pass


class InvariantViolation(AssertionError):
    def __init__(self, label, detail=""):
        super().__init__(f"invariant {label} violated{': ' + detail if detail else ''}")
        self.label = label


def debug_default() -> bool:
    return os.environ.get("SPIRS_DEBUG", "") not in ("", "0")


def _conv_coeff(F: Field, rx: list, y, d: int) -> int:
    """Coefficient d of x*y, where rx is x reversed."""
    nx = len(rx)
    lo = max(0, d - nx + 1)
    hi = min(len(y) - 1, d)
    if hi < lo:
        return 0
    base = nx - 1 - d
    return F.dot(y[lo:hi + 1], rx[base + lo:base + hi + 1])


def _combine(F: Field, c1: int, u: list, c2: int, sh: int, v: list) -> list:
    """c1*u - c2*x^sh*v."""
    out = F.scale(c1, u) if u else []
    if v and c2:
        need = sh + len(v) - len(out)
        if need > 0:
            out.extend([0] * need)
        F.addmul_into(out, sh, F.neg(c2), v)
    return _norm(out)


class SolverState:
    """Registers of the iterative solver; ``run()`` drives them to a stop.

    ``b``, ``m`` are coefficient lists, ``tau`` a list of ints.  For the
    ``locate`` rule all tau must be equal; ``n`` and ``k_max`` give the
    failure threshold ``deg Lambda > n - k_max``.  For ``fixed`` the run
    ends once ``target`` kappa evaluations have been made.
    """

    def __init__(self, F: Field, b, m, tau, *, kappa="rbm", stop="spi",
                 n=None, k_max=None, target=None, debug=None, trace=False):
        if kappa not in VARIANTS:
            raise ValueError(f"unknown variant {kappa!r}")
        if stop not in ("spi", "locate", "fixed"):
            raise ValueError(f"unknown stop rule {stop!r}")
        self.F = F
        self.b = [list(x) for x in b]
        self.m = [list(x) for x in m]
        self.tau = list(tau)
        self.L = len(self.b)
        self.nu = [len(x) - 1 for x in self.m]
        self.kind = kappa
        self.stop = stop
        self.n = n
        self.k_max = k_max
        self.target = target
        self.debug = debug_default() if debug is None else debug
        self.trace = [] if trace else None
        if kappa == "monomial":
            for i, mi in enumerate(self.m):
                if any(mi[:-1]) or mi[-1] != 1:
                    raise NotMonomial(f"modulus {i + 1} is not a power of x")
        if stop == "locate" and len(set(self.tau)) != 1:
            raise ValueError("locate rule needs a common tau")
        if stop == "fixed" and target is None:
            raise ValueError("fixed rule needs a target iteration count")
        self.rb = [x[::-1] for x in self.b]
        self.rm = [x[::-1] for x in self.m]
        self.n_it = 0
        self.skipped = 0
        self.renormalized = 0
        self.checks = 0
        self.status = "running"
        self.reason = ""

    # diagnostics ----------------------------------------------------------
    def _active(self, i) -> bool:
        return self.stop != "locate" or self.nu[i] >= self.tau[i]

    def _rd(self, i, lam):
        F = self.F
        return _deg(_divmod(F, _mul(F, self.b[i], lam), self.m[i])[1])

    def _imax_dmax(self, lam):
        best, arg = NEG_INF, -1
        for i in range(self.L):
            if not self._active(i):
                continue
            off = self._rd(i, lam) - self.tau[i]
            if off >= best:
                best, arg = off, i
        return arg, best

    def _check(self, label, ok, detail=""):
        self.checks += 1
        ASSERTION_TALLY[label] += 1
        if not ok:
            raise InvariantViolation(label, detail)

    # discrepancy ----------------------------------------------------------
    def _kappa(self, i, d, lam):
        if d < 0:
            return 0
        F = self.F
        kind = self.kind
        if kind == "monomial":
            if d >= self.nu[i]:
                return 0
            return _conv_coeff(F, self.rb[i], lam, d)
        if kind == "rbm":
            if d >= self.nu[i]:
                return 0
            r = _divmod(F, _mul(F, self.b[i], lam), self.m[i])[1]
            return r[d] if d < len(r) else 0
        if kind == "qs":
            cb = _conv_coeff(F, self.rb[i], lam, d)
            cm = _conv_coeff(F, self.rm[i], self.Q[i], d)
            return F.sub(cb, cm)
        r = self.R[i]
        return r[d] if d < len(r) else 0

    # main loop ------------------------------------------------------------
    def run(self) -> SolverState:
        F, L = self.F, self.L
        tau = self.tau
        lam = [1]
        lam_i = [[] for _ in range(L)]
        d_i = list(self.nu)
        kap_i = [mi[-1] for mi in self.m]
        if self.kind == "qs":
            self.Q = [[] for _ in range(L)]
            aux_i = [[[] for _ in range(L)] for _ in range(L)]
            for i in range(L):
                aux_i[i][i] = [F.neg(1)]
            aux = self.Q
            # degree bounds on the implied remainders b_j*Lambda - Q_j*m_j
            ub = [_deg(x) for x in self.b]
            ub_i = [[self.nu[i] if j == i else NEG_INF for j in range(L)] for i in range(L)]
        elif self.kind == "rs":
            self.R = [list(x) for x in self.b]
            aux_i = [[[] for _ in range(L)] for _ in range(L)]
            for i in range(L):
                aux_i[i][i] = list(self.m[i])
            aux = self.R
        else:
            aux = aux_i = None
        delta = max(self.nu[i] - tau[i] for i in range(L))
        d = tau[0] if self.stop == "locate" else None
        i = 0
        debug = self.debug
        stop = self.stop
        deg_target = 0
        while True:
            if debug:
                self._check("a", _deg(lam) == sum(self.nu[j] - d_i[j] for j in range(L)),
                            f"deg Lambda={_deg(lam)}")
                self._check("b", all(_deg(lam) > _deg(lam_i[j]) for j in range(L)))
            # scan for the next nonzero discrepancy
            while True:
                if i > 0:
                    i -= 1
                else:
                    if stop == "spi":
                        if delta <= 0:
                            return self._finish(lam, aux)
                    elif stop == "locate":
                        if delta <= 0:
                            if _deg(lam) > self.n - self.k_max:
                                self.status = "failure"
                                self.reason = f"deg Lambda = {_deg(lam)} exceeds n - k_max = {self.n - self.k_max}"
                                return self._finish(lam, aux)
                            if d <= _deg(lam):
                                return self._finish(lam, aux)
                            for j in range(L):
                                tau[j] -= 1
                            delta += 1
                    else:
                        if self.n_it >= self.target:
                            return self._finish(lam, aux)
                    i = L - 1
                    delta -= 1
                if stop == "locate" and self.nu[i] < tau[i]:
                    self.skipped += 1
                    continue
                d = delta + tau[i]
                kappa = self._kappa(i, d, lam)
                self.n_it += 1
                if kappa:
                    break
            if debug:
                im, dm = self._imax_dmax(lam)
                self._check("c", im == i and dm == delta and delta >= 0,
                            f"i={i + 1} i_max={im + 1} delta={delta} delta_max={dm}")
            lam_before = tuple(lam) if self.trace is not None else None
            di_before = d_i[i]
            swapped = False
            if d < d_i[i]:
                if debug:
                    self._check("d", d_i[i] > d >= tau[i], f"d_i={d_i[i]} d={d} tau={tau[i]}")
                    deg_target = d_i[i] - d + _deg(lam)
                lam, lam_i[i] = lam_i[i], lam
                d, d_i[i] = d_i[i], d
                kappa, kap_i[i] = kap_i[i], kappa
                if aux is not None:
                    row = aux_i[i]
                    for j in range(L):
                        aux[j], row[j] = row[j], aux[j]
                    if self.kind == "qs":
                        ub, ub_i[i] = ub_i[i], ub
                delta = d - tau[i]
                swapped = True
                if debug:
                    self._check("e", d > d_i[i] >= tau[i])
                    self._check("f", _deg(lam_i[i]) > _deg(lam))
                    self._check("g", all(_deg(lam_i[i]) > _deg(lam_i[j]) for j in range(L) if j != i))
                    im, dm = self._imax_dmax(lam_i[i])
                    self._check("h", im == i and dm >= 0, f"i_max={im + 1} delta_max={dm}")
            sh = d - d_i[i]
            lam = _combine(F, kap_i[i], lam, kappa, sh, lam_i[i])
            if aux is not None:
                row = aux_i[i]
                for j in range(L):
                    aux[j] = _combine(F, kap_i[i], aux[j], kappa, sh, row[j])
                    # x^sh can lift a saved remainder to degree >= deg m_j when
                    # the constraints have different deg m - tau; reduce it back
                    if self.kind == "rs":
                        if len(aux[j]) > self.nu[j]:
                            aux[j] = _divmod(F, aux[j], self.m[j])[1]
                            self.renormalized += 1
                    else:
                        ub[j] = max(ub[j], sh + ub_i[i][j])
                        if ub[j] >= self.nu[j]:
                            r = _sub(F, _mul(F, self.b[j], lam), _mul(F, aux[j], self.m[j]))
                            qq, rr = _divmod(F, r, self.m[j])
                            aux[j] = _add(F, aux[j], qq)
                            ub[j] = _deg(rr)
                            self.renormalized += 1
            if debug:
                self._check("i", self._rd(i, lam) < d, f"rd={self._rd(i, lam)} d={d}")
                self._check("j", _deg(lam) == deg_target, f"deg Lambda={_deg(lam)} expected {deg_target}")
                self._check("k", all(_deg(lam) > _deg(lam_i[j]) for j in range(L)))
            if self.trace is not None:
                self.trace.append({
                    "n_it": self.n_it, "i": i + 1, "d": d, "delta": delta, "tau": tau[i],
                    "kappa": kappa, "swapped": swapped, "d_i_before": di_before,
                    "d_i_after": d_i[i], "lam_before": lam_before, "lam_after": tuple(lam),
                })

    def _finish(self, lam, aux):
        if self.status == "running":
            self.status = "ok"
        self.raw = lam
        self.aux = [list(x) for x in aux] if aux is not None else None
        return self


def _solution(inst: SpiInstance, st: SolverState, variant: str) -> SpiSolution:
    F = inst.field
    raw = Polynomial._raw(F, st.raw)
    sol = SpiSolution(raw.monic(), iterations=st.n_it, variant=variant, raw_lambda=raw,
                      trace=st.trace, assertion_checks=st.checks,
                      extra={"renormalized": st.renormalized})
    if st.kind == "qs":
        sol.quotients = tuple(Polynomial._raw(F, q) for q in st.aux)
    elif st.kind == "rs":
        sol.remainders = tuple(Polynomial._raw(F, r) for r in st.aux)
    return sol


def _run(inst: SpiInstance, kind: str, debug=None, trace=False) -> SpiSolution:
    spi_validate(inst)
    st = SolverState(inst.field, [c.b.coeffs for c in inst], [c.m.coeffs for c in inst],
                     [c.tau for c in inst], kappa=kind, debug=debug, trace=trace).run()
    return _solution(inst, st, kind)


def solve_rbm(inst: SpiInstance, debug=None, trace=False) -> SpiSolution:
    return _run(inst, "rbm", debug, trace)


def solve_monomial(inst: SpiInstance, debug=None, trace=False) -> SpiSolution:
    return _run(inst, "monomial", debug, trace)


def solve_quotient_saving(inst: SpiInstance, debug=None, trace=False) -> SpiSolution:
    return _run(inst, "qs", debug, trace)


def solve_remainder_saving(inst: SpiInstance, debug=None, trace=False) -> SpiSolution:
    return _run(inst, "rs", debug, trace)


def solve(inst: SpiInstance, variant: str = "auto", debug=None, trace=False) -> SpiSolution:
    """``auto`` picks the monomial solver when every modulus is a power of x."""
    if variant == "auto":
        variant = "monomial" if inst.is_monomial() else "rs"
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS + ('auto',)}")
    return _run(inst, variant, debug, trace)


@dataclass(frozen=True)
class IterationCount:
    observed: int
    predicted: int

    @property
    def ok(self):
        return self.observed == self.predicted


def iteration_count(sol: SpiSolution, inst: SpiInstance) -> IterationCount:
    """Compare the kappa-evaluation count with D_hat + L * deg Lambda."""
    if sol.iterations is None:
        raise MissingCounter(f"solution from {sol.variant!r} carries no iteration counter")
    return IterationCount(sol.iterations, inst.d_hat + inst.L * sol.lam.deg())
