"""SPI instances, the residual check, a brute-force oracle and the two
solution-preserving transformations (degree reduction, monomialization).

An instance is a list of constraints ``(b, m, tau)``; a nonzero Lambda
satisfies it when ``deg(b * Lambda mod m) < tau`` for every constraint.
Constraints are numbered from 1 in diagnostics (``i_max``), matching the
scan order used by the solvers.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from ..gf import Field, FieldSpec, MixedFields, field_new
from ..poly import (
    NEG_INF,
    Polynomial,
    _deg,
    _divmod,
    _mul,
    poly_inv_mod_xk,
    poly_reverse,
)


class SpiError(ValueError):
    pass


class InvalidInstance(SpiError):
    pass


class EmptyInstance(InvalidInstance):
    pass


class BadDegreeRelation(InvalidInstance):
    def __init__(self, i, msg):
        super().__init__(f"constraint {i}: {msg}")
        self.index = i


class TauOutOfRange(InvalidInstance):
    def __init__(self, i, msg):
        super().__init__(f"constraint {i}: {msg}")
        self.index = i


class ZeroLambda(SpiError):
    pass


class InstanceTooLargeForOracle(SpiError):
    pass


class NonPositiveU(SpiError):
    pass


class PreconditionViolated(SpiError):
    pass


class InstanceParseError(SpiError):
    pass


@dataclass(frozen=True)
class Constraint:
    b: Polynomial
    m: Polynomial
    tau: int


@dataclass(frozen=True)
class SpiInstance:
    field: Field
    constraints: tuple[Constraint, ...]

    @classmethod
    def build(cls, field: Field, triples) -> SpiInstance:
        """``triples`` holds (b, m, tau) with b, m as Polynomials or coefficient lists."""
        cons = []
        for b, m, tau in triples:
            if not isinstance(b, Polynomial):
                b = Polynomial(field, b)
            if not isinstance(m, Polynomial):
                m = Polynomial(field, m)
            cons.append(Constraint(b, m, int(tau)))
        return cls(field, tuple(cons))

    @property
    def L(self) -> int:
        return len(self.constraints)

    def __len__(self):
        return len(self.constraints)

    def __iter__(self):
        return iter(self.constraints)

    def __getitem__(self, i):
        return self.constraints[i]

    @property
    def degree_bound(self) -> int:
        """D = sum(deg m - tau): no solution has larger degree."""
        return sum(c.m.deg() - c.tau for c in self.constraints)

    @property
    def d_hat(self) -> int:
        """L * max(deg m - tau), the fixed part of the iteration count."""
        return self.L * max(c.m.deg() - c.tau for c in self.constraints)

    def is_monomial(self) -> bool:
        return all(c.m.coeffs[:-1] == (0,) * (len(c.m.coeffs) - 1) and c.m.coeffs[-1] == 1
                   for c in self.constraints if c.m.coeffs)

    def validate(self) -> None:
        spi_validate(self)


@dataclass
class SpiSolution:
    """Monic minimal-degree Lambda plus solver diagnostics.

    ``raw_lambda`` is the solver's unnormalized register; ``quotients`` and
    ``remainders`` (when a variant tracks them) are scaled consistently with
    it, not with the monic ``lam``.
    """

    lam: Polynomial
    iterations: int | None = None
    variant: str = "oracle"
    raw_lambda: Polynomial | None = None
    quotients: tuple[Polynomial, ...] | None = None
    remainders: tuple[Polynomial, ...] | None = None
    trace: list | None = None
    assertion_checks: int = 0
    extra: dict = dc_field(default_factory=dict)

    @property
    def degree(self):
        return self.lam.deg()


@dataclass(frozen=True)
class CheckResult:
    satisfies: bool
    rd: tuple
    delta_max: float
    i_max: int


def spi_validate(inst: SpiInstance) -> None:
    if inst.L == 0:
        raise EmptyInstance("instance has no constraints")
    for i, c in enumerate(inst.constraints, 1):
        for p in (c.b, c.m):
            if p.field != inst.field:
                raise MixedFields(f"constraint {i} is over {p.field.spec}, instance over {inst.field.spec}")
        n = c.m.deg()
        if n < 1:
            raise BadDegreeRelation(i, f"deg m = {n} < 1")
        if not c.b.deg() < n:
            raise BadDegreeRelation(i, f"deg b = {c.b.deg()} is not < deg m = {n}")
        if not 0 <= c.tau <= n:
            raise TauOutOfRange(i, f"tau = {c.tau} outside [0, {n}]")


def residue(c: Constraint, lam: Polynomial) -> Polynomial:
    return (c.b * lam) % c.m


def spi_check(inst: SpiInstance, lam: Polynomial) -> CheckResult:
    """Residual degrees rd_i, delta_max, i_max (largest maximizing index, 1-based)."""
    if lam.is_zero():
        raise ZeroLambda("Lambda must be nonzero")
    F = inst.field
    rd = []
    best, i_max = NEG_INF, 0
    ok = True
    for i, c in enumerate(inst.constraints, 1):
        r = _deg(_divmod(F, _mul(F, c.b.coeffs, lam.coeffs), c.m.coeffs)[1])
        rd.append(r)
        off = r - c.tau
        if off >= best:
            best, i_max = off, i
        if not r < c.tau:
            ok = False
    return CheckResult(ok, tuple(rd), best, i_max)


# brute-force oracle -----------------------------------------------------

def _window_rows(F: Field, inst: SpiInstance, d: int) -> np.ndarray:
    """Row j holds the coefficients tau..deg m - 1 of b * x^j mod m, all constraints stacked."""
    rows = []
    for j in range(d + 1):
        row = []
        for c in inst.constraints:
            n = len(c.m.coeffs) - 1
            r = _divmod(F, [0] * j + list(c.b.coeffs), c.m.coeffs)[1] if c.b.coeffs else []
            r = r + [0] * (n - len(r))
            row.extend(r[c.tau:n])
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(d + 1, -1)


class _VecField:
    """numpy-vectorized multiply/add for the oracle's enumeration."""

    def __init__(self, F: Field):
        self.F = F
        if F.spec.kind == "prime":
            self.kind = "prime"
            self.p = F.spec.p
        else:
            self.kind = "binary"
            q = F.q
            self.exp = np.array(F._exp, dtype=np.int64)
            log = np.array(F._log, dtype=np.int64)
            self.log = log

    def mul_outer(self, col: np.ndarray, row: np.ndarray) -> np.ndarray:
        if self.kind == "prime":
            return (col[:, None] * row[None, :]) % self.p
        nz = (col[:, None] != 0) & (row[None, :] != 0)
        prod = self.exp[self.log[col][:, None] + self.log[row][None, :]]
        return np.where(nz, prod, 0)

    def add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        return a ^ b


def spi_oracle(inst: SpiInstance, max_work: int = 5_000_000, all_solutions: bool = False,
               chunk: int = 1 << 15) -> SpiSolution:
    """Enumerate monic candidates by increasing degree and return the first
    that satisfies every constraint.

    With ``all_solutions`` the returned solution's ``extra['all']`` lists every
    monic satisfier of the minimal degree (uniqueness check).
    """
    spi_validate(inst)
    F = inst.field
    q = F.q
    vf = _VecField(F)
    work = 0
    d = 0
    limit = sum(c.m.deg() for c in inst.constraints)
    while d <= limit:
        count = q ** d
        if work + count > max_work:
            raise InstanceTooLargeForOracle(
                f"degree {d} needs {count} candidates, cap is {max_work} (used {work})")
        work += count
        A = _window_rows(F, inst, d)
        target = A[d]
        if A.shape[1] == 0:
            lam = Polynomial.monomial(F, d)
            sols = [lam] if d == 0 else None
            if all_solutions and sols is None:
                sols = _all_monic(F, d)
            return SpiSolution(lam, extra={"all": sols, "work": work} if all_solutions else {"work": work})
        found = []
        for start in range(0, count, chunk):
            idx = np.arange(start, min(start + chunk, count), dtype=np.int64)
            acc = np.broadcast_to(target, (len(idx), len(target))).copy()
            digits = idx.copy()
            for j in range(d):
                cj = digits % q
                digits //= q
                acc = vf.add(acc, vf.mul_outer(cj, A[j]))
            hits = np.nonzero(~acc.any(axis=1))[0]
            for h in hits:
                k = int(idx[h])
                coeffs = []
                for _ in range(d):
                    coeffs.append(k % q)
                    k //= q
                found.append(Polynomial(F, coeffs + [1]))
                if not all_solutions:
                    break
            if found and not all_solutions:
                break
        if found:
            extra = {"work": work}
            if all_solutions:
                extra["all"] = found
            return SpiSolution(found[0], extra=extra)
        d += 1
    raise SpiError("no solution found below the existence bound")  # unreachable


def _all_monic(F: Field, d: int) -> list:
    out = []
    for k in range(F.q ** d):
        coeffs = []
        for _ in range(d):
            coeffs.append(k % F.q)
            k //= F.q
        out.append(Polynomial(F, coeffs + [1]))
    return out


# transformations --------------------------------------------------------

def spi_reduce_degree(inst: SpiInstance, u: int | None = None) -> SpiInstance:
    """Strip the low coefficients that cannot influence the solution.

    ``u`` must bound deg Lambda from above; the default D always does.
    """
    if u is None:
        u = inst.degree_bound
    if u <= 0:
        raise NonPositiveU(f"u = {u} must be positive")
    out = []
    for c in inst.constraints:
        s = max(c.tau - u, 0)
        out.append(Constraint(c.b.high(s), c.m.high(s), c.tau - s))
    return SpiInstance(inst.field, tuple(out))


@dataclass(frozen=True)
class MonomializationMeta:
    u: int
    n: tuple[int, ...]
    tau: tuple[int, ...]
    w: tuple[Polynomial, ...]

    def window(self, i: int) -> int:
        """Exponent of the new modulus x^(n_i - tau_i + u) for constraint i (0-based)."""
        return self.n[i] - self.tau[i] + self.u


def monomialize_b(b: Polynomial, n: int, window: int, w: Polynomial) -> Polynomial:
    """reverse(w * reverse(b, n-1) mod x^window, window-1)."""
    bbar = poly_reverse(b, n - 1) if b.coeffs else b
    s = (w * bbar).truncate(window)
    return poly_reverse(s, window - 1)


def spi_monomialize(inst: SpiInstance, u: int | None = None, check_bound: bool = True):
    """Rewrite every modulus as a power of x without changing the solution.

    Returns ``(new_instance, meta)``.  When ``u`` is below the degree bound D
    and ``check_bound`` is set, the instance is solved once to confirm that
    ``u >= deg Lambda``.
    """
    spi_validate(inst)
    D = inst.degree_bound
    if u is None:
        u = D if D > 0 else 1
    if u < 0:
        raise PreconditionViolated(f"u = {u} is negative")
    for i, c in enumerate(inst.constraints, 1):
        if c.m.deg() - c.tau + u <= 0:
            raise PreconditionViolated(f"constraint {i}: n - tau + u = {c.m.deg() - c.tau + u} is not positive")
    if check_bound and u < D:
        from .solver import solve_rbm

        deg = solve_rbm(inst).lam.deg()
        if deg > u:
            raise PreconditionViolated(f"u = {u} is below deg Lambda = {deg}")
    F = inst.field
    out, ns, taus, ws = [], [], [], []
    for c in inst.constraints:
        n = c.m.deg()
        N = n - c.tau + u
        mbar = poly_reverse(c.m, n)
        w = poly_inv_mod_xk(mbar.truncate(N), N)
        bt = monomialize_b(c.b, n, N, w)
        out.append(Constraint(bt, Polynomial.monomial(F, N), u))
        ns.append(n)
        taus.append(c.tau)
        ws.append(w)
    return SpiInstance(F, tuple(out)), MonomializationMeta(u, tuple(ns), tuple(taus), tuple(ws))


def quotients(inst: SpiInstance, lam: Polynomial) -> tuple[Polynomial, ...]:
    """b_i * Lambda div m_i for every constraint."""
    return tuple((c.b * lam) // c.m for c in inst.constraints)


# instance text format ---------------------------------------------------
#
#   # comment
#   p:7
#   b=3,0,1; m=0,0,0,0,1; tau=2
#   b=2,0,5,1; m=0,0,0,0,1; tau=2

def parse_instance(text: str) -> SpiInstance:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InstanceParseError("empty instance file")
    try:
        F = field_new(FieldSpec.parse(lines[0]))
    except ValueError as exc:
        raise InstanceParseError(str(exc)) from exc
    cons = []
    for lineno, ln in enumerate(lines[1:], 2):
        parts = [p.strip() for p in ln.split(";")]
        kv = {}
        for p in parts:
            if "=" not in p:
                raise InstanceParseError(f"line {lineno}: expected key=value, got {p!r}")
            k, v = p.split("=", 1)
            kv[k.strip()] = v.strip()
        if set(kv) != {"b", "m", "tau"}:
            raise InstanceParseError(f"line {lineno}: need exactly b, m, tau; got {sorted(kv)}")
        try:
            b = Polynomial.parse(F, kv["b"])
            m = Polynomial.parse(F, kv["m"])
            tau = int(kv["tau"])
        except ValueError as exc:
            raise InstanceParseError(f"line {lineno}: {exc}") from exc
        cons.append(Constraint(b, m, tau))
    inst = SpiInstance(F, tuple(cons))
    return inst


def format_instance(inst: SpiInstance) -> str:
    out = [str(inst.field.spec)]
    for c in inst.constraints:
        out.append(f"b={c.b.to_text()}; m={c.m.to_text()}; tau={c.tau}")
    return "\n".join(out) + "\n"


def random_instance(rng: np.random.Generator, field: Field, L: int, max_deg_m: int = 6,
                    max_D: int | None = None, monic_m: bool = False,
                    monomial_m: bool = False) -> SpiInstance:
    """Random valid instance; ``max_D`` caps the degree bound (keeps the oracle cheap)."""
    q = field.q
    while True:
        cons = []
        for _ in range(L):
            n = int(rng.integers(1, max_deg_m + 1))
            if monomial_m:
                m = [0] * n + [1]
            else:
                lead = 1 if monic_m else int(rng.integers(1, q))
                m = [int(x) for x in rng.integers(0, q, n)] + [lead]
            db = int(rng.integers(-1, n))
            b = [int(x) for x in rng.integers(0, q, db + 1)] if db >= 0 else []
            tau = int(rng.integers(0, n + 1))
            cons.append((b, m, tau))
        inst = SpiInstance.build(field, cons)
        if max_D is None or inst.degree_bound <= max_D:
            return inst
