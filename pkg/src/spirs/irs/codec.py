"""Interleaved Reed-Solomon codes: construction, encoding, syndromes, SPI
based error location, locator validation and codeword recovery.

Words are L x n arrays given as lists of rows of ints (numpy arrays work too).
A row of the code is the evaluation of a message polynomial of degree
< k_i at the points beta_0..beta_{n-1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

from ..gf import Field, FieldSpec, field_new
from ..poly import Polynomial, _deg, _divmod, _eval, _mul
from ..spi.core import monomialize_b
from ..spi.solver import SolverState

STRATEGIES = ("spi_general", "spi_monomial", "fixed_iterations_general", "fixed_iterations_monomial")
DEFAULT_STRATEGY = "fixed_iterations_monomial"
RECOVERIES = ("interp", "interp-div", "forney", "forney-syndrome", "forney-monomial")


class CodeError(ValueError):
    pass


class DuplicateEvalPoint(CodeError):
    pass


class BadEvalPoint(CodeError):
    pass


class DimensionOutOfRange(CodeError):
    pass


class KMaxNotLessThanN(CodeError):
    pass


class MessageDegreeTooHigh(CodeError):
    def __init__(self, i, msg):
        super().__init__(f"row {i}: {msg}")
        self.index = i


class WordShapeError(CodeError):
    pass


class LocatorNotValidated(CodeError):
    pass


class InexactDivision(CodeError):
    pass


class DegreeOverflow(CodeError):
    def __init__(self, i, msg):
        super().__init__(f"row {i}: {msg}")
        self.index = i


class CodeConfigError(CodeError):
    pass


@dataclass(frozen=True)
class CodeSpec:
    field: Field
    n: int
    L: int
    k: tuple
    beta: tuple

    @property
    def k_max(self) -> int:
        return max(self.k)

    @property
    def k_min(self) -> int:
        return min(self.k)

    @property
    def k_avg(self) -> Fraction:
        return Fraction(sum(self.k), self.L)

    @cached_property
    def m(self) -> Polynomial:
        return Polynomial.from_roots(self.field, self.beta)

    @cached_property
    def m_deriv_at_beta(self) -> tuple:
        dm = self.m.derivative().coeffs
        return tuple(_eval(self.field, dm, b) for b in self.beta)

    @cached_property
    def m_tilde(self) -> tuple:
        """Truncated moduli m_k + m_{k+1} x + ... + m_n x^(n-k), one per row."""
        return tuple(self.m.high(ki) for ki in self.k)

    @cached_property
    def w(self) -> tuple:
        """Inverse of reverse(m_tilde) modulo x^(n-k), one per row."""
        from ..poly import poly_inv_mod_xk, poly_reverse

        out = []
        for ki, mt in zip(self.k, self.m_tilde):
            N = self.n - ki
            out.append(poly_inv_mod_xk(poly_reverse(mt, N), N))
        return tuple(out)

    @cached_property
    def interp_matrix(self) -> tuple:
        """Row j holds the weights giving coefficient j of the interpolating polynomial."""
        F, n = self.field, self.n
        cols = []
        for l, b in enumerate(self.beta):
            basis, _ = _divmod(F, self.m.coeffs, [F.neg(b), 1])
            basis = F.scale(F.inv(self.m_deriv_at_beta[l]), basis)
            cols.append(basis + [0] * (n - len(basis)))
        return tuple(tuple(cols[l][j] for l in range(n)) for j in range(n))

    def is_cyclic(self) -> bool:
        return all(c == 0 for c in self.m.coeffs[1:-1]) and self.m.coeffs[0] == self.field.neg(1)

    def describe(self) -> str:
        return (f"{self.field.spec} n={self.n} L={self.L} k={','.join(map(str, self.k))} "
                f"beta={','.join(map(str, self.beta))}")


def code_new(field: Field, n: int, L: int, k, beta=None) -> CodeSpec:
    """Build a code.  ``k`` is an int (all rows) or a per-row list; ``beta``
    defaults to 0..n-1, and ``"powers"`` picks alpha^0..alpha^(n-1) for an
    element alpha of order n (a cyclic code, needs n | q-1)."""
    if isinstance(field, (str, FieldSpec)):
        field = field_new(field)
    if isinstance(k, int):
        k = (k,) * L
    k = tuple(int(x) for x in k)
    if L < 1 or len(k) != L:
        raise DimensionOutOfRange(f"need L >= 1 and {L} dimensions, got {len(k)}")
    q = field.q
    if not 1 <= n <= q:
        raise DimensionOutOfRange(f"n = {n} must lie in [1, q = {q}]")
    if beta is None:
        beta = tuple(range(n))
    elif isinstance(beta, str):
        if beta != "powers":
            raise CodeConfigError(f"unknown beta keyword {beta!r}")
        if (q - 1) % n:
            raise DimensionOutOfRange(f"cyclic code needs n | q-1, got n={n}, q={q}")
        alpha = field.pow(field.generator(), (q - 1) // n)
        beta = tuple(field.pow(alpha, l) for l in range(n))
    beta = tuple(int(b) for b in beta)
    if len(beta) != n:
        raise DimensionOutOfRange(f"{len(beta)} evaluation points for n = {n}")
    for b in beta:
        if not 0 <= b < q:
            raise BadEvalPoint(f"evaluation point {b} not in the field")
    if len(set(beta)) != n:
        raise DuplicateEvalPoint("evaluation points must be distinct")
    for i, ki in enumerate(k, 1):
        if ki < 1:
            raise DimensionOutOfRange(f"k[{i}] = {ki} < 1")
    if max(k) >= n:
        raise KMaxNotLessThanN(f"k_max = {max(k)} must be < n = {n}")
    return CodeSpec(field, n, L, k, beta)


# words ---------------------------------------------------------------------

def as_rows(code: CodeSpec, word) -> list:
    rows = [[int(v) for v in row] for row in word]
    if len(rows) != code.L or any(len(r) != code.n for r in rows):
        raise WordShapeError(f"expected {code.L} rows of length {code.n}")
    q = code.field.q
    for r in rows:
        for v in r:
            if not 0 <= v < q:
                raise WordShapeError(f"entry {v} is not a field element")
    return rows


def psi(code: CodeSpec, a: Polynomial) -> list:
    F = code.field
    return [_eval(F, a.coeffs, b) for b in code.beta]


def psi_inverse(code: CodeSpec, row, start: int = 0) -> Polynomial:
    """Interpolating polynomial of degree < n; with ``start`` only the
    coefficients from x^start upward are formed (returned shifted down)."""
    F = code.field
    T = code.interp_matrix
    coeffs = [F.dot(T[j], row) for j in range(start, code.n)]
    return Polynomial._raw(F, _trim(coeffs))


def _trim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def encode(code: CodeSpec, messages) -> list:
    """Evaluate each row's message polynomial (or coefficient list) at beta."""
    if len(messages) != code.L:
        raise WordShapeError(f"expected {code.L} messages, got {len(messages)}")
    rows = []
    for i, (a, ki) in enumerate(zip(messages, code.k), 1):
        if not isinstance(a, Polynomial):
            a = Polynomial(code.field, a)
        if a.deg() >= ki:
            raise MessageDegreeTooHigh(i, f"deg a = {a.deg()} is not < k = {ki}")
        rows.append(psi(code, a))
    return rows


def syndromes(code: CodeSpec, received) -> list:
    """S_i: coefficients k_i..n-1 of psi^-1(row i)."""
    rows = as_rows(code, received)
    return [psi_inverse(code, r, start=ki) for r, ki in zip(rows, code.k)]


def monomialized_syndromes(code: CodeSpec, S) -> list:
    out = []
    for s, ki, w in zip(S, code.k, code.w):
        N = code.n - ki
        out.append(monomialize_b(s, N, N, w) if s.coeffs else s)
    return out


# error location --------------------------------------------------------------

@dataclass
class LocateResult:
    status: str
    lam: Polynomial
    iterations: int
    skipped: int = 0
    tau: int | None = None
    reason: str = ""
    trace: list | None = None
    assertion_checks: int = 0

    @property
    def ok(self):
        return self.status == "ok"


def locate_errors(code: CodeSpec, syn, strategy: str = DEFAULT_STRATEGY,
                  debug=None, trace=False) -> LocateResult:
    """Run one of the four error-locating strategies.

    ``syn`` must be the plain syndromes S for the ``*_general`` strategies
    and the monomialized S-breve for the ``*_monomial`` ones.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    F, n, L = code.field, code.n, code.L
    monomial = strategy.endswith("monomial")
    fixed = strategy.startswith("fixed")
    if monomial:
        ms = [[0] * (n - ki) + [1] for ki in code.k]
    else:
        ms = [list(mt.coeffs) for mt in code.m_tilde]
    bs = [s.coeffs for s in syn]
    target = L * (n - code.k_min)
    if fixed:
        st = SolverState(F, bs, ms, [0] * L, kappa="monomial" if monomial else "rbm",
                         stop="fixed", target=target, debug=debug, trace=trace)
    else:
        st = SolverState(F, bs, ms, [n - code.k_min] * L, kappa="monomial" if monomial else "rbm",
                         stop="locate", n=n, k_max=code.k_max, debug=debug, trace=trace)
    st.run()
    lam = Polynomial._raw(F, st.raw).monic()
    res = LocateResult(st.status, lam, st.n_it, st.skipped, None if fixed else st.tau[0],
                       st.reason, st.trace, st.checks)
    if fixed and res.ok and lam.deg() > n - code.k_max:
        res.status = "failure"
        res.reason = f"deg Lambda = {lam.deg()} exceeds n - k_max = {n - code.k_max}"
    return res


def validate_locator(code: CodeSpec, lam: Polynomial) -> bool:
    if lam.is_zero():
        from ..spi.core import ZeroLambda

        raise ZeroLambda("locator must be nonzero")
    return (code.m % lam).is_zero()


def locator_roots(code: CodeSpec, lam: Polynomial) -> tuple:
    F = code.field
    return tuple(l for l, b in enumerate(code.beta) if _eval(F, lam.coeffs, b) == 0)


# recovery ----------------------------------------------------------------------

def _require_valid(code, lam):
    if not validate_locator(code, lam):
        raise LocatorNotValidated("locator does not divide m(x)")


def recover_by_interpolation(code: CodeSpec, received, lam: Polynomial, method: str = "mod",
                             Y=None) -> list:
    """Message polynomials C_i.

    ``mod``: C = Y mod (m / Lambda);  ``div``: C = (Y*Lambda mod m) / Lambda.
    """
    _require_valid(code, lam)
    if lam.deg() > code.n - code.k_max:
        raise DegreeOverflow(0, f"deg Lambda = {lam.deg()} exceeds n - k_max")
    if Y is None:
        Y = [psi_inverse(code, r) for r in as_rows(code, received)]
    out = []
    if method == "mod":
        mt = code.m // lam
        for i, (y, ki) in enumerate(zip(Y, code.k), 1):
            c = y % mt
            if c.deg() >= ki:
                raise DegreeOverflow(i, f"deg C = {c.deg()} is not < k = {ki}")
            out.append(c)
    elif method == "div":
        for i, (y, ki) in enumerate(zip(Y, code.k), 1):
            c, r = divmod((y * lam) % code.m, lam)
            if not r.is_zero():
                raise InexactDivision(f"row {i}: remainder {r} after dividing by Lambda")
            if c.deg() >= ki:
                raise DegreeOverflow(i, f"deg C = {c.deg()} is not < k = {ki}")
            out.append(c)
    else:
        raise ValueError(f"unknown interpolation method {method!r}")
    return out


def forney(code: CodeSpec, syn, lam: Polynomial, domain: str = "monomial") -> list:
    """Error values as an L x n array, zero off the roots of Lambda.

    The quotient Q_i comes from S_i*Lambda div m_tilde_i (``syndrome``) or
    from S-breve_i*Lambda div x^(n-k_i) (``monomial``); ``syn`` must match.
    """
    _require_valid(code, lam)
    F = code.field
    roots = locator_roots(code, lam)
    dlam = lam.derivative().coeffs
    out = [[0] * code.n for _ in range(code.L)]
    if not roots:
        return out
    scale = {}
    for l in roots:
        scale[l] = F.div(code.m_deriv_at_beta[l], _eval(F, dlam, code.beta[l]))
    for i, (s, ki) in enumerate(zip(syn, code.k)):
        if domain == "syndrome":
            Q = _divmod(F, _mul(F, s.coeffs, lam.coeffs), code.m_tilde[i].coeffs)[0]
        elif domain == "monomial":
            Q = _mul(F, s.coeffs, lam.coeffs)[code.n - ki:]
        else:
            raise ValueError(f"unknown Forney domain {domain!r}")
        for l in roots:
            out[i][l] = F.mul(_eval(F, Q, code.beta[l]), scale[l])
    return out


# decoding pipeline ---------------------------------------------------------------

@dataclass
class ErrorReport:
    status: str
    reason: str = ""
    locator: Polynomial | None = None
    support: tuple = ()
    corrected: list | None = None
    messages: list | None = None
    error_values: list | None = None
    iterations: int = 0
    strategy: str = DEFAULT_STRATEGY
    recovery: str = "interp"
    paths_agree: bool | None = None
    paths: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return self.status == "corrected"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "locator": list(self.locator.coeffs) if self.locator is not None else None,
            "support": list(self.support),
            "corrected": self.corrected,
            "iterations": self.iterations,
            "strategy": self.strategy,
            "recovery": self.recovery,
            "paths_agree": self.paths_agree,
        }


def _sub_rows(F, a, b):
    return [[F.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def decode(code: CodeSpec, received, strategy: str = DEFAULT_STRATEGY, recovery: str = "interp",
           check_paths: bool = False, debug=None) -> ErrorReport:
    """Full pipeline: syndromes, (monomialization), locate, validate, recover,
    re-encode check.  With ``check_paths`` every recovery formula is run and
    their agreement recorded in ``paths_agree``."""
    if recovery not in RECOVERIES:
        raise ValueError(f"unknown recovery {recovery!r}; choose from {RECOVERIES}")
    F = code.field
    rows = as_rows(code, received)
    Y = [psi_inverse(code, r) for r in rows]
    S = [y.high(ki) for y, ki in zip(Y, code.k)]
    monomial = strategy.endswith("monomial")
    Sb = monomialized_syndromes(code, S) if (monomial or check_paths or recovery == "forney-monomial") else None
    loc = locate_errors(code, Sb if monomial else S, strategy, debug=debug)
    rep = ErrorReport("decoding_failure", locator=loc.lam, iterations=loc.iterations,
                      strategy=strategy, recovery=recovery)
    if not loc.ok:
        rep.reason = loc.reason
        return rep
    lam = loc.lam
    if not validate_locator(code, lam):
        rep.reason = "locator does not divide m(x)"
        return rep
    rep.support = locator_roots(code, lam)

    def by_interp(method):
        C = recover_by_interpolation(code, rows, lam, method, Y=Y)
        return [psi(code, c) for c in C]

    def by_forney(domain):
        E = forney(code, Sb if domain == "monomial" else S, lam, domain)
        return _sub_rows(F, rows, E)

    runners = {
        "interp": lambda: by_interp("mod"),
        "interp-div": lambda: by_interp("div"),
        "forney-syndrome": lambda: by_forney("syndrome"),
        "forney-monomial": lambda: by_forney("monomial"),
    }
    chosen = recovery
    if chosen == "forney":
        chosen = "forney-monomial" if monomial else "forney-syndrome"
    names = list(runners) if check_paths else [chosen]
    results = {}
    for name in names:
        try:
            results[name] = runners[name]()
        except CodeError as exc:
            results[name] = exc
    got = results[chosen]
    if isinstance(got, Exception):
        rep.reason = f"{type(got).__name__}: {got}"
        return rep
    # re-encode check: every corrected row must be a codeword
    msgs = []
    for i, (r, ki) in enumerate(zip(got, code.k), 1):
        c = psi_inverse(code, r)
        if c.deg() >= ki:
            rep.reason = f"corrected row {i} is not a codeword"
            return rep
        msgs.append(c)
    if check_paths:
        rep.paths = results
        rep.paths_agree = all(not isinstance(v, Exception) and v == got for v in results.values())
    rep.status = "corrected"
    rep.corrected = got
    rep.messages = msgs
    rep.error_values = _sub_rows(F, rows, got)
    return rep


# config files ----------------------------------------------------------------------
#
#   field = b:4:0x13
#   n = 15
#   L = 2
#   k = 7,7
#   beta = powers        # or a comma list; omitted means 0..n-1

def parse_code_config(text: str) -> CodeSpec:
    kv = {}
    for lineno, ln in enumerate(text.splitlines(), 1):
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        if "=" not in ln:
            raise CodeConfigError(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in ln.split("=", 1))
        if key not in ("field", "n", "L", "k", "beta"):
            raise CodeConfigError(f"line {lineno}: unknown key {key!r}")
        kv[key] = val
    missing = {"field", "n", "L", "k"} - set(kv)
    if missing:
        raise CodeConfigError(f"missing keys: {', '.join(sorted(missing))}")
    try:
        F = field_new(FieldSpec.parse(kv["field"]))
        n, L = int(kv["n"]), int(kv["L"])
        k = [int(x) for x in kv["k"].split(",")]
        if len(k) == 1:
            k = k * L
        beta = kv.get("beta")
        if beta is not None and beta != "powers":
            beta = [int(x) for x in beta.split(",")]
    except ValueError as exc:
        if isinstance(exc, CodeError):
            raise
        raise CodeConfigError(str(exc)) from exc
    return code_new(F, n, L, k, beta)


def format_code_config(code: CodeSpec) -> str:
    return (f"field = {code.field.spec}\nn = {code.n}\nL = {code.L}\n"
            f"k = {','.join(map(str, code.k))}\nbeta = {','.join(map(str, code.beta))}\n")


def parse_word(text: str) -> list:
    rows = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            rows.append([int(x) for x in ln.split(",")])
    return rows


def format_word(rows) -> str:
    return "\n".join(",".join(str(int(v)) for v in r) for r in rows) + "\n"
