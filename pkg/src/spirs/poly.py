"""Dense univariate polynomials over a :class:`~spirs.gf.Field`.

Coefficients are stored low-to-high as a tuple of ints with no trailing zeros;
the zero polynomial is the empty tuple and has degree ``NEG_INF``
(``float('-inf')``), which is below every integer and absorbs addition.

The ``_``-prefixed list functions at the bottom are the raw kernels; the
solvers call them directly to avoid wrapper churn in inner loops.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .gf import Field, FieldElement, MixedFields

NEG_INF = float("-inf")


class PolynomialError(ValueError):
    pass


class DivisionByZeroPoly(ZeroDivisionError):
    pass


class TargetDegreeTooSmall(PolynomialError):
    pass


class NotInvertibleAtZero(PolynomialError):
    pass


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise MixedFields(f"{c.field.spec} coefficient in {field.spec} polynomial")
                c = c.value
            elif not 0 <= c < field.q:
                if field.char == 2:
                    raise PolynomialError(f"coefficient {c} is not an element of {field.spec}")
                c %= field.q
            vals.append(c)
        self.field = field
        self.coeffs = tuple(_norm(vals))

    @classmethod
    def _raw(cls, field: Field, coeffs) -> Polynomial:
        # coeffs already canonical and normalized
        p = object.__new__(cls)
        p.field = field
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def zero(cls, field: Field) -> Polynomial:
        return cls._raw(field, ())

    @classmethod
    def one(cls, field: Field) -> Polynomial:
        return cls._raw(field, (1,))

    @classmethod
    def monomial(cls, field: Field, k: int, c: int = 1) -> Polynomial:
        if c == 0:
            return cls.zero(field)
        return cls._raw(field, (0,) * k + (c,))

    @classmethod
    def x(cls, field: Field) -> Polynomial:
        return cls.monomial(field, 1)

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable[int]) -> Polynomial:
        """Monic product of (x - r) over ``roots``."""
        acc = [1]
        for r in roots:
            acc = _mul(field, acc, [field.neg(r), 1])
        return cls._raw(field, acc)

    @classmethod
    def parse(cls, field: Field, text: str) -> Polynomial:
        """Parse ``"1,0,3"`` (= 1 + 3x^2); empty string is zero."""
        s = text.strip()
        if not s:
            return cls.zero(field)
        try:
            vals = [int(t) for t in s.split(",")]
        except ValueError as exc:
            raise PolynomialError(f"bad coefficient list {text!r}") from exc
        for v in vals:
            if not 0 <= v < field.q:
                raise PolynomialError(f"coefficient {v} not in [0, {field.q})")
        return cls(field, vals)

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    # basic properties
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def degree(self):
        return self.deg()

    def lcf(self) -> int:
        if not self.coeffs:
            raise PolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __getitem__(self, k):
        return self.coeff(k)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> Polynomial:
        if not self.coeffs:
            raise PolynomialError("cannot normalize the zero polynomial")
        c = self.coeffs[-1]
        if c == 1:
            return self
        return Polynomial._raw(self.field, self.field.scale(self.field.inv(c), self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.field.spec}, {list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    # arithmetic
    def _check(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return Polynomial(self.field, [self.field.from_int(other)])
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.field != self.field:
            raise MixedFields(f"{self.field.spec} vs {other.field.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.field, _add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.field, _sub(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return Polynomial._raw(self.field, _mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> Polynomial:
        if c == 0:
            return Polynomial.zero(self.field)
        return Polynomial._raw(self.field, self.field.scale(c, self.coeffs))

    def shift(self, k: int) -> Polynomial:
        """Multiply by x^k (k >= 0)."""
        if not self.coeffs:
            return self
        return Polynomial._raw(self.field, (0,) * k + self.coeffs)

    def truncate(self, k: int) -> Polynomial:
        """self mod x^k."""
        return Polynomial._raw(self.field, _norm(list(self.coeffs[:max(k, 0)])))

    def high(self, k: int) -> Polynomial:
        """self div x^k: coefficients from index k upward."""
        return Polynomial._raw(self.field, self.coeffs[k:])

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __call__(self, x0):
        if isinstance(x0, FieldElement):
            if x0.field != self.field:
                raise MixedFields(f"{x0.field.spec} vs {self.field.spec}")
            return FieldElement(self.field, _eval(self.field, self.coeffs, x0.value))
        return _eval(self.field, self.coeffs, x0)

    def derivative(self) -> Polynomial:
        return poly_derivative(self)

    def reverse(self, target_deg) -> Polynomial:
        return poly_reverse(self, target_deg)


def poly_divmod(a: Polynomial, m: Polynomial) -> tuple[Polynomial, Polynomial]:
    m = a._check(m)
    if not m.coeffs:
        raise DivisionByZeroPoly("division by the zero polynomial")
    q, r = _divmod(a.field, a.coeffs, m.coeffs)
    return Polynomial._raw(a.field, q), Polynomial._raw(a.field, r)


def poly_mul_mod(a: Polynomial, b: Polynomial, m: Polynomial) -> Polynomial:
    return poly_divmod(a * b, m)[1]


def poly_eval(a: Polynomial, x0):
    return a(x0)


def poly_derivative(a: Polynomial) -> Polynomial:
    """Formal derivative; l * a_l is the l-fold sum, so char p is respected."""
    F = a.field
    out = [F.mul(F.from_int(k), c) for k, c in enumerate(a.coeffs)][1:]
    return Polynomial._raw(F, _norm(out))


def poly_reverse(a: Polynomial, target_deg) -> Polynomial:
    """x^target_deg * a(1/x)."""
    if not a.coeffs:
        return a
    if target_deg < a.deg():
        raise TargetDegreeTooSmall(f"target degree {target_deg} < deg a = {a.deg()}")
    pad = target_deg + 1 - len(a.coeffs)
    return Polynomial._raw(a.field, _norm([0] * pad + list(reversed(a.coeffs))))


def poly_inv_mod_xk(a: Polynomial, k: int) -> Polynomial:
    """w with a*w = 1 mod x^k, by solving for the coefficients one at a time."""
    if k < 1:
        raise PolynomialError("k must be >= 1")
    if a.coeff(0) == 0:
        raise NotInvertibleAtZero("a(0) = 0 has no inverse modulo x^k")
    return Polynomial._raw(a.field, _inv_mod_xk(a.field, a.coeffs, k))


# list kernels ------------------------------------------------------------

def _norm(v: list) -> list:
    while v and v[-1] == 0:
        v.pop()
    return v


def _add(F: Field, u: Sequence, v: Sequence) -> list:
    if len(u) < len(v):
        u, v = v, u
    out = list(u)
    add = F.add
    for j, x in enumerate(v):
        out[j] = add(out[j], x)
    return _norm(out)


def _sub(F: Field, u: Sequence, v: Sequence) -> list:
    n = max(len(u), len(v))
    out = list(u) + [0] * (n - len(u))
    sub = F.sub
    for j, x in enumerate(v):
        out[j] = sub(out[j], x)
    return _norm(out)


def _mul(F: Field, u: Sequence, v: Sequence) -> list:
    if not u or not v:
        return []
    if len(u) < len(v):
        u, v = v, u
    acc = [0] * (len(u) + len(v) - 1)
    for i, c in enumerate(v):
        if c:
            F.addmul_into(acc, i, c, u)
    return _norm(acc)


def _divmod(F: Field, a: Sequence, m: Sequence) -> tuple[list, list]:
    dm = len(m) - 1
    r = list(a)
    if len(r) - 1 < dm:
        return [], r
    lead_inv = F.inv(m[-1])
    mneg = [F.neg(c) for c in m]
    q = [0] * (len(r) - dm)
    for s in range(len(r) - 1 - dm, -1, -1):
        c = r[s + dm]
        if c:
            qc = F.mul(c, lead_inv)
            q[s] = qc
            F.addmul_into(r, s, qc, mneg)
    del r[dm:]
    return _norm(q), _norm(r)


def _mod(F: Field, a: Sequence, m: Sequence) -> list:
    return _divmod(F, a, m)[1]


def _eval(F: Field, a: Sequence, x0: int) -> int:
    acc = 0
    mul, add = F.mul, F.add
    for c in reversed(a):
        acc = add(mul(acc, x0), c)
    return acc


def _inv_mod_xk(F: Field, a: Sequence, k: int) -> list:
    a0inv = F.inv(a[0])
    w = [a0inv]
    for j in range(1, k):
        # coefficient j of a*w must vanish: a0*w_j = -sum_{l=1..j} a_l w_{j-l}
        s = F.dot(a[1:j + 1], w[j - 1::-1])
        w.append(F.mul(F.neg(s), a0inv))
    return _norm(w)


def _shift(v: Sequence, k: int) -> list:
    return [0] * k + list(v) if v else []


def _deg(v: Sequence):
    return len(v) - 1 if v else NEG_INF
