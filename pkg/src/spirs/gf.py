"""Finite fields F_p and F_{2^m}.

Elements are plain ints in ``[0, q)``.  A :class:`Field` does the arithmetic
on those ints; :class:`FieldElement` wraps an int together with its field for
callers that want operator syntax and mixed-field checking.

Binary extension fields are built from a reduction polynomial given as a bit
mask, e.g. ``0b10011`` for x^4 + x + 1.  Small binary fields (q <= 256) get a
full multiplication table, larger ones use log/antilog tables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache


class FieldError(ValueError):
    pass


class NonPrimeModulus(FieldError):
    pass


class ReducibleReductionPoly(FieldError):
    pass


class UnsupportedSize(FieldError):
    pass


class MixedFields(FieldError):
    pass


class FieldSpecParseError(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


MAX_PRIME = 2**31
MAX_BINARY_DEGREE = 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _bitdeg(a: int) -> int:
    return a.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[x] polynomials packed as ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def clmod(a: int, m: int) -> int:
    dm = _bitdeg(m)
    while a and _bitdeg(a) >= dm:
        a ^= m << (_bitdeg(a) - dm)
    return a


def is_irreducible_gf2(poly: int) -> bool:
    """Exhaustive trial division by every F_2 polynomial of degree 1..deg/2."""
    d = _bitdeg(poly)
    if d < 1:
        return False
    for f in range(2, 1 << (d // 2 + 1)):
        if clmod(poly, f) == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Description of a field: ``prime`` with modulus p, or ``binary`` with
    extension degree m and reduction polynomial bits."""

    kind: str
    p: int = 0
    m: int = 0
    poly: int = 0

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime", p=p)

    @classmethod
    def binary(cls, m: int, poly: int) -> FieldSpec:
        return cls("binary", m=m, poly=poly)

    @property
    def q(self) -> int:
        return self.p if self.kind == "prime" else 1 << self.m

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``p:<prime>`` or ``b:<m>:<poly>`` (poly in decimal, 0x or 0b)."""
        s = text.strip()
        mt = re.fullmatch(r"p:(\d+)", s)
        if mt:
            return cls.prime(int(mt.group(1)))
        mt = re.fullmatch(r"b:(\d+):(0x[0-9a-fA-F]+|0b[01]+|\d+)", s)
        if mt:
            return cls.binary(int(mt.group(1)), int(mt.group(2), 0))
        raise FieldSpecParseError(f"bad field spec {text!r}; expected 'p:<prime>' or 'b:<m>:<poly>'")

    def __str__(self) -> str:
        if self.kind == "prime":
            return f"p:{self.p}"
        return f"b:{self.m}:{self.poly:#x}"

    def validate(self) -> None:
        if self.kind == "prime":
            if not (2 <= self.p < MAX_PRIME):
                raise UnsupportedSize(f"prime modulus {self.p} outside [2, 2^31)")
            if not is_prime(self.p):
                raise NonPrimeModulus(f"{self.p} is not prime")
        elif self.kind == "binary":
            if not (1 <= self.m <= MAX_BINARY_DEGREE):
                raise UnsupportedSize(f"extension degree {self.m} outside [1, {MAX_BINARY_DEGREE}]")
            if _bitdeg(self.poly) != self.m:
                raise ReducibleReductionPoly(
                    f"reduction polynomial {self.poly:#x} does not have degree {self.m}")
            if not is_irreducible_gf2(self.poly):
                raise ReducibleReductionPoly(f"reduction polynomial {self.poly:#x} is reducible")
        else:
            raise FieldSpecParseError(f"unknown field kind {self.kind!r}")


class Field:
    """Arithmetic on the int representatives of one finite field.

    Instances are immutable and cached per spec, so ``field_new`` with equal
    specs returns the same object.
    """

    zero = 0
    one = 1

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.q = spec.q

    def __repr__(self):
        return f"Field({self.spec})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __reduce__(self):
        return (field_new, (self.spec,))

    # scalar ops, overridden per kind
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F (n * 1)."""
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.q)

    def element(self, value: int) -> FieldElement:
        if not 0 <= value < self.q:
            raise FieldError(f"{value} is not an element of {self.spec}")
        return FieldElement(self, value)

    def generator(self) -> int:
        """Some element of multiplicative order q - 1."""
        return self._generator

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)
        for g in range(2, self.q):
            if all(self.pow(g, n // f) != 1 for f in factors):
                return g
        raise FieldError("no generator found")  # unreachable for a field

    # vector kernels used by the polynomial code
    def addmul_into(self, acc: list, offset: int, c: int, v) -> None:
        """acc[offset + j] += c * v[j]."""
        raise NotImplementedError

    def scale(self, c: int, v) -> list:
        raise NotImplementedError

    def dot(self, u, v) -> int:
        """Sum of u[j] * v[j] over the common length."""
        raise NotImplementedError


class PrimeField(Field):
    def __init__(self, spec):
        super().__init__(spec)
        self.p = spec.p
        self.char = spec.p
        self._generator = self._find_generator() if self.p < 1 << 20 else None

    def generator(self):
        if self._generator is None:
            self._generator = self._find_generator()
        return self._generator

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def addmul_into(self, acc, offset, c, v):
        p = self.p
        for j, x in enumerate(v, offset):
            acc[j] = (acc[j] + c * x) % p

    def scale(self, c, v):
        p = self.p
        return [c * x % p for x in v]

    def dot(self, u, v):
        return sum(a * b for a, b in zip(u, v)) % self.p


class BinaryField(Field):
    def __init__(self, spec):
        super().__init__(spec)
        self.m = spec.m
        self.poly = spec.poly
        self.char = 2
        q = self.q
        # log/antilog over a generator; x itself need not be primitive
        self._generator = self._search_generator()
        exp = [0] * (2 * q)
        log = [0] * q
        a = 1
        for i in range(q - 1):
            exp[i] = a
            log[a] = i
            a = clmod(clmul(a, self._generator), self.poly)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log
        self._table = None
        if q <= 256:
            self._table = [[self._mul_log(a, b) for b in range(q)] for a in range(q)]

    def _search_generator(self):
        n = self.q - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)

        def slow_pow(a, e):
            r = 1
            while e:
                if e & 1:
                    r = clmod(clmul(r, a), self.poly)
                a = clmod(clmul(a, a), self.poly)
                e >>= 1
            return r

        for g in range(2, self.q):
            if all(slow_pow(g, n // f) != 1 for f in factors):
                return g
        raise FieldError("no generator found")

    def _mul_log(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if self._table is not None:
            return self._table[a][b]
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def from_int(self, n):
        return n & 1

    def addmul_into(self, acc, offset, c, v):
        if c == 0:
            return
        if self._table is not None:
            row = self._table[c]
            for j, x in enumerate(v, offset):
                acc[j] ^= row[x]
        else:
            exp, log = self._exp, self._log
            lc = log[c]
            for j, x in enumerate(v, offset):
                if x:
                    acc[j] ^= exp[lc + log[x]]

    def scale(self, c, v):
        if c == 0:
            return [0] * len(v)
        if self._table is not None:
            row = self._table[c]
            return [row[x] for x in v]
        exp, log = self._exp, self._log
        lc = log[c]
        return [exp[lc + log[x]] if x else 0 for x in v]

    def dot(self, u, v):
        r = 0
        if self._table is not None:
            t = self._table
            for a, b in zip(u, v):
                r ^= t[a][b]
        else:
            exp, log = self._exp, self._log
            for a, b in zip(u, v):
                if a and b:
                    r ^= exp[log[a] + log[b]]
        return r


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def field_new(spec: FieldSpec | str) -> Field:
    """Build (or fetch the cached) field for ``spec``."""
    if isinstance(spec, str):
        spec = FieldSpec.parse(spec)
    spec.validate()
    if spec.kind == "prime":
        return PrimeField(spec)
    return BinaryField(spec)


def GF(q_or_spec, poly: int | None = None) -> Field:
    """Shorthand: ``GF(7)``, ``GF(16)`` (default reduction poly), ``GF("b:4:0x13")``."""
    if isinstance(q_or_spec, (str, FieldSpec)):
        return field_new(q_or_spec)
    q = int(q_or_spec)
    if is_prime(q):
        return field_new(FieldSpec.prime(q))
    m = _bitdeg(q)
    if q != 1 << m:
        raise UnsupportedSize(f"q = {q} is neither prime nor a power of two")
    if poly is None:
        poly = DEFAULT_POLYS.get(m)
        if poly is None:
            raise UnsupportedSize(f"no default reduction polynomial for m = {m}")
    return field_new(FieldSpec.binary(m, poly))


# primitive trinomials/pentanomials for m = 1..16
DEFAULT_POLYS = {
    1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011,
    7: 0b10000011, 8: 0x11D, 9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053,
    13: 0x201B, 14: 0x4443, 15: 0x8003, 16: 0x1100B,
}


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise MixedFields(f"{self.field.spec} vs {b.field.spec}")
            return b.value
        if isinstance(b, int):
            return self.field.from_int(b)
        return NotImplemented

    def __add__(self, b):
        return FieldElement(self.field, self.field.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.field, self.field.sub(self._other(b), self.value))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return self * FieldElement(self.field, self._other(b)).inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}@{self.field.spec}"


def ff_arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    if a.field != b.field:
        raise MixedFields(f"{a.field.spec} vs {b.field.spec}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
