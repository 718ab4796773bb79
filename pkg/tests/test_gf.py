import pickle

import numpy as np
import pytest

from spirs.gf import (
    GF, DivisionByZero, FieldElement, FieldSpec, FieldSpecParseError, MixedFields, NonPrimeModulus,
    ReducibleReductionPoly, UnsupportedSize, clmod, clmul, ff_arith, ff_inv, field_new,
    is_irreducible_gf2,
)

FIELDS = ["p:7", "p:65521", "b:4:0x13", "b:8:0x11d", "b:16:0x1100b", "p:2", "b:1:0x3"]


def test_construction_examples():
    assert field_new(FieldSpec.prime(7)).q == 7
    assert field_new(FieldSpec.binary(4, 0b10011)).q == 16
    with pytest.raises(NonPrimeModulus):
        field_new(FieldSpec.prime(6))
    with pytest.raises(ReducibleReductionPoly):
        field_new(FieldSpec.binary(4, 0b10101))  # (x^2+x+1)^2
    with pytest.raises(ReducibleReductionPoly):
        field_new(FieldSpec.binary(4, 0b111))  # wrong degree
    with pytest.raises(UnsupportedSize):
        field_new(FieldSpec.binary(17, (1 << 17) | 0b1001))
    with pytest.raises(UnsupportedSize):
        field_new(FieldSpec.prime(2147483659))


def test_zero_one_distinct():
    for s in FIELDS:
        F = field_new(s)
        assert F.zero == 0 and F.one == 1 and F.zero != F.one


def test_arith_examples():
    F = GF(7)
    a, b = F.element(3), F.element(5)
    assert int(ff_arith("add", a, b)) == 1
    assert int(ff_arith("mul", a, b)) == 1
    assert int(ff_inv(a)) == 5
    assert int(ff_inv(F.element(1))) == 1
    with pytest.raises(DivisionByZero):
        ff_inv(F.element(0))
    G = GF(16)
    assert G.mul(0x02, 0x08) == 0x03
    with pytest.raises(DivisionByZero):
        G.inv(0)


def test_mixed_fields():
    a = GF(7).element(3)
    b = GF(5).element(3)
    with pytest.raises(MixedFields):
        ff_arith("add", a, b)
    with pytest.raises(MixedFields):
        a * b


def test_spec_text_round_trip():
    for s in ["p:7", "b:4:0x13", "b:16:0x1100b"]:
        assert str(FieldSpec.parse(s)) == s
    assert FieldSpec.parse("b:4:19") == FieldSpec.parse("b:4:0b10011")
    for bad in ["7", "p:", "q:7", "b:4", "b:4:0xZZ", "p:7 extra"]:
        with pytest.raises(FieldSpecParseError):
            FieldSpec.parse(bad)


@pytest.mark.parametrize("spec", FIELDS)
def test_field_axioms_random(spec):
    F = field_new(spec)
    rng = np.random.default_rng(11)
    a, b, c = (rng.integers(0, F.q, 10_000) for _ in range(3))
    for x, y, z in zip(a.tolist(), b.tolist(), c.tolist()):
        assert F.add(x, y) == F.add(y, x)
        assert F.mul(x, y) == F.mul(y, x)
        assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        assert F.add(x, F.neg(x)) == 0
        assert F.sub(F.add(x, y), y) == x


@pytest.mark.parametrize("spec", ["p:2", "p:7", "p:251", "b:1:0x3", "b:3:0xb", "b:4:0x13", "b:8:0x11d", "b:8:0x11b"])
def test_inverse_exhaustive(spec):
    F = field_new(spec)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("spec", ["b:2:0x7", "b:3:0xb", "b:4:0x13", "b:8:0x11d", "b:8:0x11b"])
def test_binary_mul_matches_clmul_exhaustive(spec):
    F = field_new(spec)
    poly = F.spec.poly
    for a in range(F.q):
        row = [clmod(clmul(a, b), poly) for b in range(F.q)]
        assert [F.mul(a, b) for b in range(F.q)] == row


def test_large_binary_field_matches_clmul():
    F = GF(1 << 16)
    rng = np.random.default_rng(3)
    for a, b in rng.integers(0, F.q, (5000, 2)).tolist():
        assert F.mul(a, b) == clmod(clmul(a, b), F.spec.poly)


def test_irreducibility_check():
    assert is_irreducible_gf2(0b10011)
    assert is_irreducible_gf2(0x11D)
    assert not is_irreducible_gf2(0b10101)
    assert not is_irreducible_gf2(0b110)  # divisible by x


def test_vector_kernels_match_scalar():
    for s in FIELDS:
        F = field_new(s)
        rng = np.random.default_rng(5)
        u = rng.integers(0, F.q, 9).tolist()
        v = rng.integers(0, F.q, 9).tolist()
        c = int(rng.integers(0, F.q))
        acc = list(u) + [0, 0]
        F.addmul_into(acc, 2, c, v)
        ref = list(u) + [0, 0]
        for j, x in enumerate(v):
            ref[j + 2] = F.add(ref[j + 2], F.mul(c, x))
        assert acc == ref
        assert F.scale(c, v) == [F.mul(c, x) for x in v]
        dot = 0
        for x, y in zip(u, v):
            dot = F.add(dot, F.mul(x, y))
        assert F.dot(u, v) == dot


def test_generator_has_full_order():
    for s in ["p:7", "p:251", "b:4:0x13", "b:8:0x11b"]:
        F = field_new(s)
        g = F.generator()
        seen = {F.pow(g, e) for e in range(F.q - 1)}
        assert len(seen) == F.q - 1


def test_fields_pickle_and_compare():
    F = GF(16)
    G = pickle.loads(pickle.dumps(F))
    assert G == F and hash(G) == hash(F)
    assert GF(7) != GF(16)


def test_element_operators():
    F = GF(7)
    x = FieldElement(F, 3)
    assert int(x + 5) == 1 and int(x * x) == 2 and int(x / x) == 1 and int(-x) == 4
    assert int(x ** 6) == 1 and not FieldElement(F, 0)
