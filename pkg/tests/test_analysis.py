from fractions import Fraction

import numpy as np
import pytest

from spirs.analysis import (
    FORMULATIONS, BoundError, LNotGreaterThanOne, TOutOfRange, bound_full_rank,
    bound_roth_vontobel, bound_ssb, condition_instance, error_locator, error_rank,
    partial_inverse_condition, rank_deficient_batch, sample_error, simulate, support, trial_rng,
)
from spirs.analysis.simulate import ErrorModelError, add_words, parse_error_model
from spirs.analysis.bounds import max_radius
from spirs.gf import GF
from spirs.irs.codec import code_new, encode
from spirs.poly import Polynomial


def test_rank_examples(gf8):
    assert error_rank(gf8, [[0] * 5, [0] * 5]) == 0
    assert error_rank(gf8, [[0, 3, 3, 0], [0, 5, 5, 0]]) == 1
    assert error_rank(GF(7), [[1, 2], [2, 4]]) == 1
    assert error_rank(GF(7), [[1, 2, 0], [0, 1, 1], [1, 3, 1]]) == 2


def test_roth_vontobel_radius():
    assert bound_roth_vontobel(15, 7, 2) == 4
    assert bound_roth_vontobel(15, 7, 1) == 4
    assert bound_roth_vontobel(7, 3, 1) == 2
    assert bound_roth_vontobel(15, 7, 8) == 7
    with pytest.raises(BoundError):
        bound_roth_vontobel(15, 7, -1)


def test_full_rank_bound():
    assert bound_full_rank(4, 3, 2).exact == Fraction(1, 12)
    assert bound_full_rank(16, 3, 3).exact == Fraction(1, 15)
    with pytest.raises(TOutOfRange):
        bound_full_rank(4, 3, 4)


def test_ssb_bound():
    b = bound_ssb(16, 2, 15, 7, 5)
    assert b.exact == Fraction(1, 240) and b.exponent == -1
    assert abs(b.value - 4.1667e-3) < 1e-6
    big = bound_ssb(16, 2, 15, 7, 8)
    assert big.vacuous and big.exact >= 1
    with pytest.raises(LNotGreaterThanOne):
        bound_ssb(16, 1, 15, 7, 3)
    with pytest.raises(TOutOfRange):
        bound_ssb(16, 2, 15, 7, 9)


def test_max_radius():
    assert max_radius(15, 2, 7, 7) == 5
    assert max_radius(7, 2, 3, 3) == 2
    assert max_radius(15, 10, 7, 7) == 7
    assert max_radius(15, 1, 7, 7) == 4
    assert max_radius(15, 3, 9, Fraction(23, 3)) == 5


def test_full_rank_probability_monte_carlo():
    # t uniform nonzero columns of F_4^3 are dependent with probability <= 1/12
    F = GF("b:2:0x7")
    rng = np.random.default_rng(0)
    N = 20000
    # a uniform nonzero vector of F_4^3 is a uniform index in 1..63 read in base 4
    idx = rng.integers(1, 64, size=(N, 2))
    cols = np.stack([(idx >> (2 * j)) & 3 for j in range(3)], axis=-1)
    dep = rank_deficient_batch(F, cols)
    # exact value is 3/63; the bound is looser
    assert abs(dep.mean() - 3 / 63) < 4 * (3 / 63 / N) ** 0.5
    assert dep.mean() <= float(bound_full_rank(4, 3, 2).exact)
    # exact small cross-check against Gaussian elimination
    for j in range(200):
        assert dep[j] == (error_rank(F, cols[j]) < 2)


def test_rank_deficient_batch_general(gf8):
    rng = np.random.default_rng(3)
    cols = rng.integers(0, 8, size=(300, 3, 3))
    dep = rank_deficient_batch(gf8, cols)
    for j in range(300):
        assert dep[j] == (error_rank(gf8, cols[j]) < 3)


def test_condition_examples(code8):
    F = code8.field
    assert partial_inverse_condition(code8, [[0] * 7, [0] * 7])
    assert error_locator(code8, [[0] * 7, [0] * 7]) == Polynomial.one(F)
    E = [[0, 0, 4, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 2]]
    assert support(E) == (2, 6)
    assert partial_inverse_condition(code8, E, oracle=True)


def test_formulations_agree_small(code8):
    F = code8.field
    rng = np.random.default_rng(17)
    for _ in range(60):
        t = int(rng.integers(0, 5))
        E = sample_error(rng, code8, t)
        msgs = [[int(x) for x in rng.integers(0, 8, ki)] for ki in code8.k]
        Y = add_words(code8, encode(code8, msgs), E)
        got = {f: partial_inverse_condition(code8, E, f, Y=Y) for f in FORMULATIONS}
        assert len(set(got.values())) == 1, got


def test_condition_instance_shapes(code8):
    E = [[1, 0, 0, 0, 0, 0, 0], [0] * 7]
    inst = condition_instance(code8, E, "syndrome")
    assert [c.tau for c in inst] == [1, 1]
    mono = condition_instance(code8, E, "monomial")
    assert mono.is_monomial()
    with pytest.raises(ValueError):
        condition_instance(code8, E, "received")


def test_error_models(gf16):
    code = code_new(gf16, 15, 3, 7, "powers")
    for r in (1, 2, 3):
        for trial in range(30):
            E = sample_error(trial_rng(9, trial), code, 5, f"rank:{r}")
            assert len(support(E)) == 5 and error_rank(gf16, E) == r
    E = sample_error(trial_rng(1, 0), code, 4)
    assert len(support(E)) == 4
    assert parse_error_model("uniform") == ("uniform", None)
    for bad in ("rank:0", "rank:x", "gauss"):
        with pytest.raises(ErrorModelError):
            parse_error_model(bad)
    with pytest.raises(ErrorModelError):
        sample_error(trial_rng(1, 0), code, 2, "rank:3")


def test_simulation_guarantee_and_determinism(code8):
    reps = [simulate(code8, t, 150, seed=4, check_condition=True, check_paths=True) for t in (0, 1, 2)]
    for r in reps:
        assert r.failures_decode == r.miscorrections == 0
        assert r.failures_condition == 0 and r.path_disagreements == 0
    assert reps[0].bound_note == "no errors"
    again = simulate(code8, 2, 150, seed=4, check_condition=True, check_paths=True)
    assert again == reps[2]


def test_parallel_matches_serial(code8):
    a = simulate(code8, 3, 80, seed=2, check_condition=True)
    b = simulate(code8, 3, 80, seed=2, check_condition=True, workers=2)
    assert a == b


def test_simulation_rejects_bad_input(code8):
    with pytest.raises(TOutOfRange):
        simulate(code8, 9, 10, seed=1)
    with pytest.raises(ValueError):
        simulate(code8, 1, 0, seed=1)
    single = code_new(GF(7), 6, 1, 2)
    assert simulate(single, 1, 5, seed=1).bound_note.startswith("not applicable")
