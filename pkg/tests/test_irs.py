from itertools import combinations

import numpy as np
import pytest

from spirs.gf import GF
from spirs.irs.codec import (
    STRATEGIES, CodeConfigError, DuplicateEvalPoint, KMaxNotLessThanN, LocatorNotValidated,
    MessageDegreeTooHigh, WordShapeError, code_new, decode, encode, format_code_config, forney,
    locate_errors, monomialized_syndromes, parse_code_config, psi, psi_inverse,
    recover_by_interpolation, syndromes, validate_locator,
)
from spirs.poly import Polynomial

F7 = GF(7)


def P(F, *c):
    return Polynomial(F, c)


def single_error(code, l, col):
    E = [[0] * code.n for _ in range(code.L)]
    for i, v in enumerate(col):
        E[i][l] = v
    return E


def add(F, A, B):
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def random_word(rng, code):
    msgs = [[int(x) for x in rng.integers(0, code.field.q, ki)] for ki in code.k]
    return msgs, encode(code, msgs)


def random_errors(rng, code, sup):
    E = [[0] * code.n for _ in range(code.L)]
    for l in sup:
        while True:
            col = [int(x) for x in rng.integers(0, code.field.q, code.L)]
            if any(col):
                break
        for i in range(code.L):
            E[i][l] = col[i]
    return E


def test_code_new_examples():
    code = code_new(F7, 3, 1, 2, [1, 2, 3])
    assert code.m == P(F7, 1, 4, 1, 1)
    with pytest.raises(DuplicateEvalPoint):
        code_new(F7, 3, 1, 2, [1, 2, 1])
    with pytest.raises(KMaxNotLessThanN):
        code_new(F7, 3, 1, 3)


def test_cyclic_m_tilde(code8_cyclic):
    code = code8_cyclic
    assert code.is_cyclic()
    assert code.m == Polynomial.monomial(code.field, 7) - Polynomial.one(code.field)
    for mt, ki in zip(code.m_tilde, code.k):
        assert mt == Polynomial.monomial(code.field, code.n - ki)


def test_encode_and_interpolate():
    code = code_new(F7, 3, 1, 2, [1, 2, 3])
    assert encode(code, [[1, 1]]) == [[2, 3, 4]]
    assert encode(code, [[]]) == [[0, 0, 0]]
    assert encode(code, [[5]]) == [[5, 5, 5]]
    assert psi_inverse(code, [2, 3, 4]) == P(F7, 1, 1)
    assert psi_inverse(code, [0, 0, 0]).is_zero()
    with pytest.raises(MessageDegreeTooHigh):
        encode(code, [[1, 1, 1]])


def test_psi_round_trip(gf16):
    code = code_new(gf16, 15, 2, (7, 5), "powers")
    rng = np.random.default_rng(0)
    for _ in range(30):
        a = Polynomial(gf16, [int(x) for x in rng.integers(0, 16, 15)])
        assert psi_inverse(code, psi(code, a)) == a


def test_syndrome_window():
    F = GF(7)
    code = code_new(F, 5, 1, 2)
    y = [3, 0, 6, 2, 5]
    row = psi(code, Polynomial(F, y))
    assert syndromes(code, [row]) == [Polynomial(F, y[2:])]


def test_codeword_has_zero_syndromes(code8):
    rng = np.random.default_rng(1)
    _, C = random_word(rng, code8)
    S = syndromes(code8, C)
    assert all(s.is_zero() for s in S)
    assert all(s.is_zero() for s in monomialized_syndromes(code8, S))
    for strat in STRATEGIES:
        rep = decode(code8, C, strat)
        assert rep.ok and rep.corrected == C and rep.locator == Polynomial.one(code8.field)


def test_single_error_locator(code8):
    F = code8.field
    rng = np.random.default_rng(4)
    _, C = random_word(rng, code8)
    for l in range(code8.n):
        Y = add(F, C, single_error(code8, l, [3, 0]))
        S = syndromes(code8, Y)
        for strat in STRATEGIES:
            syn = monomialized_syndromes(code8, S) if strat.endswith("monomial") else S
            loc = locate_errors(code8, syn, strat, debug=True)
            assert loc.ok and loc.lam == Polynomial.from_roots(F, [code8.beta[l]])


def test_validate_locator(code8):
    F = code8.field
    b0, b1 = code8.beta[0], code8.beta[1]
    assert validate_locator(code8, Polynomial.one(F))
    assert validate_locator(code8, Polynomial.from_roots(F, [b0, b1]))
    assert not validate_locator(code8, Polynomial.from_roots(F, [b0, b0]))
    Y = [[0] * 7, [0] * 7]
    with pytest.raises(LocatorNotValidated):
        recover_by_interpolation(code8, Y, Polynomial.from_roots(F, [b1, b1]))


def test_forney_single_value(code8_cyclic):
    code = code8_cyclic
    F = code.field
    for l in range(code.n):
        for i in range(code.L):
            col = [0] * code.L
            col[i] = 5
            E = single_error(code, l, col)
            S = syndromes(code, E)
            lam = Polynomial.from_roots(F, [code.beta[l]])
            assert forney(code, S, lam, "syndrome") == E
            assert forney(code, monomialized_syndromes(code, S), lam, "monomial") == E
    assert forney(code, syndromes(code, [[0] * 7] * 2), Polynomial.one(F)) == [[0] * 7] * 2


def test_identity_locator_recovers_messages(code8):
    rng = np.random.default_rng(9)
    msgs, C = random_word(rng, code8)
    got = recover_by_interpolation(code8, C, Polynomial.one(code8.field))
    assert got == [Polynomial(code8.field, m) for m in msgs]


@pytest.mark.parametrize("cyclic", [False, True])
def test_half_distance_all_strategies(cyclic, code8, code8_cyclic):
    code = code8_cyclic if cyclic else code8
    F = code.field
    rng = np.random.default_rng(12)
    for t in (1, 2):
        for sup in combinations(range(code.n), t):
            msgs, C = random_word(rng, code)
            Y = add(F, C, random_errors(rng, code, sup))
            for strat in STRATEGIES:
                rep = decode(code, Y, strat, check_paths=True, debug=True)
                assert rep.ok and rep.corrected == C and rep.paths_agree
                assert rep.support == sup
                assert rep.messages == [Polynomial(F, m) for m in msgs]


def test_locate_iteration_accounting(gf16):
    # unequal dimensions: the locating loop visits L(n - k_min) slots, some of
    # them skipped because deg m_tilde_i < tau
    code = code_new(gf16, 15, 3, (5, 7, 9), "powers")
    rng = np.random.default_rng(2)
    for t in range(0, 5):
        for _ in range(15):
            _, C = random_word(rng, code)
            sup = sorted(int(x) for x in rng.choice(code.n, t, replace=False))
            Y = add(gf16, C, random_errors(rng, code, sup))
            S = syndromes(code, Y)
            Sb = monomialized_syndromes(code, S)
            target = code.L * (code.n - code.k_min)
            for strat in STRATEGIES:
                loc = locate_errors(code, Sb if strat.endswith("monomial") else S, strat, debug=True)
                assert loc.ok and loc.lam.deg() == t
                if strat.startswith("fixed"):
                    assert loc.iterations == target
                else:
                    assert loc.iterations + loc.skipped == target
                    assert loc.tau == t


def test_beyond_necessary_radius(code8):
    # t = 3 > (2/3)(7 - 3): the locator is never the unique SPI solution, so
    # nothing is guaranteed; the locating loop still lands on Lambda_E now and
    # then, which makes exact correction possible but rare
    from spirs.analysis.condition import partial_inverse_condition

    F = code8.field
    rng = np.random.default_rng(5)
    exact = {s: 0 for s in STRATEGIES}
    for _ in range(200):
        _, C = random_word(rng, code8)
        sup = sorted(int(x) for x in rng.choice(code8.n, 3, replace=False))
        E = random_errors(rng, code8, sup)
        assert not partial_inverse_condition(code8, E)
        Y = add(F, C, E)
        for strat in STRATEGIES:
            rep = decode(code8, Y, strat)
            exact[strat] += rep.ok and rep.corrected == C
    assert all(v < 50 for v in exact.values()), exact


def test_word_shape_checked(code8):
    with pytest.raises(WordShapeError):
        decode(code8, [[0] * 7])
    with pytest.raises(WordShapeError):
        decode(code8, [[0] * 7, [9] * 7])


def test_config_round_trip(code8_cyclic):
    assert parse_code_config(format_code_config(code8_cyclic)) == code8_cyclic
    code = parse_code_config("field = b:4:0x13\nn = 15\nL = 2\nk = 7\nbeta = powers  # cyclic\n")
    assert code.k == (7, 7) and code.is_cyclic()
    with pytest.raises(CodeConfigError):
        parse_code_config("field = p:7\nn = 3\n")
    with pytest.raises(CodeConfigError):
        parse_code_config("field = p:7\nn = 3\nL = 1\nk = 1\ncolour = red\n")
