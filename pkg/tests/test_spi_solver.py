import numpy as np
import pytest

from spirs.gf import GF
from spirs.poly import Polynomial
from spirs.spi.core import SpiInstance, SpiSolution, random_instance, spi_check, spi_monomialize, spi_oracle
from spirs.spi.solver import (
    MissingCounter, NotMonomial, SolverState, iteration_count, solve, solve_monomial,
    solve_quotient_saving, solve_rbm, solve_remainder_saving,
)

F7 = GF(7)
SOLVERS = [solve_rbm, solve_quotient_saving, solve_remainder_saving]
FIXTURE = SpiInstance.build(F7, [([0, 1, 0, 3], [0, 0, 0, 0, 1], 2), ([2, 0, 5, 1], [0, 0, 0, 0, 1], 2)])


def one(b, m, tau, F=F7):
    return SpiInstance.build(F, [(b, m, tau)])


@pytest.mark.parametrize("fn", SOLVERS + [solve_monomial])
def test_small_examples(fn):
    x = Polynomial.monomial(F7, 1)
    assert fn(one([0, 1], [0, 0, 1], 1), debug=True).lam == x
    zero = SpiInstance.build(F7, [([], [0, 0, 0, 1], 0), ([], [0, 0, 1], 2)])
    sol = fn(zero, debug=True)
    assert sol.lam == Polynomial.one(F7)
    assert sol.iterations == zero.d_hat
    assert fn(FIXTURE, debug=True).lam == spi_oracle(FIXTURE).lam


def test_monomial_rejects_general_modulus():
    with pytest.raises(NotMonomial):
        solve_monomial(one([1], [1, 0, 1], 1))


def test_quotient_saving_example():
    sol = solve_quotient_saving(one([0, 1], [0, 0, 1], 1))
    raw = sol.raw_lambda
    assert sol.lam == Polynomial.monomial(F7, 1)
    # x * raw - Q * x^2 has degree < 1, and raw = c x so Q = c
    assert sol.quotients[0] == Polynomial(F7, [raw.lcf()])


def test_remainder_saving_zero():
    inst = SpiInstance.build(F7, [([], [1, 2, 0, 1], 1), ([], [0, 0, 1], 0)])
    sol = solve_remainder_saving(inst)
    assert sol.lam == Polynomial.one(F7)
    assert all(r.is_zero() for r in sol.remainders)


def test_iteration_count_formula():
    inst = SpiInstance.build(F7, [([1], [0] * 6 + [1], 1), ([1], [0] * 6 + [1], 1)])
    assert inst.d_hat == 10
    fake = SpiSolution(Polynomial.monomial(F7, 4), iterations=18)
    assert iteration_count(fake, inst).predicted == 18 and iteration_count(fake, inst).ok
    with pytest.raises(MissingCounter):
        iteration_count(SpiSolution(Polynomial.one(F7)), inst)


def test_auto_dispatch():
    assert solve(FIXTURE).variant == "monomial"
    assert solve(one([3, 1], [6, 0, 1], 1)).variant == "rs"
    with pytest.raises(ValueError):
        solve(FIXTURE, "nope")


def test_cross_solver_random():
    rng = np.random.default_rng(101)
    for j in range(250):
        F = GF(5) if j % 2 else F7
        inst = random_instance(rng, F, int(rng.integers(1, 4)), max_D=4)
        ref = spi_oracle(inst).lam
        for fn in SOLVERS:
            sol = fn(inst, debug=True)
            assert sol.lam == ref, (fn.__name__, inst)
            assert iteration_count(sol, inst).ok
        new, _ = spi_monomialize(inst)
        assert solve_monomial(new, debug=True).lam == ref
        assert solve_rbm(new).lam == ref


def test_saved_registers_are_consistent():
    rng = np.random.default_rng(7)
    F = GF("b:3:0xb")
    for _ in range(200):
        inst = random_instance(rng, F, int(rng.integers(1, 4)), max_deg_m=7)
        qs = solve_quotient_saving(inst, debug=True)
        for c, Q in zip(inst, qs.quotients):
            r = c.b * qs.raw_lambda - Q * c.m
            assert r.deg() < c.tau
        rs = solve_remainder_saving(inst, debug=True)
        for c, r in zip(inst, rs.remainders):
            assert r == (c.b * rs.raw_lambda) % c.m
        assert qs.lam == rs.lam == solve_rbm(inst).lam
        assert spi_check(inst, rs.lam).satisfies


def test_binary_field_larger_instances():
    # no oracle here; the solver's answer must satisfy and have degree at most D,
    # and all variants must agree
    rng = np.random.default_rng(3)
    F = GF("b:8:0x11d")
    for _ in range(60):
        inst = random_instance(rng, F, int(rng.integers(1, 5)), max_deg_m=10)
        sols = [fn(inst, debug=True) for fn in SOLVERS]
        assert len({s.lam for s in sols}) == 1
        assert spi_check(inst, sols[0].lam).satisfies
        assert sols[0].lam.deg() <= inst.degree_bound


def test_trace_events():
    # one event per register update, i.e. per nonzero discrepancy
    sol = solve_rbm(FIXTURE, trace=True)
    its = [ev["n_it"] for ev in sol.trace]
    assert its == sorted(set(its)) and its[-1] <= sol.iterations
    assert all(ev["kappa"] != 0 for ev in sol.trace)
    degs = [len(ev["lam_after"]) - 1 for ev in sol.trace]
    assert all(a <= b for a, b in zip(degs, degs[1:]))
    assert Polynomial(F7, sol.trace[-1]["lam_after"]).monic() == sol.lam
    assert all(ev["d_i_after"] < ev["d_i_before"] for ev in sol.trace if ev["swapped"])


def test_state_rejects_bad_options():
    with pytest.raises(ValueError):
        SolverState(F7, [[1]], [[0, 1]], [0], kappa="xx")
    with pytest.raises(ValueError):
        SolverState(F7, [[1]], [[0, 1]], [0], stop="fixed")
    with pytest.raises(ValueError):
        SolverState(F7, [[1], [1]], [[0, 1], [0, 1]], [0, 1], stop="locate")
