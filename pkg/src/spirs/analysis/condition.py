"""Error-matrix rank and the partial-inverse condition in its four
equivalent formulations."""
from __future__ import annotations

from itertools import product

import numpy as np

from ..gf import Field
from ..irs.codec import CodeSpec, as_rows, monomialized_syndromes, psi_inverse
from ..poly import Polynomial
from ..spi.core import SpiInstance, spi_oracle
from ..spi.solver import solve

FORMULATIONS = ("error", "received", "syndrome", "monomial")


def error_rank(F: Field, E) -> int:
    """Rank over F by Gaussian elimination."""
    M = [list(map(int, row)) for row in E]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = F.scale(inv, M[rank])
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = F.neg(M[r][c])
                F.addmul_into(M[r], 0, f, M[rank])
        rank += 1
        if rank == len(M):
            break
    return rank


def support(E) -> tuple:
    """Indices of the nonzero columns."""
    cols = zip(*E)
    return tuple(l for l, col in enumerate(cols) if any(col))


def error_locator(code: CodeSpec, E) -> Polynomial:
    return Polynomial.from_roots(code.field, [code.beta[l] for l in support(E)])


def condition_instance(code: CodeSpec, E, formulation: str = "error", Y=None) -> SpiInstance:
    """The SPI instance whose solution must equal Lambda_E."""
    F, n = code.field, code.n
    rows = as_rows(code, E)
    t = len(support(rows))
    if formulation == "error":
        bs = [psi_inverse(code, r) for r in rows]
        return SpiInstance.build(F, [(b, code.m, ki + t) for b, ki in zip(bs, code.k)])
    if formulation == "received":
        if Y is None:
            raise ValueError("received-word formulation needs Y")
        bs = [psi_inverse(code, r) for r in as_rows(code, Y)]
        return SpiInstance.build(F, [(b, code.m, ki + t) for b, ki in zip(bs, code.k)])
    src = rows if Y is None else as_rows(code, Y)
    S = [psi_inverse(code, r, start=ki) for r, ki in zip(src, code.k)]
    if formulation == "syndrome":
        return SpiInstance.build(F, [(s, mt, t) for s, mt in zip(S, code.m_tilde)])
    if formulation == "monomial":
        Sb = monomialized_syndromes(code, S)
        return SpiInstance.build(F, [(s, Polynomial.monomial(F, n - ki), t) for s, ki in zip(Sb, code.k)])
    raise ValueError(f"unknown formulation {formulation!r}; choose from {FORMULATIONS}")


def partial_inverse_condition(code: CodeSpec, E, formulation: str = "error", Y=None,
                              variant: str = "rs", oracle: bool = False, debug=None) -> bool:
    """Whether the SPI solution of the chosen formulation is Lambda_E.

    ``Y`` (a received word E + codeword) is required for ``received`` and
    optional for the syndrome forms.  With ``oracle`` the solver's answer is
    cross-checked by brute force (tiny codes only).
    """
    rows = as_rows(code, E)
    t = len(support(rows))
    if t > code.n - code.k_max:
        return False
    inst = condition_instance(code, rows, formulation, Y)
    lam = solve(inst, variant, debug=debug).lam
    if oracle:
        ref = spi_oracle(inst).lam
        if ref != lam:
            raise AssertionError(f"solver {variant} and oracle disagree: {lam} vs {ref}")
    return lam == error_locator(code, rows)


def rank_deficient_batch(F: Field, cols: np.ndarray) -> np.ndarray:
    """cols has shape (N, t, L): N sets of t column vectors.  Returns a bool
    array marking the sets that are linearly dependent.  Enumerates one
    representative per projective coefficient vector, so it is meant for
    small q and t."""
    N, t, L = cols.shape
    if t == 0:
        return np.zeros(N, dtype=bool)
    q = F.q
    if F.spec.kind == "prime":
        mul = lambda c, v: (c * v) % q  # noqa: E731
        add = lambda a, b: (a + b) % q  # noqa: E731
    else:
        table = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        mul = lambda c, v: table[c][v]  # noqa: E731
        add = np.bitwise_xor
    dep = np.zeros(N, dtype=bool)
    for coeffs in product(range(q), repeat=t):
        nz = [c for c in coeffs if c]
        if not nz or nz[0] != 1:
            continue
        acc = np.zeros((N, L), dtype=np.int64)
        for j, c in enumerate(coeffs):
            if c:
                acc = add(acc, mul(c, cols[:, j, :]))
        dep |= ~acc.any(axis=1)
    return dep
