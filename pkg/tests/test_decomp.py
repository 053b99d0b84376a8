import random

import pytest
from hypothesis import given, strategies as st

from lieeig.decomp import (
    engel_common_kernel,
    engel_triangularize,
    primary_decomposition,
    primary_single,
    scalar_nilpotent_split,
    triangularize_scalar_family,
)
from lieeig.errors import BracketClosureViolation, EmptyKernel, NotNilpotent, NotPrimaryScalar
from lieeig.fields import QQ, finite_tower, rational_quadratic
from lieeig.lie import lie_closure
from lieeig.linalg import Matrix, Subspace, is_nilpotent, min_poly, restrict_operator
from lieeig.poly import Poly, factor_over_base
from lieeig.random_instances import random_nilpotent_instance, random_nilpotent_operator_family, random_unimodular

from .helpers import E2_U, E2_X, ROT, M, diag_rot_5, e, ident, span, unit

t = Poly.t(QQ)
FULL3 = Subspace.full(QQ, 3)


def test_primary_single_examples():
    parts = primary_single(M([[1, 0, 0], [0, 1, 0], [0, 0, 2]]), FULL3)
    assert {(S.dim, p, e_) for S, p, e_ in parts} == {(2, t - 1, 1), (1, t - 2, 1)}
    parts = primary_single(M(ROT), Subspace.full(QQ, 2))
    assert len(parts) == 1 and parts[0][1] == t**2 + 1
    parts = primary_single(M([[1, 1, 0], [0, 1, 0], [0, 0, 2]]), FULL3)
    got = {(S, p, e_) for S, p, e_ in parts}
    assert got == {(span([e(3, 0), e(3, 1)], 3), t - 1, 2), (span([e(3, 2)], 3), t - 2, 1)}


def test_primary_decomposition_examples():
    g = lie_closure([M([[1, 0], [0, 2]]), M([[3, 0], [0, 3]])])
    comps = primary_decomposition(g)
    assert {c.subspace for c in comps} == {span([e(2, 0)], 2), span([e(2, 1)], 2)}
    g = lie_closure([M([[1, 1], [0, 1]])])
    (c,) = primary_decomposition(g)
    assert c.subspace == Subspace.full(QQ, 2) and c.factors == ((t - 1, 2),)
    g = lie_closure([diag_rot_5()])
    comps = primary_decomposition(g)
    assert [(c.dim, c.factors[0][0]) for c in comps] == [(1, t + 5), (2, t**2 + 1)]
    # canonical basis element is -diag(R, 5): its factors are t + 5 and t^2 + 1


def test_primary_decomposition_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        primary_decomposition(lie_closure([M(E2_X), M(E2_U)]))


def test_engel_common_kernel_examples():
    J3 = M([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert engel_common_kernel([J3], FULL3) == span([e(3, 0)], 3)
    n3 = [unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)]
    assert engel_common_kernel(n3, FULL3) == span([e(3, 0)], 3)
    assert engel_common_kernel([unit(2, 0, 1), Matrix.zeros(QQ, 2)], Subspace.full(QQ, 2)) == span([e(2, 0)], 2)
    with pytest.raises(EmptyKernel):
        engel_common_kernel([unit(2, 0, 1), unit(2, 1, 0)], Subspace.full(QQ, 2))


def test_engel_triangularize_examples():
    tb = engel_triangularize([unit(2, 0, 1)], Subspace.full(QQ, 2))
    assert tb.vectors == (e(2, 0), e(2, 1)) and tb.strict
    tb = engel_triangularize([unit(2, 1, 0)], Subspace.full(QQ, 2))
    assert tb.vectors[0] == e(2, 1)
    assert Subspace.span(QQ, 2, tb.vectors).dim == 2
    tb = engel_triangularize([unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)], FULL3)
    assert tb.vectors == (e(3, 0), e(3, 1), e(3, 2))


def test_scalar_nilpotent_split_examples():
    r, N = scalar_nilpotent_split(ident(2).scale(QQ(3)), Subspace.full(QQ, 2))
    assert r == 3 and N.is_zero()
    r, N = scalar_nilpotent_split(M([[2, 1], [0, 2]]), Subspace.full(QQ, 2))
    assert r == 2 and N == unit(2, 0, 1)
    with pytest.raises(NotPrimaryScalar):
        scalar_nilpotent_split(M(ROT), Subspace.full(QQ, 2))


def test_triangularize_scalar_family_examples():
    W2 = Subspace.full(QQ, 2)
    tb = triangularize_scalar_family([ident(2).scale(QQ(2)) + unit(2, 0, 1), ident(2).scale(QQ(3))], W2)
    assert tb.vectors == (e(2, 0), e(2, 1)) and tb.diagonals == (2, 3)
    J = M([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    tb = triangularize_scalar_family([J], FULL3)
    assert tb.vectors == (e(3, 0), e(3, 1), e(3, 2)) and tb.diagonals == (1,)
    P = M([[1, 0], [1, 1]])
    A = P @ (ident(2).scale(QQ(2)) + unit(2, 0, 1)) @ P.inverse()
    tb = triangularize_scalar_family([A], W2)
    assert tb.diagonals == (2,)
    # the first vector spans the P-image of e1
    assert span([tb.vectors[0]], 2) == span([P.apply(e(2, 0))], 2)


def test_bracket_closure_violation():
    W = Subspace.full(QQ, 3)
    # nilpotent parts E12 and E23 bracket to E13, which is not in their span
    with pytest.raises(BracketClosureViolation):
        triangularize_scalar_family([unit(3, 0, 1), unit(3, 1, 2)], W)


def _check_decomposition(g, comps):
    F, n = g.field, g.n
    assert sum(c.dim for c in comps) == n
    assert Subspace.span(F, n, [b for c in comps for b in c.subspace.basis]).dim == n
    for c in comps:
        for A, (p, e_) in zip(g.basis, c.factors):
            assert c.subspace.is_invariant(A)
            mp = min_poly(restrict_operator(A, c.subspace))
            facs = factor_over_base(mp)
            assert facs == [(p, e_)]


TOWERS = [rational_quadratic(-1), rational_quadratic(3), finite_tower(11, 1, 3), finite_tower(13, 1, 4), finite_tower(11, 1, 2)]


@given(st.sampled_from(TOWERS), st.integers(1, 6), st.integers(0, 10**6))
def test_primary_decomposition_invariants(T, n, seed):
    rng = random.Random(seed)
    g = random_nilpotent_instance(rng, T, n).algebra
    comps = primary_decomposition(g)
    _check_decomposition(g, comps)
    # stable: refining a component again does nothing
    for c in comps:
        for A in g.basis:
            assert len(primary_single(A, c.subspace)) == 1
    # permutation invariance as a set of subspaces
    if g.dim > 1:
        perm = list(g.basis)
        rng.shuffle(perm)
        from lieeig.lie import LieAlgebra

        h = LieAlgebra.__new__(LieAlgebra)
        h.field, h.n, h.span, h.basis = g.field, g.n, g.span, tuple(perm)
        assert {c.subspace for c in primary_decomposition(h)} == {c.subspace for c in comps}


@given(st.sampled_from([QQ, finite_tower(7, 1, 2).base]), st.integers(1, 6), st.integers(0, 10**6))
def test_engel_on_random_nilpotent_families(F, n, seed):
    rng = random.Random(seed)
    gens, g = random_nilpotent_operator_family(rng, F, n)
    W = Subspace.full(F, n)
    K = engel_common_kernel(g.basis, W)
    assert K.dim >= 1
    tb = engel_triangularize(g.basis, W)
    P = Matrix.from_columns(F, tb.vectors, n)
    Pinv = P.inverse()
    for A in g.basis:
        assert (Pinv @ A @ P).is_upper_triangular(strict=True)
        assert is_nilpotent(A)


@given(st.integers(0, 10**6))
def test_conjugation_equivariance(seed):
    rng = random.Random(seed)
    T = rational_quadratic(-1)
    inst = random_nilpotent_instance(rng, T, rng.randint(2, 5), conjugate=False)
    g = inst.algebra
    P = random_unimodular(rng, QQ, g.n)
    Pinv = P.inverse()
    h = lie_closure([P @ A @ Pinv for A in g.basis])
    image = {Subspace.span(QQ, g.n, [P.apply(v) for v in c.subspace.basis]) for c in primary_decomposition(g)}
    assert {c.subspace for c in primary_decomposition(h)} == image


@given(st.integers(0, 10**6))
def test_scalar_split_reconstructs(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    r = QQ(rng.randint(-3, 3))
    N = Matrix(QQ, [[QQ(rng.randint(-2, 2)) if j > i else QQ.zero for j in range(n)] for i in range(n)])
    P = random_unimodular(rng, QQ, n)
    A = P @ (ident(n).scale(r) + N) @ P.inverse()
    r2, N2 = scalar_nilpotent_split(A, Subspace.full(QQ, n))
    assert r2 == r and N2 + ident(n).scale(r2) == A and is_nilpotent(N2)
    assert r2 == A.trace() / n
