import random

import pytest
from hypothesis import given, strategies as st

from lieeig.errors import DimensionMismatch, NotInAlgebra
from lieeig.fields import QQ, finite_tower, rational_quadratic
from lieeig.lie import LieAlgebra, ad_matrix, bracket, classify, lie_closure
from lieeig.linalg import Matrix, char_poly
from lieeig.poly import Poly
from lieeig.random_instances import random_nilpotent_instance, random_matrix

from .helpers import E2_U, E2_V, E2_X, M, unit

t = Poly.t(QQ)


def test_bracket_examples():
    A = M([[1, 2], [3, 4]])
    assert bracket(A, A).is_zero()
    assert bracket(M([[1, 0], [0, 2]]), M([[3, 0], [0, 4]])).is_zero()
    X, U, V = M(E2_X), M(E2_U), M(E2_V)
    assert bracket(X, U) == -V
    assert bracket(X, V) == U
    assert bracket(U, V).is_zero()
    with pytest.raises(DimensionMismatch):
        bracket(A, Matrix.identity(QQ, 3))


def test_closure_examples():
    D1, D2 = M([[1, 0], [0, 2]]), M([[3, 0], [0, 5]])
    g = lie_closure([D1, D2])
    assert g.dim == 2 and g.contains(D1) and g.contains(D2)
    X, U, V = M(E2_X), M(E2_U), M(E2_V)
    g = lie_closure([X, U])
    assert g.dim == 3 and g.contains(V)
    A = M([[1, 2], [3, 4]])
    g = lie_closure([A])
    assert g.dim == 1 and g.contains(A.scale(QQ(7)))
    with pytest.raises(DimensionMismatch):
        lie_closure([A, Matrix.identity(QQ, 3)])


def test_classify_examples():
    g = lie_closure([M([[1, 0], [0, 2]]), M([[3, 0], [0, 5]])])
    c = classify(g)
    assert c.nilpotent and c.solvable and c.lower_central_dims == (2, 0)
    e2 = lie_closure([M(E2_X), M(E2_U)])
    c = classify(e2)
    assert c.solvable and not c.nilpotent
    assert c.lower_central_dims == (3, 2)
    assert not c.supersolvable_on_basis
    n3 = lie_closure([unit(3, 0, 1), unit(3, 1, 2)])
    c = classify(n3)
    assert n3.dim == 3 and c.nilpotent and c.lower_central_dims == (3, 1, 0)


def test_ad_matrix_examples():
    g = lie_closure([M([[1, 0], [0, 2]]), M([[3, 0], [0, 5]])])
    assert ad_matrix(g, g.basis[0]).is_zero()
    e2 = lie_closure([M(E2_X), M(E2_U)])
    assert char_poly(ad_matrix(e2, M(E2_X))) == t * (t**2 + 1)
    g1 = lie_closure([M([[1, 2], [3, 4]])])
    assert ad_matrix(g1, g1.basis[0]) == Matrix.zeros(QQ, 1)
    with pytest.raises(NotInAlgebra):
        ad_matrix(g1, Matrix.identity(QQ, 2))


def test_canonical_basis_is_independent_of_generator_order():
    X, U = M(E2_X), M(E2_U)
    assert lie_closure([X, U]) == lie_closure([U, X, U.scale(QQ(3))])
    assert lie_closure([X, U]).basis == lie_closure([U, X]).basis


def test_from_basis_rejects_non_closed():
    with pytest.raises(ValueError):
        LieAlgebra.from_basis([M(E2_X), M(E2_U)])


TOWERS = [rational_quadratic(-1), finite_tower(11, 1, 3), finite_tower(13, 1, 4)]


@given(st.sampled_from(TOWERS), st.integers(2, 5), st.integers(0, 10**6))
def test_random_algebras(T, n, seed):
    rng = random.Random(seed)
    inst = random_nilpotent_instance(rng, T, n)
    g = inst.algebra
    # idempotent closure
    assert lie_closure(list(g.basis)) == g
    # Jacobi identity on basis triples
    B = g.basis[:4]
    for x in B:
        for y in B:
            for z in B:
                s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
                assert s.is_zero()
    c = classify(g)
    assert c.nilpotent and c.solvable
    assert list(c.lower_central_dims) == sorted(c.lower_central_dims, reverse=True)
    assert c.lower_central_dims[-1] == 0


@given(st.integers(0, 10**6))
def test_nilpotent_implies_solvable_on_random_matrices(seed):
    rng = random.Random(seed)
    gens = [random_matrix(rng, QQ, 3, 1) for _ in range(rng.randint(1, 2))]
    c = classify(lie_closure(gens))
    assert (not c.nilpotent) or c.solvable
    if c.nilpotent:
        assert c.lower_central_dims[-1] == 0
