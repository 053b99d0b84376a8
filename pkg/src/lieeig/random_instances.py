"""Random test instances with known structure.

Nilpotent algebras are built block-diagonally.  Each block is either a base
block (scalar + strictly upper triangular over f) or an extension block: the
realization over f of (scalar + strictly upper triangular) matrices over a
subfield K of k with [K:f] = j.  Every element then has characteristic
polynomial split in k, and the generated algebra is nilpotent.  A random
change of basis hides the block structure before the closure is taken.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

from gmpy2 import mpq

from .fields import ExtensionField, FieldTower, _least_irreducible
from .lie import LieAlgebra, lie_closure
from .linalg import Matrix, min_poly
from .poly import Poly


@dataclass
class Instance:
    tower: FieldTower
    n: int
    blocks: list  # [(j, size over K)]
    generators: list
    algebra: LieAlgebra
    conjugator: Matrix


def divisors(d: int) -> list[int]:
    return [j for j in range(1, d + 1) if d % j == 0]


@functools.lru_cache(maxsize=None)
def block_field(tower: FieldTower, j: int):
    """The degree-j subfield of k as f[θ]/(h), or None for j = 1."""
    if j == 1:
        return None
    if j == tower.degree:
        return tower.ext
    if tower.kind != "finite":
        raise ValueError("only finite towers have intermediate fields")
    return ExtensionField(tower.base, _least_irreducible(tower.base, j))


def realize(z, K: ExtensionField) -> Matrix:
    """Matrix over the base of multiplication by z in the power basis of K."""
    cols = []
    basis_elt = K.one
    for _ in range(K.d):
        cols.append((z * basis_elt).c)
        basis_elt = basis_elt * K.theta
    return Matrix.from_columns(K.base, cols, K.d)


def _rand_scalar(rng, F, bound):
    return F.random(rng, bound)


def _block_matrix(rng, tower, j, m, density, bound):
    """One generator's restriction to a block: scalar + strictly upper part."""
    F = tower.base
    if j == 1:
        r = _rand_scalar(rng, F, bound)
        rows = []
        for i in range(m):
            row = []
            for c in range(m):
                if c == i:
                    row.append(r)
                elif c > i and rng.random() < density:
                    row.append(_rand_scalar(rng, F, bound))
                else:
                    row.append(F.zero)
            rows.append(tuple(row))
        return Matrix(F, rows, _trusted=True)
    K = block_field(tower, j)
    z = K.random(rng, bound)
    size = j * m
    rows = [[F.zero] * size for _ in range(size)]

    def put(bi, bj, elt):
        R = realize(elt, K)
        for a in range(j):
            for b in range(j):
                rows[bi * j + a][bj * j + b] = R.rows[a][b]

    for i in range(m):
        put(i, i, z)
        for c in range(i + 1, m):
            if rng.random() < density:
                put(i, c, K.random(rng, bound))
    return Matrix(F, [tuple(r) for r in rows], _trusted=True)


def random_block_structure(rng, tower: FieldTower, n: int, allow_ext: bool = True):
    """Random list of (j, m) with sum j*m = n; j = 1 or a divisor of d."""
    js = divisors(tower.degree) if allow_ext else [1]
    blocks = []
    remaining = n
    while remaining:
        j = rng.choice([x for x in js if x <= remaining])
        m = rng.randint(1, max(1, min(remaining // j, 3)))
        blocks.append((j, m))
        remaining -= j * m
    return blocks


def random_unimodular(rng, F, n: int, steps: int | None = None) -> Matrix:
    """Integer matrix with determinant ±1 (elementary row operations and a
    permutation); over a finite field any random invertible matrix."""
    if F.order is not None:
        while True:
            P = Matrix(F, [[F.random(rng) for _ in range(n)] for _ in range(n)], _trusted=True)
            if P.rank() == n:
                return P
    rows = [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]
    steps = steps if steps is not None else 2 * n
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = mpq(rng.choice([-2, -1, 1, 2]))
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    perm = list(range(n))
    rng.shuffle(perm)
    return Matrix(F, [tuple(rows[p]) for p in perm], _trusted=True)


def random_nilpotent_instance(
    rng: random.Random,
    tower: FieldTower,
    n: int,
    n_gens: int | None = None,
    density: float = 0.4,
    bound: int = 3,
    allow_ext: bool = True,
    conjugate: bool = True,
) -> Instance:
    F = tower.base
    blocks = random_block_structure(rng, tower, n, allow_ext)
    n_gens = n_gens if n_gens is not None else rng.randint(1, 3)
    gens = []
    for _ in range(n_gens):
        parts = [_block_matrix(rng, tower, j, m, density, bound) for j, m in blocks]
        gens.append(Matrix.block_diag(F, *parts))
    P = random_unimodular(rng, F, n) if conjugate else Matrix.identity(F, n)
    Pinv = P.inverse()
    conj = [P @ G @ Pinv for G in gens]
    return Instance(tower, n, blocks, conj, lie_closure(conj), P)


def random_nilpotent_operator_family(rng, F, n: int, n_gens: int | None = None, density: float = 0.5, bound: int = 3):
    """Strictly upper triangular generators, conjugated; returns the generators
    and their closure (an algebra of nilpotent operators)."""
    n_gens = n_gens if n_gens is not None else rng.randint(1, 3)
    gens = []
    for _ in range(n_gens):
        rows = []
        for i in range(n):
            rows.append(
                tuple(
                    F.random(rng, bound) if c > i and rng.random() < density else F.zero
                    for c in range(n)
                )
            )
        gens.append(Matrix(F, rows, _trusted=True))
    P = random_unimodular(rng, F, n)
    Pinv = P.inverse()
    conj = [P @ G @ Pinv for G in gens]
    return conj, lie_closure(conj)


def random_matrix(rng, F, n: int, bound: int = 5) -> Matrix:
    return Matrix(F, [[F.random(rng, bound) for _ in range(n)] for _ in range(n)], _trusted=True)


def random_split_poly(rng, tower: FieldTower, max_deg: int = 8, bound: int = 3) -> Poly:
    """Product of random linear factors over f and minimal polynomials of
    random elements of intermediate fields of k; degree between 1 and max_deg."""
    F = tower.base
    t = Poly.t(F)
    target = rng.randint(1, max_deg)
    out = Poly.one(F)
    js = divisors(tower.degree)
    while out.deg < target:
        room = target - out.deg
        j = rng.choice([x for x in js if x <= room])
        if j == 1:
            factor = t - Poly.const(F, F.random(rng, bound))
        else:
            K = block_field(tower, j)
            while True:
                z = K.random(rng, bound)
                mp = min_poly(realize(z, K))
                if mp.deg == j:
                    break
            factor = mp
        out = out * factor
    return out
