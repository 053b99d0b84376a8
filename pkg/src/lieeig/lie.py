"""Matrix Lie algebras: bracket closure, adjoint matrices and classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, NotInAlgebra
from .linalg import EchelonBuilder, Matrix, Subspace, char_poly
from .poly import DEFAULT_OPTIONS, FactorOptions, factor_over_base


def bracket(A: Matrix, B: Matrix) -> Matrix:
    """[A, B] = AB - BA."""
    if A.shape != B.shape or not A.is_square():
        raise DimensionMismatch(f"bracket of {A.shape} and {B.shape}")
    return A @ B - B @ A


class LieAlgebra:
    """A bracket-closed span of n×n matrices.

    ``basis`` is canonical: the matrices whose row-major flattenings are the
    rows of the reduced echelon form of the span.
    """

    __slots__ = ("field", "n", "span", "basis")

    def __init__(self, field, n: int, span: Subspace):
        if span.n != n * n:
            raise DimensionMismatch("span must live in dimension n^2")
        self.field = field
        self.n = n
        self.span = span
        self.basis = tuple(Matrix.unvectorize(field, b, n) for b in span.basis)

    @classmethod
    def from_basis(cls, matrices: Sequence[Matrix], check: bool = True) -> "LieAlgebra":
        """Wrap a span that is already bracket-closed (verified unless check=False)."""
        if not matrices:
            raise ValueError("need at least one matrix")
        F, n = matrices[0].field, matrices[0].nrows
        span = Subspace.span(F, n * n, [_flat(M, n) for M in matrices])
        g = cls(F, n, span)
        if check:
            for i, A in enumerate(g.basis):
                for B in g.basis[i + 1 :]:
                    if not g.contains(bracket(A, B)):
                        raise ValueError("span is not closed under brackets")
        return g

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, A: Matrix) -> bool:
        return self.span.contains(A.vectorize())

    def coords(self, A: Matrix):
        """Coordinates of A in the canonical basis; NotInAlgebra if outside."""
        v = A.vectorize()
        if not self.span.contains(v):
            raise NotInAlgebra("matrix is not in the algebra")
        return self.span.coords(v)

    def element(self, coords) -> Matrix:
        return Matrix.unvectorize(self.field, self.span.lift(coords), self.n)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.n == other.n and self.span == other.span

    def __hash__(self):
        return hash(self.span)

    def __repr__(self):
        return f"LieAlgebra(n={self.n}, dim={self.dim}, field={self.field!r})"

    def to_data(self):
        return {"n": self.n, "basis": [M.to_data() for M in self.basis]}


def _flat(M: Matrix, n: int):
    if M.shape != (n, n):
        raise DimensionMismatch(f"expected {n}x{n}, got {M.shape}")
    return M.vectorize()


def lie_closure(generators: Sequence[Matrix]) -> LieAlgebra:
    """Smallest bracket-closed subspace containing the generators."""
    generators = list(generators)
    if not generators:
        raise ValueError("lie_closure needs at least one generator")
    F, n = generators[0].field, generators[0].nrows
    ech = EchelonBuilder(F, n * n)
    elems: list[Matrix] = []
    for G in generators:
        if not G.is_square() or G.nrows != n:
            raise DimensionMismatch("generators must be square of equal size")
        if ech.add(G.vectorize()):
            elems.append(G)
    work = [(i, j) for j in range(len(elems)) for i in range(j)]
    while work:
        i, j = work.pop(0)
        C = bracket(elems[i], elems[j])
        if ech.add(C.vectorize()):
            k = len(elems)
            elems.append(C)
            work.extend((m, k) for m in range(k))
    return LieAlgebra(F, n, ech.subspace())


def bracket_span(F, n: int, left: Sequence[Matrix], right: Sequence[Matrix]) -> Subspace:
    """span{[x, y] : x in left, y in right} inside F^(n^2)."""
    ech = EchelonBuilder(F, n * n)
    for x in left:
        for y in right:
            ech.add(bracket(x, y).vectorize())
    return ech.subspace()


def _matrices(sub: Subspace, F, n: int):
    return [Matrix.unvectorize(F, b, n) for b in sub.basis]


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    """g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ... until it stabilizes (last term repeated once
    only if it is nonzero and stable)."""
    series = [g.span]
    while series[-1].dim:
        nxt = bracket_span(g.field, g.n, g.basis, _matrices(series[-1], g.field, g.n))
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def derived_series(g: LieAlgebra) -> list[Subspace]:
    series = [g.span]
    while series[-1].dim:
        mats = _matrices(series[-1], g.field, g.n)
        nxt = bracket_span(g.field, g.n, mats, mats)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def ad_matrix(g: LieAlgebra, A: Matrix) -> Matrix:
    """Matrix of X ↦ [A, X] on g in its canonical basis."""
    g.coords(A)  # membership check
    cols = [g.coords(bracket(A, B)) for B in g.basis]
    return Matrix.from_columns(g.field, cols, g.dim)


@dataclass(frozen=True)
class Classification:
    nilpotent: bool
    solvable: bool
    supersolvable_on_basis: bool
    lower_central_dims: tuple
    derived_dims: tuple

    def to_data(self):
        return {
            "nilpotent": self.nilpotent,
            "solvable": self.solvable,
            "supersolvable_on_basis": self.supersolvable_on_basis,
            "lower_central_dims": list(self.lower_central_dims),
            "derived_dims": list(self.derived_dims),
        }


def _splits_over_base(f, opts: FactorOptions) -> bool:
    if f.deg < 1:
        return True
    return all(p.deg == 1 for p, _ in factor_over_base(f, opts))


def classify(g: LieAlgebra, opts: FactorOptions = DEFAULT_OPTIONS) -> Classification:
    """Nilpotency (lower central series), solvability (derived series) and the
    basis-level supersolvability check: each basis element's adjoint has its
    whole spectrum in the base field.  The last flag is only a necessary
    condition for supersolvability, which quantifies over all elements."""
    lcs = [s.dim for s in lower_central_series(g)]
    der = [s.dim for s in derived_series(g)]
    nilpotent = lcs[-1] == 0
    solvable = der[-1] == 0
    super_basis = all(_splits_over_base(char_poly(ad_matrix(g, B)), opts) for B in g.basis)
    return Classification(nilpotent, solvable, super_basis, tuple(lcs), tuple(der))


def is_nilpotent_algebra(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0
