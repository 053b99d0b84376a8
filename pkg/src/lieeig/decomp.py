"""Primary decomposition of V under a nilpotent matrix Lie algebra, and
triangularization: Engel's common kernel recursion for nilpotent families and
the scalar-plus-nilpotent split for families with one eigenvalue each."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BracketClosureViolation,
    EmptyKernel,
    InvarianceViolation,
    NotInvariant,
    NotNilpotent,
    NotPrimaryScalar,
)
from .lie import LieAlgebra, bracket, is_nilpotent_algebra
from .linalg import (
    EchelonBuilder,
    Matrix,
    Subspace,
    is_nilpotent,
    min_poly,
    poly_at_matrix,
    restrict_operator,
)
from .poly import DEFAULT_OPTIONS, FactorOptions, factor_over_base


@dataclass(frozen=True)
class PrimaryComponent:
    """A g-invariant subspace on which every basis element has min poly p^e."""

    subspace: Subspace
    factors: tuple  # per basis element: (irreducible p, exponent e)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def to_data(self):
        return {
            "dim": self.dim,
            "basis": self.subspace.to_data(),
            "min_polys": [{"p": p.to_data(), "e": e} for p, e in self.factors],
        }


@dataclass(frozen=True)
class TriangularBasis:
    vectors: tuple  # ambient coordinate vectors, in order
    strict: bool
    diagonals: tuple = ()  # per operator: scalar on the diagonal (scalar-diagonal variant)

    def to_data(self, field):
        return {
            "vectors": [[field.to_data(x) for x in v] for v in self.vectors],
            "strict": self.strict,
            "diagonals": [field.to_data(r) for r in self.diagonals],
        }


def _lift(W: Subspace, coords_list):
    return [W.lift(c) for c in coords_list]


def primary_single(A: Matrix, W: Subspace, opts: FactorOptions = DEFAULT_OPTIONS):
    """Split an A-invariant W into ker p_i(A|W)^{e_i} for min_poly(A|W) = ∏ p_i^{e_i}.

    Returns [(subspace, p, e)] with subspaces in ambient coordinates.
    """
    B = restrict_operator(A, W)  # raises NotInvariant
    if W.dim == 0:
        return []
    mp = min_poly(B)
    out = []
    for p, e in factor_over_base(mp, opts):
        K = poly_at_matrix(p**e, B).kernel()
        out.append((Subspace.span(W.field, W.n, _lift(W, K.basis)), p, e))
    return out


def _prime_power_on(A: Matrix, W: Subspace, opts: FactorOptions):
    mp = min_poly(restrict_operator(A, W))
    facs = factor_over_base(mp, opts) if mp.deg > 0 else []
    return facs[0] if len(facs) == 1 else None


def primary_decomposition(g: LieAlgebra, opts: FactorOptions = DEFAULT_OPTIONS, check_nilpotent: bool = True):
    """Refine V by the primary components of each basis element until stable.

    The pieces are returned sorted by (dimension, canonical basis).  Every piece
    is re-verified: invariance under all basis elements, prime-power minimal
    polynomials, and that the pieces form a direct sum equal to V.
    """
    if check_nilpotent and not is_nilpotent_algebra(g):
        raise NotNilpotent("primary decomposition requires a nilpotent algebra")
    F, n = g.field, g.n
    pieces = [Subspace.full(F, n)]
    while True:
        changed = False
        for A in g.basis:
            nxt = []
            for W in pieces:
                try:
                    parts = primary_single(A, W, opts)
                except NotInvariant as exc:
                    raise InvarianceViolation(f"refinement piece not invariant: {exc}") from exc
                if len(parts) > 1:
                    changed = True
                nxt.extend(S for S, _, _ in parts)
            pieces = nxt
        if not changed:
            break
    comps = []
    for W in pieces:
        facs = []
        for A in g.basis:
            try:
                pe = _prime_power_on(A, W, opts)
            except NotInvariant as exc:
                raise InvarianceViolation(f"component not invariant: {exc}") from exc
            if pe is None:
                raise InvarianceViolation("restricted minimal polynomial is not a prime power")
            facs.append(pe)
        comps.append(PrimaryComponent(W, tuple(facs)))
    _check_direct_sum(F, n, [c.subspace for c in comps], InvarianceViolation)
    comps.sort(key=lambda c: (c.dim, _subspace_key(c.subspace)))
    return comps


def _subspace_key(W: Subspace):
    return tuple(tuple(W.field.sort_key(x) for x in b) for b in W.basis)


def _check_direct_sum(F, n, subspaces, exc_type):
    ech = EchelonBuilder(F, n)
    total = 0
    for W in subspaces:
        for b in W.basis:
            if not ech.add(b):
                raise exc_type("subspaces are not independent")
        total += W.dim
    if total != n:
        raise exc_type(f"dimensions sum to {total}, not {n}")


# ---------------------------------------------------------------------------
# Engel triangularization
# ---------------------------------------------------------------------------


def _common_kernel_coords(mats: Sequence[Matrix], m: int, F) -> Subspace:
    K = Subspace.full(F, m)
    for N in mats:
        K = K.intersect(N.kernel())
        if K.dim == 0:
            break
    return K


def engel_common_kernel(nilpotents: Sequence[Matrix], W: Subspace) -> Subspace:
    """Intersection of ker(N|W) over the family, in ambient coordinates."""
    F = W.field
    restricted = [restrict_operator(N, W) for N in nilpotents]
    K = _common_kernel_coords(restricted, W.dim, F)
    if K.dim == 0:
        raise EmptyKernel("family has no common kernel vector; not a nilpotent-operator Lie algebra")
    return Subspace.span(F, W.n, _lift(W, K.basis))


def _engel_basis(mats: list[Matrix], m: int, F) -> list:
    """Basis of F^m making every matrix strictly upper triangular."""
    if m == 0:
        return []
    K = _common_kernel_coords(mats, m, F)
    if K.dim == 0:
        raise EmptyKernel("family has no common kernel vector; not a nilpotent-operator Lie algebra")
    v = K.basis[0]
    line = Subspace(F, m, [v], [K.pivots[0]])
    comp = line.quotient_basis()
    if not comp:
        return [v]
    # induced maps on F^m / span(v) in the basis given by comp
    full = [v] + comp
    P = Matrix.from_columns(F, full, m)
    Pinv = P.inverse()
    induced = []
    for N in mats:
        M = Pinv @ N @ P
        induced.append(Matrix(F, [r[1:] for r in M.rows[1:]], _trusted=True))
    sub = _engel_basis(induced, m - 1, F)
    lifted = []
    for u in sub:
        vec = [F.zero] * m
        for c, w in zip(u, comp):
            if c:
                vec = [x + c * y for x, y in zip(vec, w)]
        lifted.append(tuple(vec))
    return [v] + lifted


def engel_triangularize(nilpotents: Sequence[Matrix], W: Subspace) -> TriangularBasis:
    """Ordered basis of W in which every listed operator is strictly upper
    triangular; verified by explicit change of basis."""
    F = W.field
    restricted = [restrict_operator(N, W) for N in nilpotents]
    basis_w = _engel_basis(restricted, W.dim, F)
    _verify_triangular(restricted, basis_w, F, strict=True)
    return TriangularBasis(tuple(_lift(W, basis_w)), strict=True)


def _verify_triangular(mats, basis, F, strict: bool, diagonals=None):
    if not basis:
        return
    P = Matrix.from_columns(F, basis, len(basis))
    Pinv = P.inverse()
    for idx, M in enumerate(mats):
        T = Pinv @ M @ P
        if not T.is_upper_triangular(strict=strict):
            raise InvarianceViolation("triangularization check failed")
        if diagonals is not None and any(x != diagonals[idx] for x in T.diagonal()):
            raise InvarianceViolation("diagonal is not constant")


def scalar_nilpotent_split(A: Matrix, W: Subspace, opts: FactorOptions = DEFAULT_OPTIONS):
    """(r, N) with A|W = r·I + N, N nilpotent, when min_poly(A|W) = (t - r)^e."""
    B = restrict_operator(A, W)
    if W.dim == 0:
        raise NotPrimaryScalar("empty subspace")
    mp = min_poly(B)
    facs = factor_over_base(mp, opts)
    if len(facs) != 1 or facs[0][0].deg != 1:
        raise NotPrimaryScalar(f"minimal polynomial {mp} is not a power of a linear factor")
    r = -facs[0][0].c[0]
    N = B - Matrix.identity(W.field, W.dim).scale(r)
    if not is_nilpotent(N):
        raise NotPrimaryScalar("A - rI is not nilpotent on W")  # unreachable if min poly is right
    return r, N


def triangularize_scalar_family(g_basis: Sequence[Matrix], W: Subspace, opts: FactorOptions = DEFAULT_OPTIONS) -> TriangularBasis:
    """One basis of W putting every A|W in upper triangular form with constant
    diagonal r_A."""
    F = W.field
    splits = [scalar_nilpotent_split(A, W, opts) for A in g_basis]
    nils = [N for _, N in splits]
    m = W.dim
    ech = EchelonBuilder(F, m * m)
    for N in nils:
        ech.add(N.vectorize())
    for i, X in enumerate(nils):
        for Y in nils[i + 1 :]:
            if not ech.contains(bracket(X, Y).vectorize()):
                raise BracketClosureViolation("nilpotent parts are not closed under brackets")
    basis_w = _engel_basis(nils, m, F)
    restricted = [restrict_operator(A, W) for A in g_basis]
    diag = tuple(r for r, _ in splits)
    _verify_triangular(restricted, basis_w, F, strict=False, diagonals=diag)
    return TriangularBasis(tuple(_lift(W, basis_w)), strict=False, diagonals=diag)
