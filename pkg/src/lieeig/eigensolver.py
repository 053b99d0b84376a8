"""Common eigenvectors of nilpotent matrix Lie algebras.

:func:`common_eigenvector` is the constructive route: primary decomposition,
choice of a component whose dimension lies outside the monoid M, extraction
of one base-field eigenvalue per basis element from the split characteristic
polynomial, and Engel's common kernel of the nilpotent parts.
:func:`brute_force_oracle` is an independent exhaustive search that works for
any matrix family.  The two audits apply the corollaries about invariant
subspaces and invariant direct sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .decomp import PrimaryComponent, _check_direct_sum, _common_kernel_coords, primary_decomposition
from .errors import (
    DoesNotSplit,
    InvarianceViolation,
    NotADirectSum,
    NotApplicable,
    NotInvariant,
    StageFailure,
)
from .fields import FieldTower
from .lie import LieAlgebra, classify, lie_closure
from .linalg import Matrix, Subspace, char_poly, is_nilpotent, restrict_operator
from .poly import DEFAULT_OPTIONS, FactorOptions, factor_over_base, lemma_c_analyze, monoid_contains, splits_in_extension

C1_CAVEAT = "c1 is checked on the stored basis elements only"


@dataclass
class ConditionReport:
    c1: list  # [(basis index, splits: bool)]
    n: int
    in_M: bool
    nilpotent: bool
    caveat: str = C1_CAVEAT

    @property
    def c1_holds(self) -> bool:
        return all(ok for _, ok in self.c1)

    @property
    def c2_holds(self) -> bool:
        return not self.in_M

    @property
    def applicable(self) -> bool:
        return self.c1_holds and self.c2_holds and self.nilpotent

    def failed_stages(self) -> list[str]:
        out = []
        if not self.nilpotent:
            out.append("nilpotency")
        if not self.c1_holds:
            out.append("c1")
        if not self.c2_holds:
            out.append("c2")
        return out

    def to_data(self):
        return {
            "c1": [{"index": i, "splits": ok} for i, ok in self.c1],
            "c1_holds": self.c1_holds,
            "c2": {"n": self.n, "in_M": self.in_M},
            "nilpotent": self.nilpotent,
            "applicable": self.applicable,
            "caveat": self.caveat,
        }


@dataclass
class EigenResult:
    vector: tuple
    eigenvalues: list  # [(basis index, r)]
    component_used: PrimaryComponent
    trace: list = dc_field(default_factory=list)

    def to_data(self, field):
        return {
            "vector": [field.to_data(x) for x in self.vector],
            "eigenvalues": [{"index": i, "value": field.to_data(r)} for i, r in self.eigenvalues],
            "component": self.component_used.to_data(),
            "trace": list(self.trace),
        }


def check_conditions(g: LieAlgebra, tower: FieldTower, opts: FactorOptions = DEFAULT_OPTIONS) -> ConditionReport:
    """Evaluate (C1) on each basis element's characteristic polynomial, (C2) on
    dim V, and nilpotency of g."""
    c1 = []
    for i, A in enumerate(g.basis):
        ok, _ = splits_in_extension(char_poly(A), tower, opts)
        c1.append((i, ok))
    nilpotent = classify(g, opts).nilpotent
    return ConditionReport(c1=c1, n=g.n, in_M=monoid_contains(g.n, tower), nilpotent=nilpotent)


def eigenvalue_on(A: Matrix, v):
    """r with A·v = r·v, or None if v is not an eigenvector of A."""
    Av = A.apply(v)
    k = next((i for i, x in enumerate(v) if x), None)
    if k is None:
        raise ValueError("zero vector")
    r = Av[k] / v[k]
    return r if Av == tuple(r * x for x in v) else None


def _verify_eigen(g_basis, v, values) -> bool:
    return all(A.apply(v) == tuple(r * x for x in v) for A, r in zip(g_basis, values))


def common_eigenvector(
    g: LieAlgebra,
    tower: FieldTower,
    opts: FactorOptions = DEFAULT_OPTIONS,
    report: ConditionReport | None = None,
) -> EigenResult:
    """Run the constructive pipeline.

    Raises NotApplicable when a hypothesis fails, and StageFailure (a
    certificate naming the stage) if any step breaks despite the hypotheses.
    """
    trace = []
    if report is None:
        report = check_conditions(g, tower, opts)
    trace.append(
        f"conditions: c1={report.c1_holds} (basis-level), n={report.n} in_M={report.in_M}, nilpotent={report.nilpotent}"
    )
    if not report.applicable:
        raise NotApplicable("hypotheses do not hold", report)
    F = g.field

    try:
        comps = primary_decomposition(g, opts, check_nilpotent=False)
    except InvarianceViolation as exc:
        raise StageFailure("primary", str(exc)) from exc
    trace.append("primary decomposition: dims " + str([c.dim for c in comps]))

    admissible = [c for c in comps if not monoid_contains(c.dim, tower)]
    if not admissible:
        raise StageFailure("primary", "no primary component has dimension outside M", [c.dim for c in comps])
    comp = admissible[0]
    W = comp.subspace
    trace.append(f"selected component of dim {W.dim} (not in M)")

    values, nils = [], []
    for idx, A in enumerate(g.basis):
        p, e = comp.factors[idx]
        B = restrict_operator(A, W)
        cp = char_poly(B)
        try:
            rep = lemma_c_analyze(cp, tower, opts)
        except DoesNotSplit as exc:
            raise StageFailure("c1", f"restricted characteristic polynomial of basis element {idx} does not split", cp) from exc
        if not rep.base_roots:
            raise StageFailure("root-extraction", f"no base root for basis element {idx}", cp)
        r = rep.base_roots[0][0]
        if p.deg != 1 or -p.c[0] != r:
            raise StageFailure("prime-power", f"min poly of basis element {idx} is {p}^{e}, not a power of t - {r}", p)
        N = B - Matrix.identity(F, W.dim).scale(r)
        if not is_nilpotent(N):
            raise StageFailure("prime-power", f"basis element {idx} minus {r}·I is not nilpotent on the component", N)
        values.append(r)
        nils.append(N)
        trace.append(f"basis element {idx}: min poly ({p})^{e}; char poly {cp}")

    K = _common_kernel_coords(nils, W.dim, F)
    if K.dim == 0:
        raise StageFailure("engel", "nilpotent parts have no common kernel vector")
    v = W.lift(K.basis[0])
    trace.append(f"engel common kernel dim {K.dim}; canonical vector {[F.to_data(x) for x in v]}")
    if not _verify_eigen(g.basis, v, values):
        raise StageFailure("engel", "eigen-equation check failed", v)
    trace.append("verified A·v = r_A·v for every basis element")
    return EigenResult(v, list(enumerate(values)), comp, trace)


# ---------------------------------------------------------------------------
# independent oracle
# ---------------------------------------------------------------------------


def _base_eigenvalues(A: Matrix, opts: FactorOptions):
    cp = char_poly(A)
    if cp.deg < 1:
        return []
    return [-p.c[0] for p, _ in factor_over_base(cp, opts) if p.deg == 1]


def brute_force_oracle(g, opts: FactorOptions = DEFAULT_OPTIONS):
    """Every simultaneous eigenspace of the basis elements over the base field.

    Accepts a LieAlgebra or a list of matrices.  Returns a list of
    (eigenvalue tuple, Subspace), sorted by eigenvalue tuple.
    """
    mats = list(g.basis) if isinstance(g, LieAlgebra) else list(g)
    if not mats:
        # the zero algebra: every nonzero vector is an eigenvector
        return [((), Subspace.full(g.field, g.n))] if isinstance(g, LieAlgebra) else []
    F, n = mats[0].field, mats[0].nrows
    spectra = [_base_eigenvalues(A, opts) for A in mats]
    ident = Matrix.identity(F, n)
    out = []

    def search(i, S, vals):
        if i == len(mats):
            out.append((tuple(vals), S))
            return
        for lam in spectra[i]:
            S2 = S.intersect((mats[i] - ident.scale(lam)).kernel())
            if S2.dim:
                search(i + 1, S2, vals + [lam])

    search(0, Subspace.full(F, n), [])
    out.sort(key=lambda vs: tuple(F.sort_key(x) for x in vs[0]))
    return out


def oracle_agrees(result: EigenResult, oracle) -> bool:
    vals = tuple(r for _, r in result.eigenvalues)
    return any(vs == vals and S.contains(result.vector) for vs, S in oracle)


# ---------------------------------------------------------------------------
# audits
# ---------------------------------------------------------------------------


@dataclass
class CorollaryDReport:
    dims: list
    bound: int  # number of summands whose dimension is outside M
    eigenvectors: list  # [(summand index, vector, [(basis index, r)])]
    independent: bool
    claim_holds: bool  # an eigenvector exists if some dimension is outside M

    def to_data(self, field):
        return {
            "dims": list(self.dims),
            "bound": self.bound,
            "eigenvectors": [
                {
                    "summand": i,
                    "vector": [field.to_data(x) for x in v],
                    "eigenvalues": [{"index": j, "value": field.to_data(r)} for j, r in vals],
                }
                for i, v, vals in self.eigenvectors
            ],
            "independent": self.independent,
            "claim_holds": self.claim_holds,
        }


def restrict_algebra(g: LieAlgebra, W: Subspace) -> LieAlgebra:
    mats = [restrict_operator(A, W) for A in g.basis]
    return lie_closure(mats)


def corollary_d_report(
    g: LieAlgebra,
    tower: FieldTower,
    decomposition: Sequence[Subspace],
    opts: FactorOptions = DEFAULT_OPTIONS,
) -> CorollaryDReport:
    """For an invariant direct sum V = ⊕ W_i, produce one eigenvector in each
    summand whose dimension is outside M; they are independent, so the span
    of eigenvectors has dimension at least the number of such summands."""
    F, n = g.field, g.n
    _check_direct_sum(F, n, decomposition, NotADirectSum)
    for idx, W in enumerate(decomposition):
        for A in g.basis:
            if not W.is_invariant(A):
                raise NotInvariant(f"summand {idx} is not invariant")
    report = check_conditions(g, tower, opts)
    if not report.c1_holds:
        raise NotApplicable("c1 fails", report)
    dims = [W.dim for W in decomposition]
    found = []
    for idx, W in enumerate(decomposition):
        if monoid_contains(W.dim, tower):
            continue
        h = restrict_algebra(g, W)
        res = common_eigenvector(h, tower, opts)
        v = W.lift(res.vector)
        vals = []
        for j, A in enumerate(g.basis):
            r = eigenvalue_on(A, v)
            if r is None:
                raise StageFailure("engel", f"lifted vector of summand {idx} is not an eigenvector", v)
            vals.append((j, r))
        found.append((idx, v, vals))
    bound = sum(1 for d in dims if not monoid_contains(d, tower))
    independent = True
    if found:
        independent = Subspace.span(F, n, [v for _, v, _ in found]).dim == len(found)
    claim = bound == 0 or len(found) > 0
    return CorollaryDReport(dims, bound, found, independent, claim)


@dataclass
class CorollaryBVerdict:
    status: str  # "vacuous" | "consistent" | "refuted" | "inapplicable"
    oracle_empty: bool
    invariant_dims: list
    violations: list  # dims of invariant candidates outside M while the oracle is empty
    hypotheses: dict = dc_field(default_factory=dict)

    def to_data(self):
        return {
            "status": self.status,
            "oracle_empty": self.oracle_empty,
            "invariant_dims": list(self.invariant_dims),
            "violations": list(self.violations),
            "hypotheses": dict(self.hypotheses),
        }


def default_candidates(g: LieAlgebra, opts: FactorOptions = DEFAULT_OPTIONS) -> list[Subspace]:
    """V itself, primary components (nilpotent g only), images of the lower
    central and derived terms acting on V, and the common kernel of g."""
    from .lie import derived_series, lower_central_series

    F, n = g.field, g.n
    cands = [Subspace.full(F, n)]
    if classify(g, opts).nilpotent:
        cands.extend(c.subspace for c in primary_decomposition(g, opts, check_nilpotent=False))
    for series in (lower_central_series(g), derived_series(g)):
        for term in series:
            mats = [Matrix.unvectorize(F, b, n) for b in term.basis]
            img = Subspace.span(F, n, [c for M in mats for c in M.columns()])
            cands.append(img)
    K = Subspace.full(F, n)
    for A in g.basis:
        K = K.intersect(A.kernel())
    cands.append(K)
    uniq = []
    for S in cands:
        if S.dim and S not in uniq:
            uniq.append(S)
    return uniq


def corollary_b_audit(
    g: LieAlgebra,
    tower: FieldTower,
    candidates: Sequence[Subspace] | None = None,
    opts: FactorOptions = DEFAULT_OPTIONS,
) -> CorollaryBVerdict:
    """If a nilpotent g satisfying (C1) has no eigenvector, every nonzero
    invariant subspace has dimension in M (even dimension for d = 2).  Only
    the supplied (or default) candidates are checked.  When g is not
    nilpotent or (C1) fails the verdict is "inapplicable"."""
    if candidates is None:
        candidates = default_candidates(g, opts)
    invariant = [S for S in candidates if S.dim and all(S.is_invariant(A) for A in g.basis)]
    empty = not brute_force_oracle(g, opts)
    dims = sorted(S.dim for S in invariant)
    cond = check_conditions(g, tower, opts)
    hyp = {"nilpotent": cond.nilpotent, "c1": cond.c1_holds}
    if not empty:
        return CorollaryBVerdict("vacuous", False, dims, [], hyp)
    bad = [d for d in dims if not monoid_contains(d, tower)]
    if not (cond.nilpotent and cond.c1_holds):
        return CorollaryBVerdict("inapplicable", True, dims, [], hyp)
    return CorollaryBVerdict("refuted" if bad else "consistent", True, dims, bad, hyp)
