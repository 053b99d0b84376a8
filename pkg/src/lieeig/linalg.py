"""Exact dense matrices and subspaces over any supported field.

Vectors are tuples of field elements.  Matrices act on column vectors, so a
basis (b_1, ..., b_n) triangularizes A when A b_j lies in span(b_1..b_j).
Matrices over a prime field GF(p) route their elimination, products and
characteristic polynomials through :mod:`lieeig._kernels`.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NotInvariant
from .fields import FiniteField, GFElem
from .poly import Poly, lcm


def _prime_of(field):
    if isinstance(field, FiniteField) and field.a == 1 and field.p < _kernels.MAX_PRIME:
        return field.p
    return None


def _to_array(rows) -> np.ndarray:
    return np.array([[x.v for x in r] for r in rows], dtype=np.int64).reshape(len(rows), -1)


def _from_array(field, arr) -> tuple:
    return tuple(tuple(GFElem(field, int(v)) for v in row) for row in arr)


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def vec_is_zero(v) -> bool:
    return not any(v)


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def unit_vector(field, n: int, i: int):
    return tuple(field.one if j == i else field.zero for j in range(n))


# ---------------------------------------------------------------------------
# Gauss-Jordan
# ---------------------------------------------------------------------------


def _rref_generic(field, rows):
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    one = field.one
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = one / a[r][c]
        pr = [x * inv for x in a[r]]
        a[r] = pr
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    ai = a[i]
                    a[i] = [x - f * y if y else x for x, y in zip(ai, pr)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in a), tuple(pivots)


def rref_rows(field, rows):
    """(reduced rows, pivot columns) for a list of equal-length vectors."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return (), ()
    p = _prime_of(field)
    if p is not None:
        arr, piv = _kernels.rref_modp(_to_array(rows), p)
        return _from_array(field, arr), tuple(int(x) for x in piv)
    return _rref_generic(field, rows)


# ---------------------------------------------------------------------------
# Matrix
# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field, rows, ncols: int | None = None, *, _trusted: bool = False):
        if _trusted:
            rows = tuple(rows)
        else:
            rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if rows:
            self.ncols = len(rows[0])
            if any(len(r) != self.ncols for r in rows):
                raise DimensionMismatch("ragged matrix rows")
        else:
            self.ncols = ncols or 0
        self._hash = None

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls(field, [unit_vector(field, n, i) for i in range(n)], _trusted=True)

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls(field, [(z,) * ncols for _ in range(nrows)], ncols, _trusted=True)

    @classmethod
    def from_columns(cls, field, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            return cls(field, [() for _ in range(nrows or 0)], 0, _trusted=True)
        return cls(field, list(zip(*cols)), _trusted=True)

    @classmethod
    def unit(cls, field, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit E_ij (0-based)."""
        z, o = field.zero, field.one
        return cls(field, [tuple(o if (r, c) == (i, j) else z for c in range(n)) for r in range(n)], _trusted=True)

    @classmethod
    def block_diag(cls, field, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        z = field.zero
        rows = []
        off = 0
        for b in blocks:
            for r in b.rows:
                rows.append((z,) * off + tuple(r) + (z,) * (n - off - b.ncols))
            off += b.ncols
        return cls(field, rows, _trusted=True)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [], self.nrows, _trusted=True)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, [vec_add(r, s) for r, s in zip(self.rows, other.rows)], self.ncols, _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.field, [vec_sub(r, s) for r, s in zip(self.rows, other.rows)], self.ncols, _trusted=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [tuple(-x for x in r) for r in self.rows], self.ncols, _trusted=True)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, [vec_scale(c, r) for r in self.rows], self.ncols, _trusted=True)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            p = _prime_of(self.field)
            if p is not None and self.nrows and other.ncols:
                arr = _kernels.matmul_modp(_to_array(self.rows), _to_array(other.rows), p)
                return Matrix(self.field, _from_array(self.field, arr), _trusted=True)
            cols = other.columns()
            zero = self.field.zero
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = zero
                    for x, y in zip(r, c):
                        if x and y:
                            acc = acc + x * y
                    row.append(acc)
                out.append(tuple(row))
            return Matrix(self.field, out, other.ncols, _trusted=True)
        return self.apply(other)

    def apply(self, v):
        """A·v for a coordinate vector v."""
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length does not match matrix")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for x, y in zip(r, v):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows and self.shape == other.shape

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_upper_triangular(self, strict: bool = False) -> bool:
        for i, r in enumerate(self.rows):
            upto = i + 1 if strict else i
            if any(r[:upto]):
                return False
        return True

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def trace(self):
        acc = self.field.zero
        for x in self.diagonal():
            acc = acc + x
        return acc

    def vectorize(self):
        """Row-major flattening."""
        return tuple(x for r in self.rows for x in r)

    @classmethod
    def unvectorize(cls, field, v, n: int) -> "Matrix":
        return cls(field, [tuple(v[i * n : (i + 1) * n]) for i in range(n)], _trusted=True)

    # elimination -------------------------------------------------------
    def rref(self):
        """(reduced row echelon form, pivot columns)."""
        rows, piv = rref_rows(self.field, self.rows)
        return Matrix(self.field, rows, self.ncols, _trusted=True), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Subspace":
        R, piv = self.rref()
        n = self.ncols
        F = self.field
        free = [j for j in range(n) if j not in set(piv)]
        vecs = []
        for f in free:
            v = [F.zero] * n
            v[f] = F.one
            for i, pc in enumerate(piv):
                v[pc] = -R.rows[i][f]
            vecs.append(tuple(v))
        return Subspace.span(F, n, vecs)

    def image(self) -> "Subspace":
        return Subspace.span(self.field, self.nrows, self.columns())

    def inverse(self) -> "Matrix":
        n = self.nrows
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        F = self.field
        aug = [tuple(r) + unit_vector(F, n, i) for i, r in enumerate(self.rows)]
        rows, piv = rref_rows(F, aug)
        if tuple(piv[:n]) != tuple(range(n)) or len(piv) != n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(F, [r[n:] for r in rows], _trusted=True)

    def det(self):
        # constant coefficient of det(tI - A) times (-1)^n
        cp = char_poly(self)
        c0 = cp[0]
        return c0 if self.nrows % 2 == 0 else -c0

    def to_data(self):
        return [[self.field.to_data(x) for x in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"


def identity_like(A: Matrix) -> Matrix:
    return Matrix.identity(A.field, A.nrows)


def echelon_kernel_image(A: Matrix):
    """(rref, kernel, image, rank) in one call."""
    R, piv = A.rref()
    return R, A.kernel(), A.image(), len(piv)


# ---------------------------------------------------------------------------
# Subspace
# ---------------------------------------------------------------------------


class Subspace:
    """Subspace of F^n stored by the reduced row echelon form of a basis."""

    __slots__ = ("field", "n", "basis", "pivots")

    def __init__(self, field, n: int, basis, pivots):
        self.field = field
        self.n = n
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
        if not vectors:
            return cls(field, n, (), ())
        rows, piv = rref_rows(field, vectors)
        return cls(field, n, rows[: len(piv)], piv)

    @classmethod
    def zero(cls, field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field, n: int) -> "Subspace":
        return cls(field, n, [unit_vector(field, n, i) for i in range(n)], range(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, basis={[list(map(str, b)) for b in self.basis]})"

    def _check(self, other: "Subspace"):
        if self.n != other.n:
            raise DimensionMismatch(f"ambient dimensions {self.n} and {other.n}")

    def reduce(self, v):
        """Residual of v after eliminating the pivot coordinates."""
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                v = [x - c * y if y else x for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v) -> bool:
        if len(v) != self.n:
            raise DimensionMismatch("vector length does not match ambient dimension")
        return vec_is_zero(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def coords(self, v):
        """Coordinates of v (assumed in the subspace) in the canonical basis."""
        return tuple(v[pc] for pc in self.pivots)

    def lift(self, coords):
        """Ambient vector with the given canonical-basis coordinates."""
        out = [self.field.zero] * self.n
        for c, b in zip(coords, self.basis):
            if c:
                out = [x + c * y for x, y in zip(out, b)]
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.n, self.basis + other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return self + other

    def constraints(self) -> list:
        """Rows of a matrix whose kernel is this subspace."""
        F = self.field
        piv = set(self.pivots)
        rows = []
        for j in range(self.n):
            if j in piv:
                continue
            r = [F.zero] * self.n
            r[j] = F.one
            for b, pc in zip(self.basis, self.pivots):
                r[pc] = r[pc] - b[j]
            rows.append(tuple(r))
        return rows

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        cons = self.constraints() + other.constraints()
        if not cons:
            return Subspace.full(self.field, self.n)
        return Matrix(self.field, cons, self.n, _trusted=True).kernel()

    def quotient_basis(self):
        """Standard unit vectors at the non-pivot columns; together with the
        canonical basis they form a basis of the ambient space."""
        piv = set(self.pivots)
        return [unit_vector(self.field, self.n, j) for j in range(self.n) if j not in piv]

    def basis_matrix(self) -> Matrix:
        """Basis vectors as columns (n x dim)."""
        return Matrix.from_columns(self.field, self.basis, self.n) if self.basis else Matrix(self.field, [() for _ in range(self.n)], 0, _trusted=True)

    def is_invariant(self, A: Matrix) -> bool:
        return all(self.contains(A.apply(b)) for b in self.basis)

    def to_data(self):
        return [[self.field.to_data(x) for x in b] for b in self.basis]


def subspace_ops(op: str, *args):
    if op == "intersect":
        a, b = args
        return a.intersect(b)
    if op == "sum":
        a, b = args
        return a + b
    if op == "contains":
        a, b = args
        return a.contains_subspace(b) if isinstance(b, Subspace) else a.contains(b)
    if op == "quotient_basis":
        (a,) = args
        return a.quotient_basis()
    raise ValueError(f"unknown op {op!r}")


class EchelonBuilder:
    """Incrementally maintained reduced echelon basis; used for membership
    tests while growing a span one vector at a time."""

    def __init__(self, field, n: int):
        self.field = field
        self.n = n
        self.rows: dict[int, list] = {}

    def reduce(self, v):
        v = list(v)
        for pc, row in self.rows.items():
            c = v[pc]
            if c:
                v = [x - c * y if y else x for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Add v; return False if it was already in the span."""
        r = self.reduce(v)
        pc = next((j for j, x in enumerate(r) if x), None)
        if pc is None:
            return False
        inv = self.field.one / r[pc]
        r = [x * inv for x in r]
        for k, row in self.rows.items():
            c = row[pc]
            if c:
                self.rows[k] = [x - c * y if y else x for x, y in zip(row, r)]
        self.rows[pc] = r
        return True

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def subspace(self) -> Subspace:
        keys = sorted(self.rows)
        return Subspace(self.field, self.n, [tuple(self.rows[k]) for k in keys], keys)


# ---------------------------------------------------------------------------
# operators on subspaces
# ---------------------------------------------------------------------------


def restrict_operator(A: Matrix, W: Subspace) -> Matrix:
    """Matrix of A|W in W's canonical basis; raises NotInvariant if A·W ⊄ W."""
    if A.ncols != W.n or not A.is_square():
        raise DimensionMismatch("operator and subspace dimensions differ")
    cols = []
    for b in W.basis:
        img = A.apply(b)
        c = W.coords(img)
        if W.lift(c) != img:
            raise NotInvariant("subspace is not invariant", witness=b, image=img)
        cols.append(c)
    m = W.dim
    if m == 0:
        return Matrix(A.field, [], 0, _trusted=True)
    return Matrix.from_columns(A.field, cols, m)


def change_of_basis(A: Matrix, basis: Sequence[Sequence]) -> Matrix:
    """P^{-1} A P where P has the given basis vectors as columns."""
    P = Matrix.from_columns(A.field, basis, A.nrows)
    return P.inverse() @ A @ P


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials
# ---------------------------------------------------------------------------


def _berkowitz_generic(A: Matrix) -> list:
    F = A.field
    n = A.nrows
    a = A.rows
    if n == 0:
        return [F.one]
    poly = [F.one, -a[0][0]]  # descending
    zero = F.zero
    for k in range(1, n):
        R = a[k][:k]
        v = [a[i][k] for i in range(k)]
        col = [F.one, -a[k][k]]
        for step in range(k):
            s = zero
            for x, y in zip(R, v):
                if x and y:
                    s = s + x * y
            col.append(-s)
            if step < k - 1:
                v = [sum((a[i][j] * v[j] for j in range(k) if a[i][j] and v[j]), zero) for i in range(k)]
        new = [zero] * (k + 2)
        for j, pj in enumerate(poly):
            if pj:
                for i in range(k + 2 - j):
                    new[j + i] = new[j + i] + col[i] * pj
        poly = new
    return poly[::-1]


def char_poly(A: Matrix) -> Poly:
    """det(tI - A) via the division-free Berkowitz recursion."""
    if not A.is_square():
        raise DimensionMismatch("char_poly of a non-square matrix")
    F = A.field
    p = _prime_of(F)
    if p is not None and A.nrows:
        coeffs = _kernels.charpoly_modp(_to_array(A.rows), p)
        return Poly(F, [GFElem(F, int(c)) for c in coeffs], _trusted=True)
    return Poly(F, _berkowitz_generic(A), _trusted=True)


def poly_at_matrix(f: Poly, A: Matrix) -> Matrix:
    """f(A) by Horner's rule."""
    result = Matrix.zeros(A.field, A.nrows)
    ident = Matrix.identity(A.field, A.nrows)
    for c in reversed(f.c):
        result = result @ A + ident.scale(c)
    return result


def poly_apply_vector(f: Poly, A: Matrix, v):
    """f(A)·v without forming f(A)."""
    acc = tuple(A.field.zero for _ in v)
    for c in reversed(f.c):
        acc = vec_add(A.apply(acc), vec_scale(c, v))
    return acc


def krylov_annihilator(A: Matrix, v) -> Poly:
    """Monic polynomial of least degree with f(A)·v = 0."""
    F = A.field
    rows = []  # (pivot, reduced vector, combination of powers)
    cur = tuple(v)
    k = 0
    while True:
        w = list(cur)
        comb = [F.zero] * k + [F.one]
        for pc, r, rc in rows:
            c = w[pc]
            if c:
                w = [x - c * y if y else x for x, y in zip(w, r)]
                comb = [x - c * y for x, y in zip(comb, rc + [F.zero] * (len(comb) - len(rc)))]
        pc = next((j for j, x in enumerate(w) if x), None)
        if pc is None:
            return Poly(F, comb, _trusted=True)
        inv = F.one / w[pc]
        rows.append((pc, [x * inv for x in w], [x * inv for x in comb]))
        cur = A.apply(cur)
        k += 1


def min_poly(A: Matrix) -> Poly:
    """lcm over the standard basis of the Krylov annihilators."""
    if not A.is_square():
        raise DimensionMismatch("min_poly of a non-square matrix")
    F = A.field
    n = A.nrows
    result = Poly.one(F)
    for i in range(n):
        e = unit_vector(F, n, i)
        if result.deg > 0 and vec_is_zero(poly_apply_vector(result, A, e)):
            continue
        result = lcm(result, krylov_annihilator(A, e))
    return result


def eigenspace(A: Matrix, lam) -> Subspace:
    """ker(A - λI)."""
    return (A - Matrix.identity(A.field, A.nrows).scale(lam)).kernel()


def is_nilpotent(A: Matrix) -> bool:
    """A^n = 0, checked by explicit powering."""
    return (A ** A.nrows).is_zero() if A.nrows else True
