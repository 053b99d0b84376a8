"""Prime-field kernels on int64 arrays: Gauss-Jordan, matrix product and the
Berkowitz characteristic polynomial, all modulo a prime p < 2**31.

Each kernel exists twice: a numba ``@njit`` loop version and a vectorized
numpy version.  ``BACKEND`` is ``"numba"`` unless numba is missing or the
environment variable ``LIEEIG_DISABLE_NUMBA`` is set to a true value, in
which case the numpy versions are used.  Both paths return identical arrays.
"""

from __future__ import annotations

import os

import numpy as np

MAX_PRIME = 1 << 31

_disabled = os.environ.get("LIEEIG_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy fallback
# ---------------------------------------------------------------------------


def _rref_np(a: np.ndarray, p: int):
    a = a.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _matmul_np(a: np.ndarray, b: np.ndarray, p: int):
    if a.shape[1] * (p - 1) * (p - 1) < (1 << 62):
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + np.outer(a[:, k], b[k]) % p) % p
    return out


def _berkowitz_np(a: np.ndarray, p: int):
    """Coefficients of det(tI - A), ascending, length n + 1."""
    n = a.shape[0]
    if n == 0:
        return np.ones(1, dtype=np.int64)
    # vector of coefficients (descending) for the leading 1x1 block
    poly = np.array([1, (-a[0, 0]) % p], dtype=np.int64)
    for k in range(1, n):
        R = a[k, :k]
        C = a[:k, k]
        Ak = a[:k, :k]
        items = [1, (-a[k, k]) % p]
        v = C.copy()
        items.append((-int(_matmul_np(R[None, :], v[:, None], p)[0, 0])) % p)
        for _ in range(k - 1):
            v = _matmul_np(Ak, v[:, None], p)[:, 0]
            items.append((-int(_matmul_np(R[None, :], v[:, None], p)[0, 0])) % p)
        # lower-triangular Toeplitz (k+2) x (k+1) times poly
        col = np.array(items, dtype=np.int64)
        new = np.zeros(k + 2, dtype=np.int64)
        for j in range(k + 1):
            new[j:] = (new[j:] + col[: k + 2 - j] * poly[j]) % p
        poly = new
    return poly[::-1].copy()


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _powmod(x, e, p):
        result = 1
        x = x % p
        while e > 0:
            if e & 1:
                result = (result * x) % p
            x = (x * x) % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rref_nb(a, p):
        a = a.copy()
        rows, cols = a.shape
        for i in range(rows):
            for j in range(cols):
                a[i, j] = a[i, j] % p
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        npiv = 0
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[k, j]
                    a[k, j] = tmp
            inv = _powmod(a[r, c], p - 2, p)
            for j in range(cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(rows):
                if i != r and a[i, c] != 0:
                    f = a[i, c]
                    for j in range(cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[npiv] = c
            npiv += 1
            r += 1
        return a, pivots[:npiv].copy()

    @njit(cache=True)
    def _matmul_nb(a, b, p):
        n, m = a.shape
        k = b.shape[1]
        out = np.zeros((n, k), dtype=np.int64)
        for i in range(n):
            for l in range(m):
                x = a[i, l]
                if x != 0:
                    for j in range(k):
                        out[i, j] = (out[i, j] + x * b[l, j]) % p
        return out

    @njit(cache=True)
    def _berkowitz_nb(a, p):
        n = a.shape[0]
        poly = np.zeros(n + 1, dtype=np.int64)
        if n == 0:
            poly[0] = 1
            return poly
        poly[0] = 1
        poly[1] = (-a[0, 0]) % p
        deg = 1
        v = np.zeros(n, dtype=np.int64)
        w = np.zeros(n, dtype=np.int64)
        col = np.zeros(n + 1, dtype=np.int64)
        new = np.zeros(n + 1, dtype=np.int64)
        for k in range(1, n):
            col[0] = 1
            col[1] = (-a[k, k]) % p
            for i in range(k):
                v[i] = a[i, k]
            for step in range(k):
                s = 0
                for i in range(k):
                    s = (s + a[k, i] * v[i]) % p
                col[2 + step] = (-s) % p
                if step < k - 1:
                    for i in range(k):
                        acc = 0
                        for j in range(k):
                            acc = (acc + a[i, j] * v[j]) % p
                        w[i] = acc
                    for i in range(k):
                        v[i] = w[i]
            for i in range(k + 2):
                new[i] = 0
            for j in range(deg + 1):
                pj = poly[j]
                if pj != 0:
                    for i in range(k + 2 - j):
                        new[j + i] = (new[j + i] + col[i] * pj) % p
            deg = k + 1
            for i in range(deg + 1):
                poly[i] = new[i]
        out = np.empty(n + 1, dtype=np.int64)
        for i in range(n + 1):
            out[i] = poly[n - i]
        return out


# ---------------------------------------------------------------------------
# public dispatch
# ---------------------------------------------------------------------------


def _as_array(a) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64))


def rref_modp(a, p: int, backend: str | None = None):
    """Reduced row echelon form of ``a`` mod p and the pivot columns."""
    a = _as_array(a)
    if (backend or BACKEND) == "numba":
        return _rref_nb(a, np.int64(p))
    return _rref_np(a, p)


def matmul_modp(a, b, p: int, backend: str | None = None):
    a, b = _as_array(a), _as_array(b)
    if (backend or BACKEND) == "numba":
        return _matmul_nb(a, b, np.int64(p))
    return _matmul_np(a, b, p)


def charpoly_modp(a, p: int, backend: str | None = None):
    """Ascending coefficients of det(tI - A) mod p (Berkowitz, division-free)."""
    a = _as_array(a) % p
    if (backend or BACKEND) == "numba":
        return _berkowitz_nb(a, np.int64(p))
    return _berkowitz_np(a, p)


def available_backends() -> list[str]:
    return ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
