"""Dense univariate polynomials over any of the fields in :mod:`lieeig.fields`,
factorization over the base field, splitting in the extension, the monoid
generated by the prime divisors of [k:f], and the root/multiplicity analyzer.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import gmpy2
from gmpy2 import mpq

from .errors import (
    DegreeBoundExceeded,
    DivisionByZeroPoly,
    DoesNotSplit,
    SmallCharacteristic,
)
from .fields import QQ, ExtElem, FieldTower, FiniteField, RationalField, prime_divisors

DEFAULT_SEED = 20240917
DEFAULT_DEGREE_BOUND = 10


@dataclass(frozen=True)
class FactorOptions:
    """Knobs for the factorizers: the seed of the randomized equal-degree
    splitter and the degree bound of the rational (Kronecker) search."""

    seed: int = DEFAULT_SEED
    degree_bound: int = DEFAULT_DEGREE_BOUND


DEFAULT_OPTIONS = FactorOptions()


class Poly:
    """Immutable polynomial; ``c`` holds coefficients in ascending degree with
    no trailing zeros (the zero polynomial has ``c == ()``)."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field, coeffs: Sequence = (), *, _trusted: bool = False):
        if not _trusted:
            coeffs = [field(x) for x in coeffs]
        else:
            coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.c = tuple(coeffs)
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def t(cls, field) -> "Poly":
        return cls(field, (field.zero, field.one), _trusted=True)

    @classmethod
    def const(cls, field, x) -> "Poly":
        return cls(field, (field(x),), _trusted=True)

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, (field.one,), _trusted=True)

    @classmethod
    def from_roots(cls, field, roots) -> "Poly":
        out = cls.one(field)
        t = cls.t(field)
        for r in roots:
            out = out * (t - cls.const(field, r))
        return out

    def _new(self, coeffs) -> "Poly":
        return Poly(self.field, coeffs, _trusted=True)

    # basic properties --------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else self.field.zero

    def __bool__(self):
        return bool(self.c)

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == self.field.one

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.field.zero

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.c == other.c
        if not self.c:
            return not other
        return len(self.c) == 1 and self.c[0] == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    # arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self.field(other)
            return self._new([x * s for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return self._new(())
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly"):
        if not other:
            raise DivisionByZeroPoly("polynomial division by zero")
        r = list(self.c)
        db = other.deg
        inv_lc = self.field.one / other.lc
        b = other.c
        zero = self.field.zero
        if len(r) <= db:
            return self._new(()), self
        q = [zero] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            coef = r[i + db] * inv_lc
            q[i] = coef
            if coef:
                for j in range(db + 1):
                    r[i + j] = r[i + j] - coef * b[j]
        return self._new(q), self._new(r[:db])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if not self.c:
            return self
        inv = self.field.one / self.c[-1]
        return self._new([x * inv for x in self.c])

    def deriv(self) -> "Poly":
        return self._new([x * i for i, x in enumerate(self.c)][1:])

    def __call__(self, x):
        acc = self.field.zero
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def powmod(self, e: int, m: "Poly") -> "Poly":
        result = Poly.one(self.field) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def map(self, fn, field) -> "Poly":
        """Apply ``fn`` to every coefficient, landing in ``field``."""
        return Poly(field, [fn(x) for x in self.c], _trusted=True)

    def to_data(self):
        return [self.field.to_data(x) for x in self.c]

    def sort_key(self):
        return (self.deg, tuple(self.field.sort_key(x) for x in reversed(self.c)))

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(self.deg, -1, -1):
            x = self.c[i]
            if not x:
                continue
            coef = str(x)
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mon and x == self.field.one:
                terms.append(mon)
            elif mon and len(coef) > 0 and any(ch in coef for ch in "+ "):
                terms.append(f"({coef})*{mon}")
            elif mon:
                terms.append(f"{coef}*{mon}")
            else:
                terms.append(coef)
        return " + ".join(terms).replace("+ -", "- ")


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly(a.field, ())
    return (a * b // gcd(a, b)).monic()


def poly_arith(op: str, a: Poly, b: Poly):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divmod":
        return a.divmod(b)
    if op == "gcd":
        return gcd(a, b)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Squarefree decomposition
# ---------------------------------------------------------------------------


def squarefree_decomposition(a: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm.  Returns monic, squarefree, pairwise coprime factors
    with their exponents (ascending), leading unit dropped."""
    if a.deg < 1:
        return []
    p = a.field.char
    if p and p <= a.deg:
        raise SmallCharacteristic(f"characteristic {p} <= degree {a.deg}")
    return _yun(a)


def _yun(a: Poly) -> list[tuple[Poly, int]]:
    a = a.monic()
    out = []
    da = a.deriv()
    b = gcd(a, da)
    c = a // b
    d = da // b - c.deriv()
    i = 1
    while c.deg > 0:
        g = gcd(c, d)
        c_next = c // g
        d = d // g - c_next.deriv()
        if g.deg > 0:
            out.append((g, i))
        c = c_next
        i += 1
    return out


def _pth_root_coeff(x, field: FiniteField):
    # inverse of Frobenius on GF(p^a): x^(p^(a-1))
    if field.a == 1:
        return x
    return x ** (field.p ** (field.a - 1))


def _sqf_finite(a: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition valid in any characteristic p (finite fields)."""
    f = a.monic()
    F = f.field
    p = F.char
    out: dict[int, Poly] = {}
    n = 1
    while True:
        df = f.deriv()
        if df:
            g = gcd(f, df)
            h = f // g
            i = 1
            while not h.is_one():
                G = gcd(g, h)
                H = h // G
                if H.deg > 0:
                    out[i * n] = out[i * n] * H if i * n in out else H
                g = g // G
                h = G
                i += 1
            if g.is_one():
                break
            f = g
        # f is now a p-th power
        dd = f.deg // p
        f = Poly(F, [_pth_root_coeff(f.c[i * p], F) for i in range(dd + 1)], _trusted=True)
        n *= p
        if f.deg < 1:
            break
    return sorted(((v, k) for k, v in out.items()), key=lambda fe: fe[1])


# ---------------------------------------------------------------------------
# Factorization over finite fields
# ---------------------------------------------------------------------------


def _ddf(f: Poly) -> list[tuple[Poly, int]]:
    """Distinct-degree factorization of a monic squarefree polynomial."""
    q = f.field.order
    t = Poly.t(f.field)
    out = []
    h = t % f
    i = 1
    while 2 * i <= f.deg:
        h = h.powmod(q, f)
        g = gcd(f, h - t)
        if not g.is_one():
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.deg > 0:
        out.append((f, f.deg))
    return out


def _edf(f: Poly, j: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus equal-degree splitting of a monic squarefree product of
    degree-j irreducibles."""
    if f.deg == j:
        return [f]
    F = f.field
    q = F.order
    while True:
        r = Poly(F, [F.random(rng) for _ in range(f.deg)], _trusted=True)
        if r.deg < 1:
            continue
        if q % 2:
            h = r.powmod((q**j - 1) // 2, f) - Poly.one(F)
        else:
            m = (q.bit_length() - 1) * j
            h = r % f
            s = h
            for _ in range(m - 1):
                s = (s * s) % f
                h = h + s
        g = gcd(f, h)
        if 0 < g.deg < f.deg:
            return _edf(g, j, rng) + _edf(f // g, j, rng)


def _factor_finite(a: Poly, opts: FactorOptions) -> list[tuple[Poly, int]]:
    rng = random.Random(opts.seed)
    out = []
    for s, e in _sqf_finite(a):
        for g, j in _ddf(s):
            for h in _edf(g, j, rng):
                out.append((h, e))
    return out


def is_irreducible(a: Poly) -> bool:
    """Irreducibility over the coefficient field (Rabin's test for finite
    fields, factorization for the rationals)."""
    if a.deg < 1:
        return False
    if a.deg == 1:
        return True
    F = a.field
    if isinstance(F, RationalField):
        facs = factor_over_base(a)
        return len(facs) == 1 and facs[0][1] == 1
    if F.order is None:
        raise NotImplementedError("irreducibility over this field")
    f = a.monic()
    n = f.deg
    q = F.order
    t = Poly.t(F)
    # t^(q^n) == t mod f and gcd(t^(q^(n/r)) - t, f) = 1 for primes r | n
    for r in prime_divisors(n):
        h = t
        for _ in range(n // r):
            h = h.powmod(q, f)
        if not gcd(f, h - t).is_one():
            return False
    h = t
    for _ in range(n):
        h = h.powmod(q, f)
    return (h - t) % f == Poly(F, ())


# ---------------------------------------------------------------------------
# Factorization over the rationals (Kronecker)
# ---------------------------------------------------------------------------


def _to_primitive_int(a: Poly) -> list[int]:
    den = 1
    for x in a.c:
        den = gmpy2.lcm(den, x.denominator)
    ints = [int(x * den) for x in a.c]
    g = 0
    for x in ints:
        g = gmpy2.gcd(g, x)
    g = int(g)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _ieval(f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _idivexact(f: list[int], g: list[int]):
    """Quotient of f by g in Z[t] if exact, else None."""
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    if len(r) - 1 < dg:
        return None
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1 - dg, -1, -1):
        num = r[i + dg]
        if num % lg:
            return None
        c = num // lg
        q[i] = c
        if c:
            for j in range(dg + 1):
                r[i + j] -= c * g[j]
    if any(r[:dg]):
        return None
    return q


def _divisors(n: int) -> list[int]:
    n = abs(int(n))
    if n == 0:
        return []
    facs = []
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            k = 0
            while m % q == 0:
                m //= q
                k += 1
            facs.append((q, k))
        q += 1 if q == 2 else 2
    if m > 1:
        facs.append((m, 1))
    divs = [1]
    for q, k in facs:
        divs = [d * q**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def _rational_roots(f: list[int]) -> list[mpq]:
    roots = []
    if f[0] == 0:
        roots.append(mpq(0))
    lo = next(c for c in f if c)
    for num in _divisors(lo):
        for den in _divisors(f[-1]):
            if gmpy2.gcd(num, den) != 1:
                continue
            for s in (1, -1):
                r = mpq(s * num, den)
                # f(num/den) * den^deg as an integer
                acc = 0
                for c in reversed(f):
                    acc = acc * r + c
                if acc == 0:
                    roots.append(r)
    return sorted(set(roots))


def _lagrange_basis(xs: list[int]) -> list[list[mpq]]:
    basis = []
    for i, xi in enumerate(xs):
        poly = [mpq(1)]
        denom = mpq(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # multiply by (t - xj)
            new = [mpq(0)] * (len(poly) + 1)
            for k, c in enumerate(poly):
                new[k] -= c * xj
                new[k + 1] += c
            poly = new
            denom *= xi - xj
        basis.append([c / denom for c in poly])
    return basis


def _kronecker_factor(f: list[int], s: int):
    """A degree-s factor of the primitive integer polynomial f, or None."""
    cands = []
    x = 0
    while len(cands) < 2 * s + 6:
        v = _ieval(f, x)
        if v:
            cands.append((abs(v), x, v))
        x = -x if x > 0 else -x + 1
    cands.sort()
    chosen = cands[: s + 1]
    extra = cands[s + 1 :]
    xs = [c[1] for c in chosen]
    vals = [c[2] for c in chosen]
    basis = _lagrange_basis(xs)
    lead_basis = [b[s] for b in basis]
    extra_basis = [[sum(b[k] * ex[1] ** k for k in range(s + 1)) for b in basis] for ex in extra[:3]]
    divs = [_divisors(v) for v in vals]
    options = [[d for d in divs[0]]] + [[d for d in dv] + [-d for d in dv] for dv in divs[1:]]
    lcf = f[-1]
    for combo in itertools.product(*options):
        lead = sum(c * b for c, b in zip(combo, lead_basis))
        if lead == 0 or lead.denominator != 1 or lcf % int(lead):
            continue
        bad = False
        for ex, eb in zip(extra, extra_basis):
            gv = sum(c * b for c, b in zip(combo, eb))
            if gv == 0 or gv.denominator != 1 or ex[2] % int(gv):
                bad = True
                break
        if bad:
            continue
        coeffs = [sum(c * b[k] for c, b in zip(combo, basis)) for k in range(s + 1)]
        if any(c.denominator != 1 for c in coeffs):
            continue
        g = [int(c) for c in coeffs]
        if _idivexact(f, g) is not None:
            if g[-1] < 0:
                g = [-c for c in g]
            return g
    return None


def _factor_squarefree_int(f: list[int], degree_bound: int) -> list[list[int]]:
    """Irreducible primitive factors of a squarefree primitive integer polynomial."""
    out = []
    for r in _rational_roots(f):
        lin = [-int(r.numerator), int(r.denominator)]
        q = _idivexact(f, lin)
        assert q is not None
        f = q
        out.append(lin)
    if len(f) - 1 < 1:
        return out
    if len(f) - 1 > degree_bound:
        raise DegreeBoundExceeded(
            f"root-free part has degree {len(f) - 1} > bound {degree_bound}"
        )
    s = 2
    while 2 * s <= len(f) - 1:
        g = _kronecker_factor(f, s)
        if g is None:
            s += 1
            continue
        out.append(g)
        f = _idivexact(f, g)
    if len(f) - 1 >= 1:
        out.append(f)
    return out


def _factor_rational(a: Poly, opts: FactorOptions) -> list[tuple[Poly, int]]:
    out = []
    for s, e in _yun(a):
        ints = _to_primitive_int(s)
        for g in _factor_squarefree_int(ints, opts.degree_bound):
            out.append((Poly(QQ, [mpq(c) for c in g], _trusted=True).monic(), e))
    return out


# ---------------------------------------------------------------------------
# Public factorization entry point
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=4096)
def _factor_cached(a: Poly, opts: FactorOptions):
    if isinstance(a.field, RationalField):
        facs = _factor_rational(a, opts)
    elif isinstance(a.field, FiniteField):
        facs = _factor_finite(a, opts)
    else:
        raise NotImplementedError(f"factorization over {a.field!r}")
    facs.sort(key=lambda fe: (fe[0].sort_key(), fe[1]))
    return tuple(facs)


def factor_over_base(a: Poly, opts: FactorOptions = DEFAULT_OPTIONS) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with exponents; the product times lc(a) is a."""
    if a.deg < 1:
        raise ValueError("factor_over_base needs degree >= 1")
    return list(_factor_cached(a, opts))


def is_prime_power(a: Poly, opts: FactorOptions = DEFAULT_OPTIONS):
    """(p, e) if a = lc * p^e with p irreducible, else None."""
    facs = factor_over_base(a, opts)
    if len(facs) == 1:
        return facs[0]
    return None


# ---------------------------------------------------------------------------
# The monoid generated by the prime divisors of d
# ---------------------------------------------------------------------------


def _primes_of(tower_or_d) -> list[int]:
    if isinstance(tower_or_d, FieldTower):
        return tower_or_d.prime_divisors
    return prime_divisors(int(tower_or_d))


@functools.lru_cache(maxsize=256)
def _reachable(primes: tuple[int, ...], limit: int) -> tuple[bool, ...]:
    reach = [False] * (limit + 1)
    reach[0] = True
    for x in range(1, limit + 1):
        reach[x] = any(x >= q and reach[x - q] for q in primes)
    return tuple(reach)


def monoid_contains(n: int, tower_or_d) -> bool:
    """Whether n is a nonnegative integer combination of the primes dividing d.

    ``tower_or_d`` is a FieldTower or the degree d itself.
    """
    if n < 0:
        return False
    primes = tuple(_primes_of(tower_or_d))
    return _reachable(primes, max(n, 64))[n]


# ---------------------------------------------------------------------------
# Splitting in k and root reports
# ---------------------------------------------------------------------------


@dataclass
class RootReport:
    n: int
    base_roots: list = dc_field(default_factory=list)  # [(base scalar, multiplicity)]
    ext_roots: list = dc_field(default_factory=list)  # [(ExtElem, multiplicity)]
    k_sum: int = 0
    base_sum: int = 0
    in_M: bool = False
    claims: list = dc_field(default_factory=list)  # [{"claim": str, "holds": bool}]
    ext_orbits: list = dc_field(default_factory=list)  # [([ExtElem, ...], multiplicity)]

    @property
    def verdict(self) -> str:
        if self.in_M:
            return "no claim"
        return "confirmed" if all(c["holds"] for c in self.claims) else "violated"

    def to_data(self, tower: FieldTower) -> dict:
        base, ext = tower.base, tower.ext
        return {
            "n": self.n,
            "base_roots": [[base.to_data(r), m] for r, m in self.base_roots],
            "ext_orbits": [[[ext.to_data(z) for z in orb], m] for orb, m in self.ext_orbits],
            "k_sum": self.k_sum,
            "base_sum": self.base_sum,
            "in_M": self.in_M,
            "claims": [dict(c) for c in self.claims],
        }


def _find_root_in_ext(g: Poly, tower: FieldTower, rng: random.Random) -> ExtElem:
    """One root in k of an irreducible base polynomial known to split in k."""
    K = tower.ext
    gk = g.map(K.embed, K)
    while gk.deg > 1:
        gk = _split_once(gk, rng)
    return -gk.c[0] / gk.c[1]


def _split_once(f: Poly, rng: random.Random) -> Poly:
    """A proper monic factor of degree at most deg f / 2 of a squarefree
    product of linear factors (one Cantor-Zassenhaus split)."""
    F = f.field
    q = F.order
    while True:
        r = Poly(F, [F.random(rng) for _ in range(f.deg)], _trusted=True)
        if r.deg < 1:
            continue
        if q % 2:
            h = r.powmod((q - 1) // 2, f) - Poly.one(F)
        else:
            h = r % f
            s = h
            for _ in range(q.bit_length() - 2):
                s = (s * s) % f
                h = h + s
        g = gcd(f, h)
        if 0 < g.deg < f.deg:
            return g if 2 * g.deg <= f.deg else f // g


def splits_in_extension(a: Poly, tower: FieldTower, opts: FactorOptions = DEFAULT_OPTIONS):
    """(True, RootReport) if a factors into linear factors over k, else (False, None)."""
    if a.deg < 1:
        raise ValueError("splits_in_extension needs degree >= 1")
    base, K = tower.base, tower.ext
    if tower.kind == "finite":
        radical = Poly.one(base)
        for s, _ in _sqf_finite(a):
            radical = radical * s
        t = Poly.t(base)
        if radical.deg >= 1 and (t.powmod(K.order, radical) - t) % radical:
            return False, None
    facs = factor_over_base(a, opts)
    rng = random.Random(opts.seed)
    base_roots, orbits = [], []
    for g, e in facs:
        if g.deg == 1:
            base_roots.append((-g.c[0], e))
            continue
        if tower.kind == "rational-quadratic":
            if g.deg != 2:
                return False, None
            m = dict(tower.params)["m"]
            b, c = g.c[1], g.c[0]
            disc = b * b - 4 * c
            ratio = disc / m
            if ratio < 0 or not (gmpy2.is_square(ratio.numerator) and gmpy2.is_square(ratio.denominator)):
                return False, None
            s = mpq(gmpy2.isqrt(ratio.numerator), gmpy2.isqrt(ratio.denominator))
            root = K([-b / 2, s / 2])
        else:
            if tower.degree % g.deg:
                return False, None
            root = _find_root_in_ext(g, tower, rng)
        orbit = sorted(tower.galois_conjugates(root), key=K.sort_key)
        if len(orbit) != g.deg:
            raise AssertionError("Galois orbit size differs from factor degree")
        orbits.append((orbit, e))
    base_roots.sort(key=lambda rm: base.sort_key(rm[0]))
    orbits.sort(key=lambda om: K.sort_key(om[0][0]))
    ext_roots = sorted(((z, e) for orb, e in orbits for z in orb), key=lambda zm: K.sort_key(zm[0]))
    k_sum = sum(e for _, e in ext_roots)
    report = RootReport(
        n=a.deg,
        base_roots=base_roots,
        ext_roots=ext_roots,
        k_sum=k_sum,
        base_sum=a.deg - k_sum,
        in_M=monoid_contains(a.deg, tower),
        ext_orbits=orbits,
    )
    return True, report


def lemma_c_analyze(a: Poly, tower: FieldTower, opts: FactorOptions = DEFAULT_OPTIONS) -> RootReport:
    """Root report for a polynomial split in k, with the degree-based claims.

    The non-base roots always contribute a multiplicity total lying in the
    monoid; when the degree is outside the monoid there must be a base root
    and the base multiplicities must sum to a non-member.
    """
    ok, report = splits_in_extension(a, tower, opts)
    if not ok:
        raise DoesNotSplit(f"{a} does not split in {tower!r}")
    orbit_sizes_divide = all(tower.degree % len(orb) == 0 for orb, _ in report.ext_orbits)
    claims = [
        {"claim": "orbit sizes divide d", "holds": orbit_sizes_divide},
        {"claim": "k_sum in M", "holds": monoid_contains(report.k_sum, tower)},
    ]
    if not report.in_M:
        claims.append({"claim": "base root exists", "holds": bool(report.base_roots)})
        claims.append({"claim": "base_sum not in M", "holds": not monoid_contains(report.base_sum, tower)})
    report.claims = claims
    return report
