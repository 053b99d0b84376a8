"""Exact scalars: the rationals, finite fields GF(p^a), and Galois extensions k/f.

Three field objects share one small interface (``zero``, ``one``, ``char``,
``order``, ``__call__`` for coercion, ``to_data``/``from_data`` for
serialization, ``sort_key``).  Elements are ordinary Python objects with
arithmetic operators, so the linear algebra and polynomial code is written
once and runs over any of them.

* ``QQ`` -- rationals, elements are ``gmpy2.mpq`` (always reduced, positive
  denominator).
* ``FiniteField(p, a)`` -- GF(p^a), elements are :class:`GFElem` holding an
  integer code whose base-p digits are the coordinates over GF(p).
* ``ExtensionField(base, modulus)`` -- base[θ]/(modulus), elements are
  :class:`ExtElem` holding power-basis coordinates.

A :class:`FieldTower` pairs a base field with a Galois extension and exposes
the Galois group action.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import (
    CompositeP,
    DivisionByZero,
    NonSquarefree,
    ParseError,
    ReducibleGeneratorPolynomial,
)

MAX_TABLE_ORDER = 1 << 20


def prime_divisors(n: int) -> list[int]:
    """Ascending distinct primes dividing ``n`` (empty for n = 1)."""
    n = abs(int(n))
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    n = abs(int(n))
    if n == 0:
        return False
    q = 2
    while q * q <= n:
        if n % (q * q) == 0:
            return False
        if n % q == 0:
            n //= q
        q += 1
    return True


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")


class RationalField:
    """The rational numbers."""

    char = 0
    order = None
    name = "QQ"
    is_prime_field = False

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (GFElem, ExtElem)):
            raise TypeError(f"cannot coerce {x!r} into QQ")
        return mpq(x)

    def parse(self, s: str):
        m = _RATIONAL_RE.match(s)
        if not m:
            raise ParseError(f"not a rational number: {s!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {s!r}")
        return mpq(num, den)

    def to_data(self, x):
        return str(x)

    def from_data(self, obj):
        if isinstance(obj, bool):
            raise ParseError(f"not a rational number: {obj!r}")
        if isinstance(obj, int):
            return mpq(obj)
        if isinstance(obj, str):
            return self.parse(obj)
        raise ParseError(f"not a rational number: {obj!r}")

    def sort_key(self, x):
        return x

    def random(self, rng, bound: int = 3):
        return mpq(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# ---------------------------------------------------------------------------
# Finite fields GF(p^a)
# ---------------------------------------------------------------------------


class GFElem:
    """Element of GF(p^a); ``v`` encodes the coordinates as base-p digits."""

    __slots__ = ("field", "v")

    def __init__(self, field: "FiniteField", v: int):
        self.field = field
        self.v = v

    def _other(self, other):
        if isinstance(other, GFElem):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("mixing elements of different finite fields")
            return other.v
        if isinstance(other, int):
            return self.field(other).v
        return None

    def __add__(self, other):
        w = self._other(other)
        if w is None:
            return NotImplemented
        return GFElem(self.field, self.field._add(self.v, w))

    __radd__ = __add__

    def __sub__(self, other):
        w = self._other(other)
        if w is None:
            return NotImplemented
        f = self.field
        return GFElem(f, f._add(self.v, f._neg(w)))

    def __rsub__(self, other):
        w = self._other(other)
        if w is None:
            return NotImplemented
        f = self.field
        return GFElem(f, f._add(w, f._neg(self.v)))

    def __mul__(self, other):
        w = self._other(other)
        if w is None:
            return NotImplemented
        return GFElem(self.field, self.field._mul(self.v, w))

    __rmul__ = __mul__

    def __neg__(self):
        return GFElem(self.field, self.field._neg(self.v))

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise DivisionByZero("inverse of zero in " + repr(self.field))
        return GFElem(self.field, self.field._inv(self.v))

    def __truediv__(self, other):
        w = self._other(other)
        if w is None:
            return NotImplemented
        if w == 0:
            raise DivisionByZero("division by zero in " + repr(self.field))
        f = self.field
        return GFElem(f, f._mul(self.v, f._inv(w)))

    def __rtruediv__(self, other):
        w = self._other(other)
        if w is None:
            return NotImplemented
        return GFElem(self.field, w) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        f = self.field
        result, base = f.one.v, self.v
        while e:
            if e & 1:
                result = f._mul(result, base)
            base = f._mul(base, base)
            e >>= 1
        return GFElem(f, result)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, GFElem) and other.field is not self.field and other.field != self.field:
            return False
        w = self._other(other) if isinstance(other, (GFElem, int)) else None
        if w is None:
            return NotImplemented
        return self.v == w

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return f"GF{self.field.order}({self.field.to_data(self)})"

    def __str__(self):
        return str(self.field.to_data(self))


class FiniteField:
    """GF(p^a).  For a > 1 the field is GF(p)[s]/(h) with h the least irreducible
    monic polynomial of degree a (coefficient codes ordered as base-p integers);
    multiplication goes through exp/log tables."""

    is_prime_field = False

    def __init__(self, p: int, a: int = 1):
        p, a = int(p), int(a)
        if p < 2 or not gmpy2.is_prime(p):
            raise CompositeP(f"{p} is not prime")
        if a < 1:
            raise ValueError("exponent a must be positive")
        self.p = p
        self.a = a
        self.char = p
        self.order = p**a
        self.name = f"GF({p})" if a == 1 else f"GF({p}^{a})"
        self.is_prime_field = a == 1
        self.zero = GFElem(self, 0)
        self.one = GFElem(self, 1)
        if a > 1:
            if self.order > MAX_TABLE_ORDER:
                raise ValueError(f"GF({p}^{a}) too large for table arithmetic")
            self.modulus = _least_irreducible_prime_field(p, a)
            self._build_tables()

    # digit helpers for a > 1
    def _digits(self, v):
        p = self.p
        out = []
        for _ in range(self.a):
            out.append(v % p)
            v //= p
        return out

    def _code(self, digits):
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _build_tables(self):
        p, a, q = self.p, self.a, self.order
        h = self.modulus  # monic, ascending, length a + 1

        def mul_digits(x, y):
            prod = [0] * (2 * a - 1)
            for i, xi in enumerate(x):
                if xi:
                    for j, yj in enumerate(y):
                        prod[i + j] = (prod[i + j] + xi * yj) % p
            for k in range(2 * a - 2, a - 1, -1):
                c = prod[k]
                if c:
                    for j in range(a):
                        prod[k - a + j] = (prod[k - a + j] - c * h[j]) % p
                    prod[k] = 0
            return prod[:a]

        for g in range(2, q):
            gd = self._digits(g)
            exp = [1]
            cur = [1] + [0] * (a - 1)
            ok = True
            for i in range(1, q - 1):
                cur = mul_digits(cur, gd)
                code = self._code(cur)
                if code == 1:
                    ok = False
                    break
                exp.append(code)
            if ok:
                break
        self._exp = exp
        self._log = [0] * q
        for i, code in enumerate(exp):
            self._log[code] = i

    def _add(self, v, w):
        if self.a == 1:
            return (v + w) % self.p
        p = self.p
        r, mult = 0, 1
        while v or w:
            r += ((v % p + w % p) % p) * mult
            v //= p
            w //= p
            mult *= p
        return r

    def _neg(self, v):
        if self.a == 1:
            return (-v) % self.p
        p = self.p
        r, mult = 0, 1
        while v:
            r += ((-(v % p)) % p) * mult
            v //= p
            mult *= p
        return r

    def _mul(self, v, w):
        if self.a == 1:
            return (v * w) % self.p
        if v == 0 or w == 0:
            return 0
        return self._exp[(self._log[v] + self._log[w]) % (self.order - 1)]

    def _inv(self, v):
        if self.a == 1:
            return pow(v, self.p - 2, self.p)
        return self._exp[(-self._log[v]) % (self.order - 1)]

    def __call__(self, x):
        if isinstance(x, GFElem):
            if x.field != self:
                raise TypeError("element of a different finite field")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            # integers map through the prime subfield
            return GFElem(self, x % self.p)
        if isinstance(x, str):
            return self.from_data(x)
        if isinstance(x, (list, tuple)):
            return self.from_data(list(x))
        if isinstance(x, type(mpq(0))) and x.denominator == 1:
            return GFElem(self, int(x) % self.p)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def element(self, code: int) -> GFElem:
        """Element with the given integer code (0 <= code < order)."""
        if not 0 <= code < self.order:
            raise ValueError("code out of range")
        return GFElem(self, code)

    def elements(self):
        return [GFElem(self, v) for v in range(self.order)]

    def to_data(self, x: GFElem):
        if self.a == 1:
            return str(x.v)
        return self._digits(x.v)

    def from_data(self, obj):
        if isinstance(obj, bool):
            raise ParseError(f"not a {self.name} element: {obj!r}")
        if isinstance(obj, int):
            return GFElem(self, obj % self.p)
        if isinstance(obj, str):
            s = obj.strip()
            if not re.fullmatch(r"[+-]?\d+", s):
                raise ParseError(f"not a {self.name} residue: {obj!r}")
            return GFElem(self, int(s) % self.p)
        if isinstance(obj, (list, tuple)):
            if len(obj) != self.a:
                raise ParseError(f"{self.name} element needs {self.a} residues, got {obj!r}")
            digits = []
            for c in obj:
                if isinstance(c, bool) or not isinstance(c, (int, str)):
                    raise ParseError(f"bad residue {c!r}")
                try:
                    digits.append(int(c) % self.p)
                except ValueError:
                    raise ParseError(f"bad residue {c!r}") from None
            return GFElem(self, self._code(digits))
        raise ParseError(f"not a {self.name} element: {obj!r}")

    def sort_key(self, x):
        return x.v

    def random(self, rng, bound=None):
        return GFElem(self, rng.randrange(self.order))

    def frobenius(self, x: GFElem) -> GFElem:
        return x**self.p

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.a) == (other.p, other.a)

    def __hash__(self):
        return hash(("GF", self.p, self.a))

    def __repr__(self):
        return self.name


@functools.lru_cache(maxsize=None)
def GF(p: int, a: int = 1) -> FiniteField:
    """Cached constructor so equal fields are usually the same object."""
    return FiniteField(p, a)


def _least_irreducible_prime_field(p: int, a: int) -> tuple[int, ...]:
    from .poly import Poly, is_irreducible

    F = GF(p, 1)
    for code in range(p**a):
        digits = []
        c = code
        for _ in range(a):
            digits.append(c % p)
            c //= p
        cand = Poly(F, [F(x) for x in digits] + [F.one])
        if is_irreducible(cand):
            return tuple(digits) + (1,)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# Extension fields base[θ]/(modulus)
# ---------------------------------------------------------------------------


class ExtElem:
    """Element of an extension field, stored as power-basis coordinates."""

    __slots__ = ("field", "c")

    def __init__(self, field: "ExtensionField", coords):
        self.field = field
        self.c = tuple(coords)

    def _other(self, other):
        if isinstance(other, ExtElem):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("mixing elements of different extension fields")
            return other.c
        try:
            return self.field.embed(self.field.base(other)).c
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, [x + y for x, y in zip(self.c, o)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, [x - y for x, y in zip(self.c, o)])

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, [y - x for x, y in zip(self.c, o)])

    def __neg__(self):
        return ExtElem(self.field, [-x for x in self.c])

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, ExtElem):
            return ExtElem(self.field, self.field._mul(self.c, other.c))
        o = self._other(other)
        if o is None:
            return NotImplemented
        s = o[0]
        return ExtElem(self.field, [x * s for x in self.c])

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero(f"inverse of zero in {self.field!r}")
        return self.field._inverse(self)

    def __truediv__(self, other):
        if not isinstance(other, ExtElem):
            o = self._other(other)
            if o is None:
                return NotImplemented
            other = ExtElem(self.field, o)
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.field == other.field and self.c == other.c
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.c == o

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"ExtElem({self.field.to_data(self)})"

    def __str__(self):
        terms = []
        for i, x in enumerate(self.c):
            if not x:
                continue
            s = str(x) if not isinstance(x, GFElem) else str(x.field.to_data(x))
            terms.append(s if i == 0 else f"({s})*θ" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"


class ExtensionField:
    """base[θ]/(modulus) with a monic irreducible modulus of degree d.

    The Galois generator σ is fixed by the base: Frobenius x ↦ x^|base| for a
    finite base, the other root of the quadratic for a characteristic-0 base
    with d = 2.  σ is stored as the matrix of images of the power basis.
    """

    def __init__(self, base, modulus: Sequence):
        modulus = tuple(base(c) for c in modulus)
        if not modulus[-1] == base.one:
            raise ValueError("modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.d = len(modulus) - 1
        self.char = base.char
        self.order = None if base.order is None else base.order**self.d
        self.zero = ExtElem(self, [base.zero] * self.d)
        self.one = self.embed(base.one)
        self.theta = ExtElem(self, [base.zero, base.one] + [base.zero] * (self.d - 2)) if self.d > 1 else ExtElem(self, [-modulus[0]])
        # θ^j for j = d .. 2d-2 reduced to the power basis
        d = self.d
        self._reduction = []
        cur = [-c for c in modulus[:d]]
        for _ in range(max(d - 1, 0)):
            self._reduction.append(cur)
            top = cur[-1]
            shifted = [base.zero] + cur[:-1]
            cur = [s - top * m for s, m in zip(shifted, modulus[:d])]
        self._sigma_images = self._compute_sigma_images()

    def embed(self, x) -> ExtElem:
        x = self.base(x)
        return ExtElem(self, [x] + [self.base.zero] * (self.d - 1))

    def __call__(self, x):
        if isinstance(x, ExtElem):
            if x.field != self:
                raise TypeError("element of a different extension field")
            return x
        if isinstance(x, (list, tuple)):
            if len(x) != self.d:
                raise ValueError(f"expected {self.d} coordinates")
            return ExtElem(self, [self.base(c) for c in x])
        return self.embed(x)

    def _mul(self, x, y):
        base, d = self.base, self.d
        zero = base.zero
        prod = [zero] * (2 * d - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] = prod[i + j] + xi * yj
        out = prod[:d]
        for j in range(d, 2 * d - 1):
            cj = prod[j]
            if cj:
                red = self._reduction[j - d]
                out = [o + cj * r for o, r in zip(out, red)]
        return out

    def _compute_sigma_images(self):
        base, d = self.base, self.d
        if d == 1:
            return [self.one.c]
        if base.order is not None:
            st = self.theta ** base.order
        elif d == 2:
            # other root of t^2 + b t + c is -b - θ
            b = self.modulus[1]
            st = ExtElem(self, [-b, -base.one])
        else:
            raise NotImplementedError("Galois action only for finite bases or quadratic extensions")
        images = [self.one.c]
        cur = self.one
        for _ in range(1, d):
            cur = cur * st
            images.append(cur.c)
        return images

    def sigma(self, z: ExtElem) -> ExtElem:
        """Apply the Galois generator (base-linear)."""
        out = [self.base.zero] * self.d
        for ci, img in zip(z.c, self._sigma_images):
            if ci:
                out = [o + ci * v for o, v in zip(out, img)]
        return ExtElem(self, out)

    def norm(self, z: ExtElem):
        """Product of all Galois conjugates, as a base element."""
        prod = z
        cur = z
        for _ in range(self.d - 1):
            cur = self.sigma(cur)
            prod = prod * cur
        return prod.c[0]

    def _inverse(self, z):
        # z^{-1} = (σz · σ²z ⋯) / N(z)
        rest = self.one
        cur = z
        for _ in range(self.d - 1):
            cur = self.sigma(cur)
            rest = rest * cur
        n = (z * rest).c[0]
        return rest * (self.base.one / n)

    def to_data(self, z: ExtElem):
        return [self.base.to_data(c) for c in z.c]

    def from_data(self, obj):
        if not isinstance(obj, (list, tuple)) or len(obj) != self.d:
            raise ParseError(f"extension element needs {self.d} coordinates, got {obj!r}")
        return ExtElem(self, [self.base.from_data(c) for c in obj])

    def sort_key(self, z):
        return tuple(self.base.sort_key(c) for c in z.c)

    def random(self, rng, bound=3):
        return ExtElem(self, [self.base.random(rng, bound) for _ in range(self.d)])

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and self.base == other.base
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("ext", self.base, self.modulus))

    def __repr__(self):
        return f"{self.base!r}[θ]/({_fmt_modulus(self.base, self.modulus)})"


def _fmt_modulus(base, mod):
    terms = []
    for i in range(len(mod) - 1, -1, -1):
        c = mod[i]
        if not c:
            continue
        cs = str(base.to_data(c))
        mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if i and c == base.one:
            terms.append(mon)
        else:
            terms.append(cs + ("*" + mon if mon else ""))
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# Towers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldTower:
    """A base field f and a degree-d Galois extension k with its Galois group."""

    kind: str
    params: tuple
    base: object
    ext: ExtensionField

    @property
    def degree(self) -> int:
        return self.ext.d

    @property
    def prime_divisors(self) -> list[int]:
        return prime_divisors(self.degree)

    def spec(self) -> dict:
        return {"kind": self.kind, **dict(self.params)}

    def embed(self, x) -> ExtElem:
        return self.ext.embed(x)

    def automorphisms(self) -> list[Callable[[ExtElem], ExtElem]]:
        """σ^0, ..., σ^(d-1) as callables."""
        sig = self.ext.sigma

        def power(i):
            def apply(z):
                for _ in range(i):
                    z = sig(z)
                return z

            return apply

        return [power(i) for i in range(self.degree)]

    def galois_conjugates(self, z: ExtElem) -> list[ExtElem]:
        return galois_conjugates(z, self)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and (self.kind, self.params) == (other.kind, other.params)

    def __hash__(self):
        return hash((self.kind, self.params))

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params)
        if self.kind == "finite":
            return f"FieldTower({self.kind}, {args})"
        return f"FieldTower({self.kind}, {args}, d={self.degree})"


@functools.lru_cache(maxsize=None)
def rational_quadratic(m: int) -> FieldTower:
    """QQ ⊂ QQ(√m); m must be a squarefree integer other than 0 and 1."""
    m = int(m)
    if m == 0 or not is_squarefree(m):
        raise NonSquarefree(f"m = {m} is not squarefree")
    if m == 1:
        raise NonSquarefree("m = 1 is a perfect square")
    ext = ExtensionField(QQ, [mpq(-m), mpq(0), mpq(1)])
    return FieldTower("rational-quadratic", (("m", m),), QQ, ext)


@functools.lru_cache(maxsize=None)
def finite_tower(p: int, a: int = 1, d: int = 2, modulus: tuple | None = None) -> FieldTower:
    """GF(p^a) ⊂ GF(p^(a·d)).  The default modulus is the least irreducible
    monic polynomial of degree d over the base (coefficients ordered by code)."""
    p, a, d = int(p), int(a), int(d)
    if d < 1:
        raise ValueError("degree d must be positive")
    base = GF(p, a)
    from .poly import Poly, is_irreducible

    if modulus is None:
        modulus = _least_irreducible(base, d)
    else:
        coeffs = [base.from_data(c) for c in modulus]
        cand = Poly(base, coeffs)
        if cand.deg != d or cand.lc != base.one:
            raise ReducibleGeneratorPolynomial("generator polynomial must be monic of degree d")
        if not is_irreducible(cand):
            raise ReducibleGeneratorPolynomial(f"{cand} is reducible over {base!r}")
        modulus = tuple(coeffs)
    ext = ExtensionField(base, modulus)
    return FieldTower("finite", (("p", p), ("a", a), ("d", d)), base, ext)


def _least_irreducible(base: FiniteField, d: int):
    from .poly import Poly, is_irreducible

    q = base.order
    for code in range(q**d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(base.element(c % q))
            c //= q
        cand = Poly(base, coeffs + [base.one])
        if is_irreducible(cand):
            return tuple(coeffs) + (base.one,)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def make_tower(spec) -> FieldTower:
    """Build a tower from a mapping such as ``{"kind": "rational-quadratic", "m": -1}``
    or ``{"kind": "finite", "p": 5, "a": 1, "d": 3}``."""
    if isinstance(spec, FieldTower):
        return spec
    if not isinstance(spec, Mapping):
        raise TypeError("tower spec must be a mapping")
    kind = spec.get("kind")
    if kind == "rational-quadratic":
        return rational_quadratic(int(spec["m"]))
    if kind == "finite":
        modulus = spec.get("modulus")
        if modulus is not None:
            modulus = tuple(tuple(c) if isinstance(c, list) else c for c in modulus)
        return finite_tower(int(spec["p"]), int(spec.get("a", 1)), int(spec["d"]), modulus)
    raise ValueError(f"unknown tower kind {kind!r}")


def galois_conjugates(z: ExtElem, tower: FieldTower) -> list[ExtElem]:
    """The Γ-orbit of z, starting with z itself, in σ-iteration order."""
    z = tower.ext(z)
    orbit = [z]
    cur = tower.ext.sigma(z)
    while cur != z:
        orbit.append(cur)
        cur = tower.ext.sigma(cur)
    return orbit


def to_base(z):
    """The base-field value of z if z lies in the base, else None."""
    if not isinstance(z, ExtElem):
        return z
    if any(z.c[1:]):
        return None
    return z.c[0]


def ext_arith(op: str, *operands):
    """Dispatch helper mirroring the arithmetic operators."""
    if op == "add":
        x, y = operands
        return x + y
    if op == "mul":
        x, y = operands
        return x * y
    if op == "neg":
        (x,) = operands
        return -x
    if op == "inv":
        (x,) = operands
        return x.inverse()
    raise ValueError(f"unknown op {op!r}")
