"""Exact scalars.

The ground field is Q(i).  On top of it we allow a tower of at most two
quadratic extensions, each presented as K(r) with r**2 = delta and delta a
non-square of K.  Any monic quadratic can be brought to that shape by
completing the square, so this covers every quadratic extension.

Elements of a level-k field are stored "raw" as nested pairs: a level-0
element is a :class:`GaussianRational`, a level-k element is a tuple
``(u, v)`` of level-(k-1) elements standing for ``u + v*r_k``.  The public
wrapper is :class:`FieldElement`, which pairs a raw value with its field and
coerces automatically between compatible fields.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from ..errors import TowerDepthExceeded

MAX_TOWER_DEPTH = 2


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _fraction_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """A number ``re + im*i`` with rational parts, always in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, complex):
            raise TypeError("floating point values are not accepted")
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    def __add__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re + other, self.im)
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re - other, self.im)
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re / other, self.im / other)
        if type(other) is not GaussianRational:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_rational(self) -> bool:
        return not self.im

    def sqrt(self) -> "GaussianRational | None":
        """Exact square root in Q(i), or None.  Real part chosen >= 0."""
        a, b = self.re, self.im
        if not b:
            if a >= 0:
                r = _rational_sqrt(a)
                return None if r is None else GaussianRational(r)
            r = _rational_sqrt(-a)
            return None if r is None else GaussianRational(0, r)
        m = _rational_sqrt(a * a + b * b)
        if m is None:
            return None
        c = _rational_sqrt((a + m) / 2)
        if c is None or not c:
            return None
        return GaussianRational(c, b / (2 * c))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        a, b = self.re, self.im
        if not b:
            return _fraction_str(a)
        if b == 1:
            ipart = "i"
        elif b == -1:
            ipart = "-i"
        else:
            ipart = f"{_fraction_str(b)}*i"
        if not a:
            return ipart
        sign = "" if ipart.startswith("-") else "+"
        return f"({_fraction_str(a)}{sign}{ipart})"

    def sort_key(self):
        return (self.re, self.im)


G_ZERO = GaussianRational(0)
G_ONE = GaussianRational(1)
I = GaussianRational(0, 1)


# -- raw arithmetic on nested pairs ------------------------------------------

def _zero(k):
    z = G_ZERO
    for _ in range(k):
        z = (z, z)
    return z


def _one(k):
    o = G_ONE
    for lvl in range(k):
        o = (o, _zero(lvl))
    return o


def _pad(a, frm, to):
    while frm < to:
        a = (a, _zero(frm))
        frm += 1
    return a


def _is_zero(a, k):
    if k == 0:
        return not a
    return _is_zero(a[0], k - 1) and _is_zero(a[1], k - 1)


def _add(a, b, k):
    if k == 0:
        return a + b
    return (_add(a[0], b[0], k - 1), _add(a[1], b[1], k - 1))


def _sub(a, b, k):
    if k == 0:
        return a - b
    return (_sub(a[0], b[0], k - 1), _sub(a[1], b[1], k - 1))


def _neg(a, k):
    if k == 0:
        return -a
    return (_neg(a[0], k - 1), _neg(a[1], k - 1))


def _mul(a, b, rads, k):
    if k == 0:
        return a * b
    u1, v1 = a
    u2, v2 = b
    j = k - 1
    if _is_zero(v1, j) and _is_zero(v2, j):
        return (_mul(u1, u2, rads, j), v1)
    uu = _mul(u1, u2, rads, j)
    vv = _mul(v1, v2, rads, j)
    return (
        _add(uu, _mul(vv, rads[j], rads, j), j),
        _add(_mul(u1, v2, rads, j), _mul(v1, u2, rads, j), j),
    )


def _scale(a, g, k):
    """Multiply a raw element by a Gaussian rational."""
    if k == 0:
        return a * g
    return (_scale(a[0], g, k - 1), _scale(a[1], g, k - 1))


def _inv(a, rads, k):
    if k == 0:
        return a.inverse()
    u, v = a
    j = k - 1
    n = _sub(_mul(u, u, rads, j), _mul(_mul(v, v, rads, j), rads[j], rads, j), j)
    ninv = _inv(n, rads, j)
    return (_mul(u, ninv, rads, j), _neg(_mul(v, ninv, rads, j), j))


def _sqrt(a, rads, k):
    if k == 0:
        return a.sqrt()
    u, v = a
    j = k - 1
    delta = rads[j]
    if _is_zero(v, j):
        p = _sqrt(u, rads, j)
        if p is not None:
            return (p, _zero(j))
        q = _sqrt(_mul(u, _inv(delta, rads, j), rads, j), rads, j)
        if q is not None:
            return (_zero(j), q)
        return None
    norm = _sub(_mul(u, u, rads, j), _mul(_mul(v, v, rads, j), delta, rads, j), j)
    n = _sqrt(norm, rads, j)
    if n is None:
        return None
    half = GaussianRational(Fraction(1, 2))
    for cand in (_add(u, n, j), _sub(u, n, j)):
        p = _sqrt(_scale(cand, half, j), rads, j)
        if p is not None and not _is_zero(p, j):
            q = _mul(v, _inv(_scale(p, GaussianRational(2), j), rads, j), rads, j)
            return (p, q)
    return None


def _flatten(a, k):
    if k == 0:
        return [a]
    return _flatten(a[0], k - 1) + _flatten(a[1], k - 1)


def _to_complex(a, roots, k):
    if k == 0:
        return complex(a)
    return _to_complex(a[0], roots, k - 1) + _to_complex(a[1], roots, k - 1) * roots[k - 1]


def _raw_key(a, k):
    return tuple(g.sort_key() for g in _flatten(a, k))


class NumberField:
    """Q(i) extended by at most two square roots.

    ``radicands[k]`` is the raw level-k element whose square root generates
    level k+1.
    """

    __slots__ = ("radicands", "level", "_hash")

    def __init__(self, radicands=()):
        radicands = tuple(radicands)
        if len(radicands) > MAX_TOWER_DEPTH:
            raise TowerDepthExceeded(
                f"tower of depth {len(radicands)} exceeds the supported depth {MAX_TOWER_DEPTH}"
            )
        self.radicands = radicands
        self.level = len(radicands)
        self._hash = hash(tuple(_raw_key(r, k) for k, r in enumerate(radicands)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.level == other.level and self.radicands == other.radicands

    def __hash__(self):
        return self._hash

    @property
    def degree(self) -> int:
        """Degree over Q(i)."""
        return 2 ** self.level

    def __repr__(self):
        if not self.level:
            return "NumberField(Q(i))"
        parts = []
        for k, r in enumerate(self.radicands):
            parts.append(f"sqrt({FieldElement(NumberField(self.radicands[:k]), r)})")
        return "NumberField(Q(i)[" + ", ".join(parts) + "])"

    def prefix(self, k: int) -> "NumberField":
        return self if k == self.level else NumberField(self.radicands[:k])

    def is_subfield_of(self, other: "NumberField") -> bool:
        return other.radicands[: self.level] == self.radicands

    # element construction
    def zero(self) -> "FieldElement":
        return FieldElement(self, _zero(self.level))

    def one(self) -> "FieldElement":
        return FieldElement(self, _one(self.level))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value.to_field(self)
        return FieldElement(self, _pad(GaussianRational.coerce(value), 0, self.level))

    def gen(self, k: int) -> "FieldElement":
        """Generator of level k (1-based), i.e. sqrt(radicands[k-1])."""
        raw = (_zero(k - 1), _one(k - 1))
        return FieldElement(self, _pad(raw, k, self.level))

    def sqrt(self, elem: "FieldElement") -> "FieldElement | None":
        raw = elem.to_field(self).raw
        r = _sqrt(raw, self.radicands, self.level)
        return None if r is None else FieldElement(self, r)

    def extend(self, radicand: "FieldElement") -> "NumberField":
        """Adjoin sqrt(radicand); the caller guarantees it is not a square."""
        raw = radicand.to_field(self).raw
        if self.level >= MAX_TOWER_DEPTH:
            raise TowerDepthExceeded(
                f"adjoining sqrt({radicand}) would exceed degree {2 ** MAX_TOWER_DEPTH} over Q(i)"
            )
        return NumberField(self.radicands + (raw,))

    def complex_generators(self) -> tuple[complex, ...]:
        """Principal-branch complex images of the generators (presentation only)."""
        roots: list[complex] = []
        for k, r in enumerate(self.radicands):
            roots.append(cmath.sqrt(_to_complex(r, roots, k)))
        return tuple(roots)


QI = NumberField()


@lru_cache(maxsize=256)
def _generator_images(src: NumberField, dst: NumberField):
    """Raw images in ``dst`` of the generators of ``src``; None if no embedding."""
    images = []
    for k in range(src.level):
        if dst.radicands[: k + 1] == src.radicands[: k + 1]:
            images.append(_pad((_zero(k), _one(k)), k + 1, dst.level))
            continue
        delta = _embed_raw(src.radicands[k], src, k, dst, images)
        r = _sqrt(delta, dst.radicands, dst.level)
        if r is None:
            return None
        images.append(r)
    return tuple(images)


def _embed_raw(raw, src: NumberField, k: int, dst: NumberField, images):
    if k == 0:
        return _pad(raw, 0, dst.level)
    u = _embed_raw(raw[0], src, k - 1, dst, images)
    v = _embed_raw(raw[1], src, k - 1, dst, images)
    return _add(u, _mul(v, images[k - 1], dst.radicands, dst.level), dst.level)


def common_field(f: NumberField, g: NumberField) -> NumberField:
    """Smallest tower (built from ``f`` upward) into which both embed."""
    if f == g or g.is_subfield_of(f):
        return f
    if f.is_subfield_of(g):
        return g
    h = f
    for k in range(g.level):
        sub = g.prefix(k + 1)
        if _generator_images(sub, h) is not None:
            continue
        delta = FieldElement(g.prefix(k), g.radicands[k]).to_field(h)
        h = h.extend(delta)
    return h


_SCALARS = (int, Fraction, GaussianRational)


class FieldElement:
    """An element of a :class:`NumberField`; immutable."""

    __slots__ = ("field", "raw")

    def __init__(self, field: NumberField, raw):
        self.field = field
        self.raw = raw

    # coercion
    def to_field(self, target: NumberField) -> "FieldElement":
        src = self.field
        if src is target or src == target:
            return self if src is target else FieldElement(target, self.raw)
        if src.is_subfield_of(target):
            return FieldElement(target, _pad(self.raw, src.level, target.level))
        images = _generator_images(src, target)
        if images is None:
            # maybe the element itself lives in a common prefix
            low = self.descend()
            if low.field is not src:
                return low.to_field(target)
            raise ValueError(f"{self} does not embed into {target}")
        return FieldElement(target, _embed_raw(self.raw, src, src.level, target, images))

    def descend(self) -> "FieldElement":
        """Same element in the smallest prefix field containing it."""
        f, raw = self.field, self.raw
        k = f.level
        while k and _is_zero(raw[1], k - 1):
            raw = raw[0]
            k -= 1
        if k == f.level:
            return self
        return FieldElement(f.prefix(k), raw)

    def _pair(self, other):
        if type(other) is FieldElement:
            f = self.field
            if other.field is f or other.field == f:
                return f, self.raw, other.raw
            h = common_field(f, other.field)
            return h, self.to_field(h).raw, other.to_field(h).raw
        g = GaussianRational.coerce(other)
        f = self.field
        return f, self.raw, _pad(g, 0, f.level)

    def __add__(self, other):
        if not isinstance(other, (FieldElement, *_SCALARS)):
            return NotImplemented
        f, a, b = self._pair(other)
        return FieldElement(f, _add(a, b, f.level))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (FieldElement, *_SCALARS)):
            return NotImplemented
        f, a, b = self._pair(other)
        return FieldElement(f, _sub(a, b, f.level))

    def __rsub__(self, other):
        if not isinstance(other, (FieldElement, *_SCALARS)):
            return NotImplemented
        f, a, b = self._pair(other)
        return FieldElement(f, _sub(b, a, f.level))

    def __neg__(self):
        return FieldElement(self.field, _neg(self.raw, self.field.level))

    def __mul__(self, other):
        if not isinstance(other, (FieldElement, *_SCALARS)):
            return NotImplemented
        f, a, b = self._pair(other)
        return FieldElement(f, _mul(a, b, f.radicands, f.level))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        return FieldElement(f, _inv(self.raw, f.radicands, f.level))

    def __truediv__(self, other):
        if not isinstance(other, (FieldElement, *_SCALARS)):
            return NotImplemented
        f, a, b = self._pair(other)
        if _is_zero(b, f.level):
            raise ZeroDivisionError("division by zero")
        return FieldElement(f, _mul(a, _inv(b, f.radicands, f.level), f.radicands, f.level))

    def __rtruediv__(self, other):
        if not isinstance(other, (FieldElement, *_SCALARS)):
            return NotImplemented
        f, a, b = self._pair(other)
        return FieldElement(f, _mul(b, _inv(a, f.radicands, f.level), f.radicands, f.level))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        f = self.field
        result = _one(f.level)
        base = self.raw
        while n:
            if n & 1:
                result = _mul(result, base, f.radicands, f.level)
            base = _mul(base, base, f.radicands, f.level)
            n >>= 1
        return FieldElement(f, result)

    def is_zero(self) -> bool:
        return _is_zero(self.raw, self.field.level)

    def __bool__(self):
        return not self.is_zero()

    def is_one(self) -> bool:
        return self == 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, FieldElement)):
            try:
                f, a, b = self._pair(other)
            except (TowerDepthExceeded, ValueError):
                return False
            return _is_zero(_sub(a, b, f.level), f.level)
        return NotImplemented

    def __hash__(self):
        low = self.descend()
        if low.field.level == 0:
            return hash(low.raw)
        return hash((low.field, _raw_key(low.raw, low.field.level)))

    # inspection
    def coordinates(self) -> list[GaussianRational]:
        """Coordinates over Q(i) in the basis 1, r1, r2, r1*r2."""
        return _flatten(self.raw, self.field.level)

    def as_gaussian(self) -> GaussianRational | None:
        low = self.descend()
        return low.raw if low.field.level == 0 else None

    def as_rational(self) -> Fraction | None:
        g = self.as_gaussian()
        if g is None or g.im:
            return None
        return g.re

    def sqrt(self) -> "FieldElement | None":
        return self.field.sqrt(self)

    def sort_key(self):
        low = self.descend()
        return (low.field.level, _raw_key(low.raw, low.field.level))

    def __complex__(self):
        f = self.field
        return _to_complex(self.raw, f.complex_generators(), f.level)

    def minimal_polynomial(self) -> list[GaussianRational]:
        """Monic minimal polynomial over Q(i), coefficients low to high."""
        low = self.descend()
        f = low.field
        if f.level == 0:
            return [-low.raw, G_ONE]
        vectors = []
        power = f.one()
        for n in range(f.degree + 1):
            vectors.append(power.coordinates())
            rel = _linear_relation(vectors)
            if rel is not None:
                lead = rel[-1]
                return [c / lead for c in rel]
            power = power * low
        raise AssertionError("no linear relation found among powers")

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        f = self.field
        low = self.descend()
        if low.field.level == 0:
            return str(low.raw)
        coords = low.coordinates()
        names = ["", "r1", "r2", "r1*r2"]
        parts = []
        for c, name in zip(coords, names):
            if not c:
                continue
            if not name:
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts) if parts else "0"


def _linear_relation(vectors: list[list[GaussianRational]]):
    """Nontrivial relation sum c_k v_k = 0 with c_last = 1, or None if independent."""
    n = len(vectors)
    dim = len(vectors[0])
    # Solve sum_{k<n-1} c_k v_k = -v_{n-1} by Gaussian elimination.
    cols = n - 1
    rows = [[vectors[k][r] for k in range(cols)] + [-vectors[-1][r]] for r in range(dim)]
    pivots = []
    row = 0
    for col in range(cols):
        piv = next((r for r in range(row, dim) if rows[r][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = rows[row][col].inverse()
        rows[row] = [v * inv for v in rows[row]]
        for r in range(dim):
            if r != row and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[row])]
        pivots.append(col)
        row += 1
    for r in range(row, dim):
        if rows[r][cols]:
            return None
    sol = [G_ZERO] * cols
    for r, col in enumerate(pivots):
        sol[col] = rows[r][cols]
    return sol + [G_ONE]


def adjoin_root(field: NumberField, p: FieldElement | int, q: FieldElement | int):
    """Adjoin a root of ``t**2 + p*t + q``.

    Returns ``(extended_field, root)``.  When the quadratic already splits,
    the field is returned unchanged together with one of its roots.
    """
    p = field(p) if not isinstance(p, FieldElement) else p
    q = field(q) if not isinstance(q, FieldElement) else q
    h = common_field(common_field(field, p.field), q.field)
    p, q = p.to_field(h), q.to_field(h)
    half_p = p * Fraction(1, 2)
    disc = half_p * half_p - q
    r = h.sqrt(disc)
    if r is not None:
        return h, r - half_p
    ext = h.extend(disc)
    return ext, ext.gen(ext.level) - half_p.to_field(ext)
