"""Sparse bivariate polynomials and dense univariate polynomials over a tower field."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .numbers import QI, FieldElement, GaussianRational, NumberField, common_field


class _InfiniteOrder:
    """Order of the zero polynomial.  Compares above every integer, supports no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE_ORDER")

    def __repr__(self):
        return "INFINITE_ORDER"


INFINITE_ORDER = _InfiniteOrder()


def _unify(items, field: NumberField | None = None) -> NumberField:
    f = field if field is not None else QI
    for it in items:
        if isinstance(it, FieldElement) and it.field != f:
            f = common_field(f, it.field)
    return f


# ---------------------------------------------------------------------------
# univariate


class UPoly:
    """Dense univariate polynomial, coefficients low to high, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Iterable = (), field: NumberField | None = None):
        coeffs = list(coeffs)
        f = _unify(coeffs, field)
        cs = [f(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = f
        self.coeffs = tuple(cs)

    @classmethod
    def _make(cls, field, coeffs):
        obj = cls.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        obj.field = field
        obj.coeffs = tuple(cs)
        return obj

    def over(self, field: NumberField) -> "UPoly":
        if field == self.field:
            return self
        return UPoly._make(field, [c.to_field(field) for c in self.coeffs])

    def _align(self, other: "UPoly"):
        if other.field == self.field:
            return self, other
        f = common_field(self.field, other.field)
        return self.over(f), other.over(f)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> FieldElement:
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __add__(self, other: "UPoly") -> "UPoly":
        a, b = self._align(other)
        n = max(len(a.coeffs), len(b.coeffs))
        z = a.field.zero()
        out = [
            (a.coeffs[k] if k < len(a.coeffs) else z) + (b.coeffs[k] if k < len(b.coeffs) else z)
            for k in range(n)
        ]
        return UPoly._make(a.field, out)

    def __neg__(self):
        return UPoly._make(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self.scale(other)
        a, b = self._align(other)
        if a.is_zero() or b.is_zero():
            return UPoly._make(a.field, [])
        out = [a.field.zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, c in enumerate(a.coeffs):
            if c.is_zero():
                continue
            for j, d in enumerate(b.coeffs):
                out[i + j] = out[i + j] + c * d
        return UPoly._make(a.field, out)

    def scale(self, c) -> "UPoly":
        cs = [x * c for x in self.coeffs]
        return UPoly(cs, self.field)

    def __call__(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UPoly"):
        a, b = self._align(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = a.field
        rem = list(a.coeffs)
        q = [f.zero()] * max(len(rem) - len(b.coeffs) + 1, 0)
        inv = b.lead().inverse()
        db = b.degree
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv
            shift = len(rem) - 1 - db
            q[shift] = c
            for k, bc in enumerate(b.coeffs):
                rem[shift + k] = rem[shift + k] - c * bc
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return UPoly._make(f, q), UPoly._make(f, rem)

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = self.lead().inverse()
        return UPoly._make(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "UPoly":
        return UPoly._make(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return INFINITE_ORDER

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = a._align(b)
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# ---------------------------------------------------------------------------
# bivariate


class BiPoly:
    """Sparse polynomial in two variables with coefficients in one tower field.

    ``terms`` maps exponent pairs ``(i, j)`` (meaning ``x**i * y**j``) to
    nonzero :class:`FieldElement` coefficients.
    """

    __slots__ = ("field", "terms")

    def __init__(self, terms: Mapping | None = None, field: NumberField | None = None):
        terms = dict(terms or {})
        f = _unify(terms.values(), field)
        clean = {}
        for e, c in terms.items():
            c = f(c)
            if not c.is_zero():
                clean[(int(e[0]), int(e[1]))] = c
        self.field = f
        self.terms = clean

    @classmethod
    def _make(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def zero(cls, field: NumberField = QI) -> "BiPoly":
        return cls._make(field, {})

    @classmethod
    def const(cls, c, field: NumberField | None = None) -> "BiPoly":
        return cls({(0, 0): c}, field)

    @classmethod
    def x(cls, field: NumberField = QI) -> "BiPoly":
        return cls._make(field, {(1, 0): field.one()})

    @classmethod
    def y(cls, field: NumberField = QI) -> "BiPoly":
        return cls._make(field, {(0, 1): field.one()})

    @classmethod
    def monomial(cls, i: int, j: int, c=1, field: NumberField | None = None) -> "BiPoly":
        return cls({(i, j): c}, field)

    @classmethod
    def from_upoly(cls, p: UPoly, var: str = "x") -> "BiPoly":
        if var == "x":
            return cls._make(p.field, {(k, 0): c for k, c in enumerate(p.coeffs) if not c.is_zero()})
        return cls._make(p.field, {(0, k): c for k, c in enumerate(p.coeffs) if not c.is_zero()})

    # coercion
    def over(self, field: NumberField) -> "BiPoly":
        if field is self.field or field == self.field:
            return self
        return BiPoly._make(field, {e: c.to_field(field) for e, c in self.terms.items()})

    def _align(self, other: "BiPoly"):
        if other.field is self.field or other.field == self.field:
            return self, other
        f = common_field(self.field, other.field)
        return self.over(f), other.over(f)

    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, FieldElement):
            f = common_field(self.field, other.field)
            return BiPoly._make(f, {(0, 0): other.to_field(f)} if other else {})
        c = self.field(other)
        return BiPoly._make(self.field, {(0, 0): c} if c else {})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, i: int, j: int) -> FieldElement:
        return self.terms.get((i, j), self.field.zero())

    def constant_term(self) -> FieldElement:
        return self.coefficient(0, 0)

    def order(self):
        """Lowest total degree of a monomial; INFINITE_ORDER for zero."""
        if not self.terms:
            return INFINITE_ORDER
        return min(i + j for i, j in self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def valuation_x(self):
        return min((i for i, _ in self.terms), default=INFINITE_ORDER)

    def valuation_y(self):
        return min((j for _, j in self.terms), default=INFINITE_ORDER)

    def homogeneous_part(self, k: int) -> "BiPoly":
        return BiPoly._make(self.field, {e: c for e, c in self.terms.items() if e[0] + e[1] == k})

    def support(self):
        return sorted(self.terms)

    # arithmetic
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, FieldElement)):
            other = self._lift(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    def __hash__(self):
        return hash(tuple(sorted((e, hash(c)) for e, c in self.terms.items())))

    def __add__(self, other):
        a, b = self._align(self._lift(other))
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return BiPoly._make(a.field, out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._make(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            other = self._lift(other)
        a, b = self._align(other)
        out: dict = {}
        for (i1, j1), c1 in a.terms.items():
            for (i2, j2), c2 in b.terms.items():
                e = (i1 + i2, j1 + j2)
                prod = c1 * c2
                if e in out:
                    out[e] = out[e] + prod
                else:
                    out[e] = prod
        return BiPoly._make(a.field, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly._make(self.field, {(0, 0): self.field.one()})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "BiPoly":
        return self * self._lift(c)

    def shift(self, a: int, b: int) -> "BiPoly":
        """Multiply by x**a * y**b."""
        return BiPoly._make(self.field, {(i + a, j + b): c for (i, j), c in self.terms.items()})

    def div_monomial(self, a: int, b: int) -> "BiPoly":
        """Exact division by x**a * y**b."""
        out = {}
        for (i, j), c in self.terms.items():
            if i < a or j < b:
                raise ArithmeticError(f"x^{a}*y^{b} does not divide the polynomial")
            out[(i - a, j - b)] = c
        return BiPoly._make(self.field, out)

    def derivative(self, var: str) -> "BiPoly":
        out = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i:
                out[(i - 1, j)] = c * i
            elif var == "y" and j:
                out[(i, j - 1)] = c * j
        return BiPoly._make(self.field, out)

    def swap(self) -> "BiPoly":
        return BiPoly._make(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    def ramify(self, d: int) -> "BiPoly":
        """p(x**d, y)."""
        return BiPoly._make(self.field, {(i * d, j): c for (i, j), c in self.terms.items()})

    def substitute(self, X: "BiPoly", Y: "BiPoly") -> "BiPoly":
        """p(X, Y) for polynomials X, Y."""
        f = common_field(common_field(self.field, X.field), Y.field)
        X, Y = X.over(f), Y.over(f)
        xp: dict[int, BiPoly] = {0: BiPoly.const(1, f)}
        yp: dict[int, BiPoly] = {0: BiPoly.const(1, f)}

        def pw(cache, base, n):
            if n not in cache:
                cache[n] = pw(cache, base, n - 1) * base
            return cache[n]

        acc = BiPoly.zero(f)
        # group by y-power to reduce multiplications
        by_j: dict[int, BiPoly] = {}
        for (i, j), c in self.terms.items():
            term = pw(xp, X, i).scale(c.to_field(f))
            by_j[j] = by_j[j] + term if j in by_j else term
        for j, part in by_j.items():
            acc = acc + part * pw(yp, Y, j)
        return acc

    def translate(self, cx, cy) -> "BiPoly":
        """p(x + cx, y + cy)."""
        f = _unify([c for c in (cx, cy) if isinstance(c, FieldElement)], self.field)
        X = BiPoly.x(f) + cx
        Y = BiPoly.y(f) + cy
        return self.over(f).substitute(X, Y)

    def __call__(self, x, y) -> FieldElement:
        acc = self.field.zero()
        for (i, j), c in self.terms.items():
            acc = acc + c * (x ** i) * (y ** j)
        return acc

    def at_x(self, c) -> UPoly:
        """Univariate polynomial in y obtained by setting x = c."""
        f = _unify([c] if isinstance(c, FieldElement) else [], self.field)
        if not (isinstance(c, FieldElement) or c):
            coeffs = [f.zero()] * (self.degree_y() + 1)
            for (i, j), v in self.terms.items():
                if i == 0:
                    coeffs[j] = v.to_field(f)
            return UPoly._make(f, coeffs)
        coeffs = [f.zero()] * (self.degree_y() + 1)
        c = f(c)
        for (i, j), v in self.terms.items():
            coeffs[j] = coeffs[j] + v * c ** i
        return UPoly._make(f, coeffs)

    def at_y(self, c) -> UPoly:
        """Univariate polynomial in x obtained by setting y = c."""
        return self.swap().at_x(c)

    def y_coefficients(self) -> dict[int, UPoly]:
        """Coefficients with respect to y, each a univariate polynomial in x."""
        groups: dict[int, dict[int, FieldElement]] = {}
        for (i, j), c in self.terms.items():
            groups.setdefault(j, {})[i] = c
        out = {}
        for j, g in groups.items():
            coeffs = [self.field.zero()] * (max(g) + 1)
            for i, c in g.items():
                coeffs[i] = c
            out[j] = UPoly._make(self.field, coeffs)
        return out

    def leading_term(self):
        """Term with the largest (y-degree, x-degree); used for normalization."""
        e = max(self.terms, key=lambda t: (t[1], t[0]))
        return e, self.terms[e]

    def normalized(self) -> "BiPoly":
        """Scalar multiple whose leading coefficient is 1."""
        if not self.terms:
            return self
        _, c = self.leading_term()
        inv = c.inverse()
        return BiPoly._make(self.field, {e: v * inv for e, v in self.terms.items()})

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def divexact(self, other: "BiPoly") -> "BiPoly":
        q, r = bipoly_divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def eval_series(self, X, Y):
        """Evaluate at truncated power series X(t), Y(t)."""
        from .series import TruncatedSeries

        f = common_field(common_field(self.field, X.field), Y.field)
        order = min(X.order, Y.order)
        acc = TruncatedSeries.zero(order, f)
        xp = [TruncatedSeries.one(order, f)]
        yp = [TruncatedSeries.one(order, f)]
        by_j: dict[int, object] = {}
        for (i, j), c in self.terms.items():
            while len(xp) <= i:
                xp.append(xp[-1] * X)
            term = xp[i].scale(c)
            by_j[j] = by_j[j] + term if j in by_j else term
        for j in sorted(by_j):
            while len(yp) <= j:
                yp.append(yp[-1] * Y)
            acc = acc + by_j[j] * yp[j]
        return acc

    def __repr__(self):
        return f"BiPoly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def bipoly_divmod(a: BiPoly, b: BiPoly):
    """Division with respect to the (y, x)-lexicographic order.

    The remainder is zero exactly when ``b`` divides ``a``.
    """
    a, b = a._align(b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    (lbi, lbj), lbc = b.leading_term()
    inv = lbc.inverse()
    q = BiPoly.zero(a.field)
    r = BiPoly.zero(a.field)
    p = a
    while p.terms:
        (pi, pj), pc = p.leading_term()
        if pi >= lbi and pj >= lbj:
            t = BiPoly._make(a.field, {(pi - lbi, pj - lbj): pc * inv})
            q = q + t
            p = p - t * b
        else:
            lead = BiPoly._make(a.field, {(pi, pj): pc})
            r = r + lead
            p = p - lead
    return q, r


def _content_y(p: BiPoly) -> UPoly:
    g = None
    for c in p.y_coefficients().values():
        g = c.monic() if g is None else upoly_gcd(g, c)
        if g.degree == 0:
            break
    return g if g is not None else UPoly._make(p.field, [])


def _primitive_y(p: BiPoly) -> BiPoly:
    if p.is_zero():
        return p
    c = _content_y(p)
    if c.degree <= 0:
        return p
    return p.divexact(BiPoly.from_upoly(c, "x"))


def _prem_y(a: BiPoly, b: BiPoly) -> BiPoly:
    db = b.degree_y()
    lb = BiPoly.from_upoly(b.y_coefficients()[db], "x")
    while not a.is_zero() and a.degree_y() >= db:
        da = a.degree_y()
        la = BiPoly.from_upoly(a.y_coefficients()[da], "x")
        a = lb * a - (la * b).shift(0, da - db)
    return a


def poly_gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    """Greatest common divisor, normalized with leading coefficient 1."""
    p, q = p._align(q)
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    cp, cq = _content_y(p), _content_y(q)
    cont = upoly_gcd(cp, cq)
    a, b = _primitive_y(p), _primitive_y(q)
    if a.degree_y() < b.degree_y():
        a, b = b, a
    while not b.is_zero():
        if b.degree_y() == 0:
            a = BiPoly.const(1, p.field)
            break
        r = _prem_y(a, b)
        a, b = b, _primitive_y(r)
    g = _primitive_y(a)
    return (g * BiPoly.from_upoly(cont, "x")).normalized()


# ---------------------------------------------------------------------------
# formatting in the input grammar


def _monomial_str(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def _coeff_str(c: FieldElement) -> str:
    g = c.as_gaussian()
    if g is None:
        return f"[{c}]"
    return str(g)


def format_poly(p: BiPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for (i, j) in sorted(p.terms, key=lambda e: (e[0] + e[1], -e[0])):
        c = p.terms[(i, j)]
        mono = _monomial_str(i, j)
        g = c.as_gaussian()
        negative = g is not None and not g.im and g.re < 0
        if negative:
            c = -c
        cs = _coeff_str(c)
        if mono and cs == "1":
            body = mono
        elif mono:
            body = f"{cs}*{mono}"
        else:
            body = cs
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
