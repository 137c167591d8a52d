"""Truncated power series in one variable.

A series is known modulo ``t**order``.  Every binary operation returns a
result whose order is the minimum of its operands' orders, so a coefficient
is never reported beyond what the inputs determine.
"""

from __future__ import annotations

from fractions import Fraction

from .numbers import QI, FieldElement, NumberField, common_field


class TruncatedSeries:
    __slots__ = ("field", "coeffs", "order", "var")

    def __init__(self, coeffs, order: int, field: NumberField | None = None, var: str = "t"):
        coeffs = list(coeffs)[:order]
        f = field if field is not None else QI
        for c in coeffs:
            if isinstance(c, FieldElement) and c.field != f:
                f = common_field(f, c.field)
        zero = f.zero()
        cs = [f(c) for c in coeffs] + [zero] * (order - len(coeffs))
        self.field = f
        self.coeffs = tuple(cs)
        self.order = order
        self.var = var

    @classmethod
    def _make(cls, field, coeffs, order, var="t"):
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        obj.order = order
        obj.var = var
        return obj

    @classmethod
    def zero(cls, order: int, field: NumberField = QI) -> "TruncatedSeries":
        return cls._make(field, [field.zero()] * order, order)

    @classmethod
    def one(cls, order: int, field: NumberField = QI) -> "TruncatedSeries":
        cs = [field.zero()] * order
        if order:
            cs[0] = field.one()
        return cls._make(field, cs, order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1, field: NumberField = QI) -> "TruncatedSeries":
        cs = [field.zero()] * order
        if k < order:
            cs[k] = field(c)
        return cls._make(field, cs, order)

    def over(self, field: NumberField) -> "TruncatedSeries":
        if field == self.field:
            return self
        return TruncatedSeries._make(field, [c.to_field(field) for c in self.coeffs], self.order, self.var)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known mod t^{self.order} to t^{order}")
        return TruncatedSeries._make(self.field, self.coeffs[:order], order, self.var)

    def _align(self, other: "TruncatedSeries"):
        if other.field == self.field:
            f = self.field
            a, b = self, other
        else:
            f = common_field(self.field, other.field)
            a, b = self.over(f), other.over(f)
        n = min(a.order, b.order)
        return f, a.coeffs[:n], b.coeffs[:n], n

    def __getitem__(self, k: int) -> FieldElement:
        if k >= self.order:
            raise IndexError(f"coefficient {k} unknown (series known mod t^{self.order})")
        return self.coeffs[k]

    def valuation(self) -> int | None:
        """Index of the first nonzero known coefficient, None if all known ones vanish."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.monomial(0, self.order, other, self.field)
        f, a, b, n = self._align(other)
        return TruncatedSeries._make(f, [x + y for x, y in zip(a, b)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._make(self.field, [-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        cs = [x * c for x in self.coeffs]
        f = cs[0].field if cs else self.field
        return TruncatedSeries._make(f, cs, self.order, self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        f, a, b, n = self._align(other)
        out = [f.zero()] * n
        for i, c in enumerate(a):
            if c.is_zero():
                continue
            for j in range(n - i):
                d = b[j]
                if not d.is_zero():
                    out[i + j] = out[i + j] + c * d
        return TruncatedSeries._make(f, out, n, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries.one(self.order, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        n = self.order
        out = [inv0]
        for k in range(1, n):
            acc = self.field.zero()
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc * inv0)
        return TruncatedSeries._make(self.field, out, n, self.var)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(self.field(1) / other)
        return self * other.inverse()

    def derivative(self) -> "TruncatedSeries":
        cs = [c * k for k, c in enumerate(self.coeffs)][1:]
        return TruncatedSeries._make(self.field, cs, max(self.order - 1, 0), self.var)

    def integral(self) -> "TruncatedSeries":
        """Antiderivative with zero constant term (known one order further)."""
        cs = [self.field.zero()] + [c * Fraction(1, k + 1) for k, c in enumerate(self.coeffs)]
        return TruncatedSeries._make(self.field, cs, self.order + 1, self.var)

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by t**k; the first k coefficients must vanish."""
        if any(not c.is_zero() for c in self.coeffs[:k]):
            raise ArithmeticError(f"series is not divisible by t^{k}")
        return TruncatedSeries._make(self.field, self.coeffs[k:], self.order - k, self.var)

    def shift_up(self, k: int) -> "TruncatedSeries":
        cs = [self.field.zero()] * k + list(self.coeffs)
        return TruncatedSeries._make(self.field, cs, self.order + k, self.var)

    def power_rational(self, alpha: Fraction) -> "TruncatedSeries":
        """``self ** alpha`` for a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("rational powers need constant term 1")
        a = self.coeffs
        n = self.order
        g = [self.field.one()]
        for m in range(1, n):
            acc = self.field.zero()
            for k in range(1, m + 1):
                if a[k].is_zero():
                    continue
                acc = acc + a[k] * g[m - k] * ((alpha + 1) * k - m)
            g.append(acc * Fraction(1, m))
        return TruncatedSeries._make(self.field, g, n, self.var)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(t))`` for ``inner`` without constant term."""
        if inner.order and not inner.coeffs[0].is_zero():
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        f = common_field(self.field, inner.field)
        acc = TruncatedSeries.zero(n, f)
        for c in reversed(self.coeffs[:n]):
            acc = acc * inner.truncate(n) + TruncatedSeries.monomial(0, n, c, f)
        return acc

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse of a series ``c1*t + ...`` with c1 != 0 (Lagrange inversion)."""
        if self.coeffs[0] or self.order < 2 or self.coeffs[1].is_zero():
            raise ValueError("reversion needs a series of valuation exactly 1")
        n = self.order
        w = self.shift_down(1).inverse()  # t / self(t), known mod t^(n-1)
        out = [self.field.zero()]
        power = TruncatedSeries.one(w.order, self.field)
        for k in range(1, n):
            power = power * w
            out.append(power.coeffs[k - 1] * Fraction(1, k))
        return TruncatedSeries._make(self.field, out, n, self.var)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        _, a, b, _ = self._align(other)
        return all(x == y for x, y in zip(a, b))

    def __repr__(self):
        terms = [f"{c}*{self.var}^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        body = " + ".join(terms) if terms else "0"
        return f"TruncatedSeries({body} + O({self.var}^{self.order}))"
