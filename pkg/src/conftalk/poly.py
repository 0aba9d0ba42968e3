"""Exact polynomials in the link parameter delta.

Worths, allocations and biases are all polynomials in delta with rational
coefficients.  They are carried symbolically and only evaluated when a
number is needed (the partition threshold rule).
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction, Decimal, str]

__all__ = [
    "DeltaPoly",
    "ZERO",
    "DELTA",
    "as_delta",
    "poly_eval",
    "poly_arith",
    "sign_change",
    "NO_SIGN_CHANGE",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational, Decimal, str)):
        return Fraction(x)
    if isinstance(x, float):
        # exact binary value of the float
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def as_delta(d: Number) -> Fraction:
    """Parse a link parameter and check ``0 < d < 1``.

    Accepts ints, fractions, decimals, floats and strings such as ``"1/5"``
    or ``"0.9949"``.  Decimal inputs are converted exactly, so a
    high-precision decimal behaves as the rational it denotes.
    """
    d = _frac(d)
    if not 0 < d < 1:
        raise ValueError(f"delta must lie in (0, 1), got {d}")
    return d


class DeltaPoly:
    """Polynomial in delta with exact rational coefficients.

    Immutable.  Zero coefficients are never stored, so two polynomials are
    equal exactly when their coefficient maps are equal.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | Iterable[Number] = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        c = {}
        for power, value in items:
            power = int(power)
            if power < 0:
                raise ValueError(f"negative power {power}")
            value = _frac(value)
            if value:
                c[power] = c.get(power, 0) + value
        self._c = {p: v for p, v in sorted(c.items()) if v}
        self._hash = None

    @classmethod
    def monomial(cls, power: int, coeff: Number = 1) -> "DeltaPoly":
        return cls({power: coeff})

    @classmethod
    def _raw(cls, c: dict) -> "DeltaPoly":
        p = cls.__new__(cls)
        p._c = dict(sorted((k, v) for k, v in c.items() if v))
        p._hash = None
        return p

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    @property
    def degree(self) -> int:
        """Highest power present; -1 for the zero polynomial."""
        return max(self._c, default=-1)

    def coeff(self, power: int) -> Fraction:
        return self._c.get(power, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, DeltaPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            # constants hash like the number they equal
            if self.degree <= 0:
                self._hash = hash(self.coeff(0))
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other) -> "DeltaPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for p, v in other._c.items():
            c[p] = c.get(p, 0) + v
        return DeltaPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "DeltaPoly":
        return DeltaPoly._raw({p: -v for p, v in self._c.items()})

    def __sub__(self, other) -> "DeltaPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "DeltaPoly":
        return (-self) + other

    def __mul__(self, other) -> "DeltaPoly":
        if isinstance(other, DeltaPoly):
            c: dict[int, Fraction] = {}
            for p, v in self._c.items():
                for q, w in other._c.items():
                    c[p + q] = c.get(p + q, 0) + v * w
            return DeltaPoly._raw(c)
        if isinstance(other, (int, Fraction)):
            return DeltaPoly._raw({p: v * other for p, v in self._c.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "DeltaPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __call__(self, delta: Number) -> Fraction:
        return poly_eval(self, delta)

    def evaluate(self, delta: Number) -> Fraction:
        """Evaluate at any rational point, without the (0, 1) check."""
        x = _frac(delta)
        acc = Fraction(0)
        for p in range(self.degree, -1, -1):
            acc = acc * x + self._c.get(p, 0)
        return acc

    def derivative(self) -> "DeltaPoly":
        return DeltaPoly._raw({p - 1: v * p for p, v in self._c.items() if p})

    def __repr__(self) -> str:
        return f"DeltaPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for p, v in self._c.items():
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if p == 0:
                body = str(a)
            else:
                mono = "δ" if p == 1 else f"δ^{p}"
                body = mono if a == 1 else f"{a}·{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self, delta: Number | None = None) -> dict:
        """Serialized form ``{"coeffs": {"1": "2/3"}}``, plus the value at ``delta``."""
        out: dict = {"coeffs": {str(p): _ratstr(v) for p, v in self._c.items()}}
        if delta is not None:
            value = poly_eval(self, delta)
            out["delta"] = _ratstr(as_delta(delta))
            out["value"] = _ratstr(value)
            out["decimal"] = decimal_str(value)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "DeltaPoly":
        return cls({int(p): Fraction(v) for p, v in data["coeffs"].items()})


def _coerce(x):
    if isinstance(x, DeltaPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return DeltaPoly({0: x})
    return NotImplemented


def _ratstr(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, digits: int = 12) -> str:
    """Render a rational to ``digits`` significant digits."""
    x = Fraction(x)
    if x == 0:
        return "0"
    d = Decimal(x.numerator) / Decimal(x.denominator)
    return f"{d:.{digits}g}"


ZERO = DeltaPoly()
DELTA = DeltaPoly.monomial(1)


def poly_eval(p: DeltaPoly, delta: Number) -> Fraction:
    """Exact value of ``p`` at ``delta``; ``delta`` must lie in (0, 1)."""
    return p.evaluate(as_delta(delta))


def poly_arith(a: DeltaPoly, b, op: str) -> DeltaPoly:
    """``op`` is ``"add"``, ``"subtract"`` or ``"scale"`` (``b`` a rational)."""
    if op == "add":
        return a + b
    if op == "subtract":
        return a - b
    if op == "scale":
        return a * _frac(b)
    raise ValueError(f"unknown operation {op!r}")


class _NoSignChange:
    def __repr__(self) -> str:
        return "NO_SIGN_CHANGE"

    def __bool__(self) -> bool:
        return False


NO_SIGN_CHANGE = _NoSignChange()


def sign_change(p: DeltaPoly, lo: Number, hi: Number, tol: Number = Fraction(1, 10**9)):
    """Bisect for a root of ``p`` in ``[lo, hi]``.

    Returns a rational within ``tol`` of a root when ``p(lo)`` and ``p(hi)``
    have strictly opposite signs (or an endpoint is an exact root), and
    ``NO_SIGN_CHANGE`` otherwise.  Arithmetic is exact throughout.
    """
    lo, hi, tol = _frac(lo), _frac(hi), _frac(tol)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    flo, fhi = p.evaluate(lo), p.evaluate(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        return NO_SIGN_CHANGE
    while hi - lo > 2 * tol:
        mid = (lo + hi) / 2
        fmid = p.evaluate(mid)
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return (lo + hi) / 2
