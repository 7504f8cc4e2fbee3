"""Exact values and certified signs of sums ``sum c_k * a**s_k`` at a rational point.

Write the point as ``a = b**k`` with ``b`` not a perfect power.  Then
``a**s = b**n * b**u`` with ``n = floor(k*s)`` and ``0 <= u < 1``, and the
numbers ``b**u`` for distinct ``u`` are linearly independent over the
rationals.  Collecting coefficients per ``u`` gives a canonical form: the sum
is zero exactly when every collected coefficient vanishes.  Nonzero sums get
their sign from interval enclosures built with integer roots, refined until
zero is excluded or the precision cap is reached.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache

from .errors import SignUndecided

__all__ = [
    "DEFAULT_PRECISION_BITS",
    "precision_cap",
    "iroot",
    "perfect_power_base",
    "PointValue",
    "point_value",
    "power_interval",
]

DEFAULT_PRECISION_BITS = 4096


def precision_cap(bits: int | None = None) -> int:
    if bits is not None:
        return int(bits)
    env = os.environ.get("LEXLAT_PRECISION_BITS")
    return int(env) if env else DEFAULT_PRECISION_BITS


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _exact_root(n: int, k: int) -> int | None:
    r = iroot(n, k)
    return r if r**k == n else None


@lru_cache(maxsize=4096)
def perfect_power_base(a: Fraction) -> tuple[Fraction, int]:
    """Return ``(b, k)`` with ``a == b**k`` and ``k`` maximal; ``a == 1`` gives ``(1, 0)``."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("point must be positive")
    if a == 1:
        return Fraction(1), 0
    num, den = a.numerator, a.denominator
    top = max(num.bit_length(), den.bit_length())
    for k in range(top, 1, -1):
        rn = _exact_root(num, k)
        if rn is None:
            continue
        rd = _exact_root(den, k)
        if rd is not None:
            return Fraction(rn, rd), k
    return a, 1


def power_interval(b: Fraction, u: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational bounds lo <= b**u <= hi with hi - lo <= 2**-bits (for b**u <= 1 scale)."""
    if u == 0 or b == 1:
        return Fraction(1), Fraction(1)
    p, q = u.numerator, u.denominator
    num, den = b.numerator**p, b.denominator**p
    if q == 1:
        v = Fraction(num, den)
        return v, v
    scaled = (num << (bits * q)) // den
    r = iroot(scaled, q)
    scale = 1 << bits
    return Fraction(r, scale), Fraction(r + 1, scale)


class PointValue:
    """Canonical exact value of ``sum c * a**s`` at a fixed rational point ``a``."""

    __slots__ = ("point", "base", "parts")

    def __init__(self, point: Fraction, base: Fraction, parts: dict):
        self.point = point
        self.base = base
        self.parts = {u: c for u, c in parts.items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointValue):
            return NotImplemented
        return self.point == other.point and self.parts == other.parts

    def __hash__(self) -> int:
        return hash((self.point, frozenset(self.parts.items())))

    def __sub__(self, other: PointValue) -> PointValue:
        if self.point != other.point:
            raise ValueError("values at different points")
        parts = dict(self.parts)
        for u, c in other.parts.items():
            parts[u] = parts.get(u, 0) - c
        return PointValue(self.point, self.base, parts)

    def is_zero(self) -> bool:
        return not self.parts

    @property
    def rational(self) -> Fraction | None:
        if not self.parts:
            return Fraction(0)
        if set(self.parts) == {Fraction(0)}:
            return self.parts[Fraction(0)]
        return None

    def interval(self, bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for u, c in self.parts.items():
            plo, phi = power_interval(self.base, u, bits)
            if c > 0:
                lo += c * plo
                hi += c * phi
            else:
                lo += c * phi
                hi += c * plo
        return lo, hi

    def enclosure(self, max_width: Fraction, cap: int | None = None) -> tuple[Fraction, Fraction]:
        """An enclosure narrower than ``max_width``, refining up to the precision cap."""
        cap = precision_cap(cap)
        bits = 64
        while True:
            lo, hi = self.interval(bits)
            if hi - lo < max_width:
                return lo, hi
            if bits >= cap:
                raise SignUndecided(f"cannot reach width {max_width} within {cap} bits")
            bits = min(2 * bits, cap)

    def sign(self, cap: int | None = None) -> int:
        if not self.parts:
            return 0
        r = self.rational
        if r is not None:
            return (r > 0) - (r < 0)
        cap = precision_cap(cap)
        bits = 64
        while True:
            lo, hi = self.interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if bits >= cap:
                raise SignUndecided(
                    f"value at t={self.point} not separated from 0 within {cap} bits"
                )
            bits = min(2 * bits, cap)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{self.base}^{u}" for u, c in sorted(self.parts.items()))
        return f"PointValue({body or 0} at t={self.point})"


def point_value(terms, point) -> PointValue:
    """Exact canonical value of ``sum(c * point**s for s, c in terms)``."""
    point = Fraction(point)
    b, k = perfect_power_base(point)
    parts: dict = {}
    for s, c in terms:
        s = Fraction(s)
        if k == 0 or s == 0:
            u, factor = Fraction(0), Fraction(1)
        else:
            ks = k * s
            n = math.floor(ks)
            u, factor = ks - n, b**n
        parts[u] = parts.get(u, 0) + c * factor
    return PointValue(point, b, parts)
