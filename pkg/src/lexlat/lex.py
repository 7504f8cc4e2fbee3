"""Finitely supported elements of Lex(X) with exact rational coefficients.

The positive cone consists of the elements whose coefficients are positive
at every minimal point of the support.  Everything here works on the support
only, so the host may be a finite forest or a symbolic poset as long as it
provides ``leq`` and membership.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import PosetMismatch, PreconditionViolated, UnknownElement
from .poset import ForestPoset, SymbolicPoset

__all__ = [
    "LexElement",
    "SignSplit",
    "add",
    "scale",
    "basis",
    "zero",
    "min_support",
    "is_positive",
    "pos_part",
    "sup",
    "inf",
    "lattice_leq",
    "riesz_decompose",
    "is_archimedean",
    "format_rational",
    "parse_rational",
]


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coefficient {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class LexElement:
    """An element ``sum a_x e_x`` of Lex(X); zero coefficients are never stored."""

    __slots__ = ("poset", "_coeffs", "_hash")

    def __init__(self, poset, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data = {}
        for x, a in items:
            if x not in poset:
                raise UnknownElement(f"{x!r} is not an element of the host poset")
            a = parse_rational(a)
            if a:
                data[x] = a
        self.poset = poset
        self._coeffs = data
        self._hash = None

    @classmethod
    def _raw(cls, poset, data: dict) -> LexElement:
        obj = cls.__new__(cls)
        obj.poset = poset
        obj._coeffs = data
        obj._hash = None
        return obj

    @property
    def coeffs(self) -> Mapping:
        return MappingProxyType(self._coeffs)

    @property
    def support(self) -> frozenset:
        return frozenset(self._coeffs)

    def __getitem__(self, x) -> Fraction:
        return self._coeffs.get(x, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LexElement):
            return NotImplemented
        return self._coeffs == other._coeffs and _same_poset(self.poset, other.poset)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def _compat(self, other: LexElement) -> None:
        if not isinstance(other, LexElement):
            raise TypeError(f"expected LexElement, got {type(other).__name__}")
        if not _same_poset(self.poset, other.poset):
            raise PosetMismatch("elements live over different posets")

    def __add__(self, other: LexElement) -> LexElement:
        self._compat(other)
        data = dict(self._coeffs)
        for x, a in other._coeffs.items():
            s = data.get(x, 0) + a
            if s:
                data[x] = s
            else:
                data.pop(x, None)
        return LexElement._raw(self.poset, data)

    def __neg__(self) -> LexElement:
        return LexElement._raw(self.poset, {x: -a for x, a in self._coeffs.items()})

    def __sub__(self, other: LexElement) -> LexElement:
        return self + (-other)

    def __mul__(self, r) -> LexElement:
        r = parse_rational(r)
        if not r:
            return LexElement._raw(self.poset, {})
        return LexElement._raw(self.poset, {x: r * a for x, a in self._coeffs.items()})

    __rmul__ = __mul__

    def masked(self, keep) -> LexElement:
        """Pointwise product with the indicator of ``keep`` (a set or predicate)."""
        test = keep if callable(keep) else keep.__contains__
        return LexElement._raw(self.poset, {x: a for x, a in self._coeffs.items() if test(x)})

    def __abs__(self) -> LexElement:
        # |f| = f.1_{up m+(f)} - f.1_{up m-(f)}
        split = min_support(self)
        data = {}
        for x, a in self._coeffs.items():
            if _above(self.poset, split.plus, x):
                data[x] = a
            elif _above(self.poset, split.minus, x):
                data[x] = -a
        return LexElement._raw(self.poset, data)

    def sorted_items(self) -> list:
        return sorted(self._coeffs.items(), key=lambda kv: self.poset.sort_key(kv[0]))

    def __str__(self) -> str:
        items = self.sorted_items()
        if not items:
            return "0"
        parts = []
        for i, (x, a) in enumerate(items):
            name = self.poset.format_element(x)
            mag = format_rational(abs(a))
            if i == 0:
                parts.append(f"{'-' if a < 0 else ''}{mag}*e[{name}]")
            else:
                parts.append(f"{'-' if a < 0 else '+'} {mag}*e[{name}]")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LexElement({self})"


def _same_poset(P, Q) -> bool:
    return P is Q or P == Q


def _above(P, antichain, x) -> bool:
    return any(P.leq(s, x) for s in antichain)


@dataclass(frozen=True)
class SignSplit:
    plus: frozenset
    minus: frozenset

    @property
    def minimal(self) -> frozenset:
        return self.plus | self.minus


def basis(P, x) -> LexElement:
    return LexElement(P, {x: 1})


def zero(P) -> LexElement:
    return LexElement._raw(P, {})


def add(f: LexElement, g: LexElement) -> LexElement:
    return f + g


def scale(r, f: LexElement) -> LexElement:
    return f * r


def min_support(f: LexElement) -> SignSplit:
    P = f.poset
    supp = list(f._coeffs)
    if isinstance(P, ForestPoset):
        # x is minimal iff no strict ancestor is in the support
        s = f._coeffs
        mins = [x for x in supp if not any(y in s for y in P.strict_down(x))]
    else:
        mins = [x for x in supp if not any(y != x and P.leq(y, x) for y in supp)]
    plus = frozenset(x for x in mins if f._coeffs[x] > 0)
    return SignSplit(plus, frozenset(mins) - plus)


def is_positive(f: LexElement) -> bool:
    return not min_support(f).minus


def pos_part(f: LexElement) -> LexElement:
    plus = min_support(f).plus
    return f.masked(lambda x: _above(f.poset, plus, x))


def sup(f: LexElement, g: LexElement) -> LexElement:
    return g + pos_part(f - g)


def inf(f: LexElement, g: LexElement) -> LexElement:
    return -sup(-f, -g)


def lattice_leq(f: LexElement, g: LexElement) -> bool:
    return is_positive(g - f)


def riesz_decompose(z: LexElement, x: LexElement, y: LexElement) -> tuple[LexElement, LexElement]:
    """Split ``0 <= z <= x + y`` as ``z1 + z2`` with ``0 <= z1 <= x`` and ``0 <= z2 <= y``.

    Uses ``z1 = z ^ x``; then ``z2 = (z - x) v 0`` is bounded by ``y``.
    """
    for name, v in (("z", z), ("x", x), ("y", y)):
        if not is_positive(v):
            raise PreconditionViolated(f"{name} is not positive")
    if not lattice_leq(z, x + y):
        raise PreconditionViolated("z is not below x + y")
    z1 = inf(z, x)
    return z1, z - z1


def is_archimedean(P) -> bool:
    """Lex(P) is Archimedean exactly when P has no strict comparabilities."""
    if isinstance(P, ForestPoset):
        return all(P.parent(x) is None for x in P.elements)
    if isinstance(P, SymbolicPoset):
        return all(isinstance(c, ForestPoset) and is_archimedean(c) for c in P.components)
    raise TypeError(f"not a poset: {P!r}")
