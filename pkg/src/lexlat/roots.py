"""The lattice R_S(K) of piecewise root functions on K = {alpha_n} u {0}.

A RootFunction is a germ ``sum a_k t**s_k`` (valid at every alpha_n with
n > cutoff and at 0) together with values at finitely many exceptional points
n <= cutoff.  Exceptional values are themselves stored as finite sums of
rational powers of t, to be evaluated at alpha_n, which keeps every value
exact even when it is irrational.

Order decisions near 0 come from the sign of the lowest-order coefficient
of the difference germ.  Decisions at exceptional points use the exact
canonical forms in :mod:`lexlat.radicals`.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .errors import ExponentNotInS, InconsistentOracle, NotInM0, PosetMismatch, UnknownFamily
from .ideals import LexClassification, lex_classification
from .lex import LexElement, format_rational, parse_rational
from .poset import ForestPoset, OmegaChain, OmegaStarChain, SymbolicPoset, ZetaChain, chain
from .radicals import PointValue, point_value

__all__ = [
    "ExponentSet",
    "Germ",
    "GridK",
    "RootFunction",
    "DEFAULT_GRID",
    "rf_add",
    "rf_neg",
    "rf_scale",
    "rf_sup",
    "rf_inf",
    "rf_abs",
    "domination_cutoff",
    "psi",
    "in_P0",
    "RSSpectrum",
    "spectrum_RS",
    "FAMILIES",
    "classify_RS",
    "embed_total_order",
]

ZERO = Fraction(0)


@dataclass(frozen=True)
class ExponentSet:
    """A finite set S of positive rational exponents, kept sorted."""

    exponents: tuple = ()

    def __init__(self, exponents: Iterable = ()):
        exps = sorted({parse_rational(s) for s in exponents})
        if any(s <= 0 for s in exps):
            raise ExponentNotInS("exponents must be strictly positive")
        object.__setattr__(self, "exponents", tuple(exps))

    def __contains__(self, s) -> bool:
        return Fraction(s) in self.exponents

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def allows(self, s: Fraction) -> bool:
        return s == 0 or s in self.exponents

    def chain(self) -> ForestPoset:
        return chain([format_rational(s) for s in self.exponents])


class Germ:
    """Finite sum ``sum c * t**s`` with strictly increasing exponents and nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable | Mapping = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for s, c in items:
            s, c = parse_rational(s), parse_rational(c)
            if s < 0:
                raise ExponentNotInS(f"negative exponent {s}")
            acc[s] = acc.get(s, ZERO) + c
        self.terms = tuple((s, c) for s, c in sorted(acc.items()) if c)

    @classmethod
    def constant(cls, c) -> Germ:
        return cls([(0, c)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Germ) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: Germ) -> Germ:
        return Germ(self.terms + other.terms)

    def __neg__(self) -> Germ:
        return Germ((s, -c) for s, c in self.terms)

    def __sub__(self, other: Germ) -> Germ:
        return self + (-other)

    def __mul__(self, r) -> Germ:
        r = parse_rational(r)
        return Germ((s, r * c) for s, c in self.terms)

    __rmul__ = __mul__

    @property
    def exponents(self) -> tuple:
        return tuple(s for s, _ in self.terms)

    @property
    def constant_term(self) -> Fraction:
        return self.terms[0][1] if self.terms and self.terms[0][0] == 0 else ZERO

    @property
    def leading(self) -> tuple | None:
        """The lowest-exponent term, which decides the sign near 0."""
        return self.terms[0] if self.terms else None

    def at(self, t) -> PointValue:
        return _germ_at(self.terms, Fraction(t))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (s, c) in enumerate(self.terms):
            mag = format_rational(abs(c))
            body = mag if s == 0 else f"{mag}*t^{format_rational(s)}"
            sign = ("-" if c < 0 else "") if i == 0 else ("- " if c < 0 else "+ ")
            out.append(sign + body)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"Germ({self})"


@lru_cache(maxsize=1 << 16)
def _germ_at(terms: tuple, t: Fraction) -> PointValue:
    # PointValue is never mutated, so cached values can be shared
    return point_value(terms, t)


@dataclass(frozen=True)
class GridK:
    """alpha_n = 1 / p(n) for a polynomial p with nonnegative integer coefficients.

    ``coeffs`` lists p's coefficients from the constant term up; the default
    ``(0, 1)`` gives alpha_n = 1/n.
    """

    coeffs: tuple = (0, 1)

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if any(c < 0 for c in cs) or not any(cs[1:]) or sum(cs) <= 0:
            raise ValueError("grid polynomial needs nonnegative coefficients and positive degree")
        object.__setattr__(self, "coeffs", cs)

    def alpha(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("grid points are indexed from 1")
        return Fraction(1, sum(c * n**i for i, c in enumerate(self.coeffs)))


DEFAULT_GRID = GridK()


class RootFunction:
    """An element of R_S(K).

    ``overrides`` maps n <= cutoff to a Germ whose value at alpha_n is f(alpha_n);
    points n <= cutoff without an override take the germ's value.
    """

    __slots__ = ("germ", "cutoff", "_overrides", "S", "grid")

    def __init__(
        self,
        germ: Germ | Iterable = (),
        cutoff: int = 0,
        overrides: Mapping | None = None,
        S: ExponentSet | None = None,
        grid: GridK = DEFAULT_GRID,
    ):
        germ = germ if isinstance(germ, Germ) else Germ(germ)
        overrides = dict(overrides or {})
        cutoff = int(cutoff)
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        clean = {}
        for n, v in overrides.items():
            n = int(n)
            if not 1 <= n <= cutoff:
                raise ValueError(f"override index {n} outside 1..{cutoff}")
            if not isinstance(v, Germ):
                v = Germ(v) if isinstance(v, (list, tuple)) else Germ.constant(v)
            clean[n] = _normalize_value(v, grid.alpha(n))
        if S is not None:
            for g in [germ, *clean.values()]:
                for s in g.exponents:
                    if not S.allows(s):
                        raise ExponentNotInS(f"exponent {format_rational(s)} not in S u {{0}}")
        self.germ = germ
        self.cutoff = cutoff
        self._overrides = clean
        self.S = S
        self.grid = grid

    @property
    def overrides(self) -> Mapping:
        return MappingProxyType(self._overrides)

    def value_expr(self, n: int) -> Germ:
        return self._overrides.get(n, self.germ) if n <= self.cutoff else self.germ

    def value(self, n: int) -> PointValue:
        """Exact value at alpha_n."""
        return self.value_expr(n).at(self.grid.alpha(n))

    def value_at_zero(self) -> Fraction:
        return self.germ.constant_term

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootFunction):
            return NotImplemented
        if self.germ != other.germ or self.grid != other.grid:
            return False
        # away from the overrides both sides follow the common germ
        keys = set(self._overrides) | set(other._overrides)
        return all((self.value(n) - other.value(n)).is_zero() for n in keys)

    def __hash__(self) -> int:
        return hash((self.germ, self.grid))

    def __add__(self, other):
        return rf_add(self, other)

    def __neg__(self):
        return rf_neg(self)

    def __sub__(self, other):
        return rf_add(self, rf_neg(other))

    def __mul__(self, r):
        return rf_scale(r, self)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        ov = ", ".join(f"{n}: {g}" for n, g in sorted(self._overrides.items()))
        return f"RootFunction({self.germ}; cutoff={self.cutoff}; {{{ov}}})"


def _normalize_value(expr: Germ, t: Fraction) -> Germ:
    r = expr.at(t).rational
    return Germ.constant(r) if r is not None else expr


def _context(f: RootFunction, g: RootFunction) -> ExponentSet | None:
    if f.grid != g.grid:
        raise PosetMismatch("root functions use different grids")
    if f.S is not None and g.S is not None and f.S != g.S:
        raise PosetMismatch("root functions use different exponent sets")
    return f.S if f.S is not None else g.S


def rf_add(f: RootFunction, g: RootFunction) -> RootFunction:
    S = _context(f, g)
    cutoff = max(f.cutoff, g.cutoff)
    # points without an override on either side follow the summed germ
    keys = set(f.overrides) | set(g.overrides)
    overrides = {n: f.value_expr(n) + g.value_expr(n) for n in keys}
    return RootFunction(f.germ + g.germ, cutoff, overrides, S, f.grid)


def rf_scale(r, f: RootFunction) -> RootFunction:
    r = parse_rational(r)
    overrides = {n: e * r for n, e in f.overrides.items()}
    return RootFunction(f.germ * r, f.cutoff, overrides, f.S, f.grid)


def rf_neg(f: RootFunction) -> RootFunction:
    return rf_scale(-1, f)


def _dominated(alpha: Fraction, h: Germ) -> bool:
    """True when |c_1| alpha**s_1 exceeds the opposite-sign terms of h at alpha.

    Same-sign terms only push h further from 0, so dropping them keeps the
    test certified.  After dividing by alpha**s_1 the right side is
    increasing in alpha, so the predicate is monotone along the grid.
    """
    (s1, c1), rest = h.terms[0], h.terms[1:]
    opposite = [(s - s1, abs(c)) for s, c in rest if (c > 0) != (c1 > 0)]
    if not opposite:
        return True
    return point_value([(0, abs(c1))] + [(d, -c) for d, c in opposite], alpha).sign() > 0


def domination_cutoff(h: Germ, grid: GridK = DEFAULT_GRID) -> int:
    """Smallest N such that sign h(alpha_n) = sign of h's lowest coefficient for all n > N.

    Certified via :func:`_dominated`, which is never weaker than the uniform
    bound t* = min(1, min_k (|c_1| / ((m-1)|c_k|)) ** (1/(s_k - s_1))).
    """
    if not h:
        return 0
    ok = lambda N: _dominated(grid.alpha(N + 1), h)  # noqa: E731
    if ok(0):
        return 0
    lo, hi = 0, 1
    while not ok(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _sign_changes(h: Germ) -> int:
    signs = [c > 0 for _, c in h.terms]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def _last_flipped(h: Germ, lo: int, hi: int, grid: GridK, bits: int | None) -> int:
    """Largest n in [lo, hi] with sign h(alpha_n) != sign of h's leading term, or lo - 1.

    Only valid when h has one coefficient sign change: by Descartes' rule
    for sums of real powers h then has exactly one positive root, so the
    leading sign holds on an initial segment (0, t0) and nowhere after it.
    """
    lead = 1 if h.leading[1] > 0 else -1
    flipped = lambda n: h.at(grid.alpha(n)).sign(bits) != lead  # noqa: E731
    if not flipped(lo):
        return lo - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if flipped(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def rf_sup(f: RootFunction, g: RootFunction, precision_bits: int | None = None) -> RootFunction:
    S = _context(f, g)
    h = f.germ - g.germ
    if not h:
        germ, threshold = f.germ, 0
    else:
        germ = f.germ if h.leading[1] > 0 else g.germ
        threshold = domination_cutoff(h, f.grid)
    inner = max(f.cutoff, g.cutoff)
    overrides = {}
    for n in range(1, inner + 1):
        t = f.grid.alpha(n)
        ef, eg = f.value_expr(n), g.value_expr(n)
        win = ef if (ef.at(t) - eg.at(t)).sign(precision_bits) >= 0 else eg
        if win != germ and not (win.at(t) - germ.at(t)).is_zero():
            overrides[n] = win
    cutoff = max(inner, threshold)
    if threshold > inner:
        other = g.germ if germ is f.germ else f.germ
        if _sign_changes(h) == 1:
            last = _last_flipped(h, inner + 1, threshold, f.grid, precision_bits)
            for n in range(inner + 1, last + 1):
                overrides[n] = other
            cutoff = max(inner, last)
        else:
            for n in range(inner + 1, threshold + 1):
                if (h.at(f.grid.alpha(n)).sign(precision_bits) >= 0) != (germ is f.germ):
                    overrides[n] = other
    return RootFunction(germ, cutoff, overrides, S, f.grid)


def rf_inf(f: RootFunction, g: RootFunction, precision_bits: int | None = None) -> RootFunction:
    return rf_neg(rf_sup(rf_neg(f), rf_neg(g), precision_bits))


def rf_abs(f: RootFunction, precision_bits: int | None = None) -> RootFunction:
    return rf_sup(f, rf_neg(f), precision_bits)


def psi(f: RootFunction, S: ExponentSet | None = None) -> LexElement:
    """Image of f in Lex(S): t**s goes to e_s.  Defined on M_0 (no constant term)."""
    if f.germ.constant_term:
        raise NotInM0("germ has a nonzero constant term, so f(0) != 0")
    S = S or f.S or ExponentSet(f.germ.exponents)
    for s in f.germ.exponents:
        if s not in S:
            raise ExponentNotInS(f"exponent {format_rational(s)} not in S")
    return LexElement(S.chain(), {format_rational(s): c for s, c in f.germ.terms})


def in_P0(f: RootFunction) -> bool:
    return not f.germ


# -- prime spectrum -----------------------------------------------------------


@dataclass(frozen=True)
class RSSpectrum:
    """Primes of R_S(K): point maximal ideals M_{alpha_n} and the chain below M_0.

    For a finite S, ``chain`` lists the upper sets of S from the image of P_0
    (empty) up to the image of M_0 (all of S).  For a symbolic family it
    holds descriptions of the upper sets instead.
    """

    S: object
    points: tuple
    chain: tuple
    family: str | None = None


def spectrum_RS(S, n_points: int = 3, grid: GridK = DEFAULT_GRID) -> RSSpectrum:
    points = tuple((n, grid.alpha(n)) for n in range(1, n_points + 1))
    if isinstance(S, str):
        if S not in FAMILIES:
            raise UnknownFamily(f"unknown exponent family {S!r}")
        comp = FAMILIES[S].index_chain
        if isinstance(comp, OmegaChain):
            shapes = ("Empty", "UpFrom(s) for each s in S")
        else:
            shapes = ("Empty", "UpFrom(s) for each s in S", "All")
        return RSSpectrum(S, points, shapes, family=S)
    S = S if isinstance(S, ExponentSet) else ExponentSet(S)
    exps = S.exponents
    ups = tuple(exps[i:] for i in range(len(exps), -1, -1))
    return RSSpectrum(S, points, ups)


@dataclass(frozen=True)
class ExponentFamily:
    """An infinite exponent set S given as an increasing image of a symbolic chain."""

    name: str
    index_chain: object
    label: Callable[[int], Fraction]

    def check_monotone(self, window: int = 64) -> None:
        c = self.index_chain
        if isinstance(c, OmegaChain):
            idx = range(c.start, c.start + window)
        elif isinstance(c, OmegaStarChain):
            idx = range(c.end - window, c.end + 1)
        else:
            idx = range(-window, window)
        vals = [self.label(i) for i in idx]
        if any(v <= 0 for v in vals) or any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"family {self.name} is not an increasing map into Q_>0")


def _zeta_label(n: int) -> Fraction:
    return Fraction(n + 2) if n >= 0 else Fraction(-1, n)


FAMILIES = {
    "naturals": ExponentFamily("naturals", OmegaChain(1), lambda n: Fraction(n)),
    "reciprocal_naturals": ExponentFamily(
        "reciprocal_naturals", OmegaStarChain(-1), lambda n: Fraction(1, -n)
    ),
    "integers_image": ExponentFamily("integers_image", ZetaChain(), _zeta_label),
}


@dataclass(frozen=True)
class RSClassification:
    prime_artinian: bool
    prime_noetherian: bool


def classify_RS(S_family) -> RSClassification:
    """Prime Artinian / prime Noetherian verdicts for R_S(K) (and M_0).

    Both reduce to Lex(S) through the minimal prime P_0 under M_0, so they
    are the Artinian / Noetherian verdicts for the order type of S.
    """
    if isinstance(S_family, ExponentSet):
        verdict: LexClassification = lex_classification(S_family.chain())
    else:
        if S_family not in FAMILIES:
            raise UnknownFamily(f"unknown exponent family {S_family!r}")
        fam = FAMILIES[S_family]
        fam.check_monotone()
        verdict = lex_classification(SymbolicPoset([fam.index_chain]))
    return RSClassification(prime_artinian=verdict.artinian, prime_noetherian=verdict.noetherian)


# -- order embedding ----------------------------------------------------------


def embed_total_order(elements: Iterable[Hashable], less: Callable[[object, object], bool]) -> dict:
    """Embed a countable strict total order into the positive rationals, streaming.

    The first element gets 1; a new minimum gets half the current minimum, a
    new maximum twice the current maximum, and anything else the midpoint of
    the values of its two neighbours.  Earlier values are never revised.
    """
    values: dict = {}
    ordered: list = []  # elements seen so far, increasing
    for t in elements:
        if t in values:
            raise InconsistentOracle(f"element {t!r} presented twice")
        lo, hi = 0, len(ordered)
        while lo < hi:
            mid = (lo + hi) // 2
            if less(t, ordered[mid]):
                hi = mid
            else:
                lo = mid + 1
        left = ordered[lo - 1] if lo > 0 else None
        right = ordered[lo] if lo < len(ordered) else None
        if left is not None and not less(left, t):
            raise InconsistentOracle(f"{t!r} is neither above nor below {left!r}")
        if right is not None and (not less(t, right) or less(right, t)):
            raise InconsistentOracle(f"oracle contradicts itself on {t!r} and {right!r}")
        if left is not None and less(t, left):
            raise InconsistentOracle(f"oracle contradicts itself on {t!r} and {left!r}")
        if not ordered:
            v = Fraction(1)
        elif left is None:
            v = values[right] / 2
        elif right is None:
            v = 2 * values[left]
        else:
            v = (values[left] + values[right]) / 2
        values[t] = v
        ordered.insert(lo, t)
    return values
