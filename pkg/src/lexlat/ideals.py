"""Ideals of Lex(X) over a finite forest, represented by upper sets.

Every ideal of Lex(X) is E(U), the functions supported on an upper set U, and
U <-> E(U) is a lattice isomorphism.  All classification below is therefore
done on upper sets.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

from .errors import EmptyPoset, NotFinite, PosetMismatch, TooLarge
from .lex import LexElement, min_support
from .poset import (
    ForestPoset,
    PosetFlags,
    SymbolicPoset,
    UpperSet,
    classify_poset,
    min_of_subset,
    up_closure,
)

__all__ = [
    "IdealHandle",
    "IdealClassification",
    "LexClassification",
    "MinimalPrimeReport",
    "MAX_ENUMERATION_SIZE",
    "carrier",
    "principal_ideal",
    "ideal_membership",
    "enumerate_ideals",
    "classify_ideal",
    "radical",
    "quotient_poset",
    "lex_classification",
    "prime_spectrum",
    "min_primes_finite_codim",
    "ideal_from_members",
]

IdealHandle = UpperSet

MAX_ENUMERATION_SIZE = 20


def _finite(P) -> ForestPoset:
    if isinstance(P, ForestPoset):
        return P
    if isinstance(P, SymbolicPoset) and P.is_finite:
        return P.as_forest()
    raise NotFinite("operation requires a finite forest")


def _guard(P: ForestPoset) -> None:
    if len(P) > MAX_ENUMERATION_SIZE:
        raise TooLarge(f"|X| = {len(P)} exceeds the enumeration limit {MAX_ENUMERATION_SIZE}")


def ideal_from_members(P: ForestPoset, members: Iterable) -> IdealHandle:
    return UpperSet(P, frozenset(members))


def carrier(generators: Iterable[LexElement], poset: ForestPoset | None = None) -> IdealHandle:
    """Upper set generated by the supports; the ideal generated equals E(carrier)."""
    gens = list(generators)
    if poset is None:
        if not gens:
            raise ValueError("need a poset to form the carrier of no generators")
        poset = gens[0].poset
    for g in gens:
        if not (g.poset is poset or g.poset == poset):
            raise PosetMismatch("generators live over different posets")
    points = set()
    for g in gens:
        points |= g.support
    return up_closure(_finite(poset), points)


def principal_ideal(f: LexElement) -> IdealHandle:
    return up_closure(_finite(f.poset), min_support(f).minimal)


def ideal_membership(f: LexElement, ideal: IdealHandle) -> bool:
    if not (f.poset is ideal.poset or f.poset == ideal.poset):
        raise PosetMismatch("element and ideal live over different posets")
    return f.support <= ideal.members


def _upper_sets_below(P: ForestPoset, x) -> list[frozenset]:
    # upper sets of the subtree rooted at x: all of it, or any combination of
    # upper sets of the children's subtrees
    combos = [frozenset()]
    for c in P.children(x):
        combos = [a | b for a in combos for b in _upper_sets_below(P, c)]
    return combos + [P.up(x)]


def enumerate_ideals(P) -> list[IdealHandle]:
    """All upper sets, each once, sorted by size and then by member names."""
    P = _finite(P)
    _guard(P)
    combos = [frozenset()]
    for r in P.roots:
        combos = [a | b for a in combos for b in _upper_sets_below(P, r)]
    handles = [UpperSet(P, m) for m in combos]
    handles.sort(key=UpperSet.canonical_key)
    return handles


@dataclass(frozen=True)
class IdealClassification:
    generating_antichain: frozenset
    is_principal: bool
    is_local: bool
    is_maximal: bool
    is_minimal_ideal: bool
    is_prime: bool
    is_proper: bool

    def glyphs(self) -> str:
        tags = []
        if self.is_prime:
            tags.append("P")
        if self.is_local:
            tags.append("L")
        if self.is_maximal:
            tags.append("M")
        if self.is_minimal_ideal:
            tags.append("min")
        return " ".join(tags)


def classify_ideal(ideal: IdealHandle) -> IdealClassification:
    P = ideal.poset
    U = ideal.members
    rest = ideal.complement
    F = min_of_subset(P, U)
    proper = bool(rest)
    return IdealClassification(
        generating_antichain=F,
        is_principal=True,
        is_local=len(F) == 1,
        is_maximal=len(rest) == 1,
        is_minimal_ideal=len(U) == 1 and not P.children(next(iter(U))),
        is_prime=proper and P.is_chain(rest),
        is_proper=proper,
    )


def radical(P) -> IdealHandle:
    """Intersection of the maximal ideals: E(X minus its minimal elements)."""
    P = _finite(P)
    if not len(P):
        raise EmptyPoset("the radical needs a nonempty poset")
    roots = set(P.roots)
    return UpperSet(P, frozenset(x for x in P.elements if x not in roots))


def quotient_poset(P, ideal) -> tuple[ForestPoset, Callable[[LexElement], LexElement]]:
    """Index forest of Lex(X)/E(U) together with the coefficient restriction map."""
    P = _finite(P)
    members = ideal.members if isinstance(ideal, UpperSet) else frozenset(ideal)
    if isinstance(ideal, UpperSet) and ideal.poset != P:
        raise PosetMismatch("upper set belongs to another poset")
    UpperSet(P, members)  # raises NotUpperSet
    Q = P.induced(set(P.elements) - members)

    def restrict(f: LexElement) -> LexElement:
        if f.poset != P:
            raise PosetMismatch("element does not live over the quotiented poset")
        return LexElement(Q, {x: a for x, a in f.coeffs.items() if x not in members})

    return Q, restrict


@dataclass(frozen=True)
class LexClassification:
    artinian: bool
    noetherian: bool


def lex_classification(P) -> LexClassification:
    flags: PosetFlags = P if isinstance(P, PosetFlags) else classify_poset(P)
    return LexClassification(
        artinian=flags.reverse_well_founded and flags.finite_width,
        noetherian=flags.well_founded and flags.finite_width,
    )


def prime_spectrum(P) -> list[IdealHandle]:
    """Proper upper sets with totally ordered complement.

    A down-set of a forest that is a nonempty chain is the down-set of its
    top element, so the primes are exactly X minus the down-set of a point.
    """
    P = _finite(P)
    _guard(P)
    everything = frozenset(P.elements)
    primes = {everything - P.down(x) for x in P.elements}
    handles = [UpperSet(P, m) for m in primes]
    handles.sort(key=UpperSet.canonical_key)
    return handles


@dataclass(frozen=True)
class MinimalPrimeReport:
    verdict: bool
    minimal_primes: tuple  # of (IdealHandle, codimension)


def min_primes_finite_codim(P) -> MinimalPrimeReport:
    P = _finite(P)
    everything = frozenset(P.elements)
    # minimal primes come from the largest chains: the down-sets of maximal elements
    entries = []
    for x in P.leaves:
        down = P.down(x)
        entries.append((UpperSet(P, everything - down), len(down)))
    entries.sort(key=lambda e: e[0].canonical_key())
    return MinimalPrimeReport(verdict=True, minimal_primes=tuple(entries))
