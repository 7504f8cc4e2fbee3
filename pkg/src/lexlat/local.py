"""Local ideals, local projections and cuts on Lex(X) over a finite forest.

The local ideals are E(up x), one per point x, with strong unit e_x and
unique maximal ideal E(up x minus x).  The projection onto E(up x) is the
mask by the indicator of up x; the cut at x is its complement.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnknownElement, ZeroElement
from .lex import LexElement, basis, format_rational, inf, min_support, zero
from .poset import ForestPoset, UpperSet

__all__ = [
    "LocalIdeal",
    "ProjectionTable",
    "CompatibilityReport",
    "local_ideals",
    "decompose_principal",
    "local_projection",
    "cut",
    "verify_compatibility",
    "coordinate_functional",
    "representation",
]


@dataclass(frozen=True)
class LocalIdeal:
    base: str
    handle: UpperSet
    unit: LexElement
    maximal_ideal: UpperSet


class ProjectionTable:
    """The family of local projections of a finite forest, one mask per point."""

    def __init__(self, P: ForestPoset):
        self.poset = P
        self.masks = {x: P.up(x) for x in P.elements}

    def __getitem__(self, x) -> frozenset:
        try:
            return self.masks[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not an element of the poset") from None

    def project(self, x, f: LexElement) -> LexElement:
        return f.masked(self[x])

    def cut(self, x, f: LexElement) -> LexElement:
        mask = self[x]
        return f.masked(lambda y: y not in mask)


def _local(P: ForestPoset, x) -> LocalIdeal:
    up = P.up(x)
    return LocalIdeal(x, UpperSet(P, up), basis(P, x), UpperSet(P, up - {x}))


def local_ideals(P: ForestPoset) -> list[LocalIdeal]:
    return [_local(P, x) for x in P.elements]


def decompose_principal(f: LexElement) -> list[tuple[LocalIdeal, LexElement]]:
    """Split f into the pieces f.1_{up x}, x minimal in the support."""
    if not f:
        raise ZeroElement("the zero element has no local decomposition")
    P = f.poset
    mins = sorted(min_support(f).minimal, key=P.sort_key)
    return [(_local(P, x), local_projection(x, f)) for x in mins]


def local_projection(x, f: LexElement) -> LexElement:
    P = f.poset
    if x not in P:
        raise UnknownElement(f"{x!r} is not an element of the poset")
    return f.masked(lambda y: P.leq(x, y))


def cut(x, f: LexElement) -> LexElement:
    return f - local_projection(x, f)


def coordinate_functional(x, f: LexElement) -> Fraction:
    """phi_x(Q_x f): the coefficient of e_x in the projection onto E(up x)."""
    return local_projection(x, f)[x]


def representation(f: LexElement) -> LexElement:
    """The element u -> (phi_x(Q_x u))_x built coordinate by coordinate."""
    P = f.poset
    return LexElement(P, {x: coordinate_functional(x, f) for x in P.elements})


@dataclass
class CompatibilityReport:
    lines: list = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, x, y, axiom: int, counterexample=None) -> None:
        line = f"PAIR ({x},{y}) AXIOM {axiom} {'PASS' if counterexample is None else 'FAIL'}"
        if counterexample is not None:
            self.failures += 1
            line += " " + json.dumps(counterexample, sort_keys=True)
        self.lines.append(line)

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _dump(f: LexElement) -> dict:
    return {f.poset.format_element(x): format_rational(a) for x, a in f.sorted_items()}


def _random_element(P: ForestPoset, rng: random.Random) -> LexElement:
    elems = P.elements
    k = rng.randint(1, len(elems))
    return LexElement(
        P,
        {x: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for x in rng.sample(elems, k)},
    )


def verify_compatibility(
    P: ForestPoset, n_random: int = 50, seed: int = 0, table: ProjectionTable | None = None
) -> CompatibilityReport:
    """Check the three axioms of a compatible family of local projections.

    Axiom 1: Q_x maps onto E(up x) and is idempotent (checked for the pair (x, x)).
    Axiom 2: disjoint local ideals have Q_x Q_y = Q_y Q_x = 0.
    Axiom 3: nested E(up x) < E(up y) have Q_x Q_y = Q_y Q_x = Q_x and Q_x e_y = 0.
    """
    table = table or ProjectionTable(P)
    rng = random.Random(seed)
    report = CompatibilityReport()
    elems = P.elements
    bases = [basis(P, y) for y in elems]
    Q = table.project

    for x in elems:
        tests = bases + [_random_element(P, rng) for _ in range(n_random)]
        bad = None
        ran = P.up(x)  # the local ideal itself, not the table's mask
        for f in tests:
            q = Q(x, f)
            if not q.support <= ran or Q(x, q) != q:
                bad = {"element": _dump(f), "projection": _dump(q)}
                break
        if bad is None:
            # onto: every e_y with y in up x is fixed
            for y in ran:
                if Q(x, basis(P, y)) != basis(P, y):
                    bad = {"element": _dump(basis(P, y)), "reason": "not fixed"}
                    break
        report.record(x, x, 1, bad)

    for i, x in enumerate(elems):
        for y in elems[i + 1 :]:
            tests = bases + [_random_element(P, rng) for _ in range(n_random)]
            Ux, Uy = P.up(x), P.up(y)
            bad = None
            if not Ux & Uy:
                for f in tests:
                    if Q(x, Q(y, f)) or Q(y, Q(x, f)):
                        bad = {"element": _dump(f)}
                        break
                report.record(x, y, 2, bad)
            elif Ux < Uy or Uy < Ux:
                small, big = (x, y) if Ux < Uy else (y, x)
                for f in tests:
                    target = Q(small, f)
                    if Q(small, Q(big, f)) != target or Q(big, Q(small, f)) != target:
                        bad = {"element": _dump(f)}
                        break
                if bad is None and Q(small, basis(P, big)):
                    bad = {"element": _dump(basis(P, big)), "reason": "unit not annihilated"}
                report.record(x, y, 3, bad)
            else:
                report.record(x, y, 2, {"reason": "local ideals neither nested nor disjoint"})
    return report


def pairwise_disjoint(components: list[LexElement]) -> bool:
    """True when the absolute values of the pieces have pairwise zero infimum."""
    for i, f in enumerate(components):
        for g in components[i + 1 :]:
            if inf(abs(f), abs(g)) != zero(f.poset):
                return False
    return True
