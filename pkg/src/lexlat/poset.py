"""Finite forests, symbolic chain order types, upper sets and recursion.

A finite forest is stored through its parent map: ``parent[x]`` is the unique
element covered by ``x`` (``None`` for minimal elements), so ``x <= y`` holds
exactly when ``x`` lies on the root path of ``y``.

Symbolic posets are finite disjoint unions of finite forests and the three
infinite chains ``omega`` (1 < 2 < ...), ``omega_star`` (... < -2 < -1) and
``zeta`` (the integers).  Their elements are pairs ``(component, token)``.
"""

from __future__ import annotations

import functools
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .errors import (
    CallbackFailure,
    NotAForest,
    NotAPartialOrder,
    NotFinite,
    NotUpperSet,
    ParseError,
    UnknownElement,
)

__all__ = [
    "ForestPoset",
    "OmegaChain",
    "OmegaStarChain",
    "ZetaChain",
    "SymbolicPoset",
    "UpperSet",
    "ChainUpper",
    "SymbolicUpperSet",
    "PosetFlags",
    "INFINITE_ANTICHAIN_FLAGS",
    "leq",
    "validate_forest",
    "min_of_subset",
    "up_closure",
    "classify_poset",
    "well_founded_recursion",
    "chain",
    "antichain",
    "unlabeled_forests",
]


class ForestPoset:
    """A finite rooted forest given by its parent map.

    >>> P = ForestPoset({"a": None, "b": "a", "c": "a"})
    >>> P.leq("a", "b"), P.leq("b", "c")
    (True, False)
    """

    def __init__(self, parent: Mapping[str, str | None], name: str | None = None):
        parent = dict(parent)
        for x, p in parent.items():
            if p is not None and p not in parent:
                raise UnknownElement(f"parent {p!r} of {x!r} is not an element")
        depth: dict[str, int] = {}
        ancestors: dict[str, frozenset] = {}
        for x in parent:
            path = []
            y = x
            while y is not None and y not in depth:
                if y in path:
                    raise NotAPartialOrder(f"parent map has a cycle through {y!r}")
                path.append(y)
                y = parent[y]
            base_depth = -1 if y is None else depth[y]
            base_anc = frozenset() if y is None else ancestors[y] | {y}
            for z in reversed(path):
                base_depth += 1
                depth[z] = base_depth
                ancestors[z] = base_anc
                base_anc = base_anc | {z}
        children: dict[str, list] = {x: [] for x in parent}
        for x, p in parent.items():
            if p is not None:
                children[p].append(x)
        self._parent = parent
        self._depth = depth
        self._ancestors = ancestors
        self._children = {x: tuple(sorted(cs)) for x, cs in children.items()}
        self.elements = tuple(sorted(parent, key=lambda x: (depth[x], x)))
        self.name = name

    # container protocol
    def __contains__(self, x) -> bool:
        return x in self._parent

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self._parent)

    def __eq__(self, other) -> bool:
        return isinstance(other, ForestPoset) and self._parent == other._parent

    def __hash__(self) -> int:
        return hash(frozenset(self._parent.items()))

    def __repr__(self) -> str:
        rel = ", ".join(f"{p}<{x}" for x, p in sorted(self._parent.items()) if p is not None)
        iso = ", ".join(x for x in self.elements if self._parent[x] is None and not self._children[x])
        body = "; ".join(s for s in (rel, iso) if s)
        return f"ForestPoset({body})"

    def _check(self, x) -> None:
        if x not in self._parent:
            raise UnknownElement(f"{x!r} is not an element of the poset")

    @property
    def is_finite(self) -> bool:
        return True

    def parent(self, x: str) -> str | None:
        self._check(x)
        return self._parent[x]

    @property
    def parent_map(self) -> Mapping[str, str | None]:
        return MappingProxyType(self._parent)

    def depth(self, x: str) -> int:
        self._check(x)
        return self._depth[x]

    def children(self, x: str) -> tuple:
        self._check(x)
        return self._children[x]

    def sort_key(self, x):
        return (self._depth[x], x)

    def format_element(self, x) -> str:
        return x

    def parse_element(self, token: str) -> str:
        self._check(token)
        return token

    def leq(self, x, y) -> bool:
        self._check(x)
        self._check(y)
        return x == y or x in self._ancestors[y]

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def strict_down(self, x) -> frozenset:
        self._check(x)
        return self._ancestors[x]

    def down(self, x) -> frozenset:
        return self.strict_down(x) | {x}

    def up(self, x) -> frozenset:
        self._check(x)
        out = []
        stack = [x]
        while stack:
            y = stack.pop()
            out.append(y)
            stack.extend(self._children[y])
        return frozenset(out)

    @property
    def roots(self) -> tuple:
        """Minimal elements."""
        return tuple(x for x in self.elements if self._parent[x] is None)

    @property
    def leaves(self) -> tuple:
        """Maximal elements."""
        return tuple(x for x in self.elements if not self._children[x])

    @property
    def width(self) -> int:
        # in a forest the maximal elements form a largest antichain
        return len(self.leaves)

    def is_chain(self, A: Iterable) -> bool:
        A = sorted(A, key=self.sort_key)
        return all(self.leq(A[i], A[i + 1]) for i in range(len(A) - 1))

    def is_antichain(self, A: Iterable) -> bool:
        A = list(A)
        return all(
            not self.comparable(A[i], A[j]) for i in range(len(A)) for j in range(i + 1, len(A))
        )

    def induced(self, subset: Iterable, name: str | None = None) -> ForestPoset:
        """The subposet on ``subset``; parents become nearest ancestors inside it."""
        subset = set(subset)
        for x in subset:
            self._check(x)
        parent = {}
        for x in subset:
            p = self._parent[x]
            while p is not None and p not in subset:
                p = self._parent[p]
            parent[x] = p
        return ForestPoset(parent, name=name)

    def linear_extension(self) -> tuple:
        return self.elements


# -- symbolic chains ---------------------------------------------------------


@dataclass(frozen=True)
class OmegaChain:
    """Order type omega: start < start+1 < ..."""

    start: int = 1

    def __contains__(self, k) -> bool:
        return isinstance(k, int) and k >= self.start

    def leq(self, a: int, b: int) -> bool:
        return a <= b

    def sort_key(self, a):
        return a

    well_founded = True
    reverse_well_founded = False
    width = 1
    literal = "omega"


@dataclass(frozen=True)
class OmegaStarChain:
    """Order type omega*: ... < end-1 < end."""

    end: int = -1

    def __contains__(self, k) -> bool:
        return isinstance(k, int) and k <= self.end

    def leq(self, a: int, b: int) -> bool:
        return a <= b

    def sort_key(self, a):
        return a

    well_founded = False
    reverse_well_founded = True
    width = 1
    literal = "omega_star"


@dataclass(frozen=True)
class ZetaChain:
    """Order type zeta: the integers."""

    def __contains__(self, k) -> bool:
        return isinstance(k, int)

    def leq(self, a: int, b: int) -> bool:
        return a <= b

    def sort_key(self, a):
        return a

    well_founded = False
    reverse_well_founded = False
    width = 1
    literal = "zeta"


_CHAINS = (OmegaChain, OmegaStarChain, ZetaChain)


class SymbolicPoset:
    """Finite disjoint union of finite forests and infinite chains."""

    def __init__(self, components: Iterable, name: str | None = None):
        self.components = tuple(components)
        for c in self.components:
            if not isinstance(c, (ForestPoset,) + _CHAINS):
                raise TypeError(f"unsupported component {c!r}")
        self.name = name

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicPoset) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"SymbolicPoset({' + '.join(map(repr, self.components))})"

    @property
    def is_finite(self) -> bool:
        return all(isinstance(c, ForestPoset) for c in self.components)

    def __contains__(self, x) -> bool:
        if not (isinstance(x, tuple) and len(x) == 2):
            return False
        k, tok = x
        return isinstance(k, int) and 0 <= k < len(self.components) and tok in self.components[k]

    def __iter__(self):
        if not self.is_finite:
            raise NotFinite("cannot iterate an infinite symbolic poset")
        for k, c in enumerate(self.components):
            for tok in c.elements:
                yield (k, tok)

    def __len__(self) -> int:
        if not self.is_finite:
            raise NotFinite("infinite symbolic poset has no finite size")
        return sum(len(c) for c in self.components)

    def _check(self, x) -> None:
        if x not in self:
            raise UnknownElement(f"{x!r} is not an element of the poset")

    def leq(self, x, y) -> bool:
        self._check(x)
        self._check(y)
        if x[0] != y[0]:
            return False
        return self.components[x[0]].leq(x[1], y[1])

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def sort_key(self, x):
        k, tok = x
        return (k, self.components[k].sort_key(tok))

    def format_element(self, x) -> str:
        k, tok = x
        return str(tok) if len(self.components) == 1 else f"{k}:{tok}"

    def parse_element(self, token: str):
        if len(self.components) == 1:
            k, raw = 0, token
        else:
            head, sep, raw = token.partition(":")
            if not sep or not head.isdigit():
                raise UnknownElement(f"element {token!r} lacks a component prefix 'k:'")
            k = int(head)
        if not 0 <= k < len(self.components):
            raise UnknownElement(f"no component {k}")
        comp = self.components[k]
        if isinstance(comp, ForestPoset):
            x = (k, raw)
        else:
            try:
                x = (k, int(raw))
            except ValueError:
                raise UnknownElement(f"chain element {raw!r} is not an integer") from None
        self._check(x)
        return x

    def as_forest(self, name: str | None = None) -> ForestPoset:
        """Merge finite components into one ForestPoset (prefixing ids when needed)."""
        if not self.is_finite:
            raise NotFinite("poset has an infinite chain component")
        if len(self.components) == 1:
            return ForestPoset(self.components[0].parent_map, name=name or self.name)
        parent = {}
        for k, c in enumerate(self.components):
            for x, p in c.parent_map.items():
                parent[f"{k}:{x}"] = None if p is None else f"{k}:{p}"
        return ForestPoset(parent, name=name or self.name)

    def restrict_upper(self, U: SymbolicUpperSet) -> SymbolicPoset:
        """The subposet carried by an upper set (element names preserved)."""
        return SymbolicPoset(
            [c for c in (_restrict_part(c, p, upper=True) for c, p in zip(self.components, U.parts)) if c]
        )

    def restrict_complement(self, U: SymbolicUpperSet) -> SymbolicPoset:
        """The subposet on the complement of an upper set (the quotient index set)."""
        return SymbolicPoset(
            [c for c in (_restrict_part(c, p, upper=False) for c, p in zip(self.components, U.parts)) if c]
        )


def _restrict_part(comp, part, upper: bool):
    if isinstance(comp, ForestPoset):
        keep = part if upper else set(comp.elements) - part
        return comp.induced(keep) if keep else None
    if part.kind == "all":
        return comp if upper else None
    if part.kind == "empty":
        return None if upper else comp
    k = part.start
    if isinstance(comp, OmegaChain):
        if upper:
            return OmegaChain(k)
        return chain([str(i) for i in range(comp.start, k)]) if k > comp.start else None
    if isinstance(comp, OmegaStarChain):
        if upper:
            return chain([str(i) for i in range(k, comp.end + 1)])
        return OmegaStarChain(k - 1)
    return OmegaChain(k) if upper else OmegaStarChain(k - 1)


# -- upper sets ---------------------------------------------------------------


@dataclass(frozen=True)
class UpperSet:
    """An upward closed subset of a finite forest."""

    poset: ForestPoset
    members: frozenset

    def __post_init__(self):
        P = self.poset
        for x in self.members:
            P._check(x)
        for x in self.members:
            for c in P.children(x):
                if c not in self.members:
                    raise NotUpperSet(f"{x!r} in set but its successor {c!r} is not")

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members, key=self.poset.sort_key))

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: UpperSet) -> bool:
        return self.members <= other.members

    def __lt__(self, other: UpperSet) -> bool:
        return self.members < other.members

    def sorted_members(self) -> list:
        return sorted(self.members, key=self.poset.sort_key)

    @property
    def complement(self) -> frozenset:
        return frozenset(self.poset.elements) - self.members

    def canonical_key(self):
        return (len(self.members), sorted(self.members))

    def __repr__(self) -> str:
        return "{" + ",".join(self.sorted_members()) + "}"


@dataclass(frozen=True)
class ChainUpper:
    """An upper set of a symbolic chain: empty, everything, or everything >= start."""

    kind: str
    start: int | None = None

    def __contains__(self, k) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "empty":
            return False
        return k >= self.start

    def __str__(self) -> str:
        return {"empty": "Empty", "all": "All"}.get(self.kind) or f"UpFrom({self.start})"


@dataclass(frozen=True)
class SymbolicUpperSet:
    poset: SymbolicPoset
    parts: tuple

    def __contains__(self, x) -> bool:
        k, tok = x
        return tok in self.parts[k]

    def __str__(self) -> str:
        out = []
        for k, (c, p) in enumerate(zip(self.poset.components, self.parts)):
            if isinstance(c, ForestPoset):
                s = "{" + ",".join(sorted(p, key=c.sort_key)) + "}"
            else:
                s = str(p)
            out.append(s if len(self.parts) == 1 else f"{k}:{s}")
        return " + ".join(out)


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class PosetFlags:
    well_founded: bool
    reverse_well_founded: bool
    finite_width: bool


# Countably infinite antichain: every subset has minimal and maximal elements,
# but the antichain itself is infinite.  Not representable as a value here.
INFINITE_ANTICHAIN_FLAGS = PosetFlags(True, True, False)


def classify_poset(P) -> PosetFlags:
    if isinstance(P, ForestPoset):
        return PosetFlags(True, True, True)
    wf = rwf = True
    for c in P.components:
        if isinstance(c, ForestPoset):
            continue
        wf = wf and c.well_founded
        rwf = rwf and c.reverse_well_founded
    # finitely many components, each of finite width
    return PosetFlags(wf, rwf, True)


# -- module level operations -------------------------------------------------


def leq(P, x, y) -> bool:
    return P.leq(x, y)


def validate_forest(relation: Iterable[tuple], elements: Iterable = (), name: str | None = None) -> ForestPoset:
    """Build a forest from strict relations ``(a, b)`` meaning ``a < b``.

    Raises NotAPartialOrder on cycles and NotAForest when some down-set is
    not a chain.
    """
    preds: dict = {x: set() for x in elements}
    for a, b in relation:
        preds.setdefault(a, set())
        preds.setdefault(b, set())
        if a != b:
            preds[b].add(a)

    below: dict = {}
    state: dict = {}

    def visit(x):
        # iterative DFS computing the strict down-set of x
        stack = [(x, iter(preds[x]))]
        state[x] = "active"
        while stack:
            node, it = stack[-1]
            for p in it:
                if state.get(p) == "active":
                    raise NotAPartialOrder(f"cycle through {p!r} and {node!r}")
                if p not in state:
                    state[p] = "active"
                    stack.append((p, iter(preds[p])))
                    break
            else:
                stack.pop()
                acc = set()
                for p in preds[node]:
                    acc.add(p)
                    acc |= below[p]
                below[node] = acc
                state[node] = "done"

    for x in sorted(preds):
        if x not in state:
            visit(x)

    parent = {}
    for x in preds:
        down = below[x]
        ordered = sorted(down, key=lambda y: len(below[y]))
        for i in range(len(ordered) - 1):
            if ordered[i] not in below[ordered[i + 1]]:
                raise NotAForest(
                    f"{ordered[i]!r} and {ordered[i + 1]!r} are incomparable but both below {x!r}"
                )
        parent[x] = ordered[-1] if ordered else None
    return ForestPoset(parent, name=name)


def min_of_subset(P, A: Iterable) -> frozenset:
    if isinstance(A, SymbolicUpperSet):
        raise NotFinite("subset must be given explicitly")
    A = set(A)
    for x in A:
        P._check(x)
    return frozenset(x for x in A if not any(y != x and P.leq(y, x) for y in A))


def up_closure(P, A: Iterable):
    A = list(A)
    if isinstance(P, ForestPoset):
        members = set()
        for x in A:
            if x not in members:
                members |= P.up(x)
        return UpperSet(P, frozenset(members))
    for x in A:
        P._check(x)
    parts = []
    for k, c in enumerate(P.components):
        toks = [tok for (j, tok) in A if j == k]
        if isinstance(c, ForestPoset):
            parts.append(up_closure(c, toks).members)
        elif not toks:
            parts.append(ChainUpper("empty"))
        else:
            m = min(toks)
            if isinstance(c, OmegaChain) and m == c.start:
                parts.append(ChainUpper("all"))
            else:
                parts.append(ChainUpper("from", m))
    return SymbolicUpperSet(P, tuple(parts))


def well_founded_recursion(P: ForestPoset, G: Callable, order: Iterable | None = None) -> dict:
    """Return the unique F with ``F(x) = G(x, F restricted to the strict down-set of x)``.

    ``order`` may supply any linear extension; the result does not depend on it.
    """
    if not isinstance(P, ForestPoset):
        raise NotFinite("recursion requires a finite poset")
    order = P.linear_extension() if order is None else tuple(order)
    if sorted(order, key=P.sort_key) != sorted(P.elements, key=P.sort_key):
        raise ValueError("order must list every element exactly once")
    F: dict = {}
    for x in order:
        below = P.strict_down(x)
        if any(y not in F for y in below):
            raise ValueError(f"order is not a linear extension at {x!r}")
        try:
            F[x] = G(x, MappingProxyType({y: F[y] for y in below}))
        except Exception as exc:
            raise CallbackFailure(f"callback failed at {x!r}: {exc}") from exc
    return F


# -- constructors -------------------------------------------------------------


def chain(ids: Iterable[str], name: str | None = None) -> ForestPoset:
    ids = list(ids)
    return ForestPoset({x: (ids[i - 1] if i else None) for i, x in enumerate(ids)}, name=name)


def antichain(ids: Iterable[str], name: str | None = None) -> ForestPoset:
    return ForestPoset({x: None for x in ids}, name=name)


@functools.lru_cache(maxsize=None)
def _forest_shapes(n: int) -> tuple:
    # a forest shape is a nonincreasing tuple of tree shapes; a tree shape is
    # the forest shape of its root's children
    if n == 0:
        return ((),)
    trees = sorted(
        {(s, f) for s in range(1, n + 1) for f in _forest_shapes(s - 1)},
        reverse=True,
    )
    out = []

    def build(remaining, start, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(trees)):
            size, _ = trees[i]
            if size <= remaining:
                acc.append(trees[i])
                build(remaining - size, i, acc)
                acc.pop()

    build(n, 0, [])
    return tuple(out)


def unlabeled_forests(n: int) -> list[ForestPoset]:
    """Every forest on ``n`` elements up to isomorphism, labelled x0, x1, ... in preorder."""
    result = []
    for shape in _forest_shapes(n):
        parent: dict = {}
        counter = [0]

        def place(forest, p):
            for _, sub in forest:
                x = f"x{counter[0]}"
                counter[0] += 1
                parent[x] = p
                place(sub, x)

        place(shape, None)
        result.append(ForestPoset(parent))
    return result


def parse_forest_dsl(text: str, name: str | None = None) -> ForestPoset:
    """Parse lines ``a < b`` and lone identifiers; ``#`` starts a comment."""
    relation = []
    elements = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("<")]
        if any(not p or any(ch.isspace() for ch in p) for p in parts):
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
        if len(parts) == 1:
            elements.append(parts[0])
        elif len(parts) == 2:
            relation.append((parts[0], parts[1]))
        else:
            raise ParseError(f"line {lineno}: one relation per line")
    return validate_forest(relation, elements, name=name)


def format_forest_dsl(P: ForestPoset) -> str:
    lines = []
    for x in P.elements:
        p = P.parent(x)
        if p is not None:
            lines.append(f"{p} < {x}")
        elif not P.children(x):
            lines.append(x)
    return "".join(line + "\n" for line in lines)
