"""Text and JSON formats: poset literals, elements, ideals, germs, order files."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .lex import LexElement, format_rational, parse_rational
from .poset import (
    ForestPoset,
    OmegaChain,
    OmegaStarChain,
    SymbolicPoset,
    UpperSet,
    ZetaChain,
    format_forest_dsl,
    parse_forest_dsl,
)
from .roots import DEFAULT_GRID, ExponentSet, Germ, GridK, RootFunction

__all__ = [
    "parse_poset_spec",
    "parse_upper_set",
    "element_to_json",
    "element_from_json",
    "ideal_to_json",
    "ideal_from_json",
    "germ_to_json",
    "germ_from_json",
    "parse_exponent_set",
    "parse_order_file",
    "dumps",
    "load_json",
]

_CHAIN_LITERALS = {"omega": OmegaChain, "omega_star": OmegaStarChain, "zeta": ZetaChain}


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def parse_poset_spec(spec: str, base_dir=None):
    """Parse ``omega``, ``omega_star``, ``zeta``, ``file:<path>`` joined by ``+``.

    A purely finite result comes back as a ForestPoset, anything else as a
    SymbolicPoset.  Relative file paths resolve against ``base_dir``.
    """
    comps = []
    for piece in spec.split("+"):
        piece = piece.strip()
        if piece in _CHAIN_LITERALS:
            comps.append(_CHAIN_LITERALS[piece]())
        elif piece.startswith("file:"):
            path = Path(piece[5:])
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            try:
                text = path.read_text()
            except OSError as exc:
                raise ParseError(f"cannot read poset file {path}: {exc.strerror}") from None
            comps.append(parse_forest_dsl(text))
        else:
            raise ParseError(f"unknown poset literal {piece!r}")
    P = SymbolicPoset(comps, name=spec)
    if P.is_finite:
        return P.as_forest(name=spec)
    return P


def parse_upper_set(P: ForestPoset, text: str) -> UpperSet:
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    members = [t.strip() for t in body.split(",") if t.strip() and t.strip() != "∅"]
    for m in members:
        P.parse_element(m)
    return UpperSet(P, frozenset(members))


def _poset_ref(P):
    """A spec string when the poset came from one, else the forest inline."""
    name = getattr(P, "name", None)
    if name and all(
        t.strip() in _CHAIN_LITERALS or t.strip().startswith("file:") for t in name.split("+")
    ):
        return name
    if isinstance(P, ForestPoset):
        return {"forest": format_forest_dsl(P)}
    raise ParseError("poset has neither a spec nor a finite description")


def _resolve_poset(ref, base_dir):
    if isinstance(ref, dict):
        try:
            return parse_forest_dsl(ref["forest"])
        except (KeyError, TypeError):
            raise ParseError("inline poset needs a 'forest' text field") from None
    if not isinstance(ref, str):
        raise ParseError("poset must be a spec string or an inline forest")
    return parse_poset_spec(ref, base_dir)


def element_to_json(f: LexElement) -> dict:
    P = f.poset
    return {
        "poset": _poset_ref(P),
        "coeffs": {P.format_element(x): format_rational(a) for x, a in f.coeffs.items()},
    }


def element_from_json(obj: dict, base_dir=None, poset=None) -> LexElement:
    try:
        P = poset if poset is not None else _resolve_poset(obj["poset"], base_dir)
        coeffs = obj["coeffs"]
    except KeyError as exc:
        raise ParseError(f"element JSON lacks field {exc}") from None
    if not isinstance(coeffs, dict):
        raise ParseError("element coeffs must be an object")
    try:
        return LexElement(P, {P.parse_element(k): parse_rational(v) for k, v in coeffs.items()})
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad coefficient: {exc}") from None


def ideal_to_json(U: UpperSet) -> dict:
    return {"poset": _poset_ref(U.poset), "upper_set": U.sorted_members()}


def ideal_from_json(obj: dict, base_dir=None, poset=None) -> UpperSet:
    P = poset if poset is not None else _resolve_poset(obj["poset"], base_dir)
    return UpperSet(P, frozenset(P.parse_element(x) for x in obj["upper_set"]))


def _terms_to_json(g: Germ) -> list:
    return [{"exp": format_rational(s), "coeff": format_rational(c)} for s, c in g.terms]


def _terms_from_json(items) -> Germ:
    if not isinstance(items, list):
        raise ParseError("terms must be a list")
    try:
        return Germ([(parse_rational(t["exp"]), parse_rational(t["coeff"])) for t in items])
    except (KeyError, ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad germ term: {exc}") from None


def germ_to_json(f: RootFunction) -> dict:
    out = {"terms": _terms_to_json(f.germ), "cutoff": f.cutoff, "overrides": {}}
    for n, g in sorted(f.overrides.items()):
        if g.exponents in ((), (0,)):
            out["overrides"][str(n)] = format_rational(g.constant_term)
        else:
            out["overrides"][str(n)] = _terms_to_json(g)
    if f.S is not None:
        out["S"] = [format_rational(s) for s in f.S]
    if f.grid != DEFAULT_GRID:
        out["grid"] = list(f.grid.coeffs)
    return out


def germ_from_json(obj: dict) -> RootFunction:
    germ = _terms_from_json(obj.get("terms", []))
    overrides = {}
    for key, v in (obj.get("overrides") or {}).items():
        try:
            n = int(key)
        except ValueError:
            raise ParseError(f"override key {key!r} is not an integer") from None
        overrides[n] = _terms_from_json(v) if isinstance(v, list) else Germ.constant(parse_rational(v))
    S = ExponentSet(obj["S"]) if "S" in obj else None
    grid = GridK(tuple(obj["grid"])) if "grid" in obj else DEFAULT_GRID
    try:
        return RootFunction(germ, int(obj.get("cutoff", 0)), overrides, S, grid)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_exponent_set(text: str) -> ExponentSet:
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    try:
        return ExponentSet(t for t in body.split(",") if t.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad exponent set {text!r}: {exc}") from None


def parse_order_file(text: str) -> list[tuple[str, Fraction]]:
    """Arrival-ordered lines ``[label] key``; the keys' rational order is the oracle."""
    out = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) > 2:
            raise ParseError(f"line {lineno}: expected '[label] key'")
        label, key = (line[0], line[-1])
        try:
            value = Fraction(key)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: {key!r} is not a rational") from None
        if label in seen:
            raise ParseError(f"line {lineno}: duplicate label {label!r}")
        seen.add(label)
        out.append((label, value))
    return out
