"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (``ErrorName: message`` on
stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import ideals as I
from . import io
from .dot import hasse_dot, ideal_lattice_dot
from .errors import LexlatError, NotFinite, ParseError
from .lex import format_rational, inf, sup
from .local import decompose_principal, verify_compatibility
from .poset import ForestPoset, classify_poset, format_forest_dsl
from .radicals import precision_cap
from .roots import (
    classify_RS,
    embed_total_order,
    psi,
    rf_abs,
    rf_add,
    rf_inf,
    rf_sup,
    spectrum_RS,
)


class UsageError(Exception):
    pass


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _finite(P) -> ForestPoset:
    if isinstance(P, ForestPoset):
        return P
    raise NotFinite("this command needs a finite poset (file:<path>)")


def _read_json(path: str) -> tuple[dict, Path]:
    p = Path(path)
    try:
        return io.load_json(p), p.parent
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _read_element(path: str):
    obj, base = _read_json(path)
    return io.element_from_json(obj, base)


def _read_germ(path: str):
    obj, _ = _read_json(path)
    return io.germ_from_json(obj)


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.parts: list[str] = []

    def text(self, s: str) -> None:
        self.parts.append(s if s.endswith("\n") else s + "\n")

    def emit(self, text_fn, json_fn=None, dot_fn=None) -> None:
        if self.fmt == "json":
            if json_fn is None:
                raise UsageError("--format json is not available for this command")
            self.parts.append(io.dumps(json_fn()))
        elif self.fmt == "dot":
            if dot_fn is None:
                raise UsageError("--format dot is not available for this command")
            self.parts.append(dot_fn())
        else:
            self.text(text_fn())


# -- commands -------------------------------------------------------------------


def cmd_poset_check(args, out: Output) -> int:
    P = io.parse_poset_spec(args.spec)
    flags = classify_poset(P)
    info = {
        "poset": args.spec,
        "well_founded": flags.well_founded,
        "reverse_well_founded": flags.reverse_well_founded,
        "finite_width": flags.finite_width,
    }
    lines = [f"poset: {args.spec}"]
    if isinstance(P, ForestPoset):
        info.update(
            kind="finite forest",
            elements=list(P.elements),
            roots=list(P.roots),
            maximal=list(P.leaves),
            width=P.width,
        )
        lines += [
            "kind: finite forest",
            f"elements: {len(P)}",
            f"roots: {' '.join(P.roots)}",
            f"maximal: {' '.join(P.leaves)}",
            f"width: {P.width}",
        ]
    else:
        comps = [getattr(c, "literal", "finite") for c in P.components]
        info.update(kind="symbolic", components=comps)
        lines += ["kind: symbolic", f"components: {' + '.join(comps)}"]
    lines.append(
        f"well_founded={_flag(flags.well_founded)} "
        f"reverse_well_founded={_flag(flags.reverse_well_founded)} "
        f"finite_width={_flag(flags.finite_width)}"
    )
    out.emit(lambda: "\n".join(lines), lambda: info, lambda: hasse_dot(_finite(P)))
    return 0


def cmd_poset_classify(args, out: Output) -> int:
    P = io.parse_poset_spec(args.spec)
    flags = classify_poset(P)
    verdict = I.lex_classification(flags)
    text = "\n".join(
        [
            f"artinian={_flag(verdict.artinian)} noetherian={_flag(verdict.noetherian)}",
            "# Lex(X) is Artinian iff X is reverse well-founded with finite width: "
            f"reverse_well_founded={_flag(flags.reverse_well_founded)} finite_width={_flag(flags.finite_width)}",
            "# Lex(X) is Noetherian iff X is well-founded with finite width: "
            f"well_founded={_flag(flags.well_founded)} finite_width={_flag(flags.finite_width)}",
        ]
    )
    out.emit(
        lambda: text,
        lambda: {"poset": args.spec, "artinian": verdict.artinian, "noetherian": verdict.noetherian},
    )
    return 0


def _ideal_line(h) -> str:
    glyphs = I.classify_ideal(h).glyphs()
    return repr(h) + (f"  [{glyphs}]" if glyphs else "")


def cmd_ideals_list(args, out: Output) -> int:
    P = _finite(io.parse_poset_spec(args.spec))
    handles = I.enumerate_ideals(P)
    out.emit(
        lambda: "\n".join(_ideal_line(h) for h in handles),
        lambda: [io.ideal_to_json(h) for h in handles],
        lambda: ideal_lattice_dot(P),
    )
    return 0


def cmd_ideals_classify(args, out: Output) -> int:
    P = _finite(io.parse_poset_spec(args.spec))
    U = io.parse_upper_set(P, args.upper_set)
    c = I.classify_ideal(U)
    F = sorted(c.generating_antichain, key=P.sort_key)
    rows = [
        ("upper_set", repr(U)),
        ("generating_antichain", "{" + ",".join(F) + "}"),
        ("principal", _flag(c.is_principal)),
        ("local", _flag(c.is_local)),
        ("maximal", _flag(c.is_maximal)),
        ("minimal_ideal", _flag(c.is_minimal_ideal)),
        ("prime", _flag(c.is_prime)),
        ("proper", _flag(c.is_proper)),
    ]
    data = io.ideal_to_json(U)
    data.update(
        generating_antichain=F,
        principal=c.is_principal,
        local=c.is_local,
        maximal=c.is_maximal,
        minimal_ideal=c.is_minimal_ideal,
        prime=c.is_prime,
        proper=c.is_proper,
    )
    out.emit(lambda: "\n".join(f"{k}={v}" for k, v in rows), lambda: data)
    return 0


def cmd_ideals_spectrum(args, out: Output) -> int:
    P = _finite(io.parse_poset_spec(args.spec))
    primes = I.prime_spectrum(P)
    report = I.min_primes_finite_codim(P)

    def text():
        lines = [f"primes: {len(primes)}"]
        lines += [f"  {h!r}" for h in primes]
        lines.append(f"minimal primes (finite codimension: {_flag(report.verdict)}):")
        lines += [f"  {h!r} codim={k}" for h, k in report.minimal_primes]
        return "\n".join(lines)

    out.emit(
        text,
        lambda: {
            "primes": [io.ideal_to_json(h) for h in primes],
            "minimal_primes": [
                {"ideal": io.ideal_to_json(h), "codimension": k} for h, k in report.minimal_primes
            ],
            "finite_codimension": report.verdict,
        },
    )
    return 0


def cmd_elem_op(args, out: Output) -> int:
    f = _read_element(args.elem)
    if args.op == "abs":
        if args.elem2 is not None:
            raise UsageError("abs takes one element")
        r = abs(f)
    else:
        if args.elem2 is None:
            raise UsageError(f"{args.op} takes two elements")
        g = _read_element(args.elem2)
        r = {"sup": sup, "inf": inf, "add": lambda a, b: a + b}[args.op](f, g)
    out.emit(lambda: str(r), lambda: io.element_to_json(r))
    return 0


def cmd_proj_verify(args, out: Output) -> int:
    P = _finite(io.parse_poset_spec(args.spec))
    report = verify_compatibility(P, n_random=args.random, seed=args.seed)
    out.emit(
        lambda: report.text().rstrip("\n") or "no local ideals",
        lambda: {"passed": report.passed, "lines": report.lines},
    )
    return 0 if report.passed else 1


def cmd_decompose(args, out: Output) -> int:
    f = _read_element(args.elem)
    parts = decompose_principal(f)
    out.emit(
        lambda: "\n".join(f"up({L.base}): {g}" for L, g in parts),
        lambda: [
            {"base": L.base, "local_ideal": io.ideal_to_json(L.handle), "component": io.element_to_json(g)}
            for L, g in parts
        ],
    )
    return 0


def cmd_radical(args, out: Output) -> int:
    P = _finite(io.parse_poset_spec(args.spec))
    R = I.radical(P)
    out.emit(lambda: repr(R), lambda: io.ideal_to_json(R))
    return 0


def cmd_quotient(args, out: Output) -> int:
    P = _finite(io.parse_poset_spec(args.spec))
    U = io.parse_upper_set(P, args.upper_set)
    Q, _ = I.quotient_poset(P, U)
    out.emit(
        lambda: format_forest_dsl(Q).rstrip("\n") or "# empty poset",
        lambda: {"elements": list(Q.elements), "parent": {x: Q.parent(x) for x in Q.elements}},
        lambda: hasse_dot(Q, name="quotient"),
    )
    return 0


def _germ_text(f) -> str:
    lines = [f"germ: {f.germ}", f"cutoff: {f.cutoff}"]
    for n, g in sorted(f.overrides.items()):
        lines.append(f"f(alpha_{n}) = {g}  at t={format_rational(f.grid.alpha(n))}")
    return "\n".join(lines)


def cmd_root_op(args, out: Output) -> int:
    bits = args.precision_bits
    f = _read_germ(args.germ)
    if args.op == "abs":
        if args.germ2 is not None:
            raise UsageError("abs takes one germ")
        r = rf_abs(f, bits)
    else:
        if args.germ2 is None:
            raise UsageError(f"{args.op} takes two germs")
        g = _read_germ(args.germ2)
        if args.op == "add":
            r = rf_add(f, g)
        else:
            r = (rf_sup if args.op == "sup" else rf_inf)(f, g, bits)
    out.emit(lambda: _germ_text(r), lambda: io.germ_to_json(r))
    return 0


def cmd_root_psi(args, out: Output) -> int:
    f = _read_germ(args.germ)
    e = psi(f)
    out.emit(lambda: str(e), lambda: io.element_to_json(e))
    return 0


def _exponents(text: str):
    # bare names are families (unknown ones raise UnknownFamily downstream)
    return text if text.isidentifier() else io.parse_exponent_set(text)


def cmd_root_spectrum(args, out: Output) -> int:
    S = _exponents(args.S)
    spec = spectrum_RS(S, args.points)

    def upper(u):
        return "{" + ",".join(format_rational(s) for s in u) + "}"

    def text():
        lines = [f"S = {args.S}" if spec.family else f"S = {upper(spec.S)}"]
        lines.append("M_0 = {f : f(0) = 0}")
        lines.append("  primes contained in M_0 <-> upper sets of S (a chain):")
        if spec.family:
            lines += [f"    {d}" for d in spec.chain]
            lines.append("    Empty <-> P_0 (functions vanishing near 0)")
        else:
            top = len(spec.chain) - 1
            for i, u in enumerate(reversed(spec.chain)):
                tag = "  = M_0" if i == 0 else ""
                tag += "  = P_0" if i == top else ""
                lines.append(f"    {upper(u)}{tag}")
        lines.append("point maximal ideals (each the only prime below itself):")
        for n, a in spec.points:
            lines.append(f"  M_alpha_{n} = {{f : f({format_rational(a)}) = 0}}")
        return "\n".join(lines)

    def data():
        d = {
            "points": [{"n": n, "alpha": format_rational(a)} for n, a in spec.points],
        }
        if spec.family:
            d.update(family=spec.family, chain=list(spec.chain))
        else:
            d.update(S=[format_rational(s) for s in spec.S], chain=[[format_rational(s) for s in u] for u in spec.chain])
        return d

    out.emit(text, data)
    return 0


def cmd_root_classify(args, out: Output) -> int:
    S = _exponents(args.S)
    c = classify_RS(S)
    out.emit(
        lambda: f"prime_artinian={_flag(c.prime_artinian)} prime_noetherian={_flag(c.prime_noetherian)}",
        lambda: {"S": args.S, "prime_artinian": c.prime_artinian, "prime_noetherian": c.prime_noetherian},
    )
    return 0


def cmd_embed(args, out: Output) -> int:
    try:
        text = Path(args.order_file).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.order_file}: {exc.strerror}") from None
    rows = io.parse_order_file(text)
    keys = dict(rows)
    values = embed_total_order([label for label, _ in rows], lambda a, b: keys[a] < keys[b])
    out.emit(
        lambda: "\n".join(f"{label} {format_rational(values[label])}" for label, _ in rows),
        lambda: {label: format_rational(values[label]) for label, _ in rows},
    )
    return 0


def cmd_export_dot(args, out: Output) -> int:
    P = _finite(io.parse_poset_spec(args.spec))
    out.text(hasse_dot(P) if args.what == "hasse" else ideal_lattice_dot(P))
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default=argparse.SUPPRESS)
    common.add_argument(
        "--precision-bits", type=int, default=argparse.SUPPRESS, help="interval precision cap"
    )

    parser = argparse.ArgumentParser(prog="lexlat", description="Lexicographic vector lattice toolkit")
    parser.add_argument("--format", choices=("text", "json", "dot"), default="text")
    parser.add_argument("--precision-bits", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, func, **kw):
        p = subparsers.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    poset = sub.add_parser("poset").add_subparsers(dest="action", required=True)
    leaf(poset, "check", cmd_poset_check).add_argument("spec")
    leaf(poset, "classify", cmd_poset_classify).add_argument("spec")

    ideals = sub.add_parser("ideals").add_subparsers(dest="action", required=True)
    leaf(ideals, "list", cmd_ideals_list).add_argument("spec")
    p = leaf(ideals, "classify", cmd_ideals_classify)
    p.add_argument("spec")
    p.add_argument("upper_set")
    leaf(ideals, "spectrum", cmd_ideals_spectrum).add_argument("spec")

    elem = sub.add_parser("elem").add_subparsers(dest="action", required=True)
    p = leaf(elem, "op", cmd_elem_op)
    p.add_argument("op", choices=("sup", "inf", "abs", "add"))
    p.add_argument("elem")
    p.add_argument("elem2", nargs="?")

    proj = sub.add_parser("proj").add_subparsers(dest="action", required=True)
    p = leaf(proj, "verify", cmd_proj_verify)
    p.add_argument("spec")
    p.add_argument("--random", type=int, default=50, help="random test elements per pair")
    p.add_argument("--seed", type=int, default=0)

    leaf(sub, "decompose", cmd_decompose).add_argument("elem")
    leaf(sub, "radical", cmd_radical).add_argument("spec")
    p = leaf(sub, "quotient", cmd_quotient)
    p.add_argument("spec")
    p.add_argument("upper_set")

    root = sub.add_parser("root").add_subparsers(dest="action", required=True)
    p = leaf(root, "op", cmd_root_op)
    p.add_argument("op", choices=("sup", "inf", "abs", "add"))
    p.add_argument("germ")
    p.add_argument("germ2", nargs="?")
    leaf(root, "psi", cmd_root_psi).add_argument("germ")
    p = leaf(root, "spectrum", cmd_root_spectrum)
    p.add_argument("S", help="comma separated exponents or a family name")
    p.add_argument("--points", type=int, default=3)
    leaf(root, "classify", cmd_root_classify).add_argument("S")

    leaf(sub, "embed", cmd_embed).add_argument("order_file")

    export = sub.add_parser("export").add_subparsers(dest="action", required=True)
    p = leaf(export, "dot", cmd_export_dot)
    p.add_argument("what", choices=("hasse", "ideals"))
    p.add_argument("spec")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.precision_bits = precision_cap(args.precision_bits)
    except ValueError:
        stderr.write("lexlat: error: LEXLAT_PRECISION_BITS must be an integer\n")
        return 2
    out = Output(args.format)
    try:
        status = args.func(args, out)
    except UsageError as exc:
        stderr.write(f"lexlat: error: {exc}\n")
        return 2
    except LexlatError as exc:
        stderr.write(f"{exc.name}: {exc}\n")
        return 1
    stdout.write("".join(out.parts))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
