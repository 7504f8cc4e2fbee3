"""Golden CLI invocations: byte-identical across runs and equal to the committed fixtures.

Set LEXLAT_REGEN_GOLDEN=1 to rewrite the fixtures after reviewing a change.
"""

import io
import os
from pathlib import Path

import pytest

from lexlat.cli import run

HERE = Path(__file__).parent / "golden"
INPUTS = HERE / "inputs"
EXPECTED = HERE / "expected"

# (fixture name, argv, exit status); one or more per subcommand
CASES = [
    ("poset_check", ["poset", "check", "file:forest5.poset"], 0),
    ("poset_classify_omega", ["poset", "classify", "omega"], 0),
    ("poset_classify_union", ["poset", "classify", "file:vee.poset+omega_star"], 0),
    ("ideals_list", ["ideals", "list", "file:chain2.poset"], 0),
    ("ideals_classify", ["ideals", "classify", "file:vee.poset", "{b,c}"], 0),
    ("ideals_spectrum", ["ideals", "spectrum", "file:forest5.poset"], 0),
    ("elem_sup", ["elem", "op", "sup", "elem_f.json", "elem_g.json"], 0),
    ("elem_abs_json", ["--format", "json", "elem", "op", "abs", "elem_g.json"], 0),
    ("proj_verify", ["proj", "verify", "file:vee.poset", "--random", "5"], 0),
    ("decompose", ["decompose", "elem_f.json"], 0),
    ("radical", ["radical", "file:forest5.poset"], 0),
    ("quotient", ["quotient", "file:vee.poset", "{c}"], 0),
    ("root_sup", ["root", "op", "sup", "germ_t.json", "germ_t2.json"], 0),
    ("root_abs_json", ["root", "op", "abs", "germ_abs.json", "--format", "json"], 0),
    ("root_psi", ["root", "psi", "germ_psi.json"], 0),
    ("root_spectrum", ["root", "spectrum", "1,2", "--points", "2"], 0),
    ("root_classify", ["root", "classify", "reciprocal_naturals"], 0),
    ("embed", ["embed", "order.txt"], 0),
    ("export_hasse", ["export", "dot", "hasse", "file:forest5.poset"], 0),
    ("export_ideals", ["export", "dot", "ideals", "file:vee.poset"], 0),
    ("error_not_upper", ["ideals", "classify", "file:vee.poset", "{a}"], 1),
]


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(INPUTS)
    try:
        status = run(argv, out, err)
    finally:
        os.chdir(cwd)
    return status, out.getvalue() + ("--- stderr\n" + err.getvalue() if err.getvalue() else "")


@pytest.mark.parametrize("name, argv, status", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, status):
    first = invoke(argv)
    second = invoke(argv)
    assert first == second
    assert first[0] == status
    path = EXPECTED / f"{name}.txt"
    if os.environ.get("LEXLAT_REGEN_GOLDEN"):
        path.write_text(first[1])
    assert path.read_text() == first[1]


def test_every_subcommand_covered():
    covered = {tuple(a for a in argv if not a.startswith("-") and a not in ("json",))[:2] for _, argv, _ in CASES}
    names = {c[0] if c[0] in ("decompose", "radical", "quotient", "embed") else c for c in covered}
    wanted = {
        ("poset", "check"), ("poset", "classify"), ("ideals", "list"), ("ideals", "classify"),
        ("ideals", "spectrum"), ("elem", "op"), ("proj", "verify"), "decompose", "radical",
        "quotient", ("root", "op"), ("root", "psi"), ("root", "spectrum"), "embed", ("export", "dot"),
    }
    assert wanted <= names
