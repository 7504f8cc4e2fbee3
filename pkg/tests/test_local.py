from fractions import Fraction

import pytest

from lexlat import (
    LexElement,
    antichain,
    basis,
    chain,
    coordinate_functional,
    cut,
    decompose_principal,
    inf,
    local_ideals,
    local_projection,
    principal_ideal,
    representation,
    sup,
    validate_forest,
    verify_compatibility,
    zero,
)
from lexlat.errors import UnknownElement, ZeroElement
from lexlat.local import ProjectionTable, pairwise_disjoint

from gen import all_forests, random_element, random_forest, seeded

AB = chain("ab")
XY = antichain("xy")
V = validate_forest([("a", "b"), ("a", "c")])


def E(P, **kw):
    return LexElement(P, kw)


def test_local_ideals_examples():
    la, lb = local_ideals(AB)
    assert (la.base, la.maximal_ideal.members) == ("a", {"b"})
    assert (lb.base, lb.maximal_ideal.members) == ("b", frozenset())
    lx, ly = local_ideals(XY)
    assert not (lx.handle.members & ly.handle.members)
    assert local_ideals(antichain("")) == []


def test_local_ideal_invariants():
    for P in all_forests(6):
        for L in local_ideals(P):
            assert L.handle.members == P.up(L.base)
            assert L.maximal_ideal.members == L.handle.members - {L.base}
            assert principal_ideal(L.unit) == L.handle


def test_decompose_examples():
    parts = decompose_principal(E(V, b=2, c=-3))
    assert [(L.handle.members, f) for L, f in parts] == [
        ({"b"}, E(V, b=2)),
        ({"c"}, E(V, c=-3)),
    ]
    f = E(AB, a=1, b=1)
    assert [g for _, g in decompose_principal(f)] == [f]
    assert len(decompose_principal(E(XY, x=1, y=1))) == 2
    with pytest.raises(ZeroElement):
        decompose_principal(zero(V))


def test_decompose_properties():
    rng = seeded(3)
    for _ in range(200):
        P = random_forest(rng, rng.randint(1, 9))
        f = random_element(rng, P)
        if not f:
            continue
        parts = decompose_principal(f)
        comps = [g for _, g in parts]
        total = zero(P)
        for g in comps:
            total = total + g
        assert total == f
        assert pairwise_disjoint(comps)
        for i, (L1, g1) in enumerate(parts):
            for L2, g2 in parts[i + 1 :]:
                assert not (L1.handle.members & L2.handle.members)
                assert inf(abs(g1), abs(g2)) == zero(P)


def test_projection_examples():
    assert local_projection("b", E(AB, a=1, b=4)) == E(AB, b=4)
    f = E(V, a=2, b=-1, c=5)
    assert local_projection("a", f) == f
    assert local_projection("b", E(V, c=1)) == zero(V)
    with pytest.raises(UnknownElement):
        local_projection("z", f)


def test_cut_examples():
    assert cut("b", E(AB, a=1, b=4)) == E(AB, a=1)
    f = E(V, a=2, b=-1, c=5)
    assert cut("a", f) == zero(V)
    for x in V.elements:
        assert cut(x, f) + local_projection(x, f) == f
    with pytest.raises(UnknownElement):
        cut("z", f)


def test_table_agrees_with_functions():
    rng = seeded(4)
    for _ in range(50):
        P = random_forest(rng, rng.randint(1, 8))
        T = ProjectionTable(P)
        f = random_element(rng, P)
        for x in P.elements:
            assert T.project(x, f) == local_projection(x, f)
            assert T.cut(x, f) == cut(x, f)


def test_compatibility_examples():
    for P in (AB, V, XY):
        rep = verify_compatibility(P)
        assert rep.passed, rep.text()
    lines = verify_compatibility(V).lines
    assert "PAIR (b,c) AXIOM 2 PASS" in lines
    assert "PAIR (a,b) AXIOM 3 PASS" in verify_compatibility(AB).lines


def test_compatibility_detects_broken_table():
    P = AB
    T = ProjectionTable(P)
    T.masks["a"] = frozenset({"a"})  # not a mask onto the whole local ideal
    rep = verify_compatibility(P, table=T)
    assert not rep.passed
    assert any(line.endswith("}") and "FAIL" in line for line in rep.lines)


def test_projection_laws():
    rng = seeded(5)
    for _ in range(150):
        P = random_forest(rng, rng.randint(1, 8))
        f = random_element(rng, P)
        for x in P.elements:
            q = local_projection(x, f)
            assert local_projection(x, q) == q
            assert q.support <= P.up(x)
            # masking commutes with abs once nothing below x carries mass
            if not (f.support & P.strict_down(x)):
                assert local_projection(x, abs(f)) == abs(q)


def test_projection_is_not_a_lattice_map_in_general():
    P = chain("al")
    f = E(P, a=1, l=Fraction(-4, 5))
    assert abs(f) == f
    assert local_projection("l", abs(f)) == E(P, l=Fraction(-4, 5))
    assert abs(local_projection("l", f)) == E(P, l=Fraction(4, 5))


def test_mask_order_reversal():
    for P in all_forests(6):
        T = ProjectionTable(P)
        for x in P.elements:
            for y in P.elements:
                assert P.leq(x, y) == (T[y] <= T[x])


def test_coordinate_functional_examples():
    f = E(AB, a=3, b=-1)
    assert coordinate_functional("a", f) == 3
    assert coordinate_functional("b", E(AB, a=1)) == 0
    for x in V.elements:
        assert representation(basis(V, x)) == basis(V, x)
    with pytest.raises(UnknownElement):
        coordinate_functional("z", f)


def test_representation_is_lattice_homomorphism():
    rng = seeded(6)
    for _ in range(200):
        P = random_forest(rng, rng.randint(1, 8))
        f, g = random_element(rng, P), random_element(rng, P)
        assert representation(f) == f
        assert representation(sup(f, g)) == sup(representation(f), representation(g))
        assert representation(inf(f, g)) == inf(representation(f), representation(g))


def test_units_plus_radical_span():
    rng = seeded(8)
    for _ in range(200):
        P = random_forest(rng, rng.randint(1, 8))
        f = random_element(rng, P)
        roots = P.roots
        head = zero(P)
        for x in roots:
            head = head + basis(P, x) * coordinate_functional(x, f)
        rest = f - head
        assert not (rest.support & set(roots))
