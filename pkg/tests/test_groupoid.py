"""Finite groupoids: axiom checker, nerves against a brute-force oracle,
degeneracy flags, and builders."""

import itertools

import pytest

from ruthvb.errors import CompositionError, StructureError
from ruthvb.groupoid import (FiniteGroupoid, cyclic_groupoid, degeneracy_positions,
                             disjoint_union, nerve, pair_groupoid,
                             transitive_groupoid, trivial_groupoid,
                             validate_groupoid, z2_groupoid)

ALL_BUILDERS = [
    z2_groupoid,
    lambda: cyclic_groupoid(3),
    lambda: trivial_groupoid(["a", "b"]),
    lambda: pair_groupoid(["x", "y"]),
    lambda: transitive_groupoid(["x", "y"], 2),
    lambda: disjoint_union(z2_groupoid(), pair_groupoid(["x", "y"])),
]


@pytest.mark.parametrize("build", ALL_BUILDERS)
def test_builders_valid(build):
    assert validate_groupoid(build()).passed


def test_pair_groupoid_relations():
    g = pair_groupoid(["x", "y"])
    a = next(a for a in g.arrows if g.src[a] == "x" and g.tgt[a] == "y")
    b = next(a for a in g.arrows if g.src[a] == "y" and g.tgt[a] == "x")
    assert g.compose(b, a) == g.unit["x"]
    assert g.compose(a, b) == g.unit["y"]


def test_invalid_inverse_reported():
    g = z2_groupoid()
    broken = FiniteGroupoid(g.objects, g.arrows, g.src, g.tgt, g.unit, g.comp,
                            {"e": "e", "g": "e"})
    rep = validate_groupoid(broken)
    assert not rep.passed
    assert any("inverse" in e.check for e in rep.entries)


def test_malformed_tables_raise():
    g = z2_groupoid()
    with pytest.raises(StructureError):
        FiniteGroupoid(g.objects, g.arrows, g.src, g.tgt, g.unit,
                       {("e", "e"): "e"}, g.inv)   # missing composition entries
    with pytest.raises(StructureError):
        FiniteGroupoid(g.objects, g.arrows, {"e": "*", "g": "??"}, g.tgt,
                       g.unit, g.comp, g.inv)      # unknown endpoint


def test_compose_error():
    g = pair_groupoid(["x", "y"])
    a = next(a for a in g.arrows if g.src[a] == "x" and g.tgt[a] == "y")
    with pytest.raises(CompositionError):
        g.compose(a, a)


def test_nerve_z2_degree2():
    g = z2_groupoid()
    n = nerve(g, 2)
    assert n.tuples == (("e", "e"), ("e", "g"), ("g", "e"), ("g", "g"))


def test_nerve_degree0_and_1():
    g = pair_groupoid(["x", "y"])
    assert nerve(g, 1).tuples == tuple((a,) for a in g.arrows)
    assert nerve(g, 0).tuples == (("x",), ("y",))


@pytest.mark.parametrize("build", ALL_BUILDERS)
@pytest.mark.parametrize("degree", [1, 2, 3])
def test_nerve_against_brute_force(build, degree):
    g = build()
    brute = tuple(sorted(
        tup for tup in itertools.product(g.arrows, repeat=degree)
        if all(g.src[tup[i]] == g.tgt[tup[i + 1]] for i in range(degree - 1))))
    assert g.nerve_tuples(degree) == brute


@pytest.mark.parametrize("build", ALL_BUILDERS)
def test_tuple_endpoints_match_composite(build):
    g = build()
    for tup in g.nerve_tuples(3):
        full = g.compose_tuple(tup)
        assert g.tuple_target(tup, 3) == g.tgt[full]
        assert g.tuple_source(tup, 3) == g.src[full]


def test_degeneracy_flags():
    g = z2_groupoid()
    n = nerve(g, 2)
    flags = dict(zip(n.tuples, degeneracy_positions(n)))
    assert flags[("g", "g")] is False
    assert flags[("e", "g")] and flags[("g", "e")] and flags[("e", "e")]
    n1 = nerve(g, 1)
    flags1 = dict(zip(n1.tuples, degeneracy_positions(n1)))
    assert flags1[("e",)] is True and flags1[("g",)] is False
