"""Weak actions and weak representations: validators, pentagon mutations,
action groupoids (both flavors), and equivariant maps."""

import random
from fractions import Fraction

import pytest

from ruthvb import linalg
from ruthvb.errors import ValidationError
from ruthvb.groupoid import trivial_groupoid, validate_groupoid, z2_groupoid
from ruthvb.harness import generators as gen
from ruthvb.harness.fixtures import (pair_strict_ruth, sign_twisted_ruth,
                                     z2_ruth)
from ruthvb.linalg import LinearMap
from ruthvb.ruth import compose_morphisms
from ruthvb.semidirect import semidirect
from ruthvb.vb import validate_vb, validate_vb_map, compose_vb_maps
from ruthvb.weak import (WeakAction, WeakRepresentation,
                         act_on_morphism, action_groupoid, compose_equivariant,
                         identity_equivariant, validate_equivariant,
                         validate_weak_action, validate_weak_representation)
from ruthvb.equivalences import (reconstruct_equivariant, wrep_from_ruth,
                                 wrep_from_ruth_morphism)


def swap_action_on_two_points():
    G = z2_groupoid()
    H = trivial_groupoid(["p", "q"])
    swap = {"p": "q", "q": "p"}
    a0, a1 = {}, {}
    for x in H.objects:
        a0[("e", x)], a0[("g", x)] = x, swap[x]
        a1[("e", x)], a1[("g", x)] = x, swap[x]
    alpha = {(g1, g2, x): H.unit[a0[(G.comp[(g1, g2)], x)]]
             for (g1, g2) in G.comp for x in H.objects}
    eps = {x: H.unit[x] for x in H.objects}
    return WeakAction(G, H, {"p": "*", "q": "*"}, a0, a1, alpha, eps)


def test_strict_table_action_valid():
    assert validate_weak_action(swap_action_on_two_points()).passed


def test_table_action_mutation_detected():
    w = swap_action_on_two_points()
    a1 = dict(w.a1)
    a1[("g", "p")] = "p"  # image arrow no longer sits over g . p
    broken = WeakAction(w.acting, w.target, w.moment, w.a0, a1, w.alpha, w.epsilon)
    rep = validate_weak_action(broken)
    assert any(e.check == "functor-endpoints" for e in rep.entries)


def test_classical_action_groupoid():
    w = swap_action_on_two_points()
    ag = action_groupoid(w)
    assert validate_groupoid(ag).passed
    assert ag.objects == ("p", "q")
    assert len(ag.arrows) == 4


def test_wrep_of_fixtures_valid():
    for r in (z2_ruth(0), z2_ruth(1), sign_twisted_ruth(), pair_strict_ruth()):
        assert validate_weak_representation(wrep_from_ruth(r)).passed
    # the shared entry point dispatches on the type
    assert validate_weak_action(wrep_from_ruth(z2_ruth(1))).passed


def test_wrep_rejects_invalid_ruth():
    from ruthvb.harness.fixtures import z2_ruth_broken4
    with pytest.raises(ValidationError):
        wrep_from_ruth(z2_ruth_broken4())


def test_wrep_alpha_kernel_component():
    w = wrep_from_ruth(z2_ruth(1))
    # associator at (g, g) applied to 1: degree-0 part is the parameter 1
    cell = w.alpha[("g", "g")].apply((Fraction(1),))
    assert cell == (Fraction(1), Fraction(1))


def test_pentagon_mutation_reported_at_offending_cell():
    # rigid fixture: composing one associator cell with a nontrivial kernel
    # arrow breaks the pentagon at (g,g,g)
    w = wrep_from_ruth(sign_twisted_ruth())
    alpha = dict(w.alpha)
    alpha[("g", "g")] = alpha[("g", "g")] + LinearMap.from_rows([[1], [0]])
    mutated = WeakRepresentation(w.groupoid, w.bundle, w.a0, w.a1, alpha)
    rep = validate_weak_representation(mutated)
    assert not rep.passed
    pentagon = [e for e in rep.entries if e.check == "pentagon"]
    assert pentagon and all("(g,g,g)" in e.location for e in pentagon)
    assert all(e.check == "pentagon" for e in rep.entries)


def test_action_groupoid_bundle_valid_on_fixtures():
    for r in (z2_ruth(1), pair_strict_ruth()):
        ag = action_groupoid(wrep_from_ruth(r))
        assert validate_vb(ag).passed


def test_action_groupoid_requires_valid_input():
    w = wrep_from_ruth(z2_ruth(1))
    a0 = dict(w.a0)
    a0["g"] = LinearMap.from_rows([[7]])
    broken = WeakRepresentation(w.groupoid, w.bundle, a0, w.a1, w.alpha)
    with pytest.raises(ValidationError):
        action_groupoid(broken)


def test_identity_equivariant_valid():
    w = wrep_from_ruth(z2_ruth(1))
    e = identity_equivariant(w)
    assert validate_equivariant(e).passed
    assert act_on_morphism(e) == \
        __import__("ruthvb").vb.identity_vb_map(action_groupoid(w, validate=False))


def test_equivariant_images_of_gauge_morphisms():
    rng = random.Random(20)
    r = gen.random_ruth(rng, z2_groupoid(), max_dim=2)
    m = gen.random_ruth_morphism(rng, r)
    e = wrep_from_ruth_morphism(m)
    assert validate_equivariant(e).passed


def test_compose_equivariant_matches_morphism_composition():
    rng = random.Random(21)
    r = gen.random_ruth(rng, z2_groupoid(), max_dim=2)
    m1 = gen.random_ruth_morphism(rng, r)
    m2 = gen.random_ruth_morphism(rng, m1.source)
    e1, e2 = wrep_from_ruth_morphism(m1), wrep_from_ruth_morphism(m2)
    comp = compose_equivariant(e1, e2)
    assert validate_equivariant(comp).passed
    assert comp == wrep_from_ruth_morphism(compose_morphisms(m1, m2))
    # identity laws
    assert compose_equivariant(e1, identity_equivariant(e1.source)) == e1
    assert compose_equivariant(identity_equivariant(e1.target), e1) == e1


def test_act_functorial_on_composites():
    rng = random.Random(22)
    r = gen.random_ruth(rng, z2_groupoid(), max_dim=2)
    m1 = gen.random_ruth_morphism(rng, r)
    m2 = gen.random_ruth_morphism(rng, m1.source)
    e1, e2 = wrep_from_ruth_morphism(m1), wrep_from_ruth_morphism(m2)
    lhs = act_on_morphism(compose_equivariant(e1, e2), validate=False)
    rhs = compose_vb_maps(act_on_morphism(e1, validate=False),
                          act_on_morphism(e2, validate=False))
    assert lhs == rhs


def test_act_reconstruct_round_trips():
    rng = random.Random(23)
    for _ in range(5):
        e = gen.random_equivariant(rng, z2_groupoid(), max_dim=2)
        phi = act_on_morphism(e, validate=False)
        assert validate_vb_map(phi).passed
        back = reconstruct_equivariant(phi, e.source, e.target)
        assert back == e
        assert act_on_morphism(back, validate=False) == phi


def test_act_trivial_cell_is_kernel_pushforward():
    # strict functor with trivial cell: arrows map by f1 on the kernel part
    w = wrep_from_ruth(pair_strict_ruth())
    e = identity_equivariant(w)
    phi = act_on_morphism(e, validate=False)
    for a in w.groupoid.arrows:
        assert phi.arr_maps[a].is_identity()


def test_delta_unit_mutation_flagged():
    rng = random.Random(24)
    e = gen.random_equivariant(rng, z2_groupoid(), max_dim=2)
    mut = gen.mutate_equivariant_delta_unit(rng, e)
    if mut is not None:
        rep = validate_equivariant(mut[0])
        assert any(x.check == "unit-triangle" for x in rep.entries)
