"""The executable equivalences: round trips between the three models,
the kernel realization of VB-groupoids, and the triangle identification."""

import random

import pytest

from ruthvb.errors import NotInducedError
from ruthvb.groupoid import pair_groupoid, z2_groupoid
from ruthvb.harness import generators as gen
from ruthvb.harness.fixtures import pair_strict_ruth, stretched_line_ruth, z2_ruth
from ruthvb.linalg import LinearMap, kernel_basis, compose
from ruthvb.ruth import validate_morphism, validate_ruth
from ruthvb.semidirect import semidirect
from ruthvb.twoterm import phi_object
from ruthvb.vb import (Connection, connection_report, find_unital_connection,
                       validate_vb_map, vb_map_is_isomorphism)
from ruthvb.weak import WeakRepresentation, validate_weak_representation
from ruthvb.equivalences import (connection_change_witness,
                                 ruth_from_wrep, ruth_morphism_from_wrep_map,
                                 triangle_witness, vb_to_wrep, wrep_from_ruth,
                                 wrep_from_ruth_morphism)

FIXTURE_RUTHS = [z2_ruth(0), z2_ruth(1), stretched_line_ruth(), pair_strict_ruth()]


@pytest.mark.parametrize("idx", range(len(FIXTURE_RUTHS)))
def test_ruth_wrep_round_trip_on_the_nose(idx):
    r = FIXTURE_RUTHS[idx]
    assert ruth_from_wrep(wrep_from_ruth(r)) == r


def test_ruth_wrep_round_trip_random():
    rng = random.Random(30)
    for _ in range(10):
        r = gen.random_ruth(rng, max_dim=2)
        assert ruth_from_wrep(wrep_from_ruth(r, validate=False)) == r


def test_strict_wrep_gives_strict_ruth():
    r = pair_strict_ruth()
    back = ruth_from_wrep(wrep_from_ruth(r))
    assert all(m.is_zero() for m in back.omega.values())


def test_scrambled_wrep_recovers_isomorphic_ruth():
    rng = random.Random(31)
    r = gen.random_ruth(rng, z2_groupoid(), max_dim=2)
    w = wrep_from_ruth(r, validate=False)
    w2, witness = gen.scramble_wrep(rng, w)
    assert validate_weak_representation(w2).passed
    r2 = ruth_from_wrep(w2)
    assert validate_ruth(r2).passed
    gauge = ruth_morphism_from_wrep_map(witness)
    assert gauge.source == r and gauge.target == r2
    assert validate_morphism(gauge).passed


def test_morphism_round_trip():
    rng = random.Random(32)
    r = gen.random_ruth(rng, pair_groupoid(["x", "y"]), max_dim=2)
    m = gen.random_ruth_morphism(rng, r)
    assert ruth_morphism_from_wrep_map(wrep_from_ruth_morphism(m)) == m


def test_ruth_from_corrupted_wrep_raises():
    w = wrep_from_ruth(z2_ruth(1))
    a1 = dict(w.a1)
    a1["g"] = LinearMap.from_rows([[-1, 1], [0, -1]])  # nonzero off-diagonal block
    broken = WeakRepresentation(w.groupoid, w.bundle, w.a0, a1, w.alpha)
    with pytest.raises(NotInducedError):
        ruth_from_wrep(broken)


@pytest.mark.parametrize("idx", range(len(FIXTURE_RUTHS)))
def test_triangle_on_fixtures(idx):
    triangle_witness(FIXTURE_RUTHS[idx])


def test_triangle_random():
    rng = random.Random(33)
    for _ in range(5):
        triangle_witness(gen.random_ruth(rng, max_dim=2), validate=False)


@pytest.mark.parametrize("idx", range(len(FIXTURE_RUTHS)))
def test_kernel_action_on_semidirect_recovers_wrep(idx):
    r = FIXTURE_RUTHS[idx]
    res = vb_to_wrep(semidirect(r, validate=False), validate=False)
    assert res.wrep == wrep_from_ruth(r, validate=False)
    assert ruth_from_wrep(res.wrep) == r


def test_kernel_action_on_scrambled():
    rng = random.Random(34)
    for _ in range(5):
        v = gen.random_vb(rng, max_dim=2)
        res = vb_to_wrep(v, validate=False)
        assert validate_weak_representation(res.wrep).passed
        assert validate_vb_map(res.iso).passed
        assert vb_map_is_isomorphism(res.iso)
        assert validate_ruth(ruth_from_wrep(res.wrep)).passed


def test_kernel_action_over_trivial_base():
    v = phi_object(gen.random_complex(random.Random(35), max_dim=2))
    res = vb_to_wrep(v, validate=False)
    g = v.base
    for a in g.arrows:  # all arrows are units: the action is trivial
        assert res.wrep.a0[a].is_identity()
        assert res.wrep.a1[a].is_identity()
    for pair, cell in res.wrep.alpha.items():
        x = g.src[pair[1]]
        assert cell == compose(v.utilde[x], res.wrep.a0[pair[0]])


def test_two_connections_give_equivalent_actions():
    rng = random.Random(36)
    v, _, _ = gen.scramble_vb(rng, semidirect(z2_ruth(1), validate=False))
    first = find_unital_connection(v)
    sigma2 = dict(first.sigma)
    g = v.base
    changed = False
    for a in g.arrows:
        if g.is_unit(a):
            continue
        ker = kernel_basis(v.stilde[a])
        if not ker:
            continue
        K = LinearMap.from_columns(list(ker), v.arrdim[a])
        R = gen.rand_matrix(rng, K.cols, v.objdim[g.src[a]])
        while R.is_zero():
            R = gen.rand_matrix(rng, K.cols, v.objdim[g.src[a]])
        sigma2[a] = first.sigma[a] + compose(K, R)
        changed = True
    assert changed
    second = Connection(v, sigma2, rule="perturbed")
    assert connection_report(second).passed
    witness = connection_change_witness(v, first, second)
    from ruthvb.weak import validate_equivariant
    assert validate_equivariant(witness).passed
