"""Seeded random instance generation and structural mutation.

Valid instances come from two constructions that are valid by design:
strict representations (genuine actions with an equivariant differential)
pulled back along random invertible gauges, and semi-direct products with
all fibers conjugated by random invertible changes of basis.  Mutations
come in two flavors: the rigid families used by the fuzz harness, which
are guaranteed to break a directly-checked condition, and free single-entry
perturbations used to exercise detector equivalences, where the caller
decides validity through the validator itself.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .. import linalg
from ..groupoid import (FiniteGroupoid, cyclic_groupoid, disjoint_union,
                        pair_groupoid, transitive_groupoid, z2_groupoid)
from ..linalg import LinearMap
from ..ruth import Ruth, RuthMorphism, gauge_transport
from ..semidirect import semidirect
from ..twoterm import ChainHomotopy, ChainMap, TwoTermComplex
from ..vb import VBGroupoid
from ..weak import EquivariantMap, WeakRepresentation
from ..equivalences import wrep_from_ruth, wrep_from_ruth_morphism


def rand_fraction(rng: random.Random, span: int = 2) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.choice((1, 1, 2))
    return Fraction(num, den)


def rand_matrix(rng, rows, cols, span=2) -> LinearMap:
    return LinearMap(rows, cols,
                     tuple(rand_fraction(rng, span) for _ in range(rows * cols)))


def rand_invertible(rng, n, span=2) -> LinearMap:
    if n == 0:
        return LinearMap.zero(0, 0)
    while True:
        m = rand_matrix(rng, n, n, span)
        if linalg.is_invertible(m):
            return m


# -- groupoids ---------------------------------------------------------------


def random_groupoid(rng: random.Random, max_objects: int = 4,
                    max_arrows: int = 12) -> FiniteGroupoid:
    """A valid groupoid within the size bounds: disjoint unions of connected
    groupoids with cyclic isotropy."""
    choices = []
    if max_arrows >= 2:
        choices += [lambda: z2_groupoid(), lambda: cyclic_groupoid(rng.randint(2, 3))]
    if max_objects >= 2 and max_arrows >= 4:
        choices.append(lambda: pair_groupoid(["x", "y"]))
    if max_objects >= 2 and max_arrows >= 8:
        choices.append(lambda: transitive_groupoid(["x", "y"], 2))
    if max_objects >= 3 and max_arrows >= 9:
        choices.append(lambda: transitive_groupoid(["x", "y", "z"], 1))
    if max_objects >= 2 and max_arrows >= 4:
        choices.append(lambda: disjoint_union(z2_groupoid(), z2_groupoid()))
    if max_objects >= 3 and max_arrows >= 6:
        choices.append(lambda: disjoint_union(z2_groupoid(), pair_groupoid(["x", "y"])))
    if not choices:
        choices = [lambda: cyclic_groupoid(1)]
    return rng.choice(choices)()


def _components(g: FiniteGroupoid) -> list[set[str]]:
    parent = {x: x for x in g.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in g.arrows:
        rx, ry = find(g.src[a]), find(g.tgt[a])
        if rx != ry:
            parent[rx] = ry
    comps: dict[str, set[str]] = {}
    for x in g.objects:
        comps.setdefault(find(x), set()).add(x)
    return list(comps.values())


# -- representations up to homotopy -------------------------------------------


def random_strict_ruth(rng, g: FiniteGroupoid, max_dim: int = 2) -> Ruth:
    """Strict representation: trivial quasi-actions per connected component
    with a constant equivariant differential and vanishing transformation
    cochain.  Dimensions are constant on components so identity actions
    typecheck."""
    dim0, dim1, diff = {}, {}, {}
    for comp in _components(g):
        d0 = rng.randint(0, max_dim)
        d1 = rng.randint(0, max_dim)
        d = rand_matrix(rng, d1, d0)
        for x in comp:
            dim0[x], dim1[x], diff[x] = d0, d1, d
    complex_ = TwoTermComplex(g.objects, dim0, dim1, diff)
    lambda0 = {a: LinearMap.identity(dim0[g.src[a]]) for a in g.arrows}
    lambda1 = {a: LinearMap.identity(dim1[g.src[a]]) for a in g.arrows}
    omega = {pair: LinearMap.zero(dim0[g.tgt[pair[0]]], dim1[g.src[pair[1]]])
             for pair in g.comp}
    return Ruth(g, complex_, lambda0, lambda1, omega)


def random_gauge(rng, target: Ruth):
    """Random invertible per-object gauge and unit-vanishing operator."""
    g = target.groupoid
    c = target.complex
    phi0 = {x: rand_invertible(rng, c.dim0[x]) for x in g.objects}
    phi1 = {x: rand_invertible(rng, c.dim1[x]) for x in g.objects}
    mu = {}
    for a in g.arrows:
        shape = (c.dim0[g.tgt[a]], c.dim1[g.src[a]])
        mu[a] = (LinearMap.zero(*shape) if g.is_unit(a)
                 else rand_matrix(rng, *shape))
    return phi0, phi1, mu


def random_ruth(rng, g: FiniteGroupoid | None = None, max_dim: int = 2,
                transports: int = 1) -> Ruth:
    """Valid, generally non-strict representation: a strict seed pulled back
    along one or more random gauges."""
    if g is None:
        g = random_groupoid(rng)
    r = random_strict_ruth(rng, g, max_dim)
    for _ in range(transports):
        r, _ = gauge_transport(r, *random_gauge(rng, r))
    return r


def random_ruth_morphism(rng, target: Ruth) -> RuthMorphism:
    """Isomorphism onto the given representation, via gauge transport."""
    _, witness = gauge_transport(target, *random_gauge(rng, target))
    return witness


# -- chain complexes, maps, homotopies ------------------------------------------


def random_complex(rng, base=None, max_dim: int = 2) -> TwoTermComplex:
    if base is None:
        base = ["p", "q"][:rng.randint(1, 2)]
    dim0 = {x: rng.randint(0, max_dim) for x in base}
    dim1 = {x: rng.randint(0, max_dim) for x in base}
    diff = {x: rand_matrix(rng, dim1[x], dim0[x]) for x in base}
    return TwoTermComplex(base, dim0, dim1, diff)


def random_chain_map(rng, c: TwoTermComplex, d: TwoTermComplex) -> ChainMap:
    """Uniform-ish sample of the solution space of the chain square,
    per object, over the identity base map."""
    if tuple(c.base) != tuple(d.base):
        raise ValueError("random chain maps are generated over a shared base")
    f0, f1 = {}, {}
    for x in c.base:
        a0, b0 = d.dim0[x], c.dim0[x]
        a1, b1 = d.dim1[x], c.dim1[x]
        n0, n1 = a0 * b0, a1 * b1
        if n0 + n1 == 0:
            f0[x] = LinearMap.zero(a0, b0)
            f1[x] = LinearMap.zero(a1, b1)
            continue
        # constraint rows: (f1 . diff_c - diff_d . f0)[i][j] = 0
        rows = []
        for i in range(a1):
            for j in range(b0):
                row = [Fraction(0)] * (n0 + n1)
                for k in range(a0):
                    row[k * b0 + j] -= d.diff[x].entry(i, k)
                for k in range(b1):
                    row[n0 + i * b1 + k] += c.diff[x].entry(k, j)
                rows.append(row)
        if rows:
            ker = linalg.kernel_basis(LinearMap.from_rows(rows))
        else:
            ker = tuple(linalg.vec_basis(n0 + n1, i) for i in range(n0 + n1))
        sol = [Fraction(0)] * (n0 + n1)
        for kv in ker:
            coeff = rand_fraction(rng)
            sol = [s + coeff * e for s, e in zip(sol, kv)]
        f0[x] = LinearMap(a0, b0, tuple(sol[:n0]))
        f1[x] = LinearMap(a1, b1, tuple(sol[n0:]))
    return ChainMap(c, d, {x: x for x in c.base}, f0, f1)


def random_homotopy_from(rng, f: ChainMap) -> ChainHomotopy:
    """Homotopy with the given source: a random operator determines the
    target chain map."""
    c, d = f.source, f.target
    omega = {x: rand_matrix(rng, d.dim0[f.basemap[x]], c.dim1[x]) for x in c.base}
    g0 = {x: f.f0[x] + linalg.compose(omega[x], c.diff[x]) for x in c.base}
    g1 = {x: f.f1[x] + linalg.compose(d.diff[f.basemap[x]], omega[x]) for x in c.base}
    g = ChainMap(c, d, dict(f.basemap), g0, g1)
    return ChainHomotopy(f, g, omega)


def random_interchange_square(rng, max_dim: int = 2):
    """Four homotopies pasting as two vertical pairs over two horizontal
    legs, for interchange checks."""
    base = ["p"]
    c = random_complex(rng, base, max_dim)
    d = random_complex(rng, base, max_dim)
    e = random_complex(rng, base, max_dim)
    f = random_chain_map(rng, c, d)
    phi = random_homotopy_from(rng, f)
    x = random_homotopy_from(rng, phi.to_map)
    k = random_chain_map(rng, d, e)
    psi = random_homotopy_from(rng, k)
    om = random_homotopy_from(rng, psi.to_map)
    return phi, x, psi, om


# -- VB-groupoids ----------------------------------------------------------------


def scramble_vb(rng, v: VBGroupoid, span: int = 1):
    """Conjugate every fiber by a random invertible map; returns the new
    VB-groupoid together with the change-of-basis tables."""
    g = v.base
    t_obj = {x: rand_invertible(rng, v.objdim[x], span) for x in g.objects}
    t_arr = {a: rand_invertible(rng, v.arrdim[a], span) for a in g.arrows}
    t_obj_inv = {x: linalg.inverse(t_obj[x]) for x in g.objects}
    t_arr_inv = {a: linalg.inverse(t_arr[a]) for a in g.arrows}
    stilde = {a: linalg.compose(t_obj[g.src[a]],
                                linalg.compose(v.stilde[a], t_arr_inv[a]))
              for a in g.arrows}
    ttilde = {a: linalg.compose(t_obj[g.tgt[a]],
                                linalg.compose(v.ttilde[a], t_arr_inv[a]))
              for a in g.arrows}
    utilde = {x: linalg.compose(t_arr[g.unit[x]],
                                linalg.compose(v.utilde[x], t_obj_inv[x]))
              for x in g.objects}
    inv_map = {a: linalg.compose(t_arr[g.inv[a]],
                                 linalg.compose(v.inv_map[a], t_arr_inv[a]))
               for a in g.arrows}
    out = VBGroupoid(g, dict(v.objdim), dict(v.arrdim), stilde, ttilde,
                     utilde, inv_map,
                     {pair: LinearMap.zero(v.arrdim[g.comp[pair]],
                                           len(v.pair_basis(*pair)))
                      for pair in g.comp})
    for (g1, g2) in g.comp:
        g12 = g.comp[(g1, g2)]
        d1 = v.arrdim[g1]
        cols = []
        for pb in out.pair_basis(g1, g2):
            vv = t_arr_inv[g1].apply(pb[:d1])
            ww = t_arr_inv[g2].apply(pb[d1:])
            cols.append(t_arr[g12].apply(v.multiply(g1, g2, vv, ww)))
        out.mult[(g1, g2)] = LinearMap.from_columns(cols, v.arrdim[g12])
    out._check_shapes()
    return out, t_obj, t_arr


def random_vb(rng, g: FiniteGroupoid | None = None, max_dim: int = 2) -> VBGroupoid:
    """Valid VB-groupoid: semi-direct product of a random representation
    with all fibers scrambled."""
    r = random_ruth(rng, g, max_dim)
    v = semidirect(r, validate=False)
    out, _, _ = scramble_vb(rng, v)
    return out


# -- weak representations and equivariant maps ------------------------------------


def random_wrep(rng, g: FiniteGroupoid | None = None, max_dim: int = 2) -> WeakRepresentation:
    return wrep_from_ruth(random_ruth(rng, g, max_dim), validate=False)


def scramble_wrep(rng, w: WeakRepresentation, span: int = 1):
    """Conjugate the underlying bundle by a random change of basis and carry
    the action data along; returns the new weak representation together with
    the strictly intertwining equivariant isomorphism from the original."""
    from ..weak import EquivariantMap
    g = w.groupoid
    bundle, t_obj, t_arr = scramble_vb(rng, w.bundle, span)
    t_obj_inv = {x: linalg.inverse(t_obj[x]) for x in g.objects}
    t_arr_inv = {x: linalg.inverse(t_arr[x]) for x in g.objects}
    a0 = {a: linalg.compose(t_obj[g.tgt[a]],
                            linalg.compose(w.a0[a], t_obj_inv[g.src[a]]))
          for a in g.arrows}
    a1 = {a: linalg.compose(t_arr[g.tgt[a]],
                            linalg.compose(w.a1[a], t_arr_inv[g.src[a]]))
          for a in g.arrows}
    alpha = {pair: linalg.compose(t_arr[g.tgt[pair[0]]],
                                  linalg.compose(w.alpha[pair],
                                                 t_obj_inv[g.src[pair[1]]]))
             for pair in g.comp}
    out = WeakRepresentation(g, bundle, a0, a1, alpha)
    witness = EquivariantMap(
        w, out,
        {x: t_obj[x] for x in g.objects},
        {x: t_arr[x] for x in g.objects},
        {a: linalg.compose(bundle.utilde[g.tgt[a]],
                           linalg.compose(a0[a], t_obj[g.src[a]]))
         for a in g.arrows})
    return out, witness


def random_equivariant(rng, g: FiniteGroupoid | None = None,
                       max_dim: int = 2) -> EquivariantMap:
    """Equivariant map between weak representations, as the image of a
    random gauge morphism."""
    r_target = random_ruth(rng, g, max_dim)
    m = random_ruth_morphism(rng, r_target)
    return wrep_from_ruth_morphism(m, validate=False)


# -- mutations ---------------------------------------------------------------------

# Rigid families: each mutation lands on a table cell that some validator
# reads directly (or pins through unit/inverse laws), so a non-identical
# mutation is always flagged.

def mutate_groupoid_comp(rng, g: FiniteGroupoid):
    pairs = sorted(g.comp)
    pair = pairs[rng.randrange(len(pairs))]
    old = g.comp[pair]
    others = [a for a in g.arrows if a != old]
    if not others:
        return None
    new_comp = dict(g.comp)
    new_comp[pair] = rng.choice(others)
    mutated = FiniteGroupoid(g.objects, g.arrows, g.src, g.tgt, g.unit,
                             new_comp, g.inv, g.max_degree)
    return mutated, f"compose[{pair}] {old} -> {new_comp[pair]}"


def _bump(rng, m: LinearMap):
    if m.rows * m.cols == 0:
        return None
    i = rng.randrange(m.rows)
    j = rng.randrange(m.cols)
    delta = Fraction(rng.choice((1, -1, 2)))
    return m.with_entry(i, j, m.entry(i, j) + delta), (i, j, delta)


def mutate_ruth_unit_cell(rng, r: Ruth):
    """Perturb a quasi-action at a unit arrow or the transformation cochain
    at a pair containing a unit: unitality/normalization reads these cells
    directly."""
    g = r.groupoid
    sites = []
    for x in g.objects:
        u = g.unit[x]
        if r.complex.dim0[x] > 0:
            sites.append(("lambda0", u))
        if r.complex.dim1[x] > 0:
            sites.append(("lambda1", u))
    for pair in g.comp:
        if (g.is_unit(pair[0]) or g.is_unit(pair[1])) \
                and r.omega[pair].rows * r.omega[pair].cols > 0:
            sites.append(("omega", pair))
    if not sites:
        return None
    kind, key = sites[rng.randrange(len(sites))]
    table = {"lambda0": r.lambda0, "lambda1": r.lambda1, "omega": r.omega}[kind]
    bumped = _bump(rng, table[key])
    if bumped is None:
        return None
    new_table = dict(table)
    new_table[key] = bumped[0]
    args = {"lambda0": dict(r.lambda0), "lambda1": dict(r.lambda1),
            "omega": dict(r.omega)}
    args[kind] = new_table
    mutated = Ruth(g, r.complex, args["lambda0"], args["lambda1"], args["omega"])
    return mutated, f"{kind}[{key}] entry {bumped[1]}"


def mutate_ruth_entry(rng, r: Ruth):
    """Free single-entry perturbation anywhere in the structure tables;
    the caller decides validity (used for detector-equivalence runs)."""
    g = r.groupoid
    sites = []
    for a in g.arrows:
        if r.lambda0[a].rows * r.lambda0[a].cols > 0:
            sites.append(("lambda0", a))
        if r.lambda1[a].rows * r.lambda1[a].cols > 0:
            sites.append(("lambda1", a))
    for pair in g.comp:
        if r.omega[pair].rows * r.omega[pair].cols > 0:
            sites.append(("omega", pair))
    for x in g.objects:
        if r.complex.diff[x].rows * r.complex.diff[x].cols > 0:
            sites.append(("diff", x))
    if not sites:
        return None
    kind, key = sites[rng.randrange(len(sites))]
    if kind == "diff":
        bumped = _bump(rng, r.complex.diff[key])
        new_diff = dict(r.complex.diff)
        new_diff[key] = bumped[0]
        complex_ = TwoTermComplex(r.complex.base, r.complex.dim0, r.complex.dim1,
                                  new_diff)
        mutated = Ruth(g, complex_, r.lambda0, r.lambda1, r.omega)
    else:
        table = {"lambda0": r.lambda0, "lambda1": r.lambda1, "omega": r.omega}[kind]
        bumped = _bump(rng, table[key])
        new_table = dict(table)
        new_table[key] = bumped[0]
        args = {"lambda0": dict(r.lambda0), "lambda1": dict(r.lambda1),
                "omega": dict(r.omega)}
        args[kind] = new_table
        mutated = Ruth(g, r.complex, args["lambda0"], args["lambda1"], args["omega"])
    return mutated, f"{kind}[{key}] entry {bumped[1]}"


def mutate_vb_cell(rng, v: VBGroupoid):
    """Perturb one multiplication-matrix entry or one unit-section entry;
    both families are pinned by the axiom sweep."""
    g = v.base
    sites = []
    for pair in g.comp:
        if v.mult[pair].rows * v.mult[pair].cols > 0:
            sites.append(("mult", pair))
    for x in g.objects:
        if v.utilde[x].rows * v.utilde[x].cols > 0:
            sites.append(("utilde", x))
    if not sites:
        return None
    kind, key = sites[rng.randrange(len(sites))]
    if kind == "mult":
        bumped = _bump(rng, v.mult[key])
        new_mult = dict(v.mult)
        new_mult[key] = bumped[0]
        mutated = VBGroupoid(g, v.objdim, v.arrdim, v.stilde, v.ttilde,
                             v.utilde, v.inv_map, new_mult)
    else:
        bumped = _bump(rng, v.utilde[key])
        new_ut = dict(v.utilde)
        new_ut[key] = bumped[0]
        mutated = VBGroupoid(g, v.objdim, v.arrdim, v.stilde, v.ttilde,
                             new_ut, v.inv_map, v.mult)
    return mutated, f"{kind}[{key}] entry {bumped[1]}"


def mutate_wrep_alpha_unit(rng, w: WeakRepresentation):
    """Perturb an associator cell at a pair containing a unit: the unit
    coherences read these cells directly."""
    g = w.groupoid
    sites = [pair for pair in g.comp
             if (g.is_unit(pair[0]) or g.is_unit(pair[1]))
             and w.alpha[pair].rows * w.alpha[pair].cols > 0]
    if not sites:
        return None
    key = sites[rng.randrange(len(sites))]
    bumped = _bump(rng, w.alpha[key])
    new_alpha = dict(w.alpha)
    new_alpha[key] = bumped[0]
    mutated = WeakRepresentation(g, w.bundle, w.a0, w.a1, new_alpha)
    return mutated, f"alpha[{key}] entry {bumped[1]}"


def mutate_equivariant_delta_unit(rng, e: EquivariantMap):
    """Perturb the equivariance cell at a unit arrow: the unit triangle
    reads it directly."""
    g = e.source.groupoid
    sites = [g.unit[x] for x in g.objects
             if e.delta[g.unit[x]].rows * e.delta[g.unit[x]].cols > 0]
    if not sites:
        return None
    key = sites[rng.randrange(len(sites))]
    bumped = _bump(rng, e.delta[key])
    new_delta = dict(e.delta)
    new_delta[key] = bumped[0]
    mutated = EquivariantMap(e.source, e.target, e.f0, e.f1, new_delta)
    return mutated, f"delta[{key}] entry {bumped[1]}"
