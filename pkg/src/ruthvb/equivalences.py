"""The executable equivalences: representations up to homotopy to weak
representations and back, kernels of VB-groupoids as weak representations,
reconstruction of equivariant maps from action-groupoid maps, and the
triangle identification with the semi-direct product.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import NotInducedError, StructureError, ValidationError
from .linalg import LinearMap
from .ruth import Ruth, RuthMorphism, validate_morphism, validate_ruth
from .semidirect import semidirect
from .twoterm import phi_object, split_bundle
from .vb import (Connection, VBGroupoid, VBMap, connection_report,
                 find_unital_connection, kernel_groupoid, validate_vb,
                 validate_vb_map, vb_map_is_isomorphism)
from .weak import (ActionChart, EquivariantMap, WeakRepresentation,
                   action_groupoid_bundle, validate_weak_representation)


def wrep_from_ruth(r: Ruth, validate: bool = True) -> WeakRepresentation:
    """Weak representation on the sum groupoid of the coefficient complex:
    the quasi-actions act blockwise on arrows, and the associator cell of a
    composable pair has degree-0 part the transformation cochain and
    degree-1 part the composite quasi-action."""
    if validate:
        rep = validate_ruth(r)
        if not rep.passed:
            raise ValidationError("wrep_from_ruth needs a valid representation:\n"
                                  + rep.to_text())
    g = r.groupoid
    bundle = phi_object(r.complex)
    a0 = {a: r.lambda1[a] for a in g.arrows}
    a1 = {a: linalg.direct_sum(r.lambda0[a], r.lambda1[a]) for a in g.arrows}
    alpha = {}
    for (g1, g2) in g.comp:
        alpha[(g1, g2)] = linalg.vstack(
            r.omega[(g1, g2)],
            linalg.compose(r.lambda1[g1], r.lambda1[g2]))
    return WeakRepresentation(g, bundle, a0, a1, alpha)


def ruth_from_wrep(w: WeakRepresentation) -> Ruth:
    """Quasi-inverse on objects: split the bundle, conjugate the action into
    sum-groupoid form, and read off the blocks.

    On the image of :func:`wrep_from_ruth` the splitting is the identity and
    the round trip recovers the representation on the nose.  Corrupted input
    surfaces as NotInducedError (blocks that should vanish do not)."""
    g = w.groupoid
    complex_, iso = split_bundle(w.bundle)
    rho = {x: iso.arr_maps[x] for x in g.objects}
    rho_inv = {x: linalg.inverse(rho[x]) for x in g.objects}
    lambda0, lambda1 = {}, {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        m = linalg.compose(rho_inv[t], linalg.compose(w.a1[a], rho[s]))
        d0s, d0t = complex_.dim0[s], complex_.dim0[t]
        d1s, d1t = complex_.dim1[s], complex_.dim1[t]
        blk_x = m.block(d0t, d0t + d1t, 0, d0s)
        blk_y = m.block(0, d0t, d0s, d0s + d1s)
        blk_z = m.block(d0t, d0t + d1t, d0s, d0s + d1s)
        if not blk_x.is_zero() or not blk_y.is_zero():
            raise NotInducedError(f"action at {a} has nonzero off-diagonal blocks")
        if blk_z != w.a0[a]:
            raise NotInducedError(f"degree-1 block at {a} differs from the object action")
        lambda0[a] = m.block(0, d0t, 0, d0s)
        lambda1[a] = blk_z
    omega = {}
    for (g1, g2), cell in w.alpha.items():
        t1 = g.tgt[g1]
        m = linalg.compose(rho_inv[t1], cell)
        d0t, d1t = complex_.dim0[t1], complex_.dim1[t1]
        one_part = m.block(d0t, d0t + d1t, 0, m.cols)
        want = linalg.compose(lambda1[g1], lambda1[g2])
        if one_part != want:
            raise NotInducedError(f"associator at ({g1},{g2}) does not ride over the "
                                  "composite action")
        omega[(g1, g2)] = m.block(0, d0t, 0, m.cols)
    out = Ruth(g, complex_, lambda0, lambda1, omega)
    rep = validate_ruth(out)
    if not rep.passed:
        raise ValidationError("recovered representation fails validation:\n" + rep.to_text())
    return out


def wrep_from_ruth_morphism(m: RuthMorphism, validate: bool = True) -> EquivariantMap:
    """Equivariant map between the weak representations of the endpoints.

    The homotopy operator runs from the post-composed action to the
    pre-composed one (its defining equation reads
    diff' . mu = phi1 . lambda1 - lambda1' . phi1), while the equivariance
    cell must start at F(g.x); so the cell's degree-0 part is -mu and its
    degree-1 part the whiskered action."""
    if validate:
        rep = validate_morphism(m)
        if not rep.passed:
            raise ValidationError("wrep_from_ruth_morphism needs a valid morphism:\n"
                                  + rep.to_text())
    g = m.source.groupoid
    src = wrep_from_ruth(m.source, validate=False)
    tgt = wrep_from_ruth(m.target, validate=False)
    delta = {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        delta[a] = linalg.vstack(
            -m.mu[a],
            linalg.compose(m.phi1[t], m.source.lambda1[a]))
    return EquivariantMap(
        src, tgt,
        {x: m.phi1[x] for x in g.objects},
        {x: linalg.direct_sum(m.phi0[x], m.phi1[x]) for x in g.objects},
        delta)


def ruth_morphism_from_wrep_map(e: EquivariantMap) -> RuthMorphism:
    """Quasi-inverse on morphisms: conjugate through both splittings and
    read off the chain-map blocks and the homotopy operator."""
    g = e.source.groupoid
    r_src = ruth_from_wrep(e.source)
    r_tgt = ruth_from_wrep(e.target)
    _, iso_s = split_bundle(e.source.bundle)
    _, iso_t = split_bundle(e.target.bundle)
    rho_s = {x: iso_s.arr_maps[x] for x in g.objects}
    rho_t_inv = {x: linalg.inverse(iso_t.arr_maps[x]) for x in g.objects}
    cs, ct = r_src.complex, r_tgt.complex
    phi0, phi1 = {}, {}
    for x in g.objects:
        m = linalg.compose(rho_t_inv[x], linalg.compose(e.f1[x], rho_s[x]))
        d0s, d1s = cs.dim0[x], cs.dim1[x]
        d0t, d1t = ct.dim0[x], ct.dim1[x]
        if not m.block(d0t, d0t + d1t, 0, d0s).is_zero() \
                or not m.block(0, d0t, d0s, d0s + d1s).is_zero():
            raise NotInducedError(f"functor at {x} has nonzero off-diagonal blocks")
        blk_z = m.block(d0t, d0t + d1t, d0s, d0s + d1s)
        if blk_z != e.f0[x]:
            raise NotInducedError(f"degree-1 block at {x} differs from the object component")
        phi0[x] = m.block(0, d0t, 0, d0s)
        phi1[x] = blk_z
    mu = {}
    for a in g.arrows:
        t = g.tgt[a]
        m = linalg.compose(rho_t_inv[t], e.delta[a])
        d0t, d1t = ct.dim0[t], ct.dim1[t]
        one_part = m.block(d0t, d0t + d1t, 0, m.cols)
        want = linalg.compose(phi1[t], r_src.lambda1[a])
        if one_part != want:
            raise NotInducedError(f"cell at {a} does not ride over the whiskered action")
        mu[a] = -m.block(0, d0t, 0, m.cols)
    return RuthMorphism(r_src, r_tgt, phi0, phi1, mu)


# -- kernels of VB-groupoids as weak representations -----------------------------


@dataclass
class KernelActionResult:
    wrep: WeakRepresentation
    iso: VBMap            # action groupoid of wrep -> the original VB-groupoid
    connection: Connection


def vb_to_wrep(v: VBGroupoid, connection: Connection | None = None,
               validate: bool = True) -> KernelActionResult:
    """Realize a VB-groupoid as the action groupoid of a weak representation
    on its kernel bundle.

    A unital connection conjugates arrows of the kernel along each base
    arrow; the associator cell measures its failure to be multiplicative.
    The returned map sends an action-groupoid arrow (g, x, k) to
    ``inverse(k) . sigma_g(x)`` and is verified to be an isomorphism."""
    if validate:
        rep = validate_vb(v)
        if not rep.passed:
            raise ValidationError("vb_to_wrep needs a valid VB-groupoid:\n" + rep.to_text())
    g = v.base
    if connection is None:
        connection = find_unital_connection(v)
    else:
        if connection.vb != v:
            raise StructureError("connection belongs to a different VB-groupoid")
        crep = connection_report(connection)
        if not crep.passed:
            raise ValidationError("invalid connection:\n" + crep.to_text())
    sigma = connection.sigma
    kernel = kernel_groupoid(v)
    a0, a1, alpha = {}, {}, {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        us, ut = g.unit[s], g.unit[t]
        a0[a] = linalg.compose(v.ttilde[a], sigma[a])
        cols = []
        for i in range(v.arrdim[us]):
            k = linalg.vec_basis(v.arrdim[us], i)
            tk = v.ttilde[us].apply(k)
            sk = v.stilde[us].apply(k)
            left = v.multiply(a, us, sigma[a].apply(tk), k)
            cols.append(v.multiply(a, g.inv[a], left,
                                   v.invert(a, sigma[a].apply(sk))))
        a1[a] = LinearMap.from_columns(cols, v.arrdim[ut])
    for (g1, g2) in g.comp:
        g12 = g.comp[(g1, g2)]
        s2 = g.src[g2]
        cols = []
        for i in range(v.objdim[s2]):
            x = linalg.vec_basis(v.objdim[s2], i)
            left = v.multiply(g12, g.inv[g2], sigma[g12].apply(x),
                              v.invert(g2, sigma[g2].apply(x)))
            cols.append(v.multiply(g1, g.inv[g1], left,
                                   v.invert(g1, sigma[g1].apply(a0[g2].apply(x)))))
        alpha[(g1, g2)] = LinearMap.from_columns(cols, v.arrdim[g.unit[g.tgt[g1]]])
    wrep = WeakRepresentation(g, kernel, a0, a1, alpha)
    wrep_report = validate_weak_representation(wrep)
    if not wrep_report.passed:
        raise ValidationError("kernel action failed weak-representation validation:\n"
                              + wrep_report.to_text())
    ag = action_groupoid_bundle(wrep)
    chart = ActionChart(wrep)
    arr = {}
    for a in g.arrows:
        t = g.tgt[a]
        ut = g.unit[t]
        cols = []
        for i in range(ag.arrdim[a]):
            x, k = chart.decode(a, linalg.vec_basis(ag.arrdim[a], i))
            cols.append(v.multiply(ut, a, v.invert(ut, k), sigma[a].apply(x)))
        arr[a] = LinearMap.from_columns(cols, v.arrdim[a])
    iso = VBMap(ag, v, {x: LinearMap.identity(v.objdim[x]) for x in g.objects}, arr)
    iso_rep = validate_vb_map(iso)
    if not iso_rep.passed:
        raise ValidationError("kernel-action identification is not a VB map:\n"
                              + iso_rep.to_text())
    if not vb_map_is_isomorphism(iso):
        raise ValidationError("kernel-action identification is not invertible")
    return KernelActionResult(wrep, iso, connection)


def connection_change_witness(v: VBGroupoid, first: Connection,
                              second: Connection) -> EquivariantMap:
    """Equivariant isomorphism between the kernel weak representations built
    from two unital connections: identity functor, cell
    sigma2_g(x) . inverse(sigma1_g(x))."""
    res1 = vb_to_wrep(v, first, validate=False)
    res2 = vb_to_wrep(v, second, validate=False)
    g = v.base
    delta = {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        ut = g.unit[t]
        cols = []
        for i in range(v.objdim[s]):
            x = linalg.vec_basis(v.objdim[s], i)
            cols.append(v.multiply(a, g.inv[a], second.sigma[a].apply(x),
                                   v.invert(a, first.sigma[a].apply(x))))
        delta[a] = LinearMap.from_columns(cols, v.arrdim[ut])
    w1 = res1.wrep
    return EquivariantMap(
        w1, res2.wrep,
        {x: LinearMap.identity(w1.objdim(x)) for x in g.objects},
        {x: LinearMap.identity(w1.arrdim(x)) for x in g.objects},
        delta)


def reconstruct_equivariant(phi: VBMap, w_src: WeakRepresentation,
                            w_tgt: WeakRepresentation) -> EquivariantMap:
    """Recover (functor, cell) from a VB map between two action groupoids.

    The functor restricts phi to the kernel subgroupoids through the
    embedding v -> (unit, source(v), inverse(v)); the cell reads off the
    kernel component of phi at (g, x, unit at g.x).  By construction
    ``act_on_morphism`` of the result reproduces phi."""
    if not phi.covers_identity():
        raise StructureError("action-groupoid map must cover the identity")
    g = w_src.groupoid
    src_chart = ActionChart(w_src)
    tgt_chart = ActionChart(w_tgt)
    f0 = {x: phi.obj_maps[x] for x in g.objects}
    f1 = {}
    for x in g.objects:
        u = g.unit[x]
        cols = []
        for i in range(w_src.arrdim(x)):
            vb = linalg.vec_basis(w_src.arrdim(x), i)
            coords = src_chart.encode(u, w_src.fiber_source(x).apply(vb),
                                      w_src.fiber_invert(x, vb))
            _, wv = tgt_chart.decode(u, phi.arr_maps[u].apply(coords))
            cols.append(w_tgt.fiber_invert(x, wv))
        f1[x] = LinearMap.from_columns(cols, w_tgt.arrdim(x))
    delta = {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        cols = []
        for i in range(w_src.objdim(s)):
            xb = linalg.vec_basis(w_src.objdim(s), i)
            unit_at = w_src.fiber_unit(t).apply(w_src.a0[a].apply(xb))
            coords = src_chart.encode(a, xb, unit_at)
            _, wv = tgt_chart.decode(a, phi.arr_maps[a].apply(coords))
            cols.append(wv)
        delta[a] = LinearMap.from_columns(cols, w_tgt.arrdim(t))
    return EquivariantMap(w_src, w_tgt, f0, f1, delta)


def triangle_witness(r: Ruth, validate: bool = True) -> VBMap:
    """Explicit isomorphism from the action groupoid of the induced weak
    representation onto the semi-direct product:
    (g, x, (e0, e1)) -> (g, -e0, x), verified as a VB map and invertible."""
    w = wrep_from_ruth(r, validate=validate)
    ag = action_groupoid_bundle(w)
    sd = semidirect(r, validate=False)
    g = r.groupoid
    chart = ActionChart(w)
    arr = {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        d0t = r.complex.dim0[t]
        cols = []
        for i in range(ag.arrdim[a]):
            x, k = chart.decode(a, linalg.vec_basis(ag.arrdim[a], i))
            e0 = k[:d0t]
            cols.append(linalg.vec_concat(tuple(-c for c in e0), x))
        arr[a] = LinearMap.from_columns(cols, sd.arrdim[a])
    iso = VBMap(ag, sd, {x: LinearMap.identity(sd.objdim[x]) for x in g.objects}, arr)
    rep = validate_vb_map(iso)
    if not rep.passed:
        raise ValidationError("triangle identification is not a VB map:\n" + rep.to_text())
    if not vb_map_is_isomorphism(iso):
        raise ValidationError("triangle identification is not invertible")
    return iso
