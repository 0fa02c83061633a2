"""The 2-category of 2-term complexes and its equivalence with linear
groupoid bundles.

Objects are two-term complexes of rational vector spaces over a finite base
set.  1-morphisms are chain maps over a base map, 2-morphisms are chain
homotopies; homotopies compose vertically by sum and horizontally by the
whiskering formula ``k0 . psi + omega . g1``.

The equivalence sends a complex to its sum groupoid (objects the degree-1
fibers, arrows the direct sum, source the projection, target ``diff + proj``),
a chain map to the blockwise bundle functor, and a homotopy to the bundle
transformation whose component at c is the arrow with degree-0 part
``omega(c)`` and degree-1 part ``f1(c)``.  Arrow fibers are always ordered
(degree-0 block, degree-1 block).
"""

from __future__ import annotations

from . import linalg
from .errors import CompositionError, NotInducedError, StructureError
from .groupoid import trivial_groupoid
from .linalg import LinearMap, kernel_basis
from .vb import (BundleTransformation, VBGroupoid, VBMap, validate_bundle_transformation,
                 validate_vb_map)


class TwoTermComplex:
    """Per-point two-term complex: diff maps the degree-0 fiber to the
    degree-1 fiber over the same point."""

    def __init__(self, base, dim0, dim1, diff):
        self.base: tuple[str, ...] = tuple(sorted(base))
        self.dim0: dict[str, int] = dict(dim0)
        self.dim1: dict[str, int] = dict(dim1)
        self.diff: dict[str, LinearMap] = dict(diff)
        for x in self.base:
            if x not in self.dim0 or x not in self.dim1:
                raise StructureError(f"missing fiber dimensions at {x}")
            d = self.diff.get(x)
            if d is None or (d.rows, d.cols) != (self.dim1[x], self.dim0[x]):
                raise StructureError(f"differential at {x} has wrong shape")

    def __eq__(self, other):
        if not isinstance(other, TwoTermComplex):
            return NotImplemented
        return (self.base == other.base and self.dim0 == other.dim0
                and self.dim1 == other.dim1 and self.diff == other.diff)


def zero_complex(base) -> TwoTermComplex:
    base = list(base)
    return TwoTermComplex(base, {x: 0 for x in base}, {x: 0 for x in base},
                          {x: LinearMap.zero(0, 0) for x in base})


class ChainMap:
    """Chain map over a base map; the chain square is enforced at construction."""

    def __init__(self, source: TwoTermComplex, target: TwoTermComplex,
                 basemap, f0, f1):
        self.source = source
        self.target = target
        self.basemap: dict[str, str] = dict(basemap)
        self.f0: dict[str, LinearMap] = dict(f0)
        self.f1: dict[str, LinearMap] = dict(f1)
        for x in source.base:
            y = self.basemap.get(x)
            if y not in target.dim0:
                raise StructureError(f"base map undefined or unknown at {x}")
            a, b = self.f0.get(x), self.f1.get(x)
            if a is None or (a.rows, a.cols) != (target.dim0[y], source.dim0[x]):
                raise StructureError(f"degree-0 component at {x} has wrong shape")
            if b is None or (b.rows, b.cols) != (target.dim1[y], source.dim1[x]):
                raise StructureError(f"degree-1 component at {x} has wrong shape")
            if linalg.compose(b, source.diff[x]) != linalg.compose(target.diff[y], a):
                raise StructureError(f"chain square fails at {x}")

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.basemap == other.basemap and self.f0 == other.f0
                and self.f1 == other.f1)


def identity_chain_map(c: TwoTermComplex) -> ChainMap:
    return ChainMap(c, c, {x: x for x in c.base},
                    {x: LinearMap.identity(c.dim0[x]) for x in c.base},
                    {x: LinearMap.identity(c.dim1[x]) for x in c.base})


def compose_chain_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.target != g.source:
        raise CompositionError("chain map boundaries do not match")
    return ChainMap(
        f.source, g.target,
        {x: g.basemap[f.basemap[x]] for x in f.source.base},
        {x: linalg.compose(g.f0[f.basemap[x]], f.f0[x]) for x in f.source.base},
        {x: linalg.compose(g.f1[f.basemap[x]], f.f1[x]) for x in f.source.base})


class ChainHomotopy:
    """Homotopy between two parallel chain maps; both defining equations
    are enforced at construction, so invalid homotopies cannot be built."""

    def __init__(self, from_map: ChainMap, to_map: ChainMap, omega):
        if (from_map.source != to_map.source or from_map.target != to_map.target
                or from_map.basemap != to_map.basemap):
            raise StructureError("homotopy endpoints are not parallel")
        self.from_map = from_map
        self.to_map = to_map
        self.omega: dict[str, LinearMap] = dict(omega)
        src, tgt = from_map.source, from_map.target
        for x in src.base:
            y = from_map.basemap[x]
            w = self.omega.get(x)
            if w is None or (w.rows, w.cols) != (tgt.dim0[y], src.dim1[x]):
                raise StructureError(f"homotopy component at {x} has wrong shape")
            if linalg.compose(tgt.diff[y], w) != to_map.f1[x] - from_map.f1[x]:
                raise StructureError(f"homotopy equation (degree 1) fails at {x}")
            if linalg.compose(w, src.diff[x]) != to_map.f0[x] - from_map.f0[x]:
                raise StructureError(f"homotopy equation (degree 0) fails at {x}")

    def __eq__(self, other):
        if not isinstance(other, ChainHomotopy):
            return NotImplemented
        return (self.from_map == other.from_map and self.to_map == other.to_map
                and self.omega == other.omega)


def zero_homotopy(f: ChainMap) -> ChainHomotopy:
    return ChainHomotopy(f, f, {x: LinearMap.zero(f.target.dim0[f.basemap[x]],
                                                  f.source.dim1[x])
                                for x in f.source.base})


def vcompose(a: ChainHomotopy, b: ChainHomotopy) -> ChainHomotopy:
    """Vertical composite (sum): a then b, for a.to_map == b.from_map."""
    if a.to_map != b.from_map:
        raise CompositionError("vertical boundaries do not match")
    return ChainHomotopy(a.from_map, b.to_map,
                         {x: a.omega[x] + b.omega[x] for x in a.omega})


def hcompose(psi: ChainHomotopy, omega: ChainHomotopy) -> ChainHomotopy:
    """Horizontal composite of psi: f => g (into the middle complex) with
    omega: k => l (out of it): a homotopy k.f => l.g with component
    ``k0 . psi + omega . g1`` over each point."""
    if psi.from_map.target != omega.from_map.source:
        raise CompositionError("horizontal boundaries do not match")
    f, g = psi.from_map, psi.to_map
    k, l = omega.from_map, omega.to_map
    comp = {}
    for x in f.source.base:
        y = f.basemap[x]
        comp[x] = (linalg.compose(k.f0[y], psi.omega[x])
                   + linalg.compose(omega.omega[y], g.f1[x]))
    return ChainHomotopy(compose_chain_maps(k, f), compose_chain_maps(l, g), comp)


def check_interchange(phi: ChainHomotopy, x: ChainHomotopy,
                      psi: ChainHomotopy, omega: ChainHomotopy) -> bool:
    """Exact interchange: pasting phi: f=>g, x: g=>h on the left with
    psi: k=>l, omega: l=>m on the right, compare
    (phi * psi) then (x * omega) against (phi + x) * (psi + omega)."""
    if phi.to_map != x.from_map or psi.to_map != omega.from_map:
        raise CompositionError("diagram does not paste vertically")
    if phi.from_map.target != psi.from_map.source:
        raise CompositionError("diagram does not paste horizontally")
    left = vcompose(hcompose(phi, psi), hcompose(x, omega))
    right = hcompose(vcompose(phi, x), vcompose(psi, omega))
    return left == right


# -- the equivalence with linear groupoid bundles --------------------------------


def phi_object(c: TwoTermComplex) -> VBGroupoid:
    """Sum groupoid of a complex: per point, objects the degree-1 fiber and
    arrows the direct sum with source the projection and target diff + proj."""
    base = trivial_groupoid(c.base)
    objdim, arrdim, stilde, ttilde, utilde, inv_map, mult = {}, {}, {}, {}, {}, {}, {}
    for p in c.base:
        d0, d1 = c.dim0[p], c.dim1[p]
        objdim[p] = d1
        arrdim[p] = d0 + d1
        stilde[p] = linalg.hstack(LinearMap.zero(d1, d0), LinearMap.identity(d1))
        ttilde[p] = linalg.hstack(c.diff[p], LinearMap.identity(d1))
        utilde[p] = linalg.vstack(LinearMap.zero(d0, d1), LinearMap.identity(d1))
        inv_map[p] = linalg.vstack(
            linalg.hstack(-LinearMap.identity(d0), LinearMap.zero(d0, d1)),
            linalg.hstack(c.diff[p], LinearMap.identity(d1)))
    v = VBGroupoid(base, objdim, arrdim, stilde, ttilde, utilde, inv_map,
                   {(p, p): LinearMap.zero(arrdim[p], 2 * c.dim0[p] + c.dim1[p])
                    for p in c.base})
    for p in c.base:
        d0 = c.dim0[p]
        cols = []
        for pb in v.pair_basis(p, p):
            a0 = pb[:d0]
            b0, b1 = pb[d0 + c.dim1[p]:d0 + c.dim1[p] + d0], pb[2 * d0 + c.dim1[p]:]
            cols.append(linalg.vec_concat(linalg.vec_add(a0, b0), b1))
        v.mult[(p, p)] = LinearMap.from_columns(cols, v.arrdim[p])
    v._check_shapes()
    return v


def phi_onemorphism(f: ChainMap) -> VBMap:
    """Bundle functor of a chain map: f1 on objects, f0 + f1 blockwise on
    arrows.  Functoriality is re-verified before returning."""
    sv, tv = phi_object(f.source), phi_object(f.target)
    out = VBMap(sv, tv,
                {x: f.f1[x] for x in f.source.base},
                {x: linalg.direct_sum(f.f0[x], f.f1[x]) for x in f.source.base},
                base_obj=dict(f.basemap), base_arr=dict(f.basemap))
    rep = validate_vb_map(out)
    if not rep.passed:
        raise StructureError("bundle functor of a chain map failed verification:\n"
                             + rep.to_text())
    return out


def phi_twomorphism(h: ChainHomotopy) -> BundleTransformation:
    """Bundle transformation of a homotopy: the component at a degree-1
    vector c is the arrow with degree-0 part omega(c) and degree-1 part
    f1(c).  Naturality is verified before returning."""
    out = BundleTransformation(
        phi_onemorphism(h.from_map), phi_onemorphism(h.to_map),
        {x: linalg.vstack(h.omega[x], h.from_map.f1[x]) for x in h.from_map.source.base})
    rep = validate_bundle_transformation(out)
    if not rep.passed:
        raise StructureError("bundle transformation of a homotopy failed verification:\n"
                             + rep.to_text())
    return out


def split_bundle(v: VBGroupoid) -> tuple[TwoTermComplex, VBMap]:
    """Split a linear groupoid bundle into a complex plus the identification
    with the sum groupoid of that complex.

    The degree-1 fibers are the object fibers, the degree-0 fibers are the
    kernels of the source map in the canonical kernel basis, and the
    differential is the target map restricted to them.  The returned map
    sends (c0, c1) to ``J c0 + unit(c1)`` and is verified invertible."""
    if not v.is_linear_bundle():
        raise StructureError("split_bundle needs a bundle over a trivial groupoid")
    points = list(v.base.objects)
    dim0, dim1, diff, inj = {}, {}, {}, {}
    for p in points:
        ker = kernel_basis(v.stilde[p])
        if len(ker) + v.objdim[p] != v.arrdim[p]:
            raise StructureError(f"source map at {p} is not surjective")
        j = LinearMap.from_columns(list(ker), v.arrdim[p])
        dim0[p] = len(ker)
        dim1[p] = v.objdim[p]
        diff[p] = linalg.compose(v.ttilde[p], j)
        inj[p] = j
    c = TwoTermComplex(points, dim0, dim1, diff)
    model = phi_object(c)
    iso = VBMap(model, v,
                {p: LinearMap.identity(v.objdim[p]) for p in points},
                {p: linalg.hstack(inj[p], v.utilde[p]) for p in points},
                base_obj={p: p for p in points},
                base_arr={p: v.base.unit[p] for p in points})
    rep = validate_vb_map(iso)
    if not rep.passed:
        raise StructureError("bundle splitting failed verification:\n" + rep.to_text())
    for p in points:
        if not linalg.is_invertible(iso.arr_maps[p]):
            raise StructureError(f"bundle splitting is not invertible at {p}")
    return c, iso


def _phi_image_complex(v: VBGroupoid) -> TwoTermComplex:
    """Read the complex off a sum-groupoid-shaped bundle, insisting on the
    canonical block form (source map = [0 | id])."""
    points = list(v.base.objects)
    dim0, dim1, diff = {}, {}, {}
    for p in points:
        d1 = v.objdim[p]
        d0 = v.arrdim[p] - d1
        want = linalg.hstack(LinearMap.zero(d1, d0), LinearMap.identity(d1))
        if v.stilde[p] != want:
            raise StructureError(f"bundle at {p} is not in sum-groupoid form")
        dim0[p], dim1[p] = d0, d1
        diff[p] = v.ttilde[p].block(0, d1, 0, d0)
    return TwoTermComplex(points, dim0, dim1, diff)


def extract_chain_map(F: VBMap) -> ChainMap:
    """Invert the bundle-functor construction.

    Decomposes the arrow map into four blocks; the off-diagonal blocks must
    vanish and the degree-1 block must agree with the object map, otherwise
    the functor does not come from a chain map and NotInducedError is raised.
    """
    cs = _phi_image_complex(F.source)
    ct = _phi_image_complex(F.target)
    f0, f1 = {}, {}
    for p in cs.base:
        q = F.base_obj[p]
        d0s, d1s = cs.dim0[p], cs.dim1[p]
        d0t, d1t = ct.dim0[q], ct.dim1[q]
        m = F.arr_maps[p]
        w = m.block(0, d0t, 0, d0s)
        xblk = m.block(d0t, d0t + d1t, 0, d0s)
        yblk = m.block(0, d0t, d0s, d0s + d1s)
        z = m.block(d0t, d0t + d1t, d0s, d0s + d1s)
        if not xblk.is_zero() or not yblk.is_zero():
            raise NotInducedError(f"arrow map at {p} has nonzero off-diagonal blocks")
        if z != F.obj_maps[p]:
            raise NotInducedError(f"degree-1 block at {p} differs from the object map")
        f0[p], f1[p] = w, z
    try:
        return ChainMap(cs, ct, dict(F.base_obj), f0, f1)
    except StructureError as exc:
        raise NotInducedError(str(exc)) from exc


def extract_homotopy(alpha: BundleTransformation) -> ChainHomotopy:
    """Invert the bundle-transformation construction.

    The degree-1 part of each component must equal the degree-1 component of
    the source functor; the degree-0 part is the homotopy, re-verified via
    the ChainHomotopy constructor."""
    f = extract_chain_map(alpha.from_map)
    g = extract_chain_map(alpha.to_map)
    omega = {}
    for p in f.source.base:
        q = f.basemap[p]
        d0t, d1t = f.target.dim0[q], f.target.dim1[q]
        comp = alpha.comp[p]
        one_part = comp.block(d0t, d0t + d1t, 0, comp.cols)
        if one_part != f.f1[p]:
            raise NotInducedError(f"component at {p} does not ride over the source functor")
        omega[p] = comp.block(0, d0t, 0, comp.cols)
    try:
        return ChainHomotopy(f, g, omega)
    except StructureError as exc:
        raise NotInducedError(str(exc)) from exc
