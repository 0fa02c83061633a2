"""VB-groupoids over a finite groupoid: fiberwise-linear groupoid structures.

A VB-groupoid assigns a rational vector space to every object and arrow of
the base groupoid, with linear structure maps covering the base structure
maps.  Multiplication is stored per composable pair of base arrows as one
linear map on the fibered-product subspace, whose canonical basis is the
deterministic kernel basis of ``[stilde_g | -ttilde_h]``.

A linear groupoid bundle is the special case whose base is a trivial
(unit) groupoid; the same class covers both.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import CompositionError, StructureError
from .groupoid import FiniteGroupoid, trivial_groupoid
from .linalg import LinearMap, Vector, kernel_basis, vec_concat
from .reports import Report


class VBGroupoid:
    """Fiberwise-linear groupoid over ``base``.

    Shape consistency is enforced here; the groupoid axioms are checked by
    :func:`validate_vb` so corrupted instances can be represented.
    """

    def __init__(self, base: FiniteGroupoid, objdim, arrdim,
                 stilde, ttilde, utilde, inv_map, mult):
        self.base = base
        self.objdim: dict[str, int] = dict(objdim)
        self.arrdim: dict[str, int] = dict(arrdim)
        self.stilde: dict[str, LinearMap] = dict(stilde)
        self.ttilde: dict[str, LinearMap] = dict(ttilde)
        self.utilde: dict[str, LinearMap] = dict(utilde)
        self.inv_map: dict[str, LinearMap] = dict(inv_map)
        self.mult: dict[tuple[str, str], LinearMap] = dict(mult)
        self._pair_bases: dict[tuple[str, str], tuple[Vector, ...]] = {}
        self._pair_matrices: dict[tuple[str, str], LinearMap] = {}
        self._check_shapes()

    def _check_shapes(self):
        g = self.base
        for x in g.objects:
            if x not in self.objdim:
                raise StructureError(f"missing object fiber dimension at {x}")
        for a in g.arrows:
            if a not in self.arrdim:
                raise StructureError(f"missing arrow fiber dimension at {a}")
            st = self.stilde.get(a)
            tt = self.ttilde.get(a)
            iv = self.inv_map.get(a)
            if st is None or (st.rows, st.cols) != (self.objdim[g.src[a]], self.arrdim[a]):
                raise StructureError(f"stilde at {a} has wrong shape")
            if tt is None or (tt.rows, tt.cols) != (self.objdim[g.tgt[a]], self.arrdim[a]):
                raise StructureError(f"ttilde at {a} has wrong shape")
            if iv is None or (iv.rows, iv.cols) != (self.arrdim[g.inv[a]], self.arrdim[a]):
                raise StructureError(f"inverse map at {a} has wrong shape")
        for x in g.objects:
            ut = self.utilde.get(x)
            if ut is None or (ut.rows, ut.cols) != (self.arrdim[g.unit[x]], self.objdim[x]):
                raise StructureError(f"utilde at {x} has wrong shape")
        for pair in g.comp:
            m = self.mult.get(pair)
            if m is None:
                raise StructureError(f"missing multiplication at {pair}")
            want_cols = len(self.pair_basis(*pair))
            g12 = g.comp[pair]
            if (m.rows, m.cols) != (self.arrdim[g12], want_cols):
                raise StructureError(
                    f"multiplication at {pair} has shape {m.rows}x{m.cols}, "
                    f"wanted {self.arrdim[g12]}x{want_cols}")

    # -- fibered products -----------------------------------------------------

    def pair_basis(self, g1: str, g2: str) -> tuple[Vector, ...]:
        """Canonical basis of {(v,w) : stilde(v) = ttilde(w)} in V1(g1)+V1(g2)."""
        key = (g1, g2)
        if key not in self._pair_bases:
            if self.base.src[g1] != self.base.tgt[g2]:
                raise CompositionError(f"{g1}, {g2} not composable in the base")
            constraint = linalg.hstack(self.stilde[g1], -self.ttilde[g2])
            self._pair_bases[key] = kernel_basis(constraint)
        return self._pair_bases[key]

    def pair_matrix(self, g1: str, g2: str) -> LinearMap:
        key = (g1, g2)
        if key not in self._pair_matrices:
            cols = self.pair_basis(g1, g2)
            self._pair_matrices[key] = LinearMap.from_columns(
                list(cols), self.arrdim[g1] + self.arrdim[g2])
        return self._pair_matrices[key]

    def pair_coords(self, g1: str, g2: str, v: Vector, w: Vector) -> Vector:
        coords = linalg.solve(self.pair_matrix(g1, g2), vec_concat(v, w))
        if coords is None:
            raise CompositionError(f"vectors over ({g1},{g2}) are not composable")
        return coords

    def multiply(self, g1: str, g2: str, v: Vector, w: Vector) -> Vector:
        """Product of composable fiber vectors v over g1 and w over g2."""
        return self.mult[(g1, g2)].apply(self.pair_coords(g1, g2, v, w))

    def invert(self, g: str, v: Vector) -> Vector:
        return self.inv_map[g].apply(v)

    def unit_vector(self, x: str, v: Vector) -> Vector:
        return self.utilde[x].apply(v)

    def is_linear_bundle(self) -> bool:
        """True when the base is a trivial groupoid (all arrows units)."""
        return all(self.base.is_unit(a) for a in self.base.arrows)

    def __eq__(self, other):
        if not isinstance(other, VBGroupoid):
            return NotImplemented
        return (self.base == other.base and self.objdim == other.objdim
                and self.arrdim == other.arrdim and self.stilde == other.stilde
                and self.ttilde == other.ttilde and self.utilde == other.utilde
                and self.inv_map == other.inv_map and self.mult == other.mult)


# A linear groupoid bundle is a VBGroupoid over a trivial base; give the
# reading a name without duplicating the machinery.
LinearGroupoidBundle = VBGroupoid


def linear_bundle(base_points, objdim, arrdim, stilde, ttilde, utilde, inv_map,
                  mult) -> VBGroupoid:
    """Build a linear groupoid bundle over the trivial groupoid on a set.

    The per-point tables are indexed by the point id (the unit arrow of the
    trivial groupoid carries the same id as its object).
    """
    base = trivial_groupoid(base_points)
    return VBGroupoid(base, objdim, arrdim, stilde, ttilde, utilde, inv_map,
                      {(x, x): m for x, m in mult.items()})


def validate_vb(v: VBGroupoid) -> Report:
    """Fiberwise groupoid axiom sweep on canonical bases, one entry per failure."""
    rep = Report("vb-groupoid")
    g = v.base
    for x in g.objects:
        u = g.unit[x]
        su = linalg.compose(v.stilde[u], v.utilde[x])
        tu = linalg.compose(v.ttilde[u], v.utilde[x])
        if not su.is_identity():
            rep.add("unit-source", f"object {x}", "identity", repr(su))
        if not tu.is_identity():
            rep.add("unit-target", f"object {x}", "identity", repr(tu))
    for a in g.arrows:
        b = g.inv[a]
        si = linalg.compose(v.stilde[b], v.inv_map[a])
        ti = linalg.compose(v.ttilde[b], v.inv_map[a])
        if si != v.ttilde[a]:
            rep.add("inverse-source", a, "ttilde", repr(si))
        if ti != v.stilde[a]:
            rep.add("inverse-target", a, "stilde", repr(ti))
    for (g1, g2), m in v.mult.items():
        g12 = g.comp[(g1, g2)]
        basis = v.pair_basis(g1, g2)
        d1 = v.arrdim[g1]
        for idx, pb in enumerate(basis):
            vv, ww = pb[:d1], pb[d1:]
            prod = m.apply(linalg.vec_basis(len(basis), idx))
            if v.stilde[g12].apply(prod) != v.stilde[g2].apply(ww):
                rep.add("product-source", f"({g1},{g2}) basis {idx}",
                        str(v.stilde[g2].apply(ww)), str(v.stilde[g12].apply(prod)))
            if v.ttilde[g12].apply(prod) != v.ttilde[g1].apply(vv):
                rep.add("product-target", f"({g1},{g2}) basis {idx}",
                        str(v.ttilde[g1].apply(vv)), str(v.ttilde[g12].apply(prod)))
    # unit laws and inverse laws on arrow fiber bases
    for a in g.arrows:
        ux_t, ux_s = g.unit[g.tgt[a]], g.unit[g.src[a]]
        for i in range(v.arrdim[a]):
            vec = linalg.vec_basis(v.arrdim[a], i)
            tv = v.ttilde[a].apply(vec)
            sv = v.stilde[a].apply(vec)
            try:
                left = v.multiply(ux_t, a, v.unit_vector(g.tgt[a], tv), vec)
                if left != vec:
                    rep.add("left-unit-law", f"{a} basis {i}", str(vec), str(left))
            except CompositionError:
                rep.add("left-unit-law", f"{a} basis {i}", str(vec), "not composable")
            try:
                right = v.multiply(a, ux_s, vec, v.unit_vector(g.src[a], sv))
                if right != vec:
                    rep.add("right-unit-law", f"{a} basis {i}", str(vec), str(right))
            except CompositionError:
                rep.add("right-unit-law", f"{a} basis {i}", str(vec), "not composable")
            iv = v.invert(a, vec)
            try:
                prod = v.multiply(a, g.inv[a], vec, iv)
                want = v.unit_vector(g.tgt[a], tv)
                if prod != want:
                    rep.add("right-inverse-law", f"{a} basis {i}", str(want), str(prod))
            except CompositionError:
                rep.add("right-inverse-law", f"{a} basis {i}", "unit", "not composable")
            try:
                prod = v.multiply(g.inv[a], a, iv, vec)
                want = v.unit_vector(g.src[a], sv)
                if prod != want:
                    rep.add("left-inverse-law", f"{a} basis {i}", str(want), str(prod))
            except CompositionError:
                rep.add("left-inverse-law", f"{a} basis {i}", "unit", "not composable")
    # associativity on a basis of each composable-triple subspace
    for (g1, g2, g3) in g.nerve_tuples(3):
        d1, d2, d3 = v.arrdim[g1], v.arrdim[g2], v.arrdim[g3]
        c1 = linalg.hstack(v.stilde[g1], -v.ttilde[g2], LinearMap.zero(v.objdim[g.src[g1]], d3))
        c2 = linalg.hstack(LinearMap.zero(v.objdim[g.src[g2]], d1), v.stilde[g2], -v.ttilde[g3])
        triple = kernel_basis(linalg.vstack(c1, c2))
        for idx, tb in enumerate(triple):
            a1, a2, a3 = tb[:d1], tb[d1:d1 + d2], tb[d1 + d2:]
            try:
                left = v.multiply(g.comp[(g1, g2)], g3, v.multiply(g1, g2, a1, a2), a3)
                right = v.multiply(g1, g.comp[(g2, g3)], a1, v.multiply(g2, g3, a2, a3))
            except CompositionError:
                rep.add("associativity", f"({g1},{g2},{g3}) basis {idx}",
                        "composable products", "not composable")
                continue
            if left != right:
                rep.add("associativity", f"({g1},{g2},{g3}) basis {idx}",
                        str(left), str(right))
    return rep


# -- maps of VB-groupoids ------------------------------------------------------


class VBMap:
    """Map of VB-groupoids covering a map of base groupoids.

    ``base_obj``/``base_arr`` send base objects/arrows of the source to the
    target; for maps of VB-groupoids over one fixed groupoid both are
    identities.  Only shapes are checked here; see :func:`validate_vb_map`.
    """

    def __init__(self, source: VBGroupoid, target: VBGroupoid,
                 obj_maps, arr_maps, base_obj=None, base_arr=None):
        self.source = source
        self.target = target
        self.base_obj: dict[str, str] = (dict(base_obj) if base_obj is not None
                                         else {x: x for x in source.base.objects})
        self.base_arr: dict[str, str] = (dict(base_arr) if base_arr is not None
                                         else {a: a for a in source.base.arrows})
        self.obj_maps: dict[str, LinearMap] = dict(obj_maps)
        self.arr_maps: dict[str, LinearMap] = dict(arr_maps)
        self._check_shapes()

    def _check_shapes(self):
        src, tgt = self.source, self.target
        for x in src.base.objects:
            y = self.base_obj.get(x)
            if y not in tgt.objdim:
                raise StructureError(f"base object map undefined or unknown at {x}")
            m = self.obj_maps.get(x)
            if m is None or (m.rows, m.cols) != (tgt.objdim[y], src.objdim[x]):
                raise StructureError(f"object map at {x} has wrong shape")
        for a in src.base.arrows:
            b = self.base_arr.get(a)
            if b not in tgt.arrdim:
                raise StructureError(f"base arrow map undefined or unknown at {a}")
            m = self.arr_maps.get(a)
            if m is None or (m.rows, m.cols) != (tgt.arrdim[b], src.arrdim[a]):
                raise StructureError(f"arrow map at {a} has wrong shape")

    def covers_identity(self) -> bool:
        return (all(x == y for x, y in self.base_obj.items())
                and all(a == b for a, b in self.base_arr.items()))

    def __eq__(self, other):
        if not isinstance(other, VBMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.base_obj == other.base_obj and self.base_arr == other.base_arr
                and self.obj_maps == other.obj_maps and self.arr_maps == other.arr_maps)


def identity_vb_map(v: VBGroupoid) -> VBMap:
    return VBMap(v, v,
                 {x: LinearMap.identity(v.objdim[x]) for x in v.base.objects},
                 {a: LinearMap.identity(v.arrdim[a]) for a in v.base.arrows})


def compose_vb_maps(m2: VBMap, m1: VBMap) -> VBMap:
    if m1.target != m2.source:
        raise CompositionError("VB map boundaries do not match")
    return VBMap(
        m1.source, m2.target,
        {x: linalg.compose(m2.obj_maps[m1.base_obj[x]], m1.obj_maps[x])
         for x in m1.source.base.objects},
        {a: linalg.compose(m2.arr_maps[m1.base_arr[a]], m1.arr_maps[a])
         for a in m1.source.base.arrows},
        {x: m2.base_obj[m1.base_obj[x]] for x in m1.source.base.objects},
        {a: m2.base_arr[m1.base_arr[a]] for a in m1.source.base.arrows},
    )


def validate_vb_map(m: VBMap) -> Report:
    """Check that the pair of fiber maps is a functor of VB-groupoids."""
    rep = Report("vb-map")
    src, tgt = m.source, m.target
    gb = src.base
    for a in gb.arrows:
        b = m.base_arr[a]
        if tgt.base.src[b] != m.base_obj[gb.src[a]] or tgt.base.tgt[b] != m.base_obj[gb.tgt[a]]:
            rep.add("base-compatibility", a, "arrow over matching endpoints", b)
            continue
        lhs = linalg.compose(tgt.stilde[b], m.arr_maps[a])
        rhs = linalg.compose(m.obj_maps[gb.src[a]], src.stilde[a])
        if lhs != rhs:
            rep.add("source-compatibility", a, repr(rhs), repr(lhs))
        lhs = linalg.compose(tgt.ttilde[b], m.arr_maps[a])
        rhs = linalg.compose(m.obj_maps[gb.tgt[a]], src.ttilde[a])
        if lhs != rhs:
            rep.add("target-compatibility", a, repr(rhs), repr(lhs))
    for x in gb.objects:
        y = m.base_obj[x]
        lhs = linalg.compose(m.arr_maps[gb.unit[x]], src.utilde[x])
        rhs = linalg.compose(tgt.utilde[y], m.obj_maps[x])
        if lhs != rhs:
            rep.add("unit-compatibility", f"object {x}", repr(rhs), repr(lhs))
    for (g1, g2) in gb.comp:
        g12 = gb.comp[(g1, g2)]
        d1 = src.arrdim[g1]
        for idx, pb in enumerate(src.pair_basis(g1, g2)):
            vv, ww = pb[:d1], pb[d1:]
            try:
                lhs = m.arr_maps[g12].apply(src.multiply(g1, g2, vv, ww))
                rhs = tgt.multiply(m.base_arr[g1], m.base_arr[g2],
                                   m.arr_maps[g1].apply(vv), m.arr_maps[g2].apply(ww))
            except CompositionError:
                rep.add("multiplicativity", f"({g1},{g2}) basis {idx}",
                        "composable images", "not composable")
                continue
            if lhs != rhs:
                rep.add("multiplicativity", f"({g1},{g2}) basis {idx}", str(rhs), str(lhs))
    return rep


def vb_map_is_isomorphism(m: VBMap) -> bool:
    """Fiberwise invertibility on objects and arrows (base maps bijective)."""
    if sorted(m.base_obj.values()) != sorted(m.target.base.objects):
        return False
    if sorted(m.base_arr.values()) != sorted(m.target.base.arrows):
        return False
    return (all(linalg.is_invertible(f) for f in m.obj_maps.values())
            and all(linalg.is_invertible(f) for f in m.arr_maps.values()))


def invert_vb_map(m: VBMap) -> VBMap:
    inv_obj = {y: x for x, y in m.base_obj.items()}
    inv_arr = {b: a for a, b in m.base_arr.items()}
    return VBMap(
        m.target, m.source,
        {m.base_obj[x]: linalg.inverse(m.obj_maps[x]) for x in m.source.base.objects},
        {m.base_arr[a]: linalg.inverse(m.arr_maps[a]) for a in m.source.base.arrows},
        inv_obj, inv_arr)


# -- natural transformations between bundle maps -------------------------------


class BundleTransformation:
    """Natural transformation between two maps of linear groupoid bundles.

    Stored as one linear map per base point from object fibers of the source
    to arrow fibers of the target, over the shared base map.
    """

    def __init__(self, from_map: VBMap, to_map: VBMap, comp):
        if from_map.source != to_map.source or from_map.target != to_map.target:
            raise StructureError("transformation endpoints differ")
        if from_map.base_obj != to_map.base_obj:
            raise StructureError("transformation between maps over different base maps")
        self.from_map = from_map
        self.to_map = to_map
        self.comp: dict[str, LinearMap] = dict(comp)
        src, tgt = from_map.source, from_map.target
        for x in src.base.objects:
            m = self.comp.get(x)
            y = from_map.base_obj[x]
            want = (tgt.arrdim[tgt.base.unit[y]], src.objdim[x])
            if m is None or (m.rows, m.cols) != want:
                raise StructureError(f"transformation component at {x} has wrong shape")

    def __eq__(self, other):
        if not isinstance(other, BundleTransformation):
            return NotImplemented
        return (self.from_map == other.from_map and self.to_map == other.to_map
                and self.comp == other.comp)


def validate_bundle_transformation(t: BundleTransformation) -> Report:
    """Source/target typing plus the naturality square on every basis arrow."""
    rep = Report("bundle-transformation")
    src, tgt = t.from_map.source, t.from_map.target
    for x in src.base.objects:
        y = t.from_map.base_obj[x]
        uy = tgt.base.unit[y]
        lhs = linalg.compose(tgt.stilde[uy], t.comp[x])
        if lhs != t.from_map.obj_maps[x]:
            rep.add("component-source", f"object {x}",
                    repr(t.from_map.obj_maps[x]), repr(lhs))
        lhs = linalg.compose(tgt.ttilde[uy], t.comp[x])
        if lhs != t.to_map.obj_maps[x]:
            rep.add("component-target", f"object {x}",
                    repr(t.to_map.obj_maps[x]), repr(lhs))
    for x in src.base.objects:
        ux = src.base.unit[x]
        y = t.from_map.base_obj[x]
        uy = tgt.base.unit[y]
        for i in range(src.arrdim[ux]):
            vec = linalg.vec_basis(src.arrdim[ux], i)
            tv = src.stilde[ux].apply(vec), src.ttilde[ux].apply(vec)
            try:
                lhs = tgt.multiply(uy, uy,
                                   t.comp[x].apply(tv[1]),
                                   t.from_map.arr_maps[ux].apply(vec))
                rhs = tgt.multiply(uy, uy,
                                   t.to_map.arr_maps[ux].apply(vec),
                                   t.comp[x].apply(tv[0]))
            except CompositionError:
                rep.add("naturality", f"{x} basis {i}", "composable", "not composable")
                continue
            if lhs != rhs:
                rep.add("naturality", f"{x} basis {i}", str(rhs), str(lhs))
    return rep


# -- connections ---------------------------------------------------------------


@dataclass(frozen=True)
class Connection:
    """Fiberwise-linear splitting of the source map, unital over unit arrows."""

    vb: VBGroupoid
    sigma: dict[str, LinearMap] = field(compare=False)
    rule: str = "pivot"

    def __post_init__(self):
        for a in self.vb.base.arrows:
            m = self.sigma.get(a)
            want = (self.vb.arrdim[a], self.vb.objdim[self.vb.base.src[a]])
            if m is None or (m.rows, m.cols) != want:
                raise StructureError(f"connection component at {a} has wrong shape")


def connection_report(c: Connection) -> Report:
    rep = Report("connection")
    v = c.vb
    for a in v.base.arrows:
        comp = linalg.compose(v.stilde[a], c.sigma[a])
        if not comp.is_identity():
            rep.add("splits-source", a, "identity", repr(comp))
    for x in v.base.objects:
        if c.sigma[v.base.unit[x]] != v.utilde[x]:
            rep.add("unital", f"object {x}", "unit section", repr(c.sigma[v.base.unit[x]]))
    return rep


def find_unital_connection(v: VBGroupoid) -> Connection:
    """Deterministic unital connection: the unit section over units, the
    leftmost-pivot right inverse of the source map elsewhere."""
    sigma = {}
    for a in v.base.arrows:
        if v.base.is_unit(a):
            x = v.base.src[a]
            if not linalg.compose(v.stilde[a], v.utilde[x]).is_identity():
                raise StructureError(f"unit section at {x} does not split the source map")
            sigma[a] = v.utilde[x]
        else:
            sigma[a] = linalg.right_inverse_on_image(v.stilde[a])
    return Connection(v, sigma, rule="unit-section at units, leftmost pivot elsewhere")


def kernel_groupoid(v: VBGroupoid) -> VBGroupoid:
    """Restriction of the arrow fibers to the unit arrows of the base: a
    linear groupoid bundle over the base objects."""
    g = v.base
    points = list(g.objects)
    objdim = {x: v.objdim[x] for x in points}
    arrdim = {x: v.arrdim[g.unit[x]] for x in points}
    stilde = {x: v.stilde[g.unit[x]] for x in points}
    ttilde = {x: v.ttilde[g.unit[x]] for x in points}
    utilde = {x: v.utilde[x] for x in points}
    inv_map = {x: v.inv_map[g.unit[x]] for x in points}
    # multiplication on the restricted pair bases, from v's tables
    mult = {}
    for x in points:
        u = g.unit[x]
        basis = kernel_basis(linalg.hstack(stilde[x], -ttilde[x]))
        cols = []
        for pb in basis:
            vv, ww = pb[:arrdim[x]], pb[arrdim[x]:]
            cols.append(v.multiply(u, u, vv, ww))
        mult[x] = LinearMap.from_columns(cols, arrdim[x])
    return linear_bundle(points, objdim, arrdim, stilde, ttilde, utilde, inv_map, mult)
