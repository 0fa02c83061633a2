"""Weak actions of a finite groupoid, weak representations on linear
groupoid bundles, equivariant maps, and action groupoids.

A weak action carries an action functor A, an associator cell alpha(g,k,-)
relating acting-by-g-then-k with acting-by-gk (pentagon-coherent), and a
unitor cell epsilon.  Weak representations are the unital (epsilon trivial),
fiberwise-linear case over a linear groupoid bundle; all their data is
matrices, all their coherences are exact matrix identities checked on
canonical bases.

Two action-groupoid constructions live here: the set-level one for weak
actions on a finite groupoid, and the bundle-level one for weak
representations, whose arrow fibers over g are charted on the subspace
{(x, k) : ttilde(k) = A0(g) x} with the deterministic basis
(object-fiber basis lifted through the pivot section of ttilde, then the
kernel basis of ttilde).
"""

from __future__ import annotations

from . import linalg
from .errors import CompositionError, StructureError, ValidationError
from .groupoid import FiniteGroupoid
from .linalg import LinearMap, Vector, vec_concat
from .reports import Report
from .vb import VBGroupoid, VBMap, validate_vb_map


# -- weak actions on a finite groupoid -------------------------------------------


class WeakAction:
    """Weak action with explicit tables: H finite, every cell an arrow id."""

    def __init__(self, acting: FiniteGroupoid, target: FiniteGroupoid, moment,
                 a0, a1, alpha, epsilon):
        self.acting = acting
        self.target = target
        self.moment: dict[str, str] = dict(moment)
        self.a0: dict[tuple[str, str], str] = dict(a0)
        self.a1: dict[tuple[str, str], str] = dict(a1)
        self.alpha: dict[tuple[str, str, str], str] = dict(alpha)
        self.epsilon: dict[str, str] = dict(epsilon)
        G, H = acting, target
        for x in H.objects:
            if self.moment.get(x) not in G.objects:
                raise StructureError(f"moment map undefined or unknown at {x}")
        for x in H.objects:
            for g in G.arrows:
                if G.src[g] == self.moment[x] and (g, x) not in self.a0:
                    raise StructureError(f"action object table missing ({g},{x})")
        for h in H.arrows:
            for g in G.arrows:
                if G.src[g] == self.moment[H.src[h]] and (g, h) not in self.a1:
                    raise StructureError(f"action arrow table missing ({g},{h})")
        for (g, k) in G.comp:
            for x in H.objects:
                if self.moment[x] == G.src[k] and (g, k, x) not in self.alpha:
                    raise StructureError(f"associator cell missing ({g},{k},{x})")
        for x in H.objects:
            if x not in self.epsilon:
                raise StructureError(f"unitor cell missing at {x}")

    def act0(self, g, x):
        return self.a0[(g, x)]

    def act1(self, g, h):
        return self.a1[(g, h)]


def validate_weak_action_tables(w: WeakAction) -> Report:
    """Functoriality, moment compatibility, naturality, pentagon, and unit
    coherences for a table-level weak action."""
    rep = Report("weak-action")
    G, H = w.acting, w.target
    for h in H.arrows:
        if w.moment[H.src[h]] != w.moment[H.tgt[h]]:
            rep.add("moment-on-arrows", h, "constant along arrows", "varies")
    for (g, x), y in w.a0.items():
        if w.moment.get(y) != G.tgt[g]:
            rep.add("moment-compatibility", f"({g},{x})", f"over {G.tgt[g]}",
                    f"over {w.moment.get(y)}")
    for (g, h), hh in w.a1.items():
        if H.src[hh] != w.a0[(g, H.src[h])] or H.tgt[hh] != w.a0[(g, H.tgt[h])]:
            rep.add("functor-endpoints", f"({g},{h})",
                    f"{w.a0[(g, H.src[h])]} -> {w.a0[(g, H.tgt[h])]}",
                    f"{H.src[hh]} -> {H.tgt[hh]}")
    for g in G.arrows:
        for (h1, h2) in H.comp:
            if w.moment[H.src[h1]] != G.src[g]:
                continue
            lhs = w.a1.get((g, H.comp[(h1, h2)]))
            try:
                rhs = H.compose(w.a1[(g, h1)], w.a1[(g, h2)])
            except CompositionError:
                rep.add("functor-multiplicative", f"({g},{h1},{h2})",
                        "composable images", "not composable")
                continue
            if lhs != rhs:
                rep.add("functor-multiplicative", f"({g},{h1},{h2})", str(rhs), str(lhs))
        for x in H.objects:
            if w.moment[x] != G.src[g]:
                continue
            if w.a1[(g, H.unit[x])] != H.unit[w.a0[(g, x)]]:
                rep.add("functor-units", f"({g},{x})",
                        H.unit[w.a0[(g, x)]], w.a1[(g, H.unit[x])])
    # associator: endpoints and naturality
    for (g, k, x), cell in w.alpha.items():
        lo = w.a0[(g, w.a0[(k, x)])]
        hi = w.a0[(G.comp[(g, k)], x)]
        if H.src[cell] != lo or H.tgt[cell] != hi:
            rep.add("associator-endpoints", f"({g},{k},{x})",
                    f"{lo} -> {hi}", f"{H.src[cell]} -> {H.tgt[cell]}")
    for (g, k) in G.comp:
        for h in H.arrows:
            if w.moment[H.src[h]] != G.src[k]:
                continue
            x, y = H.src[h], H.tgt[h]
            try:
                lhs = H.compose(w.alpha[(g, k, y)], w.a1[(g, w.a1[(k, h)])])
                rhs = H.compose(w.a1[(G.comp[(g, k)], h)], w.alpha[(g, k, x)])
            except CompositionError:
                rep.add("associator-naturality", f"({g},{k},{h})",
                        "composable cells", "not composable")
                continue
            if lhs != rhs:
                rep.add("associator-naturality", f"({g},{k},{h})", str(rhs), str(lhs))
    # pentagon
    for (g, k, l) in G.nerve_tuples(3):
        gk, kl = G.comp[(g, k)], G.comp[(k, l)]
        for x in H.objects:
            if w.moment[x] != G.src[l]:
                continue
            try:
                lhs = H.compose(w.alpha[(g, kl, x)], w.a1[(g, w.alpha[(k, l, x)])])
                rhs = H.compose(w.alpha[(gk, l, x)], w.alpha[(g, k, w.a0[(l, x)])])
            except CompositionError:
                rep.add("pentagon", f"({g},{k},{l},{x})", "composable cells",
                        "not composable")
                continue
            if lhs != rhs:
                rep.add("pentagon", f"({g},{k},{l},{x})", str(rhs), str(lhs))
    # unitor: endpoints, naturality, unit coherences
    for x, cell in w.epsilon.items():
        ux = G.unit[w.moment[x]]
        if H.src[cell] != w.a0[(ux, x)] or H.tgt[cell] != x:
            rep.add("unitor-endpoints", x, f"{w.a0[(ux, x)]} -> {x}",
                    f"{H.src[cell]} -> {H.tgt[cell]}")
    for h in H.arrows:
        x, y = H.src[h], H.tgt[h]
        ux = G.unit[w.moment[x]]
        try:
            lhs = H.compose(w.epsilon[y], w.a1[(ux, h)])
            rhs = H.compose(h, w.epsilon[x])
        except CompositionError:
            rep.add("unitor-naturality", h, "composable cells", "not composable")
            continue
        if lhs != rhs:
            rep.add("unitor-naturality", h, str(rhs), str(lhs))
    for g in G.arrows:
        for x in H.objects:
            if w.moment[x] != G.src[g]:
                continue
            lhs = w.alpha[(g, G.unit[G.src[g]], x)]
            rhs = w.a1[(g, w.epsilon[x])]
            if lhs != rhs:
                rep.add("unit-coherence-right", f"({g},{x})", str(rhs), str(lhs))
            lhs = w.alpha[(G.unit[G.tgt[g]], g, x)]
            rhs = w.epsilon[w.a0[(g, x)]]
            if lhs != rhs:
                rep.add("unit-coherence-left", f"({g},{x})", str(rhs), str(lhs))
    return rep


def action_groupoid_tables(w: WeakAction) -> FiniteGroupoid:
    """Set-level action groupoid: arrows (g, x, h) with h landing at g.x,
    source x, target the source of h, multiplication twisted by the
    associator."""
    G, H = w.acting, w.target
    name = lambda g, x, h: f"({g}|{x}|{h})"
    arrows, src, tgt = [], {}, {}
    decode = {}
    for g in G.arrows:
        for x in H.objects:
            if w.moment[x] != G.src[g]:
                continue
            gx = w.a0[(g, x)]
            for h in H.arrows:
                if H.tgt[h] != gx:
                    continue
                a = name(g, x, h)
                arrows.append(a)
                decode[a] = (g, x, h)
                src[a] = x
                tgt[a] = H.src[h]
    unit = {}
    for x in H.objects:
        ux = G.unit[w.moment[x]]
        unit[x] = name(ux, x, H.inv[w.epsilon[x]])
    comp = {}
    for a in arrows:
        g, x, h = decode[a]
        for b in arrows:
            g2, x2, h2 = decode[b]
            if src[a] != tgt[b]:
                continue
            cell = w.alpha[(g, g2, x2)]
            arrow = H.compose(H.compose(cell, w.a1[(g, h2)]), h)
            comp[(a, b)] = name(G.comp[(g, g2)], x2, arrow)
    inv = {}
    for a in arrows:
        g, x, h = decode[a]
        gi = G.inv[g]
        arrow = H.compose(
            H.compose(H.inv[w.a1[(gi, h)]], H.inv[w.alpha[(gi, g, x)]]),
            H.inv[w.epsilon[x]])
        inv[a] = name(gi, H.src[h], arrow)
    return FiniteGroupoid(H.objects, arrows, src, tgt, unit, comp, inv)


# -- weak representations ---------------------------------------------------------


class WeakRepresentation:
    """Unital weak action on a linear groupoid bundle over the acting
    groupoid's objects; every piece of data is a fiberwise linear map."""

    def __init__(self, groupoid: FiniteGroupoid, bundle: VBGroupoid, a0, a1, alpha):
        if not bundle.is_linear_bundle():
            raise StructureError("weak representations act on linear groupoid bundles")
        if tuple(bundle.base.objects) != tuple(groupoid.objects):
            raise StructureError("bundle must live over the groupoid objects")
        self.groupoid = groupoid
        self.bundle = bundle
        self.a0: dict[str, LinearMap] = dict(a0)
        self.a1: dict[str, LinearMap] = dict(a1)
        self.alpha: dict[tuple[str, str], LinearMap] = dict(alpha)
        g = groupoid
        for a in g.arrows:
            s, t = g.src[a], g.tgt[a]
            m0, m1 = self.a0.get(a), self.a1.get(a)
            if m0 is None or (m0.rows, m0.cols) != (self.objdim(t), self.objdim(s)):
                raise StructureError(f"action object map at {a} has wrong shape")
            if m1 is None or (m1.rows, m1.cols) != (self.arrdim(t), self.arrdim(s)):
                raise StructureError(f"action arrow map at {a} has wrong shape")
        for pair in g.comp:
            g1, g2 = pair
            cell = self.alpha.get(pair)
            want = (self.arrdim(g.tgt[g1]), self.objdim(g.src[g2]))
            if cell is None or (cell.rows, cell.cols) != want:
                raise StructureError(f"associator cell at {pair} has wrong shape")

    def objdim(self, x: str) -> int:
        return self.bundle.objdim[x]

    def arrdim(self, x: str) -> int:
        """Dimension of the bundle's arrow fiber at a point."""
        return self.bundle.arrdim[self.bundle.base.unit[x]]

    def fiber_multiply(self, x: str, a: Vector, b: Vector) -> Vector:
        u = self.bundle.base.unit[x]
        return self.bundle.multiply(u, u, a, b)

    def fiber_invert(self, x: str, a: Vector) -> Vector:
        return self.bundle.invert(self.bundle.base.unit[x], a)

    def fiber_source(self, x: str) -> LinearMap:
        return self.bundle.stilde[self.bundle.base.unit[x]]

    def fiber_target(self, x: str) -> LinearMap:
        return self.bundle.ttilde[self.bundle.base.unit[x]]

    def fiber_unit(self, x: str) -> LinearMap:
        return self.bundle.utilde[x]

    def __eq__(self, other):
        if not isinstance(other, WeakRepresentation):
            return NotImplemented
        return (self.groupoid == other.groupoid and self.bundle == other.bundle
                and self.a0 == other.a0 and self.a1 == other.a1
                and self.alpha == other.alpha)


def validate_weak_representation(w: WeakRepresentation) -> Report:
    """Per-condition sweep: action functoriality, unitality, associator
    typing, naturality, pentagon, and the unit coherences, all on canonical
    fiber bases."""
    rep = Report("weak-representation")
    g = w.groupoid
    from .vb import validate_vb
    bundle_rep = validate_vb(w.bundle)
    rep.extend(bundle_rep, prefix="bundle: ")
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        lhs = linalg.compose(w.fiber_source(t), w.a1[a])
        rhs = linalg.compose(w.a0[a], w.fiber_source(s))
        if lhs != rhs:
            rep.add("action-source", a, repr(rhs), repr(lhs))
        lhs = linalg.compose(w.fiber_target(t), w.a1[a])
        rhs = linalg.compose(w.a0[a], w.fiber_target(s))
        if lhs != rhs:
            rep.add("action-target", a, repr(rhs), repr(lhs))
        lhs = linalg.compose(w.a1[a], w.fiber_unit(s))
        rhs = linalg.compose(w.fiber_unit(t), w.a0[a])
        if lhs != rhs:
            rep.add("action-units", a, repr(rhs), repr(lhs))
        us = w.bundle.base.unit[s]
        d1 = w.bundle.arrdim[us]
        for idx, pb in enumerate(w.bundle.pair_basis(us, us)):
            v1, v2 = pb[:d1], pb[d1:]
            try:
                lhs_v = w.a1[a].apply(w.fiber_multiply(s, v1, v2))
                rhs_v = w.fiber_multiply(t, w.a1[a].apply(v1), w.a1[a].apply(v2))
            except CompositionError:
                rep.add("action-multiplicative", f"{a} basis {idx}",
                        "composable images", "not composable")
                continue
            if lhs_v != rhs_v:
                rep.add("action-multiplicative", f"{a} basis {idx}",
                        str(rhs_v), str(lhs_v))
    for x in g.objects:
        u = g.unit[x]
        if not w.a0[u].is_identity():
            rep.add("unital-objects", f"unit {u}", "identity", repr(w.a0[u]))
        if not w.a1[u].is_identity():
            rep.add("unital-arrows", f"unit {u}", "identity", repr(w.a1[u]))
    for (g1, g2), cell in w.alpha.items():
        t1, s2 = g.tgt[g1], g.src[g2]
        lhs = linalg.compose(w.fiber_source(t1), cell)
        rhs = linalg.compose(w.a0[g1], w.a0[g2])
        if lhs != rhs:
            rep.add("associator-source", f"({g1},{g2})", repr(rhs), repr(lhs))
        lhs = linalg.compose(w.fiber_target(t1), cell)
        rhs = w.a0[g.comp[(g1, g2)]]
        if lhs != rhs:
            rep.add("associator-target", f"({g1},{g2})", repr(rhs), repr(lhs))
        # naturality on basis arrows of the fiber at src(g2)
        for i in range(w.arrdim(s2)):
            vb = linalg.vec_basis(w.arrdim(s2), i)
            tv = w.fiber_target(s2).apply(vb)
            sv = w.fiber_source(s2).apply(vb)
            try:
                lhs_v = w.fiber_multiply(t1, cell.apply(tv),
                                         w.a1[g1].apply(w.a1[g2].apply(vb)))
                rhs_v = w.fiber_multiply(t1, w.a1[g.comp[(g1, g2)]].apply(vb),
                                         cell.apply(sv))
            except CompositionError:
                rep.add("associator-naturality", f"({g1},{g2}) basis {i}",
                        "composable cells", "not composable")
                continue
            if lhs_v != rhs_v:
                rep.add("associator-naturality", f"({g1},{g2}) basis {i}",
                        str(rhs_v), str(lhs_v))
    for (g1, g2, g3) in g.nerve_tuples(3):
        g12, g23 = g.comp[(g1, g2)], g.comp[(g2, g3)]
        t1, s3 = g.tgt[g1], g.src[g3]
        for i in range(w.objdim(s3)):
            xb = linalg.vec_basis(w.objdim(s3), i)
            try:
                lhs_v = w.fiber_multiply(
                    t1, w.alpha[(g1, g23)].apply(xb),
                    w.a1[g1].apply(w.alpha[(g2, g3)].apply(xb)))
                rhs_v = w.fiber_multiply(
                    t1, w.alpha[(g12, g3)].apply(xb),
                    w.alpha[(g1, g2)].apply(w.a0[g3].apply(xb)))
            except CompositionError:
                rep.add("pentagon", f"({g1},{g2},{g3}) basis {i}",
                        "composable cells", "not composable")
                continue
            if lhs_v != rhs_v:
                rep.add("pentagon", f"({g1},{g2},{g3}) basis {i}",
                        str(rhs_v), str(lhs_v))
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        lhs = w.alpha[(a, g.unit[s])]
        rhs = linalg.compose(w.a1[a], w.fiber_unit(s))
        if lhs != rhs:
            rep.add("unit-coherence-right", a, repr(rhs), repr(lhs))
        lhs = w.alpha[(g.unit[t], a)]
        rhs = linalg.compose(w.fiber_unit(t), w.a0[a])
        if lhs != rhs:
            rep.add("unit-coherence-left", a, repr(rhs), repr(lhs))
    return rep


def validate_weak_action(w) -> Report:
    """Dispatch: table-level weak actions and weak representations share one
    entry point."""
    if isinstance(w, WeakRepresentation):
        return validate_weak_representation(w)
    if isinstance(w, WeakAction):
        return validate_weak_action_tables(w)
    raise StructureError(f"not a weak action: {type(w).__name__}")


# -- the action-groupoid chart for weak representations ----------------------------


class ActionChart:
    """Deterministic coordinates on the action groupoid of a weak
    representation.

    The arrow fiber over g is {(x, k) : ttilde(k) = A0(g) x}; its basis is
    the object-fiber basis lifted through the leftmost-pivot section of
    ttilde at tgt(g), followed by the kernel basis of that ttilde."""

    def __init__(self, w: WeakRepresentation):
        self.w = w
        g = w.groupoid
        self.tau: dict[str, LinearMap] = {}
        self.ker: dict[str, LinearMap] = {}
        for x in g.objects:
            tt = w.fiber_target(x)
            self.tau[x] = linalg.right_inverse_on_image(tt)
            kb = linalg.kernel_basis(tt)
            self.ker[x] = LinearMap.from_columns(list(kb), w.arrdim(x))

    def arrfiber_dim(self, g_arrow: str) -> int:
        g = self.w.groupoid
        return self.w.objdim(g.src[g_arrow]) + self.ker[g.tgt[g_arrow]].cols

    def encode(self, g_arrow: str, x: Vector, k: Vector) -> Vector:
        """Coordinates of a concrete pair in the chart basis."""
        g = self.w.groupoid
        t = g.tgt[g_arrow]
        base = self.tau[t].apply(self.w.a0[g_arrow].apply(x))
        rem = linalg.vec_sub(k, base)
        coords = linalg.solve(self.ker[t], rem)
        if coords is None:
            raise CompositionError(f"pair over {g_arrow} violates the fiber constraint")
        return vec_concat(x, coords)

    def decode(self, g_arrow: str, coords: Vector) -> tuple[Vector, Vector]:
        g = self.w.groupoid
        s, t = g.src[g_arrow], g.tgt[g_arrow]
        n = self.w.objdim(s)
        x, kc = coords[:n], coords[n:]
        k = linalg.vec_add(self.tau[t].apply(self.w.a0[g_arrow].apply(x)),
                           self.ker[t].apply(kc))
        return x, k


def action_groupoid_bundle(w: WeakRepresentation) -> VBGroupoid:
    """Action groupoid of a weak representation, as a VB-groupoid over the
    acting groupoid in the chart coordinates."""
    g = w.groupoid
    chart = ActionChart(w)
    objdim = {x: w.objdim(x) for x in g.objects}
    arrdim = {a: chart.arrfiber_dim(a) for a in g.arrows}
    stilde, ttilde, utilde, inv_map = {}, {}, {}, {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        n = objdim[s]
        stilde[a] = linalg.hstack(LinearMap.identity(n),
                                  LinearMap.zero(n, arrdim[a] - n))
        cols = []
        for i in range(arrdim[a]):
            x, k = chart.decode(a, linalg.vec_basis(arrdim[a], i))
            cols.append(w.fiber_source(t).apply(k))
        ttilde[a] = LinearMap.from_columns(cols, objdim[t])
    for x in g.objects:
        u = g.unit[x]
        cols = []
        for i in range(objdim[x]):
            xb = linalg.vec_basis(objdim[x], i)
            cols.append(chart.encode(u, xb, w.fiber_unit(x).apply(xb)))
        utilde[x] = LinearMap.from_columns(cols, arrdim[u])
    for a in g.arrows:
        b = g.inv[a]
        s, t = g.src[a], g.tgt[a]
        cols = []
        for i in range(arrdim[a]):
            x, k = chart.decode(a, linalg.vec_basis(arrdim[a], i))
            gk = w.a1[b].apply(k)
            cell = w.alpha[(b, a)].apply(x)
            arrow = w.fiber_multiply(s, w.fiber_invert(s, gk), w.fiber_invert(s, cell))
            cols.append(chart.encode(b, w.fiber_source(t).apply(k), arrow))
        inv_map[a] = LinearMap.from_columns(cols, arrdim[b])
    v = VBGroupoid(g, objdim, arrdim, stilde, ttilde, utilde, inv_map,
                   {pair: LinearMap.zero(arrdim[g.comp[pair]],
                                         arrdim[pair[0]] + arrdim[pair[1]]
                                         - objdim[g.src[pair[0]]])
                    for pair in g.comp})
    for (g1, g2) in g.comp:
        g12 = g.comp[(g1, g2)]
        t1 = g.tgt[g1]
        cols = []
        for pb in v.pair_basis(g1, g2):
            left, right = pb[:arrdim[g1]], pb[arrdim[g1]:]
            x1, k1 = chart.decode(g1, left)
            x2, k2 = chart.decode(g2, right)
            inner = w.fiber_multiply(t1, w.alpha[(g1, g2)].apply(x2),
                                     w.a1[g1].apply(k2))
            arrow = w.fiber_multiply(t1, inner, k1)
            cols.append(chart.encode(g12, x2, arrow))
        v.mult[(g1, g2)] = LinearMap.from_columns(cols, arrdim[g12])
    v._check_shapes()
    return v


def action_groupoid(w, validate: bool = True):
    """Action groupoid of a weak action.  Table-level actions produce a
    finite groupoid; weak representations produce a VB-groupoid."""
    rep = validate_weak_action(w) if validate else None
    if rep is not None and not rep.passed:
        raise ValidationError("action groupoid needs a valid weak action:\n" + rep.to_text())
    if isinstance(w, WeakRepresentation):
        return action_groupoid_bundle(w)
    return action_groupoid_tables(w)


# -- equivariant maps ---------------------------------------------------------------


class EquivariantMap:
    """Map of weak representations: a bundle functor over the identity base
    together with the per-arrow equivariance cell delta(g, -) from object
    fibers at src(g) to arrow fibers at tgt(g)."""

    def __init__(self, source: WeakRepresentation, target: WeakRepresentation,
                 f0, f1, delta):
        if source.groupoid != target.groupoid:
            raise StructureError("equivariant map across different acting groupoids")
        self.source = source
        self.target = target
        self.f0: dict[str, LinearMap] = dict(f0)
        self.f1: dict[str, LinearMap] = dict(f1)
        self.delta: dict[str, LinearMap] = dict(delta)
        g = source.groupoid
        for x in g.objects:
            m0, m1 = self.f0.get(x), self.f1.get(x)
            if m0 is None or (m0.rows, m0.cols) != (target.objdim(x), source.objdim(x)):
                raise StructureError(f"object component at {x} has wrong shape")
            if m1 is None or (m1.rows, m1.cols) != (target.arrdim(x), source.arrdim(x)):
                raise StructureError(f"arrow component at {x} has wrong shape")
        for a in g.arrows:
            d = self.delta.get(a)
            want = (target.arrdim(g.tgt[a]), source.objdim(g.src[a]))
            if d is None or (d.rows, d.cols) != want:
                raise StructureError(f"equivariance cell at {a} has wrong shape")

    def bundle_map(self) -> VBMap:
        src, tgt = self.source.bundle, self.target.bundle
        return VBMap(src, tgt, dict(self.f0),
                     {src.base.unit[x]: self.f1[x] for x in src.base.objects})

    def __eq__(self, other):
        if not isinstance(other, EquivariantMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.f0 == other.f0 and self.f1 == other.f1
                and self.delta == other.delta)


def validate_equivariant(e: EquivariantMap) -> Report:
    """Bundle functoriality, cell typing, cell naturality, the two-cell
    hexagon, and the unit triangle."""
    rep = Report("equivariant-map")
    rep.extend(validate_vb_map(e.bundle_map()), prefix="functor: ")
    g = e.source.groupoid
    v, w = e.source, e.target
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        lhs = linalg.compose(w.fiber_source(t), e.delta[a])
        rhs = linalg.compose(e.f0[t], v.a0[a])
        if lhs != rhs:
            rep.add("cell-source", a, repr(rhs), repr(lhs))
        lhs = linalg.compose(w.fiber_target(t), e.delta[a])
        rhs = linalg.compose(w.a0[a], e.f0[s])
        if lhs != rhs:
            rep.add("cell-target", a, repr(rhs), repr(lhs))
        for i in range(v.arrdim(s)):
            vb = linalg.vec_basis(v.arrdim(s), i)
            tv = v.fiber_target(s).apply(vb)
            sv = v.fiber_source(s).apply(vb)
            try:
                lhs_v = w.fiber_multiply(t, e.delta[a].apply(tv),
                                         e.f1[t].apply(v.a1[a].apply(vb)))
                rhs_v = w.fiber_multiply(t, w.a1[a].apply(e.f1[s].apply(vb)),
                                         e.delta[a].apply(sv))
            except CompositionError:
                rep.add("cell-naturality", f"{a} basis {i}",
                        "composable cells", "not composable")
                continue
            if lhs_v != rhs_v:
                rep.add("cell-naturality", f"{a} basis {i}", str(rhs_v), str(lhs_v))
    for (g1, g2) in g.comp:
        t1, s2 = g.tgt[g1], g.src[g2]
        for i in range(v.objdim(s2)):
            xb = linalg.vec_basis(v.objdim(s2), i)
            try:
                inner = w.fiber_multiply(
                    t1, w.alpha[(g1, g2)].apply(e.f0[s2].apply(xb)),
                    w.a1[g1].apply(e.delta[g2].apply(xb)))
                lhs_v = w.fiber_multiply(t1, inner,
                                         e.delta[g1].apply(v.a0[g2].apply(xb)))
                rhs_v = w.fiber_multiply(
                    t1, e.delta[g.comp[(g1, g2)]].apply(xb),
                    e.f1[t1].apply(v.alpha[(g1, g2)].apply(xb)))
            except CompositionError:
                rep.add("hexagon", f"({g1},{g2}) basis {i}",
                        "composable cells", "not composable")
                continue
            if lhs_v != rhs_v:
                rep.add("hexagon", f"({g1},{g2}) basis {i}", str(rhs_v), str(lhs_v))
    for x in g.objects:
        u = g.unit[x]
        lhs = e.delta[u]
        rhs = linalg.compose(w.fiber_unit(x), e.f0[x])
        if lhs != rhs:
            rep.add("unit-triangle", f"object {x}", repr(rhs), repr(lhs))
    return rep


def identity_equivariant(w: WeakRepresentation) -> EquivariantMap:
    g = w.groupoid
    return EquivariantMap(
        w, w,
        {x: LinearMap.identity(w.objdim(x)) for x in g.objects},
        {x: LinearMap.identity(w.arrdim(x)) for x in g.objects},
        {a: linalg.compose(w.fiber_unit(g.tgt[a]), w.a0[a]) for a in g.arrows})


def compose_equivariant(e2: EquivariantMap, e1: EquivariantMap) -> EquivariantMap:
    """Composite functor with the pasted cell
    delta(g, x) = delta2(g, F1(x)) . F2(delta1(g, x))."""
    if e1.target != e2.source:
        raise CompositionError("equivariant map boundaries do not match")
    g = e1.source.groupoid
    x_rep = e2.target
    delta = {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        cols = []
        for i in range(e1.source.objdim(s)):
            xb = linalg.vec_basis(e1.source.objdim(s), i)
            first = e2.f1[t].apply(e1.delta[a].apply(xb))
            second = e2.delta[a].apply(e1.f0[s].apply(xb))
            cols.append(x_rep.fiber_multiply(t, second, first))
        delta[a] = LinearMap.from_columns(cols, x_rep.arrdim(t))
    return EquivariantMap(
        e1.source, e2.target,
        {x: linalg.compose(e2.f0[x], e1.f0[x]) for x in g.objects},
        {x: linalg.compose(e2.f1[x], e1.f1[x]) for x in g.objects},
        delta)


def act_on_morphism(e: EquivariantMap, validate: bool = True) -> VBMap:
    """The action-groupoid functor on morphisms:
    objects through f0, arrows (g, x, k) -> (g, f0(x), delta(g,x) . f1(k))."""
    if validate:
        rep = validate_equivariant(e)
        if not rep.passed:
            raise ValidationError("act_on_morphism needs a valid equivariant map:\n"
                                  + rep.to_text())
    g = e.source.groupoid
    src_ag = action_groupoid_bundle(e.source)
    tgt_ag = action_groupoid_bundle(e.target)
    src_chart = ActionChart(e.source)
    tgt_chart = ActionChart(e.target)
    arr = {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        cols = []
        for i in range(src_ag.arrdim[a]):
            x, k = src_chart.decode(a, linalg.vec_basis(src_ag.arrdim[a], i))
            image = e.target.fiber_multiply(t, e.delta[a].apply(x),
                                            e.f1[t].apply(k))
            cols.append(tgt_chart.encode(a, e.f0[s].apply(x), image))
        arr[a] = LinearMap.from_columns(cols, tgt_ag.arrdim[a])
    return VBMap(src_ag, tgt_ag, {x: e.f0[x] for x in g.objects}, arr)
