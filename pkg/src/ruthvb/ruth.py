"""Two-term representations up to homotopy over a finite groupoid.

The data is a two-term coefficient complex over the objects, unital
quasi-actions on both layers, and a normalized transformation cochain
assigning to each composable pair a map from the degree-1 fiber at the
pair's source to the degree-0 fiber at its target.  Validity is the four
structure identities; they are equivalent to the square-zero property of
the total degree-one operator below.

Total operator sign convention (fixed once, used everywhere):

    D(w0, w1) = ( D_l0(w0) + Omega^(w1),  delta_(w0) - D_l1(w1) )

where elements of total degree n are pairs (w0 in C^n(G;E0),
w1 in C^(n-1)(G;E1)), D_l is the twisted differential of the layer
quasi-action, delta_ post-composes the fiber differential, and
Omega^(w1)(g1,...,g_{k+2}) = Omega[g1,g2](w1(g3,...)).  With these signs
D reduces to the scalar coboundary in the trivial degenerate case,
satisfies the graded Leibniz rule D(w*f) = (Dw)*f + (-1)^|w| w*(df)
on the nose, and squares to zero exactly when the four identities hold.
"""

from __future__ import annotations

from typing import Optional

from . import linalg
from .cochains import (ScalarCochain, SectionCochain, coboundary, star,
                       twisted_differential)
from .errors import (CompositionError, DegreeError, NotInvertibleError,
                     StructureError)
from .groupoid import FiniteGroupoid
from .linalg import LinearMap
from .reports import Report
from .twoterm import TwoTermComplex


class Ruth:
    """A two-term representation up to homotopy; shapes checked here,
    the structure identities by :func:`validate_ruth`."""

    def __init__(self, groupoid: FiniteGroupoid, complex: TwoTermComplex,
                 lambda0, lambda1, omega):
        if tuple(complex.base) != tuple(groupoid.objects):
            raise StructureError("coefficient complex must live over the groupoid objects")
        self.groupoid = groupoid
        self.complex = complex
        self.lambda0: dict[str, LinearMap] = dict(lambda0)
        self.lambda1: dict[str, LinearMap] = dict(lambda1)
        self.omega: dict[tuple[str, str], LinearMap] = dict(omega)
        g, c = groupoid, complex
        for a in g.arrows:
            l0, l1 = self.lambda0.get(a), self.lambda1.get(a)
            if l0 is None or (l0.rows, l0.cols) != (c.dim0[g.tgt[a]], c.dim0[g.src[a]]):
                raise StructureError(f"layer-0 quasi-action at {a} has wrong shape")
            if l1 is None or (l1.rows, l1.cols) != (c.dim1[g.tgt[a]], c.dim1[g.src[a]]):
                raise StructureError(f"layer-1 quasi-action at {a} has wrong shape")
        for pair in g.comp:
            g1, g2 = pair
            om = self.omega.get(pair)
            if om is None or (om.rows, om.cols) != (c.dim0[g.tgt[g1]], c.dim1[g.src[g2]]):
                raise StructureError(f"transformation cochain at {pair} has wrong shape")

    def __eq__(self, other):
        if not isinstance(other, Ruth):
            return NotImplemented
        return (self.groupoid == other.groupoid and self.complex == other.complex
                and self.lambda0 == other.lambda0 and self.lambda1 == other.lambda1
                and self.omega == other.omega)


def validate_ruth(r: Ruth) -> Report:
    """Unitality, normalization, and the four structure identities, with one
    report entry per violating arrow, pair, or triple."""
    rep = Report("ruth")
    g, c = r.groupoid, r.complex
    for x in g.objects:
        u = g.unit[x]
        if not r.lambda0[u].is_identity():
            rep.add("unitality-layer0", f"unit {u}", "identity", repr(r.lambda0[u]))
        if not r.lambda1[u].is_identity():
            rep.add("unitality-layer1", f"unit {u}", "identity", repr(r.lambda1[u]))
    for (g1, g2), om in r.omega.items():
        if (g.is_unit(g1) or g.is_unit(g2)) and not om.is_zero():
            rep.add("normalization", f"({g1},{g2})", "zero", repr(om))
    for a in g.arrows:
        lhs = linalg.compose(c.diff[g.tgt[a]], r.lambda0[a])
        rhs = linalg.compose(r.lambda1[a], c.diff[g.src[a]])
        if lhs != rhs:
            rep.add("identity-1", a, repr(rhs), repr(lhs))
    for (g1, g2) in g.comp:
        g12 = g.comp[(g1, g2)]
        lhs = r.lambda0[g12] - linalg.compose(r.lambda0[g1], r.lambda0[g2])
        rhs = linalg.compose(r.omega[(g1, g2)], c.diff[g.src[g2]])
        if lhs != rhs:
            rep.add("identity-2", f"({g1},{g2})", repr(rhs), repr(lhs))
        lhs = r.lambda1[g12] - linalg.compose(r.lambda1[g1], r.lambda1[g2])
        rhs = linalg.compose(c.diff[g.tgt[g1]], r.omega[(g1, g2)])
        if lhs != rhs:
            rep.add("identity-3", f"({g1},{g2})", repr(rhs), repr(lhs))
    for (g1, g2, g3) in g.nerve_tuples(3):
        total = (linalg.compose(r.lambda0[g1], r.omega[(g2, g3)])
                 - r.omega[(g.comp[(g1, g2)], g3)]
                 + r.omega[(g1, g.comp[(g2, g3)])]
                 - linalg.compose(r.omega[(g1, g2)], r.lambda1[g3]))
        if not total.is_zero():
            rep.add("identity-4", f"({g1},{g2},{g3})", "zero", repr(total))
    return rep


class RuthMorphism:
    """Morphism between representations up to homotopy over one groupoid:
    a chain map (phi0, phi1) covering the identity and a per-arrow homotopy
    operator mu, vanishing at units."""

    def __init__(self, source: Ruth, target: Ruth, phi0, phi1, mu):
        if source.groupoid != target.groupoid:
            raise StructureError("morphism endpoints live over different groupoids")
        self.source = source
        self.target = target
        self.phi0: dict[str, LinearMap] = dict(phi0)
        self.phi1: dict[str, LinearMap] = dict(phi1)
        self.mu: dict[str, LinearMap] = dict(mu)
        g = source.groupoid
        cs, ct = source.complex, target.complex
        for x in g.objects:
            p0, p1 = self.phi0.get(x), self.phi1.get(x)
            if p0 is None or (p0.rows, p0.cols) != (ct.dim0[x], cs.dim0[x]):
                raise StructureError(f"degree-0 component at {x} has wrong shape")
            if p1 is None or (p1.rows, p1.cols) != (ct.dim1[x], cs.dim1[x]):
                raise StructureError(f"degree-1 component at {x} has wrong shape")
        for a in g.arrows:
            m = self.mu.get(a)
            if m is None or (m.rows, m.cols) != (ct.dim0[g.tgt[a]], cs.dim1[g.src[a]]):
                raise StructureError(f"homotopy operator at {a} has wrong shape")

    def __eq__(self, other):
        if not isinstance(other, RuthMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.phi0 == other.phi0 and self.phi1 == other.phi1
                and self.mu == other.mu)


def validate_morphism(m: RuthMorphism) -> Report:
    rep = Report("ruth-morphism")
    g = m.source.groupoid
    cs, ct = m.source.complex, m.target.complex
    r, rq = m.source, m.target
    for x in g.objects:
        lhs = linalg.compose(m.phi1[x], cs.diff[x])
        rhs = linalg.compose(ct.diff[x], m.phi0[x])
        if lhs != rhs:
            rep.add("morphism-identity-1", f"object {x}", repr(rhs), repr(lhs))
    for a in g.arrows:
        if g.is_unit(a) and not m.mu[a].is_zero():
            rep.add("mu-normalization", a, "zero", repr(m.mu[a]))
        s, t = g.src[a], g.tgt[a]
        lhs = (linalg.compose(m.phi0[t], r.lambda0[a])
               - linalg.compose(rq.lambda0[a], m.phi0[s]))
        rhs = linalg.compose(m.mu[a], cs.diff[s])
        if lhs != rhs:
            rep.add("morphism-identity-2", a, repr(rhs), repr(lhs))
        lhs = (linalg.compose(m.phi1[t], r.lambda1[a])
               - linalg.compose(rq.lambda1[a], m.phi1[s]))
        rhs = linalg.compose(ct.diff[t], m.mu[a])
        if lhs != rhs:
            rep.add("morphism-identity-3", a, repr(rhs), repr(lhs))
    for (g1, g2) in g.comp:
        g12 = g.comp[(g1, g2)]
        t1, s2 = g.tgt[g1], g.src[g2]
        lhs = (linalg.compose(m.phi0[t1], r.omega[(g1, g2)])
               + linalg.compose(m.mu[g1], r.lambda1[g2])
               + linalg.compose(rq.lambda0[g1], m.mu[g2]))
        rhs = (m.mu[g12] + linalg.compose(rq.omega[(g1, g2)], m.phi1[s2]))
        if lhs != rhs:
            rep.add("morphism-identity-4", f"({g1},{g2})", repr(rhs), repr(lhs))
    return rep


def identity_morphism(r: Ruth) -> RuthMorphism:
    g, c = r.groupoid, r.complex
    return RuthMorphism(
        r, r,
        {x: LinearMap.identity(c.dim0[x]) for x in g.objects},
        {x: LinearMap.identity(c.dim1[x]) for x in g.objects},
        {a: LinearMap.zero(c.dim0[g.tgt[a]], c.dim1[g.src[a]]) for a in g.arrows})


def compose_morphisms(m2: RuthMorphism, m1: RuthMorphism) -> RuthMorphism:
    """Componentwise composite; the homotopy operator pastes by
    whiskering, mu = phi0' . mu1 + mu2 . phi1."""
    if m1.target != m2.source:
        raise CompositionError("morphism boundaries do not match")
    g = m1.source.groupoid
    return RuthMorphism(
        m1.source, m2.target,
        {x: linalg.compose(m2.phi0[x], m1.phi0[x]) for x in g.objects},
        {x: linalg.compose(m2.phi1[x], m1.phi1[x]) for x in g.objects},
        {a: linalg.compose(m2.phi0[g.tgt[a]], m1.mu[a])
            + linalg.compose(m2.mu[a], m1.phi1[g.src[a]])
         for a in g.arrows})


def invert_morphism(m: RuthMorphism) -> RuthMorphism:
    g = m.source.groupoid
    p0i = {x: linalg.inverse(m.phi0[x]) for x in g.objects}
    p1i = {x: linalg.inverse(m.phi1[x]) for x in g.objects}
    return RuthMorphism(
        m.target, m.source, p0i, p1i,
        {a: -linalg.compose(linalg.compose(p0i[g.tgt[a]], m.mu[a]), p1i[g.src[a]])
         for a in g.arrows})


def gauge_transport(target: Ruth, phi0, phi1, mu) -> tuple[Ruth, RuthMorphism]:
    """Pull a valid representation back along invertible per-object maps and
    a unit-vanishing per-arrow operator.

    The source structure is solved from the morphism identities, so the
    returned (phi0, phi1, mu) is an isomorphism onto ``target`` by
    construction; both the new structure and the witness re-validate.
    """
    g = target.groupoid
    ct = target.complex
    phi0, phi1, mu = dict(phi0), dict(phi1), dict(mu)
    inv0, inv1 = {}, {}
    for x in g.objects:
        try:
            inv0[x] = linalg.inverse(phi0[x])
            inv1[x] = linalg.inverse(phi1[x])
        except NotInvertibleError as exc:
            raise NotInvertibleError(f"gauge components at {x} are singular") from exc
    for a in g.arrows:
        if g.is_unit(a) and not mu[a].is_zero():
            raise StructureError("gauge operator must vanish at unit arrows")
    diff = {x: linalg.compose(inv1[x], linalg.compose(ct.diff[x], phi0[x]))
            for x in g.objects}
    source_complex = TwoTermComplex(g.objects, dict(ct.dim0), dict(ct.dim1), diff)
    lambda0, lambda1 = {}, {}
    for a in g.arrows:
        s, t = g.src[a], g.tgt[a]
        lambda0[a] = linalg.compose(
            inv0[t],
            linalg.compose(target.lambda0[a], phi0[s]) + linalg.compose(mu[a], diff[s]))
        lambda1[a] = linalg.compose(
            inv1[t],
            linalg.compose(target.lambda1[a], phi1[s])
            + linalg.compose(ct.diff[t], mu[a]))
    omega = {}
    for (g1, g2) in g.comp:
        g12 = g.comp[(g1, g2)]
        t1, s2 = g.tgt[g1], g.src[g2]
        omega[(g1, g2)] = linalg.compose(
            inv0[t1],
            mu[g12]
            + linalg.compose(target.omega[(g1, g2)], phi1[s2])
            - linalg.compose(mu[g1], lambda1[g2])
            - linalg.compose(target.lambda0[g1], mu[g2]))
    source = Ruth(g, source_complex, lambda0, lambda1, omega)
    witness = RuthMorphism(source, target, phi0, phi1, mu)
    return source, witness


# -- the total operator --------------------------------------------------------


class TotalCochain:
    """Element of total degree n: a degree-n layer-0 part and a degree-(n-1)
    layer-1 part (absent at n = 0)."""

    def __init__(self, part0: SectionCochain, part1: Optional[SectionCochain]):
        if part0.layer != 0:
            raise StructureError("part0 must be valued in layer 0")
        if part1 is not None:
            if part1.layer != 1:
                raise StructureError("part1 must be valued in layer 1")
            if part1.degree != part0.degree - 1:
                raise StructureError("total cochain parts have incompatible degrees")
            if part1.coeffs != part0.coeffs or part1.groupoid != part0.groupoid:
                raise StructureError("total cochain parts disagree on coefficients")
        elif part0.degree != 0:
            raise StructureError("part1 may be omitted only in total degree 0")
        self.part0 = part0
        self.part1 = part1

    @property
    def degree(self) -> int:
        return self.part0.degree

    def is_zero(self) -> bool:
        return self.part0.is_zero() and (self.part1 is None or self.part1.is_zero())

    def __eq__(self, other):
        if not isinstance(other, TotalCochain):
            return NotImplemented
        p1a = self.part1
        p1b = other.part1
        if (p1a is None) != (p1b is None):
            a = p1a if p1a is not None else p1b
            if not a.is_zero():
                return False
            p1a = p1b = None
        return self.part0 == other.part0 and (p1a is None or p1a == p1b)


def _omega_insertion(r: Ruth, w1: SectionCochain) -> SectionCochain:
    """Contract the first two arguments through the transformation cochain:
    output degree k+2, valued in layer 0."""
    g = r.groupoid
    k = w1.degree
    out = {}
    for tup in g.nerve_tuples(k + 2):
        om = r.omega[(tup[0], tup[1])]
        out[tup] = om.apply(w1.value_over(tup[2:], g.src[tup[1]]))
    return SectionCochain(g, r.complex, 0, k + 2, out)


def _postcompose_diff(r: Ruth, w0: SectionCochain) -> SectionCochain:
    g = r.groupoid
    out = {}
    for tup, v in w0.values.items():
        fib = g.tuple_target(tup, w0.degree)
        out[tup] = r.complex.diff[fib].apply(v)
    return SectionCochain(g, r.complex, 1, w0.degree, out)


def total_operator(r: Ruth, c: TotalCochain) -> TotalCochain:
    """One application of the degree-one operator, under the documented
    sign convention (see the module docstring)."""
    g = r.groupoid
    n = c.degree
    if n + 1 > g.max_degree:
        raise DegreeError(f"total degree {n + 1} exceeds the nerve bound {g.max_degree}")
    out0 = twisted_differential(r.lambda0, c.part0)
    out1 = _postcompose_diff(r, c.part0)
    if c.part1 is not None:
        out0 = out0 + _omega_insertion(r, c.part1)
        out1 = out1 - twisted_differential(r.lambda1, c.part1)
    return TotalCochain(out0, out1)


def total_zero(r: Ruth, degree: int) -> TotalCochain:
    part0 = SectionCochain.zero(r.groupoid, r.complex, 0, degree)
    part1 = (SectionCochain.zero(r.groupoid, r.complex, 1, degree - 1)
             if degree > 0 else None)
    return TotalCochain(part0, part1)


def total_basis(r: Ruth, degree: int):
    """All basis elements of the total-degree-n space, layer-0 ones first."""
    g = r.groupoid
    out = []
    for tup in g.nerve_tuples(degree):
        fib = g.tuple_target(tup, degree)
        for i in range(r.complex.dim0[fib]):
            part0 = SectionCochain.basis(g, r.complex, 0, degree, tup, i)
            part1 = (SectionCochain.zero(g, r.complex, 1, degree - 1)
                     if degree > 0 else None)
            out.append(TotalCochain(part0, part1))
    if degree > 0:
        for tup in g.nerve_tuples(degree - 1):
            fib = g.tuple_target(tup, degree - 1)
            for i in range(r.complex.dim1[fib]):
                part1 = SectionCochain.basis(g, r.complex, 1, degree - 1, tup, i)
                part0 = SectionCochain.zero(g, r.complex, 0, degree)
                out.append(TotalCochain(part0, part1))
    return out


def square_is_zero(r: Ruth, max_total_degree: int = 2,
                   stop_early: bool = False) -> Report:
    """Apply the operator twice to every basis element of total degrees
    0..max_total_degree and report any nonzero result.  With ``stop_early``
    the sweep returns at the first counterexample."""
    rep = Report("square-zero")
    for n in range(max_total_degree + 1):
        for idx, b in enumerate(total_basis(r, n)):
            dd = total_operator(r, total_operator(r, b))
            if not dd.is_zero():
                rep.add("square-zero", f"total degree {n}, basis {idx}",
                        "zero", "nonzero")
                if stop_early:
                    return rep
    return rep


def star_total(c: TotalCochain, f: ScalarCochain) -> TotalCochain:
    part0 = star(c.part0, f)
    part1 = star(c.part1, f) if c.part1 is not None else None
    if part1 is None and part0.degree > 0:
        part1 = SectionCochain.zero(c.part0.groupoid, c.part0.coeffs, 1,
                                    part0.degree - 1)
    return TotalCochain(part0, part1)


def check_leibniz(r: Ruth, samples) -> Report:
    """Verify D(w * f) = (Dw) * f + (-1)^|w| w * (df) on the given
    (TotalCochain, ScalarCochain) pairs, exactly."""
    rep = Report("leibniz")
    for idx, (w, f) in enumerate(samples):
        lhs = total_operator(r, star_total(w, f))
        first = star_total(total_operator(r, w), f)
        second = star_total(w, coboundary(f))
        sign = 1 if w.degree % 2 == 0 else -1
        rhs0 = first.part0 + second.part0 if sign > 0 else first.part0 - second.part0
        if first.part1 is not None and second.part1 is not None:
            rhs1 = first.part1 + second.part1 if sign > 0 else first.part1 - second.part1
        else:
            rhs1 = first.part1 if first.part1 is not None else second.part1
        rhs = TotalCochain(rhs0, rhs1)
        if lhs != rhs:
            rep.add("leibniz", f"sample {idx}, |w|={w.degree}, |f|={f.degree}",
                    "equal sides", "mismatch")
    return rep
