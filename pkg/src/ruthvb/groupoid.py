"""Finite groupoids with explicit tables, their nerves, and the axiom checker.

Objects and arrows are opaque string identifiers.  Composition follows the
source/target convention ``comp(g1, g2)`` defined exactly when
``src(g1) == tgt(g2)``; the composite runs g2 first, so nerves list tuples
``(g1, ..., gp)`` with ``src(g_i) == tgt(g_{i+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CompositionError, StructureError
from .reports import Report


class FiniteGroupoid:
    """Explicit groupoid tables.  Well-formedness is enforced at construction;
    the algebraic axioms are checked separately by :func:`validate_groupoid`
    so that deliberately broken fixtures remain representable."""

    def __init__(self, objects, arrows, src, tgt, unit, comp, inv, max_degree: int = 4):
        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.arrows: tuple[str, ...] = tuple(sorted(arrows))
        self.src: dict[str, str] = dict(src)
        self.tgt: dict[str, str] = dict(tgt)
        self.unit: dict[str, str] = dict(unit)
        self.comp: dict[tuple[str, str], str] = dict(comp)
        self.inv: dict[str, str] = dict(inv)
        self.max_degree = max_degree
        self._nerves: dict[int, tuple[tuple[str, ...], ...]] = {}
        self._check_well_formed()
        self.unit_arrows = frozenset(self.unit.values())

    def _check_well_formed(self):
        objs, arrs = set(self.objects), set(self.arrows)
        if len(objs) != len(self.objects) or len(arrs) != len(self.arrows):
            raise StructureError("duplicate identifiers")
        for a in self.arrows:
            if a not in self.src or a not in self.tgt:
                raise StructureError(f"arrow {a} missing src/tgt")
            if self.src[a] not in objs or self.tgt[a] not in objs:
                raise StructureError(f"arrow {a} has unknown endpoint")
            if self.inv.get(a) not in arrs:
                raise StructureError(f"arrow {a} missing or unknown inverse")
        for x in self.objects:
            if self.unit.get(x) not in arrs:
                raise StructureError(f"object {x} missing unit arrow")
        for (g1, g2), g12 in self.comp.items():
            if g1 not in arrs or g2 not in arrs or g12 not in arrs:
                raise StructureError(f"composition entry ({g1},{g2}) uses unknown arrows")
            if self.src[g1] != self.tgt[g2]:
                raise StructureError(f"composition entry ({g1},{g2}) is not composable")
        for g1 in self.arrows:
            for g2 in self.arrows:
                if self.src[g1] == self.tgt[g2] and (g1, g2) not in self.comp:
                    raise StructureError(f"missing composition entry ({g1},{g2})")

    # -- structure maps ------------------------------------------------------

    def is_unit(self, arrow: str) -> bool:
        return arrow in self.unit_arrows

    def compose(self, g1: str, g2: str) -> str:
        """Composite g1*g2 (g2 first)."""
        try:
            return self.comp[(g1, g2)]
        except KeyError:
            raise CompositionError(f"arrows {g1}, {g2} are not composable") from None

    def compose_tuple(self, tup: tuple[str, ...]) -> str:
        out = tup[0]
        for g in tup[1:]:
            out = self.compose(out, g)
        return out

    # -- nerve ---------------------------------------------------------------

    def nerve_tuples(self, p: int) -> tuple[tuple[str, ...], ...]:
        """All composable p-tuples in lexicographic arrow-id order.

        Degree 0 returns one singleton per object (the object id itself).
        """
        if p < 0:
            raise StructureError("nerve degree must be nonnegative")
        if p not in self._nerves:
            if p == 0:
                self._nerves[p] = tuple((x,) for x in self.objects)
            elif p == 1:
                self._nerves[p] = tuple((a,) for a in self.arrows)
            else:
                prev = self.nerve_tuples(p - 1)
                out = []
                for tup in prev:
                    last_src = self.src[tup[-1]]
                    for a in self.arrows:
                        if self.tgt[a] == last_src:
                            out.append(tup + (a,))
                self._nerves[p] = tuple(out)
        return self._nerves[p]

    def tuple_target(self, tup: tuple[str, ...], degree: int) -> str:
        """t_p: the target of the full composite (the object for degree 0)."""
        return tup[0] if degree == 0 else self.tgt[tup[0]]

    def tuple_source(self, tup: tuple[str, ...], degree: int) -> str:
        return tup[0] if degree == 0 else self.src[tup[-1]]

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (self.objects, self.arrows, self.src, self.tgt, self.unit,
                self.comp, self.inv) == (other.objects, other.arrows, other.src,
                                         other.tgt, other.unit, other.comp, other.inv)


@dataclass(frozen=True)
class Nerve:
    groupoid: FiniteGroupoid
    degree: int
    tuples: tuple[tuple[str, ...], ...] = field(default=())

    def target(self, tup) -> str:
        return self.groupoid.tuple_target(tup, self.degree)

    def source(self, tup) -> str:
        return self.groupoid.tuple_source(tup, self.degree)


def nerve(g: FiniteGroupoid, p: int) -> Nerve:
    return Nerve(g, p, g.nerve_tuples(p))


def degeneracy_positions(n: Nerve) -> tuple[bool, ...]:
    """Flag the tuples containing at least one unit arrow."""
    if n.degree == 0:
        return (False,) * len(n.tuples)
    return tuple(any(n.groupoid.is_unit(a) for a in tup) for tup in n.tuples)


def validate_groupoid(g: FiniteGroupoid) -> Report:
    """Exhaustive axiom sweep; every violated instance gets a report entry."""
    rep = Report("groupoid")
    for x in g.objects:
        u = g.unit[x]
        if g.src[u] != x or g.tgt[u] != x:
            rep.add("unit-endpoints", f"object {x}",
                    f"src=tgt={x}", f"src={g.src[u]}, tgt={g.tgt[u]}")
    for (g1, g2), g12 in g.comp.items():
        if g.src[g12] != g.src[g2] or g.tgt[g12] != g.tgt[g1]:
            rep.add("composite-endpoints", f"({g1},{g2})",
                    f"src={g.src[g2]}, tgt={g.tgt[g1]}",
                    f"src={g.src[g12]}, tgt={g.tgt[g12]}")
    for a in g.arrows:
        lu = g.comp.get((g.unit[g.tgt[a]], a))
        ru = g.comp.get((a, g.unit[g.src[a]]))
        if lu != a:
            rep.add("left-unit", a, a, str(lu))
        if ru != a:
            rep.add("right-unit", a, a, str(ru))
        b = g.inv[a]
        if g.src[b] != g.tgt[a] or g.tgt[b] != g.src[a]:
            rep.add("inverse-endpoints", a,
                    f"src={g.tgt[a]}, tgt={g.src[a]}",
                    f"src={g.src[b]}, tgt={g.tgt[b]}")
            continue
        if g.comp.get((a, b)) != g.unit[g.tgt[a]]:
            rep.add("right-inverse", a, g.unit[g.tgt[a]], str(g.comp.get((a, b))))
        if g.comp.get((b, a)) != g.unit[g.src[a]]:
            rep.add("left-inverse", a, g.unit[g.src[a]], str(g.comp.get((b, a))))
    for (g1, g2, g3) in g.nerve_tuples(3):
        left = g.comp.get((g.comp[(g1, g2)], g3))
        right = g.comp.get((g1, g.comp[(g2, g3)]))
        if left != right:
            rep.add("associativity", f"({g1},{g2},{g3})", str(left), str(right))
    return rep


# -- builders ----------------------------------------------------------------

def trivial_groupoid(objects, max_degree: int = 4) -> FiniteGroupoid:
    """Unit groupoid on a set: the only arrows are the identities,
    each named after its object."""
    objs = sorted(objects)
    return FiniteGroupoid(
        objects=objs,
        arrows=objs,
        src={x: x for x in objs},
        tgt={x: x for x in objs},
        unit={x: x for x in objs},
        comp={(x, x): x for x in objs},
        inv={x: x for x in objs},
        max_degree=max_degree,
    )


def cyclic_groupoid(n: int, obj: str = "*", prefix: str = "r") -> FiniteGroupoid:
    """One-object groupoid with cyclic isotropy of order n (r0 is the unit)."""
    arrows = [f"{prefix}{k}" for k in range(n)]
    return FiniteGroupoid(
        objects=[obj],
        arrows=arrows,
        src={a: obj for a in arrows},
        tgt={a: obj for a in arrows},
        unit={obj: f"{prefix}0"},
        comp={(f"{prefix}{i}", f"{prefix}{j}"): f"{prefix}{(i + j) % n}"
              for i in range(n) for j in range(n)},
        inv={f"{prefix}{i}": f"{prefix}{(n - i) % n}" for i in range(n)},
    )


def z2_groupoid() -> FiniteGroupoid:
    """The group Z2 as a one-object groupoid with arrows e, g."""
    return FiniteGroupoid(
        objects=["*"],
        arrows=["e", "g"],
        src={"e": "*", "g": "*"},
        tgt={"e": "*", "g": "*"},
        unit={"*": "e"},
        comp={("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"},
        inv={"e": "e", "g": "g"},
    )


def transitive_groupoid(objects, isotropy: int, prefix: str = "a") -> FiniteGroupoid:
    """Connected groupoid on the given objects with cyclic isotropy.

    Arrow ``{prefix}:{x}>{y}:{k}`` runs x -> y; composition adds the cyclic
    labels.  With one object this is the cyclic group, with isotropy 1 the
    pair groupoid.
    """
    objs = sorted(objects)
    name = lambda x, y, k: f"{prefix}:{x}>{y}:{k}"
    arrows, src, tgt = [], {}, {}
    for x in objs:
        for y in objs:
            for k in range(isotropy):
                a = name(x, y, k)
                arrows.append(a)
                src[a] = x
                tgt[a] = y
    comp = {}
    for g1y in objs:
        for g1t in objs:
            for i in range(isotropy):
                g1 = name(g1y, g1t, i)      # g1: g1y -> g1t
                for g2s in objs:
                    for j in range(isotropy):
                        g2 = name(g2s, g1y, j)   # g2: g2s -> g1y, composable
                        comp[(g1, g2)] = name(g2s, g1t, (i + j) % isotropy)
    return FiniteGroupoid(
        objects=objs,
        arrows=arrows,
        src=src,
        tgt=tgt,
        unit={x: name(x, x, 0) for x in objs},
        comp=comp,
        inv={name(x, y, k): name(y, x, (isotropy - k) % isotropy)
             for x in objs for y in objs for k in range(isotropy)},
    )


def pair_groupoid(objects) -> FiniteGroupoid:
    return transitive_groupoid(objects, isotropy=1, prefix="p")


def disjoint_union(*groupoids: FiniteGroupoid) -> FiniteGroupoid:
    """Disjoint union; identifiers are prefixed with the component index."""
    objects, arrows, src, tgt, unit, comp, inv = [], [], {}, {}, {}, {}, {}
    for idx, g in enumerate(groupoids):
        tag = lambda s: f"c{idx}.{s}"
        objects.extend(tag(x) for x in g.objects)
        arrows.extend(tag(a) for a in g.arrows)
        src.update({tag(a): tag(g.src[a]) for a in g.arrows})
        tgt.update({tag(a): tag(g.tgt[a]) for a in g.arrows})
        unit.update({tag(x): tag(g.unit[x]) for x in g.objects})
        comp.update({(tag(a), tag(b)): tag(c) for (a, b), c in g.comp.items()})
        inv.update({tag(a): tag(g.inv[a]) for a in g.arrows})
    return FiniteGroupoid(objects, arrows, src, tgt, unit, comp, inv)
