"""Exact rational linear algebra kernel.

Scalars are ``fractions.Fraction`` (always reduced, positive denominator).
Vectors are columns, maps act on the left, and ``compose(f, g)`` applies
``g`` first.  Every routine with a choice to make (kernel bases, right
inverses, particular solutions) uses the same deterministic rule: row
reduce with the leftmost pivot in the earliest row, set free variables
to zero, and emit one kernel vector per free column with entry 1 at that
column.  This makes downstream splittings and connections reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, NotInvertibleError, NotSurjectiveError, PinningError

Scalar = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce ints, strings like ``"p/q"``, or Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: Fraction) -> str:
    return str(value)


# -- vectors ----------------------------------------------------------------

def vector(entries: Iterable) -> Vector:
    return tuple(rat(e) for e in entries)


def vec_zero(n: int) -> Vector:
    return (ZERO,) * n


def vec_basis(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(a: Vector, b: Vector) -> Vector:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths {len(a)} != {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths {len(a)} != {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Vector) -> Vector:
    c = rat(c)
    return tuple(c * x for x in a)


def vec_concat(*vs: Vector) -> Vector:
    out: list[Fraction] = []
    for v in vs:
        out.extend(v)
    return tuple(out)


def is_zero_vec(a: Vector) -> bool:
    return all(x == 0 for x in a)


# -- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """Dense exact matrix, row-major.  Immutable and hashable."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} map needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    # construction ----------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "LinearMap":
        r = len(rows)
        c = len(rows[0]) if r else 0
        ent: list[Fraction] = []
        for row in rows:
            if len(row) != c:
                raise DimensionError("ragged rows")
            ent.extend(rat(x) for x in row)
        return LinearMap(r, c, tuple(ent))

    @staticmethod
    def from_columns(cols: Sequence[Vector], rows: int) -> "LinearMap":
        for col in cols:
            if len(col) != rows:
                raise DimensionError("column has wrong length")
        ent = tuple(cols[j][i] for i in range(rows) for j in range(len(cols)))
        return LinearMap(rows, len(cols), ent)

    @staticmethod
    def identity(n: int) -> "LinearMap":
        return LinearMap(n, n, tuple(ONE if i == j else ZERO
                                     for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "LinearMap":
        return LinearMap(rows, cols, (ZERO,) * (rows * cols))

    # access ----------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def with_entry(self, i: int, j: int, value) -> "LinearMap":
        ent = list(self.entries)
        ent[i * self.cols + j] = rat(value)
        return LinearMap(self.rows, self.cols, tuple(ent))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "LinearMap":
        ent = tuple(self.entry(i, j) for i in range(r0, r1) for j in range(c0, c1))
        return LinearMap(r1 - r0, c1 - c0, ent)

    # algebra ---------------------------------------------------------------

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in sum")
        return LinearMap(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in difference")
        return LinearMap(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "LinearMap":
        return LinearMap(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "LinearMap":
        c = rat(c)
        return LinearMap(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return compose(self, other)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"map with {self.cols} columns applied to length-{len(v)} vector")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum((self.entries[base + j] * v[j] for j in range(self.cols)), ZERO))
        return tuple(out)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == LinearMap.identity(self.rows)

    def __repr__(self):
        rows = [[str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]
        return f"LinearMap({self.rows}x{self.cols}: {rows})"


def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """Matrix product f*g, i.e. the map applying g first."""
    if f.cols != g.rows:
        raise DimensionError(f"cannot compose {f.rows}x{f.cols} after {g.rows}x{g.cols}")
    ent = []
    for i in range(f.rows):
        frow = f.row(i)
        for j in range(g.cols):
            ent.append(sum((frow[k] * g.entry(k, j) for k in range(f.cols)), ZERO))
    return LinearMap(f.rows, g.cols, tuple(ent))


def hstack(*maps: LinearMap) -> LinearMap:
    rows = maps[0].rows
    if any(m.rows != rows for m in maps):
        raise DimensionError("hstack needs equal row counts")
    ent = []
    for i in range(rows):
        for m in maps:
            ent.extend(m.row(i))
    return LinearMap(rows, sum(m.cols for m in maps), tuple(ent))


def vstack(*maps: LinearMap) -> LinearMap:
    cols = maps[0].cols
    if any(m.cols != cols for m in maps):
        raise DimensionError("vstack needs equal column counts")
    ent = []
    for m in maps:
        ent.extend(m.entries)
    return LinearMap(sum(m.rows for m in maps), cols, tuple(ent))


def direct_sum(f: LinearMap, g: LinearMap) -> LinearMap:
    top = hstack(f, LinearMap.zero(f.rows, g.cols))
    bot = hstack(LinearMap.zero(g.rows, f.cols), g)
    return vstack(top, bot)


# -- elimination ------------------------------------------------------------

def _rref(m: LinearMap) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with the leftmost-pivot, earliest-row rule."""
    a = [list(m.row(i)) for i in range(m.rows)]
    pivots: list[int] = []
    pr = 0
    for pc in range(m.cols):
        hit = None
        for r in range(pr, m.rows):
            if a[r][pc] != 0:
                hit = r
                break
        if hit is None:
            continue
        a[pr], a[hit] = a[hit], a[pr]
        pv = a[pr][pc]
        if pv != 1:
            a[pr] = [x / pv for x in a[pr]]
        for r in range(m.rows):
            if r != pr and a[r][pc] != 0:
                fac = a[r][pc]
                a[r] = [x - fac * y for x, y in zip(a[r], a[pr])]
        pivots.append(pc)
        pr += 1
        if pr == m.rows:
            break
    return a, pivots


def rank(f: LinearMap) -> int:
    return len(_rref(f)[1])


def kernel_basis(f: LinearMap) -> tuple[Vector, ...]:
    """Basis of ker f, one vector per free column, entry 1 at that column.

    Deterministic: the free columns are taken in increasing order and the
    pivot-coordinate entries are the negated reduced-row coefficients, so
    the basis matrix is in reduced column echelon form up to the sign
    convention above.
    """
    a, pivots = _rref(f)
    pivot_set = set(pivots)
    basis = []
    for free in range(f.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * f.cols
        v[free] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][free]
        basis.append(tuple(v))
    return tuple(basis)


def solve(f: LinearMap, b: Vector) -> Optional[Vector]:
    """A particular solution of f x = b with free variables zero, or None."""
    if len(b) != f.rows:
        raise DimensionError(f"solve: {f.rows} rows but length-{len(b)} target")
    aug = hstack(f, LinearMap.from_columns([b], f.rows))
    a, pivots = _rref(aug)
    if f.cols in pivots:
        return None
    x = [ZERO] * f.cols
    for r, pc in enumerate(pivots):
        x[pc] = a[r][f.cols]
    return tuple(x)


def right_inverse_on_image(
    f: LinearMap,
    pinned: Sequence[tuple[Vector, Vector]] | None = None,
) -> LinearMap:
    """A section g of a surjective f (f @ g = identity), deterministically.

    ``pinned`` is a list of (target, preimage) pairs; the section must send
    each pinned target to its preimage.  Targets may be linearly dependent
    as long as the preimages agree on the dependency.  Off the pinned
    subspace the section is the leftmost-pivot particular solution.
    """
    n = f.rows
    span: list[Vector] = []    # columns of the invertible change of basis
    images: list[Vector] = []  # chosen preimages, aligned with span
    for tgt, pre in (pinned or ()):
        if len(tgt) != n or len(pre) != f.cols:
            raise DimensionError("pinned pair has wrong shape")
        if f.apply(pre) != tuple(tgt):
            raise PinningError("pinned preimage does not map to its target")
        trial = LinearMap.from_columns(span + [tuple(tgt)], n)
        if rank(trial) == len(span) + 1:
            span.append(tuple(tgt))
            images.append(tuple(pre))
        else:
            # dependent target: the induced preimage must agree
            coeffs = solve(LinearMap.from_columns(span, n), tuple(tgt)) if span else None
            if coeffs is None:
                raise PinningError("dependent pinned target with no expansion")
            induced = vec_zero(f.cols)
            for c, img in zip(coeffs, images):
                induced = vec_add(induced, vec_scale(c, img))
            if induced != tuple(pre):
                raise PinningError("pinned preimages disagree on a dependent target")
    for i in range(n):
        if len(span) == n:
            break
        e = vec_basis(n, i)
        trial = LinearMap.from_columns(span + [e], n)
        if rank(trial) != len(span) + 1:
            continue
        pre = solve(f, e)
        if pre is None:
            raise NotSurjectiveError(f"no preimage for basis vector {i}")
        span.append(e)
        images.append(pre)
    if len(span) < n:
        raise NotSurjectiveError("map is not surjective")
    basis = LinearMap.from_columns(span, n)
    img = LinearMap.from_columns(images, f.cols)
    return compose(img, inverse(basis))


def inverse(f: LinearMap) -> LinearMap:
    if f.rows != f.cols:
        raise NotInvertibleError(f"{f.rows}x{f.cols} map is not square")
    aug = hstack(f, LinearMap.identity(f.rows))
    a, pivots = _rref(aug)
    if pivots != list(range(f.rows)):
        raise NotInvertibleError("map is singular")
    ent = tuple(a[i][f.cols + j] for i in range(f.rows) for j in range(f.rows))
    return LinearMap(f.rows, f.cols, ent)


def is_invertible(f: LinearMap) -> bool:
    return f.rows == f.cols and rank(f) == f.rows


# -- serialization helpers ---------------------------------------------------

def map_to_dict(f: LinearMap) -> dict:
    return {"rows": f.rows, "cols": f.cols, "entries": [str(e) for e in f.entries]}


def map_from_dict(d: dict) -> LinearMap:
    return LinearMap(int(d["rows"]), int(d["cols"]),
                     tuple(rat(e) for e in d["entries"]))
