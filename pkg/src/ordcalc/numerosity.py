"""Sizes for finite-dimensional ordinal point sets.

A PointSet keeps, per dimension, a disjoint union of boxes (products of
half-open ordinal intervals) plus explicit tuples not covered by any
box.  Normalisation refines box endpoints into a per-axis grid,
deduplicates, and greedily coalesces adjacent cells along each axis, so
set operations are exact; equality compares both sides over a common
refinement.

num assigns the exact size: per box the product of interval sizes
psi(hi) - psi(lo), plus one per tuple.  partial_count is the finite
oracle: the number of points whose coordinate join sits formally under
the index, computed per box as a product of coordinate counts.

realize inverts num constructively on non-negative values, and
diff_witness produces the disjoint make-up set whose size is exactly
the difference of two comparable sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import budget
from .errors import PreconditionError
from .euclid import (
    EuclidInt,
    PsConst,
    PsCount,
    PsPow,
    PsPow2,
    PartialSumExpr,
    ZERO_E,
    add,
    compare,
    from_integer,
    mul,
    neg,
    partial_sum,
    psi,
    sign,
)
from .fincode import FinOrdSet, encode, formal_subset
from .ordinal import (
    Ordinal,
    ZERO,
    _canon,
    compare as ord_compare,
    from_int,
    ord_key,
    ord_sum,
    pow2,
    shift_mul,
    successor,
)


@dataclass(frozen=True, order=False)
class Interval:
    """Half-open ordinal interval [lo, hi), nonempty."""

    lo: Ordinal
    hi: Ordinal

    def __post_init__(self):
        if ord_compare(self.lo, self.hi) >= 0:
            raise PreconditionError(f"empty interval [{self.lo}, {self.hi})")

    def contains(self, a: Ordinal) -> bool:
        return ord_compare(self.lo, a) <= 0 and ord_compare(a, self.hi) < 0

    def size(self) -> EuclidInt:
        return add(psi(self.hi), neg(psi(self.lo)))

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi})"

    def _key(self):
        return (ord_key(self.lo), ord_key(self.hi))

    def __lt__(self, other: "Interval") -> bool:
        return self._key() < other._key()


Box = tuple[Interval, ...]
Tuple_ = tuple[Ordinal, ...]


def _box_key(box: Box):
    return tuple(iv._key() for iv in box)


def _tuple_key(t: Tuple_):
    return tuple(ord_key(a) for a in t)


def _refine_axis(iv: Interval, cuts: Sequence[Ordinal]) -> list[Interval]:
    """Split [lo, hi) at the interior cut points (cuts sorted ascending)."""
    points = [iv.lo] + [c for c in cuts if ord_compare(iv.lo, c) < 0 and ord_compare(c, iv.hi) < 0] + [iv.hi]
    return [Interval(a, b) for a, b in zip(points, points[1:])]


def _normalize_boxes(n: int, boxes: Iterable[Box]) -> frozenset[Box]:
    boxes = list(boxes)
    if not boxes:
        return frozenset()
    grids = []
    for i in range(n):
        pts = {b[i].lo for b in boxes} | {b[i].hi for b in boxes}
        grids.append(sorted(pts, key=ord_key))
    cells: set[Box] = set()
    for b in boxes:
        parts = [_refine_axis(b[i], grids[i]) for i in range(n)]
        stack: list[tuple[Interval, ...]] = [()]
        for axis_parts in parts:
            stack = [prefix + (piece,) for prefix in stack for piece in axis_parts]
        cells.update(stack)
    # coalesce adjacent cells axis by axis until stable
    changed = True
    while changed:
        changed = False
        for axis in range(n - 1, -1, -1):
            groups: dict[tuple, list[Interval]] = {}
            for cell in cells:
                key = cell[:axis] + cell[axis + 1:]
                groups.setdefault(key, []).append(cell[axis])
            merged: set[Box] = set()
            for key, ivs in groups.items():
                ivs.sort()
                runs: list[Interval] = []
                for iv in ivs:
                    if runs and runs[-1].hi == iv.lo:
                        runs[-1] = Interval(runs[-1].lo, iv.hi)
                    else:
                        runs.append(iv)
                if len(runs) != len(ivs):
                    changed = True
                for iv in runs:
                    merged.add(key[:axis] + (iv,) + key[axis:])
            cells = merged
    return frozenset(cells)


def _box_contains(box: Box, t: Tuple_) -> bool:
    return all(iv.contains(a) for iv, a in zip(box, t))


class PointSet:
    """Canonical finite-dimensional set of ordinal tuples."""

    __slots__ = ("dims",)

    dims: dict[int, tuple[frozenset[Box], frozenset[Tuple_]]]

    def __init__(self, boxes: Iterable[Box] = (), tuples: Iterable[Tuple_] = ()):
        per_dim_boxes: dict[int, list[Box]] = {}
        for b in boxes:
            b = tuple(b)
            if not b:
                raise PreconditionError("boxes need at least one axis")
            per_dim_boxes.setdefault(len(b), []).append(b)
        per_dim_tuples: dict[int, set[Tuple_]] = {}
        for t in tuples:
            t = tuple(t)
            if not t:
                raise PreconditionError("tuples need at least one coordinate")
            per_dim_tuples.setdefault(len(t), set()).add(t)
        dims: dict[int, tuple[frozenset[Box], frozenset[Tuple_]]] = {}
        for n in sorted(set(per_dim_boxes) | set(per_dim_tuples)):
            nb = _normalize_boxes(n, per_dim_boxes.get(n, []))
            nt = frozenset(t for t in per_dim_tuples.get(n, set())
                           if not any(_box_contains(b, t) for b in nb))
            if nb or nt:
                dims[n] = (nb, nt)
        self.dims = dims

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def empty() -> "PointSet":
        return PointSet()

    @staticmethod
    def interval(lo: Ordinal, hi: Ordinal) -> "PointSet":
        return PointSet(boxes=[(Interval(lo, hi),)])

    @staticmethod
    def from_points(points: Iterable[Tuple_ | Ordinal]) -> "PointSet":
        tuples = [(p,) if isinstance(p, Ordinal) else tuple(p) for p in points]
        return PointSet(tuples=tuples)

    # -- structure ------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.dims

    def dimensions(self) -> list[int]:
        return sorted(self.dims)

    def _as_boxes(self) -> dict[int, set[Box]]:
        """Every dimension as boxes only (tuples become unit boxes)."""
        out: dict[int, set[Box]] = {}
        for n, (bs, ts) in self.dims.items():
            acc = set(bs)
            for t in ts:
                acc.add(tuple(Interval(a, successor(a)) for a in t))
            out[n] = acc
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        mine, theirs = self._as_boxes(), other._as_boxes()
        if set(mine) != set(theirs):
            return False
        for n in mine:
            cuts = [sorted({b[i].lo for b in mine[n] | theirs[n]}
                           | {b[i].hi for b in mine[n] | theirs[n]}, key=ord_key)
                    for i in range(n)]

            def cells(boxes):
                out = set()
                for b in boxes:
                    parts = [_refine_axis(b[i], cuts[i]) for i in range(n)]
                    stack: list[Box] = [()]
                    for axis_parts in parts:
                        stack = [p + (piece,) for p in stack for piece in axis_parts]
                    out.update(stack)
                return out

            if cells(mine[n]) != cells(theirs[n]):
                return False
        return True

    def __hash__(self) -> int:
        # hash on the box-only common form is unstable across
        # presentations; use num, which is presentation-invariant
        return hash(num(self).terms)

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        parts = []
        for n in self.dimensions():
            bs, ts = self.dims[n]
            for b in sorted(bs, key=_box_key):
                parts.append(" >< ".join(str(iv) for iv in b))
            if ts:
                parts.append("{" + ", ".join(
                    (str(t[0]) if len(t) == 1 else "(" + ", ".join(str(a) for a in t) + ")")
                    for t in sorted(ts, key=_tuple_key)) + "}")
        return " | ".join(parts)

    def __repr__(self) -> str:
        return f"<pointset {self}>"

    # -- oracle ---------------------------------------------------------------

    def partial_count(self, delta: Ordinal) -> int:
        return partial_count(self, delta)


def normalize(boxes: Iterable[Box] = (), tuples: Iterable[Tuple_] = ()) -> PointSet:
    return PointSet(boxes, tuples)


def union(a: PointSet, b: PointSet) -> PointSet:
    boxes: list[Box] = []
    tuples: list[Tuple_] = []
    for src in (a, b):
        for n, (bs, ts) in src.dims.items():
            boxes.extend(bs)
            tuples.extend(ts)
    return PointSet(boxes, tuples)


def _interval_intersect(x: Interval, y: Interval) -> Interval | None:
    lo = x.lo if ord_compare(x.lo, y.lo) >= 0 else y.lo
    hi = x.hi if ord_compare(x.hi, y.hi) <= 0 else y.hi
    return Interval(lo, hi) if ord_compare(lo, hi) < 0 else None


def intersect(a: PointSet, b: PointSet) -> PointSet:
    boxes: list[Box] = []
    tuples: list[Tuple_] = []
    for n in set(a.dims) & set(b.dims):
        abs_, ats = a.dims[n]
        bbs, bts = b.dims[n]
        for x in abs_:
            for y in bbs:
                ivs = [_interval_intersect(p, q) for p, q in zip(x, y)]
                if all(iv is not None for iv in ivs):
                    boxes.append(tuple(ivs))  # type: ignore[arg-type]
        for t in ats:
            if t in bts or any(_box_contains(y, t) for y in bbs):
                tuples.append(t)
        for t in bts:
            if any(_box_contains(x, t) for x in abs_):
                tuples.append(t)
    return PointSet(boxes, tuples)


def difference(a: PointSet, b: PointSet) -> PointSet:
    boxes: list[Box] = []
    tuples: list[Tuple_] = []
    for n, (abs_, ats) in a.dims.items():
        if n not in b.dims:
            boxes.extend(abs_)
            tuples.extend(ats)
            continue
        bbs, bts = b.dims[n]
        cuts = [sorted({x[i].lo for x in abs_ | bbs} | {x[i].hi for x in abs_ | bbs}, key=ord_key)
                for i in range(n)]
        bcells: set[Box] = set()
        for y in bbs:
            parts = [_refine_axis(y[i], cuts[i]) for i in range(n)]
            stack: list[Box] = [()]
            for axis_parts in parts:
                stack = [p + (piece,) for p in stack for piece in axis_parts]
            bcells.update(stack)
        kept: list[Box] = []
        for x in abs_:
            parts = [_refine_axis(x[i], cuts[i]) for i in range(n)]
            stack: list[Box] = [()]
            for axis_parts in parts:
                stack = [p + (piece,) for p in stack for piece in axis_parts]
            kept.extend(c for c in stack if c not in bcells)
        # puncture cells at the tuple points of b
        for t in sorted(bts, key=_tuple_key):
            next_kept: list[Box] = []
            for cell in kept:
                if not _box_contains(cell, t):
                    next_kept.append(cell)
                    continue
                for piece in _puncture(cell, t):
                    next_kept.append(piece)
            kept = next_kept
        boxes.extend(kept)
        for t in ats:
            if t in bts or any(_box_contains(y, t) for y in bbs):
                continue
            tuples.append(t)
    return PointSet(boxes, tuples)


def _puncture(cell: Box, t: Tuple_) -> Iterator[Box]:
    """The cell minus one interior point, as disjoint boxes."""
    axis_pieces: list[list[Interval]] = []
    for iv, p in zip(cell, t):
        pieces = []
        if ord_compare(iv.lo, p) < 0:
            pieces.append((Interval(iv.lo, p), False))
        pieces.append((Interval(p, successor(p)), True))
        if ord_compare(successor(p), iv.hi) < 0:
            pieces.append((Interval(successor(p), iv.hi), False))
        axis_pieces.append(pieces)
    stack: list[tuple[Box, bool]] = [((), True)]
    for pieces in axis_pieces:
        stack = [(prefix + (iv,), centre and is_mid) for prefix, centre in stack for iv, is_mid in pieces]
    for box, centre in stack:
        if not centre:  # the all-middle cell is exactly the point
            yield box


def product(a: PointSet, b: PointSet) -> PointSet:
    """Cartesian product; coordinates concatenate, dimensions add."""
    boxes: list[Box] = []
    tuples: list[Tuple_] = []
    ab, bb = a._as_boxes(), b._as_boxes()
    for na, xs in ab.items():
        for nb, ys in bb.items():
            for x in xs:
                for y in ys:
                    boxes.append(x + y)
    return PointSet(boxes, tuples)


def num(a: PointSet) -> EuclidInt:
    """Exact size: additive over the canonical disjoint decomposition."""
    total = ZERO_E
    for n, (bs, ts) in a.dims.items():
        for b in bs:
            term = from_integer(1)
            for iv in b:
                term = mul(term, iv.size())
            total = add(total, term)
        total = add(total, from_integer(len(ts)))
    return total


def partial_count(a: PointSet, delta: Ordinal) -> int:
    """Number of points whose coordinate join is formally under delta.

    The join of a tuple sits under delta exactly when every coordinate
    does, so boxes contribute the product of per-axis counts of members
    of delta-hat.
    """
    exps = delta.exponents
    budget.check_enum_bits(len(exps), "partial count")
    n = len(exps)
    hat: list[Ordinal] = [_canon(tuple(exps[i] for i in range(n) if mask >> i & 1))
                          for mask in range(1 << n)]
    hat.sort(key=ord_key)

    def count_below(x: Ordinal) -> int:
        lo, hi = 0, len(hat)
        while lo < hi:
            mid = (lo + hi) // 2
            if ord_compare(hat[mid], x) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo

    total = 0
    for _, (bs, ts) in a.dims.items():
        for b in bs:
            prod = 1
            for iv in b:
                prod *= count_below(iv.hi) - count_below(iv.lo)
                if prod == 0:
                    break
            total += prod
        members = frozenset(exps)
        for t in ts:
            if all(frozenset(c.exponents) <= members for c in t):
                total += 1
    return total


def realize(z: EuclidInt) -> PointSet:
    """A one-dimensional set whose num is exactly z (z must be >= 0).

    Greedy by descending keys from a placement cursor: positive
    coefficients append blocks of length 2^l, negative ones carve the
    corresponding amount off the front of the most recent block; lower
    monomials are infinitesimal against the enclosing block, so the
    carve always fits.
    """
    s, _ = sign(z)
    if s < 0:
        raise PreconditionError("cannot realize a negative value")
    if s == 0:
        return PointSet.empty()
    blocks: list[list[Ordinal]] = []  # [lo, hi] pairs, mutated in place
    for lam, c in z.terms:
        width = shift_mul(lam, from_int(abs(c)))
        if c > 0:
            cursor = blocks[-1][1] if blocks else ZERO
            blocks.append([cursor, ord_sum(cursor, width)])
        else:
            if not blocks:
                raise PreconditionError("leading coefficient must be positive")
            lo, hi = blocks[-1]
            new_lo = ord_sum(lo, width)
            if ord_compare(new_lo, hi) >= 0:
                raise PreconditionError("carve exceeds enclosing block")
            blocks[-1][0] = new_lo
    return PointSet(boxes=[(Interval(lo, hi),) for lo, hi in blocks])


def _max_exponent(a: PointSet) -> Ordinal:
    """Largest base-2 exponent appearing in any endpoint or coordinate."""
    top = ZERO
    for n, (bs, ts) in a.dims.items():
        for b in bs:
            for iv in b:
                for e in iv.lo.exponents[:1] + iv.hi.exponents[:1]:
                    if ord_compare(e, top) > 0:
                        top = e
        for t in ts:
            for c in t:
                for e in c.exponents[:1]:
                    if ord_compare(e, top) > 0:
                        top = e
    return top


def shift_set(a: PointSet, base: Ordinal) -> PointSet:
    """Translate a one-dimensional set by a high power offset.

    Size is preserved when base's exponents dominate everything in a,
    because psi splits over disjoint exponent ranges.
    """
    boxes: list[Box] = []
    tuples: list[Tuple_] = []
    for n, (bs, ts) in a.dims.items():
        if n != 1:
            raise PreconditionError("shift applies to one-dimensional sets")
        boxes.extend((Interval(ord_sum(base, iv.lo), ord_sum(base, iv.hi)),) for (iv,) in bs)
        tuples.extend((ord_sum(base, t[0]),) for t in ts)
    return PointSet(boxes, tuples)


def diff_witness(a: PointSet, b: PointSet) -> PointSet:
    """Nonempty C disjoint from both with num(a) + num(C) = num(b).

    Realizes the difference, then translates it above every exponent of
    a, b and the realization so the copy is disjoint and size-exact.
    """
    d = add(num(b), neg(num(a)))
    s, _ = sign(d)
    if s <= 0:
        raise PreconditionError("first set must be strictly smaller")
    raw = realize(d)
    top = ZERO
    for s_ in (a, b, raw):
        e = _max_exponent(s_)
        if ord_compare(e, top) > 0:
            top = e
    eta = successor(top)
    c = shift_set(raw, pow2(eta))
    assert intersect(c, union(a, b)).is_empty
    assert add(num(a), num(c)) == num(b)
    return c


def permute_coords(a: PointSet, perms: dict[int, Sequence[int]]) -> PointSet:
    """Rearrange coordinates dimension-wise by the given permutations."""
    boxes: list[Box] = []
    tuples: list[Tuple_] = []
    for n, (bs, ts) in a.dims.items():
        perm = tuple(perms.get(n, range(n)))
        if sorted(perm) != list(range(n)):
            raise PreconditionError(f"not a permutation of {n} coordinates: {perm}")
        boxes.extend(tuple(b[i] for i in perm) for b in bs)
        tuples.extend(tuple(t[i] for i in perm) for t in ts)
    return PointSet(boxes, tuples)


def congruence_check(a: PointSet, perms: dict[int, Sequence[int]]) -> bool:
    """Coordinate permutations preserve support, hence must preserve num."""
    r, _ = compare(num(permute_coords(a, perms)), num(a))
    return r == 0


def finset_num(x: PointSet) -> PartialSumExpr:
    """Size of the set of finite subsets of a one-dimensional x.

    Labelling a finite subset by the join of its elements, the subsets
    labelled under delta are exactly the subsets of x's points under
    delta, so the exact partial-sum form is 2^count.
    """
    if any(n != 1 for n in x.dimensions()):
        raise PreconditionError("finite-subset size needs a one-dimensional set")
    return PsPow2(PsCount(x))


def finmap_num(x: PointSet, y: PointSet) -> PartialSumExpr:
    """Size of the finite partial maps x -> y, labelled by joins.

    A map whose label sits under delta is a partial function from the
    points of x under delta to those of y under delta, giving the form
    (1 + count(y)) ^ count(x).
    """
    for s in (x, y):
        if any(n != 1 for n in s.dimensions()):
            raise PreconditionError("finite-map size needs one-dimensional sets")
    return PsPow(PsConst(1) + PsCount(y), PsCount(x))
