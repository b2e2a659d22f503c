"""Finite-scale laboratory for pair partitions and filter intersections.

Partitions colour the formally-ordered pairs of a finite universe with
0/1.  The searches are exhaustive within the universe, so every
negative verdict is honest only "at scale": a missing long 0-chain or a
found cofinal homogeneous set says nothing beyond the enumerated codes,
and reports carry the universe to make that explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from . import budget
from .errors import PreconditionError
from .fincode import FinOrdSet, FilterBaseSet, enumerate_universe, formal_subset
from .numerosity import PointSet, partial_count
from .ordinal import Ordinal, ord_key


class Partition2:
    """A 0/1 colouring of the formally-ordered pairs over a universe."""

    __slots__ = ("universe", "codes", "_color")

    def __init__(self, universe: FinOrdSet, color: Callable[[Ordinal, Ordinal], int]):
        self.universe = universe
        self.codes = list(enumerate_universe(universe))
        self._color = color

    def color(self, a: Ordinal, b: Ordinal) -> int:
        if not formal_subset(a, b, strict=True):
            raise PreconditionError("colour is defined on strictly ordered pairs only")
        c = self._color(a, b)
        if c not in (0, 1):
            raise PreconditionError(f"colour must be 0 or 1, got {c}")
        return c

    def zero_pairs(self) -> set[tuple[Ordinal, Ordinal]]:
        out = set()
        for i, a in enumerate(self.codes):
            for b in self.codes[i + 1:]:
                if formal_subset(a, b, strict=True) and self.color(a, b) == 0:
                    out.add((a, b))
        return out


def g_psi(psi: Mapping[Ordinal, int] | Callable[[Ordinal], int],
          universe: FinOrdSet) -> Partition2:
    """Colour 0 exactly where the labelling strictly drops along inclusion."""
    look = psi.__getitem__ if isinstance(psi, Mapping) else psi
    return Partition2(universe, lambda a, b: 0 if look(a) > look(b) else 1)


def find_zero_chain(g: Partition2, maxlen: int) -> list[Ordinal] | None:
    """A strictly increasing chain of maxlen codes whose steps are all 0.

    Exhaustive within the universe; None certifies absence at this
    scale only.
    """
    if maxlen <= 0:
        raise PreconditionError("chain length must be positive")
    if maxlen == 1:
        return [g.codes[0]] if g.codes else None
    budget.check_steps(len(g.codes) ** 2, "zero-chain search")
    # longest 0-step chain from each code, memoised over the code order
    succ: dict[Ordinal, list[Ordinal]] = {a: [] for a in g.codes}
    for i, a in enumerate(g.codes):
        for b in g.codes[i + 1:]:
            if formal_subset(a, b, strict=True) and g.color(a, b) == 0:
                succ[a].append(b)
    best: dict[Ordinal, list[Ordinal]] = {}
    for a in reversed(g.codes):
        best_tail: list[Ordinal] = []
        for b in succ[a]:
            if len(best[b]) > len(best_tail):
                best_tail = best[b]
        best[a] = [a] + best_tail
    for a in g.codes:
        if len(best[a]) >= maxlen:
            return best[a][:maxlen]
    return None


@dataclass(frozen=True)
class HomogeneousResult:
    """Either a cofinal 1-homogeneous set or an obstructing 0-chain."""

    kind: str  # "homogeneous" | "obstruction"
    members: tuple[Ordinal, ...] = ()
    color: int = 1
    chain: tuple[Ordinal, ...] = ()


def homogeneous_search(g: Partition2) -> HomogeneousResult:
    """Cofinal 1-homogeneous subset, or a full-height 0-chain obstruction.

    A 0-chain running through every level of the universe (one code per
    exponent count) is the finite shadow of an unbounded 0-chain and is
    reported first.  Otherwise codes are processed in descending order
    and kept when 1-compatible with everything retained so far; the
    kept set is verified to be cofinal (every code has a superset-code
    among the kept).
    """
    height = len(g.universe) + 1  # longest strictly increasing chain
    chain = find_zero_chain(g, height) if len(g.codes) > 1 else None
    if chain:
        return HomogeneousResult("obstruction", chain=tuple(chain))
    kept: list[Ordinal] = []
    for a in reversed(g.codes):
        ok = True
        for b in kept:
            if formal_subset(a, b, strict=True) and g.color(a, b) == 0:
                ok = False
                break
            if formal_subset(b, a, strict=True) and g.color(b, a) == 0:
                ok = False
                break
        if ok:
            kept.append(a)
    kept_set = set(kept)
    cofinal = all(
        any(formal_subset(u, h) for h in kept_set) for u in g.codes
    )
    if cofinal:
        return HomogeneousResult("homogeneous", members=tuple(sorted(kept, key=ord_key)), color=1)
    longest: list[Ordinal] = []
    for length in range(len(g.codes), 1, -1):
        found = find_zero_chain(g, length)
        if found:
            longest = found
            break
    return HomogeneousResult("obstruction", chain=tuple(longest))


def product_partition(gs: Sequence[Partition2]) -> Partition2:
    """Colour 1 exactly when every component does."""
    if not gs:
        raise PreconditionError("product of no partitions")
    universe = gs[0].universe
    for g in gs[1:]:
        if g.universe != universe:
            raise PreconditionError("partitions live on different universes")
    parts = list(gs)
    return Partition2(universe, lambda a, b: min(p.color(a, b) for p in parts))


@dataclass(frozen=True)
class FipResult:
    """Outcome of a finite-intersection search over one universe."""

    element: Ordinal | None
    universe: FinOrdSet

    @property
    def found(self) -> bool:
        return self.element is not None


def fip_check(families: Iterable[FilterBaseSet | Callable[[Ordinal], bool]],
              e: FinOrdSet) -> FipResult:
    """First common element of the families within the universe over E.

    Absence in a finite universe never refutes the finite-intersection
    property; the result records the scale either way.
    """
    preds = [fam.contains if isinstance(fam, FilterBaseSet) else fam for fam in families]
    for delta in enumerate_universe(e):
        if all(p(delta) for p in preds):
            return FipResult(delta, e)
    return FipResult(None, e)


def q_member(a: PointSet, b: PointSet, beta: Ordinal) -> bool:
    """Whether a's partial count strictly beats b's at the index beta."""
    return partial_count(a, beta) > partial_count(b, beta)


def q_predicate(a: PointSet, b: PointSet) -> Callable[[Ordinal], bool]:
    return lambda beta: q_member(a, b, beta)


def partition_report(universe: FinOrdSet, source: str, g: Partition2) -> str:
    """Structured text: universe, source, verdict, witness."""
    result = homogeneous_search(g)
    chain = find_zero_chain(g, 2)
    lines = [
        f"universe: {universe}",
        f"source: {source}",
    ]
    if chain is None:
        lines.append(f"zero-chain: none at scale {universe}")
    else:
        lines.append("zero-chain: " + " < ".join(str(c) for c in chain))
    if result.kind == "homogeneous":
        members = ", ".join(str(m) for m in sorted(result.members, key=ord_key, reverse=True))
        lines.append(f"verdict: cofinal 1-homogeneous set at scale {universe}")
        lines.append(f"witness: {{{members}}}")
    else:
        lines.append(f"verdict: obstruction at scale {universe}")
        lines.append("witness: " + " < ".join(str(c) for c in result.chain))
    return "\n".join(lines)


def fip_report(families: Sequence[FilterBaseSet | Callable[[Ordinal], bool]],
               names: Sequence[str], e: FinOrdSet) -> str:
    res = fip_check(families, e)
    lines = [f"universe: {e}", "families: " + ", ".join(names)]
    if res.found:
        lines.append(f"common element: {res.element}")
    else:
        lines.append(f"no common element at scale {e} (inconclusive)")
    return "\n".join(lines)
