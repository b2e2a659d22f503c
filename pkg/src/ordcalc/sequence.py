"""Finitely presented integer sequences over the ordinal index line.

A StepSequence is a finite list of disjoint half-open constant pieces
[lo, hi) plus pointwise overrides; everywhere else the value is 0.  Its
counting function at delta is the finite sum of values over all codes
formally included in delta, computed by honest subset enumeration (the
package's single exponential primitive).

from_counting inverts counting on a finite universe: every integer
function on the universe is the counting function of exactly one
assignment, recovered by the top-down recursion
x_a = psi(a) - sum over proper formal subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import budget
from .errors import PreconditionError
from .fincode import FinOrdSet, enumerate_universe, formal_subset, join
from .ordinal import (
    Ordinal,
    _canon,
    compare,
    limit_split,
    ord_key,
    ord_sum,
    pow2,
    shift_mul,
    successor,
)


@dataclass(frozen=True)
class Piece:
    lo: Ordinal
    hi: Ordinal
    value: int

    def __post_init__(self):
        if compare(self.lo, self.hi) >= 0:
            raise PreconditionError(f"empty piece [{self.lo}, {self.hi})")


class StepSequence:
    """Integer-valued sequence with interval pieces and point overrides."""

    __slots__ = ("pieces", "overrides")

    def __init__(self, pieces: Iterable[tuple[Ordinal, Ordinal, int] | Piece] = (),
                 overrides: Mapping[Ordinal, int] | None = None):
        raw = [p if isinstance(p, Piece) else Piece(*p) for p in pieces]
        raw.sort(key=lambda p: ord_key(p.lo))
        merged: list[Piece] = []
        for p in raw:
            if p.value == 0:
                continue
            if merged and compare(merged[-1].hi, p.lo) > 0:
                raise PreconditionError("pieces overlap")
            if merged and merged[-1].hi == p.lo and merged[-1].value == p.value:
                merged[-1] = Piece(merged[-1].lo, p.hi, p.value)
            else:
                merged.append(p)
        self.pieces = tuple(merged)
        ov = {}
        for a, v in (overrides or {}).items():
            if v != self._piece_value(a):
                ov[a] = v
        self.overrides = dict(sorted(ov.items(), key=lambda kv: ord_key(kv[0])))

    def _piece_value(self, alpha: Ordinal) -> int:
        for p in self.pieces:
            if compare(p.lo, alpha) <= 0 and compare(alpha, p.hi) < 0:
                return p.value
        return 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepSequence):
            return NotImplemented
        return self.pieces == other.pieces and self.overrides == other.overrides

    def __hash__(self) -> int:
        return hash((self.pieces, tuple(self.overrides.items())))

    def support_bounded_by(self, bound: Ordinal) -> bool:
        """True when the sequence vanishes at every index >= bound."""
        for p in self.pieces:
            if compare(p.hi, bound) > 0:
                return False
        return all(compare(a, bound) < 0 for a in self.overrides)

    def __str__(self) -> str:
        parts = [f"[{p.lo},{p.hi}):{p.value}" for p in self.pieces]
        parts += [f"@{a}:{v}" for a, v in self.overrides.items()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<seq {self}>"


def chi(lo: Ordinal, hi: Ordinal) -> StepSequence:
    """Characteristic sequence of the interval [lo, hi)."""
    return StepSequence([(lo, hi, 1)])


def value_at(x: StepSequence, alpha: Ordinal) -> int:
    ov = x.overrides.get(alpha)
    if ov is not None:
        return ov
    return x._piece_value(alpha)


def counting(x: StepSequence, delta: Ordinal) -> int:
    """Sum of x over all beta formally included in delta (exact)."""
    exps = delta.exponents
    budget.check_enum_bits(len(exps), "counting")
    total = 0
    n = len(exps)
    for mask in range(1 << n):
        beta = _canon(tuple(exps[i] for i in range(n) if mask >> i & 1))
        total += value_at(x, beta)
    return total


def from_counting(psi: Mapping[Ordinal, int] | Callable[[Ordinal], int],
                  e: FinOrdSet) -> dict[Ordinal, int]:
    """The unique assignment on the universe over E whose counting is psi.

    Recovered pointwise: x_a = psi(a) - sum of x over proper formal
    subsets of a.  The result is a plain map; the inverse of an
    arbitrary counting function need not be interval-shaped.
    """
    look = psi.__getitem__ if isinstance(psi, Mapping) else psi
    x: dict[Ordinal, int] = {}
    for alpha in enumerate_universe(e):
        exps = alpha.exponents
        n = len(exps)
        acc = 0
        for mask in range((1 << n) - 1):  # proper subsets only
            acc += x[_canon(tuple(exps[i] for i in range(n) if mask >> i & 1))]
        x[alpha] = look(alpha) - acc
    return x


def linear_combo(u: int, x: StepSequence, v: int, y: StepSequence) -> StepSequence:
    """Pointwise u*x + v*y with endpoints refined to the common grid."""
    cuts = sorted({p.lo for p in x.pieces} | {p.hi for p in x.pieces}
                  | {p.lo for p in y.pieces} | {p.hi for p in y.pieces}, key=ord_key)
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        val = u * x._piece_value(lo) + v * y._piece_value(lo)
        if val:
            pieces.append((lo, hi, val))
    overrides = {}
    for a in set(x.overrides) | set(y.overrides):
        overrides[a] = u * value_at(x, a) + v * value_at(y, a)
    return StepSequence(pieces, overrides)


def translate(x: StepSequence, eta: Ordinal, gamma: Ordinal) -> StepSequence:
    """Shift x from [0, 2^eta) to the copy starting at 2^eta * gamma."""
    bound = pow2(eta)
    if not x.support_bounded_by(bound):
        raise PreconditionError(f"sequence does not vanish above 2^{eta}")
    base = shift_mul(eta, gamma)
    return StepSequence(
        [(ord_sum(base, p.lo), ord_sum(base, p.hi), p.value) for p in x.pieces],
        {ord_sum(base, a): v for a, v in x.overrides.items()},
    )


def product_partial(x: StepSequence, y: StepSequence, delta: Ordinal) -> int:
    """Double partial sum of x_a * y_b over pairs with join(a,b) <= delta.

    Computed literally over all pairs and cross-checked against the
    grouped form counting(x) * counting(y); the two agree because the
    join lies under delta exactly when both components do.
    """
    exps = delta.exponents
    budget.check_enum_bits(2 * len(exps), "double partial sum")
    n = len(exps)
    codes = [_canon(tuple(exps[i] for i in range(n) if mask >> i & 1))
             for mask in range(1 << n)]
    total = 0
    for a in codes:
        xa = value_at(x, a)
        if xa == 0:
            continue
        for b in codes:
            if formal_subset(join(a, b), delta):
                total += xa * value_at(y, b)
    grouped = counting(x, delta) * counting(y, delta)
    if total != grouped:
        raise AssertionError("pairwise and grouped double sums disagree")
    return total


def linearize(x: StepSequence, y: StepSequence, eta: Ordinal) -> StepSequence:
    """The double sequence x_b * y_g laid out at indexes 2^eta*b + g.

    Needs x to have finitely many nonzero entries (each spawns a shifted
    copy of y); both supports must sit below 2^eta.
    """
    bound = pow2(eta)
    if not (x.support_bounded_by(bound) and y.support_bounded_by(bound)):
        raise PreconditionError("both supports must lie below 2^eta")
    supp: list[Ordinal] = []
    for p in x.pieces:
        lam_lo, k_lo = limit_split(p.lo)
        lam_hi, k_hi = limit_split(p.hi)
        if lam_lo != lam_hi:
            raise PreconditionError("x must have finite support to linearize")
        budget.check_steps(len(supp) + k_hi - k_lo, "linearize support")
        v = p.lo
        for _ in range(k_hi - k_lo):
            supp.append(v)
            v = successor(v)
    supp.extend(a for a in x.overrides if x._piece_value(a) == 0)
    pieces: list[tuple[Ordinal, Ordinal, int]] = []
    overrides: dict[Ordinal, int] = {}
    for b in supp:
        xb = value_at(x, b)
        if xb == 0:
            continue
        base = shift_mul(eta, b)
        for q in y.pieces:
            pieces.append((ord_sum(base, q.lo), ord_sum(base, q.hi), xb * q.value))
        for g, v in y.overrides.items():
            overrides[ord_sum(base, g)] = xb * v
    return StepSequence(pieces, overrides)
