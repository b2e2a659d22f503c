"""The coding of ordinals by finite sets of ordinals.

decode maps an ordinal to its base-2 exponent set; encode is the inverse
sum of distinct powers.  Formal inclusion and membership are the
pullbacks of subset and membership along this coding, and make the
ordinals a lattice with join/meet given by union/intersection of the
decoded sets.

Cones C(theta) and the mirrored-pattern sets D(eta) are the filter-base
sets used throughout the oracle layer; enumerate_universe materialises
the 2^|E| codes over a finite exponent set E.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import budget
from .errors import BudgetExceeded, PreconditionError
from .ordinal import (
    Ordinal,
    ZERO,
    _canon,
    compare,
    from_exponents,
    ord_key,
    ord_sum,
    pow2,
    shift_mul,
    split,
)


class FinOrdSet:
    """An immutable finite set of ordinals, iterated in ascending order."""

    __slots__ = ("_elems", "_sorted")

    def __init__(self, elems: Iterable[Ordinal] = ()):
        self._elems = frozenset(elems)
        self._sorted = tuple(sorted(self._elems, key=ord_key))

    def __contains__(self, a: Ordinal) -> bool:
        return a in self._elems

    def __iter__(self) -> Iterator[Ordinal]:
        return iter(self._sorted)

    def __len__(self) -> int:
        return len(self._elems)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinOrdSet):
            return NotImplemented
        return self._elems == other._elems

    def __hash__(self) -> int:
        return hash(self._elems)

    def __le__(self, other: "FinOrdSet") -> bool:
        return self._elems <= other._elems

    def __lt__(self, other: "FinOrdSet") -> bool:
        return self._elems < other._elems

    def union(self, other: "FinOrdSet") -> "FinOrdSet":
        return FinOrdSet(self._elems | other._elems)

    def intersection(self, other: "FinOrdSet") -> "FinOrdSet":
        return FinOrdSet(self._elems & other._elems)

    def ascending(self) -> tuple[Ordinal, ...]:
        return self._sorted

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in reversed(self._sorted)) + "}"

    def __repr__(self) -> str:
        return f"<finset {self}>"


def decode(alpha: Ordinal) -> FinOrdSet:
    """The alpha-th finite set of ordinals: alpha's exponent set."""
    return FinOrdSet(alpha.exponents)


def encode(s: FinOrdSet | Iterable[Ordinal]) -> Ordinal:
    """Sum of distinct powers 2^g over g in s; inverse of decode."""
    elems = s if isinstance(s, FinOrdSet) else FinOrdSet(s)
    return _canon(tuple(reversed(elems.ascending())))


def formal_subset(alpha: Ordinal, beta: Ordinal, strict: bool = False) -> bool:
    """Formal inclusion: the decoded set of alpha inside that of beta."""
    a = frozenset(alpha.exponents)
    b = frozenset(beta.exponents)
    return a < b if strict else a <= b


def formal_member(alpha: Ordinal, beta: Ordinal) -> bool:
    """Formal membership: alpha is one of beta's exponents."""
    return alpha in frozenset(beta.exponents)


def join(alpha: Ordinal, beta: Ordinal) -> Ordinal:
    """Lattice supremum: encode of the union of the decoded sets."""
    return encode(frozenset(alpha.exponents) | frozenset(beta.exponents))


def meet(alpha: Ordinal, beta: Ordinal) -> Ordinal:
    return encode(frozenset(alpha.exponents) & frozenset(beta.exponents))


def criterion_C(theta: Ordinal, alpha: Ordinal, beta: Ordinal, delta: Ordinal) -> bool:
    """Checks the splitting criterion at one instance (expected True).

    For beta < 2^theta:  2^theta*alpha + beta <= delta  iff  both
    2^theta*alpha and beta are <= delta, in the formal-inclusion order.
    """
    if compare(beta, pow2(theta)) >= 0:
        raise PreconditionError("criterion requires beta < 2^theta")
    high = shift_mul(theta, alpha)
    lhs = formal_subset(ord_sum(high, beta), delta)
    rhs = formal_subset(high, delta) and formal_subset(beta, delta)
    return lhs == rhs


def criterion_D(eta: Ordinal, alpha: Ordinal, xi: Ordinal, gamma: Ordinal, beta: Ordinal) -> bool:
    """Checks the mirrored-pattern criterion at one instance (expected True).

    With delta = 2^(eta*2)*alpha + 2^eta*xi + xi and beta, gamma, xi all
    below 2^eta:  2^eta*gamma + beta <= delta  iff  gamma, beta <= delta.
    """
    bound = pow2(eta)
    for name, v in (("beta", beta), ("gamma", gamma), ("xi", xi)):
        if compare(v, bound) >= 0:
            raise PreconditionError(f"criterion requires {name} < 2^eta")
    delta = ord_sum(ord_sum(shift_mul(ord_sum(eta, eta), alpha), shift_mul(eta, xi)), xi)
    lhs = formal_subset(ord_sum(shift_mul(eta, gamma), beta), delta)
    rhs = formal_subset(gamma, delta) and formal_subset(beta, delta)
    return lhs == rhs


@dataclass(frozen=True)
class FilterBaseSet:
    """One of the decidable filter-base sets: a cone, a D-set, or both."""

    kind: str  # "cone" | "d" | "dcone"
    theta: Ordinal = ZERO
    eta: Ordinal = ZERO

    @staticmethod
    def cone(theta: Ordinal) -> "FilterBaseSet":
        return FilterBaseSet("cone", theta=theta)

    @staticmethod
    def d(eta: Ordinal) -> "FilterBaseSet":
        return FilterBaseSet("d", eta=eta)

    @staticmethod
    def dcone(eta: Ordinal, theta: Ordinal) -> "FilterBaseSet":
        return FilterBaseSet("dcone", theta=theta, eta=eta)

    def contains(self, delta: Ordinal) -> bool:
        if self.kind == "cone":
            return formal_subset(self.theta, delta)
        if self.kind == "d":
            return _in_d(self.eta, delta)
        return formal_subset(self.theta, delta) and _in_d(self.eta, delta)

    def __str__(self) -> str:
        if self.kind == "cone":
            return f"C({self.theta})"
        if self.kind == "d":
            return f"D({self.eta})"
        return f"D({self.eta}, {self.theta})"


def _in_d(eta: Ordinal, delta: Ordinal) -> bool:
    """delta = 2^(eta*2)*alpha + 2^eta*xi + xi for some xi < 2^eta, alpha."""
    _, rest = split(delta, ord_sum(eta, eta))
    xi_hi, xi_lo = split(rest, eta)
    return xi_hi == xi_lo


def in_filter_base(s: FilterBaseSet, delta: Ordinal) -> bool:
    return s.contains(delta)


def d_member(eta: Ordinal, alpha: Ordinal, xi: Ordinal) -> Ordinal:
    """The element 2^(eta*2)*alpha + 2^eta*xi + xi of D(eta)."""
    if compare(xi, pow2(eta)) >= 0:
        raise PreconditionError("xi must be below 2^eta")
    return ord_sum(ord_sum(shift_mul(ord_sum(eta, eta), alpha), shift_mul(eta, xi)), xi)


def enumerate_universe(e: FinOrdSet, cap: int = budget.DEFAULT_EXPONENT_CAP) -> Iterator[Ordinal]:
    """All 2^|E| codes whose decoded set lies inside E, ascending."""
    if len(e) > cap:
        raise BudgetExceeded(f"universe over {len(e)} exponents exceeds cap {cap}")
    budget.check_enum_bits(len(e), "universe enumeration")
    asc = e.ascending()
    n = len(asc)
    for mask in range(1 << n):
        exps = tuple(asc[i] for i in range(n - 1, -1, -1) if mask >> i & 1)
        yield _canon(exps)


def hat(predicate: Callable[[Ordinal], bool], e: FinOrdSet,
        cap: int = budget.DEFAULT_EXPONENT_CAP) -> Iterator[Ordinal]:
    """Codes over E whose decoded elements all satisfy the predicate."""
    kept = FinOrdSet([x for x in e if predicate(x)])
    return enumerate_universe(kept, cap)


def cofinal_chain(e: FinOrdSet, cap: int = budget.DEFAULT_EXPONENT_CAP) -> list[Ordinal]:
    """The canonical strictly formal-increasing chain through E.

    Element n encodes the first n members of E in ascending order; the
    last element decodes to all of E.
    """
    if len(e) > cap:
        raise BudgetExceeded(f"chain over {len(e)} exponents exceeds cap {cap}")
    asc = e.ascending()
    return [encode(asc[:n]) for n in range(len(asc) + 1)]


def count_codes_below(delta: Ordinal, bound: Ordinal) -> int:
    """|{beta <= delta formally : beta < bound}| without enumeration.

    Counts subsets of delta's decoded set whose code is below bound, by
    walking bound's exponents from the top; checked against brute-force
    enumeration in the tests.
    """
    avail = sorted(delta.exponents, key=ord_key)  # ascending

    def count_lt(x: Ordinal) -> int:
        lo, hi = 0, len(avail)
        while lo < hi:
            mid = (lo + hi) // 2
            if compare(avail[mid], x) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo

    members = frozenset(delta.exponents)
    total = 0
    for b in bound.exponents:
        below = count_lt(b)
        # any code matching bound's exponents so far and then staying
        # strictly below b is smaller than bound
        total += 1 << below
        if b not in members:
            break
        avail = avail[:below]
    return total
