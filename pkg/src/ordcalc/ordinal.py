"""Exact ordinal arithmetic below epsilon_0 in hereditary base-2 form.

An ordinal is stored as the strictly decreasing tuple of its base-2
exponents, each exponent itself an Ordinal; the empty tuple is 0.  The
representation has one fixed point, 2^w = w, honoured by a single
interned OMEGA value whose exponent tuple is (OMEGA,).  All construction
funnels through the canonical constructors, so structural equality is
value equality and the form is unique.

Natural numbers are exactly the values whose exponents are all natural
numbers (their exponent set is the binary expansion).  Comparison is the
antilexicographic order on exponent sets, which restricts to integer
order on the naturals.

Besides the Hessenberg operations nat_sum / nat_prod, only the ordinary
operations actually needed downstream are provided: pow2, shift_mul
(left product by a power of two), ord_sum, and split.  A fully general
ordinary product is deliberately absent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Iterator

from . import budget
from .errors import BudgetExceeded, PreconditionError

# Finite values are mirrored into a plain int only while the bit size
# stays sane; larger naturals keep the structural form.
_NAT_BITS_CAP = 1 << 14


class Ordinal:
    """Immutable ordinal in canonical hereditary base-2 normal form."""

    __slots__ = ("exponents", "_nat", "_finite", "_depth", "_hash")

    exponents: tuple["Ordinal", ...]

    def __init__(self, *_args, **_kwargs):
        raise TypeError("use from_int / from_exponents / the module constants")

    # -- construction ----------------------------------------------------

    @staticmethod
    def _build(exps: tuple["Ordinal", ...]) -> "Ordinal":
        self = object.__new__(Ordinal)
        self.exponents = exps
        self._finite = all(e._finite for e in exps)
        if self._finite and all(e._nat is not None and e._nat < _NAT_BITS_CAP for e in exps):
            self._nat = sum(1 << e._nat for e in exps)
        else:
            self._nat = None
        self._depth = 1 + max((e._depth for e in exps), default=-1)
        if self._depth > budget.max_depth():
            raise BudgetExceeded(f"ordinal nesting depth {self._depth} exceeds cap {budget.max_depth()}")
        self._hash = hash(tuple(e._hash for e in exps))
        return self

    # -- value helpers ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.exponents

    @property
    def is_finite(self) -> bool:
        return self._finite

    @property
    def is_limit_or_zero(self) -> bool:
        return not self.exponents or not self.exponents[-1]._finite

    def nat_value(self) -> int:
        """Integer value of a finite ordinal."""
        if not self._finite:
            raise PreconditionError(f"{self} is not a natural number")
        if self._nat is None:
            raise BudgetExceeded("natural number too large to materialise")
        return self._nat

    # -- equality / order -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Ordinal):
            return NotImplemented
        if self._hash != other._hash:
            return False
        if self._nat is not None and other._nat is not None:
            return self._nat == other._nat
        return self.exponents == other.exponents

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Ordinal") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Ordinal") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Ordinal") -> bool:
        return compare(self, other) >= 0

    def __bool__(self) -> bool:
        return bool(self.exponents)

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"<ord {render(self)}>"


def _canon(exps: tuple[Ordinal, ...]) -> Ordinal:
    """Build from already strictly decreasing distinct exponents."""
    if len(exps) == 1 and exps[0] is OMEGA:
        return OMEGA
    if not exps:
        return ZERO
    return Ordinal._build(exps)


# -- interned constants ----------------------------------------------------

ZERO: Ordinal = object.__new__(Ordinal)
ZERO.exponents = ()
ZERO._nat = 0
ZERO._finite = True
ZERO._depth = 0
ZERO._hash = hash(())

OMEGA: Ordinal = object.__new__(Ordinal)
OMEGA.exponents = (OMEGA,)
OMEGA._nat = None
OMEGA._finite = False
OMEGA._depth = 1
OMEGA._hash = 0x9E3779B97F4A7C15

ONE: Ordinal = _canon((ZERO,))

_INT_CACHE: dict[int, Ordinal] = {0: ZERO, 1: ONE}


def from_int(n: int) -> Ordinal:
    """The natural number n as an Ordinal (binary expansion)."""
    if n < 0:
        raise PreconditionError("ordinals are non-negative")
    cached = _INT_CACHE.get(n)
    if cached is not None:
        return cached
    exps = tuple(from_int(i) for i in range(n.bit_length() - 1, -1, -1) if n >> i & 1)
    result = _canon(exps)
    if n < 4096:
        _INT_CACHE[n] = result
    return result


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total ordinal order: negative for LT, zero for EQ, positive for GT.

    Antilexicographic on exponent sets: the side owning the largest
    element of the symmetric difference is the larger ordinal.
    """
    if a is b:
        return 0
    if a._nat is not None and b._nat is not None:
        return (a._nat > b._nat) - (a._nat < b._nat)
    if a._finite != b._finite:
        return -1 if a._finite else 1
    for x, y in zip(a.exponents, b.exponents):
        c = compare(x, y)
        if c:
            return c
    return (len(a.exponents) > len(b.exponents)) - (len(a.exponents) < len(b.exponents))


ord_key = cmp_to_key(compare)


def from_exponents(es: Iterable[Ordinal]) -> Ordinal:
    """Canonical ordinal with the given exponent multiset.

    Duplicates resolve by binary carry, 2^d + 2^d = 2^(d+1); the result
    is sorted and interned.
    """
    counts: dict[Ordinal, int] = {}
    for e in es:
        counts[e] = counts.get(e, 0) + 1
    budget.check_steps(len(counts), "exponent merge")
    pending = [d for d, c in counts.items() if c >= 2]
    while pending:
        d = pending.pop()
        c = counts.get(d, 0)
        if c < 2:
            continue
        if c & 1:
            counts[d] = 1
        else:
            del counts[d]
        s = successor(d)
        counts[s] = counts.get(s, 0) + (c >> 1)
        if counts[s] >= 2:
            pending.append(s)
    return _canon(tuple(sorted(counts, key=ord_key, reverse=True)))


def pow2(a: Ordinal) -> Ordinal:
    """2^a.  pow2(w) = w falls out of interning, not a special case here."""
    return _canon((a,))


def nat_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg (natural) sum: merge exponent multisets with carry."""
    return from_exponents(a.exponents + b.exponents)


def nat_prod(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg (natural) product: bilinear over 2^d (x) 2^e = 2^(d(+)e)."""
    budget.check_steps(len(a.exponents) * len(b.exponents), "natural product")
    return from_exponents([nat_sum(d, e) for d in a.exponents for e in b.exponents])


# -- base-omega block view ---------------------------------------------------
#
# Every exponent d splits uniquely as d = l + k with l a limit (or 0) and
# k finite, so a = sum over blocks of 2^l * m where m collects the bits
# 2^k.  Ordinary addition, left subtraction and rendering all work on
# this view.


def limit_split(a: Ordinal) -> tuple[Ordinal, int]:
    """a = l + k with l limit-or-zero and k finite; returns (l, k)."""
    if a._nat is not None:
        return ZERO, a._nat
    exps = a.exponents
    i = len(exps)
    while i > 0 and exps[i - 1]._finite:
        i -= 1
    lam = _canon(exps[:i])
    k = 0
    for e in exps[i:]:
        if e._nat is None:
            raise BudgetExceeded("finite part too large to materialise")
        k += 1 << e._nat
    return lam, k


def to_blocks(a: Ordinal) -> list[tuple[Ordinal, int]]:
    """Descending [(l, m)] with a = sum of 2^l * m, l limit-or-zero, m >= 1."""
    blocks: dict[Ordinal, int] = {}
    order: list[Ordinal] = []
    for e in a.exponents:
        lam, k = limit_split(e)
        if lam not in blocks:
            blocks[lam] = 0
            order.append(lam)
        blocks[lam] |= 1 << k
    return [(lam, blocks[lam]) for lam in order]


def _add_fin(lam: Ordinal, k: int) -> Ordinal:
    """l + k for l limit-or-zero and finite k; exponent sets are disjoint."""
    if k == 0:
        return lam
    bits = tuple(from_int(i) for i in range(k.bit_length() - 1, -1, -1) if k >> i & 1)
    return _canon(lam.exponents + bits)


def from_blocks(blocks: Iterable[tuple[Ordinal, int]]) -> Ordinal:
    """Inverse of to_blocks; blocks must be descending with positive m."""
    exps: list[Ordinal] = []
    for lam, m in blocks:
        if m <= 0:
            raise PreconditionError("block coefficients must be positive")
        for i in range(m.bit_length() - 1, -1, -1):
            if m >> i & 1:
                exps.append(_add_fin(lam, i))
    return _canon(tuple(exps))


def ord_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinary ordinal addition a + b.

    Blocks of a strictly below b's leading block are absorbed; the
    boundary block adds coefficients.
    """
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    if a._nat is not None and b._nat is not None:
        return from_int(a._nat + b._nat)
    ab = to_blocks(a)
    bb = to_blocks(b)
    lead, lead_m = bb[0]
    out: list[tuple[Ordinal, int]] = []
    for lam, m in ab:
        c = compare(lam, lead)
        if c > 0:
            out.append((lam, m))
        elif c == 0:
            lead_m += m
            break
        else:
            break
    out.append((lead, lead_m))
    out.extend(bb[1:])
    return from_blocks(out)


def successor(a: Ordinal) -> Ordinal:
    return ord_sum(a, ONE)


def ord_left_sub(t: Ordinal, e: Ordinal) -> Ordinal:
    """The unique g with t + g = e; requires t <= e."""
    tb = to_blocks(t)
    eb = to_blocks(e)
    for i, (lam, m) in enumerate(tb):
        if i >= len(eb):
            raise PreconditionError(f"{t} > {e}: left subtraction undefined")
        elam, em = eb[i]
        c = compare(lam, elam)
        if c > 0 or (c == 0 and m > em):
            raise PreconditionError(f"{t} > {e}: left subtraction undefined")
        if c < 0 or m < em:
            # t's remaining blocks are absorbed by e's block here
            return from_blocks([(elam, em - m if c == 0 else em)] + eb[i + 1:])
    return from_blocks(eb[len(tb):])


def shift_mul(theta: Ordinal, gamma: Ordinal) -> Ordinal:
    """2^theta * gamma, by left distributivity: sum of 2^(theta + g_i)."""
    return _canon(tuple(ord_sum(theta, g) for g in gamma.exponents))


def split(a: Ordinal, theta: Ordinal) -> tuple[Ordinal, Ordinal]:
    """The unique (g, d) with a = 2^theta * g + d and d < 2^theta."""
    big = []
    small = []
    for e in a.exponents:
        (big if compare(e, theta) >= 0 else small).append(e)
    gamma = _canon(tuple(ord_left_sub(theta, e) for e in big))
    delta = _canon(tuple(small))
    return gamma, delta


def omega_quotient(lam: Ordinal) -> Ordinal:
    """The q with w * q = lam, for lam limit or zero."""
    if not lam.is_limit_or_zero:
        raise PreconditionError(f"{lam} is not a limit ordinal")
    if lam is OMEGA:
        return ONE
    exps = []
    for d in lam.exponents:
        sub, k = limit_split(d)
        q = omega_quotient(sub)
        # 2^d = w^q * 2^k and w^q = w * w^(q - 1) in the left sense
        exps.append(_add_fin(shift_mul(OMEGA, ord_left_sub(ONE, q)), k))
    return _canon(tuple(exps))


# -- rendering ---------------------------------------------------------------


def render(a: Ordinal) -> str:
    """Canonical text: blocks w^q*m descending, e.g. ``w^2 + w*2 + 3``."""
    if a.is_zero:
        return "0"
    parts = []
    for lam, m in to_blocks(a):
        if lam.is_zero:
            parts.append(str(m))
            continue
        q = omega_quotient(lam)
        if q == ONE:
            head = "w"
        elif q.is_finite:
            head = f"w^{q.nat_value()}"
        else:
            head = f"w^({render(q)})"
        parts.append(head if m == 1 else f"{head}*{m}")
    return " + ".join(parts)


@dataclass(frozen=True)
class Universe:
    """A kappa-surrogate: exclusive index bound plus an enumeration budget.

    The bound must be a single power 2^theta (or zero/one), which makes
    it closed under joins of its members' exponent sets.
    """

    bound: Ordinal
    work_budget: int = budget.DEFAULT_BUDGET

    def __post_init__(self):
        if len(self.bound.exponents) > 1:
            raise PreconditionError("universe bound must be 0, 1 or a single power of two")
        if self.work_budget <= 0:
            raise PreconditionError("work budget must be positive")

    def contains(self, a: Ordinal) -> bool:
        return compare(a, self.bound) < 0

    def check_enum(self, n: int) -> None:
        if n > self.work_budget:
            raise BudgetExceeded(f"enumeration of {n} items exceeds universe budget {self.work_budget}")


def iter_naturals(n: int) -> Iterator[Ordinal]:
    """The first n naturals as Ordinals."""
    for i in range(n):
        yield from_int(i)
