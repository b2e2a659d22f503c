"""Normal forms and decidable ordered arithmetic for transfinite sums.

The carrier is the subring generated by the ordinals: integer
combinations of basis monomials P(l) for l a limit ordinal or zero,
where P(l) stands for the transfinite sum of ones over [0, 2^l).  The
folding identity P(l + k) = 2^k * P(l) for finite k makes the form
canonical, so equality is decidable.

partial_sum evaluates the canonical representative at any index delta:
sum of c_l * 2^(number of delta-exponents below l).  The sign of a
nonzero value is the sign of its top coefficient, and sign() returns a
checkable certificate: a cone base theta such that every delta above it
gives a partial sum of the claimed sign.  The certificate packs, for
each lower key, enough elements of the gap below the top key to force
dominance of the leading term.

Symbolic partial-sum expressions (counts, powers of counts) cover the
values that live outside the carrier; they evaluate exactly at any
index but comparisons are only sampled along chains and always labelled
heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import budget
from .errors import BudgetExceeded, PreconditionError
from .fincode import FinOrdSet, encode, formal_subset
from .ordinal import (
    Ordinal,
    ZERO,
    compare as ord_compare,
    from_int,
    limit_split,
    ord_key,
    ord_sum,
    nat_sum,
)
from .sequence import StepSequence, counting

LT, EQ, GT = -1, 0, 1
_REL_NAMES = {-1: "LT", 0: "EQ", 1: "GT"}
_SIGN_NAMES = {-1: "NEG", 0: "ZERO", 1: "POS"}


def rel_name(rel: int) -> str:
    return _REL_NAMES[rel]


def sign_name(s: int) -> str:
    return _SIGN_NAMES[s]


class EuclidInt:
    """Finitely supported integer combination of monomials P(l)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, coeffs: Mapping[Ordinal, int] | Iterable[tuple[Ordinal, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Ordinal, int] = {}
        for lam, c in items:
            if not lam.is_limit_or_zero:
                raise PreconditionError(f"key {lam} is not limit-or-zero")
            acc[lam] = acc.get(lam, 0) + c
        self.terms = tuple(
            (lam, acc[lam]) for lam in sorted(acc, key=ord_key, reverse=True) if acc[lam]
        )
        self._hash = hash(self.terms)

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, lam: Ordinal) -> int:
        for k, c in self.terms:
            if k == lam:
                return c
        return 0

    def keys(self) -> tuple[Ordinal, ...]:
        return tuple(k for k, _ in self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = from_integer(other)
        if not isinstance(other, EuclidInt):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "EuclidInt | int") -> "EuclidInt":
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "EuclidInt":
        return neg(self)

    def __sub__(self, other: "EuclidInt | int") -> "EuclidInt":
        return add(self, neg(_coerce(other)))

    def __rsub__(self, other: "EuclidInt | int") -> "EuclidInt":
        return add(_coerce(other), neg(self))

    def __mul__(self, other: "EuclidInt | int") -> "EuclidInt":
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    # -- order ----------------------------------------------------------------

    def __lt__(self, other: "EuclidInt | int") -> bool:
        return compare(self, _coerce(other))[0] < 0

    def __le__(self, other: "EuclidInt | int") -> bool:
        return compare(self, _coerce(other))[0] <= 0

    def __gt__(self, other: "EuclidInt | int") -> bool:
        return compare(self, _coerce(other))[0] > 0

    def __ge__(self, other: "EuclidInt | int") -> bool:
        return compare(self, _coerce(other))[0] >= 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam, c in self.terms:
            if lam.is_zero:
                body = str(abs(c))
            elif abs(c) == 1:
                body = f"P({lam})"
            else:
                body = f"{abs(c)}*P({lam})"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<eint {self}>"


def _coerce(v: "EuclidInt | int") -> EuclidInt:
    return v if isinstance(v, EuclidInt) else from_integer(v)


ZERO_E = EuclidInt()
UNIT = EuclidInt([(ZERO, 1)])


def from_integer(n: int) -> EuclidInt:
    return EuclidInt([(ZERO, n)])


@dataclass(frozen=True)
class SignWitness:
    """Cone base: every index above theta yields the certified sign."""

    theta: Ordinal

    def __str__(self) -> str:
        return str(self.theta)


def psi(alpha: Ordinal) -> EuclidInt:
    """The ordinal alpha as a transfinite sum of ones (strictly monotone).

    Each base-2 exponent l + k of alpha contributes 2^k to the
    coefficient at limit key l.
    """
    acc: dict[Ordinal, int] = {}
    for e in alpha.exponents:
        lam, k = limit_split(e)
        budget.check_steps(k, "psi fold")  # coefficient 2^k needs k bits
        acc[lam] = acc.get(lam, 0) + (1 << k)
    return EuclidInt(acc)


def add(a: EuclidInt, b: EuclidInt) -> EuclidInt:
    return EuclidInt(list(a.terms) + list(b.terms))


def neg(a: EuclidInt) -> EuclidInt:
    return EuclidInt([(lam, -c) for lam, c in a.terms])


def mul(a: EuclidInt, b: EuclidInt) -> EuclidInt:
    """Monoid-ring product: keys combine by natural sum of limits."""
    budget.check_steps(len(a.terms) * len(b.terms), "ring product")
    out: list[tuple[Ordinal, int]] = []
    for la, ca in a.terms:
        for lb, cb in b.terms:
            out.append((nat_sum(la, lb), ca * cb))
    return EuclidInt(out)


def partial_sum(z: EuclidInt, delta: Ordinal) -> int:
    """Exact finite partial sum of z's canonical representative at delta."""
    exps_asc = sorted(delta.exponents, key=ord_key)

    def below(lam: Ordinal) -> int:
        lo, hi = 0, len(exps_asc)
        while lo < hi:
            mid = (lo + hi) // 2
            if ord_compare(exps_asc[mid], lam) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo

    total = 0
    for lam, c in z.terms:
        n = below(lam)
        budget.check_enum_bits(n, "partial sum")
        total += c << n
    return total


def sign(z: EuclidInt) -> tuple[int, SignWitness]:
    """Sign of z with a cone certificate.

    The certified claim: for every delta formally above theta, the
    partial sum of z at delta has exactly the returned sign.  For each
    key l under the top key L the certificate includes B successive
    ordinals from [l, l+B) with 2^B beyond the total lower-coefficient
    mass, which forces the top term to dominate.
    """
    if z.is_zero:
        return 0, SignWitness(ZERO)
    top, c_top = z.terms[0]
    lower = z.terms[1:]
    if not lower:
        return (1 if c_top > 0 else -1), SignWitness(ZERO)
    mass = sum(abs(c) for _, c in lower)
    b = mass.bit_length()  # 2^b > mass
    elems: list[Ordinal] = []
    for lam, _ in lower:
        step = lam
        for _ in range(b):
            elems.append(step)
            step = ord_sum(step, from_int(1))
    theta = encode(FinOrdSet(elems))
    return (1 if c_top > 0 else -1), SignWitness(theta)


def compare(a: EuclidInt, b: EuclidInt) -> tuple[int, SignWitness]:
    """Total order via the sign of the difference; LT/EQ/GT as -1/0/1."""
    s, w = sign(add(a, neg(b)))
    return s, w


def from_step(x: StepSequence) -> EuclidInt:
    """The transfinite sum of a step sequence, in normal form.

    Each piece contributes value * (psi(hi) - psi(lo)); each override
    contributes its deviation from the underlying piece value.
    """
    acc = ZERO_E
    for p in x.pieces:
        acc = add(acc, mul(from_integer(p.value), add(psi(p.hi), neg(psi(p.lo)))))
    for alpha, v in x.overrides.items():
        acc = add(acc, from_integer(v - x._piece_value(alpha)))
    return acc


def cone_witness(bound: Ordinal) -> Ordinal:
    """Cone base above which counting of [0, bound) matches psi(bound).

    Needs every exponent of bound except the least (so the matching
    prefixes are present) and, for each exponent l + k, the k gap
    ordinals [l, l+k) (so the folded coefficient 2^k is realised).
    """
    elems: list[Ordinal] = []
    exps = bound.exponents
    elems.extend(exps[:-1] if exps else ())
    for e in exps:
        lam, k = limit_split(e)
        step = lam
        for _ in range(k):
            elems.append(step)
            step = ord_sum(step, from_int(1))
    return encode(FinOrdSet(elems))


def fold_witness(x: StepSequence) -> Ordinal:
    """Cone base above which partial_sum(from_step(x)) equals counting(x)."""
    acc: list[Ordinal] = []
    for p in x.pieces:
        acc.extend(cone_witness(p.lo).exponents)
        acc.extend(cone_witness(p.hi).exponents)
    for alpha in x.overrides:
        acc.extend(alpha.exponents)
    return encode(FinOrdSet(acc))


def check_sign_on(z: EuclidInt, witness: SignWitness, universe: FinOrdSet,
                  expected: int) -> int:
    """Count the indexes above the witness in the universe; assert signs.

    Raises AssertionError on the first delta above the witness whose
    partial sum has the wrong sign; returns how many were checked.
    """
    from .fincode import enumerate_universe

    theta_exps = frozenset(witness.theta.exponents)
    if not theta_exps <= frozenset(universe):
        raise PreconditionError("universe does not contain the witness")
    checked = 0
    for delta in enumerate_universe(universe):
        if not theta_exps <= frozenset(delta.exponents):
            continue
        ps = partial_sum(z, delta)
        got = (ps > 0) - (ps < 0)
        if got != expected:
            raise AssertionError(f"sign breach at {delta}: partial sum {ps}, expected {sign_name(expected)}")
        checked += 1
    return checked


# -- symbolic partial-sum expressions ------------------------------------------


class PartialSumExpr:
    """Base class; nodes evaluate exactly at any index ordinal."""

    __slots__ = ()

    def eval(self, delta: Ordinal) -> int:
        raise NotImplementedError

    def __add__(self, other):
        return PsAdd(self, _coerce_expr(other))

    def __sub__(self, other):
        return PsSub(self, _coerce_expr(other))

    def __mul__(self, other):
        return PsMul(self, _coerce_expr(other))


def _coerce_expr(v) -> "PartialSumExpr":
    if isinstance(v, PartialSumExpr):
        return v
    if isinstance(v, int):
        return PsConst(v)
    if isinstance(v, EuclidInt):
        return PsEuclid(v)
    raise PreconditionError(f"not an expression: {v!r}")


@dataclass(frozen=True)
class PsConst(PartialSumExpr):
    value: int

    def eval(self, delta: Ordinal) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PsEuclid(PartialSumExpr):
    value: EuclidInt

    def eval(self, delta: Ordinal) -> int:
        return partial_sum(self.value, delta)

    def __str__(self) -> str:
        return f"({self.value})"


@dataclass(frozen=True)
class PsCount(PartialSumExpr):
    """Count of the points of a one-dimensional set formally under delta."""

    points: object  # anything with partial_count(delta) -> int

    def eval(self, delta: Ordinal) -> int:
        return self.points.partial_count(delta)

    def __str__(self) -> str:
        return f"#({self.points})"


@dataclass(frozen=True)
class PsAdd(PartialSumExpr):
    a: PartialSumExpr
    b: PartialSumExpr

    def eval(self, delta: Ordinal) -> int:
        return self.a.eval(delta) + self.b.eval(delta)

    def __str__(self) -> str:
        return f"({self.a} + {self.b})"


@dataclass(frozen=True)
class PsSub(PartialSumExpr):
    a: PartialSumExpr
    b: PartialSumExpr

    def eval(self, delta: Ordinal) -> int:
        return self.a.eval(delta) - self.b.eval(delta)

    def __str__(self) -> str:
        return f"({self.a} - {self.b})"


@dataclass(frozen=True)
class PsMul(PartialSumExpr):
    a: PartialSumExpr
    b: PartialSumExpr

    def eval(self, delta: Ordinal) -> int:
        return self.a.eval(delta) * self.b.eval(delta)

    def __str__(self) -> str:
        return f"({self.a} * {self.b})"


@dataclass(frozen=True)
class PsPow2(PartialSumExpr):
    exponent: PartialSumExpr

    def eval(self, delta: Ordinal) -> int:
        e = self.exponent.eval(delta)
        if e < 0:
            raise PreconditionError("negative exponent in 2^")
        budget.check_steps(e, "power")  # result size in bits
        return 1 << e

    def __str__(self) -> str:
        return f"2^({self.exponent})"


@dataclass(frozen=True)
class PsPow(PartialSumExpr):
    base: PartialSumExpr
    exponent: PartialSumExpr

    def eval(self, delta: Ordinal) -> int:
        b = self.base.eval(delta)
        e = self.exponent.eval(delta)
        if e < 0:
            raise PreconditionError("negative exponent in ^")
        budget.check_steps(max(e * max(abs(b).bit_length(), 1), 1), "power")
        return b ** e

    def __str__(self) -> str:
        return f"({self.base})^({self.exponent})"


def expr_eval(e: PartialSumExpr, delta: Ordinal) -> int:
    """Exact value of the expression at the index delta."""
    return e.eval(delta)


UNKNOWN = "UNKNOWN"


def expr_compare_sampled(e1: PartialSumExpr, e2: PartialSumExpr,
                         chains: Iterable[list[Ordinal]],
                         stable: int = 2) -> str:
    """Heuristic comparison along sampled chains: LT/EQ/GT or UNKNOWN.

    A chain votes only when the sign of the difference holds over its
    last `stable` entries; conflicting or missing votes give UNKNOWN.
    Syntactically equal expressions are EQ outright.
    """
    if e1 == e2:
        return "EQ"
    votes = set()
    for chain in chains:
        signs = []
        for delta in chain:
            d = e1.eval(delta) - e2.eval(delta)
            signs.append((d > 0) - (d < 0))
        if not signs:
            return UNKNOWN
        window = signs[-stable:] if len(signs) >= stable else signs
        if len(set(window)) != 1:
            return UNKNOWN
        votes.add(window[-1])
        if len(votes) > 1:
            return UNKNOWN
    if not votes:
        return UNKNOWN
    return rel_name(votes.pop())
