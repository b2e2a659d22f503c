"""Tokenizer and recursive-descent parsers for the command grammars.

Ordinal expressions:   0, naturals, w, 2^(x), w^q, products with * ,
ordinary + , natural (+) and (x), parentheses.  * is the ordinary
product and is only defined when the left factor is a single power of
two (w, w^q, 2^(x)) or both factors are finite.

Value expressions:     integers, c*P(l), P(l), + and - (exact normal
forms); the extended expression grammar adds #(set), finset(set),
finmap(set,set), * and powers, which evaluate as partial sums.

Set expressions:       [a,b) intervals, {t1, t2} tuple literals,
| & \\ >< operators, parentheses.

Everything the renderers emit parses back to an equal value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, PreconditionError
from . import euclid, numerosity
from .euclid import (
    EuclidInt,
    PartialSumExpr,
    PsConst,
    PsCount,
    PsEuclid,
    PsMul,
    PsPow,
    PsPow2,
    psi,
)
from .fincode import FinOrdSet, encode
from .numerosity import Interval, PointSet
from .ordinal import (
    Ordinal,
    OMEGA,
    ZERO,
    from_int,
    nat_prod,
    nat_sum,
    ord_sum,
    pow2,
    shift_mul,
)

_SYMBOLS = ["(+)", "(x)", "><", "(", ")", "[", "]", "{", "}", ",", "^", "*",
            "+", "-", "|", "&", "\\", "#", "=", ":", ";"]


@dataclass(frozen=True)
class Token:
    kind: str  # "nat" | "name" | "sym" | "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("nat", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("name", text[i:j], i))
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                out.append(Token("sym", sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    out.append(Token("end", "", n))
    return out


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "end":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "end":
            raise ParseError(f"expected {text!r}, found {t.text!r} ", t.pos)
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == "end"


# -- ordinal grammar ----------------------------------------------------------


def _ord_atom(c: _Cursor) -> Ordinal:
    t = c.peek()
    if t.kind == "nat":
        c.next()
        base = from_int(int(t.text))
    elif t.kind == "name" and t.text == "w":
        c.next()
        base = OMEGA
    elif c.accept("("):
        base = _ord_expr(c)
        c.expect(")")
        return base  # no exponent directly after a parenthesised group
    else:
        raise ParseError(f"expected an ordinal, found {t.text!r}", t.pos)
    if c.accept("^"):
        e = c.peek()
        if e.kind == "nat":
            c.next()
            expo = from_int(int(e.text))
        elif c.accept("("):
            expo = _ord_expr(c)
            c.expect(")")
        else:
            raise ParseError("expected an exponent", e.pos)
        if base is OMEGA:
            return pow2(shift_mul(OMEGA, expo))  # w^q = 2^(w*q)
        if base == from_int(2):
            return pow2(expo)
        raise ParseError(f"only bases 2 and w take exponents", t.pos)
    return base


def _ord_term(c: _Cursor) -> Ordinal:
    acc = _ord_atom(c)
    while True:
        if c.accept("*"):
            rhs = _ord_atom(c)
            acc = _ord_mul(acc, rhs, c.peek().pos)
        elif c.accept("(x)"):
            acc = nat_prod(acc, _ord_atom(c))
        else:
            return acc


def _ord_mul(a: Ordinal, b: Ordinal, pos: int) -> Ordinal:
    if len(a.exponents) == 1:
        return shift_mul(a.exponents[0], b)
    if a.is_finite and b.is_finite:
        return from_int(a.nat_value() * b.nat_value())
    raise PreconditionError(
        "ordinary product is only defined for a power-of-two left factor or finite factors"
    )


def _ord_expr(c: _Cursor) -> Ordinal:
    acc = _ord_term(c)
    while True:
        if c.accept("+"):
            acc = ord_sum(acc, _ord_term(c))
        elif c.accept("(+)"):
            acc = nat_sum(acc, _ord_term(c))
        else:
            return acc


def parse_ordinal(text: str) -> Ordinal:
    c = _Cursor(tokenize(text))
    v = _ord_expr(c)
    if not c.at_end():
        raise ParseError(f"trailing input {c.peek().text!r}", c.peek().pos)
    return v


# -- finite exponent sets ------------------------------------------------------


def parse_exponent_set(text: str) -> FinOrdSet:
    """A literal {a, b, c} of ordinal expressions."""
    c = _Cursor(tokenize(text))
    s = _expset(c)
    if not c.at_end():
        raise ParseError(f"trailing input {c.peek().text!r}", c.peek().pos)
    return s


def _expset(c: _Cursor) -> FinOrdSet:
    c.expect("{")
    elems = []
    if not c.accept("}"):
        elems.append(_ord_expr(c))
        while c.accept(","):
            elems.append(_ord_expr(c))
        c.expect("}")
    return FinOrdSet(elems)


# -- value (normal form) grammar ----------------------------------------------


def _eint_term(c: _Cursor) -> EuclidInt:
    t = c.peek()
    if t.kind == "nat":
        c.next()
        value = int(t.text)
        if c.accept("*"):
            c.expect("P")
            c.expect("(")
            lam = _ord_expr(c)
            c.expect(")")
            return value * psi(pow2(lam))
        return euclid.from_integer(value)
    if t.kind == "name" and t.text == "P":
        c.next()
        c.expect("(")
        lam = _ord_expr(c)
        c.expect(")")
        return psi(pow2(lam))
    raise ParseError(f"expected an integer or P(...), found {t.text!r}", t.pos)


def _eint_expr(c: _Cursor) -> EuclidInt:
    negate = c.accept("-")
    acc = _eint_term(c)
    if negate:
        acc = -acc
    while True:
        if c.accept("+"):
            acc = acc + _eint_term(c)
        elif c.accept("-"):
            acc = acc - _eint_term(c)
        else:
            return acc


def parse_euclid(text: str) -> EuclidInt:
    c = _Cursor(tokenize(text))
    v = _eint_expr(c)
    if not c.at_end():
        raise ParseError(f"trailing input {c.peek().text!r}", c.peek().pos)
    return v


# -- set grammar -----------------------------------------------------------------


def _set_atom(c: _Cursor) -> PointSet:
    t = c.peek()
    if c.accept("["):
        lo = _ord_expr(c)
        c.expect(",")
        hi = _ord_expr(c)
        c.expect(")")
        return PointSet.interval(lo, hi)
    if c.accept("{"):
        tuples: list[tuple[Ordinal, ...]] = []
        if not c.accept("}"):
            tuples.append(_tuple_lit(c))
            while c.accept(","):
                tuples.append(_tuple_lit(c))
            c.expect("}")
        return PointSet(tuples=tuples) if tuples else PointSet.empty()
    if c.accept("("):
        s = _set_expr(c)
        c.expect(")")
        return s
    raise ParseError(f"expected a set, found {t.text!r}", t.pos)


def _tuple_lit(c: _Cursor) -> tuple[Ordinal, ...]:
    if c.accept("("):
        coords = [_ord_expr(c)]
        while c.accept(","):
            coords.append(_ord_expr(c))
        c.expect(")")
        return tuple(coords)
    return (_ord_expr(c),)


def _set_prod(c: _Cursor) -> PointSet:
    acc = _set_atom(c)
    while c.accept("><"):
        acc = numerosity.product(acc, _set_atom(c))
    return acc


def _set_inter(c: _Cursor) -> PointSet:
    acc = _set_prod(c)
    while c.accept("&"):
        acc = numerosity.intersect(acc, _set_prod(c))
    return acc


def _set_diff(c: _Cursor) -> PointSet:
    acc = _set_inter(c)
    while c.accept("\\"):
        acc = numerosity.difference(acc, _set_inter(c))
    return acc


def _set_expr(c: _Cursor) -> PointSet:
    acc = _set_diff(c)
    while c.accept("|"):
        acc = numerosity.union(acc, _set_diff(c))
    return acc


def parse_set(text: str) -> PointSet:
    c = _Cursor(tokenize(text))
    v = _set_expr(c)
    if not c.at_end():
        raise ParseError(f"trailing input {c.peek().text!r}", c.peek().pos)
    return v


# -- extended partial-sum expressions -------------------------------------------


def _ps_atom(c: _Cursor) -> PartialSumExpr:
    t = c.peek()
    if t.kind == "nat":
        # either a constant, a power 2^(...), or c*P(l)
        c.next()
        value = int(t.text)
        if value == 2 and c.accept("^"):
            c.expect("(")
            e = _ps_expr(c)
            c.expect(")")
            return PsPow2(e)
        if c.peek().text == "*" and c.tokens[c.i + 1].text == "P":
            c.next()
            c.next()
            c.expect("(")
            lam = _ord_expr(c)
            c.expect(")")
            return PsEuclid(value * psi(pow2(lam)))
        return PsConst(value)
    if t.kind == "name" and t.text == "P":
        c.next()
        c.expect("(")
        lam = _ord_expr(c)
        c.expect(")")
        return PsEuclid(psi(pow2(lam)))
    if t.text == "#":
        c.next()
        c.expect("(")
        s = _set_expr(c)
        c.expect(")")
        return PsCount(s)
    if t.kind == "name" and t.text == "finset":
        c.next()
        c.expect("(")
        s = _set_expr(c)
        c.expect(")")
        return numerosity.finset_num(s)
    if t.kind == "name" and t.text == "finmap":
        c.next()
        c.expect("(")
        x = _set_expr(c)
        c.expect(",")
        y = _set_expr(c)
        c.expect(")")
        return numerosity.finmap_num(x, y)
    if c.accept("("):
        e = _ps_expr(c)
        c.expect(")")
        if c.accept("^"):
            c.expect("(")
            expo = _ps_expr(c)
            c.expect(")")
            return PsPow(e, expo)
        return e
    raise ParseError(f"expected an expression, found {t.text!r}", t.pos)


def _ps_term(c: _Cursor) -> PartialSumExpr:
    acc = _ps_atom(c)
    while c.accept("*"):
        acc = PsMul(acc, _ps_atom(c))
    return acc


def _ps_expr(c: _Cursor) -> PartialSumExpr:
    negate = c.accept("-")
    acc = _ps_term(c)
    if negate:
        acc = PsConst(0) - acc
    while True:
        if c.accept("+"):
            acc = acc + _ps_term(c)
        elif c.accept("-"):
            acc = acc - _ps_term(c)
        else:
            return acc


def parse_expression(text: str) -> PartialSumExpr:
    c = _Cursor(tokenize(text))
    v = _ps_expr(c)
    if not c.at_end():
        raise ParseError(f"trailing input {c.peek().text!r}", c.peek().pos)
    return v


def parse_index(text: str) -> Ordinal:
    """An index ordinal: either {exponents} shorthand or an ordinal."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return encode(parse_exponent_set(stripped))
    return parse_ordinal(stripped)
