"""Command-line front end.

One invocation runs one command; a script file (-f) runs one command
per line.  Results go to stdout, diagnostics to stderr.  Exit codes:
0 success, 2 syntax error, 3 budget exceeded, 4 precondition violation.

With --json every successful command prints a single JSON object
{verb, result, witness?, verdict_quality} conforming to cli_schema.json.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from typing import IO

from . import budget, euclid, fincode, numerosity, partition
from .errors import BudgetExceeded, OrdcalcError, ParseError, PreconditionError
from .euclid import PsEuclid, expr_compare_sampled, expr_eval, rel_name
from .fincode import FilterBaseSet, FinOrdSet, cofinal_chain, decode
from .ordinal import OMEGA, Ordinal, from_int, nat_prod, ord_sum, shift_mul
from .parse import (
    parse_euclid,
    parse_expression,
    parse_exponent_set,
    parse_index,
    parse_ordinal,
    parse_set,
)

VERBS = ("ord", "nf", "cmp", "num", "count", "code", "chain",
         "realize", "diff", "partition", "fip", "eval")


class Output:
    """Single result with optional witness and verdict quality."""

    def __init__(self, verb: str, result, witness: str | None = None,
                 quality: str = "exact", text: str | None = None):
        self.verb = verb
        self.result = result
        self.witness = witness
        self.quality = quality
        self.text = text

    def render_text(self) -> str:
        if self.text is not None:
            return self.text
        if isinstance(self.result, list):
            return "\n".join(self.result)
        return str(self.result)

    def render_json(self) -> str:
        doc = {"verb": self.verb, "result": self.result}
        if self.witness is not None:
            doc["witness"] = self.witness
        doc["verdict_quality"] = self.quality
        return json.dumps(doc)


def _split_at(args: list[str], keyword: str) -> tuple[str, str]:
    if keyword not in args:
        raise ParseError(f"expected '{keyword}' in the arguments")
    i = args.index(keyword)
    return " ".join(args[:i]), " ".join(args[i + 1:])


def _default_chains() -> list[list[Ordinal]]:
    w = OMEGA
    w2 = shift_mul(w, from_int(2))
    ww = nat_prod(w, w)
    pools = [
        [from_int(i) for i in range(8)],
        [from_int(0), from_int(1), from_int(2), w, ord_sum(w, from_int(1)), w2],
        [from_int(0), w, ord_sum(w, from_int(3)), ww, ord_sum(ww, w)],
        [from_int(1), from_int(4), w2, ord_sum(w2, from_int(1)), ww],
    ]
    return [cofinal_chain(FinOrdSet(p)) for p in pools]


def _parse_family(text: str) -> tuple[FilterBaseSet | object, str]:
    text = text.strip()
    if text.startswith("C(") and text.endswith(")"):
        theta = parse_ordinal(text[2:-1])
        return FilterBaseSet.cone(theta), f"C({theta})"
    if text.startswith("D(") and text.endswith(")"):
        eta = parse_ordinal(text[2:-1])
        return FilterBaseSet.d(eta), f"D({eta})"
    if text.startswith("Q(") and text.endswith(")"):
        body = text[2:-1]
        depth = 0
        for i, ch in enumerate(body):
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth -= 1
            elif ch == ";" and depth == 0:
                a = parse_set(body[:i])
                b = parse_set(body[i + 1:])
                return partition.q_predicate(a, b), f"Q({a}; {b})"
        raise ParseError("Q takes two sets separated by ';'")
    raise ParseError(f"unknown family {text!r} (use C(t), D(e) or Q(A; B))")


def _parse_psi_source(text: str, codes: list[Ordinal]) -> tuple[dict[Ordinal, int], str]:
    text = text.strip()
    if text == "size":
        return {a: len(a.exponents) for a in codes}, "size"
    if text == "position":
        return {a: i for i, a in enumerate(codes)}, "position"
    if text == "chain-descent":
        # strictly decreasing along the canonical chain: forces a 0-chain
        table = {a: 0 for a in codes}
        chain_codes = cofinal_chain(FinOrdSet([e for e in codes[-1].exponents]))
        for i, c in enumerate(chain_codes):
            table[c] = len(chain_codes) - i
        return table, "chain-descent"
    if text.startswith("map:"):
        table = {a: 0 for a in codes}
        for item in text[4:].split(","):
            if not item:
                continue
            if "=" not in item:
                raise ParseError(f"bad map entry {item!r}")
            key, _, value = item.partition("=")
            table[parse_ordinal(key)] = int(value)
        return table, text
    raise ParseError(f"unknown labelling {text!r} (use size, position, chain-descent or map:...)")


def execute(verb: str, args: list[str]) -> Output:
    if verb == "ord":
        value = parse_ordinal(" ".join(args))
        return Output("ord", str(value))

    if verb == "nf":
        value = parse_euclid(" ".join(args))
        return Output("nf", str(value))

    if verb == "cmp":
        if len(args) != 2:
            raise ParseError("cmp takes exactly two expressions")
        try:
            a = parse_euclid(args[0])
            b = parse_euclid(args[1])
        except ParseError:
            e1 = parse_expression(args[0])
            e2 = parse_expression(args[1])
            verdict = expr_compare_sampled(e1, e2, _default_chains())
            return Output("cmp", verdict, quality="heuristic",
                          text=f"{verdict}, heuristic (sampled chains)")
        rel, wit = euclid.compare(a, b)
        name = rel_name(rel)
        return Output("cmp", name, witness=str(wit.theta),
                      text=f"{name}, witness theta={wit.theta}")

    if verb == "num":
        s = parse_set(" ".join(args))
        return Output("num", str(numerosity.num(s)))

    if verb == "count":
        body, at = _split_at(args, "at")
        s = parse_set(body)
        delta = parse_index(at)
        return Output("count", numerosity.partial_count(s, delta))

    if verb == "code":
        text = " ".join(args).strip()
        if text.startswith("{"):
            return Output("code", str(fincode.encode(parse_exponent_set(text))))
        return Output("code", str(decode(parse_ordinal(text))))

    if verb == "chain":
        e = parse_exponent_set(" ".join(args))
        chain = cofinal_chain(e)
        return Output("chain", [f"{c} : {decode(c)}" for c in chain])

    if verb == "realize":
        z = parse_euclid(" ".join(args))
        return Output("realize", str(numerosity.realize(z)))

    if verb == "diff":
        if len(args) != 2:
            raise ParseError("diff takes exactly two sets")
        a = parse_set(args[0])
        b = parse_set(args[1])
        rel, wit = euclid.compare(numerosity.num(a), numerosity.num(b))
        if rel >= 0:
            raise PreconditionError("diff needs the first set strictly smaller")
        c = numerosity.diff_witness(a, b)
        return Output("diff", str(c), witness=str(wit.theta))

    if verb == "partition":
        body, on = _split_at(args, "on")
        e = parse_exponent_set(on)
        codes = list(fincode.enumerate_universe(e))
        table, source = _parse_psi_source(body, codes)
        g = partition.g_psi(table, e)
        report = partition.partition_report(e, source, g)
        return Output("partition", report.split("\n"))

    if verb == "fip":
        body, on = _split_at(args, "on")
        e = parse_exponent_set(on)
        families = []
        names = []
        for chunk in shlex.split(body):
            fam, name = _parse_family(chunk)
            families.append(fam)
            names.append(name)
        if not families:
            raise ParseError("fip needs at least one family")
        res = partition.fip_check(families, e)
        report = partition.fip_report(families, names, e)
        payload = {"found": str(res.element) if res.found else None, "scale": str(e)}
        return Output("fip", payload, text=report)

    if verb == "eval":
        body, at = _split_at(args, "at")
        expr = parse_expression(body)
        delta = parse_index(at)
        return Output("eval", expr_eval(expr, delta))

    raise ParseError(f"unknown command {verb!r} (one of: {', '.join(VERBS)})")


def run_line(tokens: list[str], json_mode: bool, out: IO[str], err: IO[str]) -> int:
    if not tokens:
        return 0
    verb, args = tokens[0], tokens[1:]
    try:
        result = execute(verb, args)
    except ParseError as e:
        print(f"error: {e}", file=err)
        return 2
    except BudgetExceeded as e:
        print(f"error: {e}", file=err)
        return 3
    except PreconditionError as e:
        print(f"error: {e}", file=err)
        return 4
    except OrdcalcError as e:
        print(f"error: {e}", file=err)
        return 4
    print(result.render_json() if json_mode else result.render_text(), file=out)
    return 0


def main(argv: list[str] | None = None,
         out: IO[str] | None = None, err: IO[str] | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    ap = argparse.ArgumentParser(
        prog="ordcalc",
        description="exact calculator for ordinals, transfinite-sum normal forms, "
                    "point-set sizes and partial-sum oracles",
    )
    ap.add_argument("--json", action="store_true", help="emit one JSON object per command")
    ap.add_argument("--budget", type=int, default=None, metavar="N",
                    help="work budget in elementary steps (default env ORDCALC_BUDGET or 2^24)")
    ap.add_argument("-f", "--file", default=None, metavar="SCRIPT",
                    help="run commands from a file, one per line ('#' comments)")
    ap.add_argument("command", nargs="*", help=f"one of: {', '.join(VERBS)}")
    ns = ap.parse_args(argv)

    if ns.budget is not None:
        budget.set_budget(ns.budget)
    try:
        if ns.file:
            status = 0
            with open(ns.file, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    rc = run_line(shlex.split(line), ns.json, out, err)
                    if rc and not status:
                        status = rc
            return status
        if ns.command:
            return run_line(ns.command, ns.json, out, err)
        # no arguments: read commands from stdin
        status = 0
        for line in sys.stdin:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rc = run_line(shlex.split(line), ns.json, out, err)
            if rc and not status:
                status = rc
        return status
    finally:
        if ns.budget is not None:
            budget.set_budget(None)


if __name__ == "__main__":
    sys.exit(main())
