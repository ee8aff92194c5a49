"""Command-line front end.

Input format: one constraint per line, ``#`` starts a comment, blank lines
are skipped. A line holds d integer coefficients, a relation token (``>=``
or ``=``) and one integer right-hand side; the variable count is inferred
from the first constraint. Subcommands::

    solve   emit the signed cone combination as JSON
    ratfun  emit a rational-function expression (plain, latex or json)
    count   emit the number of solutions (requires --assert-bounded)
    check   compare the solver against the direct inequality oracle on a box

Exit status: 0 on success or PASS, 1 on FAIL, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass

from .cones import ConeCombination, eval_combination
from .elimination import LDSystem, Relation, solve_with_trace
from .ratfun import combination_to_ratfun, count_lattice_points, render


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    method: str = "fp"
    fmt: str = "plain"
    seed: int = 0
    box: int = 8
    assert_bounded: bool = False
    index_threshold: int = 1
    threads: int = 1
    verbose: bool = False
    vector_exponents: bool = False


def parse_system(text: str) -> LDSystem:
    """Parse the constraint grammar above into an LDSystem."""
    rows: list[tuple[int, ...]] = []
    relations: list[Relation] = []
    rhs: list[int] = []
    width: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        rel_positions = [i for i, t in enumerate(tokens) if t in (">=", "=")]
        if len(rel_positions) != 1:
            raise ParseError(f"line {lineno}: expected exactly one '>=' or '=' token")
        pos = rel_positions[0]
        coeff_tokens, rhs_tokens = tokens[:pos], tokens[pos + 1:]
        if not coeff_tokens or len(rhs_tokens) != 1:
            raise ParseError(f"line {lineno}: expected '<coefficients> {tokens[pos]} <rhs>'")
        try:
            coeffs = tuple(int(t) for t in coeff_tokens)
            beta = int(rhs_tokens[0])
        except ValueError:
            raise ParseError(f"line {lineno}: coefficients must be integers") from None
        if width is None:
            width = len(coeffs)
        elif len(coeffs) != width:
            raise ParseError(
                f"line {lineno}: expected {width} coefficients, got {len(coeffs)}"
            )
        rows.append(coeffs)
        relations.append(Relation.GEQ if tokens[pos] == ">=" else Relation.EQ)
        rhs.append(beta)
    if not rows:
        raise ParseError("no constraints found in input")
    return LDSystem(tuple(rows), tuple(relations), tuple(rhs))


def combination_to_json(combination: ConeCombination, dimension: int | None = None) -> str:
    """Bit-exact cone JSON: canonical column order, big integers as strings."""
    dim = combination.ambient_dim if dimension is None else dimension
    cones = []
    for c, mult in combination.sorted_items():
        cones.append(
            {
                "mult": str(mult),
                "generators": [list(g) for g in c.generators],
                "apex": [
                    {"num": str(a.numerator), "den": str(a.denominator)} for a in c.apex
                ],
                "open": list(c.openness),
            }
        )
    return json.dumps({"dimension": dim if dim is not None else 0, "cones": cones})


def _run_check(config: RunConfig, sys_: LDSystem, combination: ConeCombination) -> tuple[int, str]:
    d = sys_.num_variables
    for x in itertools.product(range(config.box + 1), repeat=d):
        expected = 1 if sys_.satisfies(x) else 0
        actual = eval_combination(combination, x)
        if actual != expected:
            return 1, f"FAIL at {x}: oracle {expected}, combination {actual}"
    return 0, "PASS"


def run(config: RunConfig, sys_: LDSystem) -> tuple[int, str, list[str]]:
    """Execute one subcommand; returns (status, output, diagnostic lines)."""
    if config.threads < 1:
        raise ParseError("--threads must be at least 1")
    combination, trace = solve_with_trace(sys_)
    diagnostics = trace.format_lines(sys_.num_variables) if config.verbose else []
    rng = random.Random(config.seed)
    if config.subcommand == "solve":
        return 0, combination_to_json(combination, sys_.num_variables), diagnostics
    if config.subcommand == "ratfun":
        expr = combination_to_ratfun(
            combination,
            config.method,
            index_threshold=config.index_threshold,
            rng=rng,
        )
        text = render(expr, config.fmt, vector_exponents=config.vector_exponents)
        return 0, text, diagnostics
    if config.subcommand == "count":
        if not config.assert_bounded:
            raise ParseError("count requires --assert-bounded")
        value = count_lattice_points(combination, assert_bounded=True, rng=rng)
        return 0, str(value), diagnostics
    if config.subcommand == "check":
        status, message = _run_check(config, sys_, combination)
        return status, message, diagnostics
    raise ParseError(f"unknown subcommand: {config.subcommand!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcones",
        description="Exact solver for linear Diophantine systems over non-negative integers.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in (
        ("solve", "emit the signed symbolic-cone combination as JSON"),
        ("ratfun", "emit a rational-function expression"),
        ("count", "count solutions (finite sets only)"),
        ("check", "verify the solver against the direct oracle on a box"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
        p.add_argument("--method", choices=["fp", "barvinok"], default="fp")
        p.add_argument("--format", dest="fmt", choices=["json", "plain", "latex"], default="plain")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--box", type=int, default=8)
        p.add_argument("--assert-bounded", action="store_true")
        p.add_argument("--index-threshold", type=int, default=1)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--verbose", action="store_true")
        p.add_argument(
            "--vector-exponents",
            action="store_true",
            help="LaTeX output uses z^{(a,b,...)} instead of expanded variables",
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        subcommand=args.subcommand,
        method=args.method,
        fmt=args.fmt,
        seed=args.seed,
        box=args.box,
        assert_bounded=args.assert_bounded,
        index_threshold=args.index_threshold,
        threads=args.threads,
        verbose=args.verbose,
        vector_exponents=args.vector_exponents,
    )
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
        sys_ = parse_system(text)
        status, output, diagnostics = run(config, sys_)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in diagnostics:
        print(line, file=sys.stderr)
    print(output)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
