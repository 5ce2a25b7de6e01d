"""Command-line front end: ``artin-density <command> ...``.

Every command produces a list of records. Each record carries a name, a kind
(``exact``, ``enclosure``, ``integer``, ``decimal`` or ``text``), a value and
a provenance tag. Text output is one tab-separated line per record after a
versioned header line; ``--json`` emits the same records as one JSON object.

Exit codes: 0 success, 1 a verification found a failure, 2 domain error,
3 resource error, 64 usage error (including a malformed ``alpha``).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .arith import as_rational
from .constants import EulerProductValue, RankSequence, artin_AR_value, artin_ratio, artin_value
from .density import (
    density_value, extremal_search, hooley_ratio, inclusion_exclusion, theorem_bounds,
    truncated_closed_form,
)
from .empirical import census, compare
from .errors import DomainError, ResourceError
from .group_lab import exhaustive_sweep, random_sweep
from .nf_bounds import (
    PROOF_ASSEMBLED, FieldData, corollary_constants, crude_upper_bound,
    lower_bound_constant, upper_bound,
)

SCHEMA_VERSION = 1
PAPER_FORMULA = "paper-formula"
EMPIRICAL = "empirical"

EXIT_OK, EXIT_FAILED, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3, 64


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with 64 and reads ``-3`` or ``-10..10`` as values."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)

    def _parse_optional(self, arg_string):
        if re.match(r"^-\d", arg_string):
            return None
        return super()._parse_optional(arg_string)


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _record(name: str, kind: str, value, provenance: str, extra: dict) -> dict:
    extra = {k: _frac(v) if isinstance(v, Fraction) else v for k, v in extra.items()}
    return {"name": name, "kind": kind, "value": value, "provenance": provenance, **extra}


def exact(name: str, q, provenance: str, **extra) -> dict:
    return _record(name, "exact", _frac(Fraction(q)), provenance, extra)


def enclosure(name: str, v: EulerProductValue, provenance: str, digits: int = 15, **extra) -> dict:
    lo, hi = v.decimal(digits)
    return _record(name, "enclosure", [lo, hi], provenance,
                   {"truncation_prime": v.truncation_prime, "tail": v.tail_method, **extra})


def integer(name: str, n: int, provenance: str, **extra) -> dict:
    return _record(name, "integer", int(n), provenance, extra)


def decimal(name: str, x: float, provenance: str, **extra) -> dict:
    return _record(name, "decimal", f"{x:.12g}", provenance, extra)


def text(name: str, s: str, provenance: str, **extra) -> dict:
    return _record(name, "text", s, provenance, extra)


def _render_value(rec: dict) -> str:
    v = rec["value"]
    if rec["kind"] == "enclosure":
        return f"[{v[0]}, {v[1]}]"
    return str(v)


def render_text(command: list[str], records: list[dict]) -> str:
    lines = [f"# artin-density {__version__} schema={SCHEMA_VERSION} command={' '.join(command)}",
             "name\tkind\tvalue\tprovenance\textra"]
    base = {"name", "kind", "value", "provenance"}
    for rec in records:
        extra = " ".join(f"{k}={rec[k]}" for k in rec if k not in base)
        lines.append(f"{rec['name']}\t{rec['kind']}\t{_render_value(rec)}\t{rec['provenance']}\t{extra}".rstrip())
    return "\n".join(lines) + "\n"


def render_json(command: list[str], records: list[dict]) -> str:
    doc = {"schema": SCHEMA_VERSION, "version": __version__, "command": command, "records": records}
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------

def _alpha(s: str) -> Fraction:
    try:
        return as_rational(s)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ranks(s: str) -> RankSequence:
    try:
        return RankSequence.parse(s)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range(s: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", s)
    if m is None:
        raise argparse.ArgumentTypeError(f"range must look like A..B, got {s!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {s!r}")
    return a, b


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {s!r}") from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_density(args) -> tuple[list[dict], int]:
    res = hooley_ratio(args.alpha)
    recs = [exact("alpha", res.alpha, "input"), integer("tau", res.tau, PAPER_FORMULA),
            integer("delta", res.delta, PAPER_FORMULA), text("case", res.case.value, PAPER_FORMULA)]
    if res.zero_density:
        recs.append(exact("density", 0, PAPER_FORMULA))
        return recs, EXIT_OK
    recs.append(exact("ratio", res.ratio, PAPER_FORMULA, note="dens(alpha)/A(tau)"))
    recs.append(exact("A_tau_over_A_1", artin_ratio(res.tau), PAPER_FORMULA))
    recs.append(enclosure("density", density_value(res.alpha, args.tol), PAPER_FORMULA))
    return recs, EXIT_OK


def cmd_constant(args) -> tuple[list[dict], int]:
    if args.ranks is not None:
        v = artin_AR_value(args.ranks, args.tol)
        return [text("ranks", str(args.ranks), "input"), enclosure("A_R", v, PAPER_FORMULA)], EXIT_OK
    v = artin_value(args.tau, args.tol)
    return [integer("tau", args.tau, "input"), enclosure("A_tau", v, PAPER_FORMULA)], EXIT_OK


def cmd_bounds(args) -> tuple[list[dict], int]:
    lo, hi = theorem_bounds(args.tau)
    recs = [integer("tau", args.tau, "input"), exact("lower", lo, PAPER_FORMULA),
            exact("upper", hi, PAPER_FORMULA)]
    if args.tau == 1:
        d, v = extremal_search(1, "min")
        recs.append(exact("lower_attained", v, PAPER_FORMULA, delta=d,
                          note="published lower bound is below the attained minimum"))
    return recs, EXIT_OK


def cmd_extremal(args) -> tuple[list[dict], int]:
    d, v = extremal_search(args.tau, args.dir)
    return [integer("tau", args.tau, "input"), integer("delta", d, PAPER_FORMULA),
            exact(args.dir, v, PAPER_FORMULA)], EXIT_OK


def cmd_expand(args) -> tuple[list[dict], int]:
    s = inclusion_exclusion(args.alpha, args.y)
    c = truncated_closed_form(args.alpha, args.y)
    recs = [exact("alpha", args.alpha, "input"), integer("y", args.y, "input"),
            exact("inclusion_exclusion", s, PAPER_FORMULA),
            exact("truncated_product", c, PAPER_FORMULA),
            text("agree", "yes" if s == c else "no", PAPER_FORMULA)]
    return recs, EXIT_OK if s == c else EXIT_FAILED


def cmd_nf(args) -> tuple[list[dict], int]:
    data = FieldData(args.B, args.Q, args.ranks)
    recs = [integer("B", data.B, "input"), integer("Q", data.Q, "input"),
            text("ranks", str(data.ranks), "input")]
    if args.which == "upper":
        recs.append(exact("upper", upper_bound(data), PAPER_FORMULA))
        recs.append(exact("crude_upper", crude_upper_bound(data.B), PAPER_FORMULA))
    elif args.which == "lower":
        recs.append(exact("lower", lower_bound_constant(data), PROOF_ASSEMBLED))
    else:
        c0, C0 = corollary_constants(data)
        recs.append(exact("c0", c0, PROOF_ASSEMBLED))
        recs.append(exact("C0", C0, PAPER_FORMULA))
    return recs, EXIT_OK


def cmd_verify(args) -> tuple[list[dict], int]:
    conds = args.conditions or ["index=1"]
    report = census(args.alpha, args.limit, conds, workers=args.threads)
    cmp = compare(report, args.abs_tol, args.k)
    n = report.primes_considered
    recs = [exact("alpha", report.alpha, "input"), integer("limit", report.limit, "input"),
            integer("primes_considered", n, EMPIRICAL),
            integer("excluded", len(report.excluded), EMPIRICAL)]
    for name, count in report.counts.items():
        recs.append(integer(f"{name}.count", count, EMPIRICAL))
        recs.append(exact(f"{name}.observed", Fraction(count, n) if n else 0, EMPIRICAL,
                          approx=f"{report.observed(name):.10f}"))
        recs.append(enclosure(f"{name}.predicted", report.predicted[name], PAPER_FORMULA, 12))
        recs.append(decimal(f"{name}.deviation", report.deviations[name], EMPIRICAL,
                            verdict="pass" if cmp.verdicts[name] else "fail"))
    recs.append(integer("containment.index_1", report.containment[0], EMPIRICAL))
    recs.append(integer("containment.two_smooth", report.containment[1], EMPIRICAL))
    recs.append(decimal("threshold", cmp.threshold, EMPIRICAL))
    recs.append(text("verdict", "pass" if cmp.passed else "fail", EMPIRICAL))
    return recs, EXIT_OK if cmp.passed else EXIT_FAILED


def cmd_group_lemma(args) -> tuple[list[dict], int]:
    ex = exhaustive_sweep(args.max_order)
    rnd = random_sweep(args.samples, args.random_max_order, args.seed)
    recs = []
    for label, rep in (("exhaustive", ex), ("random", rnd)):
        recs += [integer(f"{label}.groups", rep.groups, EMPIRICAL),
                 integer(f"{label}.triples", rep.triples, EMPIRICAL),
                 integer(f"{label}.quotient_of_subgroup_violations", rep.quotient_of_subgroup_violations, EMPIRICAL),
                 integer(f"{label}.order_violations", rep.order_violations, EMPIRICAL),
                 integer(f"{label}.exponent_violations", rep.exponent_violations, EMPIRICAL),
                 integer(f"{label}.order_mismatch", rep.order_mismatch, EMPIRICAL)]
    bad = ex.violations + rnd.violations
    recs.append(text("verdict", "pass" if bad == 0 else "fail", EMPIRICAL))
    return recs, EXIT_OK if bad == 0 else EXIT_FAILED


def cmd_scan(args) -> tuple[list[dict], int]:
    a, b = args.range
    keep = set(args.tau_filter) if args.tau_filter else None
    rows, skipped = [], 0
    for alpha in range(a, b + 1):
        if alpha in (-1, 0, 1):
            continue
        res = hooley_ratio(alpha)
        if res.zero_density or (keep is not None and res.tau not in keep):
            skipped += 1
            continue
        rows.append(res)
    recs = []
    if not args.summary:
        recs += [exact(f"alpha={r.alpha}", r.ratio, PAPER_FORMULA, tau=r.tau, delta=r.delta) for r in rows]
    recs.append(integer("scanned", len(rows), PAPER_FORMULA))
    recs.append(integer("skipped", skipped, PAPER_FORMULA, note="squares, units or filtered tau"))
    if rows:
        lo = min(rows, key=lambda r: (r.ratio, abs(r.alpha)))
        hi = max(rows, key=lambda r: (r.ratio, -abs(r.alpha)))
        recs.append(exact("min", lo.ratio, PAPER_FORMULA, alpha=lo.alpha, tau=lo.tau, delta=lo.delta))
        recs.append(exact("max", hi.ratio, PAPER_FORMULA, alpha=hi.alpha, tau=hi.tau, delta=hi.delta))
    return recs, EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of tab-separated text")
    common.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")

    p = _Parser(prog="artin-density", description="Densities of primes with a prescribed index.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help, **kw):
        sp = sub.add_parser(name, parents=[common], help=help, description=help, **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("density", cmd_density, "exact ratio dens(alpha)/A(tau) and an enclosure of dens(alpha)")
    sp.add_argument("alpha", type=_alpha, help="a, -a or a/b")
    sp.add_argument("--tol", type=float, default=1e-10, help="enclosure width target (default 1e-10)")

    sp = add("constant", cmd_constant, "enclosure of A(tau) or A_R")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--tau", type=int)
    g.add_argument("--ranks", type=_ranks, help="rank spec such as r=1,3:0,5:0")
    sp.add_argument("--tol", type=float, default=1e-10)

    sp = add("bounds", cmd_bounds, "lower and upper bounds for dens(alpha)/A(tau) at fixed tau")
    sp.add_argument("--tau", type=int, required=True)

    sp = add("extremal", cmd_extremal, "extremal ratio and attaining delta at fixed tau")
    sp.add_argument("--tau", type=int, required=True)
    sp.add_argument("--dir", choices=("min", "max"), required=True)

    sp = add("expand", cmd_expand, "inclusion-exclusion sum versus truncated product up to y")
    sp.add_argument("alpha", type=_alpha)
    sp.add_argument("--y", type=int, required=True)

    sp = add("nf", cmd_nf, "number-field bounds from (B, Q, ranks)")
    sp.add_argument("which", choices=("upper", "lower", "corollary"))
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--Q", type=int, required=True)
    sp.add_argument("--ranks", type=_ranks, default=RankSequence(1))

    sp = add("verify", cmd_verify, "census of index conditions for primes up to a limit")
    sp.add_argument("alpha", type=_alpha)
    sp.add_argument("--limit", type=int, required=True)
    sp.add_argument("--conditions", type=lambda s: [c for c in s.split(",") if c.strip()],
                    help="comma list of index=1, ell-free:L, B-free:B, B-smooth:B")
    sp.add_argument("--threads", type=int, default=1, help="worker processes")
    sp.add_argument("--abs-tol", type=float, default=0.01)
    sp.add_argument("--k", type=float, default=3.0, help="z-score allowance k/sqrt(n)")

    sp = add("group-lemma", cmd_group_lemma, "check the subquotient lemma on finite abelian groups",
             aliases=["verify-group-lemma"])
    sp.add_argument("--max-order", type=int, default=32, help="exhaustive sweep bound")
    sp.add_argument("--samples", type=int, default=10_000, help="random triples")
    sp.add_argument("--random-max-order", type=int, default=128)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("scan", cmd_scan, "ratios for every integer alpha in a range")
    sp.add_argument("--range", type=_range, required=True, metavar="A..B")
    sp.add_argument("--tau-filter", type=_int_list, metavar="LIST", help="keep only these tau values")
    sp.add_argument("--summary", action="store_true", help="omit per-alpha rows")
    return p


def run(argv: list[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        records, code = args.func(args)
    except ResourceError as exc:
        sys.stderr.write(f"resource error: {exc}\n")
        return EXIT_RESOURCE
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    out = (render_json if args.json else render_text)(argv, records)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
