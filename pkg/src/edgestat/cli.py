"""Command-line interface: enumeration, certificates, distributions,
constructions, and the one-shot reproduction run.

Exit codes: 0 all requested certificates pass, 1 a certificate failed,
2 usage or resource error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .constructions import (
    bipartite_family,
    build_host,
    clique_decomposition_bound,
    edge_count_dist,
    limit_probability,
    poisson_reference,
    verify_goodman,
    verify_poisson_emergence,
)
from .dist import (
    DEFAULT_SUBSET_CAP,
    SliceSpec,
    bernoulli_value_dist,
    format_rational,
    parse_rational,
    slice_value_dist,
)
from .errors import InputError, ResourceLimitError
from .gm import enumerate_gm, max_structure_stats
from .poly import DEFAULT_ASSIGNMENT_CAP, MultilinearPoly, format_poly, parse_poly
from .report import VerificationReport
from .verify import (
    check_better34_inequalities,
    verify_counts,
    verify_lemmas,
    verify_prop_027,
    verify_prop_033,
    verify_star_search,
    verify_table,
)

VERIFY_TARGETS = ("prop033", "prop027", "table", "better34", "lemmas")


@dataclass
class RunConfig:
    """Resolved flags shared across subcommands."""

    workers: int = 1
    assignment_cap: int = DEFAULT_ASSIGNMENT_CAP
    subset_cap: int = DEFAULT_SUBSET_CAP
    json_path: str | None = None
    csv_path: str | None = None

    def __post_init__(self):
        if self.workers < 1:
            raise InputError("workers must be >= 1")
        if self.assignment_cap < 1 or self.subset_cap < 1:
            raise InputError("caps must be positive")


def _default_workers() -> int:
    raw = os.environ.get("EDGESTAT_WORKERS", "1")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"EDGESTAT_WORKERS must be an integer, got {raw!r}")


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _print_report(report: VerificationReport) -> None:
    status = "PASS" if report.passed else "FAIL"
    print(f"[{status}] {report.name} ({report.wall_time:.2f}s)")
    for c in report.checks:
        mark = "ok" if c.ok else "VIOLATED"
        print(f"  {c.name}: {c.lhs} {c.op} {c.rhs} -> {mark}")


def _reports_json(reports: list[VerificationReport]) -> str:
    payload = {"passed": all(r.passed for r in reports), "reports": [r.to_json() for r in reports]}
    return json.dumps(payload, indent=2, sort_keys=True)


def _cmd_enumerate(args, config: RunConfig) -> int:
    family = enumerate_gm(args.m, config.workers)
    stats = max_structure_stats(family)
    print("m,count,max_vars,wall_time")
    print(f"{family.m},{family.count},{stats.max_num_vars},{family.wall_time:.2f}")
    if args.per_s:
        print("s,count")
        for s in sorted(family.per_s_counts):
            print(f"{s},{family.per_s_counts[s]}")
    if config.csv_path:
        _write_text(
            config.csv_path,
            "m,count,max_vars,wall_time\n"
            f"{family.m},{family.count},{stats.max_num_vars},{family.wall_time:.2f}\n",
        )
    if config.json_path:
        lines = []
        for key, g in zip(family.keys, family.members):
            lines.append(
                json.dumps(
                    {
                        "key": key.text,
                        "poly": format_poly(g.poly),
                        "s": g.num_vars,
                        "linear_terms": len(g.linear_indices),
                    },
                    sort_keys=True,
                )
            )
        _write_text(config.json_path, "\n".join(lines) + "\n")
    return 0


def _run_verify_target(target: str, config: RunConfig) -> tuple[list[VerificationReport], list[dict]]:
    reports: list[VerificationReport] = []
    table_rows: list[dict] = []
    if target in ("prop033", "all"):
        reports.append(verify_prop_033(config.workers))
    if target in ("prop027", "all"):
        reports.append(verify_prop_027())
    if target in ("table", "all"):
        report, table_rows = verify_table(config.workers)
        reports.append(report)
    if target in ("better34", "all"):
        reports.append(check_better34_inequalities())
    if target in ("lemmas", "all"):
        reports.append(verify_lemmas())
    return reports, table_rows


def _cmd_verify(args, config: RunConfig) -> int:
    reports, table_rows = _run_verify_target(args.target, config)
    for report in reports:
        _print_report(report)
    if config.csv_path and table_rows:
        lines = ["m,count,p_star,bound_exact,bound_decimal"]
        lines += [
            f"{r['m']},{r['count']},{r['p_star']},{r['bound_exact']},{r['bound_decimal']}"
            for r in table_rows
        ]
        _write_text(config.csv_path, "\n".join(lines) + "\n")
    if config.json_path:
        if len(reports) == 1:
            _write_text(config.json_path, reports[0].to_json_str() + "\n")
        else:
            _write_text(config.json_path, _reports_json(reports) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_dist(args, config: RunConfig) -> int:
    f = parse_poly(args.poly)
    if (args.p is None) == (args.slice is None):
        raise InputError("exactly one of --p and --slice is required")
    if args.p is not None:
        dist = bernoulli_value_dist(f, parse_rational(args.p), config.assignment_cap)
    else:
        try:
            n_text, k_text = args.slice.split(",")
            spec = SliceSpec(int(n_text), int(k_text))
        except ValueError as exc:
            raise InputError(f"--slice expects N,K with integers, got {args.slice!r}") from exc
        dist = _slice_dist(f, spec, config.subset_cap)
    if args.ell is not None:
        print(format_rational(dist.prob(args.ell)))
    else:
        print("value,probability")
        for v in dist.support():
            print(f"{v},{format_rational(dist.prob(v))}")
    if config.json_path:
        _write_text(config.json_path, json.dumps(dist.to_json(), indent=2, sort_keys=True) + "\n")
    return 0


def _slice_dist(f, spec: SliceSpec, cap: int):
    if f.num_vars > spec.n:
        raise InputError(f"polynomial uses {f.num_vars} variables but the slice has n={spec.n}")
    if f.num_vars < spec.n:
        f = MultilinearPoly(spec.n, f.constant, dict(f.linear), dict(f.quadratic))
    return slice_value_dist(f, spec, cap)


def _cmd_construct(args, config: RunConfig) -> int:
    k, ell = args.k, args.ell
    if args.family in ("bipartite", "bipartite-plus-clique"):
        if args.a is None:
            raise InputError(f"--a is required for the {args.family} family")
        family = bipartite_family(args.a, k, args.family == "bipartite-plus-clique")
        reference = poisson_reference(args.a)
        reference_label = f"{args.a}^{args.a}/(e^{args.a} {args.a}!)"
    elif args.family == "cliques":
        pieces, product, prob = clique_decomposition_bound(k, ell)
        print(f"family: {','.join(map(str, pieces))}-clique union at k={k}")
        print(f"decomposition: ell={ell} = " + " + ".join(f"C({m},2)" for m in pieces))
        print(f"limit: {format_rational(prob)} = {float(prob):.10f}")
        print(f"reference: (prod m_i)^(-1/2) = {product**-0.5:.10f}")
        if config.json_path:
            payload = {
                "family": "cliques",
                "k": k,
                "ell": ell,
                "decomposition": list(pieces),
                "product": product,
                "limit": format_rational(prob),
                "reference": product**-0.5,
            }
            _write_text(config.json_path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown family {args.family!r}")

    print(f"family: {family.tag}")
    payload = {"family": family.tag, "k": k, "ell": ell}
    if args.n is not None:
        host = build_host(family, args.n)
        finite = edge_count_dist(host, k, config.subset_cap).prob(ell)
        print(f"finite n={args.n}: {format_rational(finite)} = {float(finite):.10f}")
        payload["finite_n"] = args.n
        payload["finite"] = format_rational(finite)
    prob = limit_probability(family, k, ell)
    print(f"limit: {format_rational(prob)} = {float(prob):.10f}")
    print(f"reference: {reference_label} = {reference:.10f}")
    payload["limit"] = format_rational(prob)
    payload["reference"] = reference
    if config.json_path:
        _write_text(config.json_path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_reproduce(args, config: RunConfig) -> int:
    steps = (
        ("counts", lambda: verify_counts(config.workers)),
        ("prop033", lambda: verify_prop_033(config.workers)),
        ("table", lambda: verify_table(config.workers)[0]),
        ("prop027", verify_prop_027),
        ("better34", check_better34_inequalities),
        ("star_search", lambda: verify_star_search(cap=config.assignment_cap)),
        ("goodman", lambda: verify_goodman(config.subset_cap)),
        ("poisson_emergence", verify_poisson_emergence),
        ("lemmas", verify_lemmas),
    )
    reports = []
    for name, runner in steps:
        report = runner()
        reports.append(report)
        status = "PASS" if report.passed else "FAIL"
        print(f"[{status}] {name:<18} ({report.wall_time:.2f}s)")
    passed = all(r.passed for r in reports)
    print(f"{'all certificates pass' if passed else 'CERTIFICATE FAILURE'}")
    if config.json_path:
        _write_text(config.json_path, _reports_json(reports) + "\n")
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgestat",
        description="Exact certificates for edge-count statistics of random vertex subsets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", dest="json_path", metavar="PATH", help="write JSON output here")
        p.add_argument("--csv", dest="csv_path", metavar="PATH", help="write CSV output here")
        p.add_argument("--workers", type=int, default=None, help="worker process count")
        p.add_argument("--assignment-cap", type=int, default=DEFAULT_ASSIGNMENT_CAP,
                       help="max full assignments to enumerate")
        p.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP,
                       help="max k-subsets to enumerate")

    p_enum = sub.add_parser("enumerate", help="enumerate a reduced polynomial family")
    p_enum.add_argument("--m", type=int, required=True, help="family threshold")
    p_enum.add_argument("--per-s", action="store_true", help="also print counts by variable count")
    add_common(p_enum)

    p_verify = sub.add_parser("verify", help="run a named certificate")
    p_verify.add_argument("target", choices=VERIFY_TARGETS + ("all",))
    add_common(p_verify)

    p_dist = sub.add_parser("dist", help="exact value distribution of a polynomial")
    p_dist.add_argument("--poly", required=True, help='expression such as "x1+x2+x1*x2"')
    p_dist.add_argument("--p", help="Bernoulli parameter (rational or decimal string)")
    p_dist.add_argument("--slice", help="uniform k-subset model as N,K")
    p_dist.add_argument("--ell", type=int, default=None, help="print only the mass at this value")
    add_common(p_dist)

    p_con = sub.add_parser("construct", help="host-graph family probabilities")
    p_con.add_argument("--family", required=True, choices=("bipartite", "cliques", "bipartite-plus-clique"))
    p_con.add_argument("--a", type=int, default=None, help="small-part numerator")
    p_con.add_argument("--k", type=int, required=True, help="subset size")
    p_con.add_argument("--ell", type=int, required=True, help="induced edge count")
    p_con.add_argument("--n", type=int, default=None, help="also evaluate a concrete n-vertex host")
    add_common(p_con)

    p_rep = sub.add_parser("reproduce", help="run every certificate in order")
    add_common(p_rep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = RunConfig(
            workers=args.workers if args.workers is not None else _default_workers(),
            assignment_cap=args.assignment_cap,
            subset_cap=args.subset_cap,
            json_path=args.json_path,
            csv_path=args.csv_path,
        )
        handler = {
            "enumerate": _cmd_enumerate,
            "verify": _cmd_verify,
            "dist": _cmd_dist,
            "construct": _cmd_construct,
            "reproduce": _cmd_reproduce,
        }[args.command]
        return handler(args, config)
    except (InputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
