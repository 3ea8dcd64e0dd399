"""Command-line interface.

Commands::

    credence validate <net.json>
    credence query <net.json> [--evidence <e.json>] --target VAR
    credence confidence <net.json> [--evidence <e.json>] --target VAR=STATE
                        [--top-k N] [--format table|csv|histogram]
    credence scenario <scenario.json> [--format table|csv|histogram]

Global options (before the command): --precision N, --max-vars N.

Exit codes: 0 ok, 1 I/O error, 2 validation/usage error, 3 impossible
evidence, 4 scenario step failure.
"""

from __future__ import annotations

import argparse
import sys

from .confidence import belief_distribution, summarize, top_k_distribution
from .errors import (
    CredenceError,
    ImpossibleEvidenceError,
    ScenarioStepError,
    QueryError,
    ZeroMassConditionError,
)
from .inference import EvidenceSet, load_evidence_file, posterior
from .model import DEFAULT_MAX_VARIABLES, load_network_file
from .render import (
    RenderOptions,
    distribution_csv,
    render_distribution,
    render_distribution_histogram,
    render_posterior,
    report_csv,
    report_histogram,
    report_table,
)
from .scenario import load_scenario_file, run_scenario


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioStepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ImpossibleEvidenceError, ZeroMassConditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CredenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credence",
        description="Causal-network beliefs and the confidence behind them.",
    )
    parser.add_argument(
        "--precision", type=int, default=3, metavar="N",
        help="decimal places for tables and histograms (default 3)",
    )
    parser.add_argument(
        "--max-vars", type=int, default=DEFAULT_MAX_VARIABLES, metavar="N",
        help=f"enumeration cap override (default {DEFAULT_MAX_VARIABLES})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a network document")
    p.add_argument("network")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("query", help="posterior of one variable")
    p.add_argument("network")
    p.add_argument("--evidence", metavar="FILE")
    p.add_argument("--target", required=True, metavar="VAR")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("confidence", help="belief distribution and summary")
    p.add_argument("network")
    p.add_argument("--evidence", metavar="FILE")
    p.add_argument("--target", required=True, metavar="VAR=STATE")
    p.add_argument("--top-k", type=int, default=None, metavar="N")
    p.add_argument("--format", choices=["table", "csv", "histogram"], default="table")
    p.add_argument("--width", type=int, default=60, help="histogram width")
    p.set_defaults(func=_cmd_confidence)

    p = sub.add_parser("scenario", help="replay an evidence narrative")
    p.add_argument("scenario")
    p.add_argument("--format", choices=["table", "csv", "histogram"], default="table")
    p.add_argument("--width", type=int, default=60, help="histogram width")
    p.set_defaults(func=_cmd_scenario)

    return parser


def _options(args, fmt: str = "table") -> RenderOptions:
    try:
        return RenderOptions(
            format=fmt, precision=args.precision, width=getattr(args, "width", 60)
        )
    except ValueError as exc:
        raise QueryError(str(exc)) from None


def _load(args):
    net = load_network_file(args.network, max_variables=args.max_vars)
    if getattr(args, "evidence", None):
        evidence = load_evidence_file(args.evidence)
    else:
        evidence = EvidenceSet()
    return net, evidence


def _cmd_validate(args) -> int:
    net = load_network_file(args.network, max_variables=args.max_vars)
    print(f"ok: {len(net.variables)} variables, {len(net.nodes)} nodes")
    return 0


def _cmd_query(args) -> int:
    net, evidence = _load(args)
    opts = _options(args)
    print(render_posterior(posterior(net, evidence, args.target), opts))
    return 0


def _cmd_confidence(args) -> int:
    net, evidence = _load(args)
    opts = _options(args, args.format)
    var, sep, state = args.target.partition("=")
    if not sep or not var or not state:
        raise QueryError("--target must be VAR=STATE")
    if args.top_k is not None:
        dist = top_k_distribution(net, evidence, var, state, k=args.top_k)
    else:
        dist = belief_distribution(net, evidence, var, state)
    summary = summarize(dist)
    if opts.format == "csv":
        print(distribution_csv(dist, summary), end="")
    elif opts.format == "histogram":
        print(render_distribution_histogram(dist, summary, opts))
    else:
        print(render_distribution(dist, summary, opts))
    return 0


def _cmd_scenario(args) -> int:
    scenario = load_scenario_file(args.scenario, max_variables=args.max_vars)
    report = run_scenario(scenario)
    opts = _options(args, args.format)
    if opts.format == "csv":
        print(report_csv(report), end="")
    elif opts.format == "histogram":
        print(report_histogram(report, opts))
    else:
        print(report_table(report, opts))
    return 0


if __name__ == "__main__":
    sys.exit(main())
