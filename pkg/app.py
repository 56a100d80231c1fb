"""Command-line front end: parses flags, calls the services and prints one
report per run (JSON by default) on stdout. Exit codes are decided here for
verdicts; ``run.py`` maps exceptions.
"""
import argparse
import json
import logging

from config import Config, configure_logging
from services.arrowing import Outcome, SearchBudget, arrows_with_certificate_check
from services.edge_coloring import bipartition, proper_edge_coloring, two_factorize
from services.errors import ForestSpecError, UsageError
from services.free_coloring import lemma_branch, lemma_free_coloring, multicolor_free_coloring
from services.graph_core import graph6_encode, load_graph
from services.ramsey import (
    classify_instance,
    l_sequence,
    size_ramsey_exhaustive,
    verify_characterization,
    witness_graph,
)
from services.report_generator import ReportGenerator
from services.report_validation import validate_report
from services.star_forest import parse_forest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNDECIDED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


def _forest(text):
    try:
        return parse_forest(text)
    except ForestSpecError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="report format on stdout (default: json)")
    common.add_argument("--seed", type=int, default=None,
                        help=f"seed for random: graph sources (default: SRN_SEED={Config.SEED})")
    common.add_argument("--log-level", default=None,
                        help="logging threshold on stderr (default: SRN_LOG_LEVEL)")

    forests = argparse.ArgumentParser(add_help=False)
    forests.add_argument("--f1", type=_forest, help="first star forest, e.g. 3,2,2")
    forests.add_argument("--f2", type=_forest, help="second star forest")
    forests.add_argument("--fi", type=_forest, action="append", default=None,
                         help="one forest per color; repeat for q colors (replaces --f1/--f2)")

    limits = argparse.ArgumentParser(add_help=False)
    limits.add_argument("--budget", type=_positive_int, default=None,
                        help="arrowing node budget (default: SRN_MAX_COLORINGS)")
    limits.add_argument("--timeout", type=_positive_float, default=None,
                        help="arrowing wall-clock budget in seconds (default: SRN_TIMEOUT)")
    limits.add_argument("--threads", type=_positive_int, default=None,
                        help="worker processes (default: SRN_THREADS)")
    limits.add_argument("--no-symmetry-breaking", action="store_true",
                        help="explore colorings that only differ by swapping equal forests")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", required=True,
                       help="g6:<code>, edgelist:<path>, edgelist:- or random:<n>:<p>")

    parser = _Parser(
        prog="srn",
        description="Size Ramsey numbers of star forests: formulas, witnesses, arrowing, "
                    "free colorings and exhaustive search.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("formula", parents=[common, forests],
                       help="l-sequence, conjectured value and covering theorem")
    p.add_argument("--all-matches", action="store_true",
                   help="list every proved case that applies, mirrored ones included")

    sub.add_parser("witness", parents=[common, forests],
                   help="the star-forest witness graph realising the upper bound")

    p = sub.add_parser("arrows", parents=[common, forests, limits, graph],
                       help="decide G -> (F1, ..., Fq); exit 0 arrows, 1 not, 2 undecided")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds")

    p = sub.add_parser("free-color", parents=[common, graph],
                       help="constructive free coloring under the degree hypotheses")
    p.add_argument("--n", type=_positive_int, help="red star size")
    p.add_argument("--m", type=_positive_int, help="blue star size")
    p.add_argument("--fi", type=_forest, action="append", default=None,
                   help="single-star forest per color for the q-color variant")

    sub.add_parser("edge-color", parents=[common, graph],
                   help="proper edge coloring with at most Delta+1 colors")
    sub.add_parser("two-factor", parents=[common, graph],
                   help="2-factorization of an even-regular graph")

    for name, text in (("search", "exhaustive size Ramsey number and minimal graphs"),
                       ("verify", "compare predicted extremal graphs with exhaustive search")):
        p = sub.add_parser(name, parents=[common, forests, limits], help=text)
        p.add_argument("--max-edges", type=_positive_int, default=None,
                       help="largest edge count to enumerate")
        p.add_argument("--progress", action="store_true", help="progress bars on stderr")
        if name == "verify":
            p.add_argument("--pdf", default=None, help="also write a PDF report to this path")
    for p in sub.choices.values():
        p.set_defaults(command_parser=p)
    return parser


def _forests(parser, args):
    if args.fi:
        if args.f1 or args.f2:
            parser.error("--fi cannot be combined with --f1/--f2")
        return list(args.fi)
    if args.f1 is None or args.f2 is None:
        parser.error("both --f1 and --f2 are required (or repeat --fi)")
    return [args.f1, args.f2]


def _budget(args):
    return SearchBudget(
        max_colorings=args.budget or Config.MAX_COLORINGS,
        max_seconds=args.timeout or Config.TIMEOUT,
        threads=args.threads or Config.THREADS,
        symmetry_breaking=Config.SYMMETRY_BREAKING and not args.no_symmetry_breaking,
    )


def _formula(parser, args):
    forests = _forests(parser, args)
    lseq = l_sequence(forests)
    instance = classify_instance(forests)
    report = {
        "forests": [str(f) for f in forests],
        "l_sequence": list(lseq.values),
        "total": lseq.total,
        "covered_by": instance.covering_result,
        "provenance": instance.provenance,
        "mirrored": instance.mirrored,
    }
    if args.all_matches:
        report["all_matches"] = [m.to_json() for m in classify_instance(forests, all_matches=True)]
    return report, EXIT_OK


def _witness(parser, args):
    forests = _forests(parser, args)
    lseq = l_sequence(forests)
    g = witness_graph(forests)
    report = {
        "forests": [str(f) for f in forests],
        "l_sequence": list(lseq.values),
        "total": lseq.total,
        "graph6": graph6_encode(g),
        "vertex_count": g.vertex_count,
        "edge_count": g.edge_count,
    }
    return report, EXIT_OK


def _arrows(parser, args):
    forests = _forests(parser, args)
    g = load_graph(args.graph, seed=args.seed)
    verdict = arrows_with_certificate_check(g, forests, _budget(args))
    report = {"graph": graph6_encode(g), "forests": [str(f) for f in forests]}
    report.update(verdict.to_json(timing=args.timing))
    code = {Outcome.ARROWS: EXIT_OK, Outcome.NOT_ARROWS: EXIT_NEGATIVE,
            Outcome.UNDECIDED: EXIT_UNDECIDED}[verdict.outcome]
    return report, code


def _free_color(parser, args):
    g = load_graph(args.graph, seed=args.seed)
    if args.fi:
        if args.n or args.m:
            parser.error("--fi cannot be combined with --n/--m")
        if any(f.component_count != 1 for f in args.fi):
            parser.error("free-color handles single stars only")
        coloring = multicolor_free_coloring(g, [f.sizes[0] for f in args.fi])
    else:
        if args.n is None or args.m is None:
            parser.error("both --n and --m are required (or repeat --fi)")
        logger.info("decomposition lemma branch %s", lemma_branch(g, args.n, args.m))
        coloring = lemma_free_coloring(g, args.n, args.m)
    return coloring.to_records(), EXIT_OK


def _edge_color(parser, args):
    g = load_graph(args.graph, seed=args.seed)
    report = {"graph": graph6_encode(g), "max_degree": g.max_degree(),
              "bipartite": bipartition(g) is not None}
    report.update(proper_edge_coloring(g).to_json())
    return report, EXIT_OK


def _two_factor(parser, args):
    g = load_graph(args.graph, seed=args.seed)
    factorization = two_factorize(g)
    report = {"graph": graph6_encode(g), "degree": g.max_degree()}
    report.update(factorization.to_json())
    return report, EXIT_OK


def _search(parser, args):
    forests = _forests(parser, args)
    lseq = l_sequence(forests)
    instance = classify_instance(forests)
    max_edges = args.max_edges or min(lseq.total, Config.ENUM_MAX_EDGES)
    result = size_ramsey_exhaustive(forests, max_edges, _budget(args), args.progress)
    report = {
        "forests": [str(f) for f in forests],
        "l_sequence": list(lseq.values),
        "total": lseq.total,
        "covered_by": instance.covering_result,
        "provenance": instance.provenance,
        "mirrored": instance.mirrored,
    }
    report.update(result.to_json())
    code = {"exact": EXIT_OK, "not-found": EXIT_NEGATIVE, "partial": EXIT_UNDECIDED}
    return report, code[result.status]


def _verify(parser, args):
    forests = _forests(parser, args)
    result = verify_characterization(forests, args.max_edges, _budget(args), args.progress)
    report = {"l_sequence": list(l_sequence(forests).values)}
    report.update(result.to_json())
    if args.pdf:
        pdf = ReportGenerator().generate_report(report)
        with open(args.pdf, "wb") as handle:
            handle.write(pdf.getvalue())
        logger.info("📄 PDF report written to %s", args.pdf)
    code = {"equal": EXIT_OK, "different": EXIT_NEGATIVE, "partial": EXIT_UNDECIDED}
    return report, code[result.status]


HANDLERS = {
    "formula": _formula,
    "witness": _witness,
    "arrows": _arrows,
    "free-color": _free_color,
    "edge-color": _edge_color,
    "two-factor": _two_factor,
    "search": _search,
    "verify": _verify,
}


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2)
    if isinstance(report, list):
        return "\n".join(json.dumps(item) for item in report)
    lines = []
    for key, value in report.items():
        shown = value if isinstance(value, (str, int, float)) else json.dumps(value)
        lines.append(f"{key}: {shown}")
    return "\n".join(lines)


def dispatch(argv, out):
    """Parse ``argv``, run the subcommand, write the report to ``out``; returns
    the exit code. Domain errors propagate to the caller.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    logger.debug("settings: %s", Config.describe())
    report, code = HANDLERS[args.command](args.command_parser, args)
    checked = validate_report(report, args.command)
    if not checked["valid"]:
        raise RuntimeError(f"{args.command} report failed schema validation: {checked['errors']}")
    out.write(render(report, args.format) + "\n")
    return code
