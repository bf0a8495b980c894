#!/usr/bin/env python
import argparse
import json
import logging
import sys
from typing import Callable, Dict, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, ValidationError, model_validator

from qtflows.errors import QTFlowsError, UsageError
from qtflows.flow import Engine, GNVariant, count_flows, ehrhart_qt, enumerate_flows, flow_to_tesler, gn_sum
from qtflows.graph import FlowNetwork, ThresholdGraph, complete, from_binary, from_degree_sequence, inflate, relabel_netflow, shifted_shape
from qtflows.models import GraphSummary, HistogramResult, PolynomialResult, PosetSummary, VerificationReport
from qtflows.parking import ParkingMethod, codeg, enumerate_parking_functions, maximal_parking_functions, pmaj
from qtflows.poly import QTPolynomial, Specialization, check_flags, specialize
from qtflows.poset import poset
from qtflows.settings import Settings, load_settings
from qtflows.tree import enumerate_spanning_trees, histogram, inv, kappa
from qtflows.tutte import TutteSolver
from qtflows.verify import (
    reproduce_negatives,
    scan_conjectures,
    verify_catalan,
    verify_lemma_q,
    verify_lemma_t0,
    verify_matrix_tree,
    verify_merino,
    verify_pmaj,
    verify_qinv,
    verify_spanning_counts,
    verify_t0,
    verify_t1,
)

logger = logging.getLogger(__name__)

GRAPH_COMMANDS = ("ehr", "trees", "parking", "tutte", "tesler")


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


class Command(BaseModel):
    """Graph selection and netflow shared by the graph-taking subcommands."""

    subcommand: str
    beta: Optional[Tuple[int, ...]] = Field(None, description="Binary sequence, e.g. 1010")
    degrees: Optional[Tuple[int, ...]] = Field(None, description="Degree sequence of a threshold graph")
    complete: Optional[int] = Field(None, ge=2, description="Vertex count of a complete graph")
    drop_edges: Tuple[Tuple[int, int], ...] = Field((), description="Edges removed from --complete")
    a: Optional[Tuple[int, ...]] = Field(None, description="Netflow; all ones when omitted")
    beta_labels: bool = Field(False, description="--a is written in beta labels")
    json_output: bool = False

    @model_validator(mode="after")
    def _one_graph(self) -> "Command":
        given = [x for x in (self.beta, self.degrees, self.complete) if x is not None]
        if len(given) != 1:
            raise ValueError("give exactly one of --beta, --degrees, --complete")
        if self.drop_edges and self.complete is None:
            raise ValueError("--drop-edge only applies to --complete")
        return self

    def graph(self) -> ThresholdGraph:
        if self.beta is not None:
            return from_binary(self.beta)
        if self.degrees is not None:
            return from_degree_sequence(self.degrees)
        return complete(self.complete - 1)

    def host(self):
        if self.drop_edges:
            try:
                return FlowNetwork.complete(self.complete - 1).without_edges(self.drop_edges)
            except ValueError as e:
                raise UsageError(str(e)) from None
        return self.graph()

    def netflow(self) -> Tuple[int, ...]:
        n = self.complete - 1 if self.complete is not None else self.graph().n
        if self.a is None:
            return (1,) * n
        if self.beta_labels and self.beta is not None:
            return relabel_netflow(self.graph(), self.a)
        return self.a

    def summary(self) -> Optional[GraphSummary]:
        if self.drop_edges:
            return None
        return GraphSummary(**self.graph().to_dict())


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _binary(text: str) -> Tuple[int, ...]:
    if not text or set(text) - {"0", "1"}:
        raise argparse.ArgumentTypeError(f"expected a 0/1 string, got {text!r}")
    return tuple(int(c) for c in text)


def _edge(text: str) -> Tuple[int, int]:
    pair = _int_list(text)
    if len(pair) != 2:
        raise argparse.ArgumentTypeError(f"expected an edge i,j, got {text!r}")
    return pair[0], pair[1]


def _point(text: str) -> Tuple[QTPolynomial, QTPolynomial]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}")
    try:
        return QTPolynomial.parse(parts[0]), QTPolynomial.parse(parts[1])
    except QTFlowsError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--beta", type=_binary, help="Binary sequence beta_0 ... beta_{n-1}")
    group.add_argument("--degrees", type=_int_list, help="Threshold degree sequence, e.g. 4,3,2,2,1")
    group.add_argument("--complete", type=int, help="Complete graph on this many vertices")
    parser.add_argument("--a", type=_int_list, help="Netflow a_1,...,a_n (default all ones)")
    parser.add_argument("--beta-labels", action="store_true", help="Read --a in beta labels")
    parser.add_argument("--json", action="store_true", help="Emit JSON")


def _add_scan_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-max", type=int, help="Largest n (default from the profile)")
    parser.add_argument("--json", action="store_true", help="Emit the JSON report")
    parser.add_argument("--stable", action="store_true", help="Report elapsed_ms as 0")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="qtflows", description="Weighted Ehrhart functions of flow polytopes of threshold graphs.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--profile", help="Budget profile from config/budgets.yaml")
    parser.add_argument("--workers", type=int, help="Worker processes")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_ehr = subparsers.add_parser("ehr", help="Weighted Ehrhart function Ehr_{q,t}(G, a)")
    _add_graph_arguments(p_ehr)
    p_ehr.add_argument("--drop-edge", type=_edge, action="append", default=[], help="Remove edge i,j from --complete")
    p_ehr.add_argument("--spec", choices=["t1", "t0", "tqinv"], help="Specialize t")
    p_ehr.add_argument("--weight", choices=["qt", "gn"], default="qt", help="Flow weight")
    p_ehr.add_argument("--variant", choices=["gn", "gn-threshold"], default="gn", help="Variant for --weight gn")
    p_ehr.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.RECURSIVE.value)

    p_trees = subparsers.add_parser("trees", help="Spanning-tree statistic histogram")
    _add_graph_arguments(p_trees)
    p_trees.add_argument("--stat", choices=["inv", "kappa"], default="inv")

    p_parking = subparsers.add_parser("parking", help="Parking-function statistic histogram")
    _add_graph_arguments(p_parking)
    p_parking.add_argument("--stat", choices=["codeg", "pmaj"], default="codeg")
    p_parking.add_argument("--method", choices=[m.value for m in ParkingMethod], default=ParkingMethod.BURNING.value)

    p_tutte = subparsers.add_parser("tutte", help="Tutte polynomial of the inflated multigraph")
    _add_graph_arguments(p_tutte)
    p_tutte.add_argument("--at", type=_point, help="Substitute x,y (integers or polynomials in q, t)")

    p_tesler = subparsers.add_parser("tesler", help="Tesler matrices of the integer flows")
    _add_graph_arguments(p_tesler)
    p_tesler.add_argument("--drop-edge", type=_edge, action="append", default=[], help="Remove edge i,j from --complete")
    p_tesler.add_argument("--list", action="store_true", help="Stream the matrices, one per line")

    p_poset = subparsers.add_parser("poset", help="The poset of connected threshold graphs")
    p_poset.add_argument("--n", type=int, required=True)
    p_poset.add_argument("--json", action="store_true")

    p_verify = subparsers.add_parser("verify", help="Check a closed form over a range of instances")
    p_verify.add_argument("theorem", choices=sorted(VERIFIERS))
    _add_scan_arguments(p_verify)
    p_verify.add_argument("--a-max", type=int, help="Largest netflow entry (default from the profile)")
    p_verify.add_argument("--seed", type=int, help="Seed for random netflows")
    p_verify.add_argument("--exhaustive", action="store_true", help="Every netflow up to the exhaustive budget")

    p_scan = subparsers.add_parser("scan", help="Coefficient-positivity scans")
    p_scan.add_argument("which", choices=["positivity", "k-minus-g", "poset"])
    _add_scan_arguments(p_scan)
    return parser


# -- graph subcommands ------------------------------------------------------


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_ehr(args: argparse.Namespace, command: Command, settings: Settings) -> int:
    host, a = command.host(), command.netflow()
    if args.weight == "gn":
        value = gn_sum(host, a, GNVariant(args.variant))
    else:
        value = ehrhart_qt(host, a, args.engine, settings.workers)
    text = str(specialize(value, Specialization(args.spec))) if args.spec else str(value)
    if not command.json_output:
        print(text)
        return 0
    symmetric, nonnegative = check_flags(value)
    result = PolynomialResult(
        graph=command.summary(),
        a=list(a),
        polynomial=text,
        flows=count_flows(host, a),
        symmetric=None if args.spec else symmetric,
        nonnegative=None if args.spec else nonnegative,
    )
    _emit(result.model_dump(exclude_none=True))
    return 0


def cmd_trees(args: argparse.Namespace, command: Command, settings: Settings) -> int:
    stat = inv if args.stat == "inv" else kappa
    values = [stat(tree) for tree in enumerate_spanning_trees(command.graph())]
    result = HistogramResult(graph=command.summary(), stat=args.stat, histogram=histogram(values))
    _emit(result.public_dict())
    return 0


def cmd_parking(args: argparse.Namespace, command: Command, settings: Settings) -> int:
    graph = command.graph()
    found = list(enumerate_parking_functions(graph, args.method))
    if args.stat == "pmaj":
        maximal = maximal_parking_functions(graph)
        values = [pmaj(P, maximal) for P in found]
    else:
        values = [codeg(P) for P in found]
    result = HistogramResult(graph=command.summary(), stat=args.stat, histogram=histogram(values))
    _emit(result.public_dict())
    return 0


def cmd_tutte(args: argparse.Namespace, command: Command, settings: Settings) -> int:
    a = command.netflow()
    solver = TutteSolver(settings.tutte_max_vertices, settings.tutte_max_relabelings)
    # x is written q and y is written t
    value = solver(inflate(command.graph(), a))
    if args.at is not None:
        value = value.substitute(q=args.at[0], t=args.at[1])
    if not command.json_output:
        print(value)
        return 0
    _emit(PolynomialResult(graph=command.summary(), a=list(a), polynomial=str(value)).model_dump(exclude_none=True))
    return 0


def cmd_tesler(args: argparse.Namespace, command: Command, settings: Settings) -> int:
    host, a = command.host(), command.netflow()
    if args.list:
        for flow in enumerate_flows(host, a):
            print(flow_to_tesler(flow).row_major())
        return 0
    total = count_flows(host, a)
    if command.json_output:
        _emit({"a": list(a), "count": total})
    else:
        print(total)
    return 0


GRAPH_HANDLERS: Dict[str, Callable[[argparse.Namespace, Command, Settings], int]] = {
    "ehr": cmd_ehr,
    "trees": cmd_trees,
    "parking": cmd_parking,
    "tutte": cmd_tutte,
    "tesler": cmd_tesler,
}


def cmd_poset(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    P = poset(args.n)
    summary = PosetSummary(
        n=args.n,
        elements=[list(g.beta) for g in P.elements],
        covers=[[h, g] for h, g in P.covers],
        shapes=[list(shifted_shape(g)) for g in P.elements],
    )
    if args.json:
        _emit(summary.model_dump())
        return 0
    for k, (beta, shape) in enumerate(zip(summary.elements, summary.shapes)):
        print(f"{k} {''.join(map(str, beta))} ({','.join(map(str, shape))})")
    for h, g in summary.covers:
        print(f"{h} < {g}")
    return 0


# -- verification -----------------------------------------------------------

Verifier = Callable[[argparse.Namespace, Settings, int], VerificationReport]


def _netflow_verifier(fn) -> Verifier:
    def run_one(args: argparse.Namespace, settings: Settings, n_max: int) -> VerificationReport:
        a_max = args.a_max or settings.a_max
        return fn(n_max, a_max, settings, args.exhaustive, args.seed)

    return run_one


VERIFIERS: Dict[str, Verifier] = {
    "t1": _netflow_verifier(verify_t1),
    "t0": _netflow_verifier(verify_t0),
    "qinv": _netflow_verifier(verify_qinv),
    "matrix-tree": _netflow_verifier(verify_matrix_tree),
    "lemma-t0": lambda args, settings, n_max: verify_lemma_t0(n_max, n_max),
    "lemma-q": lambda args, settings, n_max: verify_lemma_q(args.a_max or settings.a_max + 1, n_max, n_max),
    "counts": lambda args, settings, n_max: verify_spanning_counts(n_max, settings),
    "merino": lambda args, settings, n_max: verify_merino(n_max, settings),
    "pmaj": lambda args, settings, n_max: verify_pmaj(n_max),
    "catalan": lambda args, settings, n_max: verify_catalan(n_max),
    "negatives": lambda args, settings, n_max: reproduce_negatives(),
}

SCANS = {"positivity": "positivity", "k-minus-g": "complete_minus_g", "poset": "poset_covers"}


def _report(args: argparse.Namespace, report: VerificationReport) -> int:
    if args.stable:
        report = report.model_copy(update={"elapsed_ms": 0})
    if args.json:
        _emit(report.public_dict())
    else:
        print(f"{report.theorem}: {report.passed}/{report.instances} passed in {report.elapsed_ms} ms")
        for record in report.failures:
            beta, a = "".join(map(str, record.beta)), ",".join(map(str, record.a))
            print(f"  FAIL beta={beta} a={a} {record.check}: {record.lhs} != {record.rhs}")
    return 0 if report.ok else 1


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    n_max = args.n_max or settings.n_max
    return _report(args, VERIFIERS[args.theorem](args, settings, n_max))


def cmd_scan(args: argparse.Namespace, settings: Settings) -> int:
    n_max = args.n_max or settings.n_max
    return _report(args, scan_conjectures(SCANS[args.which], n_max, settings))


# -- entry point ------------------------------------------------------------


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _settings(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.profile)
    if args.workers is not None:
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        settings = settings.model_copy(update={"workers": args.workers})
    return settings


def _command(args: argparse.Namespace) -> Command:
    try:
        return Command(
            subcommand=args.command,
            beta=args.beta,
            degrees=args.degrees,
            complete=args.complete,
            drop_edges=tuple(getattr(args, "drop_edge", [])),
            a=args.a,
            beta_labels=args.beta_labels,
            json_output=args.json,
        )
    except ValidationError as e:
        raise UsageError(e.errors()[0]["msg"]) from None


def dispatch(args: argparse.Namespace) -> int:
    settings = _settings(args)
    logger.debug("%s with profile %s and %d worker(s)", args.command, settings.profile, settings.workers)
    if args.command in GRAPH_COMMANDS:
        return GRAPH_HANDLERS[args.command](args, _command(args), settings)
    if args.command == "poset":
        return cmd_poset(args)
    if args.command == "verify":
        return cmd_verify(args, settings)
    return cmd_scan(args, settings)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _configure_logging(args.verbose)
        return dispatch(args)
    except QTFlowsError as e:
        print(f"qtflows: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        raise Exception(f"An error occurred while running qtflows: {e}")


if __name__ == "__main__":
    sys.exit(run())
