"""Batch command-line front end.

Reads graph/matrix JSON, dispatches one subcommand, prints one JSON document
(or DOT text) and exits with: 0 success or affirmative decision, 1 negative
decision, 2 unknown (budget ran out), 64 usage error, 65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from dataclasses import dataclass

from . import congruence, duality, graphs, laplacians, serialization
from .errors import (BudgetExceeded, CapExceeded, EmptyOrFullSet,
                     InvalidReductionSpec, LapdualError, LoopCountMismatch,
                     MalformedInput, NonplanarInput, NotCotreeEdge,
                     NotMaximalForest, NotSquare, NotSymmetric, NotUnimodular,
                     RowSumNonzero, ShapeMismatch, TraceTooLarge, UnknownTag)

# violations of an input contract: the file parsed, but its content cannot be
# used with the requested operation
INPUT_ERRORS = (MalformedInput, InvalidReductionSpec, NotMaximalForest,
                NotCotreeEdge, EmptyOrFullSet, NotSymmetric, NotSquare,
                NotUnimodular, ShapeMismatch, LoopCountMismatch, RowSumNonzero,
                TraceTooLarge)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_MALFORMED = 65

DEFAULT_BUDGET = 10**6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class CliConfig:
    """One parsed invocation: subcommand, input paths and the shared knobs."""

    command: str
    inputs: tuple
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    forest: str = None
    v0: str = None
    beta: str = "identity"
    tag: str = None
    out: str = None

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")


def _parse_index_tokens(text, prefix):
    """Comma-separated indices; bare integers are 0-based, `e3`/`v3` style
    tokens use 1-based labels."""
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token[0].lower() == prefix:
            out.append(int(token[1:]) - 1)
        else:
            out.append(int(token))
    return out


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def _load_graph(path):
    return serialization.graph_from_json(_load_json(path))


def _load_matrix(path):
    return serialization.matrix_from_json(_load_json(path))


def _forest_of(config, g):
    if config.forest is None or config.forest == "auto":
        return graphs.maximal_forest(g)
    edges = _parse_index_tokens(config.forest, "e")
    return graphs.ForestCertificate.from_forest(g, edges)


def _spec_of(config, g):
    if config.v0 is None or config.v0 == "auto":
        return laplacians.default_reduction_spec(g)
    return laplacians.ReductionSpec.of(_parse_index_tokens(config.v0, "v"))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int,
                        default=int(os.environ.get("LAPDUAL_BUDGET", DEFAULT_BUDGET)),
                        help="elementary steps allowed for searches")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized restarts")
    common.add_argument("--out", help="write the JSON/DOT result to this path")

    parser = _Parser(prog="lapdual",
                     description="Exact integer Laplacian/dual-Laplacian toolkit "
                                 "for multigraphs: congruence, 2-isomorphism, "
                                 "duality and planarity certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, help_text, forest=False, v0=False):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("graph")
        if forest:
            p.add_argument("--forest", default=None,
                           help="explicit forest edges, e.g. e1,e2,e4 (1-based) or 0,1,3")
        if v0:
            p.add_argument("--v0", default=None,
                           help="deleted vertices, e.g. v3 (1-based) or 2")
        return p

    graph_cmd("laplacian", "Laplacian matrix")
    graph_cmd("reduced-laplacian", "reduced Laplacian", v0=True)
    graph_cmd("incidence", "incidence matrix (reduced when --v0 is given)", v0=True)
    graph_cmd("cut-block", "fundamental-cut block", forest=True, v0=True)
    graph_cmd("flow-matrix", "fundamental-circuit matrix", forest=True, v0=True)
    graph_cmd("dual-laplacian", "reduced and bordered dual Laplacian", forest=True, v0=True)

    p = sub.add_parser("snf", help="Smith normal form with witnesses", parents=[common])
    p.add_argument("matrix")

    p = sub.add_parser("check-congruence", parents=[common],
                       help="integer congruence of two symmetric matrices")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")

    p = sub.add_parser("check-2iso", parents=[common], help="2-isomorphism of two multigraphs")
    p.add_argument("graph_a")
    p.add_argument("graph_b")

    p = sub.add_parser("verify-property", parents=[common],
                       help="check one Laplacian property tag")
    p.add_argument("tag", metavar="TAG",
                   help="one of: " + ", ".join(laplacians.PROPERTY_TAGS))
    p.add_argument("graph")

    graph_cmd("planarity", "certified planarity decision")
    graph_cmd("find-dual", "construct and verify an abstract dual")

    p = sub.add_parser("verify-dual", parents=[common],
                       help="verify an abstract-dual edge bijection")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p.add_argument("--beta", default="identity",
                   help="comma-separated image positions, or 'identity'")

    p = sub.add_parser("emit-dot", parents=[common], help="render a graph as DOT text")
    p.add_argument("graph")
    return parser


def _dispatch(config: CliConfig):
    """Returns (payload, exit_code); payload may be a raw string for DOT."""
    cmd = config.command
    if cmd == "laplacian":
        return laplacians.laplacian(_load_graph(config.inputs[0])), EXIT_OK
    if cmd == "reduced-laplacian":
        g = _load_graph(config.inputs[0])
        return laplacians.reduced_laplacian(g, _spec_of(config, g)), EXIT_OK
    if cmd == "incidence":
        g = _load_graph(config.inputs[0])
        if config.v0 is None:
            return laplacians.incidence(g), EXIT_OK
        return laplacians.reduced_incidence(g, None, _spec_of(config, g)), EXIT_OK
    if cmd == "cut-block":
        g = _load_graph(config.inputs[0])
        return laplacians.cut_block(g, None, _forest_of(config, g),
                                    _spec_of(config, g)), EXIT_OK
    if cmd == "flow-matrix":
        g = _load_graph(config.inputs[0])
        return laplacians.flow_matrix(g, None, _forest_of(config, g),
                                      _spec_of(config, g)), EXIT_OK
    if cmd == "dual-laplacian":
        g = _load_graph(config.inputs[0])
        pair = laplacians.reduced_dual_laplacian(g, None, _forest_of(config, g),
                                                 _spec_of(config, g))
        return pair, EXIT_OK
    if cmd == "snf":
        from .intmatrix import smith_normal_form
        return smith_normal_form(_load_matrix(config.inputs[0])), EXIT_OK
    if cmd == "check-congruence":
        verdict = congruence.decide_congruence(_load_matrix(config.inputs[0]),
                                               _load_matrix(config.inputs[1]),
                                               config.budget)
        code = {"congruent": EXIT_OK, "not_congruent": EXIT_NEGATIVE}.get(
            verdict.status, EXIT_UNKNOWN)
        return verdict, code
    if cmd == "check-2iso":
        result = graphs.decide_2_isomorphism_bruteforce(
            _load_graph(config.inputs[0]), _load_graph(config.inputs[1]), config.budget)
        code = {"two_isomorphic": EXIT_OK, "not_two_isomorphic": EXIT_NEGATIVE}.get(
            result.status, EXIT_UNKNOWN)
        return result, code
    if cmd == "verify-property":
        report = laplacians.verify_property(_load_graph(config.inputs[0]), config.tag)
        return report, EXIT_OK if report.passed else EXIT_NEGATIVE
    if cmd == "planarity":
        result = duality.decide_planarity(_load_graph(config.inputs[0]),
                                          config.budget, config.seed)
        code = {"planar": EXIT_OK, "nonplanar": EXIT_NEGATIVE}.get(result.status, EXIT_UNKNOWN)
        return result, code
    if cmd == "find-dual":
        try:
            cert = duality.construct_abstract_dual(_load_graph(config.inputs[0]),
                                                   config.budget, config.seed)
            return cert, EXIT_OK
        except NonplanarInput as exc:
            return {"error": {"type": "NonplanarInput", "message": str(exc)}}, EXIT_NEGATIVE
        except BudgetExceeded as exc:
            return {"error": {"type": "BudgetExceeded", "message": str(exc)}}, EXIT_UNKNOWN
    if cmd == "verify-dual":
        g1 = _load_graph(config.inputs[0])
        g2 = _load_graph(config.inputs[1])
        if config.beta == "identity":
            beta = tuple(range(g1.num_edges))
        else:
            beta = tuple(_parse_index_tokens(config.beta, "e"))
        report = duality.verify_abstract_dual(g1, g2, beta)
        return report, EXIT_OK if report.ok else EXIT_NEGATIVE
    if cmd == "emit-dot":
        return serialization.emit_dot(_load_graph(config.inputs[0])), EXIT_OK
    raise AssertionError(f"unhandled command {cmd}")


def _emit(text, config):
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_POSITIONALS = {
    "snf": ("matrix",),
    "check-congruence": ("matrix_a", "matrix_b"),
    "check-2iso": ("graph_a", "graph_b"),
    "verify-dual": ("graph_a", "graph_b"),
}


def config_from_args(args) -> CliConfig:
    names = _POSITIONALS.get(args.command, ("graph",))
    return CliConfig(
        command=args.command,
        inputs=tuple(getattr(args, name) for name in names),
        budget=args.budget,
        seed=args.seed,
        forest=getattr(args, "forest", None),
        v0=getattr(args, "v0", None),
        beta=getattr(args, "beta", "identity"),
        tag=getattr(args, "tag", None),
        out=args.out,
    )


def run(config: CliConfig) -> int:
    """Execute one configured invocation; returns the process exit code."""
    try:
        payload, code = _dispatch(config)
    except (UnknownTag, ValueError) as exc:
        _emit(serialization.dumps({"error": {"type": type(exc).__name__,
                                             "message": str(exc)}}), config)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        _emit(serialization.dumps({"error": {"type": type(exc).__name__,
                                             "message": str(exc)}}), config)
        return EXIT_MALFORMED
    except (BudgetExceeded, CapExceeded) as exc:
        _emit(serialization.dumps({"error": {"type": type(exc).__name__,
                                             "message": str(exc)}}), config)
        return EXIT_UNKNOWN
    except LapdualError as exc:
        _emit(serialization.dumps({"error": {"type": type(exc).__name__,
                                             "message": str(exc)}}), config)
        return EXIT_NEGATIVE
    if isinstance(payload, str):
        _emit(payload, config)
    else:
        _emit(serialization.dumps(payload), config)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget < 0:
        parser.error("--budget must be nonnegative")
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
