"""Command line front end.

digraph-shapley value --graph cycle3.json --game '{"type":"power","n":3,"k":2}' --engine dp
digraph-shapley count --graph cycle5.json
digraph-shapley permutations --graph cycle4.json --output json
digraph-shapley check --graph cycle3.json --perm 1,2,3
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional, Tuple

from .config import ENUMERATION_LIMIT, configure_threads
from .digraph import load_digraph
from .errors import GuardError, InternalError, ValidationError
from .frontend import CLOSED_FORM, ENGINES, ShapleyValue, check_efficiency, exact_allocation, self_check
from .game import load_game
from .permutations import count_consistent, enumerate_consistent, is_consistent, make_entry_order

logger = logging.getLogger(__name__)

PROG = "digraph-shapley"
COMMANDS = ("value", "permutations", "count", "check")
OUTPUTS = ("table", "json")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_GUARD = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    graph_path: str
    game_path: Optional[str] = None  # file path or inline JSON game
    engine: str = "auto"
    output: str = "table"
    guard_override: bool = False
    perm: Optional[Tuple[int, ...]] = None
    self_check: bool = False
    parallel: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError("expected one of %s, got %r" % (", ".join(COMMANDS), self.command), field="command")
        if self.engine not in ENGINES:
            raise ValidationError("expected one of %s, got %r" % (", ".join(ENGINES), self.engine), field="--engine")
        if self.output not in OUTPUTS:
            raise ValidationError("expected one of %s, got %r" % (", ".join(OUTPUTS), self.output), field="--output")
        if self.engine == CLOSED_FORM and self.command != "value":
            raise ValidationError("the closed-form engine only applies to the value command", field="--engine")
        if self.command == "value" and not self.game_path:
            raise ValidationError("the value command needs a game", field="--game")
        if self.command == "check" and self.perm is None:
            raise ValidationError("the check command needs an entry order", field="--perm")


class RunResult(NamedTuple):
    status: int
    report: str  # stdout text, empty on failure
    diagnostic: str = ""  # one stderr line on failure


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message, field="arguments")


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, metavar="PATH", help="graph JSON file")
    common.add_argument("--game", metavar="PATH|INLINE", help="game JSON file, or inline game JSON")
    common.add_argument("--engine", choices=ENGINES, default="auto",
                        help="auto picks the subset DP above 8 players, enumeration otherwise")
    common.add_argument("--output", choices=OUTPUTS, default="table")
    common.add_argument("--self-check", action="store_true", help="recompute with a second engine and compare")
    common.add_argument("--force", action="store_true", help="lift the enumeration (10) and oracle (8) player guards")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _ArgumentParser(prog=PROG, description="Shapley values of digraph games over consistent permutations.")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("value", parents=[common], help="Shapley value of the game on the graph")
    commands.add_parser("permutations", parents=[common], help="list the consistent entry orders")
    commands.add_parser("count", parents=[common], help="count the consistent entry orders")
    check = commands.add_parser("check", parents=[common], help="test one entry order for consistency")
    check.add_argument("--perm", required=True, metavar="a,b,c", help="entry order as comma separated players")
    return parser


def parse_perm(text):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValidationError("expected comma separated player ids, got %r" % text, field="--perm")


def parse_args(argv):
    """Returns (RunConfig, verbosity) for a list of command line arguments."""
    args = build_parser().parse_args(argv)
    perm = parse_perm(args.perm) if getattr(args, "perm", None) is not None else None
    config = RunConfig(command=args.command, graph_path=args.graph, game_path=args.game, engine=args.engine,
                       output=args.output, guard_override=args.force, perm=perm, self_check=args.self_check)
    return config, args.verbose


def _dumps(data):
    return json.dumps(data, separators=(",", ":"))


def _decimal(x):
    return "%.6g" % (float(x) + 0.)


def _format_order(order):
    return "[%s]" % ",".join(str(p) for p in order)


def _value_report(config, g):
    v = load_game(config.game_path, n=g.n)
    outcome = ShapleyValue(v, g, method=config.engine, parallel=config.parallel, force=config.guard_override)
    check_efficiency(outcome, v)
    if config.self_check:
        self_check(v, g, outcome, parallel=config.parallel)
    if config.output == "json":
        return outcome.to_json()
    exact = exact_allocation(v, g)
    lines = ["engine             %s" % outcome.engine,
             "permutation_count  %d" % outcome.permutation_count,
             "player  allocation" + ("  exact" if exact is not None else "")]
    for p, x in enumerate(outcome.allocation, start=1):
        row = "%-6d  %-10s" % (p, _decimal(x))
        if exact is not None:
            row += "  %s" % exact[p - 1]
        lines.append(row.rstrip())
    return "\n".join(lines)


def _permutations_report(config, g):
    if g.n > ENUMERATION_LIMIT:
        if not config.guard_override:
            raise GuardError("listing permutations is limited to %d players (got %d); pass --force to override"
                             % (ENUMERATION_LIMIT, g.n))
        logger.warning("listing permutations of %d players because --force was given", g.n)
    orders = list(enumerate_consistent(g))
    if config.output == "json":
        return _dumps({"permutation_count": len(orders), "permutations": [list(order) for order in orders]})
    return "\n".join(_format_order(order) for order in orders)


def _count_report(config, g):
    count = count_consistent(g)
    if config.output == "json":
        return _dumps({"permutation_count": count})
    return str(count)


def _check_report(config, g):
    order = make_entry_order(config.perm, n=g.n)
    consistent = is_consistent(g, order)
    if config.output == "json":
        return _dumps({"perm": list(order), "consistent": consistent})
    return "consistent" if consistent else "inconsistent"


REPORTS = {"value": _value_report, "permutations": _permutations_report, "count": _count_report,
           "check": _check_report}


def _diagnostic(field, message):
    if field:
        return "%s: error: %s: %s" % (PROG, field, message)
    return "%s: error: %s" % (PROG, message)


def run(config):
    """Executes one command.

    Returns:
    RunResult with exit status 0 on success, 1 on validation errors, 2 on guard violations,
    3 on internal assertions such as an engine disagreement under --self-check
    """
    try:
        g = load_digraph(config.graph_path)
        report = REPORTS[config.command](config, g)
    except GuardError as e:
        return RunResult(EXIT_GUARD, "", _diagnostic(e.field, e))
    except ValidationError as e:
        return RunResult(EXIT_VALIDATION, "", _diagnostic(None, e))
    except InternalError as e:
        logger.debug("internal assertion", exc_info=True)
        return RunResult(EXIT_INTERNAL, "", _diagnostic(None, e))
    except OSError as e:
        return RunResult(EXIT_VALIDATION, "", _diagnostic(e.filename, e.strerror or e))
    return RunResult(EXIT_OK, report)


def configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(name)s: %(levelname)s: %(message)s")


def main(argv=None):
    """Entry point of the digraph-shapley command. Returns the exit status."""
    argv = sys.argv[1:] if argv is None else argv
    try:
        config, verbosity = parse_args(argv)
        configure_logging(verbosity)
        if configure_threads():
            config = replace(config, parallel=True)
    except ValidationError as e:
        print(_diagnostic(None, e), file=sys.stderr)
        return EXIT_VALIDATION
    result = run(config)
    if result.report:
        print(result.report)
    if result.diagnostic:
        print(result.diagnostic, file=sys.stderr)
    return result.status
