import argparse
import logging
from typing import Dict, Optional, Sequence

from cli.commands import (
    BlockCutCommand, ClassifyDeckCommand, CompareCommand, CrCommand,
    DcrCommand, DeckCommand, EnumerateCommand, RefineCommand, UnfoldCommand,
    VerifyCommand, Wl2Command,
)
from cli.output import OutputFormatter
from models.errors import (
    CorpusError, CRDeckError, GraphDomainError, GraphFormatError, GraphInputError,
    IntegrityError, ResourceGuardError, UsageError,
)
from models.types import (
    DEFAULT_GUARD_NODES, CliConfig, Command, CommandProtocol, CompareMode, ExitCode, Experiment,
    LineWriter, OutputFormat,
)
from utils.helpers import default_jobs, setup_logging, validate_positive


logger = logging.getLogger(__name__)

VERIFY_CHOICES = [e.value for e in Experiment if e is not Experiment.OPEN_QUESTION]
GRAPH_HELP = "graph6/sparse6 text, a built-in name (C6, 2C3, bowtie) or a file"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="order of the corpus")
    common.add_argument("--depth", type=int, help="refinement round / unfolding depth")
    common.add_argument("--jobs", type=int, default=default_jobs(), help="worker processes (default: all cores)")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=OutputFormat.TEXT.value)
    common.add_argument("--corpus", help="graph6 corpus file (or deck index for classify-deck)")
    common.add_argument("--guard-nodes", type=int, default=DEFAULT_GUARD_NODES,
                        help="node limit for unfoldings")
    common.add_argument("--out", help="write the corpus to this file")
    common.add_argument("--index", help="deck index file to write (enumerate) or read (classify-deck)")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true")

    parser = argparse.ArgumentParser(
        prog="crdeck",
        description="Color refinement, refinement decks and related graph invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    for command, help_text in (
        (Command.REFINE, "stable coloring of each graph"),
        (Command.CR, "refinement invariant dump"),
        (Command.DCR, "refinement-deck invariant dump"),
        (Command.WL2, "2-WL invariant dump"),
        (Command.DECK, "cards as graph6, one per vertex"),
        (Command.BLOCKCUT, "blocks, cut vertices and leaf blocks"),
        (Command.CLASSIFY_DECK, "connectedness from a deck given by its cards"),
    ):
        p = sub.add_parser(command.value, parents=[common], help=help_text)
        p.add_argument("graphs", nargs="+", metavar="G", help=GRAPH_HELP)

    p = sub.add_parser(Command.COMPARE.value, parents=[common], help="iso / cr / dcr / wl2 / similar verdicts")
    p.add_argument("graphs", nargs="+", metavar="G", help=GRAPH_HELP)
    p.add_argument("--mode", choices=[m.value for m in CompareMode], default=CompareMode.DIGEST.value,
                   help="compare cr, dcr and wl2 by digests or by exact joint refinement")

    p = sub.add_parser(Command.UNFOLD.value, parents=[common], help="depth-r unfolding at x as DOT")
    p.add_argument("graphs", nargs=1, metavar="G", help=GRAPH_HELP)
    p.add_argument("vertex", type=int, metavar="x")
    p.add_argument("depth_arg", type=int, nargs="?", metavar="r")

    p = sub.add_parser(Command.ENUMERATE.value, parents=[common], help="all graphs of order n")
    p.add_argument("order", type=int, nargs="?", metavar="n")

    p = sub.add_parser(Command.VERIFY.value, parents=[common], help="run a corpus experiment")
    p.add_argument("experiment", choices=VERIFY_CHOICES)

    sub.add_parser(Command.PROBE_OPENQ.value, parents=[common],
                   help="pairs with equal refinement decks and different refinement invariants")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> CliConfig:
    """
    Parse the command line into a CliConfig.

    Args:
        argv: Arguments without the program name; sys.argv when None
    """
    args = build_parser().parse_args(argv)
    command = Command(args.command)
    n = getattr(args, "order", None)
    depth = getattr(args, "depth_arg", None)
    experiment = getattr(args, "experiment", None)
    if command is Command.PROBE_OPENQ:
        experiment = Experiment.OPEN_QUESTION.value
    return CliConfig(
        command=command,
        graphs=list(getattr(args, "graphs", []) or []),
        n=args.n if n is None else n,
        depth=args.depth if depth is None else depth,
        vertex=getattr(args, "vertex", None),
        experiment=Experiment(experiment) if experiment else None,
        mode=CompareMode(getattr(args, "mode", CompareMode.DIGEST.value)),
        output_format=OutputFormat(args.output_format),
        jobs=args.jobs,
        corpus=args.corpus,
        out=args.out,
        index=args.index,
        guard_nodes=args.guard_nodes,
        verbose=args.verbose,
        quiet=args.quiet,
    )


class CRDeckApp:
    """Command-line application: one handler per subcommand"""

    def __init__(self, writer: Optional[LineWriter] = None) -> None:
        self.writer = writer
        self.commands: Dict[Command, CommandProtocol] = {}

    def _setup_commands(self, formatter: OutputFormatter) -> None:
        """Register the handler of every subcommand"""
        self.commands = {
            Command.REFINE: RefineCommand(formatter),
            Command.CR: CrCommand(formatter),
            Command.DCR: DcrCommand(formatter),
            Command.WL2: Wl2Command(formatter),
            Command.COMPARE: CompareCommand(formatter),
            Command.DECK: DeckCommand(formatter),
            Command.UNFOLD: UnfoldCommand(formatter),
            Command.BLOCKCUT: BlockCutCommand(formatter),
            Command.ENUMERATE: EnumerateCommand(formatter),
            Command.CLASSIFY_DECK: ClassifyDeckCommand(formatter),
            Command.VERIFY: VerifyCommand(formatter),
            Command.PROBE_OPENQ: VerifyCommand(formatter, Experiment.OPEN_QUESTION),
        }

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Run one subcommand.

        Args:
            argv: Arguments without the program name

        Returns:
            Process exit code
        """
        try:
            config = parse_config(argv)
        except SystemExit as e:
            # argparse exits 2 on usage errors and 0 after --help
            return e.code if isinstance(e.code, int) else ExitCode.USAGE

        setup_logging(config.verbose, config.quiet)
        self._setup_commands(OutputFormatter(config.output_format, self.writer))

        try:
            for value, name in ((config.jobs, "--jobs"), (config.guard_nodes, "--guard-nodes")):
                ok, message = validate_positive(value, name)
                if not ok:
                    raise UsageError(message)
            return self.commands[config.command].run(config)
        except (UsageError, GraphFormatError, GraphInputError, GraphDomainError, CorpusError) as e:
            logger.error("%s", e)
            return ExitCode.USAGE
        except ResourceGuardError as e:
            logger.error("%s (raise --guard-nodes or lower the depth)", e)
            return ExitCode.RESOURCE
        except IntegrityError as e:
            logger.critical("Integrity failure: %s", e)
            return ExitCode.INTEGRITY
        except CRDeckError as e:
            logger.error("%s", e)
            return ExitCode.USAGE


def create_app(writer: Optional[LineWriter] = None) -> CRDeckApp:
    """
    Factory function to create the application.

    Args:
        writer: Receives every output line; stdout when None

    Returns:
        Configured application instance
    """
    return CRDeckApp(writer)
