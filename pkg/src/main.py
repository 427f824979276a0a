import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add the project root directory to Python path
root_dir = Path(__file__).parent.parent
sys.path.append(str(root_dir))

from src import config  # noqa: E402
from src.cli.commands import Command, run_command  # noqa: E402
from src.cli.parser import SpecFile, parse_spec  # noqa: E402
from src.cli.report import emit_report  # noqa: E402
from src.errors import SpecFileError, UniverseError, CategoryError  # noqa: E402

logger = logging.getLogger(__name__)

INPUT_ERROR = 2


def _global_options(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """Flags accepted before the subcommand and, with suppressed defaults, after it."""
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--bound", type=int, default=default(None),
                        help=f"size bound for finite-set checks (default {config.SET_BOUND}, FINCAT_SET_BOUND)")
    parser.add_argument("--shape-bound", type=int, default=default(None),
                        help=f"object bound for Kan / functor-category shapes (default {config.SHAPE_BOUND})")
    parser.add_argument("--format", choices=("text", "structured"), default=default("text"))
    parser.add_argument("--timings", action="store_true", default=default(False), help="include per-check timings")
    parser.add_argument("--log-level", default=default(config.LOG_LEVEL))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fincat", description="Finite category theory engine")
    _global_options(parser)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)

    sub = parser.add_subparsers(dest="verb", required=True)

    def selectors(p: argparse.ArgumentParser) -> None:
        p.add_argument("--name")
        p.add_argument("--along")
        p.add_argument("--with", dest="with_")
        p.add_argument("--kind")
        p.add_argument("--unit", help="nattrans declaration used as the unit (check adjunction)")
        p.add_argument("--counit", help="nattrans declaration used as the counit (check adjunction)")
        p.add_argument("--tables", action="store_true", help="print constructed tables")
        p.add_argument("files", nargs="*", metavar="FILE")

    selectors(sub.add_parser("validate", parents=[common],
                             help="check category, functor, transformation and diagram laws"))
    construct = sub.add_parser("construct", parents=[common], help="build a limit, Kan extension or derived category")
    construct.add_argument("target", choices=(
        "limit", "colimit", "kan-right", "kan-left", "comma", "functor-cat", "algebra-cat",
    ))
    selectors(construct)
    check = sub.add_parser("check", parents=[common], help="verify a universal property or theorem")
    check.add_argument("target", choices=("adjunction", "yoneda", "topos", "complete-preorder", "universal"))
    selectors(check)
    universe = sub.add_parser("universe", parents=[common], help="run a universe-level scenario")
    universe.add_argument("target", choices=("scenario",))
    universe.add_argument("scenario")
    universe.add_argument("files", nargs="*", metavar="FILE")
    return parser


def load_spec(paths: List[str]) -> SpecFile:
    text = "\n".join(Path(path).read_text(encoding="utf-8") for path in paths)
    return parse_spec(text)


def command_from_args(args: argparse.Namespace) -> Command:
    if args.verb == "universe":
        return Command("universe", args.target, name=args.scenario, bound=args.bound)
    return Command(
        args.verb, getattr(args, "target", ""),
        name=args.name, along=args.along, with_=args.with_, kind=args.kind,
        unit=args.unit, counit=args.counit,
        bound=args.bound, shape_bound=args.shape_bound, tables=args.tables,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )

    try:
        spec = load_spec(args.files)
        report = run_command(command_from_args(args), spec)
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return INPUT_ERROR
    except (SpecFileError, CategoryError, UniverseError) as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR

    print(emit_report(report, args.format, args.timings))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
