# app/cli/parser.py
import argparse
import logging
from typing import Optional, Sequence

from app import config
from app.schemas.pattern import PatternKind, TiePolicy
from app.schemas.run_config import SERIES_COMMANDS, RunConfig
from app.utils.errors import UsageError

logger = logging.getLogger(__name__)

_KINDS = {"orp": PatternKind.ORP, "amp": PatternKind.AMP}
_POLICY_HELP = (
    "equal-value scheme: smallest (default) or largest index per tie group, "
    "or none = NonE occurrence order (not recommended)"
)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on its own; usage errors here exit 1."""

    def error(self, message: str):
        raise UsageError(message)


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")


def _add_space_flags(p: argparse.ArgumentParser, m_default: Optional[int]) -> None:
    p.add_argument("--m", type=_int_arg, default=m_default, help="embedding dimension (pattern length)")
    p.add_argument("--kind", choices=sorted(_KINDS), default=None, help="orp or amp")
    p.add_argument("--policy", choices=[t.value for t in TiePolicy], default=config.DEFAULT_POLICY, help=_POLICY_HELP)


def _add_format_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="output_format", choices=["json", "csv"], default=config.DEFAULT_FORMAT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordinal-symmetry", description="OrP/AmP encoding, symmetry checks and pattern statistics")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    helps = {
        "encode": "one pattern per window",
        "hist": "pattern distribution (also reads encode output)",
        "entropy": "permutation entropy",
        "irrev": "reversal asymmetry index with its pair breakdown",
    }
    for name in SERIES_COMMANDS:
        p = commands.add_parser(name, help=helps[name])
        p.add_argument("input", nargs="?", default="-", help="series file, '-' for stdin")
        _add_space_flags(p, config.DEFAULT_M)
        p.add_argument("--tau", type=_int_arg, default=config.DEFAULT_TAU, help="embedding delay")
        p.add_argument("--quantize", type=_int_arg, default=None, metavar="N", help="pre-quantise into N uniform levels")
        p.add_argument("--column", default=None, metavar="NAME", help="CSV column holding the series")
        _add_format_flag(p)
        if name == "entropy":
            p.add_argument("--normalize", action="store_true", help="divide by ln(catalog size)")
        if name == "irrev":
            p.add_argument("--axis", choices=["time", "amplitude"], default="time",
                           help="time: reversed AmPs (default); amplitude: reversed OrPs")

    p = commands.add_parser("enumerate", help="catalog of realisable patterns")
    _add_space_flags(p, config.DEFAULT_M)
    _add_format_flag(p)

    p = commands.add_parser("verify", help="exhaustive check of the symmetry claims")
    p.add_argument("--m", type=_int_arg, default=None, help="single dimension (default: %s)" % ",".join(map(str, config.VERIFY_DIMENSIONS)))
    p.add_argument("--alphabet", type=_int_arg, default=None, help="alphabet size (default: m+1 and m)")
    _add_format_flag(p)

    p = commands.add_parser("demo", help="worked examples and the m=2/m=3 catalog table")
    _add_format_flag(p)
    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    args = build_parser().parse_args(list(argv))
    fields = {k: v for k, v in vars(args).items() if v is not None}

    if "kind" in fields:
        fields["kind"] = _KINDS[fields["kind"]]
    elif args.command == "irrev":
        fields["kind"] = PatternKind.ORP if args.axis == "amplitude" else PatternKind.AMP
    elif args.command not in ("verify", "demo"):
        fields["kind"] = _KINDS[config.DEFAULT_KIND]
    if "policy" in fields:
        fields["policy"] = TiePolicy(fields["policy"])

    run = RunConfig(**fields)
    if run.policy is TiePolicy.OCCURRENCE_ORDER and run.command not in ("verify", "demo"):
        logger.warning("policy NonE (occurrence order) selected: not recommended, ties are ordered by position")
    return run
