import io
from pathlib import Path

import numpy as np
import pytest

from app.cli import parse_args, run
from app.main import main
from app.schemas.pattern import Pattern, PatternKind, TiePolicy
from app.services import ordinal_service

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "data" / "golden"

NONE = TiePolicy.OCCURRENCE_ORDER
SMALLEST = TiePolicy.SMALLEST_INDEX
LARGEST = TiePolicy.LARGEST_INDEX
ORP = PatternKind.ORP
AMP = PatternKind.AMP


def w(*values):
    return ordinal_service.window(values)


def pat(kind, *indexes, policy=SMALLEST):
    return Pattern(kind=kind, indexes=tuple(indexes), policy=policy)


@pytest.fixture
def golden_dir():
    return GOLDEN


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cli():
    """Run a CLI command in-process; returns (status, stdout)."""

    def _run(*argv):
        buffer = io.StringIO()
        status = run(parse_args(list(argv)), out=buffer)
        return status, buffer.getvalue()

    return _run


@pytest.fixture
def cli_main(capsys):
    """Full entry point, error handling included; returns (status, stdout, stderr)."""

    def _run(argv):
        status = main(list(argv))
        captured = capsys.readouterr()
        return status, captured.out, captured.err

    return _run


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
