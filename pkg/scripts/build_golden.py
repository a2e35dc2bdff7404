# /scripts/build_golden.py
# Regenerates the snapshot files under data/golden/ from the current code.
# Run from the repository root: python -m scripts.build_golden

import io
import logging
import os

from app.cli import parse_args, run
from app.config import configure_logging

logger = logging.getLogger(__name__)

GOLDEN_DIR = os.getenv("GOLDEN_DIR", "data/golden")

# file name -> CLI arguments
SNAPSHOTS = {
    "demo.json": ["demo"],
    "enumerate_m2_amp_smallest.json": ["enumerate", "--m", "2", "--kind", "amp", "--policy", "smallest"],
    "enumerate_m3_amp_smallest.json": ["enumerate", "--m", "3", "--kind", "amp", "--policy", "smallest"],
    "verify_m2.json": ["verify", "--m", "2"],
}


def build_snapshots(directory: str = GOLDEN_DIR) -> None:
    os.makedirs(directory, exist_ok=True)
    for name, argv in SNAPSHOTS.items():
        buffer = io.StringIO()
        status = run(parse_args(argv), out=buffer)
        if status != 0:
            logger.error(f"{' '.join(argv)} exited with {status}; {name} not written")
            continue
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(buffer.getvalue())
        print(f"Escrito: {path}")


if __name__ == "__main__":
    configure_logging()
    build_snapshots()
