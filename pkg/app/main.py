# app/main.py
# Entry point: python -m app.main COMMAND [flags]

import logging
import sys
from typing import Optional, Sequence

from app.config import configure_logging
from app.cli import parse_args, run
from app.utils.errors import OrdinalError

logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    try:
        run_config = parse_args(sys.argv[1:] if argv is None else argv)
        return run(run_config)
    except OrdinalError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
