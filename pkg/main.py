"""Main entry point for the cutoffqed command line."""

import sys
from typing import Optional, Sequence

from cli import main as cli_main
from config import TOOL_NAME, logger


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one cutoffqed command and return its exit status."""
    try:
        logger.info(f"Starting {TOOL_NAME}")
        status = cli_main(argv)
        logger.info(f"{TOOL_NAME} exited with status {status}")
        return status
    except Exception as e:
        logger.error(f"Fatal error in main: {str(e)}", exc_info=True)
        raise


if __name__ == "__main__":
    sys.exit(main())
