import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from config import EXIT_CODES, LOGGING_CONFIG
from commands import create_parser
from errors import InvariantBreach, PolyBisectError
from utils import log_error

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


def configure_logging():
    """Logs go to stderr so stdout stays a clean artifact stream."""
    logging.basicConfig(
        level=getattr(logging, LOGGING_CONFIG['level'], logging.INFO),
        format=LOGGING_CONFIG['format'],
        stream=sys.stderr
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point: parse, dispatch, and map errors to exit codes."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_CODES['usage']

    configure_logging()
    logger.info("=" * 60)
    logger.info(f"polybisect {args.command}")
    logger.info("=" * 60)

    try:
        return args.handler(args)
    except InvariantBreach as e:
        log_error(str(e), args.command, exception=e)
        print(f"internal error: {e}", file=sys.stderr)
        return e.exit_code
    except PolyBisectError as e:
        log_error(str(e), args.command)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
