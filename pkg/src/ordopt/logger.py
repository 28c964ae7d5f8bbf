
import logging
import sys

# Results go to stdout, so every diagnostic is routed to stderr.
logging.basicConfig(
    level=logging.INFO,
    stream=sys.stderr,
    format='%(asctime)s - %(levelname)s - %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)
logger = logging.getLogger("ordopt")


def set_verbosity(*, quiet: bool, verbose: bool, debug: bool) -> None:
    if quiet:
        logger.setLevel(logging.ERROR)
    elif verbose:
        logger.setLevel(logging.INFO)
    elif debug:
        logger.setLevel(logging.DEBUG)
    else:
        logger.setLevel(logging.WARN)
