
import os
import sys
from typing import Callable, Sequence

from .user_error import NumericalError, UserError, ValidationError
from .logger import logger


def _silence_stdout() -> None:
    # The reader went away (e.g. `ordopt table1 | head`); later flushes must not fail again.
    devnull = os.open(os.devnull, os.O_WRONLY)
    os.dup2(devnull, sys.stdout.fileno())


def mainwrap(main: Callable[[Sequence[str]], int]) -> None:
    """Run ``main`` on the process arguments and exit with its code.

    Anticipated failures carry their own code: 2 for invalid input and 3 for
    numerical failures.
    """

    try:
        rc = main(sys.argv[1:])
        logger.debug("Done (%r).", rc)
    except BrokenPipeError:
        logger.debug("Broken pipe.")
        _silence_stdout()
        rc = 1
    except KeyboardInterrupt:
        logger.debug("Interrupted.")
        rc = 1
    except ValidationError as e:
        logger.fatal("Invalid input: " + e.fmt, *e.fmt_args)
        rc = e.code
    except NumericalError as e:
        logger.fatal("Numerical failure: " + e.fmt, *e.fmt_args)
        logger.info("Looser tolerances (--abs-tol, --rel-tol, --target-error) may help.")
        rc = e.code
    except UserError as e:
        logger.fatal(e.fmt, *e.fmt_args)
        rc = e.code

    sys.exit(rc)
