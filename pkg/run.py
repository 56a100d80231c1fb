"""Entry point: runs the CLI and turns exceptions into exit codes.

Errors go to stderr as ``{"success": false, "error": ..., "details": ...}``;
stdout only ever carries a report.
"""
import json
import logging
import sys
import traceback

from app import dispatch
from services.errors import (
    CanonicalFormError,
    EnumerationBudgetError,
    InconsistentVerdictError,
    SearchBudgetError,
    StarRamseyError,
    UsageError,
)

logger = logging.getLogger("run")

EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70
EXIT_BUDGET = 2

BUDGET_ERRORS = (SearchBudgetError, EnumerationBudgetError, CanonicalFormError)


def _fail(error, details, code):
    print(json.dumps({"success": False, "error": error, "details": details}), file=sys.stderr)
    return code


def run(argv=None, out=None):
    argv = sys.argv[1:] if argv is None else argv
    out = sys.stdout if out is None else out
    try:
        return dispatch(argv, out)
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else 0
    except UsageError as err:
        return _fail("Usage error", str(err), EXIT_USAGE)
    except BUDGET_ERRORS as err:
        return _fail("Budget exceeded", str(err), EXIT_BUDGET)
    except InconsistentVerdictError as err:
        logger.error("❌ internal inconsistency: %s", err)
        return _fail("Internal inconsistency", str(err), EXIT_INTERNAL)
    except StarRamseyError as err:
        return _fail(type(err).__name__, str(err), EXIT_DATA)
    except Exception as err:
        logger.debug("Unhandled exception:\n%s", traceback.format_exc())
        return _fail("Internal error", str(err), EXIT_INTERNAL)


if __name__ == '__main__':
    sys.exit(run())
