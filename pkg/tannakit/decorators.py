from __future__ import annotations

import json
import time
from functools import wraps
from typing import Any, Callable

import click
import structlog
from pydantic import ValidationError

from tannakit.exceptions import PRECONDITION_ERRORS, TannakitError
from tannakit.schemas.reports import CheckResult

logger = structlog.get_logger(__name__)

# (passed, witness) as returned by an individual check body
Finding = tuple[bool, dict[str, Any] | None]


def timed_check(
    check_id: str, description: str, reference: str
) -> Callable[[Callable[[], Finding]], Callable[[], CheckResult]]:
    """Turn a check body into a CheckResult with elapsed time.

    A TannakitError raised by the body becomes a failed check whose witness records the error
    code; precondition errors propagate so the caller can abort the suite.
    """

    def decorator(fn: Callable[[], Finding]) -> Callable[[], CheckResult]:
        @wraps(fn)
        def wrapper() -> CheckResult:
            start = time.perf_counter()
            try:
                passed, witness = fn()
            except PRECONDITION_ERRORS:
                raise
            except TannakitError as exc:
                passed, witness = False, {"error": exc.code, "message": str(exc)}
            elapsed_ms = (time.perf_counter() - start) * 1000.0
            if not passed and witness is None:
                witness = {"error": "identity_failed"}
            logger.info("check_finished", check=check_id, passed=passed, elapsed_ms=round(elapsed_ms, 3))
            return CheckResult(
                id=check_id,
                description=description,
                reference=reference,
                status="pass" if passed else "fail",
                witness=None if passed else witness,
                elapsed_ms=elapsed_ms,
            )

        return wrapper

    return decorator


def exit_codes(fn: Callable[..., int]) -> Callable[..., None]:
    """Map a command's outcome to the process exit code.

    The command returns 0 or 1; precondition errors exit 3 and input errors (TannakitError,
    pydantic validation, malformed JSON, unreadable files) exit 2, each with a JSON error
    object on stdout. Anything else is a bug and propagates.
    """

    @wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            code = fn(*args, **kwargs)
        except PRECONDITION_ERRORS as exc:
            code = _report_error(exc.code, str(exc), 3)
        except TannakitError as exc:
            code = _report_error(exc.code, str(exc), 2)
        except ValidationError as exc:
            code = _report_error("invalid_payload", str(exc), 2)
        except json.JSONDecodeError as exc:
            code = _report_error("invalid_json", str(exc), 2)
        except OSError as exc:
            code = _report_error("unreadable_input", str(exc), 2)
        click.get_current_context().exit(code)

    return wrapper


def _report_error(code: str, message: str, exit_code: int) -> int:
    logger.error("command_failed", error=code, message=message)
    click.echo(json.dumps({"error": code, "message": message}, sort_keys=True))
    return exit_code
