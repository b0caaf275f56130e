"""Plain operads, weak P-categories and their strictification."""

import json

from ._core import *  # noqa: F401,F403
from ._core import (
    OpstrictError,
    cmd_compile_theory,
    cmd_enumerate,
    cmd_factorize,
    cmd_strictify,
    cmd_validate,
)

__all__ = ["OpstrictError", "report_json"]


def report_json(result):
    """Parses the JSON report of a cmd_* result."""
    return json.loads(result["report"])
