from __future__ import annotations

from .battery import Battery, build_battery  # noqa: F401
from .suites import SUITE_NAMES, SUITES, run_suite  # noqa: F401
