from __future__ import annotations

# Re-export common schema classes for convenient imports
from .extension import ExtensionPayload  # noqa: F401
from .groups import GroupPayload, SubgroupPayload  # noqa: F401
from .objects import TriplePayload  # noqa: F401
from .reports import CheckResult, VerificationReport  # noqa: F401

__all__ = [
    # groups
    "GroupPayload",
    "SubgroupPayload",
    # extension
    "ExtensionPayload",
    # objects
    "TriplePayload",
    # reports
    "CheckResult",
    "VerificationReport",
]
