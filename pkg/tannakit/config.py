from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

# Load .env if present
ENV_PATH = Path(__file__).resolve().parents[1] / ".env"
if ENV_PATH.exists():
    load_dotenv(ENV_PATH)


class Config:
    # Cap on user-supplied group tables; catalog groups are at most order 8
    MAX_GROUP_ORDER: int = int(os.getenv("TANNAKIT_MAX_GROUP_ORDER", "64"))

    DEFAULT_FIELD: str = os.getenv("TANNAKIT_DEFAULT_FIELD", "Q")

    LOG_LEVEL: str = os.getenv("TANNAKIT_LOG_LEVEL", "WARNING").upper()

    # Verification battery
    ADJUNCTION_PAIR_LIMIT: int = int(os.getenv("TANNAKIT_ADJUNCTION_PAIR_LIMIT", "25"))
    BATTERY_VERSION: str = os.getenv("TANNAKIT_BATTERY_VERSION", "1")
