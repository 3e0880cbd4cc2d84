from __future__ import annotations

from tannakit.cli import cli

if __name__ == "__main__":
    cli()
