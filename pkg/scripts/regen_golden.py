"""Rewrite the CLI golden files from tests/golden/commands.json.

Run after an intentional change to a report layout, then review the diff.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from tscalc.cli import main

TESTS = Path(__file__).resolve().parent.parent / "tests"


def regenerate() -> None:
    table = json.loads((TESTS / "golden" / "commands.json").read_text())
    os.chdir(TESTS)
    for name, argv in table.items():
        code = main(argv + ["-o", f"golden/{name}"])
        print(f"{code}  golden/{name}")


if __name__ == "__main__":
    regenerate()
