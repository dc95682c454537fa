#!/usr/bin/env python3
"""Prepends cmake/license.txt to C++ sources that lack it."""

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
DIRS = ("core", "tools", "tests", "benchmarks")


def main() -> int:
    header = (ROOT / "cmake" / "license.txt").read_text()
    first_line = header.splitlines()[0]
    changed = 0
    for d in DIRS:
        for path in sorted((ROOT / d).rglob("*")):
            if path.suffix not in (".h", ".cc") or not path.is_file():
                continue
            text = path.read_text()
            if text.startswith(first_line):
                continue
            path.write_text(header.rstrip("\n") + "\n\n" + text)
            changed += 1
    print(f"added headers to {changed} files")
    return 0


if __name__ == "__main__":
    sys.exit(main())
