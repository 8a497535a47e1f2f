#!/usr/bin/env python3
"""Run the bundled verification matrix and print one line per criterion."""

import sys

from exrep.goldens import run_all


def main() -> int:
    results = run_all()
    for r in results:
        print(r.line())
    failures = [r for r in results if not r.ok]
    print(f"{len(results) - len(failures)}/{len(results)} criteria pass")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
