#!/usr/bin/env python3
"""Replay every bundled worked example and print one line per case.

Equivalent to `lefschetz paper-suite`; exits nonzero when a case fails.
"""

import sys

from lefschetz.paper_suite import run_all


def main() -> int:
    results = run_all(verbose=True)
    failed = [r for r in results if not r["ok"]]
    print(f"\n{len(results) - len(failed)}/{len(results)} cases passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
