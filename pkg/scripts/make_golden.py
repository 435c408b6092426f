"""Freeze CLI outputs for the golden cases (run after an intended output change).

    python3 scripts/make_golden.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from golden_cases import case_args, golden_path, load_cases, run_cli  # noqa: E402


def main() -> None:
    for case in load_cases():
        code, out, err = run_cli(case_args(case))
        if code != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {code}, expected {case['exit']}\n{err}")
        if code != 2:
            golden_path(case).write_text(out)
        print(f"{case['name']}: exit {code}")


if __name__ == "__main__":
    main()
