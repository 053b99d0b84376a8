"""Rewrite the stored golden reports from the current code.

Only run this after reviewing a deliberate change in report content; the
golden test exists to catch accidental ones.
"""

import sys
from pathlib import Path

import yaml

from lieeig.cli import build_parser, run_command
from lieeig.fileformat import emit_report

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    cases = yaml.safe_load((ROOT / "cases.yaml").read_text())
    for name, commands in cases.items():
        for cmd in commands:
            args = build_parser().parse_args([cmd, str(ROOT / f"{name}.yaml")])
            report = run_command(cmd, args)
            out = ROOT / "golden" / f"{name}.{cmd}.yaml"
            out.write_bytes(emit_report(report, "structured"))
            print(f"{out.name}: {report.status} (exit {report.exit_code})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
