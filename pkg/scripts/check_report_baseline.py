#!/usr/bin/env python3
"""check_report_baseline.py: Compare coe-rigidity report payloads against stored baselines.

Usage:
    python scripts/check_report_baseline.py --result RESULT.json --baseline BASELINE.json [--update]

Payloads are compared key by key; the metadata block (timing) is ignored.
Trace details are included since they carry witness locations.

Exit codes:
  0 - payloads match (or a missing baseline was written with --update)
  1 - drift detected, or a file is missing
"""

from __future__ import annotations

import argparse
import json
import shutil
from pathlib import Path
from typing import Any

from coe_rigidity.report import load_payload


def diff_payloads(current: Any, baseline: Any, path: str = "") -> list[str]:
    """Paths at which two JSON values differ."""
    if isinstance(current, dict) and isinstance(baseline, dict):
        drift = []
        for key in sorted(set(current) | set(baseline)):
            where = f"{path}.{key}" if path else key
            if key not in baseline:
                drift.append(f"  ADDED:   {where}")
            elif key not in current:
                drift.append(f"  REMOVED: {where}")
            else:
                drift.extend(diff_payloads(current[key], baseline[key], where))
        return drift
    if isinstance(current, list) and isinstance(baseline, list) and len(current) == len(baseline):
        drift = []
        for i, (cur, base) in enumerate(zip(current, baseline, strict=True)):
            drift.extend(diff_payloads(cur, base, f"{path}[{i}]"))
        return drift
    if current != baseline:
        return [f"  CHANGED: {path or '<root>'} = {json.dumps(current)} (baseline {json.dumps(baseline)})"]
    return []


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--result", required=True, help="Report written by coe-rigidity --out")
    parser.add_argument("--baseline", required=True, help="Stored baseline report")
    parser.add_argument("--update", action="store_true", help="Write the baseline when none exists")
    args = parser.parse_args()

    result_path = Path(args.result)
    if not result_path.exists():
        print(f"ERROR: Result file not found: {result_path}")
        return 1
    current = load_payload(result_path)

    baseline_path = Path(args.baseline)
    if not baseline_path.exists():
        if not args.update:
            print(f"ERROR: Baseline not found: {baseline_path} (rerun with --update to create it)")
            return 1
        baseline_path.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(result_path, baseline_path)
        print(f"Baseline written: {baseline_path}")
        return 0

    drift = diff_payloads(current, load_payload(baseline_path))
    command = current.get("command", "?")
    if drift:
        print(f"=== {command}: {len(drift)} difference(s) from {baseline_path} ===")
        print("\n".join(drift))
        return 1
    print(f"=== {command}: matches {baseline_path} ===")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
