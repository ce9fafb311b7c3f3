"""Run the claim ledger and write the JSON report next to a plain-text table.

    python3 scripts/run_ledger.py --budget full --out results/
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from pebblelab import ledger


@dataclass
class LedgerRun:
    budget: str = "small"
    only: str | None = None
    max_states: int | None = None
    out: Path = Path("results")


def main(cfg: LedgerRun) -> int:
    started = time.perf_counter()
    entries = ledger.verify_paper(cfg.budget, cfg.only, cfg.max_states)
    elapsed = time.perf_counter() - started
    report = ledger.report_json(entries, cfg.budget)
    report["seconds"] = round(elapsed, 3)
    cfg.out.mkdir(parents=True, exist_ok=True)
    (cfg.out / f"ledger-{cfg.budget}.json").write_text(json.dumps(report, indent=2) + "\n")
    table = ledger.render_table(entries)
    (cfg.out / f"ledger-{cfg.budget}.txt").write_text(table + "\n")
    print(table)
    print(f"{len(entries)} entries in {elapsed:.1f}s, exit code {report['exit_code']}")
    return report["exit_code"]


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--budget", choices=["small", "full"], default="small")
    p.add_argument("--only", default=None)
    p.add_argument("--max-states", type=int, default=None)
    p.add_argument("--out", type=Path, default=Path("results"))
    args = p.parse_args()
    raise SystemExit(main(LedgerRun(args.budget, args.only, args.max_states, args.out)))
