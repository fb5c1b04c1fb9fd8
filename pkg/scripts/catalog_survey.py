"""Run the full analysis over every catalog algebra and print a summary table.

Usage: python scripts/catalog_survey.py [--keys matrix:2,torus:3] [--json]
"""

import argparse
import json
import time
from dataclasses import dataclass, field

from algint.catalog import lookup, standard_entries
from algint.pipeline import analyze


@dataclass
class SurveyConfig:
    keys: list[str] = field(default_factory=list)
    as_json: bool = False


def survey(cfg: SurveyConfig) -> list[dict]:
    entries = [lookup(k) for k in cfg.keys] if cfg.keys else standard_entries()
    rows = []
    for entry in entries:
        start = time.perf_counter()
        a = analyze(entry.algebra(), reference_c=entry.c_matrix())
        doc = a.to_dict()
        rows.append({
            "key": entry.key,
            "dim": entry.algebra().dim,
            "ok": a.ok,
            "c_rank": a.c_rank,
            "involution": a.check("involution"),
            "integral": doc["integral"],
            "seconds": round(time.perf_counter() - start, 3),
        })
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--keys", default="", help="comma-separated catalog keys")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    cfg = SurveyConfig(keys=[k for k in args.keys.split(",") if k], as_json=args.json)
    rows = survey(cfg)
    if cfg.as_json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'algebra':<17}{'dim':>4}{'ok':>4}{'rank':>6}{'invol':>7}{'sec':>8}  integral")
    for r in rows:
        inv = {True: "yes", False: "no", None: "-"}[r["involution"]]
        print(f"{r['key']:<17}{r['dim']:>4}{'✓' if r['ok'] else '✗':>4}{r['c_rank']:>6}"
              f"{inv:>7}{r['seconds']:>8.3f}  {','.join(r['integral'])}")


if __name__ == "__main__":
    main()
