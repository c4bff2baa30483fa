#!/usr/bin/env python3
"""Run every Hecke and bimodule suite and write the JSON reports to a directory.

    python3 scripts/run_all_suites.py --out reports/ -n 6 -D 16
"""
import argparse
import json
import time
from pathlib import Path

from schober.bimodcx.suites import SUITES, run_suite
from schober.schobercli import HECKE_SUITES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports")
    ap.add_argument("-n", type=int, default=6, help="rank bound for the Hecke suites")
    ap.add_argument("-D", type=int, default=16, help="degree bound for the bimodule suites (even)")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    ok = True
    for name, fn in sorted(HECKE_SUITES.items()):
        t = time.perf_counter()
        rep = fn(min(args.n, 5) if name == "squareswitch" else args.n).to_json()
        (out / f"hecke_{name}.json").write_text(json.dumps(rep, indent=1, sort_keys=True))
        print(f"hecke {name:13s} {rep['status']:5s} {len(rep['cases']):4d} cases  {time.perf_counter() - t:6.1f}s")
        ok &= rep["status"] == "pass"
    for name in SUITES:
        t = time.perf_counter()
        D = min(args.D, 12) if name == "t22" else args.D
        rep = run_suite(name, D)
        (out / f"bimod_{name}.json").write_text(json.dumps(rep, indent=1, sort_keys=True))
        print(f"bimod {name:13s} {rep['status']:5s} {len(rep['cases']):4d} cases  {time.perf_counter() - t:6.1f}s")
        ok &= rep["status"] == "pass"
    print("all pass" if ok else "FAILURES, see reports")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
