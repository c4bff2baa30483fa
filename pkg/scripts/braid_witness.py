#!/usr/bin/env python3
"""Minimal models of the crossing words sts and tst on three 1-colored strands."""
import argparse
import json

from schober.bimodcx.braid import tst_sts_case


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-D", type=int, default=12)
    args = ap.parse_args()
    r = tst_sts_case(args.D)
    print(json.dumps(r, indent=2))
    return 0 if r["status"] == "pass" else 1


if __name__ == "__main__":
    raise SystemExit(main())
