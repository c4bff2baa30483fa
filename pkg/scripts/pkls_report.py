#!/usr/bin/env python3
"""Filter K(Rickard) by zeta-weight and report each subquotient.

    python3 scripts/pkls_report.py 1 1 1 1
    python3 scripts/pkls_report.py 2 2 2 2 -D 12
"""
import argparse
import json

from schober.bimodcx import pkls_decompose


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("abcd", type=int, nargs=4)
    ap.add_argument("-D", type=int, default=16)
    ap.add_argument("--json", action="store_true", help="dump the full result")
    args = ap.parse_args()
    r = pkls_decompose(*args.abcd, D=args.D)
    info = r.to_json()
    if args.json:
        print(json.dumps(info, indent=1, default=str))
    else:
        print(f"K(C{tuple(args.abcd)}): {info['objects']} objects, components {info['components']}")
        print(f"  d^2 = 0: {info['d2']}")
        print(f"  l = 0 retract: {info['l0'].get('ok')}")
        for s in info["subquotients"]:
            print(f"  s = {s.get('s')}: {'ok' if s['ok'] else 'FAIL'}")
        print(f"  chi_m components match: {all(c['ok'] for c in info['chi_m'])}")
    return 0 if r.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
