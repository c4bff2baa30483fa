#!/usr/bin/env python3
"""Build the Beck-Chevalley total complex of Q(22,22), reduce it and compare with q^4 C_22."""
import argparse
import time

from schober.bimodcx import bc_total, gaussian_eliminate, rickard, same_complex, tidy_complex
from schober.bimodcx.suites import T22_HINT


def show(title, C):
    print(title)
    for line in C.summary():
        print("   ", line)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-D", type=int, default=12)
    args = ap.parse_args()

    t = time.perf_counter()
    C = bc_total((2, 2), (2, 2))
    print(f"total complex: {len(C.objs)} objects, d^2 = 0: {C.check_d2(args.D)}")
    E = tidy_complex(gaussian_eliminate(C, args.D, hints=T22_HINT))
    show("minimal model:", E)
    R = rickard(2, 2, 2, 2, D=args.D).shifted(q=4)
    show("q^4 rickard(2,2,2,2):", R)
    ok, msg = same_complex(E, R, args.D)
    print(f"isomorphic: {ok}  {msg}  ({time.perf_counter() - t:.1f}s)")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
