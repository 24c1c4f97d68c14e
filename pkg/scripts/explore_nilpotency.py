#!/usr/bin/env python3
"""Scan how the nilpotency index of the ideal quotients grows with the
truncation degree for one presentation. Used to discover how large a
truncation degree a VERIFIED certificate would need.

Example (the three-generator case; degree 12 needs ~2 GB and minutes):

    python3 scripts/explore_nilpotency.py --generators 3 --nil 2,2,2 \
        --k 3 --degrees 8,9,10,11
"""

import argparse
import time

from nilpow import AlgebraSpec, derived_tower, nilpotency_index
from nilpow.fields import parse_field


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--generators", type=int, required=True)
    ap.add_argument("--nil", required=True)
    ap.add_argument("--field", default="fp:32003")
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--degrees", required=True, help="comma-separated truncation degrees to scan")
    args = ap.parse_args()

    nil = tuple(int(x) for x in args.nil.split(","))
    for d in (int(x) for x in args.degrees.split(",")):
        spec = AlgebraSpec(
            m=args.generators, nil=nil, field=parse_field(args.field), max_degree=d
        )
        t0 = time.time()
        tower = derived_tower(spec, args.k)
        rep = nilpotency_index(spec, args.k, tower)
        quot = ", ".join(f"{deg}:{q}" for deg, q in rep.quotient_dims)
        print(
            f"D={d:3d}  n(k={args.k})={rep.n}  quotient dims [{quot}]  "
            f"({time.time() - t0:.1f}s)",
            flush=True,
        )
        if rep.n is not None:
            print(f"  -> a VERIFIED certificate for i={args.k - 2} needs D >= {2 * rep.n - 1}")
            break


if __name__ == "__main__":
    main()
