"""Recompute T^-1, computational-state expansions and the 16 product matrices
for each parameterised family and diff them against the transcribed tables.

    python scripts/verify_tables.py --theta 0.785398 --lambda 2 [--json]
"""

import argparse
import json
import math

from entbasis.reference import TABLES, cross_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=float, default=math.pi / 4)
    ap.add_argument("--lambda", dest="lam", type=float, default=2.0)
    ap.add_argument("--tol", type=float, default=1e-12)
    ap.add_argument("--json", action="store_true", help="emit the discrepancy log as JSON")
    args = ap.parse_args()

    log = []
    for family, (pname, _) in TABLES.items():
        value = args.theta if pname == "theta" else args.lam
        entries = cross_check(family, value, tol=args.tol)
        log += entries
        if not args.json:
            status = "clean" if not entries else f"{len(entries)} mismatching entr{'y' if len(entries) == 1 else 'ies'}"
            print(f"{family:<11} {pname}={value:<10.6g} {status}")
            for d in entries:
                tag = "known misprint" if d.known else "UNEXPECTED"
                print(f"    {d.table:<9} {d.key:<14} max error {d.max_error:.3e}  [{tag}] {d.note}")
    if args.json:
        print(json.dumps([d.to_dict() for d in log], indent=2))
    return 1 if any(not d.known for d in log) else 0


if __name__ == "__main__":
    raise SystemExit(main())
