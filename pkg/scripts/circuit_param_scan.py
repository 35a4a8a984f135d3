"""Verdict of every figure circuit across a range of theta / lambda values.

A figure that is only right at one parameter value shows up as a lone
``exact``/``phase`` in an otherwise ``mismatch`` row.  The ``rev`` columns give
the verdict when the produced state is read with the qubit order reversed.

    python scripts/circuit_param_scan.py --values 0.3 0.785398 1.2
"""

import argparse
import math

from entbasis.circuit import CATALOG, verify

SHORT = {"exact": "exact", "phase_equivalent": "phase", "mismatch": "-"}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--values", type=float, nargs="+", default=[0.3, math.pi / 4, 1.2, 2.0],
                    help="used as theta, and as lambda for the scale figures")
    args = ap.parse_args()

    head = "".join(f"{v:>16.4g}" for v in args.values)
    print(f"{'id':<12}{head}")
    for cid in CATALOG:
        cells = []
        for v in args.values:
            rep = verify(cid, {"theta": v, "lambda": v})
            cells.append(f"{SHORT[rep.verdict]}/rev:{SHORT[rep.reversed_verdict]}")
        print(f"{cid:<12}" + "".join(f"{c:>16}" for c in cells))


if __name__ == "__main__":
    main()
