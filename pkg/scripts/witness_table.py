"""Build and check Z^2 witnesses in V(GF(p)(t)C_q) for small primes p != q.

    python scripts/witness_table.py [--bound 5] [--primes 2 3 5 7]
"""

import argparse
import itertools
import time

from hyperunits.analysis import construct_z2_witness, verify_z2_witness
from hyperunits.groups import builtin


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=5)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    args = ap.parse_args()

    total = 0.0
    for p, q in itertools.permutations(args.primes, 2):
        G = builtin("cyclic", q)
        t0 = time.perf_counter()
        w = construct_z2_witness(p, G, G.index("g"))
        ok = verify_z2_witness(w, args.bound)
        dt = time.perf_counter() - t0
        total += dt
        print(f"p={p} q={q}  {'ok  ' if ok else 'FAIL'}  {dt:6.2f} s  u1 = {w.u1}")
    print(f"total {total:.2f} s, {(2 * args.bound + 1) ** 2 - 1} products per pair")


if __name__ == "__main__":
    main()
