"""Enumerate V(KG) for small finite fields and groups; report the central series.

Building the Cayley table costs |V|^2 products, so keep the budget small.

    python scripts/v_kg_survey.py [--budget 700]
"""

import argparse
import time

from hyperunits.analysis import enumerate_v_kg, unit_group_structure
from hyperunits.coeff import ff_make
from hyperunits.errors import BudgetExceeded
from hyperunits.groups import builtin, direct_product

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1)]


def groups():
    C = lambda n: builtin("cyclic", n)  # noqa: E731
    return [C(2), C(3), C(4), direct_product(C(2), C(2)), C(5), builtin("symmetric3"),
            builtin("dihedral", 4), builtin("quaternion8")]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=700)
    args = ap.parse_args()

    print(f"{'K':<8}{'G':<8}{'aug-1':>9}{'|V|':>8}{'|Z(V)|':>8}  series / class")
    for p, n in FIELDS:
        K = ff_make(p, n)
        for G in groups():
            try:
                t0 = time.perf_counter()
                V = enumerate_v_kg(K, G, args.budget)
                s = unit_group_structure(V)
                dt = time.perf_counter() - t0
            except BudgetExceeded:
                print(f"{K!r:<8}{G.name:<8}{'skipped (budget)':>25}")
                continue
            cls = s.nilpotency_class if s.nilpotency_class is not None else "NotNilpotent"
            print(f"{K!r:<8}{G.name:<8}{V.candidates:>9}{s.order:>8}{s.center_order:>8}  "
                  f"{s.series_orders} / {cls}  ({dt:.2f} s)")


if __name__ == "__main__":
    main()
