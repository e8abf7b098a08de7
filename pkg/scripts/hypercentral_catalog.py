"""Classify U_1(ZG) hypercentrality over a catalog of small groups.

    python scripts/hypercentral_catalog.py [--max-order 16] [--json out.json]
"""

import argparse
import json
import time

from hyperunits.analysis import classify_hypercentral_finite, verify_dedekind_conditions
from hyperunits.groups import builtin, direct_product


def catalog(max_order):
    C = lambda n: builtin("cyclic", n)  # noqa: E731
    K8 = builtin("quaternion8")
    yield from (C(n) for n in range(1, max_order + 1))
    yield from (builtin("dihedral", n) for n in range(2, max_order // 2 + 1))
    yield builtin("symmetric3")
    yield K8
    yield builtin("genquaternion16")
    for k in range(1, 4):
        yield builtin("elemabelian2", k)
        yield direct_product(K8, builtin("elemabelian2", k))
    for n in (3, 4, 5):
        yield direct_product(K8, C(n))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=16)
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args()

    rows = []
    print(f"{'group':<14}{'order':>6}  {'verdict':<8} reason")
    for G in catalog(args.max_order):
        t0 = time.perf_counter()
        v = classify_hypercentral_finite(G)
        dt = time.perf_counter() - t0
        conds = [c.holds for c in verify_dedekind_conditions(G).items]
        rows.append({"group": G.name, "order": G.order, "verdict": v.label,
                     "conditions": conds, "seconds": round(dt, 4)})
        print(f"{G.name:<14}{G.order:>6}  {v.label:<8} {v.reason}")
    yes = sum(r["verdict"].startswith("Yes") for r in rows)
    print(f"\n{yes} of {len(rows)} groups give a hypercentral U_1(ZG)")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
