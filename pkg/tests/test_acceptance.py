"""Acceptance gate: one PASS/FAIL line per criterion, with its time limit."""

import itertools
import random
import time

import pytest

from hyperunits.analysis import (
    InfiniteGroup,
    bounded_unit_search_zg,
    classify_hyperbolic,
    classify_hypercentral_finite,
    classify_hypercentral_structured,
    construct_z2_witness,
    enumerate_v_kg,
    unit_group_structure,
    verify_z2_witness,
)
from hyperunits.coeff import ZZ, FieldDescriptor, RationalFunctionField, ff_make, ff_inv
from hyperunits.errors import NotOfThisForm
from hyperunits.groupring import (
    GroupRingElement,
    augmentation,
    parse_element,
    regular_rep,
    star,
    try_invert,
)
from hyperunits.groups import (
    FiniteGroup,
    StructuredGroup,
    all_subgroups_normal,
    builtin,
    conjugation_map,
    decompose_k8_e2,
    direct_product,
    extend_hom,
    inversion_map,
    is_abelian,
    is_normal,
    upper_central_series,
)

from .catalog import small_catalog
from .conftest import ACCEPTANCE_LINES
from .test_coeff import random_ratfunc
from .test_groups import oracle_dedekind
from .test_groupring import random_element


def report(number, title, ok, elapsed, limit=None, detail=""):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"{status} criterion {number}: {title} [{elapsed:.2f} s{budget}]"
    if detail:
        line += f" {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


K8 = builtin("quaternion8")
C = lambda n: builtin("cyclic", n)  # noqa: E731


def test_criterion_1_hypercentral_catalog():
    E2 = builtin("elemabelian2", 2)
    catalog = [C(n) for n in range(1, 17)] + [
        builtin("dihedral", 4), builtin("symmetric3"), K8, builtin("genquaternion16"),
        direct_product(K8, C(2)), direct_product(K8, E2), direct_product(K8, C(3)),
    ]
    names = [f"C{n}" for n in range(1, 17)] + ["D4", "S3", "K8", "Q16", "K8xC2", "K8xC2^2", "K8xC3"]
    expected_yes = set(names[:16]) | {"K8", "K8xC2", "K8xC2^2"}

    def run():
        return [classify_hypercentral_finite(G) for G in catalog]

    verdicts, elapsed = timed(run)
    ok = True
    for name, G, v in zip(names, catalog, verdicts):
        yes = v.answer == "Yes"
        ok &= yes == (name in expected_yes)
        try:
            decompose_k8_e2(G)
            predicate = True
        except NotOfThisForm:
            predicate = is_abelian(G)
        ok &= yes == predicate
    k8c3 = verdicts[names.index("K8xC3")]
    ok &= k8c3.answer == "No"
    ok &= k8c3.evidence["dedekind"]["mixed_orders_force_central"]["holds"] is False
    report(1, "hypercentral catalog", ok, elapsed, 5)


def test_criterion_2_v_gf2_q8():
    F = ff_make(2)

    def run():
        V = enumerate_v_kg(F, K8)
        return V, unit_group_structure(V)

    (V, st), elapsed = timed(run)
    aug1 = [GroupRingElement.from_vector(K8, F, (F(sum(t) + 1),) + tuple(F(c) for c in t))
            for t in itertools.product((0, 1), repeat=7)]
    all_units = all(try_invert(x) is not None for x in aug1)
    table_ok = isinstance(V.as_group, FiniteGroup) and V.as_group.order == 128
    ok = len(V.carrier) == 128 and len(aug1) == 128 and all_units and table_ok
    ok &= st.series_orders[-1] == 128 and st.nilpotency_class is not None
    report(2, "V(GF(2)Q8) has 128 units and is nilpotent", ok, elapsed, 10,
           f"series {st.series_orders}, class {st.nilpotency_class}")


def test_criterion_3_trivial_units():
    q8, t1 = timed(lambda: bounded_unit_search_zg(K8, 1))
    ok_q8 = sorted(x.support[0] for x in q8) == list(K8.elements)
    ok_q8 &= all(len(x.coeffs) == 1 and x.coeff(x.support[0]) == 1 for x in q8)
    c2g = C(2)
    c2, t2 = timed(lambda: bounded_unit_search_zg(c2g, 3))
    ok_c2 = set(c2) == {GroupRingElement.one(c2g, ZZ), GroupRingElement.basis(c2g, ZZ, 1)} and len(c2) == 2
    ok = ok_q8 and ok_c2 and t2 < 5
    report(3, "only trivial units: ZQ8 (B=1) and ZC2 (B=3)", ok, max(t1, t2), 5,
           f"Q8 {t1:.2f} s, C2 {t2:.2f} s")


def test_criterion_4_nontrivial_unit():
    G = C(5)
    found, elapsed = timed(lambda: bounded_unit_search_zg(G, 1))
    x = parse_element("g + g^4 - 1", G, ZZ)
    y = parse_element("g^2 + g^3 - 1", G, ZZ)
    one = GroupRingElement.one(G, ZZ)
    ok = x in found and try_invert(x) == y and x * y == one and y * x == one
    report(4, "nontrivial unit g+g^4-1 in ZC5", ok, elapsed, 5, f"{len(found)} units found")


def test_criterion_5_z2_witnesses():
    primes = (2, 3, 5, 7)

    def run():
        results = []
        for p, q in itertools.permutations(primes, 2):
            G = C(q)
            w = construct_z2_witness(p, G, G.index("g"))
            results.append(verify_z2_witness(w, 5))
        return results

    results, elapsed = timed(run)
    ok = len(results) == 12 and all(results)
    report(5, "Z^2 witnesses for all 12 prime pairs, N = 5", ok, elapsed, 30)


def test_criterion_6_hyperbolic_table():
    GF4 = FieldDescriptor.finite(2, 2)
    GF2t = FieldDescriptor.function_field(2)
    ALG2 = FieldDescriptor.algebraic_infinite(2)
    Q8, C3 = K8, C(3)

    def run():
        return [
            classify_hyperbolic(GF4, Q8, "V"),
            classify_hyperbolic(GF2t, Q8, "V"),
            classify_hyperbolic(GF2t, C3, "V"),
            classify_hyperbolic(ALG2, C3, "V"),
            classify_hyperbolic(GF2t, InfiniteGroup.from_torsion(C3, 2), "V"),
            classify_hyperbolic(ALG2, InfiniteGroup(True, False), "V"),
            classify_hyperbolic(ALG2, Q8, "U"),
            classify_hyperbolic(ALG2, C3, "U"),
        ]

    v, elapsed = timed(run)
    expected = [
        ("Hyperbolic", "R1"), ("NotHyperbolic", "R1"), ("NotHyperbolic", "R1"), ("NotHyperbolic", "R1"),
        ("NotHyperbolic", "R2"), ("Undetermined", "none"), ("NotHyperbolic", "R4"), ("NotHyperbolic", "R4"),
    ]
    ok = [(x.answer, x.rule) for x in v] == expected
    ok &= v[2].witness is not None and v[2].witness.checks.get("independent") is True
    ok &= v[0].witness is None
    report(6, "hyperbolicity verdict table", ok, elapsed)


def test_criterion_7_structured():
    C4, C3 = C(4), C(3)
    T = direct_product(K8, C(2))
    i_T = T.index("i.1")
    swap = extend_hom(K8, [K8.index("i"), K8.index("j")], [K8.index("j"), K8.index("i")])
    cases = [
        (StructuredGroup(C4, 1, [inversion_map(C4)]), "Yes(b)"),
        (StructuredGroup(C3, 1, [inversion_map(C3)]), "No"),
        (StructuredGroup(T, 1, [conjugation_map(T, i_T)]), "Yes(c)"),
        (StructuredGroup(K8, 1, [swap]), "No"),
    ]
    verdicts, elapsed = timed(lambda: [classify_hypercentral_structured(S) for S, _ in cases])
    ok = [v.label for v in verdicts] == [e for _, e in cases]
    ok &= verdicts[2].evidence.get("k8_action") == ["ConjByI"]
    ok &= "NotInner" in verdicts[3].reason
    report(7, "structured classifier", ok, elapsed)


def test_criterion_8_property_suites():
    start = time.perf_counter()
    failures = []

    # field axioms, 10^4 triples per field
    fields = [ff_make(2), ff_make(2, 2), ff_make(3, 2), ff_make(7), ff_make(2, 8)]
    for F in fields:
        rng = random.Random(F.order)
        for _ in range(10_000):
            a, b, c = (F.from_code(rng.randrange(F.order)) for _ in range(3))
            if not ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * b == b * a
                    and a + b == b + a and a * (b + c) == a * b + a * c and (not a or a * ff_inv(a) == F.one)):
                failures.append(f"field axioms {F!r}")
                break
    for p in (2, 3):
        K = RationalFunctionField(p)
        rng = random.Random(p)
        for _ in range(10_000):
            a, b, c = (random_ratfunc(rng, p, 2) for _ in range(3))
            if not ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
                    and (not a or a * a.inverse() == K.one)):
                failures.append(f"field axioms GF({p})(t)")
                break

    # group ring: star, augmentation, regular representation
    rng = random.Random(8)
    for G, R in [(K8, ZZ), (builtin("symmetric3"), ff_make(3)), (C(4), ff_make(2, 2))]:
        for _ in range(200):
            x, y = random_element(rng, G, R), random_element(rng, G, R)
            if star(x * y) != star(y) * star(x) or star(star(x)) != x:
                failures.append(f"star {G.name}")
                break
            if augmentation(x * y) != augmentation(x) * augmentation(y):
                failures.append(f"augmentation {G.name}")
                break
        for _ in range(20):
            x, y = random_element(rng, G, R), random_element(rng, G, R)
            if regular_rep(x * y) != regular_rep(x) @ regular_rep(y):
                failures.append(f"regular_rep {G.name}")
                break

    # central series and Dedekind oracle over the catalog
    for G in small_catalog():
        cs = upper_central_series(G)
        if not all(is_normal(G, Z) for Z in cs.terms):
            failures.append(f"central series normality {G.name}")
        if any(a.order >= b.order or not set(a.elements) <= set(b.elements)
               for a, b in zip(cs.terms, cs.terms[1:])):
            failures.append(f"central series monotonicity {G.name}")
        if all_subgroups_normal(G) != oracle_dedekind(G):
            failures.append(f"Dedekind oracle {G.name}")

    elapsed = time.perf_counter() - start
    report(8, "property suites", not failures, elapsed, detail="; ".join(failures))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
