import pytest

from hyperunits.analysis import (
    InfiniteGroup,
    Z2Witness,
    bounded_unit_search_zg,
    classify_hyperbolic,
    classify_hypercentral_finite,
    classify_hypercentral_structured,
    construct_z2_witness,
    enumerate_v_kg,
    unit_group_structure,
    verify_dedekind_conditions,
    verify_z2_witness,
)
from hyperunits.coeff import ZZ, FieldDescriptor, RationalFunctionField, ff_make
from hyperunits.errors import (
    BudgetExceeded,
    DegenerateTorsionElement,
    NotOfThisForm,
    OrderDivisibleByChar,
    PreconditionError,
    TrivialGroup,
)
from hyperunits.groupring import (
    GroupRingElement,
    augmentation,
    conj,
    format_element,
    is_trivial_unit,
    parse_element,
    star,
    try_invert,
)
from hyperunits.groups import (
    StructuredGroup,
    builtin,
    conjugation_map,
    decompose_k8_e2,
    direct_product,
    extend_hom,
    inversion_map,
    is_abelian,
)

from .catalog import small_catalog

K8 = builtin("quaternion8")
C2, C3, C4, C5 = (builtin("cyclic", n) for n in (2, 3, 4, 5))
GF2 = FieldDescriptor.finite(2, 1)
GF4 = FieldDescriptor.finite(2, 2)
GF2t = FieldDescriptor.function_field(2)
ALG2 = FieldDescriptor.algebraic_infinite(2)


# --- V(KG) -------------------------------------------------------------------


def test_enumerate_small():
    V = enumerate_v_kg(ff_make(2), C2)
    assert [format_element(x) for x in V.carrier] == ["1", "g"]
    V = enumerate_v_kg(ff_make(3), C2)
    assert sorted(format_element(x) for x in V.carrier) == ["1", "g"]
    assert V.candidates == 3


def test_enumerate_q8():
    V = enumerate_v_kg(ff_make(2), K8)
    assert len(V.carrier) == 128 == V.candidates
    s = unit_group_structure(V)
    assert s.order == 128
    assert s.series_orders[-1] == 128 and s.nilpotency_class is not None
    assert V.carrier[0] == GroupRingElement.one(K8, ff_make(2))


def test_enumerate_budget_and_trivial():
    with pytest.raises(BudgetExceeded):
        enumerate_v_kg(ff_make(7), K8, budget=1000)
    V = enumerate_v_kg(ff_make(2), builtin("cyclic", 1))
    assert unit_group_structure(V).order == 1
    s = unit_group_structure(enumerate_v_kg(ff_make(2), C2))
    assert (s.order, s.nilpotency_class) == (2, 1)


@pytest.mark.parametrize("p,n,G", [(3, 1, C3), (2, 2, C2), (2, 1, C4), (3, 1, C2), (5, 1, C2), (2, 1, C3)])
def test_enumeration_invariants(p, n, G):
    K = ff_make(p, n)
    V = enumerate_v_kg(K, G)
    aug1 = K.order ** (G.order - 1)
    assert V.candidates == aug1 and len(V.carrier) <= aug1
    if p ** (G.order.bit_length()) % G.order == 0:  # G is a p-group
        assert len(V.carrier) == aug1
    elements = set(V.carrier)
    for x in V.carrier:
        assert augmentation(x) == K.one
        assert try_invert(x) in elements
        for y in V.carrier:
            assert x * y in elements
    # table consistent with multiplication
    T = V.as_group
    for a in T.elements:
        for b in T.elements:
            assert V.carrier[T.mul(a, b)] == V.carrier[a] * V.carrier[b]


def brute_units_count(K, G):
    """Count aug-1 units by searching for a right inverse among all elements."""
    import itertools

    one = GroupRingElement.one(G, K)
    all_elements = [GroupRingElement.from_vector(G, K, [K.from_code(c) for c in v])
                    for v in itertools.product(range(K.order), repeat=G.order)]
    count = 0
    for x in all_elements:
        if augmentation(x) == K.one and any(x * y == one for y in all_elements):
            count += 1
    return count


def test_divisibility_fails_outside_p_groups():
    # 2 units among 3 augmentation-one elements: the count need not divide
    V = enumerate_v_kg(ff_make(3), C2)
    assert (len(V.carrier), V.candidates) == (2, 3)


@pytest.mark.parametrize("p,G", [(3, C2), (2, C3), (5, C2), (3, C3)])
def test_enumeration_matches_brute_force(p, G):
    K = ff_make(p)
    assert len(enumerate_v_kg(K, G).carrier) == brute_units_count(K, G)


# --- bounded search in ZG -------------------------------------------------------


def test_search_examples():
    found = bounded_unit_search_zg(K8, 1)
    assert len(found) == 8 and all(is_trivial_unit(x) for x in found)
    assert {x.support[0] for x in found} == set(K8.elements)
    c5 = bounded_unit_search_zg(C5, 1)
    target = parse_element("-1 + g + g^4", C5, ZZ)
    assert target in c5
    assert try_invert(target) == parse_element("-1 + g^2 + g^3", C5, ZZ)
    c2 = bounded_unit_search_zg(C2, 3)
    assert [format_element(x) for x in c2] == ["g", "1"]
    with pytest.raises(BudgetExceeded):
        bounded_unit_search_zg(K8, 3, budget=10**5)


def test_search_order_is_lexicographic():
    found = bounded_unit_search_zg(C5, 1)
    vecs = [x.to_vector() for x in found]
    assert vecs == sorted(vecs)


@pytest.mark.parametrize("G", [C3, C4, C5, builtin("cyclic", 6)], ids=lambda G: G.name)
def test_star_mechanism_on_abelian_units(G):
    found = bounded_unit_search_zg(G, 1)
    one = GroupRingElement.one(G, ZZ)
    for x in found:
        y = try_invert(x)
        assert augmentation(x) == 1 and x * y == one and y * x == one
        for g in G.elements:
            gamma = y * conj(x, g)
            # G abelian: conj is trivial, so gamma = 1 and star(gamma) = gamma^-1
            assert star(gamma) == try_invert(gamma)
        # star(x) x is central
        s = star(x) * x
        assert all(s * GroupRingElement.basis(G, ZZ, g) == GroupRingElement.basis(G, ZZ, g) * s
                   for g in G.elements)


def test_trivial_units_with_unitary_star():
    # units with star = inverse among search output are exactly +-g
    for G in (C3, C4, builtin("cyclic", 6)):
        for x in bounded_unit_search_zg(G, 1):
            if star(x) == try_invert(x):
                assert is_trivial_unit(x)


# --- Dedekind conditions -----------------------------------------------------------


def test_dedekind_examples():
    r = verify_dedekind_conditions(K8)
    assert [c.holds for c in r.items] == [True, True, True, True]
    assert r.mixed_orders_force_central.vacuous
    r = verify_dedekind_conditions(builtin("symmetric3"))
    assert not r.all_subgroups_normal.holds
    assert r.all_subgroups_normal.counterexample is not None
    r = verify_dedekind_conditions(builtin("cyclic", 6))
    assert r.all_hold


# --- hypercentral classification -----------------------------------------------------


def test_classify_finite_examples():
    assert classify_hypercentral_finite(builtin("cyclic", 12)).label == "Yes(a)"
    v = classify_hypercentral_finite(direct_product(K8, builtin("elemabelian2", 1)))
    assert v.label == "Yes(c)"
    assert v.evidence["decomposition"]["e2"]
    for G in (builtin("dihedral", 4), builtin("genquaternion16"), builtin("symmetric3")):
        assert classify_hypercentral_finite(G).answer == "No"


def independent_predicate(G):
    if is_abelian(G):
        return True
    try:
        decompose_k8_e2(G)
    except NotOfThisForm:
        return False
    return True


@pytest.mark.parametrize("G", small_catalog(), ids=lambda G: G.name)
def test_classifier_agrees_with_predicate(G):
    v = classify_hypercentral_finite(G)
    assert (v.answer == "Yes") == independent_predicate(G)
    if v.answer == "Yes":
        assert verify_dedekind_conditions(G).all_hold


def test_classify_structured_examples():
    S = StructuredGroup(C4, 1, [inversion_map(C4)])
    assert classify_hypercentral_structured(S).label == "Yes(b)"
    S = StructuredGroup(C3, 1, [inversion_map(C3)])
    assert classify_hypercentral_structured(S).answer == "No"
    k8 = StructuredGroup(K8, 1, [conjugation_map(K8, K8.index("i"))])
    v = classify_hypercentral_structured(k8)
    assert v.label == "Yes(c)" and v.evidence["k8_action"] == ["ConjByI"]
    swap = extend_hom(K8, [K8.index("i"), K8.index("j")], [K8.index("j"), K8.index("i")])
    v = classify_hypercentral_structured(StructuredGroup(K8, 1, [swap]))
    assert v.answer == "No" and "NotInner" in v.reason


def test_classify_structured_more():
    C6 = builtin("cyclic", 6)
    assert classify_hypercentral_structured(StructuredGroup(C6, 1, [list(C6.elements)])).label == "Yes(a)"
    v = classify_hypercentral_structured(StructuredGroup(C6, 1, [inversion_map(C6)]))
    assert v.answer == "No"
    # k = 0 reduces to the finite classifier on T
    for G in small_catalog():
        if G.order == 1:
            continue
        a = classify_hypercentral_structured(StructuredGroup(G, 0, []))
        b = classify_hypercentral_finite(G)
        assert a.answer == b.answer, G.name


# --- Z^2 witnesses ---------------------------------------------------------------------


def test_witness_example():
    g = C3.index("g")
    w = construct_z2_witness(2, C3, g)
    R = RationalFunctionField(2)
    assert w.u1 == parse_element("1 + (t+1)*g + (t+1)*g^2", C3, R)
    assert augmentation(w.u1) == R.one
    assert verify_z2_witness(w, 5)
    assert w.checks["independent"]
    with pytest.raises(DegenerateTorsionElement):
        construct_z2_witness(2, C3, 0)
    with pytest.raises(OrderDivisibleByChar):
        construct_z2_witness(3, C3, g)


def test_tampered_witness_fails():
    w = construct_z2_witness(2, C3, C3.index("g"))
    bad = Z2Witness(w.u1, w.u1, w.p, w.g0)
    assert not verify_z2_witness(bad, 1)
    assert bad.checks["relation"] in ([-1, 1], [1, -1])
    with pytest.raises(PreconditionError):
        verify_z2_witness(w, 0)


@pytest.mark.parametrize("p,q", [(p, q) for p in (2, 3, 5, 7) for q in (2, 3, 5, 7) if p != q])
def test_witness_all_prime_pairs(p, q):
    G = builtin("cyclic", q)
    assert verify_z2_witness(construct_z2_witness(p, G, G.index("g")), 5)


def test_witness_noncyclic_group():
    w = construct_z2_witness(3, K8, K8.index("i"))
    assert verify_z2_witness(w, 3)


# --- hyperbolicity ----------------------------------------------------------------------


def test_hyperbolic_table():
    v = classify_hyperbolic(GF4, K8, "V")
    assert (v.answer, v.rule, v.witness) == ("Hyperbolic", "R1", None)
    v = classify_hyperbolic(GF2t, K8, "V")
    assert (v.answer, v.rule, v.witness) == ("NotHyperbolic", "R1", None)
    v = classify_hyperbolic(GF2t, C3, "V")
    assert (v.answer, v.rule) == ("NotHyperbolic", "R1")
    assert v.witness is not None and v.witness.checks["independent"]
    v = classify_hyperbolic(ALG2, C3, "V")
    assert (v.answer, v.rule, v.witness) == ("NotHyperbolic", "R1", None)
    v = classify_hyperbolic(GF2t, InfiniteGroup(True, True), "V")
    assert (v.answer, v.rule) == ("NotHyperbolic", "R2")
    v = classify_hyperbolic(ALG2, InfiniteGroup(True, False), "V")
    assert v.answer == "Undetermined" and v.constraints["K_algebraic_over_prime_field"]
    for G in (C3, K8, InfiniteGroup(True, True), InfiniteGroup(False, False)):
        v = classify_hyperbolic(ALG2, G, "U")
        assert (v.answer, v.rule) == ("NotHyperbolic", "R4")


def test_hyperbolic_structured_input():
    S = StructuredGroup(C3, 1, [list(C3.elements)])
    v = classify_hyperbolic(GF2t, S, "V")
    assert (v.answer, v.rule) == ("NotHyperbolic", "R2")
    assert v.witness is not None
    v = classify_hyperbolic(FieldDescriptor.function_field(3), StructuredGroup(C3, 1, [list(C3.elements)]), "V")
    assert (v.answer, v.rule) == ("NotHyperbolic", "R3")


def test_hyperbolic_errors_and_determinism():
    with pytest.raises(TrivialGroup):
        classify_hyperbolic(GF2, builtin("cyclic", 1), "V")
    with pytest.raises(PreconditionError):
        InfiniteGroup(False, True)
    a = classify_hyperbolic(GF2t, C5, "V").to_json()
    b = classify_hyperbolic(GF2t, C5, "V").to_json()
    assert a == b


FIELDS = [GF2, GF4, FieldDescriptor.finite(3, 1), GF2t, FieldDescriptor.function_field(3), ALG2,
          FieldDescriptor.algebraic_infinite(3)]
GROUPS = [C2, C3, K8, builtin("symmetric3"), InfiniteGroup(True, True), InfiniteGroup(True, False),
          InfiniteGroup(False, False)]


@pytest.mark.parametrize("K", FIELDS, ids=str)
def test_hyperbolic_total_and_consistent(K):
    for G in GROUPS:
        for about in ("V", "U"):
            v = classify_hyperbolic(K, G, about)
            assert v.answer in ("Hyperbolic", "NotHyperbolic", "Undetermined")
            assert v.rule in ("R1", "R2", "R3", "R4", "none")
            if v.rule == "R1" and K.kind == "finite":
                assert v.witness is None
            if v.rule == "R1" and v.answer == "NotHyperbolic" and K.kind == "function_field":
                coprime = any(G.element_order(g) % K.p for g in G.elements if g)
                assert (v.witness is not None) == coprime
                if v.witness is not None:
                    assert v.witness.checks["independent"]
            if v.answer == "Hyperbolic":
                assert isinstance(G, type(C2)) and about == "V" and K.kind == "finite"
