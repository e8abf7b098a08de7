"""Decision procedures for hypercentral and hyperbolic unit groups.

Three families of questions are answered here:

* finite unit groups V(KG) over finite fields are enumerated and their
  upper central series computed;
* units of ZG with bounded coefficients are searched exhaustively, and the
  hypercentrality of U_1(ZG) is decided for finite G and for structured
  groups Z^k x| T;
* hyperbolicity of V(KG) / U(KG) in positive characteristic is decided by
  a cascade of necessary and sufficient rules, with an explicit pair of
  commuting, independent units (a Z^2 witness) where one exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Union

from .coeff import (
    ZZ,
    FieldDescriptor,
    FiniteField,
    RationalFunctionField,
    field_traits,
)
from .config import DEFAULT_BUDGETS
from .errors import (
    BudgetExceeded,
    DegenerateTorsionElement,
    NotAnAutomorphism,
    NotAUnit,
    NotOfThisForm,
    OrderDivisibleByChar,
    PreconditionError,
    TrivialGroup,
)
from .groupring import (
    GroupRingElement,
    augmentation,
    commutator,
    format_element,
    hat_idempotent,
    try_invert,
)
from .groups import (
    FiniteGroup,
    K8Action,
    StructuredGroup,
    center,
    conjugation_map,
    decompose_k8_e2,
    generating_set,
    is_abelian,
    is_2_group,
    k8_action_class,
    k8_e2_decompositions,
    non_normal_cyclic,
    structured_is_hypercentral,
    upper_central_series,
)


# ---------------------------------------------------------------------------
# V(KG) for finite K


@dataclass
class EnumeratedUnitGroup:
    carrier: list[GroupRingElement]
    as_group: FiniteGroup
    field: FiniteField
    group: FiniteGroup
    candidates: int


def enumerate_v_kg(K: FiniteField, G: FiniteGroup, budget: int = DEFAULT_BUDGETS.enumeration) -> EnumeratedUnitGroup:
    """All units of augmentation one in KG, with their Cayley table.

    The |G|-1 coefficients off the identity are free; the identity
    coefficient is forced by the augmentation.  Every candidate goes through
    try_invert, even where theory guarantees a unit.
    """
    if isinstance(K, FieldDescriptor):
        K = K.realize()
    if not isinstance(K, FiniteField):
        raise PreconditionError("V(KG) enumeration needs a finite field")
    n = G.order
    count = K.order ** (n - 1)
    if count > budget:
        raise BudgetExceeded(f"|K|^(|G|-1) = {count} exceeds budget {budget}")
    one = K.one
    units = []
    for tail in itertools.product(list(K.elements()), repeat=n - 1):
        head = one
        for c in tail:
            head = head - c
        x = GroupRingElement.from_vector(G, K, (head,) + tail)
        try:
            try_invert(x)
        except NotAUnit:
            continue
        units.append(x)

    if G.order == 1 or _is_power_of(G.order, K.p):
        # 1 + (augmentation ideal) consists of units when G is a p-group
        assert len(units) == count, "p-group count mismatch"

    identity = GroupRingElement.one(G, K)
    units.sort(key=lambda x: x != identity)
    index = {x: k for k, x in enumerate(units)}
    table = []
    for a in units:
        row = []
        for b in units:
            k = index.get(a * b)
            if k is None:
                raise AssertionError("unit group not closed under multiplication")
            row.append(k)
        table.append(row)
    labels = ["1"] + [f"v{k}" for k in range(1, len(units))]
    V = FiniteGroup(table, labels, f"V({K!r}{G.name})")
    return EnumeratedUnitGroup(units, V, K, G, count)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass
class UnitGroupStructure:
    order: int
    center_order: int
    series_orders: list[int]
    nilpotency_class: int | None

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "center_order": self.center_order,
            "upper_central_series": self.series_orders,
            "nilpotency_class": self.nilpotency_class if self.nilpotency_class is not None else "NotNilpotent",
        }


def unit_group_structure(V: EnumeratedUnitGroup) -> UnitGroupStructure:
    series = upper_central_series(V.as_group)
    return UnitGroupStructure(
        V.as_group.order, center(V.as_group).order, series.orders, series.nilpotency_class
    )


# ---------------------------------------------------------------------------
# units of ZG with bounded coefficients


def bounded_unit_search_zg(G: FiniteGroup, B: int, budget: int = DEFAULT_BUDGETS.unit_search) -> list[GroupRingElement]:
    """Units of augmentation one in ZG with all coefficients in [-B, B].

    Output follows the lexicographic order of coefficient vectors.
    """
    if B < 0:
        raise PreconditionError("coefficient bound must be nonnegative")
    count = (2 * B + 1) ** G.order
    if count > budget:
        raise BudgetExceeded(f"(2B+1)^|G| = {count} exceeds budget {budget}")
    found = []
    for vec in itertools.product(range(-B, B + 1), repeat=G.order):
        if sum(vec) != 1:
            continue
        x = GroupRingElement.from_vector(G, ZZ, vec)
        try:
            try_invert(x)
        except NotAUnit:
            continue
        found.append(x)
    return found


# ---------------------------------------------------------------------------
# hypercentrality


@dataclass
class Condition:
    holds: bool
    description: str
    vacuous: bool = False
    counterexample: tuple[str, ...] | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"holds": self.holds, "description": self.description}
        if self.vacuous:
            out["vacuous"] = True
        if self.counterexample is not None:
            out["counterexample"] = list(self.counterexample)
        return out


@dataclass
class DedekindReport:
    all_subgroups_normal: Condition
    conjugates_are_powers: Condition
    odd_order_central: Condition
    mixed_orders_force_central: Condition

    @property
    def items(self) -> list[Condition]:
        return [
            self.all_subgroups_normal,
            self.conjugates_are_powers,
            self.odd_order_central,
            self.mixed_orders_force_central,
        ]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.items)

    def first_failure(self) -> Condition | None:
        return next((c for c in self.items if not c.holds), None)

    def to_json(self) -> dict:
        return {
            "all_subgroups_normal": self.all_subgroups_normal.to_json(),
            "conjugates_are_powers": self.conjugates_are_powers.to_json(),
            "odd_order_central": self.odd_order_central.to_json(),
            "mixed_orders_force_central": self.mixed_orders_force_central.to_json(),
        }


def verify_dedekind_conditions(G: FiniteGroup) -> DedekindReport:
    """Necessary conditions on a finite G for U_1(ZG) to be hypercentral."""
    L = G.labels

    bad = non_normal_cyclic(G)
    c1 = Condition(
        bad is None,
        "every subgroup is normal",
        counterexample=None if bad is None else (f"<{L[bad[0]]}>", L[bad[1]]),
    )

    bad2 = next(
        ((g, t) for t in G.elements for g in G.elements if G.conj(t, g) not in (t, G.inv[t])),
        None,
    )
    c2 = Condition(
        bad2 is None,
        "g^-1 t g is t or t^-1 for all g, t",
        counterexample=None if bad2 is None else (L[bad2[0]], L[bad2[1]]),
    )

    odd = [t for t in G.elements if G.element_order(t) % 2 == 1 and t != 0]
    bad3 = next(((t, g) for t in odd for g in G.elements if G.mul(t, g) != G.mul(g, t)), None)
    c3 = Condition(
        bad3 is None,
        "elements of odd order are central",
        counterexample=None if bad3 is None else (L[bad3[0]], L[bad3[1]]),
    )

    even = [t for t in G.elements if G.element_order(t) % 2 == 0]
    if odd and even:
        rows = G._rows
        bad4 = next(
            ((a, b) for a in G.elements for b in G.elements if rows[a][b] != rows[b][a]), None
        )
        c4 = Condition(
            bad4 is None,
            "nontrivial odd-order and even-order elements together force T central",
            counterexample=None if bad4 is None else (L[bad4[0]], L[bad4[1]]),
        )
    else:
        c4 = Condition(True, "nontrivial odd-order and even-order elements together force T central", vacuous=True)
    return DedekindReport(c1, c2, c3, c4)


@dataclass
class HypercentralVerdict:
    answer: str  # "Yes" | "No" | "Indeterminate"
    case: str | None = None  # "a" | "b" | "c" for Yes
    reason: str = ""
    evidence: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"Yes({self.case})" if self.answer == "Yes" else self.answer

    def to_json(self) -> dict:
        return {"answer": self.label, "case": self.case, "reason": self.reason, "evidence": self.evidence}


def classify_hypercentral_finite(G: FiniteGroup) -> HypercentralVerdict:
    """Is U_1(ZG) hypercentral, for finite G (so T = G)?

    For finite G the torsion subgroup is G itself, so the +-1 action case
    collapses into the abelian case.
    """
    note = "finite G: T = G, so case (b) reduces to case (a)"
    if is_abelian(G):
        return HypercentralVerdict("Yes", "a", "G is abelian, so T = G is central", {"note": note})
    report = verify_dedekind_conditions(G)
    if not report.all_hold:
        first = report.first_failure()
        return HypercentralVerdict(
            "No",
            reason=f"necessary condition fails: {first.description}",
            evidence={"dedekind": report.to_json()},
        )
    try:
        dec = decompose_k8_e2(G)
    except NotOfThisForm as e:
        return HypercentralVerdict(
            "No", reason=f"G is not K8 x E2: {e.reason}", evidence={"dedekind": report.to_json()}
        )
    gens = generating_set(G)
    tags = [k8_action_class(dec.k8, conjugation_map(G, g), dec.i, dec.j) for g in gens]
    assert all(t is not K8Action.NOT_INNER for t in tags)
    return HypercentralVerdict(
        "Yes",
        "c",
        "G = K8 x E2 with E2 central; conjugation induces inner automorphisms of K8",
        {
            "decomposition": dec.to_json(),
            "k8_action": {G.labels[g]: t.value for g, t in zip(gens, tags)},
            "note": note,
        },
    )


def _is_identity(perm) -> bool:
    return all(perm[k] == k for k in range(len(perm)))


def classify_hypercentral_structured(S: StructuredGroup, max_steps: int = DEFAULT_BUDGETS.chain_steps) -> HypercentralVerdict:
    """Is U_1(ZG) hypercentral, for G = Z^k x| T?"""
    T = S.torsion
    chain = structured_is_hypercentral(S, max_steps)
    chain_json = [h.order for h in chain.chain]
    if chain.status == "indeterminate":
        return HypercentralVerdict(
            "Indeterminate",
            reason=f"[T, G, ..., G] chain did not settle within {max_steps} steps",
            evidence={"chain_orders": chain_json},
        )
    if not chain.positive:
        return HypercentralVerdict(
            "No",
            reason=f"G is not hypercentral: [T, G, ..., G] stabilizes at order {chain.chain[-1].order}",
            evidence={"chain_orders": chain_json},
        )
    evidence: dict[str, Any] = {"chain_orders": chain_json, "nilpotency_class": chain.nilpotency_class}
    abelian = is_abelian(T)
    if abelian and all(_is_identity(a) for a in S.actions):
        return HypercentralVerdict("Yes", "a", "T is central in G", evidence)
    inversion = list(T.inv)
    if abelian and is_2_group(T) and all(_is_identity(a) or list(a) == inversion for a in S.actions):
        evidence["delta"] = [1 if _is_identity(a) else -1 for a in S.actions]
        return HypercentralVerdict("Yes", "b", "T is an abelian 2-group and every generator acts by t -> t^(+-1)", evidence)
    if abelian:
        why = "T is abelian but not central" + ("" if is_2_group(T) else " and not a 2-group")
        return HypercentralVerdict("No", reason=f"{why}, and some generator does not act by +-1", evidence=evidence)

    try:
        decompose_k8_e2(T)
    except NotOfThisForm as e:
        return HypercentralVerdict("No", reason=f"T is nonabelian and not K8 x E2: {e.reason}", evidence=evidence)
    fixed = [z for z in T.elements if all(a[z] == z for a in S.actions)]
    reason = "no K8 x E2 decomposition has E2 fixed pointwise by the action"
    for dec, _ in k8_e2_decompositions(T, fixed):
        if dec is None:
            continue
        try:
            tags = [k8_action_class(dec.k8, a, dec.i, dec.j) for a in S.actions]
        except NotAnAutomorphism:
            reason = "the action does not preserve the K8 factor"
            continue
        if any(t is K8Action.NOT_INNER for t in tags):
            reason = "a generator induces an automorphism of K8 outside the four inner ones (NotInner)"
            continue
        evidence["decomposition"] = dec.to_json()
        evidence["k8_action"] = [t.value for t in tags]
        return HypercentralVerdict(
            "Yes", "c", "T = K8 x E2, E2 central, each generator acts on K8 by an inner automorphism", evidence
        )
    return HypercentralVerdict("No", reason=reason, evidence=evidence)


# ---------------------------------------------------------------------------
# Z^2 witnesses


@dataclass
class Z2Witness:
    """Commuting units u1, u2 of augmentation one in GF(p)(t)G, meant to be independent."""

    u1: GroupRingElement
    u2: GroupRingElement
    p: int
    g0: int
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        G = self.u1.group
        return {
            "field": f"GF({self.p})(t)",
            "group": G.name,
            "g0": G.labels[self.g0],
            "u1": format_element(self.u1),
            "u2": format_element(self.u2),
            "checks": self.checks,
        }


def construct_z2_witness(p: int, G: FiniteGroup, g0: int) -> Z2Witness:
    """u1 = e + t(1-e), u2 = e + (1+t)(1-e) with e the idempotent of <g0>.

    u1^a u2^b = e + t^a (1+t)^b (1-e), which is 1 only for a = b = 0.
    """
    if g0 == 0:
        raise DegenerateTorsionElement("g0 must not be the identity")
    o = G.element_order(g0)
    if o % p == 0:
        raise OrderDivisibleByChar(f"p = {p} divides o(g0) = {o}")
    K = RationalFunctionField(p)
    e = hat_idempotent(G, g0, K)
    one = GroupRingElement.one(G, K)
    t = K.t
    u1 = e + t * (one - e)
    u2 = e + (t + 1) * (one - e)
    return Z2Witness(u1, u2, p, g0)


def verify_z2_witness(w: Z2Witness, N: int = DEFAULT_BUDGETS.independence_bound) -> bool:
    """Bounded certificate that <u1, u2> is free abelian of rank 2.

    Checks augmentations, that u1 and u2 commute, and that u1^a u2^b != 1
    for every (a, b) in [-N, N]^2 other than (0, 0).  The outcome is also
    recorded in ``w.checks``.
    """
    if N < 1:
        raise PreconditionError("independence bound N must be at least 1")
    ring = w.u1.ring
    one = GroupRingElement.one(w.u1.group, ring)
    checks: dict[str, Any] = {"independence_bound": N}
    checks["augmentation_u1"] = augmentation(w.u1) == ring.one
    checks["augmentation_u2"] = augmentation(w.u2) == ring.one
    try:
        checks["commute"] = commutator(w.u1, w.u2) == one
        p1 = _power_table(w.u1, N)
        p2 = _power_table(w.u2, N)
    except NotAUnit:
        checks["units"] = False
        w.checks = checks
        return False
    checks["units"] = True
    relation = None
    for a in range(-N, N + 1):
        for b in range(-N, N + 1):
            if (a, b) != (0, 0) and p1[a] * p2[b] == one:
                relation = (a, b)
                break
        if relation:
            break
    checks["independent"] = relation is None
    if relation:
        checks["relation"] = list(relation)
    w.checks = checks
    return all(checks[k] for k in ("augmentation_u1", "augmentation_u2", "commute", "units", "independent"))


def _power_table(u: GroupRingElement, N: int) -> dict[int, GroupRingElement]:
    one = GroupRingElement.one(u.group, u.ring)
    inv = try_invert(u)
    table = {0: one}
    for k in range(1, N + 1):
        table[k] = table[k - 1] * u
        table[-k] = table[-k + 1] * inv
    return table


def coprime_torsion_element(G: FiniteGroup, p: int) -> int | None:
    """First non-identity element whose order is not divisible by p."""
    return next((g for g in G.elements if g and G.element_order(g) % p), None)


# ---------------------------------------------------------------------------
# hyperbolicity


@dataclass(frozen=True)
class InfiniteGroup:
    """Coarse description of an infinite group: only its torsion facts.

    ``torsion`` optionally holds a finite subgroup that realizes the
    torsion, used to build explicit witnesses.
    """

    has_torsion: bool
    has_p_prime_torsion: bool
    torsion: FiniteGroup | None = None

    def __post_init__(self):
        if self.has_p_prime_torsion and not self.has_torsion:
            raise PreconditionError("p'-torsion implies torsion")

    @classmethod
    def from_torsion(cls, T: FiniteGroup, p: int) -> InfiniteGroup:
        return cls(T.order > 1, coprime_torsion_element(T, p) is not None, T)


GroupDescriptor = Union[FiniteGroup, InfiniteGroup, StructuredGroup]


@dataclass
class HyperbolicVerdict:
    answer: str  # "Hyperbolic" | "NotHyperbolic" | "Undetermined"
    rule: str
    about: str
    reason: str
    witness: Z2Witness | None = None
    constraints: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"answer": self.answer, "rule": self.rule, "about": self.about, "reason": self.reason}
        if self.constraints:
            out["constraints"] = self.constraints
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


RULES = {
    "R1": "G finite and nontrivial: V(KG) is hyperbolic iff K is finite",
    "R2": "G has torsion of order prime to p and tr.deg(K) >= 1: Z^2 embeds in V(KG)",
    "R3": "G has torsion and V(KG) hyperbolic forces K algebraic over GF(p)",
    "R4": "U(KG) hyperbolic forces K finite",
}


def classify_hyperbolic(
    K: FieldDescriptor,
    G: GroupDescriptor,
    about: str = "V",
    witness: bool = True,
    independence_bound: int = DEFAULT_BUDGETS.independence_bound,
) -> HyperbolicVerdict:
    """Hyperbolicity of V(KG) (about="V") or U(KG) (about="U").

    Rules are tried in order R1..R4; the first that fires decides.  When
    none fires the verdict is Undetermined and lists the necessary
    conditions that were met.
    """
    if about not in ("V", "U"):
        raise PreconditionError(f"about must be 'V' or 'U', got {about!r}")
    traits = field_traits(K)
    p = traits.char
    if isinstance(G, StructuredGroup):
        G = G.torsion if G.free_rank == 0 else InfiniteGroup.from_torsion(G.torsion, p)
    finite = isinstance(G, FiniteGroup)
    if finite and G.order == 1:
        raise TrivialGroup("the hyperbolicity rules concern nontrivial G")
    torsion_group = G if finite else G.torsion
    has_torsion = True if finite else G.has_torsion
    has_pprime = (coprime_torsion_element(G, p) is not None) if finite else G.has_p_prime_torsion

    def attach(rule: str) -> Z2Witness | None:
        if not (witness and traits.tr_deg >= 1 and torsion_group is not None):
            return None
        g0 = coprime_torsion_element(torsion_group, p)
        if g0 is None:
            return None
        w = construct_z2_witness(p, torsion_group, g0)
        if not verify_z2_witness(w, independence_bound):
            raise AssertionError(f"constructed witness failed verification under {rule}")
        return w

    if about == "V" and finite:
        if traits.is_finite:
            return HyperbolicVerdict("Hyperbolic", "R1", about, RULES["R1"])
        return HyperbolicVerdict("NotHyperbolic", "R1", about, RULES["R1"], attach("R1"))
    if about == "V" and has_pprime and traits.tr_deg >= 1:
        return HyperbolicVerdict("NotHyperbolic", "R2", about, RULES["R2"], attach("R2"))
    if about == "V" and has_torsion and not traits.is_algebraic_over_prime:
        return HyperbolicVerdict("NotHyperbolic", "R3", about, RULES["R3"])
    if about == "U" and not traits.is_finite:
        return HyperbolicVerdict("NotHyperbolic", "R4", about, RULES["R4"])
    constraints = {
        "K_algebraic_over_prime_field": traits.is_algebraic_over_prime,
        "K_finite": traits.is_finite,
        "G_finite": finite,
        "G_has_torsion": has_torsion,
        "G_has_p_prime_torsion": has_pprime,
        "tr_deg": traits.tr_deg,
    }
    return HyperbolicVerdict(
        "Undetermined",
        "none",
        about,
        "every applicable necessary condition holds, and no sufficient rule covers this case",
        constraints=constraints,
    )
