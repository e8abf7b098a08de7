"""Finite groups as Cayley tables, plus structured groups Z^k x| T.

Elements of a :class:`FiniteGroup` are the indices ``0..n-1``; index 0 is
always the identity.  Labels are only for display and for the textual
element format of the group-ring layer.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParams,
    GroupValidationError,
    NoIdentity,
    NoInverse,
    NotAnAutomorphism,
    NotAssociative,
    NotOfThisForm,
    UnknownName,
)

#: Quotient tables and central series are meant for groups up to this order.
MAX_GROUP_ORDER = 512

_ASSOC_CHUNK = 1 << 22


class FiniteGroup:
    """A validated Cayley table with identity 0 and an inverse table."""

    def __init__(self, table, labels: Sequence[str] | None = None, name: str | None = None):
        arr = np.asarray(table)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise GroupValidationError(f"Cayley table must be a nonempty square array, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise GroupValidationError("Cayley table entries must be integers")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise GroupValidationError(f"Cayley table entries must lie in 0..{n - 1}")
        arr = arr.astype(np.int64)
        idx = np.arange(n)
        if not (np.array_equal(arr[0], idx) and np.array_equal(arr[:, 0], idx)):
            raise NoIdentity("index 0 is not a two-sided identity")
        has_right = arr == 0
        if not has_right.any(axis=1).all():
            g = int(np.flatnonzero(~has_right.any(axis=1))[0])
            raise NoInverse(f"element {g} has no right inverse")
        inv = has_right.argmax(axis=1)
        if not np.array_equal(arr[inv, idx], np.zeros(n, dtype=np.int64)):
            g = int(np.flatnonzero(arr[inv, idx] != 0)[0])
            raise NoInverse(f"element {g} has no two-sided inverse")
        _check_associative(arr)

        if labels is None:
            labels = ["1"] + [f"x{k}" for k in range(1, n)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise GroupValidationError("labels must be unique, one per element")

        arr.setflags(write=False)
        self.table = arr
        self.order = n
        self.name = name or f"G{n}"
        self.labels = labels
        self._rows = arr.tolist()
        self.inv = inv.tolist()
        self._index = {s: k for k, s in enumerate(labels)}
        self._orders: list[int] | None = None

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj(self, t: int, g: int) -> int:
        """g^-1 t g"""
        return self._rows[self._rows[self.inv[g]][t]][g]

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b"""
        r = self._rows
        return r[r[self.inv[a]][self.inv[b]]][r[a][b]]

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv[a], -e
        out = 0
        for _ in range(e % self.element_order(a) if a else 0):
            out = self._rows[out][a]
        return out

    def element_order(self, a: int) -> int:
        if self._orders is None:
            self._orders = [_order_by_iteration(self._rows, g) for g in range(self.order)]
        return self._orders[a]

    @property
    def elements(self) -> range:
        return range(self.order)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownName(f"{label!r} is not an element of {self.name}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    def has_label(self, label: str) -> bool:
        return label in self._index

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<FiniteGroup {self.name} of order {self.order}>"


def _order_by_iteration(rows, g):
    k, x = 1, g
    while x != 0:
        x = rows[x][g]
        k += 1
    return k


def _check_associative(arr: np.ndarray) -> None:
    n = arr.shape[0]
    step = max(1, _ASSOC_CHUNK // (n * n))
    for start in range(0, n, step):
        block = arr[start:start + step]
        left = arr[block]  # (ab)c
        right = np.take(block, arr, axis=1)  # a(bc)
        bad = left != right
        if bad.any():
            a, b, c = np.argwhere(bad)[0]
            raise NotAssociative(f"({start + a}*{b})*{c} != {start + a}*({b}*{c})")


def group_from_table(table, labels: Sequence[str] | None = None, name: str | None = None) -> FiniteGroup:
    return FiniteGroup(table, labels, name)


def _from_elements(elements: list, mul, labels: list[str], name: str) -> FiniteGroup:
    pos = {e: k for k, e in enumerate(elements)}
    table = [[pos[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, labels, name)


# ---------------------------------------------------------------------------
# builtin groups


def _power_label(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParams(f"cyclic group order must be positive, got {n}")
    labels = ["1"] + [_power_label("g", k) for k in range(1, n)]
    return _from_elements(list(range(n)), lambda a, b: (a + b) % n, labels, f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, elements r^k s^e with s r s = r^-1."""
    if n < 1:
        raise BadParams(f"dihedral parameter must be positive, got {n}")
    elements = [(k, e) for e in (0, 1) for k in range(n)]

    def mul(x, y):
        (a, e), (b, f) = x, y
        return ((a + (b if e == 0 else -b)) % n, (e + f) % 2)

    labels = [(_power_label("r", k) + ("s" if e else "")) or "1" for k, e in elements]
    return _from_elements(elements, mul, labels, f"D{n}")


# unit quaternions 1, i, j, k as 0..3: product table of (sign, unit)
_QUAT = {
    (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
    (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
    (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
    (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}


def quaternion8() -> FiniteGroup:
    """K8 = <i, j | i^2 = j^2 = u, u^2 = 1, ji = iju>.

    Element order: 1, u, i, iu, j, ju, ij, iju (u = -1, ij = k).
    """
    elements = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3), (1, 3)]

    def mul(x, y):
        s, q = _QUAT[(x[1], y[1])]
        return ((x[0] + y[0] + s) % 2, q)

    labels = ["1", "u", "i", "iu", "j", "ju", "ij", "iju"]
    return _from_elements(elements, mul, labels, "K8")


def genquaternion16() -> FiniteGroup:
    """Generalized quaternion group <a, b | a^8 = 1, b^2 = a^4, b^-1 a b = a^-1>."""
    elements = [(k, e) for e in (0, 1) for k in range(8)]

    def mul(x, y):
        (k, e), (m, f) = x, y
        if e == 0:
            return ((k + m) % 8, f)
        if f == 0:
            return ((k - m) % 8, 1)
        return ((k - m + 4) % 8, 0)

    labels = [(_power_label("a", k) + ("b" if e else "")) or "1" for k, e in elements]
    return _from_elements(elements, mul, labels, "Q16")


def elemabelian2(k: int) -> FiniteGroup:
    if k < 0:
        raise BadParams(f"rank must be nonnegative, got {k}")
    labels = ["".join(f"e{b + 1}" for b in range(k) if x >> b & 1) or "1" for x in range(2**k)]
    return _from_elements(list(range(2**k)), lambda a, b: a ^ b, labels, f"E2^{k}")


def symmetric3() -> FiniteGroup:
    """S3, realized as the dihedral group of order 6."""
    g = dihedral(3)
    return FiniteGroup(g.table, g.labels, "S3")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """A x B with element (x, y) at index x*|B| + y; labels ``x.y``."""
    nb = b.order
    ra, rb = a._rows, b._rows
    table = [
        [ra[x1][x2] * nb + rb[y1][y2] for x2 in range(a.order) for y2 in range(nb)]
        for x1 in range(a.order) for y1 in range(nb)
    ]
    labels = [
        "1" if x == 0 and y == 0 else f"{a.labels[x]}.{b.labels[y]}"
        for x in range(a.order) for y in range(nb)
    ]
    return FiniteGroup(table, labels, f"{a.name}x{b.name}")


def builtin(name: str, *params) -> FiniteGroup:
    """Build a catalog group by name.

    Names: cyclic n, dihedral n (order 2n), quaternion8, genquaternion16,
    elemabelian2 k, symmetric3, directproduct(a, b) with a, b FiniteGroups.
    """
    makers = {
        "cyclic": (cyclic, 1),
        "dihedral": (dihedral, 1),
        "quaternion8": (quaternion8, 0),
        "genquaternion16": (genquaternion16, 0),
        "elemabelian2": (elemabelian2, 1),
        "symmetric3": (symmetric3, 0),
        "directproduct": (direct_product, 2),
    }
    if name not in makers:
        raise UnknownName(f"unknown builtin group {name!r}")
    fn, arity = makers[name]
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} parameter(s), got {len(params)}")
    if name == "directproduct":
        if not all(isinstance(x, FiniteGroup) for x in params):
            raise BadParams("directproduct takes two FiniteGroups")
    elif arity and not isinstance(params[0], int):
        raise BadParams(f"{name} takes an integer parameter")
    return fn(*params)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", els)
        s = set(els)
        if 0 not in s:
            raise GroupValidationError("subgroup must contain the identity")
        rows, inv = self.parent._rows, self.parent.inv
        for a in els:
            if inv[a] not in s:
                raise GroupValidationError(f"subgroup not closed under inverse at {a}")
            ra = rows[a]
            for b in els:
                if ra[b] not in s:
                    raise GroupValidationError(f"subgroup not closed under product {a}*{b}")
        object.__setattr__(self, "_set", frozenset(els))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def labels(self) -> list[str]:
        return [self.parent.labels[g] for g in self.elements]

    def as_group(self) -> tuple[FiniteGroup, list[int]]:
        """The subgroup as a standalone FiniteGroup, plus the embedding."""
        emb = list(self.elements)
        pos = {g: k for k, g in enumerate(emb)}
        rows = self.parent._rows
        table = [[pos[rows[a][b]] for b in emb] for a in emb]
        return FiniteGroup(table, [self.parent.labels[g] for g in emb]), emb

    def __repr__(self):
        return f"<Subgroup of {self.parent.name}: {{{', '.join(self.labels())}}}>"


def generate(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [g for g in set(gens) if g != 0]
    seen = {0}
    frontier = [0]
    rows = G._rows
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = rows[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(seen))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements))


def cyclic_subgroup(G: FiniteGroup, g: int) -> Subgroup:
    return generate(G, [g])


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(G.conj(h, g) in H for h in H for g in G.elements)


def center(G: FiniteGroup) -> Subgroup:
    T = G.table
    central = np.all(T == T.T, axis=1)
    return Subgroup(G, tuple(int(g) for g in np.flatnonzero(central)))


def centralizer(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    S = list(S)
    rows = G._rows
    return Subgroup(G, tuple(g for g in G.elements if all(rows[g][s] == rows[s][g] for s in S)))


def is_abelian(G: FiniteGroup) -> bool:
    return bool(np.array_equal(G.table, G.table.T))


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


def exponent(G: FiniteGroup) -> int:
    from math import lcm

    return lcm(*(G.element_order(g) for g in G.elements))


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def is_2_group(G: FiniteGroup) -> bool:
    return _is_power_of_two(G.order)


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, list[int]]:
    """Cayley table of G/N on cosets, and the projection g -> coset index.

    Cosets are numbered by their smallest element, so the coset N is 0.
    """
    rows = G._rows
    proj = [-1] * G.order
    reps = []
    for g in G.elements:
        if proj[g] < 0:
            for n in N:
                proj[rows[g][n]] = len(reps)
            reps.append(g)
    table = [[proj[rows[a][b]] for b in reps] for a in reps]
    labels = ["1"] + [f"{G.labels[r]}N" for r in reps[1:]]
    return FiniteGroup(table, labels, f"{G.name}/N{N.order}"), proj


@dataclass
class CentralSeries:
    terms: list[Subgroup]
    nilpotency_class: int | None  # None: series stabilizes below G

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    @property
    def orders(self) -> list[int]:
        return [t.order for t in self.terms]


def upper_central_series(G: FiniteGroup) -> CentralSeries:
    """Z_0 = 1, Z_{k+1}/Z_k = Z(G/Z_k), via quotient Cayley tables."""
    Z = trivial_subgroup(G)
    terms = [Z]
    while Z.order < G.order:
        Q, proj = quotient(G, Z)
        cz = set(center(Q).elements)
        nxt = Subgroup(G, tuple(g for g in G.elements if proj[g] in cz))
        if nxt.order == Z.order:
            break
        terms.append(nxt)
        Z = nxt
    cls = len(terms) - 1 if Z.order == G.order else None
    return CentralSeries(terms, cls)


def all_subgroups_normal(G: FiniteGroup) -> bool:
    """Dedekind test: every cyclic subgroup is normal."""
    return non_normal_cyclic(G) is None


def non_normal_cyclic(G: FiniteGroup) -> tuple[int, int] | None:
    """A pair (g, x) with x^-1 g x outside <g>, or None if G is Dedekind."""
    for g in G.elements:
        C = cyclic_subgroup(G, g)
        for x in G.elements:
            if G.conj(g, x) not in C:
                return g, x
    return None


# ---------------------------------------------------------------------------
# K8 x E2 recognition


@dataclass(frozen=True)
class K8E2Decomposition:
    """G = k8 x e2 with k8 = <i, j>, u = i^2 = j^2, e2 central elementary abelian."""

    k8: Subgroup
    e2: Subgroup
    i: int
    j: int
    u: int

    def to_json(self) -> dict:
        G = self.k8.parent
        return {
            "k8": self.k8.labels(),
            "e2": self.e2.labels(),
            "i": G.labels[self.i],
            "j": G.labels[self.j],
            "u": G.labels[self.u],
        }


def _quaternion_pairs(G: FiniteGroup):
    """Pairs (i, j) of order-4 elements generating a K8, in index order."""
    fours = [g for g in G.elements if G.element_order(g) == 4]
    for a, b in itertools.combinations(fours, 2):
        u = G.mul(a, a)
        if G.mul(b, b) != u or G.mul(a, b) == G.mul(b, a):
            continue
        if G.mul(b, a) == G.mul(G.mul(a, b), u):
            yield a, b, u


def _complement(G: FiniteGroup, u: int, pool: Iterable[int]) -> Subgroup:
    """Greedy elementary abelian subgroup of ``pool`` avoiding <u>."""
    E = trivial_subgroup(G)
    span = {0, u}
    for z in pool:
        if z not in span:
            E = generate(G, list(E.elements) + [z])
            span = set(E.elements) | {G.mul(u, e) for e in E.elements}
    return E


def k8_e2_decompositions(G: FiniteGroup, pool: Iterable[int] | None = None):
    """Every K8 subgroup of G paired with a greedy complement drawn from ``pool``.

    ``pool`` defaults to the central involutions of G.  Yields
    (decomposition or None, reason) per distinct K8 subgroup.
    """
    Z = center(G)
    if pool is None:
        pool = [z for z in Z if G.mul(z, z) == 0]
    else:
        pool = [z for z in pool if z in Z and G.mul(z, z) == 0]
    seen = set()
    for i, j, u in _quaternion_pairs(G):
        k8 = generate(G, [i, j])
        if k8 in seen:
            continue
        seen.add(k8)
        E = _complement(G, u, [z for z in pool if z not in k8])
        if k8.order * E.order != G.order:
            yield None, "K8 has no central elementary abelian complement"
            continue
        yield K8E2Decomposition(k8, E, i, j, u), ""


def decompose_k8_e2(G: FiniteGroup) -> K8E2Decomposition:
    """Write G = K8 x E2; raise NotOfThisForm naming the failed condition."""
    if not _is_power_of_two(G.order) or G.order < 8:
        raise NotOfThisForm(f"order {G.order} is not a power of 2 at least 8")
    bad = [g for g in G.elements if 4 % G.element_order(g)]
    if bad:
        g = bad[0]
        raise NotOfThisForm(
            f"exponent does not divide 4: {G.labels[g]} has order {G.element_order(g)}"
        )
    reason = "no quaternion subgroup K8"
    for dec, why in k8_e2_decompositions(G):
        if dec is not None:
            _check_decomposition(G, dec)
            return dec
        reason = why
    raise NotOfThisForm(reason)


def _check_decomposition(G: FiniteGroup, dec: K8E2Decomposition) -> None:
    Z = set(center(G).elements)
    assert all(e in Z and G.mul(e, e) == 0 for e in dec.e2)
    prods = {G.mul(a, e) for a in dec.k8 for e in dec.e2}
    assert len(prods) == G.order == dec.k8.order * dec.e2.order


class K8Action(enum.Enum):
    IDENTITY = "Identity"
    CONJ_BY_I = "ConjByI"
    CONJ_BY_J = "ConjByJ"
    CONJ_BY_IJ = "ConjByIJ"
    NOT_INNER = "NotInner"


def k8_generators(k8: Subgroup) -> tuple[int, int, int]:
    """First non-commuting pair (i, j) of order-4 elements, and u = i^2."""
    G = k8.parent
    for i, j, u in _quaternion_pairs(G):
        if i in k8 and j in k8:
            return i, j, u
    raise NotOfThisForm("subgroup is not a quaternion group")


def k8_action_class(k8: Subgroup, phi: Sequence[int], i: int | None = None, j: int | None = None) -> K8Action:
    """Match an automorphism against the four inner automorphisms of K8.

    ``phi`` maps parent indices to parent indices and must restrict to an
    automorphism of ``k8``.
    """
    G = k8.parent
    image = {g: phi[g] for g in k8}
    if set(image.values()) != set(k8.elements):
        raise NotAnAutomorphism("map does not send K8 onto itself")
    for a in k8:
        for b in k8:
            if image[G.mul(a, b)] != G.mul(image[a], image[b]):
                raise NotAnAutomorphism(f"map is not multiplicative at ({a}, {b})")
    if i is None or j is None:
        i, j, _ = k8_generators(k8)
    u = G.mul(i, i)
    iu, ju = G.mul(i, u), G.mul(j, u)
    table = {
        (i, j): K8Action.IDENTITY,
        (i, ju): K8Action.CONJ_BY_I,
        (iu, ju): K8Action.CONJ_BY_IJ,
        (iu, j): K8Action.CONJ_BY_J,
    }
    return table.get((image[i], image[j]), K8Action.NOT_INNER)


# ---------------------------------------------------------------------------
# automorphisms


def conjugation_map(G: FiniteGroup, g: int) -> list[int]:
    """t -> g^-1 t g as a permutation list."""
    return [G.conj(t, g) for t in G.elements]


def inversion_map(G: FiniteGroup) -> list[int]:
    return list(G.inv)


def is_automorphism(G: FiniteGroup, perm: Sequence[int]) -> bool:
    if len(perm) != G.order or sorted(perm) != list(G.elements):
        return False
    p = np.asarray(perm)
    return bool(np.array_equal(p[G.table], G.table[np.ix_(p, p)]))


def extend_hom(G: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> list[int]:
    """Extend generator images to an automorphism of G (validated)."""
    phi = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y, fy = G.mul(x, g), G.mul(phi[x], h)
                if y in phi:
                    if phi[y] != fy:
                        raise NotAnAutomorphism("generator images violate a relation")
                else:
                    phi[y] = fy
                    nxt.append(y)
        frontier = nxt
    if len(phi) != G.order:
        raise NotAnAutomorphism("elements do not generate the group")
    perm = [phi[g] for g in G.elements]
    if not is_automorphism(G, perm):
        raise NotAnAutomorphism("extension is not a bijective homomorphism")
    return perm


# ---------------------------------------------------------------------------
# structured groups Z^k x| T


@dataclass(frozen=True)
class StructuredGroup:
    """G = Z^k x| T: free generators z_1..z_k commute pairwise and act on T.

    ``actions[j][t]`` is the index of z_j^-1 t z_j.
    """

    torsion: FiniteGroup
    free_rank: int
    actions: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        acts = tuple(tuple(int(x) for x in a) for a in self.actions)
        object.__setattr__(self, "actions", acts)
        if self.free_rank < 0:
            raise GroupValidationError("free rank must be nonnegative")
        if len(acts) != self.free_rank:
            raise GroupValidationError(f"expected {self.free_rank} actions, got {len(acts)}")
        for k, a in enumerate(acts):
            if not is_automorphism(self.torsion, a):
                raise NotAnAutomorphism(f"action {k} is not an automorphism of the torsion group")
        # commuting free generators need commuting actions modulo inner ones; we
        # require them to commute outright
        for a, b in itertools.combinations(acts, 2):
            if any(a[b[t]] != b[a[t]] for t in self.torsion.elements):
                raise GroupValidationError("actions of the free generators do not commute")


@dataclass
class ChainResult:
    """Outcome of the [T, G, ..., G] chain for a structured group."""

    status: str  # "nilpotent" | "not_hypercentral" | "indeterminate"
    chain: list[Subgroup]
    nilpotency_class: int | None = None

    @property
    def positive(self) -> bool:
        return self.status == "nilpotent"


def _g_normal_closure(S: StructuredGroup, gens: Iterable[int]) -> Subgroup:
    T = S.torsion
    H = generate(T, gens)
    while True:
        extra = None
        for h in H:
            for t in T.elements:
                y = T.conj(h, t)
                if y not in H:
                    extra = y
                    break
            if extra is None:
                for a in S.actions:
                    if a[h] not in H:
                        extra = a[h]
                        break
            if extra is not None:
                break
        if extra is None:
            return H
        H = generate(T, list(H.elements) + [extra])


def _commutator_step(S: StructuredGroup, H: Subgroup) -> Subgroup:
    """[H, G]: normal closure of [h, t] and h^-1 z_j^-1 h z_j."""
    T = S.torsion
    gens = set()
    for h in H:
        hi = T.inv[h]
        for t in T.elements:
            gens.add(T.commutator(h, t))
        for a in S.actions:
            gens.add(T.mul(hi, a[h]))
    return _g_normal_closure(S, gens)


def structured_is_hypercentral(S: StructuredGroup, max_steps: int = 64) -> ChainResult:
    """Decide nilpotency of Z^k x| T through H_0 = T, H_{m+1} = [H_m, G].

    H_m is the (m+1)-th lower central term of G for m >= 1, so G is
    nilpotent of class m exactly when H_m is the first trivial term.
    G is finitely generated, so hypercentral and nilpotent coincide.
    """
    T = S.torsion
    H = whole(T)
    chain: list[Subgroup] = []
    for _ in range(max_steps):
        if H.order == 1:
            m = len(chain)
            cls = m if m else (1 if S.free_rank else 0)
            return ChainResult("nilpotent", chain, cls)
        nxt = _commutator_step(S, H)
        if nxt == H:
            chain.append(nxt)
            return ChainResult("not_hypercentral", chain)
        chain.append(nxt)
        H = nxt
    return ChainResult("indeterminate", chain)


def torsion_commutator_chain(S: StructuredGroup, max_steps: int = 64) -> list[Subgroup]:
    """[T,G] >= [T,G,G] >= ... until the chain reaches 1 or stabilizes."""
    return structured_is_hypercentral(S, max_steps).chain


def generating_set(G: FiniteGroup) -> list[int]:
    """Greedy generating set: each element in index order not yet generated."""
    gens: list[int] = []
    H = trivial_subgroup(G)
    for g in G.elements:
        if g not in H:
            gens.append(g)
            H = generate(G, gens)
    return gens
