"""Group rings RG over the coefficient rings of :mod:`hyperunits.coeff`.

Elements are sparse maps from group indices to nonzero coefficients.
Inversion works through the left regular representation and exact linear
algebra, so it needs no unit-group theory and works uniformly over ZZ,
GF(p^n) and GF(p)(t).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .coeff import ZZ, IntegerRing
from .errors import MixedContexts, NotAUnit, OrderDivisibleByChar, ParseError, PreconditionError
from .groups import FiniteGroup


class GroupRingElement:
    __slots__ = ("group", "ring", "coeffs")

    def __init__(self, group: FiniteGroup, ring, coeffs: Mapping[int, Any] | None = None):
        self.group = group
        self.ring = ring
        clean = {}
        for g, c in (coeffs or {}).items():
            c = ring.embed(c) if isinstance(c, int) else c
            if c:
                clean[int(g)] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, group, ring, coeffs):
        obj = object.__new__(cls)
        obj.group = group
        obj.ring = ring
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, group: FiniteGroup, ring) -> GroupRingElement:
        return cls._raw(group, ring, {})

    @classmethod
    def one(cls, group: FiniteGroup, ring) -> GroupRingElement:
        return cls._raw(group, ring, {0: ring.one})

    @classmethod
    def basis(cls, group: FiniteGroup, ring, g: int) -> GroupRingElement:
        return cls._raw(group, ring, {g: ring.one})

    @classmethod
    def from_vector(cls, group: FiniteGroup, ring, vec: Sequence) -> GroupRingElement:
        return cls(group, ring, dict(enumerate(vec)))

    def coeff(self, g: int):
        return self.coeffs.get(g, self.ring.zero)

    def to_vector(self) -> list:
        return [self.coeff(g) for g in self.group.elements]

    @property
    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def _check(self, other: GroupRingElement) -> None:
        if other.group is not self.group:
            raise MixedContexts(f"elements of {self.group.name} and {other.group.name}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise MixedContexts(f"coefficients in {self.ring!r} and {other.ring!r}")

    def _lift(self, other) -> GroupRingElement | None:
        if isinstance(other, GroupRingElement):
            self._check(other)
            return other
        try:
            c = self.ring(other) if not isinstance(other, int) else self.ring.embed(other)
        except Exception:
            return None
        return GroupRingElement._raw(self.group, self.ring, {0: c} if c else {})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            self.group is other.group
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for g, c in o.coeffs.items():
            s = out[g] + c if g in out else c
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return GroupRingElement._raw(self.group, self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._raw(self.group, self.ring, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            return _convolve(self, other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _convolve(self, o)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _convolve(o, self)

    def __pow__(self, e: int):
        base = self if e >= 0 else try_invert(self)
        e = abs(e)
        out = GroupRingElement.one(self.group, self.ring)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def augmentation(self):
        return augmentation(self)

    def star(self) -> GroupRingElement:
        return star(self)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{self.ring!r}{self.group.name}: {format_element(self)}>"


def _convolve(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    rows = x.group._rows
    out: dict[int, Any] = {}
    yc = list(y.coeffs.items())
    for g, a in x.coeffs.items():
        row = rows[g]
        for h, b in yc:
            k = row[h]
            if k in out:
                out[k] = out[k] + a * b
            else:
                out[k] = a * b
    return GroupRingElement._raw(x.group, x.ring, {k: c for k, c in out.items() if c})


def gr_add(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    x._check(y)
    return x + y


def gr_mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    x._check(y)
    return x * y


def gr_neg(x: GroupRingElement) -> GroupRingElement:
    return -x


def gr_scale(c, x: GroupRingElement) -> GroupRingElement:
    c = x.ring.embed(c) if isinstance(c, int) else c
    return GroupRingElement._raw(
        x.group, x.ring, {g: c * a for g, a in x.coeffs.items() if c * a}
    )


def augmentation(x: GroupRingElement):
    total = x.ring.zero
    for c in x.coeffs.values():
        total = total + c
    return total


def star(x: GroupRingElement) -> GroupRingElement:
    """sum a_g g -> sum a_g g^-1"""
    inv = x.group.inv
    return GroupRingElement._raw(x.group, x.ring, {inv[g]: c for g, c in x.coeffs.items()})


def conj(x: GroupRingElement, g: int) -> GroupRingElement:
    """g^-1 x g"""
    G = x.group
    return GroupRingElement._raw(G, x.ring, {G.conj(h, g): c for h, c in x.coeffs.items()})


def commutator(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    """u^-1 v^-1 u v"""
    return try_invert(u) * try_invert(v) * u * v


def is_trivial_unit(x: GroupRingElement) -> bool:
    """True iff x = c*g with c a unit of the coefficient ring."""
    if len(x.coeffs) != 1:
        return False
    (c,) = x.coeffs.values()
    return x.ring.is_unit(c)


# ---------------------------------------------------------------------------
# matrices


class SquareMatrix:
    """Dense square matrix over a coefficient ring (rows of ring elements)."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise PreconditionError("matrix is not square")
        self.ring = ring
        self.rows = rows

    @classmethod
    def identity(cls, ring, n: int) -> SquareMatrix:
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, SquareMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __matmul__(self, other: SquareMatrix) -> SquareMatrix:
        n = self.n
        cols = list(zip(*other.rows))
        zero = self.ring.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return SquareMatrix(self.ring, out)

    def _field_rows(self) -> list[list]:
        if isinstance(self.ring, IntegerRing):
            return [[Fraction(x) for x in r] for r in self.rows]
        return [list(r) for r in self.rows]

    def det(self):
        """Determinant; fraction-free (Bareiss) over the integers."""
        if isinstance(self.ring, IntegerRing):
            return bareiss_det([list(r) for r in self.rows])
        m = self._field_rows()
        n = len(m)
        d = self.ring.one
        for k in range(n):
            piv = next((r for r in range(k, n) if m[r][k]), None)
            if piv is None:
                return self.ring.zero
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                d = -d
            d = d * m[k][k]
            inv = 1 / m[k][k] if isinstance(m[k][k], Fraction) else m[k][k].inverse()
            for r in range(k + 1, n):
                if m[r][k]:
                    f = m[r][k] * inv
                    m[r] = [a - f * b for a, b in zip(m[r], m[k])]
        return d

    def rank(self) -> int:
        m = self._field_rows()
        n = len(m)
        rank = 0
        for c in range(n):
            piv = next((r for r in range(rank, n) if m[r][c]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = _inverse(m[rank][c])
            for r in range(rank + 1, n):
                if m[r][c]:
                    f = m[r][c] * inv
                    m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
            rank += 1
        return rank

    def solve(self, rhs: Sequence) -> list | None:
        """Solve M v = rhs exactly; None when M is singular.

        Integer matrices are solved over the rationals.
        """
        m = self._field_rows()
        b = [Fraction(x) for x in rhs] if isinstance(self.ring, IntegerRing) else list(rhs)
        n = len(m)
        for k in range(n):
            piv = next((r for r in range(k, n) if m[r][k]), None)
            if piv is None:
                return None
            m[k], m[piv] = m[piv], m[k]
            b[k], b[piv] = b[piv], b[k]
            inv = _inverse(m[k][k])
            m[k] = [a * inv for a in m[k]]
            b[k] = b[k] * inv
            for r in range(n):
                if r != k and m[r][k]:
                    f = m[r][k]
                    m[r] = [a - f * c for a, c in zip(m[r], m[k])]
                    b[r] = b[r] - f * b[k]
        return b


def _inverse(x):
    return 1 / x if isinstance(x, Fraction) else x.inverse()


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination determinant of an integer matrix."""
    m = [list(r) for r in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def regular_rep(x: GroupRingElement) -> SquareMatrix:
    """Matrix of y -> x*y in the group-element basis: column h holds x*h."""
    G, ring = x.group, x.ring
    n = G.order
    rows = [[ring.zero] * n for _ in range(n)]
    for g, a in x.coeffs.items():
        rg = G._rows[g]
        for h in G.elements:
            k = rg[h]
            rows[k][h] = rows[k][h] + a
    return SquareMatrix(ring, rows)


def try_invert(x: GroupRingElement) -> GroupRingElement:
    """Two-sided inverse of x, or NotAUnit.

    Over ZZ, a unit needs det(regular_rep(x)) = +-1; the rational solution
    must then be integral.
    """
    G, ring = x.group, x.ring
    M = regular_rep(x)
    integral = isinstance(ring, IntegerRing)
    if integral and M.det() not in (1, -1):
        raise NotAUnit(f"{format_element(x)} is not a unit (determinant is not +-1)")
    e0 = [ring.one] + [ring.zero] * (G.order - 1)
    v = M.solve(e0)
    if v is None:
        raise NotAUnit(f"{format_element(x)} is not a unit (singular)")
    if integral:
        if any(c.denominator != 1 for c in v):
            raise NotAUnit(f"{format_element(x)} has no integral inverse")
        v = [int(c) for c in v]
    y = GroupRingElement.from_vector(G, ring, v)
    one = GroupRingElement.one(G, ring)
    if x * y != one or y * x != one:
        raise NotAUnit(f"{format_element(x)} has only a one-sided inverse")
    return y


def is_unit(x: GroupRingElement) -> bool:
    try:
        try_invert(x)
    except NotAUnit:
        return False
    return True


def hat_idempotent(G: FiniteGroup, g: int, ring) -> GroupRingElement:
    """e = o(g)^-1 (1 + g + ... + g^(o(g)-1)), an idempotent of augmentation 1."""
    if ring.characteristic == 0:
        raise PreconditionError("idempotents with rational denominators are not supported over ZZ")
    o = G.element_order(g)
    if o % ring.characteristic == 0:
        raise OrderDivisibleByChar(f"characteristic {ring.characteristic} divides o(g) = {o}")
    c = ring.one / ring.embed(o)
    coeffs = {}
    x = 0
    for _ in range(o):
        coeffs[x] = c
        x = G.mul(x, g)
    return GroupRingElement(G, ring, coeffs)


# ---------------------------------------------------------------------------
# text format:  coeff*label +/- ...   e.g. "1 - g + g^4", "(t+1)*g + 1"


def _needs_parens(s: str) -> bool:
    return any(ch in s for ch in "+-/* ") and not (s.startswith("(") and s.endswith(")") and s.count("(") == 1)


def format_element(x: GroupRingElement) -> str:
    if not x.coeffs:
        return "0"
    signed = isinstance(x.ring, IntegerRing)
    parts = []
    for g in sorted(x.coeffs):
        c = x.coeffs[g]
        neg = signed and c < 0
        a = -c if neg else c
        label = x.group.labels[g]
        text = x.ring.format(a)
        if g == 0:
            term = f"({text})" if len(x.coeffs) > 1 and _needs_parens(text) else text
        elif text == "1":
            term = label
        else:
            term = f"({text})*{label}" if _needs_parens(text) else f"{text}*{label}"
        if parts:
            parts.append(("- " if neg else "+ ") + term)
        else:
            parts.append(("-" if neg else "") + term)
    return " ".join(parts)


def _split_terms(text: str) -> list[tuple[int, str, int]]:
    """Split at top-level + and -; returns (sign, term, position)."""
    out = []
    depth, start, sign = 0, 0, 1
    s = text
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", k)
        elif ch in "+-" and depth == 0:
            prev = s[:k].rstrip()
            if prev.endswith("^") or prev.endswith("*"):
                continue
            term = s[start:k].strip()
            if term:
                out.append((sign, term, start))
            elif k > 0 and s[:k].strip():
                raise ParseError("empty term", k)
            sign = -1 if ch == "-" else 1
            start = k + 1
    if depth:
        raise ParseError("unbalanced '('", len(s))
    term = s[start:].strip()
    if not term:
        raise ParseError("expression ends with an operator", len(s))
    out.append((sign, term, start))
    return out


def _split_coeff(term: str) -> tuple[str | None, str]:
    depth = 0
    for k in range(len(term) - 1, -1, -1):
        ch = term[k]
        if ch == ")":
            depth += 1
        elif ch == "(":
            depth -= 1
        elif ch == "*" and depth == 0:
            return term[:k].strip(), term[k + 1:].strip()
    return None, term


def parse_element(text: str, group: FiniteGroup, ring) -> GroupRingElement:
    """Inverse of :func:`format_element`."""
    if not text.strip():
        raise ParseError("empty element")
    if text.strip() == "0":
        return GroupRingElement.zero(group, ring)
    total = GroupRingElement.zero(group, ring)
    for sign, term, pos in _split_terms(text):
        coeff_text, rest = _split_coeff(term)
        if coeff_text is not None and group.has_label(rest):
            g = group.index(rest)
            try:
                c = ring.parse(coeff_text)
            except ParseError as e:
                raise ParseError(f"bad coefficient {coeff_text!r}: {e}", pos) from None
        elif group.has_label(term):
            g, c = group.index(term), ring.one
        else:
            g = 0
            try:
                c = ring.parse(term)
            except ParseError as e:
                if coeff_text is not None:
                    raise ParseError(f"{rest!r} is not an element of {group.name}", pos) from None
                raise ParseError(f"bad term {term!r}: {e}", pos) from None
        if sign < 0:
            c = -c
        total = total + GroupRingElement(group, ring, {g: c})
    return total


def elements_from(group: FiniteGroup, ring, vectors: Iterable[Sequence]) -> list[GroupRingElement]:
    return [GroupRingElement.from_vector(group, ring, v) for v in vectors]
