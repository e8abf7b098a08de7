"""Exact coefficient rings: the integers, finite fields GF(p^n) and GF(p)(t).

Every ring context exposes the same small surface used by the group-ring
layer: ``zero``, ``one``, ``embed(int)``, ``characteristic``, ``is_field``,
``is_unit(x)``, ``parse(text)`` and ``format(x)``.  Elements are immutable
and support the usual arithmetic operators; ``bool(x)`` is the nonzero test.

Polynomials over GF(p) are tuples of residues in ascending degree with no
trailing zeros, so the zero polynomial is ``()``.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    BudgetExceeded,
    DivisionByZero,
    MixedContexts,
    NotPrime,
    ParseError,
    PreconditionError,
    ZeroDenominator,
)

#: Largest field order ff_make will construct.
FIELD_ORDER_LIMIT = 2**20

# log/exp tables are built lazily for fields up to this order
_TABLE_LIMIT = 2**12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over GF(p) as coefficient tuples


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return _trim(c)


def poly_neg(a, p):
    return tuple((-x) % p for x in a)


def poly_sub(a, b, p):
    return poly_add(a, poly_neg(b, p), p)


def poly_scale(a, s, p):
    s %= p
    if s == 0:
        return ()
    return tuple(x * s % p for x in a)


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _trim([x % p for x in c])


def poly_divmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    if len(r) <= db:
        return (), _trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv_lead % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return _trim(q), _trim(r[:db])


def poly_monic(a, p):
    if not a:
        return a
    return poly_scale(a, pow(a[-1], p - 2, p), p)


def poly_gcd(a, b, p):
    """Monic gcd (the gcd of two zero polynomials is zero)."""
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    return poly_monic(a, p)


def poly_xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g and g the monic gcd."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    if not r0:
        return (), (), ()
    k = pow(r0[-1], p - 2, p)
    return poly_scale(r0, k, p), poly_scale(s0, k, p), poly_scale(t0, k, p)


def poly_powmod(a, e, m, p):
    result = (1,)
    base = poly_divmod(a, m, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), m, p)[1]
        base = poly_divmod(poly_mul(base, base, p), m, p)[1]
        e >>= 1
    return poly_divmod(result, m, p)[1]


def is_irreducible(f, p) -> bool:
    """Irreducibility over GF(p): no factor of degree <= deg(f)/2.

    Uses gcd(x^(p^i) - x, f) = 1 for i = 1..deg(f)//2.
    """
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    h = x
    for _ in range(n // 2):
        h = poly_powmod(h, p, f, p)
        if len(poly_gcd(poly_sub(h, x, p), f, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n over GF(p).

    Candidates x^n + c_{n-1}x^{n-1} + ... + c_0 are ranked by the integer
    sum(c_i p^i), i.e. lexicographically on (c_{n-1}, ..., c_0).
    """
    for code in range(p**n):
        digits = []
        for _ in range(n):
            code, d = divmod(code, p)
            digits.append(d)
        f = tuple(digits) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible of degree {n} over GF({p})")


_TERM_RE = re.compile(r"\s*([+-]?)\s*(\d*)\s*(\*?)\s*([A-Za-z]?)\s*(?:\^\s*(\d+))?\s*")


def parse_poly(text: str, var: str, p: int) -> tuple[int, ...]:
    """Parse ``"t^2 + 2*t + 1"``-style text into a coefficient tuple mod p."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        sign, num, star, sym, exp = m.groups()
        if m.end() == pos or (not num and not sym):
            raise ParseError(f"cannot parse polynomial {text!r}", pos)
        if not first and not sign:
            raise ParseError(f"expected '+' or '-' in {text!r}", pos)
        if sym and sym != var:
            raise ParseError(f"unknown variable {sym!r} (expected {var!r})", pos)
        if star and not (num and sym):
            raise ParseError(f"misplaced '*' in {text!r}", pos)
        if exp and not sym:
            raise ParseError(f"exponent without variable in {text!r}", pos)
        c = int(num) if num else 1
        deg = (int(exp) if exp else 1) if sym else 0
        if sign == "-":
            c = -c
        coeffs[deg] = coeffs.get(deg, 0) + c
        pos = m.end()
        first = False
    top = max(coeffs)
    return _trim([coeffs.get(i, 0) % p for i in range(top + 1)])


def format_poly(c: Sequence[int], var: str) -> str:
    if not c:
        return "0"
    parts = []
    for deg in range(len(c) - 1, -1, -1):
        a = c[deg]
        if not a:
            continue
        if deg == 0:
            term = str(a)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            term = mono if a == 1 else f"{a}*{mono}"
        parts.append(term)
    return "+".join(parts)


class Poly:
    """Polynomial over GF(p), ascending coefficients, no trailing zeros."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int] = ()):
        self.p = p
        self.coeffs = _trim([int(c) % p for c in coeffs])

    @classmethod
    def _raw(cls, p, coeffs):
        obj = object.__new__(cls)
        obj.p = p
        obj.coeffs = coeffs
        return obj

    @classmethod
    def x(cls, p: int) -> Poly:
        return cls._raw(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def monic(self) -> Poly:
        return Poly._raw(self.p, poly_monic(self.coeffs, self.p))

    def _other(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise MixedContexts(f"GF({self.p})[t] vs GF({other.p})[t]")
            return other.coeffs
        if isinstance(other, int):
            return _trim([other % self.p])
        return None

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.p, self.coeffs))

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly._raw(self.p, poly_add(self.coeffs, o, self.p))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.p, poly_neg(self.coeffs, self.p))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly._raw(self.p, poly_sub(self.coeffs, o, self.p))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly._raw(self.p, poly_mul(self.coeffs, o, self.p))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        q, r = poly_divmod(self.coeffs, o, self.p)
        return Poly._raw(self.p, q), Poly._raw(self.p, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise PreconditionError("negative power of a polynomial")
        out = (1,)
        base = self.coeffs
        while e:
            if e & 1:
                out = poly_mul(out, base, self.p)
            base = poly_mul(base, base, self.p)
            e >>= 1
        return Poly._raw(self.p, _trim(list(out)))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def gcd(self, other: Poly) -> Poly:
        return Poly._raw(self.p, poly_gcd(self.coeffs, self._other(other), self.p))

    def format(self, var: str = "t") -> str:
        return format_poly(self.coeffs, var)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.p}, {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# the integers


class IntegerRing:
    """The ring of integers; elements are plain Python ints."""

    characteristic = 0
    is_field = False
    is_finite = False
    zero = 0
    one = 1

    def embed(self, n: int) -> int:
        return int(n)

    __call__ = embed

    def is_unit(self, x: int) -> bool:
        return x in (1, -1)

    def format(self, x: int) -> str:
        return str(x)

    def parse(self, text: str) -> int:
        try:
            return int(_unwrap(text))
        except ValueError:
            raise ParseError(f"not an integer: {text!r}") from None

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def __repr__(self):
        return "ZZ"


ZZ = IntegerRing()


# ---------------------------------------------------------------------------
# finite fields


class FiniteField:
    """GF(p^n) = GF(p)[x]/(modulus).  Build instances with :func:`ff_make`.

    Elements are stored as integer codes sum(c_i p^i) of their coefficient
    vectors.  Multiplication goes through log/exp tables for small fields
    and through polynomial reduction otherwise.
    """

    is_field = True
    is_finite = True

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.modulus = modulus
        self.order = p**n
        self.characteristic = p
        self._log: list[int] | None = None
        self._exp: list[int] | None = None
        self.zero = FFElement(self, 0)
        self.one = FFElement(self, 1)

    # -- codes <-> coefficient vectors
    def _digits(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.n):
            code, d = divmod(code, p)
            out.append(d)
        return out

    def _code(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    # -- arithmetic on codes
    def _add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * scale
            scale *= p
        return out

    def _neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        return self._code([(-d) % self.p for d in self._digits(a)])

    def _mul_slow(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        prod = poly_mul(_trim(self._digits(a)), _trim(self._digits(b)), self.p)
        return self._code(poly_divmod(prod, self.modulus, self.p)[1])

    def _build_tables(self):
        q = self.order
        g = self._primitive_code()
        exp = [1] * (q - 1)
        for k in range(1, q - 1):
            exp[k] = self._mul_slow(exp[k - 1], g)
        log = [0] * q
        for k, v in enumerate(exp):
            log[v] = k
        self._exp, self._log = exp, log

    def _pow_slow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._mul_slow(out, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return out

    def _primitive_code(self) -> int:
        q = self.order
        if q == 2:
            return 1
        factors = prime_factors(q - 1)
        for c in range(2, q):
            if all(self._pow_slow(c, (q - 1) // r) != 1 for r in factors):
                return c
        raise AssertionError("multiplicative group is not cyclic")

    def _mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.n == 1:
            return a * b % self.p
        if self.order <= _TABLE_LIMIT:
            if self._log is None:
                self._build_tables()
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_slow(a, b)

    def _inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        g, s, _ = poly_xgcd(_trim(self._digits(a)), self.modulus, self.p)
        assert g == (1,)
        return self._code(list(s) + [0] * (self.n - len(s)))

    # -- public surface
    @property
    def gen(self) -> FFElement:
        """Class of x modulo the defining polynomial."""
        return self.from_coeffs([0, 1])

    def embed(self, n: int) -> FFElement:
        return FFElement(self, int(n) % self.p)

    def from_coeffs(self, coeffs: Sequence[int]) -> FFElement:
        c = _trim([int(x) % self.p for x in coeffs])
        if len(c) > self.n:
            c = poly_divmod(c, self.modulus, self.p)[1]
        return FFElement(self, self._code(c))

    def from_code(self, code: int) -> FFElement:
        if not 0 <= code < self.order:
            raise PreconditionError(f"code {code} out of range for {self}")
        return FFElement(self, code)

    def __call__(self, value) -> FFElement:
        if isinstance(value, FFElement):
            if value.field != self:
                raise MixedContexts(f"{value.field} element used in {self}")
            return value
        if isinstance(value, int):
            return self.embed(value)
        return self.from_coeffs(value)

    def elements(self) -> Iterator[FFElement]:
        for code in range(self.order):
            yield FFElement(self, code)

    def is_unit(self, x: FFElement) -> bool:
        return bool(x)

    @property
    def descriptor(self) -> FieldDescriptor:
        return FieldDescriptor.finite(self.p, self.n)

    def format(self, x: FFElement) -> str:
        return format_poly(_trim(self._digits(x.code)), "a")

    def parse(self, text: str) -> FFElement:
        return self.from_coeffs(parse_poly(_unwrap(text), "a", self.p))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash(("GF", self.p, self.n))

    def __repr__(self):
        return f"GF({self.p})" if self.n == 1 else f"GF({self.p}^{self.n})"


class FFElement:
    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Length-n coefficient vector over GF(p), ascending powers of x."""
        return tuple(self.field._digits(self.code))

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                raise MixedContexts(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.code == other.code and self.field == other.field
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.code))

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._add(self.code, o))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.field, self.field._neg(self.code))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._add(self.code, self.field._neg(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._mul(self.code, o))

    __rmul__ = __mul__

    def inverse(self) -> FFElement:
        return FFElement(self.field, self.field._inv(self.code))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._mul(self.code, self.field._inv(o)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = self.field.one
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self):
        return self.field.format(self)

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self)})"


@functools.lru_cache(maxsize=None)
def ff_make(p: int, n: int = 1) -> FiniteField:
    """The field GF(p^n) with the smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise PreconditionError(f"extension degree must be positive, got {n}")
    if p**n > FIELD_ORDER_LIMIT:
        raise BudgetExceeded(f"GF({p}^{n}) exceeds the field-order limit {FIELD_ORDER_LIMIT}")
    return FiniteField(p, n, smallest_irreducible(p, n))


def ff_add(a: FFElement, b: FFElement) -> FFElement:
    return a + b


def ff_mul(a: FFElement, b: FFElement) -> FFElement:
    return a * b


def ff_inv(a: FFElement) -> FFElement:
    return a.inverse()


def ff_pow(a: FFElement, e: int) -> FFElement:
    return a**e


# ---------------------------------------------------------------------------
# the rational function field GF(p)(t)

_ONE = (1,)


class RatFunc:
    """Element num/den of GF(p)(t) in canonical form.

    Canonical: gcd(num, den) = 1 and den monic, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly._raw(num.p, _ONE)
        c = rf_normalize(num, den)
        self.num, self.den = c.num, c.den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> RatFunc:
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @property
    def p(self) -> int:
        return self.num.p

    @property
    def field(self) -> RationalFunctionField:
        return RationalFunctionField(self.p)

    def is_polynomial(self) -> bool:
        return self.den.coeffs == _ONE

    def _other(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise MixedContexts(f"GF({self.p})(t) vs GF({other.p})(t)")
            return other
        if isinstance(other, int):
            return RatFunc._raw(Poly(self.p, [other]), Poly._raw(self.p, _ONE))
        if isinstance(other, Poly):
            if other.p != self.p:
                raise MixedContexts(f"GF({self.p})(t) vs GF({other.p})[t]")
            return RatFunc._raw(other, Poly._raw(self.p, _ONE))
        return None

    def __bool__(self):
        return bool(self.num.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return rf_add(self, o)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return rf_add(self, -o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return rf_mul(self, o)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        return rf_inv(self)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return rf_mul(self, rf_inv(o))

    def __rtruediv__(self, other):
        return rf_mul(rf_inv(self), self._other(other))

    def __pow__(self, e: int):
        if e < 0:
            return rf_inv(self) ** (-e)
        return RatFunc._raw(self.num**e, self.den**e)

    def format(self, var: str = "t") -> str:
        if self.is_polynomial():
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc[{self.p}]({self.format()})"


def rf_normalize(num: Poly, den: Poly) -> RatFunc:
    """Reduce num/den by their gcd and make the denominator monic."""
    if not den:
        raise ZeroDenominator("rational function with zero denominator")
    p = den.p
    if num.p != p:
        raise MixedContexts(f"GF({num.p})[t] vs GF({p})[t]")
    if not num:
        return RatFunc._raw(num, Poly._raw(p, _ONE))
    n, d = num.coeffs, den.coeffs
    g = poly_gcd(n, d, p)
    if g != _ONE:
        n = poly_divmod(n, g, p)[0]
        d = poly_divmod(d, g, p)[0]
    if d[-1] != 1:
        k = pow(d[-1], p - 2, p)
        n, d = poly_scale(n, k, p), poly_scale(d, k, p)
    return RatFunc._raw(Poly._raw(p, n), Poly._raw(p, d))


def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    p = a.p
    if a.den.coeffs == b.den.coeffs:
        num = poly_add(a.num.coeffs, b.num.coeffs, p)
        if a.den.coeffs == _ONE:
            return RatFunc._raw(Poly._raw(p, num), a.den)
        return rf_normalize(Poly._raw(p, num), a.den)
    num = poly_add(
        poly_mul(a.num.coeffs, b.den.coeffs, p), poly_mul(b.num.coeffs, a.den.coeffs, p), p
    )
    den = poly_mul(a.den.coeffs, b.den.coeffs, p)
    return rf_normalize(Poly._raw(p, num), Poly._raw(p, den))


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    p = a.p
    num = poly_mul(a.num.coeffs, b.num.coeffs, p)
    if a.den.coeffs == _ONE and b.den.coeffs == _ONE:
        return RatFunc._raw(Poly._raw(p, num), a.den)
    den = poly_mul(a.den.coeffs, b.den.coeffs, p)
    return rf_normalize(Poly._raw(p, num), Poly._raw(p, den))


def rf_inv(a: RatFunc) -> RatFunc:
    if not a:
        raise DivisionByZero("inverse of zero rational function")
    return rf_normalize(a.den, a.num)


@dataclass(frozen=True)
class RationalFunctionField:
    """GF(p)(t), a field of transcendence degree one over GF(p)."""

    p: int

    is_field = True
    is_finite = False

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> RatFunc:
        return RatFunc._raw(Poly._raw(self.p, ()), Poly._raw(self.p, _ONE))

    @property
    def one(self) -> RatFunc:
        return self.embed(1)

    @property
    def t(self) -> RatFunc:
        return RatFunc._raw(Poly.x(self.p), Poly._raw(self.p, _ONE))

    def embed(self, n: int) -> RatFunc:
        return RatFunc._raw(Poly(self.p, [n]), Poly._raw(self.p, _ONE))

    def __call__(self, value) -> RatFunc:
        if isinstance(value, RatFunc):
            if value.p != self.p:
                raise MixedContexts(f"GF({value.p})(t) element used in {self}")
            return value
        if isinstance(value, int):
            return self.embed(value)
        if isinstance(value, Poly):
            return RatFunc(value)
        raise TypeError(f"cannot convert {value!r} into {self}")

    def is_unit(self, x: RatFunc) -> bool:
        return bool(x)

    @property
    def descriptor(self) -> FieldDescriptor:
        return FieldDescriptor.function_field(self.p)

    def format(self, x: RatFunc) -> str:
        return x.format()

    def parse(self, text: str) -> RatFunc:
        s = _unwrap(text)
        depth, split = 0, None
        for k, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                split = k
        if split is None:
            return RatFunc(Poly(self.p, parse_poly(_unwrap(s), "t", self.p)))
        num = parse_poly(_unwrap(s[:split]), "t", self.p)
        den = parse_poly(_unwrap(s[split + 1:]), "t", self.p)
        return rf_normalize(Poly(self.p, num), Poly(self.p, den))

    def __repr__(self):
        return f"GF({self.p})(t)"


def _unwrap(s: str) -> str:
    """Strip redundant outer parentheses."""
    s = s.strip()
    while s.startswith("(") and s.endswith(")") and _closing_paren(s, 0) == len(s) - 1:
        s = s[1:-1].strip()
    return s


def _closing_paren(s: str, start: int) -> int:
    depth = 0
    for k in range(start, len(s)):
        if s[k] == "(":
            depth += 1
        elif s[k] == ")":
            depth -= 1
            if depth == 0:
                return k
    raise ParseError("unbalanced '('", start)


# ---------------------------------------------------------------------------
# field descriptors

FINITE, FUNCTION_FIELD, ALGEBRAIC_INFINITE = "finite", "function_field", "algebraic_infinite"


@dataclass(frozen=True)
class FieldDescriptor:
    """A field of positive characteristic, described by kind and prime.

    ``algebraic_infinite`` fields (e.g. the algebraic closure of GF(p)) carry
    traits only; they have no element arithmetic.
    """

    kind: str
    p: int
    n: int = 1

    def __post_init__(self):
        if self.kind not in (FINITE, FUNCTION_FIELD, ALGEBRAIC_INFINITE):
            raise PreconditionError(f"unknown field kind {self.kind!r}")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.n < 1 or (self.kind != FINITE and self.n != 1):
            raise PreconditionError(f"bad extension degree {self.n} for {self.kind}")

    @classmethod
    def finite(cls, p: int, n: int = 1) -> FieldDescriptor:
        return cls(FINITE, p, n)

    @classmethod
    def function_field(cls, p: int) -> FieldDescriptor:
        return cls(FUNCTION_FIELD, p)

    @classmethod
    def algebraic_infinite(cls, p: int) -> FieldDescriptor:
        return cls(ALGEBRAIC_INFINITE, p)

    def realize(self):
        """The ring context for element arithmetic."""
        if self.kind == FINITE:
            return ff_make(self.p, self.n)
        if self.kind == FUNCTION_FIELD:
            return RationalFunctionField(self.p)
        raise PreconditionError(f"{self} has no element arithmetic")

    def __str__(self):
        if self.kind == FINITE:
            return f"GF({self.p})" if self.n == 1 else f"GF({self.p}^{self.n})"
        if self.kind == FUNCTION_FIELD:
            return f"GF({self.p})(t)"
        return f"algcl({self.p})"


@dataclass(frozen=True)
class FieldTraits:
    is_finite: bool
    is_algebraic_over_prime: bool
    tr_deg: int
    char: int


def field_traits(d: FieldDescriptor) -> FieldTraits:
    if d.kind == FINITE:
        return FieldTraits(True, True, 0, d.p)
    if d.kind == FUNCTION_FIELD:
        return FieldTraits(False, False, 1, d.p)
    return FieldTraits(False, True, 0, d.p)
