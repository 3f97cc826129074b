"""The skew polynomial ring R = k[x; alpha, delta].

Multiplication follows the commutation rule ``x*a = alpha(a)*x + delta(a)``.
Coefficients are written on the left: ``a_0 + a_1*x + ... + a_m*x^m``.
"""

from dataclasses import dataclass
import re

from .errors import DivisionByZero, DivisionByZeroPoly, MixedContexts, ParseError
from .field import FieldDescriptor, FieldElement
from .parsing import parse_expression


class _Bottom:
    """deg(0): absorbing under addition, below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


@dataclass(frozen=True)
class OreRing:
    """Ring context: a twisted coefficient field and an indeterminate name."""

    field: FieldDescriptor
    name: str = "x"

    def __post_init__(self):
        if not self.name or not re.fullmatch(r"[^\W\d][\w']*|∂", self.name):
            raise ValueError(f"invalid indeterminate name {self.name!r}")
        if self.name == self.field.variable:
            raise ValueError("indeterminate name clashes with the field variable")

    def __call__(self, value) -> "OrePoly":
        """Constant polynomial from a scalar or field element."""
        if isinstance(value, OrePoly):
            if value.ring != self:
                raise MixedContexts(f"{value.ring} vs {self}")
            return value
        return OrePoly.from_payloads(self, (self.field(value).value,))

    @property
    def zero(self) -> "OrePoly":
        return OrePoly(self, ())

    @property
    def one(self) -> "OrePoly":
        return self(1)

    def gen(self) -> "OrePoly":
        f = self.field
        return OrePoly.from_payloads(self, (f.zero.value, f.one.value))

    def from_coeffs(self, coeffs) -> "OrePoly":
        return OrePoly(self, [self.field(c) for c in coeffs])

    def parse(self, text: str) -> "OrePoly":
        return parse_expression(text, _OreAlgebra(self))

    def __str__(self):
        return f"{self.field}[{self.name}]"


class OrePoly:
    """An element of R.  Immutable; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("ring", "_c")

    def __init__(self, ring: OreRing, coeffs=()):
        f = ring.field
        payloads = []
        for c in coeffs:
            if not isinstance(c, FieldElement):
                c = f(c)
            elif c.field is not f and c.field != f:
                raise MixedContexts(f"coefficient from {c.field} in {ring}")
            payloads.append(c.value)
        self.ring = ring
        self._c = _trim(f, payloads)

    @classmethod
    def from_payloads(cls, ring: OreRing, payloads) -> "OrePoly":
        obj = object.__new__(cls)
        obj.ring = ring
        obj._c = _trim(ring.field, list(payloads))
        return obj

    @property
    def coeffs(self) -> tuple:
        f = self.ring.field
        return tuple(FieldElement(f, c) for c in self._c)

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else BOTTOM

    def leading_coefficient(self) -> FieldElement:
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElement(self.ring.field, self._c[-1])

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def _same(self, other):
        if isinstance(other, OrePoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedContexts(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, FieldElement)) or hasattr(other, "denominator"):
            return self.ring(other)
        return None

    def __add__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return OrePoly.from_payloads(self.ring, _add(self.ring.field, self._c, other._c))

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return OrePoly.from_payloads(self.ring, [f._neg(c) for c in self._c])

    def __sub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return OrePoly.from_payloads(self.ring, _mul(self.ring.field, self._c, other._c))

    def __rmul__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of an Ore polynomial")
        result = self.ring.one
        for _ in range(e):
            result = result * self
        return result

    def left_scale(self, a: FieldElement) -> "OrePoly":
        """a * self for a field element a."""
        f = self.ring.field
        av = self.ring.field(a).value
        return OrePoly.from_payloads(self.ring, [f._mul(av, c) for c in self._c])

    def right_scale(self, a: FieldElement) -> "OrePoly":
        return self * self.ring(a)

    def shift(self) -> "OrePoly":
        """x * self."""
        return OrePoly.from_payloads(self.ring, _shift(self.ring.field, self._c))

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.ring == other.ring and self._c == other._c
        if isinstance(other, (int, FieldElement)):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.name, self._c))

    def __str__(self):
        f = self.ring.field
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if f._is_zero(c):
                continue
            text = f._render(c)
            mono = "" if i == 0 else (self.ring.name if i == 1 else f"{self.ring.name}^{i}")
            if not mono:
                terms.append(text if _is_atomic(text) else f"({text})")
            elif text == "1":
                terms.append(mono)
            else:
                terms.append(f"{text}*{mono}" if _is_atomic(text) else f"({text})*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"OrePoly({self})"


def _is_atomic(text: str) -> bool:
    return not any(ch in text for ch in "+-/ ")


def _trim(f, payloads):
    while payloads and f._is_zero(payloads[-1]):
        payloads.pop()
    return tuple(payloads)


def _add(f, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = [f._add(x, y) for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return out


def _shift(f, c):
    """Coefficients of x * (sum c_m x^m) = sum alpha(c_m) x^(m+1) + delta(c_m) x^m."""
    if not c:
        return []
    out = [None] * (len(c) + 1)
    out[0] = f._from_scalar(0)
    for m, a in enumerate(c):
        out[m + 1] = f._alpha(a)
    if f.delta != "zero":
        for m, a in enumerate(c):
            out[m] = f._add(out[m], f._delta(a))
    return out


def _mul(f, a, b):
    if not a or not b:
        return []
    out = []
    term = list(b)
    for i, ai in enumerate(a):
        if not f._is_zero(ai):
            scaled = [f._mul(ai, c) for c in term]
            out = _add(f, out, scaled)
        if i + 1 < len(a):
            term = _shift(f, term)
    return out


# -- operation-style API --------------------------------------------------------

def poly_add(p: OrePoly, q: OrePoly) -> OrePoly:
    if p.ring != q.ring:
        raise MixedContexts(f"{p.ring} vs {q.ring}")
    return p + q


def poly_mul(p: OrePoly, q: OrePoly) -> OrePoly:
    if p.ring != q.ring:
        raise MixedContexts(f"{p.ring} vs {q.ring}")
    return p * q


def poly_degree(p: OrePoly):
    """Degree of p, or BOTTOM for the zero polynomial."""
    return p.degree


def left_divmod(b: OrePoly, a: OrePoly):
    """Return (q, r) with b = q*a + r and r = 0 or deg r < deg a."""
    if b.ring != a.ring:
        raise MixedContexts(f"{b.ring} vs {a.ring}")
    if not a:
        raise DivisionByZeroPoly("left division by the zero polynomial")
    ring = a.ring
    f = ring.field
    m = len(a._c) - 1
    lead_inv = {}
    q = {}
    r = list(b._c)
    while len(r) - 1 >= m:
        s = len(r) - 1 - m
        if s not in lead_inv:
            t = a._c[-1]
            for _ in range(s):
                t = f._alpha(t)
            lead_inv[s] = f._inv(t)
        c = f._mul(r[-1], lead_inv[s])
        q[s] = c
        # c * x^s * a
        term = list(a._c)
        for _ in range(s):
            term = _shift(f, term)
        sub = [f._neg(f._mul(c, t)) for t in term]
        r = list(_trim(f, _add(f, r, sub)))
        if len(r) - 1 == s + m:
            # cannot happen in a field; guards against a broken twist
            raise ArithmeticError("leading term failed to cancel")
    zero = f._from_scalar(0)
    qc = [q.get(i, zero) for i in range(max(q) + 1)] if q else []
    return OrePoly.from_payloads(ring, qc), OrePoly.from_payloads(ring, r)


def left_pseudo_divmod(b: OrePoly, a: OrePoly):
    """Fraction-free left division over a rational function field.

    For a, b with polynomial coefficients returns ``(u, q, r)`` with u a
    nonzero polynomial field element, ``u*b = q*a + r`` and deg r < deg a;
    q and r again have polynomial coefficients.  By uniqueness of left
    division, q = u*q0 and r = u*r0 where (q0, r0) = left_divmod(b, a).
    """
    if b.ring != a.ring:
        raise MixedContexts(f"{b.ring} vs {a.ring}")
    if not a:
        raise DivisionByZeroPoly("left division by the zero polynomial")
    ring = a.ring
    f = ring.field
    if not all(f._is_polynomial(c) for c in a._c + b._c):
        raise ValueError("pseudo-division needs polynomial coefficients")
    m = len(a._c) - 1
    one = f._from_scalar(1)
    zero = f._from_scalar(0)
    u = one
    q = []
    r = list(b._c)
    shifted = [list(a._c)]
    while len(r) - 1 >= m:
        s = len(r) - 1 - m
        while len(shifted) <= s:
            shifted.append(_shift(f, shifted[-1]))
        term = shifted[s]
        uu, c = f._pseudo_factors(r[-1], term[-1])
        if not f._is_zero(f._add(uu, f._neg(one))):
            r = [f._mul(uu, x) for x in r]
            q = [f._mul(uu, x) for x in q]
            u = f._mul(uu, u)
        if len(q) <= s:
            q.extend([zero] * (s + 1 - len(q)))
        q[s] = f._add(q[s], c)
        sub = [f._neg(f._mul(c, t)) for t in term]
        r = list(_trim(f, _add(f, r, sub)))
        if len(r) - 1 == s + m:
            raise ArithmeticError("leading term failed to cancel")
    return (FieldElement(f, u), OrePoly.from_payloads(ring, q), OrePoly.from_payloads(ring, r))


class _OreAlgebra:
    def __init__(self, ring: OreRing):
        self.ring = ring

    def const(self, n):
        return self.ring(n)

    def name(self, name, pos):
        if name == self.ring.name:
            return self.ring.gen()
        f = self.ring.field
        if f.variable is not None and name == f.variable:
            return self.ring(f.gen())
        raise ParseError(f"unknown name {name!r}", pos)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if b.degree != 0:
            if not b:
                raise DivisionByZero(f"division by zero at position {pos}")
            raise ParseError("can only divide by a field element", pos)
        return a * self.ring(b.leading_coefficient().inverse())

    def neg(self, a):
        return -a

    def pow(self, a, e, pos):
        if e < 0:
            if a.degree != 0:
                raise ParseError("negative power of a non-constant", pos)
            return self.ring(a.leading_coefficient() ** e)
        return a ** e
