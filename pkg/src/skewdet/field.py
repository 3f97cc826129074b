"""Coefficient fields k with a twist pair (alpha, delta).

Supported fields: F_p, F_p[w]/(f), Q, and rational function fields
F_p(t) and Q(x).  The endomorphism ``alpha`` is the identity, the
p-th power Frobenius, or the q-shift f(x) -> f(qx); the alpha-derivation
``delta`` is zero or d/dx.

All values are immutable.  Element payloads are kept canonical so that
equality is payload equality:

* prime field: int in ``[0, p)``
* extension field: tuple of m ints (coefficients of 1, w, ..., w^(m-1))
* rationals: :class:`~fractions.Fraction`
* rational function: ``(num, den)`` flint polynomials (``nmod_poly`` over
  F_p, ``fmpq_poly`` over Q), gcd 1, den monic
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import flint

from .errors import DivisionByZero, InvalidDescriptor, MixedDescriptors, ParseError
from .parsing import parse_expression, render_poly
from .upoly import CoeffRing

PRIME = "prime_field"
EXTENSION = "extension_field"
RATIONALS = "rationals"
RATIONAL_FUNCTION = "rational_function"

IDENTITY = "identity"
FROBENIUS = "frobenius"
Q_SHIFT = "q_shift"

ZERO = "zero"
DERIVATIVE = "formal_derivative"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """A coefficient field together with its twist pair.

    Use the helper constructors (:func:`prime_field`, :func:`extension_field`,
    :func:`rationals`, :func:`rational_functions`) rather than calling this
    directly; they fill in the redundant fields.
    """

    kind: str
    p: int = 0
    modulus: tuple = ()
    variable: Optional[str] = None
    alpha: str = IDENTITY
    q: Optional[Fraction] = None
    delta: str = ZERO
    _coeffs: CoeffRing = field(init=False, repr=False, compare=False)
    _polys: Optional["_FlintPolys"] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._validate()
        object.__setattr__(self, "_coeffs", CoeffRing(self.p))
        polys = _FlintPolys(self.p, self.q) if self.kind == RATIONAL_FUNCTION else None
        object.__setattr__(self, "_polys", polys)

    def _validate(self):
        kind, p = self.kind, self.p
        if kind not in (PRIME, EXTENSION, RATIONALS, RATIONAL_FUNCTION):
            raise InvalidDescriptor(f"unknown field kind {kind!r}")
        if kind in (PRIME, EXTENSION) or (kind == RATIONAL_FUNCTION and p):
            if not isinstance(p, int) or not 2 <= p <= 2**31 or not is_prime(p):
                raise InvalidDescriptor(f"p = {p!r} is not a prime in [2, 2^31]")
        elif p:
            raise InvalidDescriptor(f"{kind} has characteristic 0")
        if kind == EXTENSION:
            mod = self.modulus
            if len(mod) < 2 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
                raise InvalidDescriptor("modulus must be a monic reduced polynomial of degree >= 1")
            if CoeffRing(p).has_factor_of_degree_at_most(mod, (len(mod) - 1) // 2):
                raise InvalidDescriptor(f"modulus {mod} is reducible over F_{p}")
        if kind in (EXTENSION, RATIONAL_FUNCTION):
            if not self.variable:
                raise InvalidDescriptor(f"{kind} needs a variable name")
        if self.alpha not in (IDENTITY, FROBENIUS, Q_SHIFT):
            raise InvalidDescriptor(f"unknown alpha {self.alpha!r}")
        if self.delta not in (ZERO, DERIVATIVE):
            raise InvalidDescriptor(f"unknown delta {self.delta!r}")
        if self.alpha == FROBENIUS and not p:
            raise InvalidDescriptor("frobenius requires positive characteristic")
        if self.alpha == Q_SHIFT:
            if kind != RATIONAL_FUNCTION or p:
                raise InvalidDescriptor("q_shift requires a rational function field over Q")
            if not isinstance(self.q, Fraction) or self.q == 0:
                raise InvalidDescriptor("q_shift needs a nonzero rational q")
        elif self.q is not None:
            raise InvalidDescriptor("q given without q_shift")
        if self.delta == DERIVATIVE:
            if kind != RATIONAL_FUNCTION or p:
                raise InvalidDescriptor("formal_derivative requires a rational function field over Q")
            if self.alpha != IDENTITY:
                raise InvalidDescriptor("formal_derivative is only supported with alpha = identity")

    # -- descriptive helpers ------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        """Degree m of an extension field (1 otherwise)."""
        return len(self.modulus) - 1 if self.kind == EXTENSION else 1

    @property
    def trivial_twist(self) -> bool:
        """True when alpha acts as the identity and delta is zero."""
        if self.delta != ZERO:
            return False
        if self.alpha == IDENTITY:
            return True
        if self.alpha == Q_SHIFT:
            return self.q == 1
        return self.kind == PRIME  # a^p = a on F_p

    @property
    def q_is_root_of_unity(self) -> bool:
        return self.alpha == Q_SHIFT and self.q in (1, -1)

    def with_twist(self, alpha=IDENTITY, delta=ZERO, q=None) -> "FieldDescriptor":
        return FieldDescriptor(self.kind, self.p, self.modulus, self.variable, alpha,
                               None if q is None else Fraction(q), delta)

    def __str__(self):
        if self.kind == PRIME:
            base = f"F_{self.p}"
        elif self.kind == EXTENSION:
            base = f"F_{self.p}[{self.variable}]/({_render_int_poly(self.modulus, self.variable)})"
        elif self.kind == RATIONALS:
            base = "Q"
        else:
            base = f"{'F_%d' % self.p if self.p else 'Q'}({self.variable})"
        twist = self.alpha if self.alpha != Q_SHIFT else f"q_shift({self.q})"
        return f"{base} [{twist}, {self.delta}]"

    # -- element construction -------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Embed an int or Fraction."""
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        return FieldElement(self, self._from_scalar(value))

    def _from_scalar(self, value):
        if isinstance(value, Fraction) and value.denominator != 1:
            if self.kind == RATIONALS:
                return value
            if self.p and value.denominator % self.p == 0:
                raise DivisionByZero(f"{value} is undefined in characteristic {self.p}")
        try:
            c = self._coeffs.coerce(value)
        except ZeroDivisionError as exc:
            raise DivisionByZero(str(exc)) from None
        if self.kind in (PRIME, RATIONALS):
            return c
        if self.kind == EXTENSION:
            return (c,) + (0,) * (self.degree - 1)
        polys = self._polys
        return polys.make([c]), polys.one

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def gen(self) -> "FieldElement":
        """The generator w (extension) or the variable (rational function)."""
        if self.kind == EXTENSION:
            if self.degree == 1:
                return self.from_poly((0, 1))
            return FieldElement(self, (0, 1) + (0,) * (self.degree - 2))
        if self.kind == RATIONAL_FUNCTION:
            return FieldElement(self, (self._polys.make([0, 1]), self._polys.one))
        raise InvalidDescriptor(f"{self.kind} has no generator")

    def from_poly(self, num, den=None) -> "FieldElement":
        """Element from base coefficient sequences (lowest degree first)."""
        cr = self._coeffs
        try:
            num = cr.trim(cr.coerce(c) for c in num)
            den = None if den is None else cr.trim(cr.coerce(c) for c in den)
        except ZeroDivisionError as exc:
            raise DivisionByZero(str(exc)) from None
        if self.kind == EXTENSION:
            if den is not None:
                raise InvalidDescriptor("extension elements have no denominator")
            return FieldElement(self, self._pad(cr.divmod(num, self.modulus)[1]))
        if self.kind != RATIONAL_FUNCTION:
            if den is not None or len(num) > 1:
                raise InvalidDescriptor(f"{self.kind} elements are scalars")
            return self(num[0] if num else 0)
        if den is not None and not den:
            raise DivisionByZero("zero denominator")
        polys = self._polys
        den = polys.one if den is None else polys.make(den)
        return FieldElement(self, self._canon(polys.make(num), den))

    def parse(self, text: str) -> "FieldElement":
        return parse_expression(text, _FieldAlgebra(self))

    def numerator_denominator(self, a: "FieldElement"):
        """Coefficient lists (ints or Fractions) of a rational function element."""
        num, den = a.value
        return self._polys.coeffs(num), self._polys.coeffs(den)

    def _pad(self, coeffs):
        return tuple(coeffs) + (0,) * (self.degree - len(coeffs))

    def _canon(self, num, den):
        polys = self._polys
        if num.is_zero():
            return polys.zero, polys.one
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lead = den[den.degree()]
        if lead != 1:
            inv = 1 / lead
            num = num * inv
            den = den * inv
        return num, den

    def _content_unit(self, payloads):
        """Unit u with u*c polynomial and jointly coprime for c in payloads.

        Only defined for rational function fields (returns None otherwise, or
        when u would be 1).  Used to keep row entries small during echelon.
        """
        if self.kind != RATIONAL_FUNCTION:
            return None
        live = [x for x in payloads if not x[0].is_zero()]
        if not live:
            return None
        lcm = self._polys.one
        for _, den in live:
            if den.degree() > 0:
                lcm = lcm * (den // lcm.gcd(den))
        content = None
        for num, den in live:
            part = num * (lcm // den)
            content = part if content is None else content.gcd(part)
            if content.degree() == 0:
                break
        if content.degree() == 0 and lcm.degree() == 0:
            return None
        return self._canon(lcm, content)

    def _pseudo_factors(self, lead_r, lead_a):
        """(u, c) with u*lead_r = c*lead_a, both polynomial, for polynomial inputs."""
        nr, na = lead_r[0], lead_a[0]
        g = nr.gcd(na)
        one = self._polys.one
        if g.degree() > 0:
            nr, na = nr // g, na // g
        # absorb the constant factor so u has the smaller leading coefficient 1
        lead = na[na.degree()]
        if lead != 1:
            inv = 1 / lead
            nr, na = nr * inv, na * inv
        return (na, one), (nr, one)

    def _is_polynomial(self, x) -> bool:
        return self.kind == RATIONAL_FUNCTION and x[1].degree() == 0

    def _check(self, a):
        if a.field is not self and a.field != self:
            raise MixedDescriptors(f"{a.field} vs {self}")

    # -- payload arithmetic -------------------------------------------------

    def _add(self, x, y):
        kind = self.kind
        if kind == PRIME:
            return (x + y) % self.p
        if kind == RATIONALS:
            return x + y
        if kind == EXTENSION:
            return tuple((a + b) % self.p for a, b in zip(x, y))
        (n1, d1), (n2, d2) = x, y
        if d1 == d2:
            if d1.degree() == 0:
                num = n1 + n2
                return (num, d1) if not num.is_zero() else (num, self._polys.one)
            return self._canon(n1 + n2, d1)
        return self._canon(n1 * d2 + n2 * d1, d1 * d2)

    def _neg(self, x):
        kind = self.kind
        if kind == PRIME:
            return -x % self.p
        if kind == RATIONALS:
            return -x
        if kind == EXTENSION:
            return tuple(-a % self.p for a in x)
        return -x[0], x[1]

    def _mul(self, x, y):
        kind = self.kind
        if kind == PRIME:
            return x * y % self.p
        if kind == RATIONALS:
            return x * y
        if kind == EXTENSION:
            cr = self._coeffs
            return self._pad(cr.divmod(cr.mul(cr.trim(x), cr.trim(y)), self.modulus)[1])
        (n1, d1), (n2, d2) = x, y
        if n1.is_zero() or n2.is_zero():
            return self._polys.zero, self._polys.one
        if d1.degree() == 0 and d2.degree() == 0:
            return n1 * n2, d1
        # cross-cancel before multiplying; the result stays reduced
        g1 = n1.gcd(d2)
        if g1.degree() > 0:
            n1, d2 = n1 // g1, d2 // g1
        g2 = n2.gcd(d1)
        if g2.degree() > 0:
            n2, d1 = n2 // g2, d1 // g2
        num, den = n1 * n2, d1 * d2
        lead = den[den.degree()]
        if lead != 1:
            inv = 1 / lead
            num, den = num * inv, den * inv
        return num, den

    def _is_zero(self, x) -> bool:
        kind = self.kind
        if kind in (PRIME, RATIONALS):
            return not x
        if kind == EXTENSION:
            return not any(x)
        return x[0].is_zero()

    def _inv(self, x):
        if self._is_zero(x):
            raise DivisionByZero("inverse of zero")
        kind = self.kind
        if kind == PRIME:
            return pow(x, -1, self.p)
        if kind == RATIONALS:
            return 1 / x
        if kind == EXTENSION:
            cr = self._coeffs
            return self._pad(_inverse_mod(cr, cr.trim(x), self.modulus))
        num, den = x
        inv = 1 / num[num.degree()]
        return den * inv, num * inv

    def _alpha(self, x):
        alpha = self.alpha
        if alpha == IDENTITY:
            return x
        kind = self.kind
        if alpha == FROBENIUS:
            if kind == PRIME:
                return x
            if kind == EXTENSION:
                cr = self._coeffs
                return self._pad(cr.powmod(cr.trim(x), self.p, self.modulus))
            # coefficients lie in F_p, so a(t)^p = a(t^p); gcd and monicity survive
            sub = self._polys.frobenius_image
            return x[0](sub), x[1](sub)
        sub = self._polys.q_image
        num, den = x[0](sub), x[1](sub)
        inv = 1 / den[den.degree()]
        return num * inv, den * inv

    def _delta(self, x):
        if self.delta == ZERO:
            return self._from_scalar(0)
        num, den = x
        if den.degree() == 0:
            return num.derivative(), den
        return self._canon(num.derivative() * den - num * den.derivative(), den * den)

    # -- rendering ------------------------------------------------------------

    def _render(self, x) -> str:
        kind = self.kind
        if kind == PRIME:
            return str(x)
        if kind == RATIONALS:
            return str(x)
        if kind == EXTENSION:
            return _render_int_poly(x, self.variable)
        polys = self._polys
        num, den = polys.coeffs(x[0]), polys.coeffs(x[1])
        top = render_poly(num, self.variable, _coeff_renderer)
        if len(den) == 1:
            return top
        return f"({top})/({render_poly(den, self.variable, _coeff_renderer)})"

    def _hash_payload(self, x):
        if self.kind == RATIONAL_FUNCTION:
            return hash((str(x[0]), str(x[1])))
        return hash(x)


class _FlintPolys:
    """Constructors and conversions for the flint polynomial payloads."""

    def __init__(self, p: int, q=None):
        self.p = p
        if p:
            self.make = lambda cs: flint.nmod_poly([int(c) for c in cs], p)
        else:
            self.make = lambda cs: flint.fmpq_poly(
                [flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in cs])
        self.zero = self.make([])
        self.one = self.make([1])
        self.frobenius_image = self.make([0] * p + [1]) if p else None
        self.q_image = self.make([0, q]) if q is not None else None

    def coeffs(self, poly) -> list:
        if self.p:
            return [int(c) for c in poly.coeffs()]
        return [Fraction(int(c.p), int(c.q)) for c in poly.coeffs()]


def _coeff_renderer(c):
    if isinstance(c, Fraction):
        return str(abs(c)), c < 0, abs(c) == 1
    return str(c), False, c == 1


def _render_int_poly(coeffs, variable):
    return render_poly(list(coeffs), variable, _coeff_renderer)


def _inverse_mod(cr: CoeffRing, a: tuple, modulus: tuple) -> tuple:
    """Inverse of a modulo an irreducible modulus via extended Euclid."""
    r0, r1 = modulus, a
    s0, s1 = (), (cr.one,)
    while r1:
        q, r = cr.divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, cr.sub(s0, cr.mul(q, s1))
    # r0 is a nonzero constant since the modulus is irreducible
    return cr.divmod(cr.scale(s0, cr.inv(r0[0])), modulus)[1]


class FieldElement:
    """An element of a :class:`FieldDescriptor` field."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise MixedDescriptors(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field._from_scalar(other)
        return None

    def __add__(self, other):
        y = self._other(other)
        if y is None:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, y))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __sub__(self, other):
        y = self._other(other)
        if y is None:
            return NotImplemented
        f = self.field
        return FieldElement(f, f._add(self.value, f._neg(y)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        y = self._other(other)
        if y is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, y))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        y = self._other(other)
        if y is None:
            return NotImplemented
        f = self.field
        return FieldElement(f, f._mul(self.value, f._inv(y)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return not self.field._is_zero(self.value)

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field._from_scalar(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return self.field._hash_payload(self.value)

    def alpha(self) -> "FieldElement":
        return FieldElement(self.field, self.field._alpha(self.value))

    def delta(self) -> "FieldElement":
        return FieldElement(self.field, self.field._delta(self.value))

    def __str__(self):
        return self.field._render(self.value)

    def __repr__(self):
        return f"FieldElement({self})"


# -- operation-style API ------------------------------------------------------

def fe_arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    if a.field is not b.field and a.field != b.field:
        raise MixedDescriptors(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def apply_alpha(a: FieldElement) -> FieldElement:
    return a.alpha()


def apply_delta(a: FieldElement) -> FieldElement:
    return a.delta()


def parse_field_element(text: str, descriptor: FieldDescriptor) -> FieldElement:
    return descriptor.parse(text)


class _FieldAlgebra:
    def __init__(self, descriptor: FieldDescriptor):
        self.f = descriptor

    def const(self, n):
        return self.f(n)

    def name(self, name, pos):
        if self.f.variable is not None and name == self.f.variable:
            return self.f.gen()
        raise ParseError(f"unknown name {name!r}", pos)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if not b:
            raise DivisionByZero(f"division by zero at position {pos}")
        return a / b

    def neg(self, a):
        return -a

    def pow(self, a, e, pos):
        if e < 0 and not a:
            raise DivisionByZero(f"zero to a negative power at position {pos}")
        return a ** e


# -- constructors ---------------------------------------------------------------

def _twist_args(alpha, delta, q):
    return dict(alpha=alpha, delta=delta, q=None if q is None else Fraction(q))


def prime_field(p: int, alpha: str = IDENTITY) -> FieldDescriptor:
    return FieldDescriptor(PRIME, p, **_twist_args(alpha, ZERO, None))


def extension_field(p: int, modulus, variable: str = "w", alpha: str = IDENTITY) -> FieldDescriptor:
    """F_p[w]/(modulus); ``modulus`` lists coefficients lowest degree first."""
    mod = CoeffRing(p).trim(int(c) % p for c in modulus)
    if mod and mod[-1] != 1:
        mod = CoeffRing(p).monic(mod)
    return FieldDescriptor(EXTENSION, p, tuple(mod), variable, **_twist_args(alpha, ZERO, None))


def rationals() -> FieldDescriptor:
    return FieldDescriptor(RATIONALS)


def rational_functions(variable: str = "x", p: int = 0, alpha: str = IDENTITY,
                       delta: str = ZERO, q=None) -> FieldDescriptor:
    """F_p(variable) when ``p`` is given, Q(variable) otherwise."""
    return FieldDescriptor(RATIONAL_FUNCTION, p, (), variable, **_twist_args(alpha, delta, q))
