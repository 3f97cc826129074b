"""Dense univariate polynomials over F_p or Q.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros; ``()`` is the zero polynomial.  Over F_p the coefficients
are ints in ``[0, p)``; over Q they are :class:`fractions.Fraction`.
The coefficient ring is selected by ``p`` (``0`` means Q).
"""

from fractions import Fraction


class CoeffRing:
    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        self.p = p

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and other.p == self.p

    def __hash__(self):
        return hash(("CoeffRing", self.p))

    def __repr__(self):
        return f"CoeffRing({self.p})"

    # scalars

    def coerce(self, c):
        if self.p:
            if isinstance(c, Fraction):
                if c.denominator % self.p == 0:
                    raise ZeroDivisionError("denominator vanishes mod p")
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    # polynomials

    def trim(self, coeffs) -> tuple:
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return tuple(coeffs)

    def add(self, a: tuple, b: tuple) -> tuple:
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        if p:
            out = [(x + y) % p for x, y in zip(a, b)]
        else:
            out = [x + y for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return self.trim(out)

    def neg(self, a: tuple) -> tuple:
        p = self.p
        if p:
            return tuple((-x) % p for x in a)
        return tuple(-x for x in a)

    def sub(self, a: tuple, b: tuple) -> tuple:
        return self.add(a, self.neg(b))

    def scale(self, a: tuple, c) -> tuple:
        if not c:
            return ()
        p = self.p
        if p:
            return tuple(x * c % p for x in a)
        return tuple(x * c for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        if not a or not b:
            return ()
        if len(a) == 1:
            return self.scale(b, a[0])
        if len(b) == 1:
            return self.scale(a, b[0])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        p = self.p
        if p:
            out = [c % p for c in out]
        return self.trim(out)

    def divmod(self, a: tuple, b: tuple):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return (), a
        p = self.p
        inv_lead = self.inv(b[-1])
        rem = list(a)
        db = len(b) - 1
        quot = [0] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv_lead % p if p else c * inv_lead
            quot[k - db] = c
            for i, y in enumerate(b):
                if p:
                    rem[k - db + i] = (rem[k - db + i] - c * y) % p
                else:
                    rem[k - db + i] -= c * y
        return self.trim(quot), self.trim(rem[:db])

    def monic(self, a: tuple) -> tuple:
        if not a or a[-1] == 1:
            return a
        return self.scale(a, self.inv(a[-1]))

    def gcd(self, a: tuple, b: tuple) -> tuple:
        """Monic gcd (zero if both are zero)."""
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.monic(a)

    def deriv(self, a: tuple) -> tuple:
        p = self.p
        if p:
            return self.trim(i * c % p for i, c in enumerate(a) if i)
        return self.trim(i * c for i, c in enumerate(a) if i)

    def substitute_scaled(self, a: tuple, q) -> tuple:
        """a(q * t)."""
        out = []
        power = self.one
        for c in a:
            out.append(c * power % self.p if self.p else c * power)
            power = power * q % self.p if self.p else power * q
        return self.trim(out)

    def substitute_power(self, a: tuple, e: int) -> tuple:
        """a(t^e)."""
        if not a:
            return ()
        out = [0] * ((len(a) - 1) * e + 1)
        for i, c in enumerate(a):
            out[i * e] = c
        if not self.p:
            out = [Fraction(c) for c in out]
        return tuple(out)

    def powmod(self, a: tuple, e: int, modulus: tuple) -> tuple:
        result = (self.one,)
        base = self.divmod(a, modulus)[1]
        while e:
            if e & 1:
                result = self.divmod(self.mul(result, base), modulus)[1]
            base = self.divmod(self.mul(base, base), modulus)[1]
            e >>= 1
        return result

    def has_factor_of_degree_at_most(self, f: tuple, bound: int) -> bool:
        """True when f (over F_p) has an irreducible factor of degree <= bound.

        Uses gcd(f, t^(p^i) - t) for i = 1..bound.
        """
        p = self.p
        t = (0, 1)
        h = t
        for _ in range(bound):
            h = self.powmod(h, p, f)
            if len(self.gcd(f, self.sub(h, t))) > 1:
                return True
        return False
