"""Seeded random generators and the standard ring instances."""

import random
from fractions import Fraction

from .field import (DERIVATIVE, EXTENSION, FROBENIUS, PRIME, Q_SHIFT, RATIONALS,
                    FieldDescriptor, FieldElement, extension_field, prime_field,
                    rational_functions, rationals)
from .matrix import AddLeftMultiple, OreMatrix, ScaleUnit, Swap, identity, replay
from .ore import OrePoly, OreRing


def twisted_instances() -> dict:
    """The five twisted ring instances exercised by the property suites."""
    return {
        "F5[tau]": OreRing(prime_field(5, alpha=FROBENIUS), "tau"),
        "F4[tau]": OreRing(extension_field(2, (1, 1, 1), "w", alpha=FROBENIUS), "tau"),
        "F3(t)[tau]": OreRing(rational_functions("t", p=3, alpha=FROBENIUS), "tau"),
        "Q(x)[D]": OreRing(rational_functions("x", delta=DERIVATIVE), "D"),
        "Q(x)[S]": OreRing(rational_functions("x", alpha=Q_SHIFT, q=2), "S"),
    }


def commutative_instances() -> dict:
    return {
        "F5[x]": OreRing(prime_field(5), "x"),
        "Q[x]": OreRing(rationals(), "x"),
    }


def random_element(rng: random.Random, f: FieldDescriptor, nonzero: bool = False,
                   complexity: int = 1) -> FieldElement:
    """A small random element; ``complexity`` bounds polynomial degrees."""
    while True:
        a = _random_element(rng, f, complexity)
        if not nonzero or a:
            return a


def _small_rational(rng):
    return Fraction(rng.randint(-4, 4), rng.choice((1, 1, 1, 2, 3)))


def _random_element(rng, f, complexity):
    if f.kind == PRIME:
        return f(rng.randrange(f.p))
    if f.kind == EXTENSION:
        return f.from_poly([rng.randrange(f.p) for _ in range(f.degree)])
    if f.kind == RATIONALS:
        return f(_small_rational(rng))
    coeff = (lambda: rng.randrange(f.p)) if f.p else (lambda: _small_rational(rng))
    num = [coeff() for _ in range(rng.randint(0, complexity) + 1)]
    den = None
    if rng.random() < 0.2:
        den = [coeff() for _ in range(rng.randint(1, complexity))] + [1]
        if f.p == 0 and not any(den[:-1]):
            den[0] = 1
    try:
        return f.from_poly(num, den)
    except ZeroDivisionError:
        return f.from_poly(num)


def random_poly(rng: random.Random, ring: OreRing, max_degree: int, zero_prob: float = 0.0,
                exact_degree=None, complexity: int = 1) -> OrePoly:
    if zero_prob and rng.random() < zero_prob:
        return ring.zero
    deg = rng.randint(0, max_degree) if exact_degree is None else exact_degree
    f = ring.field
    coeffs = [random_element(rng, f, complexity=complexity) for _ in range(deg)]
    coeffs.append(random_element(rng, f, nonzero=True, complexity=complexity))
    return OrePoly(ring, coeffs)


def random_matrix(rng: random.Random, ring: OreRing, n: int, max_degree: int,
                  zero_prob: float = 0.15) -> OreMatrix:
    return OreMatrix._raw(ring, [[random_poly(rng, ring, max_degree, zero_prob=zero_prob)
                                  for _ in range(n)] for _ in range(n)])


def random_singular_matrix(rng: random.Random, ring: OreRing, n: int, max_degree: int) -> OreMatrix:
    """A matrix whose last row is a left combination of the others (or zero)."""
    rows = [[random_poly(rng, ring, max_degree, zero_prob=0.15) for _ in range(n)]
            for _ in range(n - 1)]
    last = [ring.zero] * n
    for row in rows:
        c = random_poly(rng, ring, 1, zero_prob=0.3)
        last = [acc + c * e for acc, e in zip(last, row)]
    rows.append(last)
    order = list(range(n))
    rng.shuffle(order)
    return OreMatrix._raw(ring, [rows[i] for i in order])


def random_unit(rng: random.Random, ring: OreRing, n: int, steps: int = 4,
                max_degree: int = 1) -> OreMatrix:
    """A product of random elementary operations (a unit of M(n, R))."""
    ops = []
    for _ in range(steps):
        kind = rng.random()
        if n > 1 and kind < 0.6:
            i, j = rng.sample(range(n), 2)
            ops.append(AddLeftMultiple(i, j, random_poly(rng, ring, max_degree)))
        elif n > 1 and kind < 0.8:
            i, j = rng.sample(range(n), 2)
            ops.append(Swap(i, j))
        else:
            ops.append(ScaleUnit(rng.randrange(n), random_element(rng, ring.field, nonzero=True)))
    return replay(identity(ring, n), ops)
