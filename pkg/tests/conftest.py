import pytest

from skewdet.field import DERIVATIVE, FROBENIUS, Q_SHIFT, prime_field, rational_functions
from skewdet.ore import OreRing
from skewdet.sampling import commutative_instances, twisted_instances

ALL_RINGS = {**twisted_instances(), **commutative_instances()}


@pytest.fixture(params=sorted(ALL_RINGS), ids=str)
def any_ring(request):
    return ALL_RINGS[request.param]


@pytest.fixture(params=sorted(twisted_instances()), ids=str)
def twisted_ring(request):
    return twisted_instances()[request.param]


@pytest.fixture
def qx_d():
    return OreRing(rational_functions("x", delta=DERIVATIVE), "D")


@pytest.fixture
def qx_s():
    return OreRing(rational_functions("x", alpha=Q_SHIFT, q=2), "S")


def drinfeld_ring(p):
    return OreRing(rational_functions("theta", p=p, alpha=FROBENIUS), "tau")


def frobenius_ring(p):
    return OreRing(prime_field(p, alpha=FROBENIUS), "tau")


def act(op, y):
    """Action of an Ore polynomial on a field element y.

    k is a left module over k[x; alpha, delta] with x acting as delta when
    delta is nonzero and as alpha otherwise.  Uses field arithmetic only, so
    it checks Ore multiplication independently: act(f*g, y) = act(f, act(g, y)).
    """
    f = op.ring.field
    step = (lambda z: z.delta()) if f.delta != "zero" else (lambda z: z.alpha())
    total = f.zero
    power = y
    for c in op.coeffs:
        total = total + c * power
        power = step(power)
    return total
