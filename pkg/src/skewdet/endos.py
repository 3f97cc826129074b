"""Endomorphisms of G_a^n in characteristic p.

End(G_a^n) over k is M(n, k[tau]) with tau the p-th power Frobenius.
The kernel of phi is a finite group scheme of rank p^(deg det phi), and an
F_p[t]-action t -> phi_t has rank r with deg det phi(f) = r * deg f.
"""

from dataclasses import dataclass, field

from .errors import InfiniteDegDet, WrongTwist
from .field import FROBENIUS, ZERO
from .matrix import INFINITY, OreMatrix, deg_det, identity

DEFAULT_SAMPLES = ((0, 1), (0, 0, 1), (0, 0, 0, 1), (0, 1, 1), (1, 1, 0, 1))


def _require_frobenius(phi: OreMatrix):
    f = phi.ring.field
    if not f.p or f.alpha != FROBENIUS or f.delta != ZERO:
        raise WrongTwist(f"{phi.ring} is not a Frobenius ring k[tau; a -> a^p, 0]")


@dataclass(frozen=True)
class KernelRankReport:
    degdet: object
    p: int

    @property
    def rank(self):
        """p^degdet as an int, or INFINITY."""
        return INFINITY if self.degdet is INFINITY else self.p ** self.degdet

    @property
    def rank_text(self) -> str:
        return "infinite" if self.degdet is INFINITY else f"{self.p}^{self.degdet}"

    def to_json(self) -> dict:
        finite = self.degdet is not INFINITY
        return {
            "degdet": self.degdet if finite else "infinite",
            "p": self.p,
            "rank": self.rank_text,
            "rank_value": str(self.rank) if finite else "infinite",
        }


def kernel_rank(phi: OreMatrix) -> KernelRankReport:
    _require_frobenius(phi)
    return KernelRankReport(deg_det(phi).value, phi.ring.field.p)


def _poly_degree(f) -> int:
    coeffs = list(f)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has no degree")
    return len(coeffs) - 1


def evaluate_t_poly(phi_t: OreMatrix, f) -> OreMatrix:
    """Image of f(t) = sum c_j t^j (c_j in F_p) under t -> phi_t, by Horner."""
    _require_frobenius(phi_t)
    coeffs = [int(c) for c in f]
    if not coeffs:
        raise ValueError("empty coefficient list")
    ring = phi_t.ring
    n = phi_t.n
    one = identity(ring, n)
    result = one.scalar(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        result = result * phi_t + one.scalar(c)
    return result


@dataclass(frozen=True)
class TModuleRankReport:
    r: int
    checked_polys: tuple = field(default=())
    consistent: bool = True

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "consistent": self.consistent,
            "checked_polys": [
                {"f": list(f), "deg_f": d, "degdet": v if v is not INFINITY else "infinite"}
                for f, d, v in self.checked_polys
            ],
        }


def t_module_rank(phi_t: OreMatrix, sample_fs=DEFAULT_SAMPLES) -> TModuleRankReport:
    """Candidate rank r = deg det phi_t, checked on sample polynomials."""
    _require_frobenius(phi_t)
    r = deg_det(phi_t).value
    if r is INFINITY:
        raise InfiniteDegDet("deg det phi_t is infinite")
    p = phi_t.ring.field.p
    checked = []
    consistent = True
    for f in sample_fs:
        f = tuple(int(c) % p for c in f)
        d = _poly_degree(f)
        value = deg_det(evaluate_t_poly(phi_t, f)).value
        checked.append((f, d, value))
        consistent = consistent and value == r * d
    return TModuleRankReport(r, tuple(checked), consistent)
