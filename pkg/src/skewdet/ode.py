"""Linear matrix differential and q-difference systems.

A system A_0 y + A_1 dy + ... + A_d d^d y = 0 becomes the operator matrix
A = sum A_i d^i over k[d; alpha, delta]; its solution space has dimension
deg det A whenever that is finite.
"""

from dataclasses import dataclass

from .errors import DegreeZero, SizeMismatch, WrongTwist
from .field import DERIVATIVE, IDENTITY, Q_SHIFT, RATIONAL_FUNCTION, ZERO
from .matrix import INFINITY, OreMatrix, deg_det
from .ore import OrePoly, OreRing

DIFFERENTIAL = "differential"
Q_DIFFERENCE = "q_difference"


def twist_kind(ring: OreRing) -> str:
    f = ring.field
    if f.kind == RATIONAL_FUNCTION and not f.p:
        if f.alpha == IDENTITY and f.delta == DERIVATIVE:
            return DIFFERENTIAL
        if f.alpha == Q_SHIFT and f.delta == ZERO:
            return Q_DIFFERENCE
    raise WrongTwist(f"{ring} is neither a differential nor a q-difference ring over Q(x)")


@dataclass(frozen=True)
class OdeDimReport:
    degdet: object
    free_rank_s: int
    twist_kind: str
    q_root_of_unity: bool = False

    @property
    def dimension(self):
        return None if self.degdet is INFINITY else self.degdet

    def to_json(self) -> dict:
        out = {
            "degdet": "infinite" if self.degdet is INFINITY else self.degdet,
            "dimension": "infinite" if self.degdet is INFINITY else self.degdet,
            "free_rank_s": self.free_rank_s,
            "twist_kind": self.twist_kind,
        }
        if self.q_root_of_unity:
            out["q_root_of_unity"] = True
        return out


def assemble_system(ring: OreRing, coefficient_matrices) -> OreMatrix:
    """Operator matrix sum_i A_i * d^i from the field matrices A_0..A_d."""
    twist_kind(ring)
    mats = list(coefficient_matrices)
    if not mats:
        raise SizeMismatch("need at least A_0")
    n = len(mats[0])
    if n < 1 or any(len(m) != n or any(len(row) != n for row in m) for m in mats):
        raise SizeMismatch("coefficient matrices must all be n x n")
    f = ring.field
    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            row.append(OrePoly(ring, [f(m[j][k]) for m in mats]))
        rows.append(row)
    return OreMatrix._raw(ring, rows)


def solution_dimension(a: OreMatrix) -> OdeDimReport:
    kind = twist_kind(a.ring)
    dd = deg_det(a)
    return OdeDimReport(dd.value, dd.free_rank_s, kind, a.ring.field.q_is_root_of_unity)


def companion_system(op: OrePoly) -> list:
    """[A_0, A_1] for the first-order system equivalent to op.

    With op scaled to d^m + c_{m-1} d^(m-1) + ... + c_0 and y_1 = y,
    y_{i+1} = d y_i, the rows read d y_i - y_{i+1} = 0 and
    d y_m + sum_i c_i y_{i+1} = 0.
    """
    twist_kind(op.ring)
    if not op or op.degree == 0:
        raise DegreeZero("companion system needs an operator of degree >= 1")
    f = op.ring.field
    lead_inv = op.leading_coefficient().inverse()
    coeffs = op.left_scale(lead_inv).coeffs
    m = op.degree
    a0 = [[f.zero] * m for _ in range(m)]
    a1 = [[f.one if i == j else f.zero for j in range(m)] for i in range(m)]
    for i in range(m - 1):
        a0[i][i + 1] = -f.one
    for i in range(m):
        a0[m - 1][i] = coeffs[i]
    return [a0, a1]
