"""Square matrices over R = k[x; alpha, delta] and the degree of the
Dieudonne determinant.

Only left row operations are used, so the left row module R^n A is
preserved throughout.  ``deg_det`` sums pivot degrees of a row-echelon
form; the row operations themselves (swaps, ``row_t += q*row_s``,
scaling by a unit of k) all have degree-determinant zero.
"""

from dataclasses import dataclass, field
from typing import Union

from .errors import MixedContexts, NotAUnit, SizeMismatch
from .field import RATIONAL_FUNCTION, FieldElement
from .ore import OrePoly, OreRing, left_divmod, left_pseudo_divmod


class _Infinity:
    """+infinity for deg det: absorbing under addition, above every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Extended = Union[int, _Infinity]


class OreMatrix:
    """An n x n matrix over an :class:`OreRing`.  Immutable."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: OreRing, rows):
        rows = tuple(tuple(ring(e) for e in row) for row in rows)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise SizeMismatch("matrix must be square with n >= 1")
        self.ring = ring
        self.rows = rows

    @classmethod
    def _raw(cls, ring, rows):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def parse(cls, ring: OreRing, rows) -> "OreMatrix":
        return cls._raw(ring, [[ring.parse(e) if isinstance(e, str) else ring(e) for e in row]
                               for row in rows])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> OrePoly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other):
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def __add__(self, other):
        _check_pair(self, other)
        return OreMatrix._raw(self.ring, [[a + b for a, b in zip(r, s)]
                                          for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        _check_pair(self, other)
        return OreMatrix._raw(self.ring, [[a - b for a, b in zip(r, s)]
                                          for r, s in zip(self.rows, other.rows)])

    def scalar(self, c) -> "OreMatrix":
        """c * self for c in R (or k) acting on the left."""
        c = self.ring(c)
        return OreMatrix._raw(self.ring, [[c * e for e in row] for row in self.rows])

    def is_identity(self) -> bool:
        return all((self.rows[i][j] == (1 if i == j else 0))
                   for i in range(self.n) for j in range(self.n))

    def max_degree(self) -> int:
        return max((len(e._c) - 1 for row in self.rows for e in row), default=-1)

    def to_strings(self) -> list:
        return [[str(e) for e in row] for row in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.to_strings()) + "]"

    def __repr__(self):
        return f"OreMatrix({self})"


def _check_pair(a: OreMatrix, b: OreMatrix):
    if a.ring != b.ring:
        raise MixedContexts(f"{a.ring} vs {b.ring}")
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} vs {b.n}")


def identity(ring: OreRing, n: int) -> OreMatrix:
    return OreMatrix._raw(ring, [[ring.one if i == j else ring.zero for j in range(n)]
                                 for i in range(n)])


def diagonal(ring: OreRing, entries) -> OreMatrix:
    entries = [ring(e) for e in entries]
    n = len(entries)
    return OreMatrix._raw(ring, [[entries[i] if i == j else ring.zero for j in range(n)]
                                 for i in range(n)])


def elementary(ring: OreRing, n: int, i: int, j: int, r) -> OreMatrix:
    """I + r*E_ij (i != j): left-multiplying adds r*row_j to row_i."""
    if i == j:
        raise ValueError("elementary matrix needs i != j")
    rows = [[ring.one if a == b else ring.zero for b in range(n)] for a in range(n)]
    rows[i][j] = ring(r)
    return OreMatrix._raw(ring, rows)


def mat_mul(a: OreMatrix, b: OreMatrix) -> OreMatrix:
    _check_pair(a, b)
    n = a.n
    zero = a.ring.zero
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                if a.rows[i][k] and b.rows[k][j]:
                    acc = acc + a.rows[i][k] * b.rows[k][j]
            row.append(acc)
        rows.append(row)
    return OreMatrix._raw(a.ring, rows)


# -- row operations -------------------------------------------------------------

@dataclass(frozen=True)
class Swap:
    i: int
    j: int

    def apply(self, rows: list) -> None:
        rows[self.i], rows[self.j] = rows[self.j], rows[self.i]

    def inverse(self) -> "Swap":
        return self

    def to_json(self) -> dict:
        return {"op": "swap", "i": self.i, "j": self.j}


@dataclass(frozen=True)
class AddLeftMultiple:
    """row[target] += q * row[source]."""

    target: int
    source: int
    q: OrePoly

    def apply(self, rows: list) -> None:
        q = self.q
        rows[self.target] = [t + q * s for t, s in zip(rows[self.target], rows[self.source])]

    def inverse(self) -> "AddLeftMultiple":
        return AddLeftMultiple(self.target, self.source, -self.q)

    def to_json(self) -> dict:
        return {"op": "add_left_multiple", "target": self.target, "source": self.source,
                "q": str(self.q)}


@dataclass(frozen=True)
class ScaleUnit:
    """row[i] = u * row[i] for a nonzero u in k."""

    i: int
    u: FieldElement

    def apply(self, rows: list) -> None:
        rows[self.i] = [e.left_scale(self.u) for e in rows[self.i]]

    def inverse(self) -> "ScaleUnit":
        return ScaleUnit(self.i, self.u.inverse())

    def to_json(self) -> dict:
        return {"op": "scale_unit", "i": self.i, "u": str(self.u)}


RowOp = Union[Swap, AddLeftMultiple, ScaleUnit]


def op_from_json(ring: OreRing, data: dict) -> RowOp:
    kind = data["op"]
    if kind == "swap":
        return Swap(int(data["i"]), int(data["j"]))
    if kind == "add_left_multiple":
        return AddLeftMultiple(int(data["target"]), int(data["source"]), ring.parse(data["q"]))
    if kind == "scale_unit":
        u = ring.field.parse(data["u"])
        if not u:
            raise ValueError("scale_unit needs a nonzero unit")
        return ScaleUnit(int(data["i"]), u)
    raise ValueError(f"unknown row operation {kind!r}")


def op_matrix(ring: OreRing, n: int, op: RowOp) -> OreMatrix:
    """The matrix E with E*A equal to op applied to A."""
    return replay(identity(ring, n), [op])


def replay(a: OreMatrix, ops) -> OreMatrix:
    rows = [list(r) for r in a.rows]
    for op in ops:
        op.apply(rows)
    return OreMatrix._raw(a.ring, rows)


# -- echelon form and deg det ------------------------------------------------------

@dataclass(frozen=True)
class Pivot:
    row: int
    column: int
    degree: int


@dataclass(frozen=True)
class EchelonResult:
    echelon: OreMatrix
    pivots: tuple
    ops_log: tuple = field(repr=False)

    def to_json(self) -> dict:
        return {
            "echelon": self.echelon.to_strings(),
            "pivots": [[p.row, p.column, p.degree] for p in self.pivots],
            "ops_log": [op.to_json() for op in self.ops_log],
        }


@dataclass(frozen=True)
class DegDetValue:
    """deg det of a matrix: an int, or INFINITY with the free rank s."""

    value: Extended
    free_rank_s: int = 0

    @property
    def finite(self) -> bool:
        return self.value is not INFINITY

    def __add__(self, other):
        if not isinstance(other, DegDetValue):
            return NotImplemented
        return DegDetValue(self.value + other.value, max(self.free_rank_s, other.free_rank_s))

    def to_json(self) -> dict:
        return {"degdet": self.value if self.finite else "infinite",
                "free_rank_s": self.free_rank_s}


def _normalize_row(f, rows, i, ops) -> None:
    """Scale row i by a unit so its coefficients are coprime polynomials."""
    u = f._content_unit([c for e in rows[i] for c in e._c])
    if u is not None:
        op = ScaleUnit(i, FieldElement(f, u))
        op.apply(rows)
        ops.append(op)


def row_echelon(a: OreMatrix) -> EchelonResult:
    """Row-echelon form by left row operations.

    Column by column, the non-pivoted rows are reduced against the
    candidate of least degree (ties: smallest row index) by left division
    until at most one nonzero candidate remains; it is then swapped into
    pivot position.
    """
    n = a.n
    f = a.ring.field
    rows = [list(r) for r in a.rows]
    ops = []
    pivots = []
    top = 0
    # over rational function fields, clear denominators once and then use
    # fraction-free division; rows stay polynomial and unit-scaled
    fraction_free = f.kind == RATIONAL_FUNCTION
    if fraction_free:
        for i in range(n):
            _normalize_row(f, rows, i, ops)
    for col in range(n):
        if top == n:
            break
        while True:
            live = [i for i in range(top, n) if rows[i][col]]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda i: (len(rows[i][col]._c), i))
            for i in live:
                if i == piv:
                    continue
                if fraction_free:
                    u, q, _ = left_pseudo_divmod(rows[i][col], rows[piv][col])
                    if u != 1:
                        op = ScaleUnit(i, u)
                        op.apply(rows)
                        ops.append(op)
                else:
                    q, _ = left_divmod(rows[i][col], rows[piv][col])
                op = AddLeftMultiple(i, piv, -q)
                op.apply(rows)
                ops.append(op)
                _normalize_row(f, rows, i, ops)
        if not live:
            continue
        (i,) = live
        if i != top:
            op = Swap(top, i)
            op.apply(rows)
            ops.append(op)
        pivots.append(Pivot(top, col, len(rows[top][col]._c) - 1))
        top += 1
    return EchelonResult(OreMatrix._raw(a.ring, rows), tuple(pivots), tuple(ops))


def deg_det(a: OreMatrix) -> DegDetValue:
    pivots = row_echelon(a).pivots
    if len(pivots) < a.n:
        return DegDetValue(INFINITY, a.n - len(pivots))
    return DegDetValue(sum(p.degree for p in pivots), 0)


def invert(a: OreMatrix) -> OreMatrix:
    """Two-sided inverse of a unit of M(n, R); raises NotAUnit otherwise."""
    ech = row_echelon(a)
    n = a.n
    if len(ech.pivots) < n or any(p.degree for p in ech.pivots):
        value = deg_det(a).value
        raise NotAUnit(f"deg det = {value}, not 0")
    rows = [list(r) for r in ech.echelon.rows]
    ops = list(ech.ops_log)
    for i in range(n):
        u = rows[i][i].leading_coefficient()
        if u != 1:
            op = ScaleUnit(i, u.inverse())
            op.apply(rows)
            ops.append(op)
    for col in range(n - 1, 0, -1):
        for i in range(col):
            if rows[i][col]:
                op = AddLeftMultiple(i, col, -rows[i][col])
                op.apply(rows)
                ops.append(op)
    return replay(identity(a.ring, n), ops)
