"""Independent checks for deg det.

``quotient_dim_oracle`` measures dim_k R^n / R^n A by plain linear algebra
over k, never touching the echelon machinery.  ``commutative_oracle``
handles the untwisted ring, where deg det is the degree of the ordinary
determinant.
"""

from .errors import NotCommutative
from .matrix import INFINITY, OreMatrix
from .ore import _shift


class _Unstable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNSTABLE"

    def __str__(self):
        return "unstable"

    def __reduce__(self):
        return (_Unstable, ())


UNSTABLE = _Unstable()

DEFAULT_MAX_DEGREE_WINDOW = 64
DEFAULT_MAX_MULTIPLIER_DEGREE = 128


class _EchelonSpace:
    """Incrementally maintained k-basis of vectors in R^n.

    A vector is a dict ``{(degree, component): payload}``.  Basis vectors are
    keyed by their leading position (largest degree first), so the vectors of
    the span lying in degrees < D are exactly spanned by the basis vectors
    whose leading degree is < D.
    """

    def __init__(self, field):
        self.f = field
        self.basis = {}
        self.added_at = {}

    def insert(self, vec: dict, level: int = 0) -> bool:
        f = self.f
        vec = dict(vec)
        while vec:
            key = max(vec)
            if key not in self.basis:
                inv = f._inv(vec[key])
                self.basis[key] = {k: f._mul(inv, v) for k, v in vec.items()}
                self.added_at[key] = level
                return True
            c = vec[key]
            for k, v in self.basis[key].items():
                w = f._add(vec[k], f._neg(f._mul(c, v))) if k in vec else f._neg(f._mul(c, v))
                if f._is_zero(w):
                    vec.pop(k, None)
                else:
                    vec[k] = w
        return False

    def dim_below(self, degree: int, level=None) -> int:
        """Dimension of (span ∩ R^n_{<degree}), optionally as of an earlier level."""
        if level is None:
            return sum(1 for d, _ in self.basis if d < degree)
        return sum(1 for key, at in self.added_at.items() if key[0] < degree and at <= level)


def _row_vector(f, row) -> dict:
    vec = {}
    for comp, coeffs in enumerate(row):
        for deg, c in enumerate(coeffs):
            if not f._is_zero(c):
                vec[(deg, comp)] = c
    return vec


def quotient_dim_oracle(a: OreMatrix, max_degree_window: int = DEFAULT_MAX_DEGREE_WINDOW,
                        max_multiplier_degree: int = DEFAULT_MAX_MULTIPLIER_DEGREE):
    """dim_k R^n / R^n A by exact linear algebra over k.

    W_J is the k-span of ``x^j * row_i(A)`` for j <= J.  For a degree window
    D the codimension ``c(D) = n*D - dim(W_J ∩ R^n_{<D})`` is evaluated once
    J is past the degree bound ``D - 1 + B - c`` (B = sum of row degrees)
    and unchanged by one more step.  c(D) grows with D until the image of
    R^n_{<D} is closed under x, at which point it equals the full quotient
    dimension; a value above B means the quotient is infinite.

    Returns an int, ``INFINITY``, or ``UNSTABLE`` when a cap is hit first.
    """
    if max_degree_window < 1 or max_multiplier_degree < 1:
        raise ValueError("caps must be positive")
    f = a.ring.field
    n = a.n
    row_degrees = [max((len(e._c) - 1 for e in row), default=-1) for row in a.rows]
    bound = sum(max(d, 0) for d in row_degrees)
    space = _EchelonSpace(f)
    shifted = [[list(e._c) for e in row] for row in a.rows]
    level = -1  # highest multiplier degree inserted so far

    def add_level():
        nonlocal level, shifted
        if level >= 0:
            shifted = [[_shift(f, comp) for comp in row] for row in shifted]
        level += 1
        for row in shifted:
            vec = _row_vector(f, row)
            if vec:
                space.insert(vec, level)

    for window in range(1, max_degree_window + 1):
        if level < 0:
            add_level()
        while True:
            c = n * window - space.dim_below(window)
            c_before = n * window - space.dim_below(window, level - 1)
            if level >= window - 1 + max(bound - c, 0) and c == c_before:
                break
            if level >= max_multiplier_degree:
                return UNSTABLE
            add_level()
        if c > bound:
            return INFINITY
        if window > 1 and n * (window - 1) - space.dim_below(window - 1) == c:
            return c
    return UNSTABLE


def commutative_oracle(a: OreMatrix):
    """Degree of the ordinary determinant (cofactor expansion); INFINITY if 0."""
    f = a.ring.field
    if not f.trivial_twist:
        raise NotCommutative(f"twist of {f} is not trivial")
    rows = [[list(e._c) for e in row] for row in a.rows]
    det = _cofactor_det(f, rows, list(range(a.n)))
    return len(det) - 1 if det else INFINITY


def _padd(f, p, q):
    if len(p) < len(q):
        p, q = q, p
    out = [f._add(x, y) for x, y in zip(p, q)] + list(p[len(q):])
    while out and f._is_zero(out[-1]):
        out.pop()
    return out


def _pmul(f, p, q):
    if not p or not q:
        return []
    zero = f._from_scalar(0)
    out = [zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if f._is_zero(x):
            continue
        for j, y in enumerate(q):
            out[i + j] = f._add(out[i + j], f._mul(x, y))
    while out and f._is_zero(out[-1]):
        out.pop()
    return out


def _cofactor_det(f, rows, cols):
    r = len(rows) - len(cols)
    if len(cols) == 1:
        return rows[r][cols[0]]
    total = []
    for k, col in enumerate(cols):
        entry = rows[r][col]
        if not entry:
            continue
        minor = _cofactor_det(f, rows, cols[:k] + cols[k + 1:])
        term = _pmul(f, entry, minor)
        if k % 2:
            term = [f._neg(c) for c in term]
        total = _padd(f, total, term)
    return total
