"""JSON forms for rings, matrices, systems and endomorphism requests.

Ring::

    {"field": "F_5" | "Q" | "Q(x)" | "F_3(t)" | {"kind": ..., ...},
     "alpha": "identity" | "frobenius" | {"q_shift": "2"},
     "delta": "zero" | "derivative",
     "indeterminate": "tau"}

Matrix::

    {"ring": <ring>, "n": 2, "entries": [["tau", "0"], ["1", "t*tau"]]}

System (differential or q-difference)::

    {"field": "Q(x)", "twist": "derivative" | {"q_shift": "2"}, "n": 2,
     "coefficients": [<A_0 as rows of strings>, <A_1>, ...]}

or, for a scalar operator, ``{"field": ..., "twist": ..., "operator": "D^2 + 1"}``.
"""

import re
from fractions import Fraction

from .errors import ParseError, SizeMismatch, SkewDetError
from .field import (DERIVATIVE, EXTENSION, FROBENIUS, IDENTITY, PRIME, Q_SHIFT, RATIONAL_FUNCTION,
                    RATIONALS, ZERO, FieldDescriptor, extension_field)
from .matrix import OreMatrix
from .ore import OreRing


class InputError(ParseError):
    """Structurally invalid JSON input (missing or malformed keys)."""

    def __init__(self, message: str):
        SkewDetError.__init__(self, message)
        self.message = message
        self.position = None
        self.text = ""


_SHORT_PRIME = re.compile(r"F_?(\d+)$")
_SHORT_RATFUNC = re.compile(r"(F_?(\d+)|Q)\((\w+)\)$")


def _field_base(spec) -> dict:
    if isinstance(spec, str):
        s = spec.replace(" ", "")
        if s in ("Q", "QQ"):
            return {"kind": RATIONALS}
        m = _SHORT_PRIME.match(s)
        if m:
            return {"kind": PRIME, "p": int(m.group(1))}
        m = _SHORT_RATFUNC.match(s)
        if m:
            return {"kind": RATIONAL_FUNCTION, "p": int(m.group(2) or 0), "variable": m.group(3)}
        raise InputError(f"unrecognised field {spec!r}")
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("field must be a string or an object with 'kind'")
    return spec


def _alpha(spec):
    if spec in (None, IDENTITY):
        return IDENTITY, None
    if spec == FROBENIUS:
        return FROBENIUS, None
    if isinstance(spec, dict) and Q_SHIFT in spec:
        try:
            return Q_SHIFT, Fraction(str(spec[Q_SHIFT]))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad q value {spec[Q_SHIFT]!r}") from None
    raise InputError(f"unrecognised alpha {spec!r}")


def _delta(spec):
    if spec in (None, ZERO):
        return ZERO
    if spec in ("derivative", DERIVATIVE):
        return DERIVATIVE
    raise InputError(f"unrecognised delta {spec!r}")


def field_from_json(spec, alpha=None, delta=None) -> FieldDescriptor:
    try:
        return _field_from_json(spec, alpha, delta)
    except SkewDetError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed field description: {exc}") from None


def _field_from_json(spec, alpha, delta):
    base = _field_base(spec)
    alpha_kind, q = _alpha(alpha)
    delta_kind = _delta(delta)
    kind = base["kind"]
    if kind == EXTENSION:
        f = extension_field(int(base["p"]), base["modulus"], base.get("variable", "w"))
        return f.with_twist(alpha_kind, delta_kind, q)
    return FieldDescriptor(kind, int(base.get("p", 0)), (), base.get("variable"),
                           alpha_kind, q, delta_kind)


def field_to_json(f: FieldDescriptor) -> dict:
    out = {"kind": f.kind}
    if f.p:
        out["p"] = f.p
    if f.kind == EXTENSION:
        out["modulus"] = list(f.modulus)
    if f.variable:
        out["variable"] = f.variable
    return out


def _alpha_to_json(f: FieldDescriptor):
    if f.alpha == Q_SHIFT:
        return {Q_SHIFT: str(f.q)}
    return f.alpha


def ring_from_json(spec: dict) -> OreRing:
    if not isinstance(spec, dict) or "field" not in spec:
        raise InputError("ring must be an object with a 'field' key")
    f = field_from_json(spec["field"], spec.get("alpha"), spec.get("delta"))
    return OreRing(f, spec.get("indeterminate", "x"))


def ring_to_json(ring: OreRing) -> dict:
    f = ring.field
    return {"field": field_to_json(f), "alpha": _alpha_to_json(f),
            "delta": "derivative" if f.delta == DERIVATIVE else ZERO,
            "indeterminate": ring.name}


def _parse_entries(ring, entries, n=None):
    if not isinstance(entries, list) or not entries:
        raise InputError("entries must be a nonempty list of rows")
    if n is not None and len(entries) != n:
        raise SizeMismatch(f"expected {n} rows, got {len(entries)}")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != len(entries):
            raise SizeMismatch("matrix must be square")
        out = []
        for j, text in enumerate(row):
            try:
                out.append(ring.parse(str(text)))
            except ParseError as exc:
                exc.entry = (i, j)
                raise
        rows.append(out)
    return rows


def matrix_from_json(spec: dict) -> OreMatrix:
    if not isinstance(spec, dict) or "ring" not in spec or "entries" not in spec:
        raise InputError("matrix needs 'ring' and 'entries'")
    ring = ring_from_json(spec["ring"])
    return OreMatrix._raw(ring, _parse_entries(ring, spec["entries"], spec.get("n")))


def matrix_to_json(a: OreMatrix) -> dict:
    return {"ring": ring_to_json(a.ring), "n": a.n, "entries": a.to_strings()}


def system_from_json(spec: dict):
    """Returns ``(ring, coefficient_matrices or None, operator or None)``."""
    if not isinstance(spec, dict) or "field" not in spec or "twist" not in spec:
        raise InputError("system needs 'field' and 'twist'")
    twist = spec["twist"]
    if twist in ("derivative", DERIVATIVE):
        f = field_from_json(spec["field"], None, DERIVATIVE)
        name = spec.get("indeterminate", "D")
    elif isinstance(twist, dict) and Q_SHIFT in twist:
        f = field_from_json(spec["field"], twist, None)
        name = spec.get("indeterminate", "S")
    else:
        raise InputError(f"unrecognised twist {twist!r}")
    ring = OreRing(f, name)
    if "operator" in spec:
        return ring, None, ring.parse(str(spec["operator"]))
    coeffs = spec.get("coefficients")
    if not isinstance(coeffs, list) or not coeffs:
        raise InputError("system needs 'coefficients' (or 'operator')")
    n = spec.get("n")
    mats = []
    for m in coeffs:
        if not isinstance(m, list) or (n is not None and len(m) != n):
            raise SizeMismatch("coefficient matrix has the wrong size")
        rows = []
        for i, row in enumerate(m):
            if not isinstance(row, list) or len(row) != len(m):
                raise SizeMismatch("coefficient matrices must be square")
            out = []
            for j, text in enumerate(row):
                try:
                    out.append(f.parse(str(text)))
                except ParseError as exc:
                    exc.entry = (i, j)
                    raise
            rows.append(out)
        mats.append(rows)
    return ring, mats, None
