"""Seeded randomized property suites across all ring instances.

Each suite draws its cases from its own ``random.Random`` seeded by
``(seed, suite, instance)``, so the report does not depend on execution
order.  On the first failing case the runner searches smaller size caps for
a counterexample of least size and stops after that suite.
"""

import random
import time
from dataclasses import dataclass
from typing import Callable

from .endos import evaluate_t_poly, kernel_rank, t_module_rank
from .errors import NotAUnit
from .field import DERIVATIVE, FROBENIUS, FieldDescriptor, FieldElement, rational_functions
from .matrix import (INFINITY, AddLeftMultiple, OreMatrix, ScaleUnit, Swap, deg_det, diagonal,
                     identity, invert, replay, row_echelon)
from .ode import assemble_system, companion_system, solution_dimension
from .oracles import commutative_oracle, quotient_dim_oracle
from .ore import BOTTOM, OrePoly, OreRing, left_divmod
from .sampling import (commutative_instances, random_element, random_matrix, random_poly,
                       random_singular_matrix, random_unit, twisted_instances)


@dataclass(frozen=True)
class Caps:
    n: int = 3
    deg: int = 2


@dataclass(frozen=True)
class Property:
    suite: str
    instance: str
    count: int
    generate: Callable  # (rng, caps) -> case
    check: Callable  # case -> bool


class _BrokenDerivative(FieldDescriptor):
    """Test fixture: delta(a) = a' + a, which violates the Leibniz rule."""

    def _delta(self, x):
        return self._add(super()._delta(x), x)


def broken_twist_instance() -> OreRing:
    good = rational_functions("x", delta=DERIVATIVE)
    bad = _BrokenDerivative(good.kind, good.p, good.modulus, good.variable,
                            good.alpha, good.q, good.delta)
    return OreRing(bad, "D")


FAULTS = ("broken-twist",)


def _instances(fault=None) -> dict:
    rings = dict(twisted_instances())
    if fault == "broken-twist":
        rings["Q(x)[D]"] = broken_twist_instance()
    elif fault is not None:
        raise ValueError(f"unknown fault {fault!r}")
    rings.update(commutative_instances())
    return rings


# -- case rendering --------------------------------------------------------------

def _render(obj):
    if isinstance(obj, OreMatrix):
        return obj.to_strings()
    if isinstance(obj, (OrePoly, FieldElement)):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_render(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _render(v) for k, v in obj.items()}
    return obj


# -- field level -----------------------------------------------------------------

def _elements(k):
    def gen(rng, caps):
        f = caps.field
        return tuple(random_element(rng, f, complexity=caps.deg) for _ in range(k))
    return gen


def _field_axioms(case):
    a, b, c = case
    f = a.field
    ok = (a + b == b + a and a * b == b * a and (a + b) + c == a + (b + c)
          and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
          and a - a == f.zero and a * f.one == a and f.parse(str(a)) == a)
    if a:
        ok = ok and a * a.inverse() == f.one
    return ok


def _alpha_hom(case):
    a, b = case
    f = a.field
    return ((a + b).alpha() == a.alpha() + b.alpha() and (a * b).alpha() == a.alpha() * b.alpha()
            and f.one.alpha() == f.one)


def _leibniz(case):
    a, b = case
    f = a.field
    return (f.one.delta() == f.zero and (a + b).delta() == a.delta() + b.delta()
            and (a * b).delta() == a.delta() * b.alpha() + a * b.delta())


class _FieldCaps:
    """Caps plus the field, so field generators share the Property signature."""

    def __init__(self, field, caps):
        self.field = field
        self.n = caps.n
        self.deg = caps.deg


def _field_property(suite, name, f, count, k, check):
    gen = _elements(k)
    return Property(suite, name, count, lambda rng, caps: gen(rng, _FieldCaps(f, caps)), check)


# -- ring level ------------------------------------------------------------------

def _polys(ring, k):
    def gen(rng, caps):
        return tuple(random_poly(rng, ring, 2 * caps.deg, zero_prob=0.1) for _ in range(k))
    return gen


def _ring_axioms(case):
    a, b, c = case
    ring = a.ring
    return ((a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
            and (a + b) * c == a * c + b * c and a * ring.one == a == ring.one * a
            and ring.parse(str(a)) == a)


def _degree_additivity(case):
    a, b = case
    return (a * b).degree == a.degree + b.degree


def _division_gen(ring):
    def gen(rng, caps):
        b = random_poly(rng, ring, 3 * caps.deg, zero_prob=0.05)
        a = random_poly(rng, ring, 2 * caps.deg)
        s = random_poly(rng, ring, 1)
        return b, a, s
    return gen


def _division_contract(case):
    b, a, s = case
    q, r = left_divmod(b, a)
    if q * a + r != b or not (r.degree is BOTTOM or r.degree < a.degree):
        return False
    # any other quotient q + s leaves a remainder of degree >= deg a
    r2 = b - (q + s) * a
    return r2.degree is not BOTTOM and r2.degree >= a.degree


def _matrix_gen(ring, dn=0, dd=0):
    def gen(rng, caps):
        n = rng.randint(1, caps.n + dn)
        return random_matrix(rng, ring, n, caps.deg + dd)
    return gen


def _commutative_degeneration(a):
    return deg_det(a).value == commutative_oracle(a)


def _pair_gen(ring):
    def gen(rng, caps):
        n = rng.randint(1, caps.n)
        a = random_matrix(rng, ring, n, caps.deg)
        b = random_matrix(rng, ring, n, caps.deg)
        if n > 1 and rng.random() < 0.2:
            if rng.random() < 0.5:
                a = random_singular_matrix(rng, ring, n, caps.deg)
            else:
                b = random_singular_matrix(rng, ring, n, caps.deg)
        return a, b
    return gen


def _multiplicativity(case):
    a, b = case
    return deg_det(a * b).value == deg_det(a).value + deg_det(b).value


def _oracle_agreement(a):
    return deg_det(a).value == quotient_dim_oracle(a)


def _unit_gen(ring):
    def gen(rng, caps):
        n = rng.randint(1, caps.n)
        u = random_unit(rng, ring, n, steps=2 * n + 1, max_degree=max(caps.deg - 1, 0))
        d = [ring.one] * n
        d[rng.randrange(n)] = random_poly(rng, ring, caps.deg, exact_degree=rng.randint(1, max(caps.deg, 1)))
        nonunit = diagonal(ring, d) * random_unit(rng, ring, n, steps=n + 1, max_degree=1)
        return u, nonunit
    return gen


def _unit_criterion(case):
    u, nonunit = case
    if deg_det(u).value != 0:
        return False
    inv = invert(u)
    if not ((u * inv).is_identity() and (inv * u).is_identity()):
        return False
    if deg_det(nonunit).value == 0:
        return False
    try:
        invert(nonunit)
    except NotAUnit:
        return True
    return False


def _echelon_gen(ring):
    def gen(rng, caps):
        n = rng.randint(1, caps.n)
        a = random_matrix(rng, ring, n, caps.deg)
        ops = []
        for _ in range(2):
            if n > 1 and rng.random() < 0.5:
                i, j = rng.sample(range(n), 2)
                ops.append(AddLeftMultiple(i, j, random_poly(rng, ring, caps.deg)) if rng.random() < 0.7
                           else Swap(i, j))
            else:
                ops.append(ScaleUnit(rng.randrange(n), random_element(rng, ring.field, nonzero=True)))
        return a, ops
    return gen


def _echelon_replay(case):
    a, ops = case
    ech = row_echelon(a)
    if replay(a, ech.ops_log) != ech.echelon:
        return False
    prev_col = -1
    for k, p in enumerate(ech.pivots):
        if p.row != k or p.column <= prev_col or p.degree != ech.echelon[k, p.column].degree:
            return False
        if any(ech.echelon[i, p.column] for i in range(k + 1, a.n)):
            return False
        prev_col = p.column
    for i in range(len(ech.pivots), a.n):
        if any(ech.echelon[i, j] for j in range(a.n)):
            return False
    # deg det is invariant under elementary row operations
    return deg_det(replay(a, ops)).value == deg_det(a).value


# -- applications ----------------------------------------------------------------

def _drinfeld_rings():
    return {p: OreRing(rational_functions("theta", p=p, alpha=FROBENIUS), "tau") for p in (2, 3, 5)}


def _t_module_gen(rings):
    def gen(rng, caps):
        p = rng.choice(sorted(rings))
        ring = rings[p]
        n = rng.randint(1, min(caps.n, 3))
        exps = [rng.randint(0, 3) for _ in range(n)]
        fixture = rng.choice(("theta + tau", "theta + (theta^2 + 1)*tau + tau^2"))
        if p == 5:
            fixture = "theta + tau"  # rank 2 at p = 5 makes phi(f*g) coefficients huge
        f = [rng.randrange(p) for _ in range(rng.randint(0, 3))] + [rng.randrange(1, p)]
        g = [rng.randrange(p) for _ in range(rng.randint(0, 3))] + [rng.randrange(1, p)]
        return p, exps, fixture, f, g
    return gen


def _poly_mul_mod(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def _t_module(case, rings):
    p, exps, fixture, f, g = case
    ring = rings[p]
    tau = ring.gen()
    report = kernel_rank(diagonal(ring, [tau ** e for e in exps]))
    if report.rank != p ** sum(exps):
        return False
    phi = OreMatrix.parse(ring, [[fixture]])
    if evaluate_t_poly(phi, _poly_mul_mod(f, g, p)) != evaluate_t_poly(phi, f) * evaluate_t_poly(phi, g):
        return False
    tm = t_module_rank(phi, (f, g))
    return tm.consistent and tm.r == phi[0, 0].degree


def _ode_gen(ring):
    def gen(rng, caps):
        d = rng.randint(1, max(1, min(4, 2 * caps.deg)))
        op = random_poly(rng, ring, d, exact_degree=d)
        op = op.left_scale(op.leading_coefficient().inverse())
        n = rng.randint(1, caps.n)
        m = [[random_element(rng, ring.field) for _ in range(n)] for _ in range(n)]
        return op, m
    return gen


def _ode(case):
    op, m = case
    ring = op.ring
    f = ring.field
    d = op.degree
    if solution_dimension(assemble_system(ring, companion_system(op))).dimension != d:
        return False
    if deg_det(OreMatrix._raw(ring, [[op]])).value != d:
        return False
    n = len(m)
    eye = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    neg_m = [[-c for c in row] for row in m]
    return solution_dimension(assemble_system(ring, [neg_m, eye])).dimension == n


# -- suite table -----------------------------------------------------------------

SUITES = ("field_axioms", "alpha_homomorphism", "leibniz", "ring_axioms", "degree_additivity",
          "division_contract", "commutative_degeneration", "multiplicativity", "oracle_agreement",
          "unit_criterion", "echelon_replay", "t_module", "ode")

DEFAULT_COUNTS = {
    "field_axioms": 150, "alpha_homomorphism": 150, "leibniz": 150, "ring_axioms": 40,
    "degree_additivity": 60, "division_contract": 80, "commutative_degeneration": 60,
    "multiplicativity": 30, "oracle_agreement": 30, "unit_criterion": 15, "echelon_replay": 20,
    "t_module": 60, "ode": 40,
}


def build_properties(fault=None, counts=None) -> list:
    counts = {**DEFAULT_COUNTS, **(counts or {})}
    rings = _instances(fault)
    twisted = [k for k in rings if k not in commutative_instances()]
    props = []
    for name, ring in rings.items():
        f = ring.field
        props.append(_field_property("field_axioms", name, f, counts["field_axioms"], 3, _field_axioms))
        props.append(_field_property("alpha_homomorphism", name, f, counts["alpha_homomorphism"], 2, _alpha_hom))
        props.append(_field_property("leibniz", name, f, counts["leibniz"], 2, _leibniz))
    for name, ring in rings.items():
        props.append(Property("ring_axioms", name, counts["ring_axioms"], _polys(ring, 3), _ring_axioms))
        props.append(Property("degree_additivity", name, counts["degree_additivity"], _polys(ring, 2),
                              _degree_additivity))
        props.append(Property("division_contract", name, counts["division_contract"], _division_gen(ring),
                              _division_contract))
    for name, ring in commutative_instances().items():
        props.append(Property("commutative_degeneration", name, counts["commutative_degeneration"],
                              _matrix_gen(ring, dn=1, dd=1), _commutative_degeneration))
    for name, ring in rings.items():
        props.append(Property("multiplicativity", name, counts["multiplicativity"], _pair_gen(ring),
                              _multiplicativity))
        props.append(Property("oracle_agreement", name, counts["oracle_agreement"], _matrix_gen(ring),
                              _oracle_agreement))
        props.append(Property("unit_criterion", name, counts["unit_criterion"], _unit_gen(ring),
                              _unit_criterion))
        props.append(Property("echelon_replay", name, counts["echelon_replay"], _echelon_gen(ring),
                              _echelon_replay))
    drinfeld = _drinfeld_rings()
    props.append(Property("t_module", "F_p(theta)[tau]", counts["t_module"], _t_module_gen(drinfeld),
                          lambda case: _t_module(case, drinfeld)))
    for name in ("Q(x)[D]", "Q(x)[S]"):
        if name in twisted:
            props.append(Property("ode", name, counts["ode"], _ode_gen(rings[name]), _ode))
    order = {s: i for i, s in enumerate(SUITES)}
    props.sort(key=lambda p: order[p.suite])  # stable: instance order is kept
    return props


# -- runner ----------------------------------------------------------------------

def _holds(prop, case):
    try:
        return bool(prop.check(case)), None
    except Exception as exc:  # a crash counts as a failed check
        return False, f"{type(exc).__name__}: {exc}"


def _shrink(prop, seed, caps, limit=30):
    """Smallest-caps failing case found by resampling, or None."""
    sizes = sorted(((n, d) for n in range(1, caps.n + 1) for d in range(0, caps.deg + 1)),
                   key=lambda nd: (nd[0] + nd[1], nd))
    for n, d in sizes:
        small = Caps(n, d)
        rng = random.Random(f"shrink/{seed}/{prop.suite}/{prop.instance}/{n}/{d}")
        for _ in range(limit):
            try:
                case = prop.generate(rng, small)
            except Exception:
                continue
            ok, err = _holds(prop, case)
            if not ok:
                return {"caps": {"n": n, "deg": d}, "case": _render(case), "error": err}
    return None


def run_selftest(seed: int = 0, caps: Caps = Caps(), fault=None, counts=None,
                 suites=None) -> dict:
    """Runs the suites; returns a JSON-ready report (``passed`` plus per-suite counts)."""
    props = build_properties(fault, counts)
    if suites is not None:
        unknown = set(suites) - set(SUITES)
        if unknown:
            raise ValueError(f"unknown suites {sorted(unknown)}")
        props = [p for p in props if p.suite in suites]
    summary = {}
    failure = None
    total = 0
    for prop in props:
        entry = summary.setdefault(prop.suite, {"checks": 0, "failures": 0, "instances": []})
        if failure is not None and failure["suite"] != prop.suite:
            entry["skipped"] = True
            continue
        entry["instances"].append(prop.instance)
        rng = random.Random(f"{seed}/{prop.suite}/{prop.instance}")
        for i in range(prop.count):
            case = prop.generate(rng, caps)
            ok, err = _holds(prop, case)
            entry["checks"] += 1
            total += 1
            if ok:
                continue
            entry["failures"] += 1
            if failure is None:
                failure = {"suite": prop.suite, "instance": prop.instance, "case_index": i,
                           "case": _render(case), "error": err,
                           "minimized": _shrink(prop, seed, caps)}
            break
    suites_out = [{"name": name, **data, "passed": data["failures"] == 0 and not data.get("skipped")}
                  for name, data in summary.items()]
    return {
        "seed": seed,
        "caps": {"n": caps.n, "deg": caps.deg},
        "fault": fault,
        "total_checks": total,
        "passed": failure is None,
        "suites": suites_out,
        "counterexample": failure,
    }


def timed_selftest(**kwargs):
    start = time.perf_counter()
    report = run_selftest(**kwargs)
    return report, time.perf_counter() - start
