"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear even without -s).
"""

import io
import itertools
import json
import random
import time
from contextlib import redirect_stdout

import pytest

from skewdet.cli import main
from skewdet.endos import DEFAULT_SAMPLES, kernel_rank, t_module_rank
from skewdet.errors import NotAUnit
from skewdet.matrix import INFINITY, OreMatrix, deg_det, diagonal, invert
from skewdet.ode import assemble_system, companion_system, solution_dimension
from skewdet.oracles import UNSTABLE, commutative_oracle, quotient_dim_oracle
from skewdet.ore import OrePoly, left_divmod
from skewdet.sampling import (commutative_instances, random_element, random_matrix, random_poly,
                              random_singular_matrix, random_unit, twisted_instances)
from skewdet.selftest import timed_selftest

from conftest import drinfeld_ring, frobenius_ring

TWISTED = twisted_instances()
ALL = {**TWISTED, **commutative_instances()}


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
        assert ok, detail
    return emit


def _plus(a, b):
    return INFINITY if INFINITY in (a, b) else a + b


def test_criterion_1_oracle_agreement(report):
    bad, unstable, total = [], 0, 0
    for name, ring in TWISTED.items():
        rng = random.Random(f"acceptance/1/{name}")
        for i in range(200):
            a = random_matrix(rng, ring, rng.randint(1, 3), 2)
            oracle = quotient_dim_oracle(a)
            total += 1
            if oracle is UNSTABLE:
                unstable += 1
            elif deg_det(a).value != oracle:
                bad.append((name, i))
    report(1, not bad and unstable == 0,
           f"{total} matrices over 5 twisted rings, {len(bad)} disagreements, {unstable} unstable")


def test_criterion_2_commutative_degeneration(report):
    bad, total = [], 0
    for name, ring in commutative_instances().items():
        rng = random.Random(f"acceptance/2/{name}")
        for i in range(200):
            a = random_matrix(rng, ring, rng.randint(1, 4), 3)
            total += 1
            if deg_det(a).value != commutative_oracle(a):
                bad.append((name, i))
    report(2, not bad, f"{total} matrices over F_5 and Q, {len(bad)} disagreements")


def test_criterion_3_multiplicativity(report):
    bad, singular, total = [], {}, 0
    for name, ring in ALL.items():
        rng = random.Random(f"acceptance/3/{name}")
        singular[name] = 0
        for i in range(500):
            if i % 5 == 0:
                n = rng.randint(2, 3)
                s = random_singular_matrix(rng, ring, n, 2)
                other = random_matrix(rng, ring, n, 2)
                a, b = (s, other) if i % 10 == 0 else (other, s)
                singular[name] += 1
            else:
                n = rng.randint(1, 3)
                a, b = random_matrix(rng, ring, n, 2), random_matrix(rng, ring, n, 2)
            total += 1
            if deg_det(a * b).value != _plus(deg_det(a).value, deg_det(b).value):
                bad.append((name, i))
    few = min(singular.values())
    report(3, not bad and few >= 50,
           f"{total} pairs over {len(ALL)} rings (>= {few} singular each), {len(bad)} violations")


def test_criterion_4_unit_criterion(report):
    bad, units, nonunits = [], 0, 0
    for name, ring in TWISTED.items():
        rng = random.Random(f"acceptance/4/{name}")
        for i in range(100):
            n = rng.randint(1, 3)
            u = random_unit(rng, ring, n, steps=2 * n + 1)
            units += 1
            inv = invert(u) if deg_det(u).value == 0 else None
            if inv is None or not ((u * inv).is_identity() and (inv * u).is_identity()):
                bad.append((name, "unit", i))
            d = [ring.one] * n
            d[rng.randrange(n)] = random_poly(rng, ring, 2, exact_degree=rng.randint(1, 2))
            m = random_unit(rng, ring, n, steps=n) * diagonal(ring, d) * random_unit(rng, ring, n, steps=n)
            nonunits += 1
            value = deg_det(m).value
            try:
                invert(m)
                bad.append((name, "nonunit", i))
            except NotAUnit:
                if value is not INFINITY and value < 1:
                    bad.append((name, "nonunit-degree", i))
    report(4, not bad, f"{units} units inverted two-sided, {nonunits} non-units rejected, "
                       f"{len(bad)} failures")


def test_criterion_5_division_contract(report):
    bad, total = [], 0
    for name, ring in ALL.items():
        rng = random.Random(f"acceptance/5/{name}")
        for i in range(1000):
            a = random_poly(rng, ring, 3)
            b = random_poly(rng, ring, 6, zero_prob=0.05)
            q, r = left_divmod(b, a)
            total += 1
            if not (isinstance(q, OrePoly) and q * a + r == b and r.degree < a.degree):
                bad.append((name, i))
    report(5, not bad, f"{total} divisions over {len(ALL)} rings, {len(bad)} contract violations")


def test_criterion_6_additive_endomorphisms(report):
    bad, count = [], 0
    for p in (2, 3, 5):
        r = frobenius_ring(p)
        tau = r.gen()
        for n in (1, 2, 3):
            for exps in itertools.product(range(4), repeat=n):
                count += 1
                if kernel_rank(diagonal(r, [tau ** e for e in exps])).rank != p ** sum(exps):
                    bad.append((p, exps))
        d = drinfeld_ring(p)
        carlitz = t_module_rank(OreMatrix.parse(d, [["theta + tau"]]), DEFAULT_SAMPLES)
        if carlitz.r != 1 or not carlitz.consistent:
            bad.append((p, "carlitz"))
        rank2 = t_module_rank(OreMatrix.parse(d, [["theta + (theta^2 + 1)*tau + tau^2"]]))
        if rank2.r != 2 or not rank2.consistent:
            bad.append((p, "rank-2"))
    report(6, not bad, f"{count} diagonal kernels and Carlitz/rank-2 modules for p in 2, 3, 5, "
                       f"{len(bad)} failures")


def test_criterion_7_solution_dimensions(report):
    bad, count = [], 0
    for name in ("Q(x)[D]", "Q(x)[S]"):
        ring = TWISTED[name]
        f = ring.field
        rng = random.Random(f"acceptance/7/{name}")
        for d in range(1, 5):
            for _ in range(5):
                op = random_poly(rng, ring, d, exact_degree=d)
                op = op.left_scale(op.leading_coefficient().inverse())
                count += 1
                if solution_dimension(assemble_system(ring, companion_system(op))).dimension != d:
                    bad.append((name, "companion", d))
        for n in range(1, 4):
            for _ in range(5):
                m = [[-random_element(rng, f) for _ in range(n)] for _ in range(n)]
                eye = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
                count += 1
                if solution_dimension(assemble_system(ring, [m, eye])).dimension != n:
                    bad.append((name, "first-order", n))
        zero_row = OreMatrix.parse(ring, [[f"{ring.name} - 1", "x", "0"], ["0", "1", ring.name],
                                          ["0", "0", "0"]])
        rep = solution_dimension(zero_row)
        count += 1
        if rep.degdet is not INFINITY or rep.dimension is not None or rep.free_rank_s != 1:
            bad.append((name, "zero-row"))
    report(7, not bad, f"{count} systems under derivative and q-shift twists, {len(bad)} failures")


def _cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_criterion_8_cli_determinism_and_fault_injection(report):
    code1, first = _cli(["selftest", "--seed", "11", "--no-timing"])
    code2, second = _cli(["selftest", "--seed", "11", "--no-timing"])
    code3, faulty = _cli(["selftest", "--inject-fault", "broken-twist", "--no-timing"])
    ce = json.loads(faulty)["result"]["counterexample"]
    full, seconds = timed_selftest(seed=0)
    ok = (code1 == code2 == 0 and first == second and code3 == 5 and ce["suite"] == "leibniz"
          and full["passed"] and seconds < 120)
    report(8, ok, f"identical reports {first == second}, fault exit {code3} in suite {ce['suite']}, "
                  f"full selftest {full['total_checks']} checks in {seconds:.1f}s")
