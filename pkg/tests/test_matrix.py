import pickle
import random

import pytest

from skewdet.errors import MixedContexts, NotAUnit, SizeMismatch
from skewdet.field import FROBENIUS, prime_field
from skewdet.matrix import (INFINITY, DegDetValue, OreMatrix, deg_det, diagonal, elementary,
                            identity, invert, mat_mul, op_from_json, op_matrix, replay,
                            row_echelon)
from skewdet.ore import OreRing
from skewdet.sampling import (random_element, random_matrix, random_poly, random_singular_matrix,
                              random_unit)

from conftest import ALL_RINGS, frobenius_ring


def test_identity_is_neutral(any_ring):
    rng = random.Random(f"neutral/{any_ring}")
    a = random_matrix(rng, any_ring, 3, 2)
    eye = identity(any_ring, 3)
    assert a * eye == a == eye * a


def test_diagonal_product_commutes_coefficient():
    r = frobenius_ring(5)
    tau = r.gen()
    assert diagonal(r, [tau]) * diagonal(r, [r(2)]) == diagonal(r, [r(2 ** 5 % 5) * tau])


def test_elementary_inverse_pair(qx_d):
    r = qx_d.parse("x*D + 1")
    assert (elementary(qx_d, 2, 0, 1, r) * elementary(qx_d, 2, 0, 1, -r)).is_identity()


def test_echelon_fixture(qx_d):
    a = OreMatrix.parse(qx_d, [["D", "-1"], ["1", "D"]])
    ech = row_echelon(a)
    assert ech.echelon == OreMatrix.parse(qx_d, [["1", "D"], ["0", "-(D^2 + 1)"]])
    assert [p.degree for p in ech.pivots] == [0, 2]
    assert replay(a, ech.ops_log) == ech.echelon
    assert deg_det(a).value == 2


def test_upper_triangular_is_already_echelon(qx_s):
    a = OreMatrix.parse(qx_s, [["S + 1", "x"], ["0", "S^2"]])
    ech = row_echelon(a)
    assert ech.echelon == a and ech.ops_log == ()


def test_degenerate_echelon():
    r = OreRing(prime_field(5), "x")
    a = OreMatrix.parse(r, [["0", "1"], ["0", "0"]])
    ech = row_echelon(a)
    assert ech.echelon == a
    assert len(ech.pivots) == 1
    assert deg_det(a) == DegDetValue(INFINITY, 1)


def test_deg_det_fixtures():
    r = OreRing(prime_field(5), "x")
    assert deg_det(diagonal(r, [r.parse("x^2+1"), r.gen()])).value == 3
    assert deg_det(identity(r, 3)).value == 0
    assert deg_det(elementary(r, 3, 2, 0, r.parse("x^4 + 2"))).value == 0
    assert deg_det(OreMatrix.parse(r, [["x", "x"], ["x", "x"]])) == DegDetValue(INFINITY, 1)


def test_diagonal_clause(any_ring):
    rng = random.Random(f"diag/{any_ring}")
    for _ in range(30):
        entries = [random_poly(rng, any_ring, 3, zero_prob=0.1) for _ in range(rng.randint(1, 4))]
        expected = sum(e.degree for e in entries) if all(entries) else INFINITY
        assert deg_det(diagonal(any_ring, entries)).value == expected


@pytest.mark.parametrize("name", ["F5[tau]", "Q(x)[D]", "F5[x]"])
def test_surjectivity_witness(name):
    ring = ALL_RINGS[name]
    for m in range(21):
        for n in (1, 3):
            entries = [ring.gen() ** m] + [ring.one] * (n - 1)
            assert deg_det(diagonal(ring, entries)).value == m


def _k_rank(rows, f):
    rows = [list(r) for r in rows]
    rank = 0
    n = len(rows)
    for col in range(n):
        piv = next((i for i in range(rank, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        for i in range(n):
            if i != rank and rows[i][col]:
                c = rows[i][col] * inv
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_degree_zero_matrices_follow_k_rank(any_ring):
    rng = random.Random(f"k-rank/{any_ring}")
    f = any_ring.field
    for _ in range(40):
        n = rng.randint(1, 4)
        rows = [[random_element(rng, f) if rng.random() > 0.3 else f.zero for _ in range(n)]
                for _ in range(n)]
        a = OreMatrix._raw(any_ring, [[any_ring(c) for c in row] for row in rows])
        expected = 0 if _k_rank(rows, f) == n else INFINITY
        assert deg_det(a).value == expected


def test_echelon_shape_and_replay(any_ring):
    rng = random.Random(f"shape/{any_ring}")
    for _ in range(25):
        n = rng.randint(1, 3)
        a = random_matrix(rng, any_ring, n, 2) if rng.random() < 0.7 else \
            random_singular_matrix(rng, any_ring, max(n, 2), 2)
        ech = row_echelon(a)
        assert replay(a, ech.ops_log) == ech.echelon
        # ops survive a JSON round trip
        ops = [op_from_json(any_ring, op.to_json()) for op in ech.ops_log]
        assert replay(a, ops) == ech.echelon
        cols = [p.column for p in ech.pivots]
        assert cols == sorted(set(cols))
        for k, p in enumerate(ech.pivots):
            assert p.row == k and ech.echelon[k, p.column].degree == p.degree
            assert all(not ech.echelon[i, p.column] for i in range(k + 1, a.n))
            assert all(not ech.echelon[k, j] for j in range(p.column))
        for i in range(len(ech.pivots), a.n):
            assert all(not e for e in ech.echelon.rows[i])
        # every logged operation has an inverse and deg det zero
        for op in ech.ops_log:
            e = op_matrix(any_ring, a.n, op)
            assert (e * op_matrix(any_ring, a.n, op.inverse())).is_identity()


def test_row_operation_invariance(any_ring):
    rng = random.Random(f"rowops/{any_ring}")
    for _ in range(20):
        n = rng.randint(1, 3)
        a = random_matrix(rng, any_ring, n, 2)
        u = random_unit(rng, any_ring, n)
        assert deg_det(u * a).value == deg_det(a).value


def test_deg_det_value_arithmetic():
    assert (DegDetValue(2) + DegDetValue(3)).value == 5
    total = DegDetValue(2) + DegDetValue(INFINITY, 1)
    assert total.value is INFINITY and not total.finite
    assert DegDetValue(INFINITY, 2).to_json() == {"degdet": "infinite", "free_rank_s": 2}
    assert INFINITY > 10 ** 9 and INFINITY + 1 is INFINITY
    assert pickle.loads(pickle.dumps(INFINITY)) is INFINITY


def test_invert_examples(qx_d):
    eye = identity(qx_d, 3)
    assert invert(eye) == eye
    r = qx_d.parse("x^2*D^3 + 1/x")
    a = OreMatrix._raw(qx_d, [[qx_d.one, r], [qx_d.zero, qx_d.one]])
    assert invert(a) == OreMatrix._raw(qx_d, [[qx_d.one, -r], [qx_d.zero, qx_d.one]])
    with pytest.raises(NotAUnit):
        invert(OreMatrix.parse(qx_d, [["x*D"]]))
    with pytest.raises(NotAUnit):
        invert(OreMatrix.parse(qx_d, [["1", "D"], ["1", "D"]]))


def test_invert_is_two_sided(any_ring):
    rng = random.Random(f"invert/{any_ring}")
    for _ in range(15):
        n = rng.randint(1, 3)
        u = random_unit(rng, any_ring, n, steps=5)
        inv = invert(u)
        assert (u * inv).is_identity() and (inv * u).is_identity()


def test_size_and_context_errors(qx_d, qx_s):
    with pytest.raises(SizeMismatch):
        mat_mul(identity(qx_d, 2), identity(qx_d, 3))
    with pytest.raises(MixedContexts):
        mat_mul(identity(qx_d, 2), identity(qx_s, 2))
    with pytest.raises(SizeMismatch):
        OreMatrix(qx_d, [[1, 2]])
