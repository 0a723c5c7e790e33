import random
from fractions import Fraction

import pytest

from hfsigma.errors import UnsupportedOperation
from hfsigma.linalg import (GroupPresentation, SparseExactMatrix, cokernel,
                            integer_kernel_lattice, kernel_basis, kernel_rank,
                            lattice_quotient, rank, smith_normal_form,
                            solve_columns)
from hfsigma.rings import GF, QQ, ZZ


def random_mat(rng, r, c, lo=-4, hi=4, density=0.6):
    m = SparseExactMatrix(r, c, ZZ)
    for i in range(r):
        for j in range(c):
            if rng.random() < density:
                m[i, j] = rng.randint(lo, hi)
    return m


def unimod_shuffle(rng, m, steps=25):
    m = m.copy()
    for _ in range(steps):
        if rng.random() < 0.5 and m.rows > 1:
            i, j = rng.randrange(m.rows), rng.randrange(m.rows)
            if i == j:
                continue
            q = rng.randint(-3, 3)
            for c in range(m.cols):
                m[i, c] = m[i, c] + q * m[j, c]
        elif m.cols > 1:
            i, j = rng.randrange(m.cols), rng.randrange(m.cols)
            if i == j:
                continue
            q = rng.randint(-3, 3)
            for r in range(m.rows):
                m[r, i] = m[r, i] + q * m[r, j]
    return m


def brute_snf_2x2(a, b, c, d):
    # independent oracle for 2x2: d1 = gcd of entries, d1*d2 = |det|
    from math import gcd
    d1 = gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d)))
    det = abs(a * d - b * c)
    if d1 == 0:
        return []
    if det == 0:
        return [d1]
    return [d1, det // d1]


def test_snf_examples():
    m = SparseExactMatrix(3, 3, ZZ, {(i, i): 1 for i in range(3)})
    assert smith_normal_form(m) == [1, 1, 1]
    assert smith_normal_form(SparseExactMatrix(2, 3, ZZ)) == []
    assert cokernel(SparseExactMatrix(2, 3, ZZ)) == GroupPresentation(2)
    m = SparseExactMatrix(2, 2, ZZ, {(0, 0): 2, (1, 1): 3})
    assert smith_normal_form(m) == brute_snf_2x2(2, 0, 0, 3) == [1, 6]
    m = SparseExactMatrix(1, 1, ZZ, {(0, 0): 2})
    assert cokernel(m) == GroupPresentation(0, [2])


def test_snf_2x2_against_oracle():
    rng = random.Random(11)
    for _ in range(40):
        a, b, c, d = (rng.randint(-9, 9) for _ in range(4))
        m = SparseExactMatrix(2, 2, ZZ, {(0, 0): a, (0, 1): b, (1, 0): c, (1, 1): d})
        assert smith_normal_form(m) == brute_snf_2x2(a, b, c, d)


def test_snf_unimodular_invariance_and_rank():
    rng = random.Random(5)
    for _ in range(12):
        m = random_mat(rng, rng.randint(1, 6), rng.randint(1, 6))
        f1 = smith_normal_form(m)
        assert smith_normal_form(unimod_shuffle(rng, m)) == f1
        rk = rank(m, QQ)
        assert len(f1) == rk
        assert cokernel(m).free_rank + rk == m.rows
        assert kernel_rank(m, QQ) == m.cols - rk
        for p in (2, 3, 5, 7, 11, 13):
            if all(f % p for f in f1):
                assert rank(m, GF(p)) == rk


def test_coker_presentation_invariance():
    rng = random.Random(6)
    for _ in range(10):
        m = random_mat(rng, 5, 5)
        assert cokernel(unimod_shuffle(rng, m)) == cokernel(m)


def dense_rank_f2(m):
    rows = [[int(m[i, j]) % 2 for j in range(m.cols)] for i in range(m.rows)]
    rk = 0
    for col in range(m.cols):
        piv = next((r for r in range(rk, m.rows) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for r in range(m.rows):
            if r != rk and rows[r][col]:
                rows[r] = [(a + b) % 2 for a, b in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def test_f2_rank_against_dense_oracle():
    rng = random.Random(7)
    for _ in range(20):
        m = random_mat(rng, 6, 6, 0, 1, 0.5).convert(GF(2))
        assert rank(m) == dense_rank_f2(m)


def test_field_kernel_and_z_restriction():
    rng = random.Random(8)
    for _ in range(10):
        m = random_mat(rng, 5, 7).convert(QQ)
        basis = kernel_basis(m)
        assert len(basis) == m.cols - rank(m)
        for v in basis:
            assert not m.mul_vector(v)
    with pytest.raises(UnsupportedOperation):
        kernel_basis(random_mat(rng, 3, 3))


def test_integer_kernel_lattice_saturated():
    rng = random.Random(9)
    for _ in range(15):
        m = random_mat(rng, rng.randint(1, 6), rng.randint(1, 7))
        kb = integer_kernel_lattice(m)
        assert len(kb) == m.cols - rank(m, QQ)
        for v in kb:
            assert not m.mul_vector(v)
        if kb:
            basis_matrix = SparseExactMatrix.from_columns(m.cols, kb)
            assert all(f == 1 for f in smith_normal_form(basis_matrix))


def test_solve_columns_roundtrip():
    rng = random.Random(10)
    done = 0
    while done < 8:
        k = rng.randint(1, 5)
        b = random_mat(rng, 6, k)
        if rank(b, QQ) < k:
            continue
        done += 1
        y = {i: rng.randint(-3, 3) for i in range(k)}
        x = b.mul_vector(y)
        sol, = solve_columns(b.col_dicts(), [x], 6)
        assert {i: int(v) for i, v in sol.items() if v} == {i: v for i, v in y.items() if v}


def test_lattice_quotient():
    q = lattice_quotient([{0: 1}, {1: 1}], [{0: 2}, {1: 3}], 2)
    assert q == GroupPresentation(0, [6])
    q = lattice_quotient([{0: 1}, {1: 1}], [{0: 2}], 2)
    assert q == GroupPresentation(1, [2])


def test_presentation_normalization():
    g = GroupPresentation(1, [3, 2, 1, 4])
    assert g.invariant_factors == (2, 12)
    fs = g.invariant_factors
    assert all(fs[i + 1] % fs[i] == 0 for i in range(len(fs) - 1))
    assert g.torsion_order() == 24
    assert str(GroupPresentation(2, [2, 2, 6])) == "Z^2 + (Z/2)^2 + Z/6"
    assert str(GroupPresentation(0, [])) == "0"


def test_matrix_json_roundtrip():
    rng = random.Random(12)
    m = random_mat(rng, 4, 5)
    assert SparseExactMatrix.from_json(m.to_json()) == m
    mq = m.convert(QQ)
    mq[0, 0] = Fraction(1, 2)
    assert SparseExactMatrix.from_json(mq.to_json()) == mq
