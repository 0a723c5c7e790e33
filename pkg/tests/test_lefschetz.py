import random
from math import comb

import pytest

from hfsigma.errors import DomainError
from hfsigma.exterior import Multivector, all_blades, blade_grade, eta, omega, random_multivector
from hfsigma.lefschetz import (coprimitive_basis, coprimitive_dim,
                               lefschetz_power_rank, op_H, op_L, op_lambda,
                               primitive_basis, primitive_decomposition,
                               primitive_dim, raising_matrix,
                               self_dual_lattice, self_dual_rank)
from hfsigma.linalg import rank
from hfsigma.rings import QQ


def test_operator_examples():
    g = 3
    top = Multivector.from_blade(g, (1 << (2 * g)) - 1)  # grade 2g
    assert op_H(Multivector.from_blade(g, 0b111)).is_zero()       # grade g
    assert op_L(omega(g)) == Multivector(g, {0: g})
    assert op_lambda(eta(g, g)).is_zero()
    assert op_lambda(top).is_zero()


def test_sl2_relations_exhaustive():
    for g in range(1, 5):
        for m in all_blades(g):
            a = Multivector.from_blade(g, m)
            assert op_lambda(op_H(a)) - op_H(op_lambda(a)) == op_lambda(a).scale(-2)
            assert op_L(op_H(a)) - op_H(op_L(a)) == op_L(a).scale(2)
            assert op_lambda(op_L(a)) - op_L(op_lambda(a)) == op_H(a)


def test_primitive_dims():
    assert len(primitive_basis(1, 0)) == 1
    assert len(primitive_basis(2, 2)) == 5
    assert len(primitive_basis(3, 4)) == 0
    for g in range(1, 5):
        for j in range(0, 2 * g + 1):
            basis = primitive_basis(g, j)
            assert len(basis) == primitive_dim(g, j)
            for b in basis:
                assert op_L(b).is_zero()


def test_primitive_plus_image_dimension():
    for g in range(1, 5):
        for j in range(0, g + 1):
            rk = rank(raising_matrix(g, j - 2).convert(QQ)) if j >= 2 else 0
            assert primitive_dim(g, j) + rk == comb(2 * g, j)


def test_decomposition_resums_and_is_primitive():
    rng = random.Random(7)
    for g in (2, 3):
        for _ in range(8):
            p = rng.randint(0, 2 * g)
            a = random_multivector(g, p, rng, QQ)
            comps = primitive_decomposition(a)
            total = Multivector.zero(g, QQ)
            for k, comp in comps:
                total = total + comp
                x = comp
                for _ in range(k + 1):
                    x = op_L(x)
                assert x.is_zero()
            assert total == a


def test_decomposition_special_cases():
    g = 3
    w = omega(g, QQ)
    assert primitive_decomposition(w) == [(1, w)]
    b = primitive_basis(3, 2)[0]
    assert primitive_decomposition(b) == [(0, b)]
    with pytest.raises(DomainError):
        primitive_decomposition(w + Multivector.unit(g, QQ))


def test_lefschetz_powers_bijective():
    for g in range(1, 5):
        for l in range(0, g + 1):
            assert lefschetz_power_rank(g, l) == comb(2 * g, g - l)


def test_coprimitive():
    for g in range(1, 5):
        for j in range(0, 2 * g + 1):
            basis = coprimitive_basis(g, j)
            assert len(basis) == coprimitive_dim(g, j)
            for v in basis:
                assert omega(g, QQ).wedge(v).is_zero()
        assert coprimitive_dim(g, g - 1) == 0


def test_self_dual_lattice():
    assert self_dual_rank(1) == 2
    assert self_dual_rank(3) == 14
    for g in range(1, 6):
        gens = self_dual_lattice(g)
        assert len(gens) == self_dual_rank(g) == 2 ** (g - 1) + comb(2 * g, g) // 2
        for v in gens:
            assert v.star() == v
            assert v.grades() == [g]


def test_star_eigenvalue_on_summands():
    for g in range(1, 5):
        for k in range(0, g // 2 + 1):
            for b in primitive_basis(g, g - 2 * k):
                v = b.wedge(eta(k, g, QQ))
                assert v.star() == v.scale((-1) ** k)
