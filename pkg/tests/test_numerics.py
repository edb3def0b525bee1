"""Numeric layer: zeta, Dirichlet L, gamma, order estimation."""

import math
from fractions import Fraction as Q

import pytest

from sp4eis.characters import CharClass
from sp4eis.normfactor import canonicalize, inverse_norm_factor
from sp4eis.characters import heisenberg_lambda
from sp4eis.numerics import (
    DirichletTable, NotEvaluable, PoleProximity, bernoulli_numbers,
    completed_dirichlet, completed_zeta, dirichlet_l, estimate_order,
    eval_expression, gamma, hurwitz_zeta, kronecker_symbol, quadratic_table,
    table_for_modulus, zeta_direct, zeta_em,
)
from sp4eis.roots import CRootSystem

TR, QU, OT = CharClass.TRIVIAL, CharClass.QUADRATIC, CharClass.OTHER
CATALAN = 0.915965594177219015

SYS = CRootSystem(2)


def test_bernoulli():
    b = bernoulli_numbers(9)
    assert b[0] == 1 and b[1] == Q(-1, 2) and b[2] == Q(1, 6)
    assert b[4] == Q(-1, 30) and b[6] == Q(1, 42) and b[8] == Q(-1, 30)
    assert b[3] == 0 and b[5] == 0


def test_gamma_values():
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-12
    assert abs(gamma(5.0) - 24.0) < 1e-10
    assert abs(gamma(-0.5) + 2 * math.sqrt(math.pi)) < 1e-10
    with pytest.raises(PoleProximity):
        gamma(-2.0)


def test_zeta_closed_forms():
    assert abs(zeta_em(2) - math.pi ** 2 / 6) < 1e-12
    assert abs(zeta_em(4) - math.pi ** 4 / 90) < 1e-12
    # classical special values on the real line
    assert abs(zeta_em(0) + 0.5) < 1e-12
    assert abs(zeta_em(-1) + Q(1, 12)) < 1e-12


def test_zeta_direct_agrees():
    for s in (2.5, 3.0, 3.5 + 1.0j, 4.0):
        assert abs(zeta_direct(s) - zeta_em(s)) < 1e-10


def test_hurwitz():
    assert abs(hurwitz_zeta(2, 0.5) - math.pi ** 2 / 2) < 1e-12
    assert abs(hurwitz_zeta(3.0, 1.0) - zeta_em(3.0)) < 1e-13


def test_completed_zeta():
    assert abs(completed_zeta(2.0) - math.pi / 6) < 1e-9
    # exact reflection by construction, and true numerically at Re >= 1/2
    for s in (0.3, 0.3 + 2.0j, 0.45 - 5.0j):
        assert abs(completed_zeta(s) - completed_zeta(1 - s)) < 1e-9
    with pytest.raises(PoleProximity):
        completed_zeta(1.0 + 1e-12)
    with pytest.raises(PoleProximity):
        completed_zeta(1e-12)


def test_completed_zeta_residues():
    t = 1e-7
    assert abs(t * completed_zeta(1 + t) - 1.0) < 1e-5
    assert abs(t * completed_zeta(t) + 1.0) < 1e-5


def test_kronecker():
    # quadratic residues mod 5: 1 and 4
    assert [kronecker_symbol(5, n) for n in range(5)] == [0, 1, -1, -1, 1]
    assert [kronecker_symbol(-4, n) for n in range(1, 8, 2)] == [1, -1, 1, -1]
    assert kronecker_symbol(8, 3) == -1
    assert kronecker_symbol(12, 5) == -1


def test_quadratic_tables():
    for q in (3, 4, 5, 7, 8, 11, 12):
        tbl = table_for_modulus(q)
        assert tbl.modulus == q
        assert tbl.is_primitive()
    assert table_for_modulus(4).parity == 1
    assert table_for_modulus(5).parity == 0
    with pytest.raises(ValueError):
        quadratic_table(9)
    with pytest.raises(ValueError):
        table_for_modulus(6)


def test_imprimitive_rejected():
    # the character mod 8 induced from mod 4 is not primitive
    vals = tuple(kronecker_symbol(-4, n) for n in range(8))
    tbl = DirichletTable(8, vals)
    assert not tbl.is_primitive()
    with pytest.raises(ValueError):
        completed_dirichlet(tbl, 1.0)


def test_dirichlet_values():
    t4 = table_for_modulus(4)
    assert abs(dirichlet_l(t4, 1.0) - math.pi / 4) < 1e-12
    assert abs(dirichlet_l(t4, 2.0) - CATALAN) < 1e-12
    # completed value at an edge point is finite and nonzero
    assert abs(completed_dirichlet(t4, 1.0)) > 0.1


def test_completed_dirichlet_functional_equation():
    for q in (3, 4, 5, 8):
        tbl = table_for_modulus(q)
        vals = [completed_dirichlet(tbl, 1 - s) / completed_dirichlet(tbl, s)
                for s in (0.3, 1.7, 2.4)]
        assert max(abs(v - vals[0]) for v in vals) < 1e-6
        assert abs(vals[0] - 1.0) < 1e-6  # real primitive: constant is 1


def test_trivial_zero_points_rejected():
    t4 = table_for_modulus(4)  # odd: gamma poles at s = -1, -3, ...
    with pytest.raises(PoleProximity):
        completed_dirichlet(t4, -1.0)
    t5 = table_for_modulus(5)  # even: gamma poles at s = 0, -2, ...
    with pytest.raises(PoleProximity):
        completed_dirichlet(t5, 0.0)
    assert abs(completed_dirichlet(t5, -1.0)) > 0  # fine for an even character


def test_estimate_order_basic():
    lam = heisenberg_lambda()
    rc1 = canonicalize(inverse_norm_factor(lam, SYS.element_by_name("c1"), SYS), TR)
    est = estimate_order(rc1, TR, Q(2))
    assert est.fitted == -1 and est.residual < 0.05
    est = estimate_order(rc1, TR, Q(5))
    assert est.fitted == 0 and est.residual < 0.05


def test_eval_expression_needs_table_for_quadratic():
    lam = heisenberg_lambda()
    rc1 = canonicalize(inverse_norm_factor(lam, SYS.element_by_name("c1"), SYS), QU)
    with pytest.raises(NotEvaluable):
        eval_expression(rc1, QU, 2.0)
    with pytest.raises(NotEvaluable):
        eval_expression(canonicalize(rc1, OT), OT, 2.0, table_for_modulus(4))
    v = eval_expression(rc1, QU, 2.0, table_for_modulus(4))
    assert abs(v) > 0
