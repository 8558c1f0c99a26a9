"""Quantization rules and the bracket-compatibility test (Q1)."""

import random
from fractions import Fraction

import numpy as np
import pytest

from gvh.diffop import DiffOp
from gvh.flat import FlatElement, bracket_flat, flat_vars
from gvh.matrices import spin_matrices
from gvh.poly import MultiPoly, monomials_upto
from gvh.qmaps import (METAPLECTIC, POSITION, SCHRODINGER, TORUS_PREQUANT,
                       VANHOVE, DomainError, QuantizationMap, check_q1,
                       check_q2, metaplectic_map, position_map,
                       schrodinger_map, sphere_map, torus_prequant_map,
                       torus_transformed_ops, transformed_harmonic_op,
                       vanhove_map)
from gvh.radicals import Radical
from gvh.scalars import HBAR, S_I, S_ONE, S_SPIN, S_ZERO, Scalar
from gvh.sphere import SphereElement, svar
from gvh.torus import TorusElement, basic_set

RNG = random.Random(9)
QV = ("q1",)
MIH = -(S_I * HBAR)


def _m(qe, pe, c=1, n=1):
    cc = c if isinstance(c, Scalar) else Scalar.from_int(c)
    return FlatElement.monomial(n, qe, pe, cc)


def test_schrodinger_rule():
    # q -> multiplication, p -> -i hbar d/dq, 1 -> identity
    assert schrodinger_map(_m((1,), (0,))) == DiffOp.multiplication(
        MultiPoly.monomial(QV, (1,)))
    assert schrodinger_map(_m((0,), (1,))) == DiffOp.partial_op(QV, "q1").scale(MIH)
    assert schrodinger_map(FlatElement.const(1, S_ONE)) == DiffOp.multiplication(
        MultiPoly.const(QV, S_ONE))
    with pytest.raises(DomainError):
        SCHRODINGER(_m((0,), (2,)))


def test_metaplectic_quadratic_rules():
    # p^2 -> -hbar^2 d^2/dq^2
    got = metaplectic_map(_m((0,), (2,)))
    want = DiffOp(QV, {(2,): MultiPoly.const(QV, -(HBAR * HBAR))})
    assert got == want
    # qp -> -i hbar (q d/dq + 1/2)
    got = metaplectic_map(_m((1,), (1,)))
    want = (DiffOp(QV, {(1,): MultiPoly.monomial(QV, (1,), MIH)})
            + DiffOp.multiplication(MultiPoly.const(QV, MIH * Scalar.from_rational(1, 2))))
    assert got == want
    with pytest.raises(DomainError):
        METAPLECTIC(_m((3,), (0,)))


def test_metaplectic_q1_exact_on_quadratics():
    cands = monomials_upto(2, 2)
    elems = [_m(e[:1], e[1:]) for e in cands]
    for f in elems:
        for g in elems:
            resid = check_q1(METAPLECTIC, f, g)
            assert resid.is_zero(), "residual %s for %s, %s" % (resid, f, g)


def test_position_map_general_section():
    # f(q)p + g(q) -> -i hbar (f d/dq + f'/2) + g
    f = _m((2,), (1,)) + _m((3,), (0,))
    got = position_map(f)
    want = (DiffOp(QV, {(1,): MultiPoly.monomial(QV, (2,), MIH)})
            + DiffOp.multiplication(MultiPoly.monomial(QV, (1,), MIH))
            + DiffOp.multiplication(MultiPoly.monomial(QV, (3,))))
    assert got == want
    with pytest.raises(DomainError):
        POSITION(_m((0,), (2,)))


def test_position_q1_on_momentum_affine_pairs():
    # S is closed under the bracket; (Q1) holds exactly on it
    elems = [_m((a,), (e,)) for a in range(4) for e in (0, 1) if a + e <= 4]
    for f in elems:
        for g in elems:
            assert check_q1(POSITION, f, g).is_zero()


def test_vanhove_q1_all_pairs_degree2():
    cands = monomials_upto(2, 2)
    elems = [_m(e[:1], e[1:]) for e in cands]
    for f in elems:
        for g in elems:
            assert check_q1(VANHOVE, f, g).is_zero()


def test_vanhove_matches_prequantization_formula():
    # Q(p^2) = -i hbar [2p(d/dq - (i/hbar)p)] + p^2 = -2 i hbar p d/dq + ... on
    # full phase space; spot-check through the general formula
    av = flat_vars(1)
    f = _m((0,), (2,))
    got = vanhove_map(f)
    p = MultiPoly.var(av, "p1")
    want = (DiffOp(av, {(1, 0): p.scale(MIH * Scalar.from_int(2))})
            + DiffOp.multiplication(p * p.scale(Scalar.from_int(-1))))
    assert got == want
    # and Q2: Q(1) = I
    unit = FlatElement.const(1, S_ONE)
    ident = DiffOp.multiplication(MultiPoly.const(av, S_ONE))
    assert check_q2(VANHOVE, unit, ident)


def test_q1_fails_where_expected():
    # {qp, p} = -p stays momentum-affine, so (Q1) applies and holds
    f = _m((1,), (1,))  # qp
    g = _m((0,), (1,))  # p
    assert check_q1(POSITION, f, g).is_zero()
    # {q^2, p^2} = -4qp leaves S, so check_q1 on the metaplectic overlap of S
    # has no meaning for POSITION; the domain guard must fire instead
    with pytest.raises(DomainError):
        check_q1(POSITION, _m((0,), (2,)), _m((2,), (0,)))


def test_sphere_map_rules():
    # linear part is the plain spin triple; the parameters a, c only enter
    # at degree 2
    q1, q2, q3 = spin_matrices(1)
    qmap = sphere_map(1)
    got3 = qmap(SphereElement.canonicalize(svar("S3")))
    assert got3 == q3
    sym = qmap(SphereElement.canonicalize(svar("S1") * svar("S2")))
    half_a = Radical.from_scalar(Scalar.param("a") * Scalar.from_rational(1, 2))
    assert sym == (q1 * q2 + q2 * q1).scale(half_a)


def test_sphere_map_casimir_with_trace_condition():
    # substituting c = (s^2 - a hbar^2 j(j+1))/3 makes Q(S.S) = s^2 I exactly
    from gvh.matrices import ExactMatrix
    a = Scalar.param("a")
    jj = Scalar.from_int(2)  # j(j+1) at j = 1
    const_c = (S_SPIN ** 2 - a * HBAR ** 2 * jj) / Scalar.from_int(3)
    qmap = sphere_map(1, a=a, const_c=const_c)
    total = None
    for v in ("S1", "S2", "S3"):
        m = qmap(SphereElement.canonicalize(svar(v) * svar(v)))
        total = m if total is None else total + m
    want = ExactMatrix.identity(3, Radical.one(), Radical.zero()).scale(
        Radical.from_scalar(S_SPIN ** 2))
    assert total == want


def test_sphere_map_q1_linear_pairs():
    for j in (Fraction(1, 2), 1, Fraction(3, 2)):
        qmap = sphere_map(j)
        gens = [SphereElement.canonicalize(svar(v)) for v in ("S1", "S2", "S3")]
        for f in gens:
            for g in gens:
                resid = check_q1(qmap, f, g)
                assert resid.is_zero()


def test_sphere_map_q1_linear_quadratic_pairs():
    qmap = sphere_map(1)
    lin = [SphereElement.canonicalize(svar(v)) for v in ("S1", "S2", "S3")]
    quads = [SphereElement.canonicalize(svar(a) * svar(b))
             for a in ("S1", "S2", "S3") for b in ("S1", "S2", "S3")]
    for f in lin:
        for g in quads:
            assert check_q1(qmap, f, g).is_zero()


def test_torus_prequant_symbolic_q1():
    for k in (1, 2):
        elems = basic_set(k, S_ONE)
        for f in elems:
            for g in elems:
                resid = check_q1(TORUS_PREQUANT, f, g)
                assert resid.is_zero(), "residual %s at k=%d" % (resid, k)


def test_torus_prequant_printed_formula():
    # at B = 1: Q(f) = -i hbar f_x d/dy + i hbar f_y d/dx + M[f - x f_x]
    f = TorusElement.cos(1, 0, B=S_ONE)
    op = torus_prequant_map(f)
    assert op.order() == 1
    # d/dy coefficient = -i hbar f_x (as a mixed x/harmonic coefficient)
    from gvh.diffop import TorusXCoef
    fx = TorusXCoef.from_torus_element(f.partial_x())
    assert op.coeff((0, 1)) == fx * TorusXCoef.const(MIH)
    assert op.coeff((1, 0)).is_zero()  # cos(2 pi x) has f_y = 0
    # Q2 on the torus carrier
    unit = TorusElement.const(S_ONE, B=S_ONE)
    ident = DiffOp(TorusXCoef.VARS, {(0, 0): TorusXCoef.const(S_ONE)},
                   TorusXCoef.zero())
    assert check_q2(TORUS_PREQUANT, unit, ident)


def test_transformed_ops_shapes_and_provenance():
    a_plus, a_minus, b_plus, b_minus = torus_transformed_ops(1, trunc=32)
    for mat, harm in ((a_plus, (1, 0)), (a_minus, (-1, 0)),
                      (b_plus, (0, 1)), (b_minus, (0, -1))):
        assert mat.dim == 32
        assert mat.provenance["harmonic"] == harm
        assert mat.provenance["k"] == 1
    with pytest.raises(ValueError):
        torus_transformed_ops(0, trunc=32)


def test_transformed_pure_x_harmonic_symbol():
    # the k-th x-harmonic transforms to multiplication by
    # e^{2 pi i k x} (1 - 2 pi i k x); no shift, no derivative
    import math
    op = transformed_harmonic_op(1, 0)
    xs = np.linspace(-1.2, 1.3, 5)
    assert len(op.terms) == 1
    sym, shift, dorder = op.terms[0]
    assert shift == 0.0 and dorder == 0
    vals = sym.evalf(xs)
    want = np.exp(2j * math.pi * xs) * (1 - 2j * math.pi * xs)
    assert np.max(np.abs(vals - want)) < 1e-12


def test_check_q1_with_custom_map():
    """A deliberately broken rule must produce a nonzero residual."""
    broken = QuantizationMap(
        "broken", "degree <= 1", lambda f: schrodinger_map(f).scale(Scalar.from_int(2)),
        bracket_flat,
        membership=lambda f: None if f.degree() <= 1 else "degree too high")
    q = _m((1,), (0,))
    p = _m((0,), (1,))
    resid = check_q1(broken, q, p)
    assert not resid.is_zero()
