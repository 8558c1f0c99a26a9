"""The concrete quantization maps, as evaluable objects with declared
domains, plus the (Q1)/(Q2) residual checkers.

Carriers: differential operators in the position representation
(schrodinger, metaplectic, position), prequantization operators on phase
space (vanhove) and on the torus line bundle (torus_prequant), exact spin
matrices (sphere), and truncated Hermite matrices (the transformed torus
operators A±, B±).
"""

from __future__ import annotations

import math

from .diffop import DiffOp, TorusXCoef, diffop_commutator
from .flat import FlatElement, bracket_flat, flat_vars
from .hermite import FExp, NumericOp, hermite_matrix
from .matrices import ExactMatrix, spin_matrices
from .poly import MultiPoly
from .radicals import Radical
from .scalars import A_SYM, C_SYM, HBAR, S_I, S_ONE, S_ZERO, Scalar
from .sphere import SVARS, SphereElement, bracket_sphere, sphere_canonicalize
from .torus import TorusElement, bracket_torus
from .weyl import WeylElement, weyl_commutator

DEFAULT_TORUS_HBAR = 1.0 / (2.0 * math.pi)


class DomainError(ValueError):
    """An element lies outside a quantization map's declared domain."""


class QuantizationMap:
    """Named linear rule into an operator carrier, with a domain predicate."""

    def __init__(self, name, domain, rule, bracket, membership=None, params=None):
        self.name = name
        self.domain = domain
        self._rule = rule
        self._bracket = bracket
        self._membership = membership
        self.params = dict(params or {})

    def ensure_domain(self, f, label="element"):
        if self._membership is not None:
            reason = self._membership(f)
            if reason:
                raise DomainError("%s %s outside domain %s of %s: %s"
                                  % (label, f, self.domain, self.name, reason))

    def __call__(self, f):
        self.ensure_domain(f)
        return self._rule(f)

    def bracket(self, f, g):
        return self._bracket(f, g)

    def __repr__(self):
        return "QuantizationMap(%s on %s)" % (self.name, self.domain)


def _q_vars(n):
    return tuple("q%d" % (k + 1) for k in range(n))


def _qpoly(f, n):
    """Momentum-free part of a flat polynomial as a MultiPoly in q only."""
    qv = _q_vars(n)
    terms = {}
    for e, c in f.poly.terms.items():
        if any(e[n:]):
            raise DomainError("unexpected momentum dependence in %s" % f)
        terms[tuple(e[:n])] = c
    return MultiPoly(qv, terms)


# ---------------------------------------------------------------------------
# Flat maps in the position representation
# ---------------------------------------------------------------------------

def schrodinger_map(f):
    """P¹ → operators: q^i ↦ multiplication, p_i ↦ −iħ ∂/∂q^i, 1 ↦ I."""
    if f.degree() > 1:
        raise DomainError("schrodinger domain is degree <= 1, got %s" % f)
    n = f.n
    qv = _q_vars(n)
    out = DiffOp.zero(qv)
    mult_part = {}
    for e, c in f.poly.terms.items():
        if sum(e) == 0:
            mult_part[(0,) * n] = mult_part.get((0,) * n, S_ZERO) + c
        elif any(e[:n]):
            mult_part[tuple(e[:n])] = mult_part.get(tuple(e[:n]), S_ZERO) + c
        else:
            k = e[n:].index(1)
            out = out + DiffOp.partial_op(qv, qv[k]).scale(-(S_I * HBAR) * c)
    mp = MultiPoly(qv, mult_part)
    if not mp.is_zero():
        out = out + DiffOp.multiplication(mp)
    return out


def metaplectic_map(f):
    """P² → operators, the quadratic (metaplectic plus Heisenberg) rules."""
    if f.degree() > 2:
        raise DomainError("metaplectic domain is degree <= 2, got %s" % f)
    n = f.n
    qv = _q_vars(n)
    out = DiffOp.zero(qv)
    lin = {e: c for e, c in f.poly.terms.items() if sum(e) <= 1}
    if lin:
        out = out + schrodinger_map(FlatElement(n, MultiPoly(f.poly.vars, lin)))
    mih = -(S_I * HBAR)
    for e, c in f.poly.terms.items():
        if sum(e) != 2:
            continue
        qe, pe = e[:n], e[n:]
        if sum(pe) == 0:
            out = out + DiffOp.multiplication(MultiPoly(qv, {tuple(qe): c}))
        elif sum(pe) == 2:
            # p_k p_l ↦ −ħ² ∂_k ∂_l
            a = [0] * n
            for k, v in enumerate(pe):
                a[k] += v
            out = out + DiffOp(qv, {tuple(a): MultiPoly.const(qv, c * (-(HBAR * HBAR)))})
        else:
            k = pe.index(1)
            i = qe.index(1)
            # q_i p_k ↦ −iħ(q_i ∂_k + ½ δ_ik)
            a = [0] * n
            a[k] = 1
            qi = MultiPoly.var(qv, qv[i]).scale(c * mih)
            out = out + DiffOp(qv, {tuple(a): qi})
            if i == k:
                half = MultiPoly.const(qv, c * mih * Scalar.from_rational(1, 2))
                out = out + DiffOp.multiplication(half)
    return out


def position_map(f):
    """S = {Σ f^i(q) p_i + g(q)} → −iħ Σ (f^i ∂_i + ½ f^i_{,i}) + g."""
    n = f.n
    if f.momentum_degree() > 1:
        raise DomainError(
            "position-representation domain needs momentum degree <= 1, got %s" % f)
    qv = _q_vars(n)
    pv = flat_vars(n)[n:]
    g_terms = {e: c for e, c in f.poly.terms.items() if not any(e[n:])}
    out = DiffOp.zero(qv)
    mih = -(S_I * HBAR)
    for k in range(n):
        fk = f.poly.partial(pv[k])
        if fk.is_zero():
            continue
        fkq = _qpoly(FlatElement(n, fk), n)
        a = [0] * n
        a[k] = 1
        out = out + DiffOp(qv, {tuple(a): fkq.scale(mih)})
        half_div = fkq.partial(qv[k]).scale(mih * Scalar.from_rational(1, 2))
        if not half_div.is_zero():
            out = out + DiffOp.multiplication(half_div)
    gq = MultiPoly(qv, {tuple(e[:n]): c for e, c in g_terms.items()})
    if not gq.is_zero():
        out = out + DiffOp.multiplication(gq)
    return out


def vanhove_map(f):
    """Full prequantization on phase space:
    Q(f) = −iħ Σ_k [f_{p_k}(∂_{q^k} − (i/ħ)p_k) − f_{q^k} ∂_{p_k}] + f."""
    n = f.n
    av = flat_vars(n)
    out = DiffOp.zero(av)
    zeroth = f.poly
    mih = -(S_I * HBAR)
    for k in range(n):
        fq = f.poly.partial(av[k])
        fp = f.poly.partial(av[n + k])
        if not fp.is_zero():
            a = [0] * (2 * n)
            a[k] = 1
            out = out + DiffOp(av, {tuple(a): fp.scale(mih)})
            pk = MultiPoly.var(av, av[n + k])
            zeroth = zeroth - pk * fp
        if not fq.is_zero():
            a = [0] * (2 * n)
            a[n + k] = 1
            out = out + DiffOp(av, {tuple(a): fq.scale(S_I * HBAR)})
    if not zeroth.is_zero():
        out = out + DiffOp.multiplication(zeroth)
    return out


# ---------------------------------------------------------------------------
# Torus prequantization (symbolic, on the line bundle over T²)
# ---------------------------------------------------------------------------

def torus_prequant_map(f):
    """Q(f) = −iħ[(f_x/B)(∂_y − (i/ħ)Bx) − (f_y/B)∂_x] + f.

    The x-term collapses to −x·f_x for every B, so the operator is
    Q(f) = −iħ(f_x/B)∂_y + iħ(f_y/B)∂_x + M[f − x f_x]; at B = 1 this is
    the printed prequantization formula.
    """
    B = f.B
    fx = f.partial_x()
    fy = f.partial_y()
    vars_xy = TorusXCoef.VARS
    zero = TorusXCoef.zero()
    terms = {}
    cx = TorusXCoef.from_torus_element(fy.scale((S_I * HBAR) / B))
    cy = TorusXCoef.from_torus_element(fx.scale(-(S_I * HBAR) / B))
    if not cx.is_zero():
        terms[(1, 0)] = cx
    if not cy.is_zero():
        terms[(0, 1)] = cy
    m0 = TorusXCoef.from_torus_element(f) - \
        TorusXCoef.xpow(1) * TorusXCoef.from_torus_element(fx)
    if not m0.is_zero():
        terms[(0, 0)] = m0
    return DiffOp(vars_xy, terms, zero)


# ---------------------------------------------------------------------------
# Transformed torus operators in the Hermite carrier
# ---------------------------------------------------------------------------

def transformed_harmonic_op(m, l, hbar=DEFAULT_TORUS_HBAR):
    """The transformed image of e^{2πi(mx+ly)} as an operator on the line:

        ψ(t) ↦ e^{2πimt}[(1 − 2πim(t + l))ψ(t + l) − 2πħl ψ′(t + l)].

    (m, 0) with m = ±k gives A±; (0, ±k) gives B±.
    """
    w = 2.0 * math.pi * m
    f1 = FExp({(0, w): 1.0 - 2j * math.pi * m * l, (1, w): -2j * math.pi * m})
    terms = [(f1, float(l), 0)]
    if l != 0:
        terms.append((FExp({(0, w): -2.0 * math.pi * hbar * l}), float(l), 1))
    return NumericOp(terms)


def torus_transformed_ops(k, trunc, hbar=DEFAULT_TORUS_HBAR, quad_order=None):
    """Truncated Hermite matrices (A₊, A₋, B₊, B₋) for frequency k ≥ 1."""
    if k < 1:
        raise ValueError("frequency k must be a positive integer, got %r" % (k,))
    mats = []
    for (m, l) in ((k, 0), (-k, 0), (0, k), (0, -k)):
        op = transformed_harmonic_op(m, l, hbar)
        mat = hermite_matrix(op, trunc, quad_order)
        mat.provenance.update({"hbar": hbar, "k": k, "harmonic": (m, l)})
        mats.append(mat)
    return tuple(mats)


# ---------------------------------------------------------------------------
# Sphere map into exact spin matrices
# ---------------------------------------------------------------------------

def _sphere_rep_poly(f):
    if isinstance(f, SphereElement):
        return f.representative()
    if isinstance(f, MultiPoly):
        return f
    raise TypeError("expected a sphere polynomial, got %r" % (f,))


def sphere_map(j, a=A_SYM, const_c=C_SYM):
    """Quantization of sphere polynomials of degree ≤ 2 in dimension 2j+1:
    1 ↦ I, S_i ↦ Q_i, S_i² ↦ aQ_i² + cI, S_iS_k ↦ (a/2)(Q_iQ_k + Q_kQ_i)."""
    q = spin_matrices(j)
    dim = q[0].dim
    ident = ExactMatrix.identity(dim, Radical.one(), Radical.zero())
    half_a = Radical.from_scalar(a * Scalar.from_rational(1, 2))
    rad_a = Radical.from_scalar(a)
    rad_c = Radical.from_scalar(const_c)

    def membership(f):
        try:
            poly = _sphere_rep_poly(f)
        except TypeError as exc:
            return str(exc)
        if poly.degree() > 2:
            return "degree %d exceeds 2" % poly.degree()
        return None

    def rule(f):
        poly = _sphere_rep_poly(f)
        out = ExactMatrix.zeros(dim, Radical.one(), Radical.zero())
        for e, coeff in poly.terms.items():
            deg = sum(e)
            rc = Radical.from_scalar(coeff)
            if deg == 0:
                out = out + ident.scale(rc)
            elif deg == 1:
                i = e.index(1)
                out = out + q[i].scale(rc)
            elif deg == 2:
                if 2 in e:
                    i = e.index(2)
                    out = out + (q[i] * q[i]).scale(rad_a * rc) + ident.scale(rad_c * rc)
                else:
                    i = e.index(1)
                    k = i + 1 + e[i + 1:].index(1)
                    sym = q[i] * q[k] + q[k] * q[i]
                    out = out + sym.scale(half_a * rc)
            else:
                raise DomainError("sphere map limited to degree <= 2, got %s" % poly)
        return out

    def bracket(f, g):
        cf = f if isinstance(f, SphereElement) else sphere_canonicalize(f)
        cg = g if isinstance(g, SphereElement) else sphere_canonicalize(g)
        return bracket_sphere(cf, cg)

    return QuantizationMap(
        name="sphere(j=%s)" % (j,),
        domain="sphere polynomials of degree <= 2",
        rule=rule,
        bracket=bracket,
        membership=membership,
        params={"j": j, "a": a, "c": const_c},
    )


# ---------------------------------------------------------------------------
# Generic (Q1)/(Q2) residual checks
# ---------------------------------------------------------------------------

SCHRODINGER = QuantizationMap(
    "schrodinger", "flat polynomials of degree <= 1", schrodinger_map,
    bracket_flat,
    membership=lambda f: None if f.degree() <= 1 else "degree %d exceeds 1" % f.degree())

METAPLECTIC = QuantizationMap(
    "metaplectic", "flat polynomials of degree <= 2", metaplectic_map,
    bracket_flat,
    membership=lambda f: None if f.degree() <= 2 else "degree %d exceeds 2" % f.degree())

POSITION = QuantizationMap(
    "position", "flat polynomials affine in momentum", position_map,
    bracket_flat,
    membership=lambda f: None if f.momentum_degree() <= 1
    else "momentum degree %d exceeds 1" % f.momentum_degree())

VANHOVE = QuantizationMap(
    "vanhove", "all flat polynomials", vanhove_map, bracket_flat)

TORUS_PREQUANT = QuantizationMap(
    "torus_prequant", "finite Fourier series on the torus", torus_prequant_map,
    bracket_torus)


def _carrier_commutator(A, B):
    if isinstance(A, DiffOp):
        return diffop_commutator(A, B)
    if isinstance(A, ExactMatrix):
        return A.commutator(B)
    if isinstance(A, WeylElement):
        return weyl_commutator(A, B)
    raise TypeError("no commutator for carrier %r" % (A,))


def _scale_i_over_hbar(op):
    c = S_I / HBAR
    if isinstance(op, ExactMatrix):
        return op.scale(Radical.from_scalar(c))
    return op.scale(c)


def check_q1(qmap, f, g):
    """Residual Q({f,g}) − (i/ħ)[Q(f), Q(g)] in the map's carrier."""
    qmap.ensure_domain(f, "f")
    qmap.ensure_domain(g, "g")
    br = qmap.bracket(f, g)
    qmap.ensure_domain(br, "{f,g}")
    qf = qmap(f)
    qg = qmap(g)
    qbr = qmap(br)
    comm = _carrier_commutator(qf, qg)
    return qbr - _scale_i_over_hbar(comm)


def check_q2(qmap, unit, identity_op):
    """Residual Q(1) − I."""
    return qmap(unit) - identity_op
