"""Differential operators with exact symbolic coefficients.

A DiffOp is a finite sum Σ c_α(vars) ∂^α; composition uses the generalized
Leibniz rule ∂^α(b·u) = Σ_{γ≤α} C(α,γ) (∂^γ b)(∂^{α−γ}u).  Coefficients can
be MultiPoly (flat phase space, position representation) or TorusXCoef
(trigonometric polynomials times powers of x, for the torus line bundle).
"""

from __future__ import annotations

import cmath
import itertools

from .poly import MultiPoly, multi_binom
from .scalars import PI, S_I, S_ONE, S_ZERO, Scalar, TWO_PI


def _coerce_scalar(c):
    if isinstance(c, Scalar):
        return c
    return Scalar.from_rational(c)


class TorusXCoef:
    """Coefficient ring for torus-bundle operators: Σ c · x^j · e^{2πi(mx+ny)}.

    Keys are (m, n, j); closed under products and under ∂/∂x, ∂/∂y.
    """

    __slots__ = ("terms",)
    VARS = ("x", "y")

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if not c.is_zero():
                clean[k] = c
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0): _coerce_scalar(c)})

    @classmethod
    def xpow(cls, j, c=S_ONE):
        return cls({(0, 0, j): _coerce_scalar(c)})

    @classmethod
    def harmonic(cls, m, n, c=S_ONE):
        return cls({(m, n, 0): _coerce_scalar(c)})

    @classmethod
    def from_torus_element(cls, f):
        return cls({(m, n, 0): c for (m, n), c in f.coeffs.items()})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            w = terms.get(k, S_ZERO) + c
            if w.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = w
        return TorusXCoef(terms)

    def __neg__(self):
        return TorusXCoef({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        terms = {}
        for (m1, n1, j1), c1 in self.terms.items():
            for (m2, n2, j2), c2 in other.terms.items():
                k = (m1 + m2, n1 + n2, j1 + j2)
                w = terms.get(k, S_ZERO) + c1 * c2
                if w.is_zero():
                    terms.pop(k, None)
                else:
                    terms[k] = w
        return TorusXCoef(terms)

    def scale(self, c):
        c = _coerce_scalar(c)
        return TorusXCoef({k: c * v for k, v in self.terms.items()})

    def partial(self, name):
        terms = {}

        def acc(k, c):
            w = terms.get(k, S_ZERO) + c
            if w.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = w

        for (m, n, j), c in self.terms.items():
            if name == "x":
                if j > 0:
                    acc((m, n, j - 1), c * j)
                if m != 0:
                    acc((m, n, j), c * (TWO_PI * S_I * m))
            elif name == "y":
                if n != 0:
                    acc((m, n, j), c * (TWO_PI * S_I * n))
            else:
                raise KeyError(name)
        return TorusXCoef(terms)

    def __eq__(self, other):
        return isinstance(other, TorusXCoef) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evalf(self, x, y, params=None):
        total = 0j
        for (m, n, j), c in self.terms.items():
            total += complex(c.evalf(params)) * (x ** j) * \
                cmath.exp(2j * cmath.pi * (m * x + n * y))
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            m, n, j = k
            c = self.terms[k]
            factors = []
            if j:
                factors.append("x" if j == 1 else "x^%d" % j)
            if (m, n) != (0, 0):
                factors.append("e(%d,%d)" % (m, n))
            body = "*".join(factors) if factors else "1"
            bits.append("(%s)*%s" % (c, body))
        return " + ".join(bits)

    __repr__ = __str__


class DiffOp:
    """Σ c_α ∂^α over a fixed variable tuple; coefficients share one ring."""

    __slots__ = ("vars", "terms", "_zero_coef")

    def __init__(self, vars, terms=None, zero_coef=None):
        self.vars = tuple(vars)
        clean = {}
        for a, c in (terms or {}).items():
            if not c.is_zero():
                clean[tuple(a)] = c
        self.terms = clean
        if zero_coef is None:
            zero_coef = MultiPoly.zero(self.vars)
        self._zero_coef = zero_coef

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def multiplication(cls, coef, vars=None):
        if isinstance(coef, MultiPoly):
            return cls(coef.vars, {(0,) * len(coef.vars): coef})
        if isinstance(coef, TorusXCoef):
            return cls(TorusXCoef.VARS, {(0, 0): coef}, TorusXCoef.zero())
        raise TypeError("unsupported coefficient %r" % (coef,))

    @classmethod
    def partial_op(cls, vars, name, coef=None):
        vars = tuple(vars)
        a = [0] * len(vars)
        a[vars.index(name)] = 1
        if coef is None:
            coef = MultiPoly.const(vars, S_ONE)
        zero = coef + (-coef)
        return cls(vars, {tuple(a): coef}, zero)

    def _wrap(self, terms):
        return DiffOp(self.vars, terms, self._zero_coef)

    def _zero(self):
        return self._zero_coef

    # -- linear structure ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def order(self):
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def coeff(self, alpha):
        return self.terms.get(tuple(alpha), self._zero())

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("operator variables differ: %r vs %r"
                             % (self.vars, other.vars))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            w = terms.get(a, self._zero()) + c
            if w.is_zero():
                terms.pop(a, None)
            else:
                terms[a] = w
        return self._wrap(terms)

    def __neg__(self):
        return self._wrap({a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _coerce_scalar(c)
        return self._wrap({a: coef.scale(c) for a, coef in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Scalar)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return diffop_compose(self, other)

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.vars == other.vars \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def apply_to_coef(self, f):
        """Apply the operator to a coefficient-ring element f."""
        out = self._zero()
        for alpha, c in self.terms.items():
            g = f
            for name, k in zip(self.vars, alpha):
                for _ in range(k):
                    g = g.partial(name)
            out = out + c * g
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for a in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[a]
            ds = []
            for name, k in zip(self.vars, a):
                if k:
                    ds.append("d/d%s" % name if k == 1 else "d^%d/d%s^%d" % (k, name, k))
            body = " ".join(ds) if ds else "1"
            bits.append("[%s] %s" % (c, body))
        return " + ".join(bits)

    __repr__ = __str__


def diffop_compose(A, B):
    """Operator composition A∘B via the generalized Leibniz rule."""
    A._check(B)
    nv = len(A.vars)
    out = {}
    zero = A._zero()
    for alpha, a in A.terms.items():
        gamma_ranges = [range(k + 1) for k in alpha]
        for gamma in itertools.product(*gamma_ranges):
            binom = multi_binom(alpha, gamma)
            rest = tuple(alpha[i] - gamma[i] for i in range(nv))
            for beta, b in B.terms.items():
                db = b
                for name, k in zip(A.vars, gamma):
                    for _ in range(k):
                        db = db.partial(name)
                if db.is_zero():
                    continue
                c = a * db
                if binom != 1:
                    c = c.scale(Scalar.from_rational(binom))
                idx = tuple(rest[i] + beta[i] for i in range(nv))
                w = out.get(idx, zero) + c
                if w.is_zero():
                    out.pop(idx, None)
                else:
                    out[idx] = w
    return DiffOp(A.vars, out, zero)


def diffop_commutator(A, B):
    return diffop_compose(A, B) - diffop_compose(B, A)
