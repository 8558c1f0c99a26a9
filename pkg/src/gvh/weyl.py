"""Normal-ordered Weyl algebra on generators X_i, P_i with [X_i, P_j] = iħδ_ij.

Words are kept with all X factors to the left of all P factors; the product
rewrites P^m X^n per index via

    P^m X^n = Σ_t C(m,t) C(n,t) t! (−iħ)^t X^{n−t} P^{m−t},

whose m = n = 1 case is PX = XP − iħ.
"""

from __future__ import annotations

import math

from .scalars import HBAR, S_I, S_ONE, S_ZERO, Scalar

_MINUS_IH = -(S_I * HBAR)


def _coerce(c):
    if isinstance(c, Scalar):
        return c
    return Scalar.from_rational(c)


class WeylElement:
    """Finite Scalar combination of normal-ordered words X^α P^β."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            if not c.is_zero():
                clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n=1):
        return cls(n, {})

    @classmethod
    def const(cls, c, n=1):
        return cls(n, {(0,) * (2 * n): _coerce(c)})

    @classmethod
    def identity(cls, n=1):
        return cls.const(1, n)

    @classmethod
    def x(cls, i=1, n=1):
        e = [0] * (2 * n)
        e[i - 1] = 1
        return cls(n, {tuple(e): S_ONE})

    @classmethod
    def p(cls, i=1, n=1):
        e = [0] * (2 * n)
        e[n + i - 1] = 1
        return cls(n, {tuple(e): S_ONE})

    @classmethod
    def word(cls, exps, coeff=1, n=None):
        exps = tuple(exps)
        if n is None:
            n = len(exps) // 2
        return cls(n, {exps: _coerce(coeff)})

    # -- structure ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), S_ZERO)

    def scalar_part(self):
        """Coefficient of the identity word."""
        return self.terms.get((0,) * (2 * self.n), S_ZERO)

    def is_scalar(self):
        return all(sum(e) == 0 for e in self.terms)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("mixed degrees of freedom: %d vs %d" % (self.n, other.n))

    # -- linear operations ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = WeylElement.const(other, self.n)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            w = terms.get(e, S_ZERO) + c
            if w.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = w
        return WeylElement(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = WeylElement.const(other, self.n)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _coerce(c)
        return WeylElement(self.n, {e: c * v for e, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return weyl_product(self, other)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.n == other.n \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        n = self.n
        bits = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[e]
            factors = []
            for i in range(n):
                if e[i]:
                    name = "X" if n == 1 else "X%d" % (i + 1)
                    factors.append(name if e[i] == 1 else "%s^%d" % (name, e[i]))
            for i in range(n):
                if e[n + i]:
                    name = "P" if n == 1 else "P%d" % (i + 1)
                    factors.append(name + ("" if e[n + i] == 1 else "^%d" % e[n + i]))
            word = "*".join(factors) if factors else "1"
            bits.append("(%s)*%s" % (c, word))
        return " + ".join(bits)

    __repr__ = __str__


def _reorder_coeff(m, g, t):
    """Coefficient of X^{g−t} P^{m−t} in P^m X^g, apart from (−iħ)^t."""
    return math.comb(m, t) * math.comb(g, t) * math.factorial(t)


def weyl_product(A, B):
    """Product in the Weyl algebra, returned in normal-ordered form."""
    A._check(B)
    n = A.n
    out = {}
    for ea, ca in A.terms.items():
        for eb, cb in B.terms.items():
            base = ca * cb
            beta = ea[n:]
            gamma = eb[:n]
            # iterate over contraction tuples t <= min(beta, gamma)
            ranges = [range(min(beta[k], gamma[k]) + 1) for k in range(n)]
            stack = [()]
            for r in ranges:
                stack = [s + (t,) for s in stack for t in r]
            for t in stack:
                num = 1
                for k in range(n):
                    num *= _reorder_coeff(beta[k], gamma[k], t[k])
                c = base * (_MINUS_IH ** sum(t)) * num
                exps = tuple(ea[k] + gamma[k] - t[k] for k in range(n)) + \
                    tuple(beta[k] + eb[n + k] - t[k] for k in range(n))
                w = out.get(exps, S_ZERO) + c
                if w.is_zero():
                    out.pop(exps, None)
                else:
                    out[exps] = w
    return WeylElement(n, out)


def weyl_commutator(A, B):
    return weyl_product(A, B) - weyl_product(B, A)


def anticommutator(A, B):
    return weyl_product(A, B) + weyl_product(B, A)


def symmetrized(A, B):
    """½(AB + BA)."""
    return Scalar.from_rational(1, 2) * anticommutator(A, B)


class WeylAmbient:
    """Ambient adapter so Weyl subspaces reuse the echelon machinery."""

    def __init__(self, n, degree_cap):
        self.n = n
        self.degree_cap = degree_cap
        self.tag = "weyl(n=%d, deg<=%d)" % (n, degree_cap)

    def keys(self):
        from .poly import monomials_upto
        return monomials_upto(2 * self.n, self.degree_cap)

    def basis_elements(self):
        from .scalars import S_ONE
        return [self.from_coords({k: S_ONE}) for k in self.keys()]

    def coords(self, elem):
        return dict(elem.terms)

    def from_coords(self, coords):
        return WeylElement(self.n, coords)

    def zero(self):
        return WeylElement.zero(self.n)

    def within_bound(self, elem):
        return elem.degree() <= self.degree_cap

    def bracket(self, f, g):
        return weyl_commutator(f, g)

    def dim_m(self):
        return 2 * self.n


def weyl_words_upto(n, bound):
    from .poly import monomials_upto
    return [WeylElement.word(e, 1, n) for e in monomials_upto(2 * n, bound)]


def weyl_commutant(gens, bound, n=None):
    """Basis of {T : deg T ≤ bound, [T, g] = 0 for all g}, by exact solve."""
    from .linalg import nullspace
    from .poly import monomials_upto
    from .subspace import SubspaceBasis

    if n is None:
        n = gens[0].n if gens else 1
    words = monomials_upto(2 * n, bound)
    windex = {w: i for i, w in enumerate(words)}
    rows_by_key = {}

    def row_for(key):
        r = rows_by_key.get(key)
        if r is None:
            r = [S_ZERO] * len(words)
            rows_by_key[key] = r
        return r

    for gi, g in enumerate(gens):
        for w, col in windex.items():
            comm = weyl_commutator(WeylElement.word(w, 1, n), g)
            for e, c in comm.terms.items():
                row_for((gi, e))[col] = c
    rows = [rows_by_key[k] for k in sorted(rows_by_key, key=repr)]
    vecs = nullspace(rows, len(words), S_ONE, S_ZERO)
    ambient = WeylAmbient(n, bound)
    basis = SubspaceBasis(ambient)
    for v in vecs:
        basis.add_element(WeylElement(n, {w: c for w, c in zip(words, v)}))
    return basis
