"""Truncated Hermite-basis matrices for operators on the real line.

The basis is the unit-scale orthonormal Hermite functions h_n (eigenbasis of
the weight e^{−x²}); every operator is a finite sum of terms

    ψ ↦ f(x) · (d^d ψ/dx^d)(x + a)

with f a polynomial-times-exponential symbol Σ c t^j e^{iωt}.  That class is
closed under composition and adjoints, so composite operators are reduced
symbolically before any quadrature happens.  Matrix entries come from
Gauss–Hermite quadrature with stabilized weights (w_i e^{x_i²} computed via
the order-(Q−1) Hermite function, never by exponentiating x_i²); shifted
overlaps are centered so the Gaussian factors recombine exactly.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


class QuadratureError(RuntimeError):
    """Raised when a quadrature rule fails its orthonormality self-test."""


def hermite_values(xs, nmax):
    """Values of h_0 … h_{nmax−1} at the points xs; shape (nmax, len(xs))."""
    xs = np.asarray(xs, dtype=float)
    out = np.zeros((nmax, xs.size))
    out[0] = np.pi ** -0.25 * np.exp(-xs * xs / 2.0)
    if nmax > 1:
        out[1] = math.sqrt(2.0) * xs * out[0]
    for n in range(2, nmax):
        out[n] = math.sqrt(2.0 / n) * xs * out[n - 1] \
            - math.sqrt((n - 1) / n) * out[n - 2]
    return out


@lru_cache(maxsize=32)
def gauss_hermite_rule(order):
    """Nodes and stabilized weights ŵ_i = w_i e^{x_i²} = 1/(Q·h_{Q−1}(x_i)²).

    ∫ g(x) dx ≈ Σ ŵ_i g(x_i) for g with Gaussian decay built in.
    """
    with np.errstate(all="ignore"):
        xs, _ = np.polynomial.hermite.hermgauss(order)
    if not np.all(np.isfinite(xs)):
        raise QuadratureError("Gauss-Hermite nodes overflow at order %d" % order)
    h = hermite_values(xs, order)
    wmod = 1.0 / (order * h[order - 1] ** 2)
    if not np.all(np.isfinite(wmod)):
        raise QuadratureError("stabilized weights overflow at order %d" % order)
    return xs, wmod


def derivative_band(N):
    """Exact matrix of d/dx: h_n' = √(n/2) h_{n−1} − √((n+1)/2) h_{n+1}."""
    D = np.zeros((N, N))
    for n in range(N):
        if n >= 1:
            D[n - 1, n] = math.sqrt(n / 2.0)
        if n + 1 < N:
            D[n + 1, n] = -math.sqrt((n + 1) / 2.0)
    return D


def position_tridiagonal(N):
    """Exact matrix of multiplication by x: entries √((n+1)/2) off-diagonal."""
    X = np.zeros((N, N))
    for n in range(N - 1):
        X[n, n + 1] = X[n + 1, n] = math.sqrt((n + 1) / 2.0)
    return X


class FExp:
    """Symbol Σ c · t^j · e^{iωt}, keyed by (j, ω); closed under ·, ∂, shifts."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if c != 0:
                clean[k] = complex(c)
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def const(cls, c=1.0):
        return cls({(0, 0.0): c})

    @classmethod
    def tpow(cls, j, c=1.0):
        return cls({(j, 0.0): c})

    @classmethod
    def harmonic(cls, omega, c=1.0):
        """c · e^{iωt}."""
        return cls({(0, float(omega)): c})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            w = terms.get(k, 0j) + c
            if w == 0:
                terms.pop(k, None)
            else:
                terms[k] = w
        return FExp(terms)

    def __neg__(self):
        return FExp({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        terms = {}
        for (j1, w1), c1 in self.terms.items():
            for (j2, w2), c2 in other.terms.items():
                k = (j1 + j2, w1 + w2)
                w = terms.get(k, 0j) + c1 * c2
                if w == 0:
                    terms.pop(k, None)
                else:
                    terms[k] = w
        return FExp(terms)

    def scale(self, c):
        return FExp({k: c * v for k, v in self.terms.items()})

    def shift(self, a):
        """f(t + a)."""
        out = {}
        for (j, w), c in self.terms.items():
            base = c * complex(np.exp(1j * w * a))
            for k in range(j + 1):
                key = (k, w)
                out[key] = out.get(key, 0j) + base * math.comb(j, k) * a ** (j - k)
        return FExp(out)

    def deriv(self):
        out = {}
        for (j, w), c in self.terms.items():
            if j > 0:
                key = (j - 1, w)
                out[key] = out.get(key, 0j) + c * j
            if w != 0:
                key = (j, w)
                out[key] = out.get(key, 0j) + c * 1j * w
        return FExp(out)

    def conj(self):
        return FExp({(j, -w): c.conjugate() for (j, w), c in self.terms.items()})

    def evalf(self, xs):
        xs = np.asarray(xs, dtype=float)
        total = np.zeros(xs.shape, dtype=complex)
        for (j, w), c in self.terms.items():
            v = np.full(xs.shape, c, dtype=complex)
            if j:
                v = v * xs ** j
            if w:
                v = v * np.exp(1j * w * xs)
            total += v
        return total

    def __eq__(self, other):
        return isinstance(other, FExp) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (j, w) in sorted(self.terms):
            c = self.terms[(j, w)]
            body = []
            if j:
                body.append("t" if j == 1 else "t^%d" % j)
            if w:
                body.append("e^(%gi t)" % w)
            bits.append("(%s)%s" % (c, "*".join(body) if body else ""))
        return " + ".join(bits)

    __repr__ = __str__


class NumericOp:
    """Finite sum of terms ψ ↦ f(x)·ψ^{(d)}(x + a), i.e. M_f ∘ S_a ∘ D^d."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        merged = {}
        for f, a, d in (terms or []):
            key = (float(a), int(d))
            merged[key] = merged.get(key, FExp.zero()) + f
        self.terms = [(f, a, d) for (a, d), f in sorted(merged.items())
                      if not f.is_zero()]

    @classmethod
    def zero(cls):
        return cls([])

    @classmethod
    def identity(cls):
        return cls([(FExp.const(1.0), 0.0, 0)])

    @classmethod
    def multiply_by(cls, f):
        if not isinstance(f, FExp):
            f = FExp.const(f)
        return cls([(f, 0.0, 0)])

    @classmethod
    def shift_by(cls, a):
        return cls([(FExp.const(1.0), float(a), 0)])

    @classmethod
    def derivative(cls, order=1):
        return cls([(FExp.const(1.0), 0.0, int(order))])

    def __add__(self, other):
        return NumericOp(list(self.terms) + list(other.terms))

    def __neg__(self):
        return NumericOp([(f.scale(-1), a, d) for f, a, d in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return NumericOp([(f.scale(c), a, d) for f, a, d in self.terms])

    def compose(self, other):
        """Normal-ordered product self ∘ other."""
        out = []
        for f1, a1, d1 in self.terms:
            for f2, a2, d2 in other.terms:
                g = f2
                for k in range(d1 + 1):
                    # D^{d1}(f2·u) picks C(d1,k) f2^{(k)} u^{(d1−k)}
                    out.append((f1 * g.shift(a1).scale(math.comb(d1, k)),
                                a1 + a2, d1 - k + d2))
                    g = g.deriv()
        return NumericOp(out)

    __matmul__ = compose

    def adjoint(self):
        out = []
        for f, a, d in self.terms:
            h = f.conj().shift(-a)
            sign = (-1) ** d
            for k in range(d + 1):
                out.append((h.scale(sign * math.comb(d, k)), -a, d - k))
                h = h.deriv()
        return NumericOp(out)

    def max_dorder(self):
        return max((d for _, _, d in self.terms), default=0)

    def describe(self):
        return " + ".join("M[%s]·S[%g]·D^%d" % (f, a, d) for f, a, d in self.terms) \
            or "0"

    def __str__(self):
        return self.describe()

    __repr__ = __str__


class NumericMatrix:
    """Complex matrix with the truncation/quadrature provenance attached."""

    __slots__ = ("dim", "entries", "provenance")

    def __init__(self, entries, provenance=None):
        self.entries = np.asarray(entries, dtype=complex)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError("NumericMatrix must be square")
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("non-finite matrix entries")
        self.dim = self.entries.shape[0]
        self.provenance = dict(provenance or {})

    def _merge(self, other, note):
        prov = dict(self.provenance)
        prov["derived"] = note
        return prov

    def __add__(self, other):
        return NumericMatrix(self.entries + other.entries, self._merge(other, "sum"))

    def __sub__(self, other):
        return NumericMatrix(self.entries - other.entries, self._merge(other, "difference"))

    def __matmul__(self, other):
        return NumericMatrix(self.entries @ other.entries, self._merge(other, "product"))

    def scale(self, c):
        return NumericMatrix(c * self.entries, dict(self.provenance))

    def adjoint(self):
        return NumericMatrix(self.entries.conj().T, dict(self.provenance))

    def interior(self, m):
        return self.entries[:m, :m]

    def entry(self, i, j):
        return complex(self.entries[i, j])

    def max_abs(self):
        return float(np.max(np.abs(self.entries))) if self.dim else 0.0

    def __str__(self):
        return "NumericMatrix(dim=%d, provenance=%r)" % (self.dim, self.provenance)

    __repr__ = __str__


def _gram_selftest(order, nmax, tol=1e-10):
    xs, wm = gauss_hermite_rule(order)
    h = hermite_values(xs, nmax)
    gram = np.einsum("mi,i,ni->mn", h, wm, h)
    err = float(np.max(np.abs(gram - np.eye(nmax))))
    if err > tol:
        raise QuadratureError(
            "orthonormality self-test failed: order %d, nmax %d, error %.3e"
            % (order, nmax, err))
    return err


def hermite_matrix(op, trunc, quad_order=None):
    """N×N matrix of a NumericOp in the Hermite-function basis.

    quad_order defaults to the 4N oversampling floor and may not go below it;
    every call re-runs the orthonormality self-test on the rule it uses.
    """
    if not isinstance(op, NumericOp):
        raise TypeError("expected a NumericOp, got %r" % (op,))
    N = int(trunc)
    if N < 2:
        raise ValueError("truncation size must be at least 2")
    floor = 4 * N
    if quad_order is None:
        quad_order = floor
    if quad_order < floor:
        raise ValueError("quad_order %d below oversampling floor %d"
                         % (quad_order, floor))
    maxd = op.max_dorder()
    nprime = N + maxd
    selftest = _gram_selftest(quad_order, nprime)
    xs, wm = gauss_hermite_rule(quad_order)
    total = np.zeros((N, N), dtype=complex)
    for f, a, d in op.terms:
        nk = N + d
        # centre the shift: x = u − a/2 recombines the Gaussian tails exactly
        hm = hermite_values(xs - a / 2.0, N)
        hn = hermite_values(xs + a / 2.0, nk)
        fv = f.evalf(xs - a / 2.0)
        G = np.einsum("mi,i,ni->mn", hm, wm * fv, hn)
        if d:
            Dfull = derivative_band(nk)
            Dp = np.linalg.matrix_power(Dfull, d)
            total += G @ Dp[:, :N]
        else:
            total += G[:, :N]
    return NumericMatrix(total, {
        "basis": "hermite",
        "trunc": N,
        "quad_order": int(quad_order),
        "gram_selftest": selftest,
        "operator": op.describe(),
    })


def commutant_kernel_dim(mats, tol, interior=None):
    """Estimate dim{T : [T, G] = 0 on the interior block} via stacked SVD.

    T ranges over M×M matrices (M = N/2 unless given); embedding T in the
    upper-left corner makes the interior block of [T_emb, G] equal exactly
    to [T, G[:M,:M]], so the constraint matrix is the stacked
    kron(G₁₁ᵀ, I) − kron(I, G₁₁).  Returns (kernel_dim, normalized tail).
    """
    arrs = [m.entries if isinstance(m, NumericMatrix) else np.asarray(m, dtype=complex)
            for m in mats]
    if not arrs:
        raise ValueError("need at least one generator")
    N = arrs[0].shape[0]
    M = interior if interior is not None else N // 2
    eye = np.eye(M)
    rows = []
    for g in arrs:
        g11 = g[:M, :M]
        rows.append(np.kron(g11.T, eye) - np.kron(eye, g11))
    stacked = np.vstack(rows)
    sv = np.linalg.svd(stacked, compute_uv=False)
    smax = float(sv[0]) if sv.size else 0.0
    if smax <= 1e-300:
        return M * M, [0.0] * min(6, sv.size)
    kdim = int(np.sum(sv < tol * smax))
    tail = (sv[-6:] / smax).tolist()
    return kdim, tail
