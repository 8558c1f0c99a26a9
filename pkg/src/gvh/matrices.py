"""Exact matrices over Scalar or Radical entries, plus the exact spin
representations Q(S_i) of dimension 2j+1.

Entries only need ring operators (+, −, *, is_zero, conj); `one`/`zero`
samples are carried so identity construction stays generic.
"""

from __future__ import annotations

from fractions import Fraction

from .radicals import Radical
from .scalars import HBAR, S_I, S_ONE, S_ZERO, Scalar


class ExactMatrix:
    __slots__ = ("dim", "rows", "one", "zero")

    def __init__(self, rows, one=S_ONE, zero=S_ZERO):
        self.rows = [list(r) for r in rows]
        self.dim = len(self.rows)
        for r in self.rows:
            if len(r) != self.dim:
                raise ValueError("matrix must be square")
        self.one = one
        self.zero = zero

    @classmethod
    def zeros(cls, dim, one=S_ONE, zero=S_ZERO):
        return cls([[zero for _ in range(dim)] for _ in range(dim)], one, zero)

    @classmethod
    def identity(cls, dim, one=S_ONE, zero=S_ZERO):
        m = cls.zeros(dim, one, zero)
        for i in range(dim):
            m.rows[i][i] = one
        return m

    def _check(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch %d vs %d" % (self.dim, other.dim))

    def entry(self, i, j):
        return self.rows[i][j]

    def __add__(self, other):
        self._check(other)
        return ExactMatrix([[a + b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.rows, other.rows)],
                           self.one, self.zero)

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.rows], self.one, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ExactMatrix([[c * a for a in r] for r in self.rows], self.one, self.zero)

    def __rmul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return self.scale(other)
        self._check(other)
        n = self.dim
        out = ExactMatrix.zeros(n, self.one, self.zero)
        for i in range(n):
            for k in range(n):
                a = self.rows[i][k]
                if a.is_zero():
                    continue
                for j in range(n):
                    b = other.rows[k][j]
                    if b.is_zero():
                        continue
                    out.rows[i][j] = out.rows[i][j] + a * b
        return out

    def commutator(self, other):
        return self * other - other * self

    def adjoint(self):
        n = self.dim
        return ExactMatrix([[self.rows[j][i].conj() for j in range(n)]
                            for i in range(n)], self.one, self.zero)

    def trace(self):
        t = self.zero
        for i in range(self.dim):
            t = t + self.rows[i][i]
        return t

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.dim == other.dim \
            and all(ra == rb for ra, rb in zip(self.rows, other.rows))

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def evalf(self, params=None):
        import numpy as np
        return np.array([[complex(a.evalf(params)) for a in r] for r in self.rows])

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"

    __repr__ = __str__


def _half_integer(j):
    """Return 2j as an int, or raise for invalid spin labels."""
    if isinstance(j, Fraction):
        twoj = 2 * j
        if twoj.denominator != 1:
            raise ValueError("spin label must be a half-integer, got %s" % j)
        twoj = twoj.numerator
    elif isinstance(j, int):
        twoj = 2 * j
    elif isinstance(j, float):
        twoj = round(2 * j)
        if abs(2 * j - twoj) > 1e-12:
            raise ValueError("spin label must be a half-integer, got %r" % j)
    else:
        raise TypeError("spin label must be numeric, got %r" % (j,))
    if twoj < 0:
        raise ValueError("spin label must be nonnegative, got %s" % j)
    return twoj


def spin_matrices(j):
    """(Q(S₁), Q(S₂), Q(S₃)) in dimension 2j+1, exact entries.

    Basis is ordered by descending magnetic label m = j, j−1, …, −j; the
    triple satisfies [Q(S_a), Q(S_b)] = iħ ε_abc Q(S_c) and
    Σ Q(S_i)² = ħ²j(j+1)·I exactly.
    """
    twoj = _half_integer(j)
    dim = twoj + 1
    one, zero = Radical.one(), Radical.zero()
    jplus = ExactMatrix.zeros(dim, one, zero)
    jminus = ExactMatrix.zeros(dim, one, zero)
    j3 = ExactMatrix.zeros(dim, one, zero)
    hbar_r = Radical.from_scalar(HBAR)
    for r in range(dim):
        # m = j − r, stored exactly as the Scalar (twoj − 2r)/2
        m_val = Scalar.from_rational(twoj - 2 * r, 2)
        j3.rows[r][r] = Radical.from_scalar(HBAR * m_val)
        if r >= 1:
            jplus.rows[r - 1][r] = hbar_r * Radical.sqrt_int(r * (twoj - r + 1))
        if r + 1 < dim:
            jminus.rows[r + 1][r] = hbar_r * Radical.sqrt_int((twoj - r) * (r + 1))
    half = Radical.from_scalar(Scalar.from_rational(1, 2))
    minus_i_half = Radical.from_scalar(Scalar.from_rational(-1, 2) * S_I)
    q1 = (jplus + jminus).scale(half)
    q2 = (jplus - jminus).scale(minus_i_half)
    return q1, q2, j3
