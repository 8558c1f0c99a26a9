"""Trigonometric polynomials on the torus T^2.

Elements are finite Fourier series sum c_(m,n) e^(2 pi i (m x + n y)) with
exact Scalar coefficients; pi stays a formal symbol so brackets remain exact.
The symplectic form is B dx^dy, giving {f, g} = (1/B)(f_x g_y - f_y g_x).
"""

from __future__ import annotations

import cmath

from .scalars import Scalar, S_ZERO, S_ONE, S_I, HBAR, TWO_PI


class TorusElement:
    __slots__ = ("coeffs", "B")

    def __init__(self, coeffs=None, B=None):
        self.coeffs = {} if coeffs is None else {
            f: c for f, c in coeffs.items() if not c.is_zero()}
        self.B = HBAR if B is None else B

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, B=None):
        return cls({}, B)

    @classmethod
    def const(cls, c, B=None):
        return cls({(0, 0): c if isinstance(c, Scalar) else Scalar.from_int(c)}, B)

    @classmethod
    def harmonic(cls, m, n, c=S_ONE, B=None):
        """c * e^(2 pi i (m x + n y))."""
        return cls({(int(m), int(n)): c}, B)

    @classmethod
    def sin(cls, m, n, B=None):
        """sin(2 pi (m x + n y)) = (e_+ - e_-)/(2i)."""
        half_i = S_I / 2
        return cls({(m, n): -half_i, (-m, -n): half_i}, B)

    @classmethod
    def cos(cls, m, n, B=None):
        half = S_ONE / 2
        return cls({(m, n): half, (-m, -n): half}, B)

    # -- queries ---------------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_real(self):
        """Reality: c_(-m,-n) equals the conjugate of c_(m,n)."""
        for (m, n), c in self.coeffs.items():
            if self.coeffs.get((-m, -n), S_ZERO) != c.conj():
                return False
        return True

    def freq_bound(self):
        if not self.coeffs:
            return 0
        return max(max(abs(m), abs(n)) for m, n in self.coeffs)

    def _check(self, other):
        if self.B != other.B:
            raise ValueError("symplectic scales differ: %s vs %s" % (self.B, other.B))

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for f, c in other.coeffs.items():
            v = out.get(f)
            c2 = c if v is None else v + c
            if c2.is_zero():
                out.pop(f, None)
            else:
                out[f] = c2
        return TorusElement(out, self.B)

    def __neg__(self):
        return TorusElement({f: -c for f, c in self.coeffs.items()}, self.B)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for (m1, n1), c1 in self.coeffs.items():
            for (m2, n2), c2 in other.coeffs.items():
                f = (m1 + m2, n1 + n2)
                c = c1 * c2
                v = out.get(f)
                c = c if v is None else v + c
                if c.is_zero():
                    out.pop(f, None)
                else:
                    out[f] = c
        return TorusElement(out, self.B)

    def scale(self, c):
        return TorusElement({f: x * c for f, x in self.coeffs.items()}, self.B)

    def __eq__(self, other):
        return (isinstance(other, TorusElement) and self.B == other.B
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.B, tuple(sorted((f, hash(c)) for f, c in self.coeffs.items()))))

    # -- calculus --------------------------------------------------------------------

    def partial_x(self):
        return TorusElement(
            {f: c * TWO_PI * S_I * f[0] for f, c in self.coeffs.items() if f[0]}, self.B)

    def partial_y(self):
        return TorusElement(
            {f: c * TWO_PI * S_I * f[1] for f, c in self.coeffs.items() if f[1]}, self.B)

    def conj(self):
        return TorusElement({(-m, -n): c.conj() for (m, n), c in self.coeffs.items()}, self.B)

    # -- evaluation --------------------------------------------------------------------

    def evalf(self, x, y, params):
        total = 0j
        for (m, n), c in self.coeffs.items():
            total += c.evalf(params) * cmath.exp(2j * cmath.pi * (m * x + n * y))
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (m, n) in sorted(self.coeffs):
            parts.append("(%s)*e(%d,%d)" % (self.coeffs[(m, n)], m, n))
        return " + ".join(parts)

    __repr__ = __str__


def bracket_torus(f, g):
    """{f, g} = (1/B)(f_x g_y - f_y g_x) on finite Fourier series."""
    f._check(g)
    out = {}
    four_pi2 = TWO_PI * TWO_PI
    for (m1, n1), c1 in f.coeffs.items():
        for (m2, n2), c2 in g.coeffs.items():
            det = m1 * n2 - n1 * m2
            if det == 0:
                continue
            key = (m1 + m2, n1 + n2)
            c = c1 * c2 * four_pi2 * (-det) / f.B
            v = out.get(key)
            c = c if v is None else v + c
            if c.is_zero():
                out.pop(key, None)
            else:
                out[key] = c
    return TorusElement(out, f.B)


def basic_set(k, B=None):
    """span{1, sin 2 pi k x, cos 2 pi k x, sin 2 pi k y, cos 2 pi k y}."""
    return [
        TorusElement.const(S_ONE, B),
        TorusElement.sin(k, 0, B),
        TorusElement.cos(k, 0, B),
        TorusElement.sin(0, k, B),
        TorusElement.cos(0, k, B),
    ]
