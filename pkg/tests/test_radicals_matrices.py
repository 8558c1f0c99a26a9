"""Radical-extension scalars and exact matrices, including spin triples."""

import math
import random
from fractions import Fraction

import sympy

from gvh.matrices import ExactMatrix, spin_matrices
from gvh.radicals import Radical
from gvh.scalars import HBAR, S_I, S_ONE, S_ZERO, Scalar

RNG = random.Random(7)
SPINS = [Fraction(1, 2), 1, Fraction(3, 2), 2, Fraction(5, 2), 3]


def _rand_radical(rng, nonzero=False):
    out = Radical.zero()
    for _ in range(rng.randint(1, 3)):
        c = Scalar.from_fraction(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        k = rng.choice([1, 2, 3, 5, 6])
        out = out + Radical.sqrt_int(k) * Radical.from_scalar(c)
    if nonzero and out.is_zero():
        return Radical.one()
    return out


def test_sqrt_normalization():
    # sqrt(12) = 2 sqrt(3), sqrt(8) = 2 sqrt(2), sqrt(9) = 3
    assert Radical.sqrt_int(12) == Radical.sqrt_int(3) * Radical.from_scalar(Scalar.from_int(2))
    assert Radical.sqrt_int(8) == Radical.sqrt_int(2) * Radical.from_scalar(Scalar.from_int(2))
    assert Radical.sqrt_int(9) == Radical.from_scalar(Scalar.from_int(3))
    assert Radical.sqrt_int(0).is_zero()


def test_sqrt_products_reduce():
    r2, r3, r6 = Radical.sqrt_int(2), Radical.sqrt_int(3), Radical.sqrt_int(6)
    assert r2 * r3 == r6
    assert r2 * r2 == Radical.from_scalar(Scalar.from_int(2))
    assert r6 * r2 == r3 * Radical.from_scalar(Scalar.from_int(2))


def test_field_operations_random():
    for _ in range(100):
        a = _rand_radical(RNG)
        b = _rand_radical(RNG)
        c = _rand_radical(RNG)
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        nz = _rand_radical(RNG, nonzero=True)
        assert nz * nz.inv() == Radical.one()


def test_evalf_matches_math_sqrt():
    for _ in range(50):
        a = _rand_radical(RNG)
        b = _rand_radical(RNG)
        va, vb = a.evalf(), b.evalf()
        assert abs((a * b).evalf() - va * vb) < 1e-10
        assert abs((a + b).evalf() - (va + vb)) < 1e-12
    assert abs(Radical.sqrt_int(2).evalf() - math.sqrt(2)) < 1e-15


def test_conjugation():
    z = Radical.sqrt_int(2) * Radical.from_scalar(S_I) + Radical.one()
    assert z.conj() == Radical.one() - Radical.sqrt_int(2) * Radical.from_scalar(S_I)
    assert (z * z.conj()).is_rational_part_only()


def test_scalar_part_guard():
    z = Radical.sqrt_int(2) + Radical.from_scalar(HBAR)
    assert not z.is_rational_part_only()
    assert Radical.from_scalar(HBAR).scalar_part() == HBAR


def test_spin_commutation_relations():
    """[Q_a, Q_b] = i hbar eps_abc Q_c and Casimir = hbar^2 j(j+1) I, exactly."""
    for j in SPINS:
        q1, q2, q3 = spin_matrices(j)
        dim = q1.dim
        assert dim == int(2 * Fraction(j)) + 1
        ih = Radical.from_scalar(S_I * HBAR)
        for a, b, c in ((q1, q2, q3), (q2, q3, q1), (q3, q1, q2)):
            assert a.commutator(b) == c.scale(ih)
        casimir = q1 * q1 + q2 * q2 + q3 * q3
        jj = Scalar.from_fraction(Fraction(j) * (Fraction(j) + 1))
        want = ExactMatrix.identity(dim, Radical.one(), Radical.zero()).scale(
            Radical.from_scalar(HBAR * HBAR * jj))
        assert casimir == want


def test_spin_matrices_selfadjoint_traceless():
    for j in (Fraction(1, 2), 1, Fraction(3, 2)):
        for q in spin_matrices(j):
            assert q.adjoint() == q
            assert q.trace().is_zero()


def test_spin_zero_is_trivial():
    q1, q2, q3 = spin_matrices(0)
    assert q1.dim == 1 and q1.is_zero() and q2.is_zero() and q3.is_zero()


def test_spin_entries_match_sympy():
    """Entry-by-entry oracle from sympy's angular momentum matrices."""
    from sympy.physics.quantum.spin import JxKet  # noqa: F401  (import check)
    from sympy.physics.matrices import msigma
    # j = 1/2: Q_i = (hbar/2) sigma_i
    q1, q2, q3 = spin_matrices(Fraction(1, 2))
    for q, k in ((q1, 1), (q2, 2), (q3, 3)):
        sig = msigma(k)
        for r in range(2):
            for cidx in range(2):
                got = q.entry(r, cidx).evalf({"hbar": 1.0})
                want = complex(sig[r, cidx]) / 2
                assert abs(got - want) < 1e-14


def test_spin_half_integer_validation():
    try:
        spin_matrices(Fraction(1, 3))
    except ValueError:
        pass
    else:
        raise AssertionError("non half-integer spin must be rejected")


def test_exact_matrix_algebra():
    one, zero = Radical.one(), Radical.zero()
    a = ExactMatrix.zeros(2, one, zero)
    a.rows[0][1] = Radical.sqrt_int(2)
    b = ExactMatrix.identity(2, one, zero).scale(Radical.sqrt_int(2))
    prod = a * b
    assert prod.entry(0, 1) == Radical.from_scalar(Scalar.from_int(2))
    assert (a + a).entry(0, 1) == Radical.sqrt_int(8)
    assert a.commutator(a).is_zero()
