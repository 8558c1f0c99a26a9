"""Certificates and extension solves: frozen constants for the flat no-go
results, the sphere family, and the torus numeric identities."""

import json
from fractions import Fraction

import pytest

from gvh.flat import FlatElement, bracket_flat
from gvh.obstruction import (CONVENTION, anticommutator_certificate,
                             cubic_extension_problem, extension_solve,
                             groenewold_certificate,
                             position_nonextension_certificate,
                             quadratic_extension_problem, sphere_certificate,
                             sphere_equivariance_problem, strong_nogo_record,
                             torus_irreducibility, torus_transform_identities,
                             vonneumann_rules_flat)
from gvh.scalars import HBAR, S_I, Scalar
from gvh.weyl import WeylElement, symmetrized, weyl_commutator

X = WeylElement.x()
P = WeylElement.p()
H2 = HBAR * HBAR
A2H2 = Scalar.param("a") * Scalar.param("a") * H2


def _frac(num, den=1):
    return Scalar.from_fraction(Fraction(num, den))


def _mono(qe, pe):
    from gvh.scalars import S_ONE
    return FlatElement.monomial(1, (qe,), (pe,), S_ONE)


# ---------------------------------------------------------------------------
# flat anticommutator obstruction


def test_anticommutator_certificate():
    cert = anticommutator_certificate()
    assert cert.name == "anticommutator"
    assert cert.verdict == "inconsistent"
    assert (cert.discrepancy - _frac(3, 4) * H2).is_zero()
    assert str(cert.steps[0]["difference"]) == "(3/4*hbar^2)*1"
    assert str(cert.steps[1]["quantum_lhs"]) == "-1/4*hbar^2"
    assert str(cert.steps[2]["quantum_lhs"]) == "-hbar^2"


def test_anticommutator_constants_rederived():
    # the two competing quantizations of q^2 p^2, normal ordered by hand
    lhs = symmetrized(X, P) * symmetrized(X, P)            # (1/4)(XP+PX)^2
    rhs = symmetrized(X * X, P * P)                        # (1/2)(X^2P^2+P^2X^2)
    assert (lhs.scalar_part() + _frac(1, 4) * H2).is_zero()
    assert (rhs.scalar_part() + H2).is_zero()
    assert lhs - rhs == WeylElement.const(_frac(3, 4) * H2)


# ---------------------------------------------------------------------------
# Groenewold identity


def test_groenewold_classical_identity():
    # (1/9){q^3, p^3} = (1/3){q^2 p, q p^2}; with {p, q} = +1 both are -q^2 p^2
    q3, p3 = _mono(3, 0), _mono(0, 3)
    q2p, qp2 = _mono(2, 1), _mono(1, 2)
    left = bracket_flat(q3, p3).scale(_frac(1, 9))
    right = bracket_flat(q2p, qp2).scale(_frac(1, 3))
    assert left == right == _mono(2, 2).scale(Scalar.from_int(-1))


def test_groenewold_certificate():
    cert = groenewold_certificate()
    assert cert.verdict == "inconsistent"
    assert (cert.discrepancy - _frac(1, 3) * H2).is_zero()
    assert str(cert.steps[1]["difference"]) == "normalized constant 2/3"
    assert str(cert.steps[2]["difference"]) == "normalized constant 1/3"
    assert str(cert.steps[3]["difference"]) == "(1/3*hbar^2)*1"


def test_groenewold_constants_rederived():
    # route both sides through the unique cubic rules and compare constants
    i_over_h = S_I * HBAR.inverse()
    via_cubes = weyl_commutator(X * X * X, P * P * P).scale(i_over_h * _frac(1, 9))
    via_mixed = weyl_commutator(symmetrized(X * X, P),
                                symmetrized(X, P * P)).scale(i_over_h * _frac(1, 3))
    assert (via_cubes.scalar_part() - _frac(2, 3) * H2).is_zero()
    assert (via_mixed.scalar_part() - _frac(1, 3) * H2).is_zero()
    assert via_cubes - via_mixed == WeylElement.const(_frac(1, 3) * H2)


# ---------------------------------------------------------------------------
# extension problems


def test_quadratic_extension_unique():
    sol = extension_solve(quadratic_extension_problem())
    assert sol.verdict == "unique"
    assert sol.parameters == 0
    assert sol.assignments[0] == X * X
    assert sol.assignments[1] == symmetrized(X, P)
    assert sol.assignments[2] == P * P
    assert sol.operator_for(1) == symmetrized(X, P)


def test_cubic_extension_inconsistent():
    sol = extension_solve(cubic_extension_problem())
    assert sol.verdict == "inconsistent"
    label, residual = sol.contradiction
    assert label == "(1/9){q^3,p^3} - (1/3){q^2 p, q p^2}"
    assert (residual + _frac(1, 3) * H2).is_zero()
    assert "contradict" in sol.detail


def test_strong_nogo_record():
    cert = strong_nogo_record()
    assert cert.name == "strong_nogo"
    assert cert.verdict == "inconsistent"
    assert (cert.discrepancy - _frac(1, 3) * H2).is_zero()
    assert cert.steps[0]["difference"] == "parameters remaining: 0"
    assert cert.steps[1]["quantum_rhs"] == "inconsistent"


def test_certificate_serialization():
    d = strong_nogo_record().to_dict()
    assert sorted(d.keys()) == ["assumptions", "convention", "discrepancy",
                                "name", "reference", "steps", "verdict"]
    assert d["convention"] == CONVENTION
    assert d["discrepancy"] == "1/3*hbar^2"
    again = json.loads(json.dumps(d, sort_keys=True))
    assert again == d


# ---------------------------------------------------------------------------
# closed-form rules through degree five


def test_vonneumann_records_all_unique():
    out = vonneumann_rules_flat(5)
    assert sorted(r["degree"] for r in out["records"]) == [2, 3, 4, 5]
    for rec in out["records"]:
        assert rec["verdict"] == "unique"
        assert rec["matches_closed_form"] is True


def test_vonneumann_rules_match_symmetrization():
    rules = vonneumann_rules_flat(5)["rules"]
    for d in range(2, 6):
        assert rules[(d, 0)] == WeylElement.word((d, 0))
        assert rules[(0, d)] == WeylElement.word((0, d))
    for a in range(1, 5):
        xa = WeylElement.word((a, 0))
        pb = WeylElement.word((0, a))
        assert rules[(a, 1)] == symmetrized(xa, P)
        assert rules[(1, a)] == symmetrized(X, pb)


# ---------------------------------------------------------------------------
# sphere family


def test_sphere_trivial_spin_consistent():
    cert = sphere_certificate(0)
    assert cert.verdict == "consistent"
    assert cert.discrepancy is None
    assert cert.assumptions == []
    assert str(cert.steps[0]["quantum_rhs"]) == "1/3*s^2"


def test_sphere_half_spin_degenerate():
    cert = sphere_certificate(Fraction(1, 2))
    assert cert.verdict == "inconsistent"
    assert cert.discrepancy == "s^2 = 0 vs s > 0"
    assert "j(j+1) - 3/4 = 0" in cert.steps[2]["classical"]
    assert cert.assumptions == ["a != 0 and c != 0 (nontriviality input)",
                                "s > 0 (sphere radius)"]


SPHERE_TABLE = [
    # j, s^2 from identity one, s^2 from identity two (units of hbar^2 a^2)
    (1, "5/4*hbar^2*a^2", "-1/4*hbar^2*a^2"),
    (Fraction(3, 2), "3*hbar^2*a^2", "3/2*hbar^2*a^2"),
    (2, "21/4*hbar^2*a^2", "15/4*hbar^2*a^2"),
    (Fraction(5, 2), "8*hbar^2*a^2", "13/2*hbar^2*a^2"),
    (3, "45/4*hbar^2*a^2", "39/4*hbar^2*a^2"),
]


@pytest.mark.parametrize("j,s2_one,s2_two", SPHERE_TABLE)
def test_sphere_certificate_table(j, s2_one, s2_two):
    cert = sphere_certificate(j)
    assert cert.verdict == "inconsistent"
    # the two quadratic identities pin incompatible values of s^2 ...
    assert cert.steps[1]["difference"].startswith("s^2 = %s (target" % s2_one)
    assert cert.steps[2]["difference"].startswith("s^2 = %s (target" % s2_two)
    # ... whose gap is (3/2) hbar^2 a^2 independently of j
    assert (cert.discrepancy - _frac(3, 2) * A2H2).is_zero()


def test_sphere_equivariance_family():
    sol = extension_solve(sphere_equivariance_problem(1))
    assert sol.verdict == "family"
    assert sol.parameters == 2


# ---------------------------------------------------------------------------
# position-representation restriction


def test_position_nonextension_certificate():
    cert = position_nonextension_certificate()
    assert cert.name == "position_nonextension"
    assert cert.verdict == "inconsistent"
    assert (cert.discrepancy - _frac(1, 3) * H2).is_zero()
    assert cert.steps[0]["quantum_lhs"] == "dimension 1"
    assert cert.steps[0]["difference"] == "trivial: True"
    assert cert.steps[1]["quantum_rhs"] == "forces T = 0"
    assert cert.steps[2]["quantum_lhs"] == "chained certificate: groenewold"


# ---------------------------------------------------------------------------
# torus numeric identities (k = 1 here; k = 2 is exercised by the
# acceptance suite, which owns the heavier runs)


def test_torus_transform_identities():
    out = torus_transform_identities(1)
    assert out["k"] == 1 and out["trunc"] == 64
    assert out["interior"] == 32 and out["quad_order"] == 256
    assert out["hbar"] == pytest.approx(1.0 / (2.0 * 3.141592653589793))
    # measured ~1.6e-12 / 4.3e-14; the contract bound is 1e-8
    assert out["error_a_identity"] < 1e-8
    assert out["error_b_identity"] < 1e-8


def test_torus_irreducibility():
    out = torus_irreducibility(1)
    assert out["commutant_dim_estimate"] == 1
    assert out["verdict"] == "irreducible (numeric)"
    tail = out["singular_tail"]
    assert tail[-1] < out["tol"] < tail[-2]
    assert out["singular_gap"] > 1e6


def test_torus_rejects_bad_inputs():
    with pytest.raises(ValueError):
        torus_transform_identities(0)
    with pytest.raises(ValueError):
        torus_transform_identities(1, trunc=2)
    with pytest.raises(ValueError):
        torus_irreducibility(0)
