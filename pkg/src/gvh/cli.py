"""Command-line interface.

Verbs: bracket, generate, normalizer, transitivity, checkq1, verify.
Targets: r2n (flat phase space), sphere, torus.  Output is a reproducible
JSON or markdown report; exit status is 0 when every verdict matches the
expected one, 2 when any certificate is undecided, 1 otherwise.
"""

from __future__ import annotations

import argparse
import fractions
import os
import sys

from .flat import bracket_flat
from .parse import ParseError, parse_expression, print_expression
from .qmaps import (METAPLECTIC, POSITION, SCHRODINGER, TORUS_PREQUANT,
                    VANHOVE, DEFAULT_TORUS_HBAR, DomainError, check_q1,
                    sphere_map)
from .report import Report, emit_report
from .scalars import Scalar
from .sphere import bracket_sphere
from .subspace import (FlatAmbient, SphereAmbient, SubspaceBasis,
                       TorusAmbient, generate_poisson_subalgebra, normalizer,
                       transitivity_check)
from .torus import basic_set, bracket_torus

TARGETS = ("r2n", "sphere", "torus")


def _rational(text):
    try:
        return Scalar.from_fraction(fractions.Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % text)


def _spin(text):
    try:
        return fractions.Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a spin label: %r" % text)


def _default_trunc():
    return int(os.environ.get("GVH_TRUNC", "64"))


def _parse_elem(args, text):
    if args.target == "r2n":
        return parse_expression(text, "flat", n=args.n)
    if args.target == "sphere":
        return parse_expression(text, "sphere")
    return parse_expression(text, "torus", B=args.B)


def _ambient(args):
    if args.target == "r2n":
        return FlatAmbient(args.n, args.degree_cap or 4)
    if args.target == "sphere":
        return SphereAmbient(args.degree_cap or 3)
    return TorusAmbient(args.freq_cap, args.B)


def _base_report(args, extra_provenance=None):
    prov = {"target": args.target, "verb": args.verb}
    if args.target == "r2n":
        prov["n"] = args.n
    if args.target == "torus":
        prov["B"] = str(args.B)
    if extra_provenance:
        prov.update(extra_provenance)
    return Report(meta={"provenance": prov})


# ---------------------------------------------------------------------------
# verb handlers
# ---------------------------------------------------------------------------

def cmd_bracket(args):
    f = _parse_elem(args, args.exprs[0])
    g = _parse_elem(args, args.exprs[1])
    if args.target == "r2n":
        h = bracket_flat(f, g)
    elif args.target == "sphere":
        h = bracket_sphere(f, g)
    else:
        h = bracket_torus(f, g)
    rep = _base_report(args)
    rep.add_result({"name": "bracket", "f": print_expression(f),
                    "g": print_expression(g),
                    "result": print_expression(h)})
    return rep, 0


def cmd_generate(args):
    ambient = _ambient(args)
    gens = [_parse_elem(args, t) for t in args.exprs]
    basis = generate_poisson_subalgebra(gens, ambient)
    rep = _base_report(args)
    rep.add_result({"name": "generate",
                    "generators": [print_expression(g) for g in gens],
                    "dimension": basis.dim(),
                    "basis": [print_expression(e) for e in basis.elements()]})
    return rep, 0


def cmd_normalizer(args):
    ambient = _ambient(args)
    gens = [_parse_elem(args, t) for t in args.exprs]
    sub = generate_poisson_subalgebra(gens, ambient)
    norm = normalizer(sub, ambient)
    rep = _base_report(args)
    rep.add_result({"name": "normalizer",
                    "generators": [print_expression(g) for g in gens],
                    "subalgebra_dimension": sub.dim(),
                    "normalizer_dimension": norm.dim(),
                    "normalizer_basis":
                        [print_expression(e) for e in norm.elements()]})
    return rep, 0


def cmd_transitivity(args):
    ambient = _ambient(args)
    gens = [_parse_elem(args, t) for t in args.exprs]
    basis = SubspaceBasis.from_elements(ambient, gens)
    reports = transitivity_check(basis, npoints=args.npoints, seed=args.seed)
    transitive = all(r["transitive"] for r in reports)
    rep = _base_report(args, {"seed": args.seed, "npoints": args.npoints})
    rep.add_result({"name": "transitivity",
                    "generators": [print_expression(g) for g in gens],
                    "dim_manifold": reports[0]["dim"] if reports else 0,
                    "ranks": [r["rank"] for r in reports],
                    "transitive": transitive})
    return rep, 0 if transitive else 1


_FLAT_MAPS = {"schrodinger": SCHRODINGER, "metaplectic": METAPLECTIC,
              "position": POSITION, "vanhove": VANHOVE}


def cmd_checkq1(args):
    if args.target == "r2n":
        qmap = _FLAT_MAPS[args.map or "vanhove"]
    elif args.target == "sphere":
        qmap = sphere_map(args.j)
    else:
        qmap = TORUS_PREQUANT
    f = _parse_elem(args, args.exprs[0])
    g = _parse_elem(args, args.exprs[1])
    residual = check_q1(qmap, f, g)
    zero = residual.is_zero()
    rep = _base_report(args, {"map": qmap.name})
    rep.add_result({"name": "checkq1", "map": qmap.name,
                    "f": print_expression(f), "g": print_expression(g),
                    "residual_zero": zero, "residual": str(residual)})
    return rep, 0 if zero else 1


def _verify_r2n(args):
    from .obstruction import (anticommutator_certificate,
                              groenewold_certificate,
                              position_nonextension_certificate)
    rep = _base_report(args)
    rep.add_certificate(anticommutator_certificate(), "inconsistent")
    rep.add_certificate(groenewold_certificate(), "inconsistent")
    rep.add_certificate(position_nonextension_certificate(), "inconsistent")
    return rep


def _verify_sphere(args):
    from .obstruction import sphere_certificate
    rep = _base_report(args, {"j": str(args.j)})
    expected = "consistent" if args.j == 0 else "inconsistent"
    rep.add_certificate(sphere_certificate(args.j), expected)
    return rep


def _verify_torus(args):
    from .obstruction import torus_irreducibility, torus_transform_identities
    prov = {"k": args.k, "trunc": args.trunc, "tol": args.tol,
            "hbar_numeric": DEFAULT_TORUS_HBAR}
    rep = _base_report(args, prov)
    rep.meta["hbar"] = "formal symbol (numeric parts at hbar = 1/(2*pi))"

    steps = []
    all_zero = True
    for kk in (1, 2, 3):
        gens = basic_set(kk, args.B)
        pairs = zeros = 0
        for i, f in enumerate(gens):
            for g in gens[i + 1:]:
                pairs += 1
                if check_q1(TORUS_PREQUANT, f, g).is_zero():
                    zeros += 1
        all_zero = all_zero and zeros == pairs
        steps.append({"classical": "basic set pairs, k = %d" % kk,
                      "quantum_lhs": "Q({f,g})",
                      "quantum_rhs": "(i/hbar)[Q(f), Q(g)]",
                      "difference": "exactly zero on %d/%d pairs" % (zeros, pairs)})
    rep.add_certificate({
        "name": "torus_q1_symbolic",
        "reference": "prequantization bracket compatibility",
        "steps": steps,
        "verdict": "consistent" if all_zero else "inconsistent",
        "discrepancy": None if all_zero else "nonzero symbolic residual",
    }, "consistent")

    ident = torus_transform_identities(args.k, args.trunc,
                                       quad_order=args.quad_order)
    ident_tol = 1e-8
    ident_ok = max(ident["error_a_identity"], ident["error_b_identity"]) < ident_tol
    rep.add_certificate({
        "name": "torus_transform_identities",
        "reference": "Weil-transform product identities",
        "steps": [
            {"classical": "A-A+ = I + 4 pi^2 k^2 x^2 (interior block)",
             "quantum_lhs": "composite-symbol matrix",
             "quantum_rhs": "band-matrix right side",
             "difference": ident["error_a_identity"]},
            {"classical": "B-B+ = I - 4 pi^2 hbar^2 k^2 d^2/dx^2 (interior block)",
             "quantum_lhs": "truncated matrix product",
             "quantum_rhs": "band-matrix right side",
             "difference": ident["error_b_identity"]},
        ],
        "verdict": "consistent" if ident_ok else "inconsistent",
        "discrepancy": None if ident_ok else "identity error above %g" % ident_tol,
    }, "consistent")
    rep.meta["provenance"]["quad_order"] = ident["quad_order"]

    irr = torus_irreducibility(args.k, args.trunc, args.tol,
                               quad_order=args.quad_order)
    irr_ok = irr["commutant_dim_estimate"] == 1
    rep.add_certificate({
        "name": "torus_irreducibility",
        "reference": "numeric commutant surrogate for irreducibility",
        "steps": [
            {"classical": "commutant kernel of {A+, A-, B+, B-}",
             "quantum_lhs": "kernel dimension %d" % irr["commutant_dim_estimate"],
             "quantum_rhs": "1 (scalars only)",
             "difference": irr["singular_tail"][-2] if len(irr["singular_tail"]) > 1
                           else None},
        ],
        "verdict": "consistent" if irr_ok else "undecided",
        "discrepancy": None if irr_ok else irr["verdict"],
    }, "consistent")
    return rep


def cmd_verify(args):
    if args.target == "r2n":
        rep = _verify_r2n(args)
    elif args.target == "sphere":
        rep = _verify_sphere(args)
    else:
        rep = _verify_torus(args)
    return rep, rep.exit_code()


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gvh",
        description="Exact verification of quantization obstruction results "
                    "on flat phase space, the sphere, and the torus.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(sp, nexprs=0):
        sp.add_argument("target", choices=TARGETS)
        if nexprs:
            sp.add_argument("exprs", nargs=nexprs, metavar="EXPR")
        sp.add_argument("--n", type=int, default=1,
                        help="flat degrees of freedom (default 1)")
        sp.add_argument("--B", type=_rational, default=Scalar.from_int(1),
                        help="torus symplectic scale (rational, default 1)")
        sp.add_argument("--format", choices=("json", "markdown"),
                        default="json")
        return sp

    common(sub.add_parser("bracket", help="Poisson bracket of two expressions"),
           nexprs=2)

    for verb in ("generate", "normalizer"):
        sp = common(sub.add_parser(
            verb, help="%s of the generated Poisson subalgebra" % verb),
            nexprs="+")
        sp.add_argument("--degree-cap", type=int, default=None,
                        help="ambient degree cap (default: 4 flat, 3 sphere)")
        sp.add_argument("--freq-cap", type=int, default=3,
                        help="torus ambient frequency cap")

    sp = common(sub.add_parser("transitivity",
                               help="sampled Hamiltonian-field rank check"),
                nexprs="+")
    sp.add_argument("--degree-cap", type=int, default=None)
    sp.add_argument("--freq-cap", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--npoints", type=int, default=8)

    sp = common(sub.add_parser("checkq1",
                               help="bracket-to-commutator residual of a map"),
                nexprs=2)
    sp.add_argument("--map", choices=sorted(_FLAT_MAPS),
                    help="flat-target map (default vanhove)")
    sp.add_argument("--j", type=_spin, default=fractions.Fraction(1),
                    help="spin label for the sphere map")

    sp = common(sub.add_parser("verify",
                               help="replay the certificate chain for a target"))
    sp.add_argument("--j", type=_spin, default=fractions.Fraction(1))
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--trunc", type=int, default=None,
                    help="Hermite truncation (default $GVH_TRUNC or 64)")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--quad-order", type=int, default=None)
    return parser


_HANDLERS = {
    "bracket": cmd_bracket,
    "generate": cmd_generate,
    "normalizer": cmd_normalizer,
    "transitivity": cmd_transitivity,
    "checkq1": cmd_checkq1,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trunc", None) is None and args.verb == "verify":
        args.trunc = _default_trunc()
    from .hermite import QuadratureError
    try:
        report, code = _HANDLERS[args.verb](args)
    except (ParseError, DomainError, QuadratureError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 1
    sys.stdout.write(emit_report(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
