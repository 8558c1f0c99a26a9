"""Extension solving and obstruction certificates.

The solver treats a quantization-extension question as exact linear algebra:
unknown operators are coefficient vectors over carrier atoms (normal-ordered
Weyl words, or matrix units), equivariance constraints are linear, bracket
relations between two unknowns are bilinear and handled in a second stage
that only ever solves linear systems — anything genuinely quadratic comes
back "undecided" rather than risking a wrong verdict.

Certificates replay the classical-identity schedules that force each no-go:
every step records the classical identity, both quantized sides, and their
exact difference, so a reader can re-check each line independently.
"""

from __future__ import annotations

import fractions

from .diffop import DiffOp, diffop_commutator
from .flat import FlatElement, bracket_flat
from .linalg import nullspace, solve_affine
from .matrices import ExactMatrix, spin_matrices
from .poly import MultiPoly, monomials_upto
from .qmaps import sphere_map
from .radicals import Radical
from .scalars import A_SYM, HBAR, S_I, S_ONE, S_ZERO, S_SPIN, Scalar
from .sphere import SVARS, SphereElement, bracket_raw, sphere_canonicalize
from .weyl import WeylElement, symmetrized, weyl_commutator, weyl_product

I_OVER_HBAR = S_I / HBAR

CONVENTION = "bracket {p,q} = +1; commutator [X,P] = i*hbar; rule Q({f,g}) = (i/hbar)[Q(f),Q(g)]"


# ---------------------------------------------------------------------------
# Carriers for unknown operators
# ---------------------------------------------------------------------------

class WeylCarrier:
    """Unknowns live in the Weyl algebra, coefficients in the Scalar field."""

    def __init__(self, n, degree_cap):
        self.n = n
        self.degree_cap = degree_cap
        self.atom_keys = monomials_upto(2 * n, degree_cap)
        self.one = S_ONE
        self.zero = S_ZERO

    def atom_op(self, key):
        return WeylElement.word(key, 1, self.n)

    def zero_op(self):
        return WeylElement.zero(self.n)

    def decompose(self, op):
        return dict(op.terms)

    def commutator(self, a, b):
        return weyl_commutator(a, b)

    def scale_ih(self, op):
        return op.scale(I_OVER_HBAR)

    def from_scalar(self, c):
        """Lift a classical Scalar coefficient into the carrier field."""
        return c

    def assemble(self, coeffs):
        op = self.zero_op()
        for key, c in coeffs.items():
            if not c.is_zero():
                op = op + self.atom_op(key).scale(c)
        return op


class MatrixCarrier:
    """Unknowns are square matrices over the radical-extension field."""

    def __init__(self, dim):
        self.dim = dim
        self.atom_keys = [(i, j) for i in range(dim) for j in range(dim)]
        self.one = Radical.one()
        self.zero = Radical.zero()

    def atom_op(self, key):
        m = ExactMatrix.zeros(self.dim, self.one, self.zero)
        m.rows[key[0]][key[1]] = self.one
        return m

    def zero_op(self):
        return ExactMatrix.zeros(self.dim, self.one, self.zero)

    def decompose(self, op):
        out = {}
        for i in range(op.dim):
            for j in range(op.dim):
                v = op.rows[i][j]
                if not v.is_zero():
                    out[(i, j)] = v
        return out

    def commutator(self, a, b):
        return a.commutator(b)

    def scale_ih(self, op):
        return op.scale(Radical.from_scalar(I_OVER_HBAR))

    def from_scalar(self, c):
        return Radical.from_scalar(c)

    def assemble(self, coeffs):
        op = self.zero_op()
        for (i, j), c in coeffs.items():
            if not c.is_zero():
                op.rows[i][j] = op.rows[i][j] + c
        return op


# ---------------------------------------------------------------------------
# Extension problems
# ---------------------------------------------------------------------------

class BracketConstraint:
    """One classical identity Σ c_i {f_i, g_i} = (its span expansion),
    quantized as Σ c_i (i/ħ)[Q(f_i), Q(g_i)] = Σ λ_k K_k + Σ μ_t U_t."""

    def __init__(self, terms, label=""):
        self.terms = [(_as_scalar(c), f, g) for c, f, g in terms]
        self.label = label

    def __repr__(self):
        return "BracketConstraint(%s)" % (self.label or len(self.terms))


def _as_scalar(c):
    if isinstance(c, Scalar):
        return c
    return Scalar.from_fraction(fractions.Fraction(c))


class ExtensionProblem:
    """known: list of (classical element, carrier operator); targets: the
    classical elements needing assignments; schedule: BracketConstraints."""

    def __init__(self, knowns, targets, carrier, schedule, bracket, coords,
                 bilinear_cap=6):
        self.knowns = list(knowns)
        self.targets = list(targets)
        self.carrier = carrier
        self.schedule = list(schedule)
        self.bracket = bracket
        self.coords = coords
        self.bilinear_cap = bilinear_cap

    def _classify(self, elem):
        """('known', idx) | ('target', idx); matches by classical equality."""
        for i, t in enumerate(self.targets):
            if t == elem:
                return ("target", i)
        for i, (k, _) in enumerate(self.knowns):
            if k == elem:
                return ("known", i)
        raise ValueError("constraint element %s is neither known nor target" % (elem,))

    def expand_in_span(self, elem):
        """Coefficients (λ over knowns, μ over targets) with
        elem = Σ λ_k known_k + Σ μ_t target_t, required unique."""
        cols = [self.coords(k) for k, _ in self.knowns] + \
               [self.coords(t) for t in self.targets]
        target_coords = self.coords(elem)
        keys = sorted({k for col in cols for k in col} | set(target_coords),
                      key=repr)
        rows = [[col.get(k, S_ZERO) for col in cols] for k in keys]
        rhs = [target_coords.get(k, S_ZERO) for k in keys]
        sol = solve_affine(rows, rhs, len(cols), S_ONE, S_ZERO)
        if sol is None:
            raise ValueError("bracket result %s not in the known+target span" % (elem,))
        part, null = sol
        if null:
            raise ValueError("ambiguous span expansion for %s" % (elem,))
        nk = len(self.knowns)
        return part[:nk], part[nk:]


class SolutionSpace:
    """verdict: unique | family | inconsistent | undecided."""

    def __init__(self, verdict, assignments=None, family=None, contradiction=None,
                 detail=""):
        self.verdict = verdict
        self.assignments = assignments      # list of carrier ops (particular)
        self.family = family or []          # list of direction lists
        self.contradiction = contradiction  # (constraint label, residual op)
        self.detail = detail

    @property
    def parameters(self):
        return len(self.family)

    def operator_for(self, index):
        return self.assignments[index]

    def __repr__(self):
        return "SolutionSpace(%s, parameters=%d)" % (self.verdict, self.parameters)


def extension_solve(prob):
    """Two-stage exact solve of an ExtensionProblem."""
    carrier = prob.carrier
    atoms = carrier.atom_keys
    T = len(prob.targets)
    ncols = T * len(atoms)
    col_of = {(t, a): t * len(atoms) + ai
              for t in range(T) for ai, a in enumerate(atoms)}

    # precompute expansions and classify constraints
    linear_cons, bilinear_cons = [], []
    expansions = {}
    for ci, con in enumerate(prob.schedule):
        combo = None
        bilinear = False
        for c, f, g in con.terms:
            kf, kg = prob._classify(f), prob._classify(g)
            if kf[0] == "target" and kg[0] == "target":
                bilinear = True
            br = prob.bracket(f, g)
            scaled = br.scale(c)
            combo = scaled if combo is None else combo + scaled
        expansions[ci] = prob.expand_in_span(combo)
        (bilinear_cons if bilinear else linear_cons).append(ci)

    def known_op(i):
        return prob.knowns[i][1]

    # ---------------- stage 1: linear (equivariance) constraints -----------
    rows_by_key = {}
    rhs_by_key = {}

    def row(ci, key):
        rk = (ci, key)
        if rk not in rows_by_key:
            rows_by_key[rk] = [carrier.zero] * ncols
            rhs_by_key[rk] = carrier.zero
        return rk

    for ci in linear_cons:
        con = prob.schedule[ci]
        lam, mu = expansions[ci]
        # quantum left side Σ c (i/ħ)[Q(f), Q(g)]
        for c, f, g in con.terms:
            kf, kg = prob._classify(f), prob._classify(g)
            cc = carrier.from_scalar(c)
            if kf[0] == "known" and kg[0] == "known":
                op = carrier.scale_ih(carrier.commutator(known_op(kf[1]),
                                                         known_op(kg[1])))
                for key, v in carrier.decompose(op).items():
                    rk = row(ci, key)
                    rhs_by_key[rk] = rhs_by_key[rk] - cc * v
            elif kf[0] == "known":
                kop = known_op(kf[1])
                for ai, a in enumerate(atoms):
                    op = carrier.scale_ih(carrier.commutator(kop, carrier.atom_op(a)))
                    for key, v in carrier.decompose(op).items():
                        rk = row(ci, key)
                        rows_by_key[rk][col_of[(kg[1], a)]] = \
                            rows_by_key[rk][col_of[(kg[1], a)]] + cc * v
            elif kg[0] == "known":
                kop = known_op(kg[1])
                for ai, a in enumerate(atoms):
                    op = carrier.scale_ih(carrier.commutator(carrier.atom_op(a), kop))
                    for key, v in carrier.decompose(op).items():
                        rk = row(ci, key)
                        rows_by_key[rk][col_of[(kf[1], a)]] = \
                            rows_by_key[rk][col_of[(kf[1], a)]] + cc * v
            else:  # both targets in a linear constraint cannot happen
                raise AssertionError("bilinear term in linear constraint")
        # quantum right side Σ λ K + Σ μ U
        for ki, l in enumerate(lam):
            if l.is_zero():
                continue
            lc = carrier.from_scalar(l)
            for key, v in carrier.decompose(known_op(ki)).items():
                rk = row(ci, key)
                rhs_by_key[rk] = rhs_by_key[rk] + lc * v
        for ti, m in enumerate(mu):
            if m.is_zero():
                continue
            mc = carrier.from_scalar(m)
            for a in atoms:
                rk = row(ci, a)
                rows_by_key[rk][col_of[(ti, a)]] = \
                    rows_by_key[rk][col_of[(ti, a)]] - mc

    keys_sorted = sorted(rows_by_key, key=repr)
    rows = [rows_by_key[k] for k in keys_sorted]
    rhs = [rhs_by_key[k] for k in keys_sorted]
    sol = solve_affine(rows, rhs, ncols, carrier.one, carrier.zero)
    if sol is None:
        return SolutionSpace("inconsistent",
                             contradiction=("equivariance stage", None),
                             detail="linear constraints are already unsatisfiable")
    part, null = sol

    def vec_to_ops(vec):
        ops = []
        for t in range(T):
            coeffs = {a: vec[col_of[(t, a)]] for a in atoms}
            ops.append(carrier.assemble(coeffs))
        return ops

    part_ops = vec_to_ops(part)
    dir_ops = [vec_to_ops(v) for v in null]

    if not bilinear_cons:
        verdict = "unique" if not dir_ops else "family"
        return SolutionSpace(verdict, part_ops, dir_ops)

    # ---------------- stage 2: bilinear constraints ------------------------
    P = len(dir_ops)
    if P > prob.bilinear_cap:
        return SolutionSpace("undecided",
                             detail="bilinear stage dimension %d exceeds cap %d"
                                    % (P, prob.bilinear_cap))

    def affine_for(kind, idx):
        if kind == "known":
            return known_op(idx), [None] * P
        return part_ops[idx], [d[idx] for d in dir_ops]

    # residual polynomial in parameters: monomial () constant, (a,), (a,b)
    sys_rows = {}   # (ci, key) -> [coeff per param]
    sys_rhs = {}    # (ci, key) -> field value (negated constant part)
    undecided = False

    for ci in bilinear_cons:
        con = prob.schedule[ci]
        lam, mu = expansions[ci]
        const_acc = {}
        lin_acc = [dict() for _ in range(P)]

        def add_to(acc, op, scale):
            for key, v in prob.carrier.decompose(op).items():
                acc[key] = acc.get(key, carrier.zero) + scale * v

        for c, f, g in con.terms:
            kf, kg = prob._classify(f), prob._classify(g)
            cc = carrier.from_scalar(c)
            F0, Fd = affine_for(*kf)
            G0, Gd = affine_for(*kg)
            add_to(const_acc, carrier.scale_ih(carrier.commutator(F0, G0)), cc)
            for a in range(P):
                if Fd[a] is not None:
                    add_to(lin_acc[a],
                           carrier.scale_ih(carrier.commutator(Fd[a], G0)), cc)
                if Gd[a] is not None:
                    add_to(lin_acc[a],
                           carrier.scale_ih(carrier.commutator(F0, Gd[a])), cc)
            for a in range(P):
                for b in range(P):
                    if Fd[a] is not None and Gd[b] is not None:
                        quad = carrier.scale_ih(carrier.commutator(Fd[a], Gd[b]))
                        if not quad.is_zero():
                            undecided = True
        # subtract the right side
        for ki, l in enumerate(lam):
            if not l.is_zero():
                add_to(const_acc, known_op(ki), -carrier.from_scalar(l))
        for ti, m in enumerate(mu):
            if m.is_zero():
                continue
            mc = carrier.from_scalar(m)
            add_to(const_acc, part_ops[ti], -mc)
            for a in range(P):
                add_to(lin_acc[a], dir_ops[a][ti], -mc)

        if undecided:
            return SolutionSpace(
                "undecided",
                detail="constraint %s is genuinely quadratic in the %d parameters"
                       % (con.label or ci, P))

        keys = set(const_acc)
        for a in range(P):
            keys.update(lin_acc[a])
        for key in keys:
            rk = (ci, key)
            sys_rows[rk] = [lin_acc[a].get(key, carrier.zero) for a in range(P)]
            sys_rhs[rk] = -const_acc.get(key, carrier.zero)

    keys_sorted = sorted(sys_rows, key=repr)
    rows2 = [sys_rows[k] for k in keys_sorted]
    rhs2 = [sys_rhs[k] for k in keys_sorted]
    sol2 = solve_affine(rows2, rhs2, P, carrier.one, carrier.zero)
    if sol2 is None:
        # find one violated constraint for the witness
        witness = None
        for rk in keys_sorted:
            if all(v.is_zero() for v in sys_rows[rk]) and not sys_rhs[rk].is_zero():
                ci = rk[0]
                witness = (prob.schedule[ci].label or str(prob.schedule[ci]),
                           sys_rhs[rk])
                break
        return SolutionSpace("inconsistent", contradiction=witness,
                             detail="bracket relations contradict the linear stage")
    tpart, tnull = sol2

    final = list(part_ops)
    for a in range(P):
        if tpart[a].is_zero():
            continue
        for ti in range(T):
            final[ti] = final[ti] + dir_ops[a][ti].scale(tpart[a])
    fam = []
    for tv in tnull:
        dirs = [carrier.zero_op() for _ in range(T)]
        for a in range(P):
            if tv[a].is_zero():
                continue
            for ti in range(T):
                dirs[ti] = dirs[ti] + dir_ops[a][ti].scale(tv[a])
        fam.append(dirs)
    verdict = "unique" if not fam else "family"
    return SolutionSpace(verdict, final, fam)


# ---------------------------------------------------------------------------
# Concrete problem builders (flat)
# ---------------------------------------------------------------------------

def _flat_mono(qe, pe):
    return FlatElement.monomial(1, (qe,), (pe,))

def _flat_coords(f):
    return dict(f.poly.terms)


def weyl_generators():
    X = WeylElement.x()
    P = WeylElement.p()
    return X, P


def quadratic_extension_problem(bilinear_cap=6):
    """Extend 1, q, p (Schrödinger generators in the Weyl carrier) to the
    quadratics; bracket relations among the quadratics are the bilinear
    stage that pins the central shifts."""
    X, P = weyl_generators()
    one = FlatElement.const(1, S_ONE)
    q = FlatElement.coordinate(1, "q1")
    p = FlatElement.coordinate(1, "p1")
    q2, qp, p2 = _flat_mono(2, 0), _flat_mono(1, 1), _flat_mono(0, 2)
    knowns = [(one, WeylElement.identity()), (q, X), (p, P)]
    targets = [q2, qp, p2]
    schedule = []
    for t in targets:
        for k in (q, p):
            schedule.append(BracketConstraint([(1, k, t)],
                                              "{%s, %s}" % (k, t)))
    for f, g in ((q2, qp), (p2, qp), (q2, p2)):
        schedule.append(BracketConstraint([(1, f, g)], "{%s, %s}" % (f, g)))
    return ExtensionProblem(knowns, targets, WeylCarrier(1, 2), schedule,
                            bracket_flat, _flat_coords, bilinear_cap)


def cubic_extension_problem(bilinear_cap=6):
    """Attempt to extend the degree ≤ 2 rules to the cubics; the bilinear
    stage carries the classical identity (1/9){q³,p³} = (1/3){q²p, qp²}."""
    X, P = weyl_generators()
    one = FlatElement.const(1, S_ONE)
    q = FlatElement.coordinate(1, "q1")
    p = FlatElement.coordinate(1, "p1")
    q2, qp, p2 = _flat_mono(2, 0), _flat_mono(1, 1), _flat_mono(0, 2)
    knowns = [
        (one, WeylElement.identity()), (q, X), (p, P),
        (q2, weyl_product(X, X)), (qp, symmetrized(X, P)),
        (p2, weyl_product(P, P)),
    ]
    q3, q2p, qp2, p3 = _flat_mono(3, 0), _flat_mono(2, 1), _flat_mono(1, 2), _flat_mono(0, 3)
    targets = [q3, q2p, qp2, p3]
    schedule = []
    for t in targets:
        for k in (q, p, qp):
            schedule.append(BracketConstraint([(1, k, t)], "{%s, %s}" % (k, t)))
    schedule.append(BracketConstraint(
        [(fractions.Fraction(1, 9), q3, p3), (fractions.Fraction(-1, 3), q2p, qp2)],
        "(1/9){q^3,p^3} - (1/3){q^2 p, q p^2}"))
    return ExtensionProblem(knowns, targets, WeylCarrier(1, 3), schedule,
                            bracket_flat, _flat_coords, bilinear_cap)


def sphere_equivariance_problem(j):
    """Extend 1, S_i ↦ spin matrices to the raw quadratic monomials under
    rotational equivariance only; the solution is the two-parameter family."""
    q1, q2, q3 = spin_matrices(j)
    dim = q1.dim
    carrier = MatrixCarrier(dim)
    sone = MultiPoly.const(SVARS, S_ONE)
    s = [MultiPoly.var(SVARS, v) for v in SVARS]
    knowns = [(sone, ExactMatrix.identity(dim, carrier.one, carrier.zero)),
              (s[0], q1), (s[1], q2), (s[2], q3)]
    targets = []
    for i in range(3):
        for k in range(i, 3):
            targets.append(s[i] * s[k])
    schedule = []
    for si in s:
        for t in targets:
            schedule.append(BracketConstraint([(1, si, t)], "{%s, %s}" % (si, t)))
    return ExtensionProblem(knowns, targets, carrier, schedule,
                            bracket_raw, lambda m: dict(m.terms))


# ---------------------------------------------------------------------------
# Von Neumann rules, degree by degree
# ---------------------------------------------------------------------------

def _power_op(base, e):
    out = WeylElement.identity()
    for _ in range(e):
        out = weyl_product(out, base)
    return out


def vonneumann_rules_flat(degree):
    """Derived rules Q(q^e) = X^e, Q(p^e) = P^e, and the symmetrized mixed
    rules, for 2 ≤ e ≤ degree, each via a unique linear extension solve."""
    if degree < 2:
        raise ValueError("rule derivation starts at degree 2")
    X, P = weyl_generators()
    one = FlatElement.const(1, S_ONE)
    q = FlatElement.coordinate(1, "q1")
    p = FlatElement.coordinate(1, "p1")

    sol2 = extension_solve(quadratic_extension_problem())
    if sol2.verdict != "unique":
        raise RuntimeError("quadratic extension unexpectedly %s" % sol2.verdict)
    rules = {
        (1, 0): X, (0, 1): P, (0, 0): WeylElement.identity(),
        (2, 0): sol2.operator_for(0), (1, 1): sol2.operator_for(1),
        (0, 2): sol2.operator_for(2),
    }
    records = [{
        "degree": 2,
        "classical": str(_flat_mono(2, 0)) + ", " + str(_flat_mono(1, 1)) +
                     ", " + str(_flat_mono(0, 2)),
        "operator": [str(rules[(2, 0)]), str(rules[(1, 1)]), str(rules[(0, 2)])],
        "verdict": sol2.verdict,
        "matches_closed_form": rules[(2, 0)] == weyl_product(X, X)
            and rules[(1, 1)] == symmetrized(X, P)
            and rules[(0, 2)] == weyl_product(P, P),
    }]

    qp = _flat_mono(1, 1)
    for e in range(3, degree + 1):
        for (qe, pe) in ((e, 0), (e - 1, 1), (1, e - 1), (0, e)):
            target = _flat_mono(qe, pe)
            knowns = [(one, rules[(0, 0)]), (q, X), (p, P), (qp, rules[(1, 1)])]
            for (a, b), op in rules.items():
                if 2 <= a + b < e and (a, b) != (1, 1):
                    knowns.append((_flat_mono(a, b), op))
            schedule = [BracketConstraint([(1, k, target)],
                                          "{%s, %s}" % (k, target))
                        for k in (q, p, qp)]
            prob = ExtensionProblem(knowns, [target], WeylCarrier(1, e),
                                    schedule, bracket_flat, _flat_coords)
            sol = extension_solve(prob)
            if sol.verdict != "unique":
                raise RuntimeError("rule for %s came back %s" % (target, sol.verdict))
            rules[(qe, pe)] = sol.operator_for(0)
        closed = {
            (e, 0): _power_op(X, e),
            (0, e): _power_op(P, e),
            (e - 1, 1): symmetrized(_power_op(X, e - 1), P),
            (1, e - 1): symmetrized(X, _power_op(P, e - 1)),
        }
        records.append({
            "degree": e,
            "classical": ", ".join(str(_flat_mono(a, b)) for (a, b) in closed),
            "operator": [str(rules[k]) for k in closed],
            "verdict": "unique",
            "matches_closed_form": all(rules[k] == v for k, v in closed.items()),
        })
    return {"rules": rules, "records": records}


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

class ObstructionCertificate:
    def __init__(self, name, reference, steps, verdict, discrepancy,
                 assumptions=()):
        self.name = name
        self.reference = reference
        self.steps = steps              # list of dicts
        self.verdict = verdict          # "inconsistent" | "consistent"
        self.discrepancy = discrepancy  # Scalar, str, or None
        self.assumptions = list(assumptions)
        self.convention = CONVENTION

    def to_dict(self):
        return {
            "name": self.name,
            "reference": self.reference,
            "steps": [{k: (str(v) if not isinstance(v, (bool, int, float, str, type(None)))
                           else v) for k, v in s.items()} for s in self.steps],
            "verdict": self.verdict,
            "discrepancy": str(self.discrepancy) if self.discrepancy is not None else None,
            "assumptions": list(self.assumptions),
            "convention": self.convention,
        }

    def __repr__(self):
        return "ObstructionCertificate(%s: %s)" % (self.name, self.verdict)


def anticommutator_certificate():
    """The square/anti-commutator rule collision on quadratics: reducing
    ¼(XP+PX)² and ½(X²P²+P²X²) to normal order leaves different constants."""
    X, P = weyl_generators()
    W = symmetrized(X, P)
    lhs = weyl_product(W, W)
    x2, p2 = weyl_product(X, X), weyl_product(P, P)
    rhs = Scalar.from_rational(1, 2) * (weyl_product(x2, p2) + weyl_product(p2, x2))
    diff = lhs - rhs
    lhs_const = lhs.scalar_part()
    rhs_const = rhs.scalar_part()
    steps = [
        {"classical": "(qp)^2 = q^2 * p^2",
         "quantum_lhs": str(lhs), "quantum_rhs": str(rhs),
         "difference": str(diff)},
        {"classical": "normal-ordered constant of (1/4)(XP+PX)^2",
         "quantum_lhs": str(lhs_const), "quantum_rhs": "-1/4*hbar^2",
         "difference": str(lhs_const + Scalar.from_rational(1, 4) * HBAR * HBAR)},
        {"classical": "normal-ordered constant of (1/2)(X^2 P^2 + P^2 X^2)",
         "quantum_lhs": str(rhs_const), "quantum_rhs": "-hbar^2",
         "difference": str(rhs_const + HBAR * HBAR)},
    ]
    discrepancy = diff.scalar_part()
    verdict = "inconsistent" if diff.is_scalar() and not discrepancy.is_zero() \
        else "consistent"
    return ObstructionCertificate(
        "anticommutator", "Groenewold-Van Hove (flat quadratics)",
        steps, verdict, discrepancy)


def groenewold_certificate():
    """The cubic contradiction: both quantizations of q²p² forced by the
    classical identity (1/9){q³,p³} = (1/3){q²p, qp²} differ by a nonzero
    multiple of the identity."""
    X, P = weyl_generators()
    q3 = FlatElement.monomial(1, (3,), (0,))
    p3 = FlatElement.monomial(1, (0,), (3,))
    q2p = FlatElement.monomial(1, (2,), (1,))
    qp2 = FlatElement.monomial(1, (1,), (2,))
    classical = bracket_flat(q3, p3).scale(Scalar.from_rational(1, 9)) - \
        bracket_flat(q2p, qp2).scale(Scalar.from_rational(1, 3))
    rules = vonneumann_rules_flat(3)["rules"]
    ninth = Scalar.from_rational(1, 9) * I_OVER_HBAR
    third = Scalar.from_rational(1, 3) * I_OVER_HBAR
    route1 = ninth * weyl_commutator(rules[(3, 0)], rules[(0, 3)])
    route2 = third * weyl_commutator(rules[(2, 1)], rules[(1, 2)])
    diff = route1 - route2
    disc = diff.scalar_part()
    h2 = HBAR * HBAR
    norm1 = route1.scalar_part() / h2   # constant in units of ħ²
    norm2 = route2.scalar_part() / h2
    steps = [
        {"classical": "(1/9){q^3,p^3} - (1/3){q^2 p, q p^2} = 0",
         "quantum_lhs": str(classical), "quantum_rhs": "0",
         "difference": str(classical)},
        {"classical": "(1/9)(i/hbar)[Q(q^3), Q(p^3)]",
         "quantum_lhs": str(route1),
         "quantum_rhs": "constant term %s = (%s)*hbar^2" % (route1.scalar_part(), norm1),
         "difference": "normalized constant %s" % norm1},
        {"classical": "(1/3)(i/hbar)[Q(q^2 p), Q(q p^2)]",
         "quantum_lhs": str(route2),
         "quantum_rhs": "constant term %s = (%s)*hbar^2" % (route2.scalar_part(), norm2),
         "difference": "normalized constant %s" % norm2},
        {"classical": "difference of the two quantizations of q^2 p^2",
         "quantum_lhs": str(route1), "quantum_rhs": str(route2),
         "difference": str(diff)},
    ]
    verdict = "inconsistent" if diff.is_scalar() and not disc.is_zero() \
        else "consistent"
    return ObstructionCertificate(
        "groenewold", "Groenewold's theorem (no extension past quadratics)",
        steps, verdict, disc)


def _entrywise_ratio(m, base):
    """λ with m = λ·base, if it exists (exact); None otherwise."""
    lam = None
    for i in range(base.dim):
        for j in range(base.dim):
            b = base.rows[i][j]
            if not b.is_zero():
                lam = m.rows[i][j] / b
                break
        if lam is not None:
            break
    if lam is None:
        return None
    if (m - base.scale(lam)).is_zero():
        return lam
    return None


def sphere_certificate(j):
    """Spin-j no-go: the bracket identities on quadratics force two
    incompatible values of s²; j = 0 is the consistent trivial case."""
    twoj = _twoj(j)
    if twoj == 0:
        third = Scalar.from_rational(1, 3) * S_SPIN * S_SPIN
        steps = [{
            "classical": "Q(f) = f0 (evaluation at the trivial representation)",
            "quantum_lhs": "Q(S_i^2) = (s^2/3) I",
            "quantum_rhs": str(third),
            "difference": "0",
        }]
        return ObstructionCertificate(
            "sphere(j=0)", "spin quantization (trivial case)",
            steps, "consistent", None)

    jj1 = Scalar.from_rational(twoj * (twoj + 2), 4)   # j(j+1)
    a = A_SYM
    s2 = S_SPIN * S_SPIN
    # impose the Casimir consistency  a ħ² j(j+1) + 3c = s²
    const_c = (s2 - a * HBAR * HBAR * jj1) * Scalar.from_rational(1, 3)
    qmap = sphere_map(j, a, const_c)
    s = [MultiPoly.var(SVARS, v) for v in SVARS]
    steps = [{
        "classical": "S.S = s^2 (Casimir), so Q(S.S) = s^2 I fixes c",
        "quantum_lhs": "a*hbar^2*j(j+1) + 3c",
        "quantum_rhs": str(s2),
        "difference": "c = %s" % const_c,
    }]
    assumptions = ["a != 0 and c != 0 (nontriviality input)",
                   "s > 0 (sphere radius)"]

    def Q(poly):
        return qmap(poly)

    def ih(mat):
        return mat.scale(Radical.from_scalar(I_OVER_HBAR))

    # identity 1:  {S1²−S2², S1S2} − {S2S3, S3S1} = −(S.S)·S3 ≡ −s² S3
    lhs_cl = bracket_raw(s[0] * s[0] - s[1] * s[1], s[0] * s[1]) - \
        bracket_raw(s[1] * s[2], s[2] * s[0])
    expect_cl = -(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) * s[2]
    cl_ok = (lhs_cl - expect_cl).is_zero()
    canon = sphere_canonicalize(lhs_cl)
    canon_expected = SphereElement.canonicalize(s[2]).scale(-s2)
    m1 = ih(Q(s[0] * s[0]).commutator(Q(s[0] * s[1]))) - \
        ih(Q(s[1] * s[1]).commutator(Q(s[0] * s[1]))) - \
        ih(Q(s[1] * s[2]).commutator(Q(s[2] * s[0])))
    q3mat = Q(s[2])
    lam1 = _entrywise_ratio(m1, q3mat)
    if lam1 is None or not lam1.is_rational_part_only():
        raise RuntimeError("quantized identity 1 is not a multiple of Q(S3)")
    lam1 = lam1.scalar_part()
    # (Q1) demands λ₁·Q(S3) = Q(−s² S3), i.e. s² = −λ₁
    s2_value_1 = -lam1
    target1 = a * a * HBAR * HBAR * (jj1 - Scalar.from_rational(3, 4))
    steps.append({
        "classical": "{S1^2-S2^2, S1 S2} - {S2 S3, S3 S1} = -(S.S) S3 "
                     "(exact: %s; canonical class -s^2 S3: %s)"
                     % (cl_ok, canon == canon_expected),
        "quantum_lhs": "(i/hbar)([Q(S1^2)-Q(S2^2), Q(S1 S2)] - [Q(S2 S3), Q(S3 S1)])"
                       " = (%s) Q(S3)" % lam1,
        "quantum_rhs": "Q(-s^2 S3) = -s^2 Q(S3)",
        "difference": "s^2 = %s (target a^2 hbar^2 (j(j+1) - 3/4) = %s)"
                      % (s2_value_1, target1),
    })
    if not (s2_value_1 - target1).is_zero():
        raise RuntimeError("identity 1 derived %s, expected %s"
                           % (s2_value_1, target1))

    if twoj == 1:
        # s² = a²ħ²(3/4 − 3/4) = 0 contradicts s > 0
        steps.append({
            "classical": "j = 1/2: j(j+1) - 3/4 = 0",
            "quantum_lhs": "s^2 = %s" % s2_value_1,
            "quantum_rhs": "s > 0",
            "difference": "s^2 = 0 vs s > 0",
        })
        return ObstructionCertificate(
            "sphere(j=1/2)", "spin quantization no-go",
            steps, "inconsistent", "s^2 = 0 vs s > 0", assumptions)

    # identity 2:  {S2², {S1S2, S1S3}} − (3/4){S1², {S1², S2S3}} = 2 s² S2S3
    inner1 = bracket_raw(s[0] * s[1], s[0] * s[2])
    inner2 = bracket_raw(s[0] * s[0], s[1] * s[2])
    lhs2_cl = bracket_raw(s[1] * s[1], inner1) - \
        bracket_raw(s[0] * s[0], inner2).scale(Scalar.from_rational(3, 4))
    canon2 = sphere_canonicalize(lhs2_cl)
    canon2_expected = SphereElement.canonicalize(s[1] * s[2]).scale(
        Scalar.from_rational(2) * s2)
    cl2_ok = canon2 == canon2_expected
    q_inner1 = ih(Q(s[0] * s[1]).commutator(Q(s[0] * s[2])))
    q_inner2 = ih(Q(s[0] * s[0]).commutator(Q(s[1] * s[2])))
    m2 = ih(Q(s[1] * s[1]).commutator(q_inner1)) - \
        ih(Q(s[0] * s[0]).commutator(q_inner2)).scale(
            Radical.from_scalar(Scalar.from_rational(3, 4)))
    base2 = Q(s[1] * s[2])          # equals (a/2)(Q2Q3 + Q3Q2)
    lam2 = _entrywise_ratio(m2, base2)
    if lam2 is None or not lam2.is_rational_part_only():
        raise RuntimeError("quantized identity 2 is not a multiple of Q(S2 S3)")
    lam2 = lam2.scalar_part()
    # (Q1) twice demands λ₂·Q(S2S3) = Q(2 s² S2S3), i.e. s² = λ₂/2
    s2_value_2 = lam2 * Scalar.from_rational(1, 2)
    target2 = a * a * HBAR * HBAR * (jj1 - Scalar.from_rational(9, 4))
    steps.append({
        "classical": "{S2^2,{S1 S2, S1 S3}} - (3/4){S1^2,{S1^2, S2 S3}} = "
                     "2 s^2 S2 S3 as canonical classes (%s)" % cl2_ok,
        "quantum_lhs": "nested (i/hbar)-commutators = (%s) Q(S2 S3)" % lam2,
        "quantum_rhs": "Q(2 s^2 S2 S3) = 2 s^2 Q(S2 S3)",
        "difference": "s^2 = %s (target a^2 hbar^2 (j(j+1) - 9/4) = %s)"
                      % (s2_value_2, target2),
    })
    if not (s2_value_2 - target2).is_zero():
        raise RuntimeError("identity 2 derived %s, expected %s"
                           % (s2_value_2, target2))

    gap = s2_value_1 - s2_value_2
    steps.append({
        "classical": "both identities must give the same s^2",
        "quantum_lhs": str(s2_value_1),
        "quantum_rhs": str(s2_value_2),
        "difference": str(gap),
    })
    verdict = "inconsistent" if not gap.is_zero() else "consistent"
    return ObstructionCertificate(
        "sphere(j=%s)" % (j,), "spin quantization no-go",
        steps, verdict, gap, assumptions)


def _twoj(j):
    if isinstance(j, fractions.Fraction):
        t = 2 * j
        if t.denominator != 1 or t < 0:
            raise ValueError("invalid spin label %s" % j)
        return t.numerator
    if isinstance(j, int):
        if j < 0:
            raise ValueError("invalid spin label %s" % j)
        return 2 * j
    if isinstance(j, float):
        t = round(2 * j)
        if abs(2 * j - t) > 1e-12 or t < 0:
            raise ValueError("invalid spin label %r" % j)
        return t
    raise TypeError("invalid spin label %r" % (j,))


def diffop_commutant_1d(gens, order_cap, coeff_degree_cap, varname="q1"):
    """Basis of operators Σ c_{k,m} q^m ∂^k (k ≤ order cap, m ≤ degree cap)
    commuting with every generator; exact nullspace computation."""
    vars1 = (varname,)
    atoms = [(k, m) for k in range(order_cap + 1)
             for m in range(coeff_degree_cap + 1)]

    def atom_op(k, m):
        coef = MultiPoly.monomial(vars1, (m,), S_ONE)
        return DiffOp(vars1, {(k,): coef})

    rows_by_key = {}
    for gi, g in enumerate(gens):
        for ai, (k, m) in enumerate(atoms):
            comm = diffop_commutator(atom_op(k, m), g)
            for alpha, coef in comm.terms.items():
                for e, c in coef.terms.items():
                    key = (gi, alpha, e)
                    if key not in rows_by_key:
                        rows_by_key[key] = [S_ZERO] * len(atoms)
                    rows_by_key[key][ai] = rows_by_key[key][ai] + c
    rows = [rows_by_key[k] for k in sorted(rows_by_key, key=repr)]
    vecs = nullspace(rows, len(atoms), S_ONE, S_ZERO)
    basis = []
    for v in vecs:
        op = DiffOp.zero(vars1)
        for ai, (k, m) in enumerate(atoms):
            if not v[ai].is_zero():
                op = op + atom_op(k, m).scale(v[ai])
        basis.append(op)
    return basis


def position_nonextension_certificate():
    """The position representation cannot reach p²: T in Q(p²) = (−iħ∂)² + T
    must be scalar (trivial commutant), the identity 2p² = {p², qp} pins
    T = 0, and the resulting quadratic rules collide with the cubic
    contradiction."""
    vars1 = ("q1",)
    q_op = DiffOp.multiplication(MultiPoly.var(vars1, "q1"))
    p_op = DiffOp.partial_op(vars1, "q1").scale(-(S_I * HBAR))
    comm_basis = diffop_commutant_1d([q_op, p_op], 3, 3)
    commutant_scalar = len(comm_basis) == 1 and \
        comm_basis[0].order() == 0 and \
        all(sum(e) == 0 for c in comm_basis[0].terms.values() for e in c.terms)
    steps = [{
        "classical": "commutant of {q, -i hbar d/dq} within order <= 3, "
                     "coefficient degree <= 3",
        "quantum_lhs": "dimension %d" % len(comm_basis),
        "quantum_rhs": "scalars only",
        "difference": "trivial: %s" % commutant_scalar,
    }]
    # T scalar: Q(p²) = −ħ²∂² + τ; the identity 2p² = {p², qp} forces τ = 0
    from .qmaps import position_map
    qp = FlatElement.monomial(1, (1,), (1,))
    w_qp = position_map(qp)
    p2_main = DiffOp(vars1, {(2,): MultiPoly.const(vars1, -(HBAR * HBAR))})
    # residual of  2(−ħ²∂² + τ) − (i/ħ)[−ħ²∂² + τ, Q(qp)]  must vanish
    lhs_op = p2_main.scale(Scalar.from_rational(2))
    rhs_op = diffop_commutator(p2_main, w_qp).scale(I_OVER_HBAR)
    resid_noT = lhs_op - rhs_op
    # τ enters as 2τ − (i/ħ)[τI, Q(qp)] = 2τ ⇒ τ = −(residual without T)/2
    tau_coeff = Scalar.from_rational(2)
    ident_coef = resid_noT.coeff((0,))
    tau = None
    if resid_noT.is_zero():
        tau = S_ZERO
    elif resid_noT.order() == 0 and all(sum(e) == 0 for e in ident_coef.terms):
        tau = -(ident_coef.constant_term()) / tau_coeff
    steps.append({
        "classical": "2 p^2 = {p^2, qp}",
        "quantum_lhs": "2(-hbar^2 d^2/dq^2 + T) vs (i/hbar)[-hbar^2 d^2/dq^2 + T, Q(qp)]",
        "quantum_rhs": "forces T = %s" % tau,
        "difference": str(resid_noT),
    })
    chained = groenewold_certificate()
    steps.append({
        "classical": "with T = 0 the quadratic rules are the symmetrized ones; "
                     "extending past them reruns the cubic contradiction",
        "quantum_lhs": "chained certificate: %s" % chained.name,
        "quantum_rhs": chained.verdict,
        "difference": str(chained.discrepancy),
    })
    verdict = "inconsistent" if (commutant_scalar and tau is not None
                                 and tau.is_zero()
                                 and chained.verdict == "inconsistent") \
        else "consistent"
    return ObstructionCertificate(
        "position_nonextension", "Van Hove restriction (position representation)",
        steps, verdict, chained.discrepancy)


def strong_nogo_record():
    """Corollary record: uniqueness of the quadratic extension plus the cubic
    contradiction; no new computation beyond those two results."""
    sol = extension_solve(quadratic_extension_problem())
    cert = groenewold_certificate()
    steps = [
        {"classical": "extension of the Schrödinger generators to quadratics",
         "quantum_lhs": "verdict %s" % sol.verdict,
         "quantum_rhs": "unique (symmetrized quadratics)",
         "difference": "parameters remaining: %d" % sol.parameters},
        {"classical": "extension beyond the quadratics",
         "quantum_lhs": "verdict %s" % cert.verdict,
         "quantum_rhs": "inconsistent",
         "difference": str(cert.discrepancy)},
    ]
    verdict = "inconsistent" if sol.verdict == "unique" and \
        cert.verdict == "inconsistent" else "consistent"
    return ObstructionCertificate(
        "strong_nogo", "strong no-go corollary (uniqueness + cubic obstruction)",
        steps, verdict, cert.discrepancy)


def torus_transform_identities(k, trunc=64, hbar=None, quad_order=None):
    """Interior-block errors of A₋A₊ = I + 4π²k²x² and
    B₋B₊ = I − 4π²ħ²k² d²/dx² in the truncated Hermite basis.

    The right-hand sides are built from independent band matrices (the
    multiply-by-x tridiagonal and the derivative band) at size N+1 so the
    product picks up the correct one-step coupling before cropping.  The
    A-side product is composed at the symbol level before truncation: A± are
    multiplications by linearly growing symbols, so the product of their
    truncations converges far too slowly in N, while their composite is
    again a single multiplication with exact matrix elements.  The B-side
    uses genuine truncated matrix products (shift/derivative tails decay
    fast enough)."""
    import math

    import numpy as np

    from .hermite import derivative_band, hermite_matrix, position_tridiagonal
    from .qmaps import (DEFAULT_TORUS_HBAR, torus_transformed_ops,
                        transformed_harmonic_op)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if trunc < 4:
        raise ValueError("truncation too small")
    if hbar is None:
        hbar = DEFAULT_TORUS_HBAR
    N = trunc
    M = N // 2
    mats = torus_transformed_ops(k, N, hbar, quad_order)
    b_plus, b_minus = mats[2], mats[3]
    w = 2.0 * math.pi * k
    eye = np.eye(N)
    xe = position_tridiagonal(N + 1)
    rhs_a = eye + (w * w) * (xe @ xe)[:N, :N]
    de = derivative_band(N + 1)
    rhs_b = eye - (w * hbar) ** 2 * (de @ de)[:N, :N]
    composite_a = transformed_harmonic_op(-k, 0, hbar) @ \
        transformed_harmonic_op(k, 0, hbar)
    mat_a = hermite_matrix(composite_a, N, quad_order)
    err_a = float(np.max(np.abs(mat_a.entries[:M, :M] - rhs_a[:M, :M])))
    err_b = float(np.max(np.abs(
        (b_minus @ b_plus).entries[:M, :M] - rhs_b[:M, :M])))
    return {
        "k": k, "trunc": N, "hbar": hbar,
        "quad_order": mat_a.provenance.get("quad_order"),
        "interior": M,
        "error_a_identity": err_a,
        "error_b_identity": err_b,
    }


def torus_irreducibility(k, trunc=64, tol=1e-6, hbar=None, quad_order=None):
    """Numeric commutant-kernel estimate for the transformed torus operators."""
    from .hermite import commutant_kernel_dim
    from .qmaps import DEFAULT_TORUS_HBAR, torus_transformed_ops
    if k < 1:
        raise ValueError("k must be a positive integer")
    if trunc < 32:
        raise ValueError("truncation must be at least 32")
    if hbar is None:
        hbar = DEFAULT_TORUS_HBAR
    mats = torus_transformed_ops(k, trunc, hbar, quad_order)
    kdim, tail = commutant_kernel_dim(mats, tol)
    gap = None
    if len(tail) >= 2:
        below = [t for t in tail if t < tol]
        above = [t for t in tail if t >= tol]
        if below and above:
            gap = min(above) / max(max(below), 1e-300)
    return {
        "k": k,
        "trunc": trunc,
        "tol": tol,
        "hbar": hbar,
        "quad_order": mats[0].provenance.get("quad_order"),
        "commutant_dim_estimate": kdim,
        "singular_tail": tail,
        "singular_gap": gap,
        "verdict": "irreducible (numeric)" if kdim == 1 else
                   "not established (kernel dim %d)" % kdim,
    }
