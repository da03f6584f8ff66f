"""Shared lifting scenarios: the lattice battery, finite toy structures for
the twist/equivalence roundtrip and the exhaustive Z/2 -> Z/4 -> Z/2 lift
family."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from nclift.abgroup import ExtensionSeq, GroupHom, coordinate_group, enumerate_group
from nclift.cohomology import DIV, Cochain, differential, is_coboundary
from nclift.exact import NoSolution, Phase, det
from nclift.lifting import (
    LiftCandidate,
    classify,
    delta_obstruction,
    equivalence_test,
    qtorus_lift_solve,
    toy_structure,
    twist,
    v_family_check,
)
from nclift.twistalg import group_algebra

from oracles import invariant_factors

# ---------------------------------------------------------------------------
# lattice lifts of quantum tori


def lattice_battery(seed=0, count=30):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([1, 2, 2, 3, 3])
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if det(M) == 0:
            continue
        theta = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            for l in range(k + 1, n):
                q = rng.randint(1, 12)
                theta[k][l] = Fraction(rng.randrange(q), q)
                theta[l][k] = -theta[k][l]
        out.append((theta, M))
    return out


def skew_index_oracle(M):
    """Index of Y -> M Y M^T in the skew integer lattice, from determinantal
    divisors of its matrix on the basis E_kl - E_lk."""
    n = len(M)
    pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
    if not pairs:
        return 1
    W = [[M[i][k] * M[j][l] - M[i][l] * M[j][k] for (k, l) in pairs] for (i, j) in pairs]
    out = 1
    for d in invariant_factors(W):
        out *= d
    return out


def _full(s, n):
    return [[s[i][j] if i < j else (-s[j][i] if i > j else Fraction(0)) for j in range(n)] for i in range(n)]


def _congruent(M, tp, theta):
    """M tp M^T - theta is an integer matrix, checked over a common
    denominator so that the products stay in the integers."""
    n = len(M)
    D = math.lcm(*(Fraction(v).denominator for row in list(tp) + list(theta) for v in row))
    T = [[int(Fraction(v) * D) for v in row] for row in tp]
    R = [[sum(M[i][a] * T[a][b] * M[j][b] for a in range(n) for b in range(n)) for j in range(n)]
         for i in range(n)]
    return all((R[i][j] - Fraction(theta[i][j]) * D) % D == 0 for i in range(n) for j in range(n))


def check_lattice_case(theta, M):
    """(ok, detail) for one (theta, M) pair."""
    n = len(M)
    sol = qtorus_lift_solve(theta, M)
    full = [_full(s, n) for s in sol.solutions]
    for tp in full:
        if not _congruent(M, tp, theta):
            return False, f"M theta' M^T differs from theta for {tp}"
    idx = skew_index_oracle(M)
    if sol.count != idx:
        return False, f"count {sol.count} but index {idx}"
    # a - b is an integer matrix exactly when a and b have the same entries
    # modulo 1, so distinct keys mean pairwise inequivalent representatives
    keys = {tuple(v % 1 for row in tp for v in row) for tp in full}
    if len(keys) != len(full):
        return False, "two representatives differ by an integer matrix"
    return True, f"{sol.count} classes"


def brute_force_lifts_2d(theta12, M):
    """All theta'_12 in [0, 1) with det(M) theta'_12 = theta_12 mod 1, found
    by scanning the grid (1 / (det^2 den)) Z."""
    d = det(M)
    den = Fraction(theta12).denominator * d * d
    return sorted(Fraction(k, abs(den)) for k in range(abs(den))
                  if (d * Fraction(k, abs(den)) - Fraction(theta12)).denominator == 1)


# ---------------------------------------------------------------------------
# finite toy structures


def extension(gs, gh, inc, zs, proj):
    Gs, Gh, Zs = coordinate_group(gs), coordinate_group(gh), coordinate_group(zs)
    return ExtensionSeq(GroupHom(Gs, Gh, inc), GroupHom(Gh, Zs, proj))


SCALARS = group_algebra(coordinate_group([]))
C_Z2 = group_algebra(coordinate_group([2]), names=["b"])


def finite_toys():
    """(name, extension, base) for toys with finite Zstar of order <= 8."""
    klein = lambda: extension([2], [2, 2, 2], [[1], [0], [0]], [2, 2], [[0, 1, 0], [0, 0, 1]])
    return [
        ("Z/2 x Z/2, scalars", klein(), SCALARS),
        ("Z/2 x Z/2 over C[Z/2]", klein(), C_Z2),
        ("Z/4 over C[Z/2]", extension([2], [2, 4], [[1], [0]], [4], [[0, 1]]), C_Z2),
        ("(Z/2)^3, scalars", extension([], [2, 2, 2], [[], [], []], [2, 2, 2],
                                       [[1, 0, 0], [0, 1, 0], [0, 0, 1]]), SCALARS),
        ("Z/8 over Z/2", extension([2], [2, 8], [[1], [0]], [8], [[0, 1]]), SCALARS),
    ]


def omega_generating_set(report):
    """Class representatives plus coboundaries of the elementary 1-cochains
    and one mixed sum: a generating set of Z^2 for the unit module."""
    um = report.units
    M = um.module
    oms = list(report.group.representatives)
    Z = um.S.Zstar
    els = enumerate_group(Z)
    for i in range(1, len(els)):
        for t in range(M.rank):
            val = [0] * M.rank
            val[t] = Fraction(1, 2) if M.moduli[t] == DIV else 1
            oms.append(differential(Cochain(M, 1, {(i,): val})))
    if report.group.representatives:
        oms.append(oms[0] + oms[-1])
    return oms


def roundtrip_case(ext, base):
    """(agree, total, pairs): equivalence_test(S, twist(S, omega)) against
    is_coboundary(omega) over a generating set, and the number of pairwise
    inequivalence checks made by classify."""
    P, S = toy_structure(base, ext)
    report = classify(P, S)
    um = report.units
    agree = total = 0
    for om in omega_generating_set(report):
        eq = equivalence_test(S, twist(S, om, um), um).equivalent
        cob = not isinstance(is_coboundary(om), NoSolution)
        agree += eq == cob
        total += 1
    return agree, total, report.checked_pairs, report


# ---------------------------------------------------------------------------
# Z/2 -> Z/4 -> Z/2 action lifts


def z4_structure(base=SCALARS):
    return toy_structure(base, extension([2], [4], [[2]], [2], [[1]]))


def z4_candidates(S, denominators=8):
    """Every family (v_0(1), v_1(1)) of units e(k/d) t^x, extended to Ghat =
    Z/4 by Z-equivariance v_{g + 2}(chi) = chi(1) v_g(chi)."""
    A = S.problem.algebra
    units = [(Phase(Fraction(k, denominators)), e)
             for k in range(denominators)
             for e in ([tuple(x.coords) for x in enumerate_group(A.E)] if A.E.rank else [()])]
    for v0, v1 in itertools.product(units, units):
        v = {}
        for rep, val in ((0, v0), (1, v1)):
            for z in range(2):
                v[((rep + 2 * z) % 4,), (1,)] = (val[0] + Phase(Fraction(z, 2)), val[1])
        yield (v0, v1), LiftCandidate(S, v)


def obstruction_battery(base=SCALARS):
    """(valid, homomorphic, verdicts, corrected_ok): exhaustive enumeration
    of candidates, the number that are honest lifts, how many are already
    homomorphic, the set of delta verdicts and whether every corrected
    lift passed v_family_check."""
    P, S = z4_structure(base)
    valid = []
    for key, cand in z4_candidates(S):
        if not cand.conditions():
            valid.append((key, cand))
    homomorphic = sum(1 for _, c in valid if v_family_check(c))
    verdicts = {}
    corrected_ok = True
    for key, cand in valid:
        rep = delta_obstruction(cand)
        verdicts[key] = rep.trivial
        if rep.trivial and not v_family_check(rep.corrected):
            corrected_ok = False
    return valid, homomorphic, verdicts, corrected_ok
