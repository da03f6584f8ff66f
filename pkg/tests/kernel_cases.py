"""Seeded random cases for the algebra kernel and the properties checked on
them.  Each ``prop_*`` function returns None on success or a short string
describing the first failure."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from nclift.abgroup import coordinate_group, enumerate_group
from nclift.exact import CycScalar, Phase
from nclift.twistalg import (
    CleftFactorSystem,
    CrossedProduct,
    Element,
    Grading,
    MonomialAlgebraSpec,
    MonomialAut,
    check_cleft_factor_system,
    check_matrix_factor_system,
    graded_component,
    group_algebra,
    star,
)

from oracles import rewrite_product

DENOMS = (1, 2, 3, 4, 6, 12)


def random_phase(rng, denoms=DENOMS):
    d = rng.choice(denoms)
    return Fraction(rng.randrange(d), d)


def random_algebra(rng):
    """A quantum torus on Z^n (n <= 3), or a two-step algebra on Z^3 whose
    third generator is central and absorbs a commutator correction."""
    if rng.random() < 0.7:
        n = rng.randint(1, 3)
        th = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            for l in range(k):
                t = random_phase(rng)
                th[k][l], th[l][k] = t, -t
        return MonomialAlgebraSpec(coordinate_group([0] * n), th), {}
    t = random_phase(rng)
    th = [[0, -t, 0], [t, 0, 0], [0, 0, 0]]
    corr = {(1, 0): (0, 0, rng.choice([-2, -1, 1, 2]))}
    return MonomialAlgebraSpec(coordinate_group([0, 0, 0]), th, corr), corr


def random_exp(rng, n, r=3):
    return tuple(rng.randint(-r, r) for _ in range(n))


def random_scalar(rng):
    c = CycScalar.root(Phase(random_phase(rng)))
    return c * rng.choice([1, 1, 2, -1])


def random_element(rng, alg, terms=3):
    n = alg.E.rank
    return Element(alg, {random_exp(rng, n, 2): random_scalar(rng) for _ in range(rng.randint(1, terms))})


# ---------------------------------------------------------------------------
# properties


def prop_product_matches_rewriting(rng):
    alg, corr = random_algebra(rng)
    n = alg.E.rank
    th = [[p.value for p in row] for row in alg.theta]
    for _ in range(4):
        a, b = random_exp(rng, n), random_exp(rng, n)
        ph, e = alg.unit_product(a, b)
        ref = rewrite_product(th, corr, a, b)
        if (ph.value, tuple(e)) != ref:
            return f"u^{a} u^{b}: {ph}, {e} vs {ref}"
    return None


def prop_associative(rng):
    alg, _ = random_algebra(rng)
    x, y, z = (random_element(rng, alg) for _ in range(3))
    if (x * y) * z != x * (y * z):
        return f"(xy)z != x(yz) for {x}, {y}, {z}"
    return None


def prop_star_axioms(rng):
    alg, _ = random_algebra(rng)
    x, y = random_element(rng, alg), random_element(rng, alg)
    c = random_scalar(rng)
    if star(star(x)) != x:
        return "x** != x"
    if star(x * y) != star(y) * star(x):
        return "(xy)* != y* x*"
    if star(x + y) != star(x) + star(y):
        return "(x + y)* != x* + y*"
    if star(x * c) != star(x) * c.conj():
        return "(c x)* != conj(c) x*"
    m = Element.monomial(alg, random_exp(rng, alg.E.rank))
    if m * star(m) != alg.one() or star(m) * m != alg.one():
        return "monomial is not unitary"
    return None


def prop_graded_multiplication(rng):
    """deg(u^a u^b) = deg(u^a) + deg(u^b) for the grading by exponents
    modulo central corrections, and components of a product are sums of
    products of components."""
    alg, corr = random_algebra(rng)
    n = alg.E.rank
    # forget the central coordinate of two-step algebras, keep everything otherwise
    if corr:
        G = Grading(alg, coordinate_group([0, 0]), [[1, 0], [0, 1], [0, 0]])
    else:
        k = rng.randint(1, n)
        rows = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(n)]
        G = Grading(alg, coordinate_group([0] * k), rows)
    if not G.is_multiplicative():
        return "grading is not multiplicative"
    x, y = random_element(rng, alg), random_element(rng, alg)
    xy = x * y
    degs_x = {tuple(G.degree(a).coords) for a in x.terms}
    degs_y = {tuple(G.degree(a).coords) for a in y.terms}
    for lam in {tuple(G.degree(a).coords) for a in xy.terms} | {
            tuple(p + q for p, q in zip(s, t)) for s in degs_x for t in degs_y}:
        acc = alg.zero()
        for mu in degs_x:
            nu = tuple(p - q for p, q in zip(lam, mu))
            if nu in degs_y:
                acc = acc + graded_component(x, G, mu) * graded_component(y, G, nu)
        if graded_component(xy, G, lam) != acc:
            return f"component {lam} of a product"
    return None


# ---------------------------------------------------------------------------
# cleft factor systems over C[Z/m] graded by Z/n


def random_factor_system(rng, perturb=None):
    """(fs, kind): a cleft system on Lambda = Z/n over B = C[Z/m] obtained
    by conjugating the trivial system with a random unit family, then
    optionally broken in omega or in gamma.  ``kind`` says what was broken
    (None for an intact system)."""
    n = rng.choice([2, 3])
    m = rng.choice([2, 3])
    L = coordinate_group([n])
    B = group_algebra(coordinate_group([m]))
    g = math.gcd(n, m)
    p = Fraction(rng.randrange(g), g)
    shifts = {s: s * p for s in range(n)}
    v = {0: B.one_unit()}
    for s in range(1, n):
        v[s] = (Phase(random_phase(rng)), (rng.randrange(m),))
    om = {}
    for s in range(n):
        for t in range(n):
            a = B.mul_units(v[s], MonomialAut(B, shifts=[shifts[s]], check=False).apply_unit(v[t]))
            om[(s, t)] = B.mul_units(a, B.inv_unit(v[(s + t) % n]))
    if perturb is None:
        perturb = rng.random() < 0.5
    kind = None
    if perturb:
        kind = rng.choice(["omega-phase", "omega-exponent", "gamma"])
        if kind == "gamma":
            s = rng.randrange(1, n)
            shifts[s] = shifts[s] + Fraction(1, m)
        else:
            s, t = rng.randrange(1, n), rng.randrange(1, n)
            ph, e = om[(s, t)]
            if kind == "omega-phase":
                om[(s, t)] = (ph + Phase(Fraction(1, rng.choice([2, 3, 4]))), e)
            else:
                om[(s, t)] = (ph, ((e[0] + 1) % m,))
    gammas = {s: MonomialAut(B, shifts=[shifts[s]], check=False) for s in range(n)}
    fs = CleftFactorSystem(L, B, lambda s: gammas[s.coords[0]],
                           lambda s, t: om[(s.coords[0], t.coords[0])], label=f"Z/{n} over C[Z/{m}]")
    return fs, kind


def is_associative(alg) -> bool:
    els = [tuple(x.coords) for x in enumerate_group(alg.E)]
    return alg.check_associative(itertools.product(els, els, els)) is None


def prop_factor_checker_iff_associative(rng):
    fs, kind = random_factor_system(rng)
    ok = bool(check_cleft_factor_system(fs))
    assoc = is_associative(CrossedProduct(fs))
    if ok != assoc:
        return f"checker says {ok}, associativity says {assoc} ({fs.label}, broken: {kind})"
    return None


def prop_matrix_checker_agrees(rng):
    fs, kind = random_factor_system(rng)
    a = bool(check_cleft_factor_system(fs))
    b = bool(check_matrix_factor_system(fs.to_matrix()))
    if a != b:
        return f"cleft {a} vs matrix {b} ({fs.label}, broken: {kind})"
    return None


PROPERTIES = {
    "product vs rewriting": prop_product_matches_rewriting,
    "associativity": prop_associative,
    "star axioms": prop_star_axioms,
    "graded multiplication": prop_graded_multiplication,
    "factor-system checker iff associativity": prop_factor_checker_iff_associative,
}


def run_property(name, cases, seed):
    rng = random.Random(f"{seed}:{name}")
    fails = []
    for i in range(cases):
        msg = PROPERTIES[name](rng)
        if msg:
            fails.append((i, msg))
    return fails
