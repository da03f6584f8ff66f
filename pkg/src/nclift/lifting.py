"""Lifting graded monomial algebras along central extensions.

The input is a Gstar-graded algebra A together with an exact sequence
0 -> Gstar -> Ghatstar -> Zstar -> 0 of discrete groups.  A structure is a
Ghatstar-graded algebra Ahat whose Gstar-part is identified with A through
an exponent embedding (plus a phase correction when the two normal-ordering
cocycles differ by a coboundary).  The Zstar-components Ahat(chi) are the
sums of the Ghatstar-components over the coset of chi.

On top of this the module offers: the central-unit coefficient module with
its conjugation action, twisting by 2-cocycles, equivalence testing through
the comparison cocycle, classification, gauge transformations, and for
finite groups the delta obstruction of a family of lifted automorphisms.

Conventions: the central units are acted on by Delta_chi(a) = s(chi) a s(chi)^{-1}
(the action for which gauge transformations x -> c(chi) x are exactly the
crossed homomorphisms c(chi + chi') = c(chi) Delta_chi(c(chi'))).  The
``frohlich`` function of ``twistalg`` reports the inverse, s^{-1} a s.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .abgroup import (
    ExtensionSeq,
    FgAbelianGroup,
    FiniteModel,
    GroupElement,
    GroupHom,
    coordinate_group,
    enumerate_group,
    extension_from_lattice,
    pair,
)
from .cohomology import (
    DIV,
    CoeffModule,
    Cochain,
    CohomologyGroup,
    cocycle_defect,
    cohomology_group,
    crossed_homs,
    h2_structural,
    is_coboundary,
)
from .exact import (
    InputError,
    NoSolution,
    Phase,
    SizeError,
    Unsupported,
    det,
    format_rat,
    snf,
    solve_mixed,
    transpose,
)
from .twistalg import (
    ONE,
    CentralUnits,
    CocycleTwist,
    Element,
    FrohlichMap,
    Grading,
    MonomialAlgebra,
    MonomialAlgebraSpec,
    conjugation_action,
    heisenberg,
    laurent,
    qtorus,
    strong_grading_check,
)

__all__ = [
    "Embedding",
    "LiftProblem",
    "GStructure",
    "UnitModule",
    "unit_module",
    "restriction_check",
    "qtorus_lift_solve",
    "qtorus_lift_structure",
    "toy_structure",
    "heisenberg_structure",
    "torus3_structure",
    "twist",
    "equivalence_test",
    "classify",
    "gauge_group",
    "apply_gauge",
    "LiftCandidate",
    "VFamily",
    "v_family_check",
    "delta_obstruction",
    "freeness_check",
    "picard_data",
]


# ---------------------------------------------------------------------------
# problems and structures


class Embedding:
    """u^a -> e(lambda(a)) u^{J a} with lambda(a) = sum_{k>l} Q_kl a_k a_l
    + sum_k Q_kk a_k (a_k - 1) / 2."""

    def __init__(self, hom: GroupHom, phase_form=None):
        self.hom = hom
        n = hom.source.rank
        self.Q = [[Fraction(v) for v in row] for row in phase_form] if phase_form else None
        if self.Q is not None and (len(self.Q) != n or any(len(r) != n for r in self.Q)):
            raise InputError("phase form has the wrong shape")

    def phase(self, a) -> Phase:
        if self.Q is None:
            return ONE
        t = Fraction(0)
        for k in range(len(a)):
            if a[k]:
                t += self.Q[k][k] * a[k] * (a[k] - 1) / 2
                for l in range(k):
                    t += self.Q[k][l] * a[k] * a[l]
        return Phase(t)

    def apply_unit(self, x) -> tuple:
        p, a = x
        return (Phase(p) + self.phase(a), tuple(self.hom(self.hom.source(list(a))).coords))

    def pull(self, x) -> tuple:
        """Inverse on the image; raises InputError outside it."""
        p, e = x
        pre = self.hom.preimage(self.hom.target(list(e)))
        if pre is None:
            raise InputError(f"exponent {list(e)} is not in the image of the embedding")
        a = tuple(pre.coords)
        return (Phase(p) - self.phase(a), a)

    def to_json(self):
        out = {"matrix": self.hom.matrix}
        if self.Q is not None:
            out["phase_form"] = [[format_rat(v) for v in row] for row in self.Q]
        return out


class LiftProblem:
    """A Gstar-graded algebra and the extension it should be lifted along."""

    def __init__(self, algebra: MonomialAlgebra, grading: Grading, ext: ExtensionSeq, name: str = ""):
        if grading.algebra is not algebra:
            raise InputError("grading belongs to a different algebra")
        if grading.group.invariants != ext.Gstar.invariants:
            raise InputError("grading group differs from the kernel of the extension")
        self.algebra = algebra
        self.grading = grading
        self.ext = ext
        self.name = name

    def __repr__(self):
        return f"LiftProblem({self.name or self.algebra!r}, {self.ext!r})"


class GStructure:
    """A Ghatstar-graded algebra with an embedding of the problem algebra."""

    def __init__(self, problem: LiftProblem, algebra: MonomialAlgebra, grading: Grading, embedding: Embedding,
                 name: str = ""):
        if grading.algebra is not algebra:
            raise InputError("grading belongs to a different algebra")
        if grading.group.invariants != problem.ext.Ghatstar.invariants:
            raise InputError("grading group differs from the middle term of the extension")
        if embedding.hom.source.invariants != problem.algebra.E.invariants or \
                embedding.hom.target.invariants != algebra.E.invariants:
            raise InputError("embedding does not connect the exponent groups")
        self.problem = problem
        self.algebra = algebra
        self.grading = grading
        self.embedding = embedding
        self.name = name
        ext = problem.ext
        zhom = GroupHom(ext.Ghatstar, ext.Zstar, ext.proj.matrix, check=False).compose(grading.hom)
        self.zgrading = Grading(algebra, ext.Zstar, zhom)
        self._sec = {}

    @property
    def ext(self) -> ExtensionSeq:
        return self.problem.ext

    @property
    def Zstar(self) -> FgAbelianGroup:
        return self.problem.ext.Zstar

    def zdegree(self, a) -> GroupElement:
        return self.zgrading.degree(a)

    def section_exp(self, chi) -> tuple:
        if not isinstance(chi, GroupElement):
            chi = self.Zstar(list(chi))
        key = chi.coords
        if key not in self._sec:
            a = self.zgrading.component_exp(chi)
            if a is None:
                raise Unsupported(f"component {list(key)} contains no monomial")
            self._sec[key] = a
        return self._sec[key]

    def s_unit(self, chi) -> tuple:
        return (ONE, self.section_exp(chi))

    def with_algebra(self, algebra: MonomialAlgebra, name: str = "") -> "GStructure":
        g = Grading(algebra, self.grading.group, self.grading.hom)
        out = GStructure(self.problem, algebra, g, self.embedding, name or self.name)
        out._sec = dict(self._sec)
        return out

    def __repr__(self):
        return f"GStructure({self.name or self.algebra!r})"


def restriction_check(S: GStructure, P: LiftProblem | None = None, detail: bool = False):
    """The Gstar-part of Ahat equals the embedded problem algebra, with
    matching gradings and structure constants."""
    P = P or S.problem
    if P.ext is not S.problem.ext and P.ext.Ghatstar.invariants != S.ext.Ghatstar.invariants:
        raise InputError("structure was built for a different extension")
    A, Ah, J = P.algebra, S.algebra, S.embedding
    reasons = []
    if not J.hom.is_injective():
        reasons.append("embedding is not injective")
    inc = P.ext.inc
    for i in range(A.ngens):
        a = A.generator_exp(i)
        lhs = S.grading.degree(J.apply_unit((ONE, a))[1])
        rhs = inc(P.grading.degree(a))
        if lhs != rhs:
            reasons.append(f"degree of generator {A.names[i]} is {list(lhs.coords)}, expected {list(rhs.coords)}")
    # exponents of Ahat with degree in inc(Gstar) must come from A
    K, kinc = S.zgrading.hom.kernel()
    for g in kinc.images:
        if J.hom.preimage(g) is None:
            reasons.append(f"Gstar-part contains u^{list(g.coords)} outside the embedded algebra")
            break
    exps = [A.generator_exp(i) for i in range(A.ngens)]
    exps += [A.exp([-x for x in e]) for e in exps]
    exps += [A.exp(c) for c in itertools.product(range(-1, 3), repeat=min(A.ngens, 2))
             if A.ngens <= 2] if A.ngens <= 2 else []
    for a in exps:
        for b in exps:
            x = J.apply_unit(A.unit_product(a, b))
            y = Ah.mul_units(J.apply_unit((ONE, a)), J.apply_unit((ONE, b)))
            if x != y:
                reasons.append(f"structure constant of ({list(a)}, {list(b)}) differs")
                break
        if reasons and reasons[-1].startswith("structure"):
            break
    ok = not reasons
    return (ok, reasons) if detail else ok


# ---------------------------------------------------------------------------
# central units as a coefficient module


class UnitModule:
    """Central units of A (optionally of degree 0) as a Zstar-module."""

    def __init__(self, S: GStructure, center: CentralUnits, module: CoeffModule, invariant_only: bool):
        self.S = S
        self.center = center
        self.module = module
        self.invariant_only = invariant_only

    def unit_of(self, x) -> tuple:
        """Unit of Ahat for module coordinates x."""
        return self.S.embedding.apply_unit(self.center.from_coords(list(x)))

    def coords_of(self, unit) -> tuple:
        return self.module.reduce(self.center.to_coords(self.S.embedding.pull(unit)))

    def describe(self) -> str:
        return self.center.describe()


def unit_module(S: GStructure, invariant_only: bool = True) -> UnitModule:
    """U(Z(A)) (or its degree-0 part U(Z(A)^G)) with Zstar acting by
    conjugation with the chosen monomials s(chi)."""
    P = S.problem
    A = P.algebra
    center = CentralUnits(A, None, P.grading.hom if invariant_only else None)
    mats = []
    for chi in S.Zstar.basis():
        fm = conjugation_action(center, S.algebra, S.embedding.apply_unit, S.embedding.pull, S.s_unit(chi), "left")
        mats.append(fm.matrix)
    try:
        module = CoeffModule(S.Zstar, center.moduli, mats)
    except InputError as exc:
        raise Unsupported(f"conjugation does not define a module action: {exc}") from exc
    return UnitModule(S, center, module, invariant_only)


# ---------------------------------------------------------------------------
# quantum tori


def _rat_inverse(M):
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def _rmul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def _skew_matrix(theta, n):
    """Rational skew matrix with entries of the upper triangle as given."""
    T = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        for l in range(k + 1, n):
            v = Phase(theta[k][l]).value if not isinstance(theta[k][l], str) else Phase(theta[k][l]).value
            T[k][l] = v
            T[l][k] = -v
    return T


@dataclass
class QTorusLiftSolution:
    theta: list
    M: list
    solutions: list
    count: int
    index: int
    invariants: list

    def to_json(self) -> dict:
        return {
            "theta": [[str(Phase(v)) for v in row] for row in self.theta],
            "M": self.M,
            "count": self.count,
            "index": self.index,
            "solutions": [[[str(Phase(v)) for v in row] for row in s] for s in self.solutions],
        }


def qtorus_lift_solve(theta, M) -> QTorusLiftSolution:
    """All theta' (modulo skew integer matrices) with M theta' M^T = theta
    modulo skew integer matrices.

    The solutions are M^{-1}(theta + Y)M^{-T} with Y running over coset
    representatives of the skew integer lattice modulo its image under
    Y -> M Y M^T; their number is |det M|^{n-1}.

    >>> sol = qtorus_lift_solve([[0, "1/4"], ["-1/4", 0]], [[2, 0], [0, 2]])
    >>> [str(s[0][1]) for s in sol.solutions]
    ['1/16', '5/16', '9/16', '13/16']
    """
    M = [[int(v) for v in row] for row in M]
    n = len(M)
    if n < 1 or any(len(r) != n for r in M):
        raise InputError("M must be a square integer matrix")
    if len(theta) != n or any(len(r) != n for r in theta):
        raise InputError("theta must match the size of M")
    d = det(M)
    if d == 0:
        raise InputError("M must be invertible")
    T = [[Phase(parse(v)).value for v in row] for row in theta]
    for k in range(n):
        if T[k][k] != 0:
            raise InputError("theta must have a zero diagonal")
        for l in range(k):
            if Phase(T[k][l] + T[l][k]) != 0:
                raise InputError(f"theta is not skew at ({k + 1}, {l + 1})")
    Th = _skew_matrix(theta, n)
    pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
    m = len(pairs)
    # matrix of Y -> M Y M^T on the basis E_kl - E_lk (k < l)
    W = [[0] * m for _ in range(m)]
    for c, (k, l) in enumerate(pairs):
        for r, (i, j) in enumerate(pairs):
            W[r][c] = M[i][k] * M[j][l] - M[i][l] * M[j][k]
    if m:
        res = snf(W, inverses=True)
        diag = res.diagonal
        Ui = res.Uinv
    else:
        diag, Ui = [], []
    index = 1
    for v in diag:
        index *= abs(v)
    # integer form: theta' = adj (N + den Y) adj^T / (den D^2) with theta = N / den
    adj = [[int(v * d) for v in row] for row in _rat_inverse(M)]
    den = 1
    for row in Th:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    N = [[int(v * den) for v in row] for row in Th]
    big = den * d * d

    def sandwich(X):
        return [[sum(adj[i][a] * X[a][b] * adj[j][b] for a in range(n) for b in range(n)) for j in range(n)]
                for i in range(n)]

    base = sandwich(N)
    imgs = []
    for k, l in pairs:
        E = [[0] * n for _ in range(n)]
        E[k][l], E[l][k] = den, -den
        imgs.append(sandwich(E))
    Ui_rows = [[Ui[r][c] for r in range(m)] for c in range(m)]
    sols = []
    for t in itertools.product(*(range(abs(v)) for v in diag)):
        # y = Ui t, the skew coordinates of Y
        y = [0] * m
        for c, tc in enumerate(t):
            if tc:
                col = Ui_rows[c]
                for r in range(m):
                    y[r] += col[r] * tc
        num = [row[:] for row in base]
        for yr, img in zip(y, imgs):
            if yr:
                for i in range(n):
                    for j in range(n):
                        num[i][j] += yr * img[i][j]
        S = [[0] * n for _ in range(n)]
        for k, l in pairs:
            v = num[k][l] % big
            S[k][l], S[l][k] = v, -v
        # every solution must satisfy the congruence exactly: M S M^T = D^2 N mod den D^2
        for i in range(n):
            for j in range(i + 1, n):
                r = sum(M[i][a] * S[a][b] * M[j][b] for a in range(n) for b in range(n))
                if (r - d * d * N[i][j]) % big:
                    raise AssertionError("lifted theta violates the congruence")
        canon = [[Fraction(0)] * n for _ in range(n)]
        for k, l in pairs:
            canon[k][l] = Fraction(S[k][l], big)
            canon[l][k] = (-canon[k][l]) % 1
        sols.append(canon)
    sols.sort(key=lambda s: [s[k][l] for k, l in pairs])
    expected = abs(d) ** (n - 1)
    if len(sols) != expected:
        raise AssertionError(f"found {len(sols)} classes, expected {expected}")
    return QTorusLiftSolution([[Phase(v) for v in row] for row in theta], M, sols, len(sols), index,
                              [abs(v) for v in diag])


def parse(v):
    from .exact import parse_rat
    return parse_rat(v) if isinstance(v, str) else v


def qtorus_lift_structure(theta, M, theta_prime=None):
    """(problem, structure) for the quantum torus theta graded by Z^n lifted
    to theta' along the lattice extension of M."""
    n = len(M)
    if theta_prime is None:
        theta_prime = qtorus_lift_solve(theta, M).solutions[0]
    A = qtorus(theta)
    Ah = qtorus(theta_prime)
    ext = extension_from_lattice(M)
    gA = Grading(A, ext.Gstar, [[int(i == j) for j in range(n)] for i in range(n)])
    gAh = Grading(Ah, ext.Ghatstar, [[int(i == j) for j in range(n)] for i in range(n)])
    P = LiftProblem(A, gA, ext, name="quantum torus")
    Mt = transpose(M)
    J = GroupHom(A.E, Ah.E, Mt)
    # phase correction: lambda(a+b) - lambda(a) - lambda(b) = B'(M^T a, M^T b) - B(a, b)
    L = [[A.theta[k][l].value if k > l else Fraction(0) for l in range(n)] for k in range(n)]
    Lp = [[Ah.theta[k][l].value if k > l else Fraction(0) for l in range(n)] for k in range(n)]
    D = _rmul(_rmul([[Fraction(v) for v in r] for r in M], Lp), [[Fraction(v) for v in r] for r in Mt])
    D = [[D[i][j] - L[i][j] for j in range(n)] for i in range(n)]
    S = GStructure(P, Ah, gAh, Embedding(J, D), name="quantum torus lift")
    return P, S


# ---------------------------------------------------------------------------
# builders


def _tensor_with_group(B: MonomialAlgebraSpec, H: FgAbelianGroup, names=None) -> MonomialAlgebraSpec:
    nb = B.E.rank
    E = coordinate_group(list(B.E.invariants) + list(H.invariants))
    n = E.rank
    th = [[B.theta[i][j] if i < nb and j < nb else 0 for j in range(n)] for i in range(n)]
    corr = {k: tuple(v) + (0,) * H.rank for k, v in B.corrections.items()}
    nm = list(B.names) + (names or [f"t{i + 1}" for i in range(H.rank)])
    return MonomialAlgebraSpec(E, th, corr, B.conductor, nm)


def toy_structure(B: MonomialAlgebraSpec, ext: ExtensionSeq):
    """(problem, structure) with A = B tensor C[Gstar] and Ahat = B tensor
    C[Ghatstar] (the functions on G and Ghat with values in B)."""
    nb = B.E.rank
    A = _tensor_with_group(B, ext.Gstar, [f"t{i + 1}" for i in range(ext.Gstar.rank)])
    Ah = _tensor_with_group(B, ext.Ghatstar, [f"T{i + 1}" for i in range(ext.Ghatstar.rank)])
    gA = Grading(A, ext.Gstar, [[0] * ext.Gstar.rank] * nb +
                 [[int(i == j) for j in range(ext.Gstar.rank)] for i in range(ext.Gstar.rank)])
    gAh = Grading(Ah, ext.Ghatstar, [[0] * ext.Ghatstar.rank] * nb +
                  [[int(i == j) for j in range(ext.Ghatstar.rank)] for i in range(ext.Ghatstar.rank)])
    rows = []
    for i in range(Ah.E.rank):
        row = []
        for j in range(A.E.rank):
            if i < nb or j < nb:
                row.append(int(i == j))
            else:
                row.append(ext.inc.matrix[i - nb][j - nb])
        rows.append(row)
    J = GroupHom(A.E, Ah.E, rows)
    P = LiftProblem(A, gA, ext, name="toy")
    return P, GStructure(P, Ah, gAh, Embedding(J), name="toy")


def _heisenberg_problem():
    W = laurent(("w",))
    Gs = coordinate_group([0])
    Gh = coordinate_group([0, 0, 0])
    Zs = coordinate_group([0, 0])
    inc = GroupHom(Gs, Gh, [[0], [0], [1]])
    proj = GroupHom(Gh, Zs, [[1, 0, 0], [0, 1, 0]])
    ext = ExtensionSeq(inc, proj)
    P = LiftProblem(W, Grading(W, Gs, [[1]]), ext, name="circle")
    return P, W


def heisenberg_structure():
    """(problem, structure): the circle algebra Laurent(w) graded by the
    w-degree, lifted along Z -> Z^3 -> Z^2 by the Heisenberg algebra with
    its Z^3 decomposition."""
    P, W = _heisenberg_problem()
    A, g3, _ = heisenberg()
    J = GroupHom(W.E, A.E, [[0], [0], [1]])
    return P, GStructure(P, A, g3, Embedding(J), name="heisenberg")


def torus3_structure(theta="1/3"):
    """Same problem as ``heisenberg_structure`` solved by the quantum
    3-torus with u v = e(theta) v u and w central, which carries an honest
    Z^3 grading."""
    P, W = _heisenberg_problem()
    t = Phase(parse(theta))
    A = qtorus([[0, t, 0], [-t, 0, 0], [0, 0, 0]], names=["u", "v", "w"])
    g3 = Grading(A, coordinate_group([0, 0, 0]), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    J = GroupHom(W.E, A.E, [[0], [0], [1]])
    return P, GStructure(P, A, g3, Embedding(J), name="quantum 3-torus")


# ---------------------------------------------------------------------------
# twisting and equivalence


def _check_cocycle(omega: Cochain):
    if omega.group.is_finite:
        w = cocycle_defect(omega)
    else:
        G = omega.group
        box = [G(list(c)) for c in itertools.product(range(-1, 2), repeat=G.rank)]
        w = cocycle_defect(omega, itertools.product(box, box, box))
    if w is not None:
        raise InputError(f"omega is not a cocycle: d(omega) is nonzero at {[list(x.coords) for x in w]}")


def twist(S: GStructure, omega: Cochain, um: UnitModule | None = None, check: bool = True) -> GStructure:
    """Multiply the structure constants of Ahat by omega on Zstar-degrees:
    u^a * u^b = omega(chi_a, chi_b) u^a u^b."""
    um = um or unit_module(S, True)
    if omega.module.moduli != um.module.moduli or omega.degree != 2:
        raise InputError("omega must be a 2-cochain with values in the central-unit module")
    if check:
        _check_cocycle(omega)
    cache = {}

    def w(a, b):
        ka, kb = S.zdegree(a), S.zdegree(b)
        key = (ka.coords, kb.coords)
        if key not in cache:
            cache[key] = um.unit_of(omega(ka, kb))
        return cache[key]

    alg = CocycleTwist(S.algebra, w, label="omega")
    return S.with_algebra(alg, name=f"{S.name} twisted")


@dataclass
class EquivalenceResult:
    equivalent: bool
    varpi: Cochain | None
    comparison: Cochain
    certificate: object = None

    def __bool__(self):
        return self.equivalent


def comparison_cocycle(S1: GStructure, S2: GStructure, um: UnitModule) -> Cochain:
    """omega(chi, chi') = m2 m1^{-1} with m_i = s(chi) s(chi') s(chi+chi')^{-1}
    computed in each structure."""
    Z = S1.Zstar
    if not Z.is_finite:
        raise Unsupported("equivalence testing needs a finite Zstar")
    els = enumerate_group(Z)
    A = S1.problem.algebra
    vals = {}
    for i, x in enumerate(els):
        if i == 0:
            continue
        for j, y in enumerate(els):
            if j == 0:
                continue
            ms = []
            for S in (S1, S2):
                Ah = S.algebra
                m = Ah.mul_units(Ah.mul_units(S.s_unit(x), S.s_unit(y)), Ah.inv_unit(S.s_unit(x + y)))
                ms.append(S.embedding.pull(m))
            diff = A.mul_units(ms[1], A.inv_unit(ms[0]))
            try:
                vals[(i, j)] = um.module.reduce(um.center.to_coords(diff))
            except InputError as exc:
                raise InputError(f"structures differ by a non-central unit at ({list(x.coords)}, {list(y.coords)})") from exc
    return Cochain(um.module, 2, vals)


def _same_components(S1: GStructure, S2: GStructure):
    if S1.algebra.E.invariants != S2.algebra.E.invariants or S1.grading.hom.matrix != S2.grading.hom.matrix:
        raise InputError("structures do not share their components")
    if S1.embedding.hom.matrix != S2.embedding.hom.matrix:
        raise InputError("structures embed the problem algebra differently")
    A = S1.problem.algebra
    for chi in S1.Zstar.basis():
        for i in range(A.ngens):
            b = (ONE, A.generator_exp(i))
            c = []
            for S in (S1, S2):
                Ah = S.algebra
                s = S.s_unit(chi)
                c.append(S.embedding.pull(Ah.mul_units(Ah.mul_units(s, S.embedding.apply_unit(b)), Ah.inv_unit(s))))
            if c[0] != c[1]:
                raise InputError("components carry different bimodule structures")


def equivalence_test(S1: GStructure, S2: GStructure, um: UnitModule | None = None) -> EquivalenceResult:
    """Decide whether x -> varpi(chi) x is an isomorphism S1 -> S2 for some
    1-cochain varpi; returns it (verified) or the insolvability certificate."""
    _same_components(S1, S2)
    um = um or unit_module(S1, True)
    omega = comparison_cocycle(S1, S2, um)
    sol = is_coboundary(omega)
    if isinstance(sol, NoSolution):
        return EquivalenceResult(False, None, omega, sol)
    varpi = -sol
    _verify_equivalence(S1, S2, varpi, um)
    return EquivalenceResult(True, varpi, omega)


def _verify_equivalence(S1, S2, varpi: Cochain, um: UnitModule):
    Z = S1.Zstar
    els = enumerate_group(Z)
    A1, A2 = S1.algebra, S2.algebra

    def phi(x):
        chi = S1.zdegree(x[1])
        return A2.mul_units(um.unit_of(varpi(chi)), x)

    for x in els:
        for y in els:
            a, b = S1.s_unit(x), S1.s_unit(y)
            if phi(A1.mul_units(a, b)) != A2.mul_units(phi(a), phi(b)):
                raise AssertionError("equivalence map is not multiplicative")
    A = S1.problem.algebra
    for i in range(A.ngens):
        g = S1.embedding.apply_unit((ONE, A.generator_exp(i)))
        if phi(g) != g:
            raise AssertionError("equivalence map moves the problem algebra")


@dataclass
class ClassificationReport:
    module: CoeffModule
    units: UnitModule
    group: CohomologyGroup
    twists: list
    checked_pairs: int = 0
    notes: list = field(default_factory=list)

    def is_trivial(self) -> bool:
        return self.group.is_trivial()

    def describe(self) -> str:
        return self.group.describe()

    def to_json(self) -> dict:
        return {
            "coefficients": self.units.describe(),
            "action_trivial": self.module.is_trivial_action(),
            "H2": self.group.describe(),
            "torsion": list(self.group.torsion),
            "free_rank": self.group.free_rank,
            "divisible": self.group.divisible,
            "checked_pairs": self.checked_pairs,
            "notes": list(self.notes),
        }


def classify(P: LiftProblem, S: GStructure, invariant_only: bool = True, verify: bool = True) -> ClassificationReport:
    """H^2(Zstar, U) with U the central units (of degree 0 by default), and
    the twists of S by its representatives."""
    um = unit_module(S, invariant_only)
    M = um.module
    Z = S.Zstar
    notes = []
    if Z.is_finite:
        H = cohomology_group(Z, M, 2)
    elif M.is_trivial_action():
        H = h2_structural(Z, M)
        notes.append("free part handled by the universal-coefficient formula")
    else:
        raise Unsupported("infinite Zstar with a nontrivial action on the central units")
    twists = []
    checked = 0
    if Z.is_finite:
        twists = [twist(S, r, um) for r in H.representatives]
        if verify:
            reps = [S] + twists
            for i, j in itertools.combinations(range(len(reps)), 2):
                res = equivalence_test(reps[i], reps[j], um)
                checked += 1
                if res.equivalent:
                    raise AssertionError("twists by distinct representatives are equivalent")
    return ClassificationReport(M, um, H, twists, checked, notes)


# ---------------------------------------------------------------------------
# gauge transformations


def gauge_group(S: GStructure) -> CohomologyGroup:
    """Crossed homomorphisms Zstar -> U(Z(A)) (whole center)."""
    um = unit_module(S, invariant_only=False)
    z = crossed_homs(S.Zstar, um.module)
    z.units = um
    return z


def _crossed_defect(c: Cochain, um: UnitModule, pairs):
    M = um.module
    for x, y in pairs:
        lhs = c(x + y)
        rhs = M.add(c(x), M.act(x, c(y)))
        if lhs != rhs:
            return (x, y)
    return None


def apply_gauge(S: GStructure, c: Cochain, x, um: UnitModule | None = None, check: bool = True):
    """Multiply the Zstar-component chi of x by c(chi)."""
    um = um or unit_module(S, invariant_only=False)
    if check:
        Z = S.Zstar
        els = enumerate_group(Z) if Z.is_finite else [Z(list(v)) for v in itertools.product(range(-2, 3), repeat=Z.rank)]
        bad = _crossed_defect(c, um, itertools.product(els, els))
        if bad is not None:
            raise InputError(f"c is not a crossed homomorphism at {[list(b.coords) for b in bad]}")
    Ah = S.algebra
    if isinstance(x, Element):
        terms = {}
        for a, coef in x.terms.items():
            p, b = Ah.mul_units(um.unit_of(c(S.zdegree(a))), (ONE, a))
            v = coef * Element.monomial(Ah, b, p).terms[b] if p != 0 else coef
            terms[b] = terms[b] + v if b in terms else v
        return Element(Ah, terms)
    p, a = x
    return Ah.mul_units(um.unit_of(c(S.zdegree(a))), x)


# ---------------------------------------------------------------------------
# action lifts in the finite model


class LiftCandidate:
    """Lifted automorphisms alpha-hat_ghat of a finite structure, given by
    v[(ghat, chi)] (units of A) through

        alpha-hat_ghat(y s(chi)) = alpha_{q ghat}(y) v_ghat(chi) s(chi).
    """

    def __init__(self, S: GStructure, v: dict, fm: FiniteModel | None = None):
        if not S.ext.Ghatstar.is_finite:
            raise SizeError("action lifts are modelled for finite Ghatstar only")
        self.S = S
        self.fm = fm or S.ext.finite_model()
        self.v = {}
        A = S.problem.algebra
        for (gh, chi), unit in v.items():
            gh = tuple(self.fm.Ghat(list(gh)).coords)
            chi = tuple(S.Zstar(list(chi)).coords)
            p, e = unit
            self.v[(gh, chi)] = (Phase(p), A.exp(e))

    def value(self, gh, chi) -> tuple:
        key = (tuple(gh.coords) if isinstance(gh, GroupElement) else tuple(gh),
               tuple(chi.coords) if isinstance(chi, GroupElement) else tuple(chi))
        if all(c == 0 for c in key[1]):
            return self.S.problem.algebra.one_unit()
        try:
            return self.v[key]
        except KeyError:
            raise InputError(f"no v value for ghat={list(key[0])}, chi={list(key[1])}") from None

    def alpha(self, g: GroupElement, unit) -> tuple:
        """alpha_g on a unit of A: u^e -> <deg e, g> u^e."""
        p, e = unit
        lam = self.S.problem.grading.degree(e)
        return (Phase(p) + pair(lam, g), e)

    def alpha_hat(self, gh: GroupElement, unit) -> tuple:
        S = self.S
        Ah = S.algebra
        chi = S.zdegree(unit[1])
        s = S.s_unit(chi)
        y = S.embedding.pull(Ah.mul_units(unit, Ah.inv_unit(s)))
        g = self.fm.q(gh)
        ay = S.embedding.apply_unit(self.alpha(g, y))
        vv = S.embedding.apply_unit(self.value(gh, chi))
        return Ah.mul_units(Ah.mul_units(ay, vv), s)

    def alpha_hat_inverse_s(self, gh: GroupElement, chi) -> tuple:
        """alpha-hat_ghat^{-1}(s(chi)) = alpha_{q ghat}^{-1}(v^{-1}) s(chi)."""
        S = self.S
        A = S.problem.algebra
        g = self.fm.q(gh)
        vinv = A.inv_unit(self.value(gh, chi))
        y = self.alpha(-g, vinv)
        return S.algebra.mul_units(S.embedding.apply_unit(y), S.s_unit(chi))

    def conditions(self) -> list:
        """Violations of: automorphism, alpha-hat on iota(Z) being the
        character scalar, Z-equivariance."""
        S = self.S
        fm = self.fm
        Ah = S.algebra
        out = []
        exps = enumerate_group(Ah.E) if Ah.E.is_finite and Ah.E.order <= 64 else \
            [Ah.generator_exp(i) for i in range(Ah.ngens)]
        exps = [tuple(e.coords) if isinstance(e, GroupElement) else e for e in exps]
        for gh in enumerate_group(fm.Ghat):
            for a in exps:
                for b in exps:
                    lhs = self.alpha_hat(gh, Ah.unit_product(a, b))
                    rhs = Ah.mul_units(self.alpha_hat(gh, (ONE, a)), self.alpha_hat(gh, (ONE, b)))
                    if lhs != rhs:
                        out.append(("automorphism", list(gh.coords), list(a), list(b)))
                        break
                if out and out[-1][0] == "automorphism":
                    break
        A = S.problem.algebra
        for chi in enumerate_group(S.Zstar):
            for z in enumerate_group(fm.Z):
                if self.value(fm.iota(z), chi) != (pair(chi, z), A.zero_exp()):
                    out.append(("Z-action", list(z.coords), list(chi.coords)))
            for gh in enumerate_group(fm.Ghat):
                for z in enumerate_group(fm.Z):
                    lhs = self.value(gh + fm.iota(z), chi)
                    p, e = self.value(gh, chi)
                    if lhs != (p + pair(chi, z), e):
                        out.append(("equivariance", list(gh.coords), list(chi.coords), list(z.coords)))
        return out

    def is_homomorphic(self) -> bool:
        return v_family_check(VFamily(self.S, self.v, self.fm), self.S)


class VFamily(LiftCandidate):
    """v_ghat(chi) data; same storage as LiftCandidate."""


def v_family_check(V: LiftCandidate, S: GStructure | None = None) -> bool:
    """Equivariance v_{ghat + iota z}(chi) = chi(z) v_ghat(chi), v_0 = 1 and
    v_{ghat + ghat'}(chi) = alpha_{q ghat}(v_{ghat'}(chi)) v_ghat(chi)."""
    S = S or V.S
    fm = V.fm
    A = S.problem.algebra
    ghats = enumerate_group(fm.Ghat)
    chis = enumerate_group(S.Zstar)
    for chi in chis:
        if V.value(fm.Ghat.zero(), chi) != A.one_unit():
            return False
        for gh in ghats:
            for z in enumerate_group(fm.Z):
                p, e = V.value(gh, chi)
                if V.value(gh + fm.iota(z), chi) != (p + pair(chi, z), e):
                    return False
            for gh2 in ghats:
                lhs = V.value(gh + gh2, chi)
                rhs = A.mul_units(V.alpha(fm.q(gh), V.value(gh2, chi)), V.value(gh, chi))
                if lhs != rhs:
                    return False
    return True


@dataclass
class ObstructionReport:
    delta: Cochain
    trivial: bool
    phi: dict | None
    corrected: VFamily | None
    module: CoeffModule
    certificate: object = None

    def to_json(self) -> dict:
        out = {"trivial": self.trivial, "delta": self.delta.to_json()}
        if self.phi is not None:
            out["phi"] = {str(list(k)): [self.module.value_to_json(x) for x in v] for k, v in self.phi.items()}
        return out


def _g_module(um: UnitModule, fm: FiniteModel, cand: LiftCandidate):
    """(W, chis): the product of copies of U over nonzero chi, with G acting
    by alpha_g in each factor."""
    U = um.module
    Z = um.S.Zstar
    chis = enumerate_group(Z)[1:]
    k = U.rank
    center = um.center
    mats = []
    for g in fm.G.basis():
        # alpha_g on U: basis unit b_i picks up the phase <deg b_i, g>
        blk = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        for i, b in enumerate(center.basis_units):
            blk[0][i + 1] = pair(um.S.problem.grading.degree(b[1]), g).value
        big = [[Fraction(0)] * (k * len(chis)) for _ in range(k * len(chis))]
        for c in range(len(chis)):
            for i in range(k):
                for j in range(k):
                    big[c * k + i][c * k + j] = blk[i][j]
        mats.append(big)
    W = CoeffModule(fm.G, list(U.moduli) * len(chis), mats)
    return W, chis


def delta_obstruction(cand: LiftCandidate, section: Callable | None = None) -> ObstructionReport:
    """The 2-cocycle delta(g, g') = alpha-hat_{sg} alpha-hat_{sg'} alpha-hat_{sg + sg'}^{-1}
    with values in the gauge group, and its class in H^2_S(G, Gau)."""
    bad = cand.conditions()
    if bad:
        raise InputError(f"candidate violates the lift conditions: {bad[0]}")
    S = cand.S
    fm = cand.fm
    sec = section or fm.lift
    um = unit_module(S, invariant_only=False)
    U = um.module
    k = U.rank
    W, chis = _g_module(um, fm, cand)
    G = fm.G
    gels = enumerate_group(G)
    Ah = S.algebra
    vals = {}
    for i, g in enumerate(gels):
        for j, h in enumerate(gels):
            if i == 0 or j == 0:
                continue
            gh1, gh2 = sec(g), sec(h)
            gh3 = gh1 + gh2
            row = []
            for chi in chis:
                x = cand.alpha_hat_inverse_s(gh3, chi)
                x = cand.alpha_hat(gh2, x)
                x = cand.alpha_hat(gh1, x)
                c = Ah.mul_units(x, Ah.inv_unit(S.s_unit(chi)))
                row.extend(um.coords_of(c))
            vals[(i, j)] = row
    delta = Cochain(W, 2, vals)
    if cocycle_defect(delta) is not None:
        raise AssertionError("delta fails the twisted cocycle identity")
    # unknowns: phi(g)(chi) for g != 0, chi != 0
    ng, nc = len(gels) - 1, len(chis)
    nvar = ng * nc * k
    col_mod = list(U.moduli) * (ng * nc)

    def var(gi, ci, t):
        return ((gi - 1) * nc + ci) * k + t

    zidx = {c.coords: n for n, c in enumerate(chis)}
    rows, rhs, row_mod = [], [], []
    Wtab = W.action_table()
    # d phi = delta
    for i, g in enumerate(gels):
        for j, h in enumerate(gels):
            if i == 0 or j == 0:
                continue
            target = delta.value_at_indices((i, j))
            s = G.index_of(g + h)
            for ci in range(nc):
                for t in range(k):
                    r = [Fraction(0)] * nvar
                    act = Wtab[i]
                    for tt in range(k):
                        coef = act[ci * k + t][ci * k + tt]
                        if coef:
                            r[var(j, ci, tt)] += coef
                    if s:
                        r[var(s, ci, t)] -= 1
                    r[var(i, ci, t)] += 1
                    rows.append(r)
                    rhs.append(target[ci * k + t])
                    row_mod.append(U.moduli[t])
    # crossed homomorphism constraints c(x+y) = c(x) + Delta_x c(y)
    Zels = enumerate_group(S.Zstar)
    for gi in range(1, len(gels)):
        for x in Zels[1:]:
            for y in Zels[1:]:
                mat = U.matrix_of(x)
                sxy = x + y
                for t in range(k):
                    r = [Fraction(0)] * nvar
                    if not sxy.is_zero():
                        r[var(gi, zidx[sxy.coords], t)] += 1
                    r[var(gi, zidx[x.coords], t)] -= 1
                    for tt in range(k):
                        if mat[t][tt]:
                            r[var(gi, zidx[y.coords], tt)] -= mat[t][tt]
                    rows.append(r)
                    rhs.append(0)
                    row_mod.append(U.moduli[t])
    rows = [[c if row_mod[n] == DIV else int(c) if Fraction(c).denominator == 1 else c for c in row]
            for n, row in enumerate(rows)]
    for n, row in enumerate(rows):
        if row_mod[n] != DIV and any(Fraction(c).denominator != 1 for c in row):
            raise Unsupported("rational action entries on an integer coordinate")
    sol = solve_mixed(rows, rhs, col_mod, row_mod) if rows else [0] * nvar
    if isinstance(sol, NoSolution):
        return ObstructionReport(delta, False, None, None, U, sol)
    phi = {}
    for gi in range(1, len(gels)):
        phi[gels[gi].coords] = [U.reduce(sol[var(gi, ci, 0):var(gi, ci, 0) + k]) for ci in range(nc)]
    # corrected family: v~_ghat(chi) = c_{q ghat}(chi)^{-1} v_ghat(chi)
    A = S.problem.algebra
    newv = {}
    for gh in enumerate_group(fm.Ghat):
        g = fm.q(gh)
        for ci, chi in enumerate(chis):
            v = cand.value(gh, chi)
            if not g.is_zero():
                c = um.center.from_coords(list(phi[g.coords][ci]))
                v = A.mul_units(A.inv_unit(c), v)
            newv[(gh.coords, chi.coords)] = v
    corrected = VFamily(S, newv, fm)
    return ObstructionReport(delta, True, phi, corrected, U)


# ---------------------------------------------------------------------------
# freeness and Picard data


@dataclass
class FreenessReport:
    strong: bool
    multiplicative: bool
    spans: bool
    witness: object = None

    def __bool__(self):
        return self.strong and self.multiplicative and self.spans

    def to_json(self) -> dict:
        return {"free": bool(self), "strong": self.strong, "multiplicative": self.multiplicative,
                "spans": self.spans, "witness": [list(w) for w in self.witness] if self.witness else None}


def freeness_check(S: GStructure) -> FreenessReport:
    """Strong Ghatstar-grading on a generating window (which presupposes
    that the decomposition is a grading) and Ahat(chi) Ahat(chi') =
    Ahat(chi + chi') for generating chi, chi'."""
    strong = strong_grading_check(S.grading)
    wit = S.grading.multiplicativity_defect()
    mult = wit is None
    spans = True
    zwit = S.zgrading.multiplicativity_defect()
    if zwit is not None:
        spans = False
    else:
        gens = []
        for b in S.Zstar.basis():
            gens += [b, -b]
        for x in gens:
            for y in gens:
                try:
                    a, b = S.section_exp(x), S.section_exp(y)
                except Unsupported:
                    spans = False
                    break
                _, c = S.algebra.unit_product(a, b)
                if S.zdegree(c) != x + y:
                    spans = False
    return FreenessReport(strong, mult, spans, wit or zwit)


@dataclass
class PicardReport:
    rank_one: dict
    delta: dict
    additive: bool

    @property
    def trivial(self) -> bool:
        return all(self.rank_one.values()) and all(d.is_identity() for d in self.delta.values()) and self.additive

    def to_json(self) -> dict:
        return {
            "trivial": self.trivial,
            "additive": self.additive,
            "components": [{"chi": list(k), "rank_one": self.rank_one[k],
                            "delta_identity": self.delta[k].is_identity(),
                            "delta": [[format_rat(v) for v in row] for row in self.delta[k].matrix]}
                           for k in sorted(self.delta)],
        }


def picard_data(S: GStructure) -> PicardReport:
    """For each generator chi of Zstar: whether Ahat(chi) is free of rank
    one over A (it contains an invertible monomial and the Zstar-grading is
    multiplicative) and the conjugation a -> s^{-1} a s on central units."""
    A = S.problem.algebra
    center = CentralUnits(A)
    zmult = S.zgrading.is_multiplicative()
    rank_one, delta = {}, {}
    gens = S.Zstar.basis()
    for chi in gens:
        try:
            s = S.s_unit(chi)
        except Unsupported as exc:
            raise Unsupported(f"component {list(chi.coords)} is not cleft") from exc
        rank_one[chi.coords] = zmult
        delta[chi.coords] = conjugation_action(center, S.algebra, S.embedding.apply_unit, S.embedding.pull,
                                               s, "right")
    additive = True
    for x in gens:
        for y in gens:
            s = S.s_unit(x + y)
            dxy = conjugation_action(center, S.algebra, S.embedding.apply_unit, S.embedding.pull, s, "right")
            # right conjugation composes as Delta_{x+y} = Delta_y o Delta_x; abelian, so compare both orders
            comp = _compose(delta[y.coords], delta[x.coords], center)
            if not _same_matrix(dxy.matrix, comp, center):
                additive = False
    return PicardReport(rank_one, delta, additive)


def _compose(f: FrohlichMap, g: FrohlichMap, center) -> list:
    k = center.rank
    return [[sum(Fraction(f.matrix[i][t]) * Fraction(g.matrix[t][j]) for t in range(k)) for j in range(k)]
            for i in range(k)]


def _same_matrix(a, b, center) -> bool:
    for i in range(center.rank):
        m = center.moduli[i]
        for j in range(center.rank):
            d = Fraction(a[i][j]) - Fraction(b[i][j])
            if m == DIV and center.moduli[j] != DIV:
                if d % 1:
                    return False
            elif m > 0:
                if d.denominator != 1 or int(d) % m:
                    return False
            elif d:
                return False
    return True
