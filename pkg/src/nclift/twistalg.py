"""Twisted monomial *-algebras over finitely generated abelian groups.

Every algebra here has a basis of unitary monomials u^a indexed by an
exponent group E, and a product of the form

    u^a u^b = e(c(a, b)) u^{m(a, b)},        e(t) = exp(2 pi i t),

with a rational phase c and an exponent m.  Coefficients are exact
cyclotomic numbers, so all identities are checked by equality rather than
within a tolerance.

The closed-form family (``MonomialAlgebraSpec``) is given by a skew phase
matrix theta and central corrections d_kl, with the relations

    u_k u_l = e(theta_kl) u^{d_kl} u_l u_k        (k > l).

Writing monomials as ordered products u_1^{a_1} ... u_n^{a_n}, moving the
factors of the second monomial to the left gives

    c(a, b) = sum_{k>l} a_k b_l theta_kl,   m(a, b) = a + b + sum_{k>l} a_k b_l d_kl.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .abgroup import (
    FgAbelianGroup,
    GroupElement,
    GroupHom,
    coordinate_group,
    enumerate_group,
    subgroup_generated,
)
from .exact import (
    CycScalar,
    InputError,
    Phase,
    Unsupported,
    lcm,
    parse_rat,
    solve_int,
)

__all__ = [
    "MonomialAlgebra",
    "MonomialAlgebraSpec",
    "CocycleTwist",
    "CrossedProduct",
    "Element",
    "Grading",
    "MonomialMap",
    "MonomialAut",
    "CentralUnits",
    "CleftFactorSystem",
    "MatrixFactorSystem",
    "FactorSystemReport",
    "FrohlichMap",
    "qtorus",
    "heisenberg",
    "laurent",
    "group_algebra",
    "multiply",
    "star",
    "graded_component",
    "check_cleft_factor_system",
    "build_from_factor_system",
    "check_matrix_factor_system",
    "check_conjugacy",
    "strong_grading_check",
    "frohlich",
    "algebra_from_json",
    "element_from_json",
]

ONE = Phase(0)


def _box(E: FgAbelianGroup, radius: int = 1, cap: int = 64) -> list:
    """A small symmetric window of exponents (all of E when E is finite and
    small enough)."""
    ranges = []
    for d in E.invariants:
        if d:
            ranges.append(range(d) if d <= 2 * radius + 2 else range(-radius, radius + 1))
        else:
            ranges.append(range(-radius, radius + 1))
    out = []
    for c in itertools.product(*ranges):
        out.append(E.reduce(c))
        if len(out) >= cap:
            break
    return sorted(set(out))


# ---------------------------------------------------------------------------
# algebras


class MonomialAlgebra:
    """Base class: subclasses provide ``E`` and ``unit_product``."""

    E: FgAbelianGroup
    names: list

    def unit_product(self, a: tuple, b: tuple) -> tuple:
        raise NotImplementedError

    # -- unit arithmetic ----------------------------------------------------

    @property
    def ngens(self) -> int:
        return self.E.rank

    def exp(self, coords) -> tuple:
        return self.E.reduce(list(coords))

    def zero_exp(self) -> tuple:
        return (0,) * self.E.rank

    def one_unit(self) -> tuple:
        return (ONE, self.zero_exp())

    def generator_exp(self, i: int) -> tuple:
        return self.exp([int(i == j) for j in range(self.E.rank)])

    def mul_units(self, x, y) -> tuple:
        p, a = x
        q, b = y
        r, c = self.unit_product(a, b)
        return (_as_phase(p) + _as_phase(q) + r, c)

    def inverse(self, a: tuple, _depth: int = 0) -> tuple:
        """(phase, exponent) of (u^a)^{-1}."""
        neg = self.exp([-x for x in a])
        r, c = self.unit_product(a, neg)
        if c == self.zero_exp():
            return (-r, neg)
        if _depth > 8:
            raise Unsupported("monomial inverse did not terminate")
        # u^a u^{-a} = e(r) u^c, so (u^a)^{-1} = u^{-a} (e(r) u^c)^{-1}
        inv_c = self.inverse(c, _depth + 1)
        p, e = self.mul_units((ONE, neg), inv_c)
        return (p - r, e)

    def inv_unit(self, x) -> tuple:
        p, a = x
        q, b = self.inverse(a)
        return (q - Phase(p), b)

    def power(self, x, k: int) -> tuple:
        if k < 0:
            x = self.inv_unit(x)
            k = -k
        acc = self.one_unit()
        base = x
        while k:
            if k & 1:
                acc = self.mul_units(acc, base)
            base = self.mul_units(base, base)
            k >>= 1
        return acc

    def commutator(self, a: tuple, b: tuple) -> tuple:
        """(u^a u^b)(u^b u^a)^{-1} as a unit."""
        return self.mul_units(self.unit_product(a, b), self.inv_unit(self.unit_product(b, a)))

    def word(self, a: tuple, _depth: int = 0) -> tuple:
        """(phase, [(generator, power), ...]) with u^a = e(phase) times the
        ordered product of generator powers."""
        acc = self.one_unit()
        seq = []
        for i, k in enumerate(a):
            if k:
                seq.append((i, k))
                acc = self.mul_units(acc, self.power((ONE, self.generator_exp(i)), k))
        if acc[1] == tuple(a):
            return (-acc[0], seq)
        if _depth > 8:
            raise Unsupported("could not express a monomial through generators")
        rest = self.mul_units(self.inv_unit(acc), (ONE, tuple(a)))
        ph, seq2 = self.word(rest[1], _depth + 1)
        return (rest[0] + ph, seq + seq2)

    def conductor_of(self, phases) -> int:
        return lcm(*(Phase(p).denominator for p in phases))

    def structure_table(self, exps=None) -> dict:
        """Products of all pairs from ``exps`` (default: generators and
        their inverses)."""
        if exps is None:
            exps = []
            for i in range(self.ngens):
                e = self.generator_exp(i)
                exps.append(e)
                exps.append(self.exp([-x for x in e]))
        return {(a, b): self.unit_product(a, b) for a in exps for b in exps}

    def check_associative(self, triples) -> tuple | None:
        """First triple (a, b, c) where (u^a u^b) u^c != u^a (u^b u^c)."""
        for a, b, c in triples:
            left = self.mul_units(self.unit_product(a, b), (ONE, c))
            right = self.mul_units((ONE, a), self.unit_product(b, c))
            if left != right:
                return (a, b, c)
        return None

    def one(self) -> "Element":
        return Element(self, {self.zero_exp(): CycScalar.one()})

    def zero(self) -> "Element":
        return Element(self, {})

    def monomial(self, exp, coeff=1) -> "Element":
        return Element.monomial(self, exp, coeff)

    def gen(self, i: int) -> "Element":
        return Element.monomial(self, self.generator_exp(i))

    def unit_element(self, unit) -> "Element":
        p, a = unit
        return Element.monomial(self, a, CycScalar.root(p))


class MonomialAlgebraSpec(MonomialAlgebra):
    """Closed-form twisted monomial algebra (two-step nilpotent corrections).

    >>> A = qtorus([[0, "1/2"], ["1/2", 0]])
    >>> A.unit_product((0, 1), (1, 0))
    (Phase('1/2'), (1, 1))
    """

    def __init__(self, E: FgAbelianGroup, theta, corrections=None, conductor: int | None = None,
                 names: Sequence[str] | None = None):
        n = E.rank
        self.E = E
        th = [[Phase(parse_rat(v) if isinstance(v, str) else v) for v in row] for row in theta] if n else []
        if len(th) != n or any(len(r) != n for r in th):
            raise InputError(f"theta must be a {n} x {n} matrix")
        for k in range(n):
            if th[k][k] != 0:
                raise InputError(f"theta[{k}][{k}] must vanish")
            for l in range(k):
                if th[k][l] != -th[l][k]:
                    raise InputError(f"theta is not skew at ({k}, {l})")
        self.theta = th
        corr = {}
        for key, vec in (corrections or {}).items():
            k, l = key
            if not (0 <= l < k < n):
                raise InputError(f"correction index ({k}, {l}) must satisfy k > l")
            v = E.reduce(list(vec))
            if any(v):
                corr[(k, l)] = v
        self.corrections = corr
        need = lcm(*(p.denominator for row in th for p in row))
        if conductor is None:
            conductor = need
        if conductor % need:
            raise InputError(f"conductor {conductor} does not realise the phases (need a multiple of {need})")
        self.conductor = conductor
        self.names = list(names) if names else [f"u{i + 1}" for i in range(n)]
        if len(self.names) != n:
            raise InputError("one name per generator")
        self._validate()

    def _validate(self):
        n = self.E.rank
        central = set()
        for vec in self.corrections.values():
            central.update(j for j, x in enumerate(vec) if x)
        for j in central:
            if any(self.theta[j][k] for k in range(n)):
                raise InputError(f"generator {self.names[j]} appears in a correction but has a nonzero theta row")
            if any(j in key for key in self.corrections):
                raise InputError(f"generator {self.names[j]} appears in a correction and has corrections itself")
        for j, m in enumerate(self.E.invariants):
            if not m:
                continue
            for k in range(n):
                if (self.theta[j][k] * m) != 0:
                    raise InputError(f"generator {self.names[j]} has order {m} but m * theta[{j}][{k}] is not an integer")
            for (k, l), vec in self.corrections.items():
                if j in (k, l) and any(self.E.reduce([x * m for x in vec])):
                    raise InputError(f"generator {self.names[j]} has order {m} but its correction has larger order")

    def unit_product(self, a, b):
        n = self.E.rank
        ph = Fraction(0)
        ex = [x + y for x, y in zip(a, b)]
        for k in range(n):
            ak = a[k]
            if not ak:
                continue
            for l in range(k):
                bl = b[l]
                if bl:
                    t = self.theta[k][l]
                    if t:
                        ph += ak * bl * t.value
                    vec = self.corrections.get((k, l))
                    if vec:
                        for j, x in enumerate(vec):
                            ex[j] += ak * bl * x
        return (Phase(ph), self.E.reduce(ex))

    def is_commutative(self) -> bool:
        return not self.corrections and all(p == 0 for row in self.theta for p in row)

    def to_json(self) -> dict:
        return {
            "exponent_group": group_to_json(self.E),
            "theta": [[str(p) for p in row] for row in self.theta],
            "corrections": [{"k": k + 1, "l": l + 1, "vector": list(v)} for (k, l), v in sorted(self.corrections.items())],
            "conductor": self.conductor,
            "names": list(self.names),
        }

    def __eq__(self, other):
        if not isinstance(other, MonomialAlgebraSpec):
            return NotImplemented
        return (self.E == other.E and self.theta == other.theta and self.corrections == other.corrections)

    __hash__ = None

    def __repr__(self):
        return f"MonomialAlgebraSpec(E={self.E.describe()}, names={self.names})"


class CocycleTwist(MonomialAlgebra):
    """The base product multiplied by a central unit omega(a, b).

    ``omega`` takes two exponents of the base and returns a unit
    (phase, exponent); its values must be central.
    """

    def __init__(self, base: MonomialAlgebra, omega: Callable, label: str = "twist"):
        self.base = base
        self.E = base.E
        self.names = list(base.names)
        self.omega = omega
        self.label = label
        self.conductor = getattr(base, "conductor", 1)

    def unit_product(self, a, b):
        w = self.omega(a, b)
        return self.base.mul_units(w, self.base.unit_product(a, b))

    def __repr__(self):
        return f"CocycleTwist({self.base!r}, {self.label})"


class CrossedProduct(MonomialAlgebra):
    """Algebra built from a cleft factor system: basis u^e u_sigma with
    (b u_sigma)(b' u_pi) = b gamma_sigma(b') omega(sigma, pi) u_{sigma + pi}."""

    def __init__(self, fs: "CleftFactorSystem"):
        self.fs = fs
        B = fs.base
        self.nb = B.E.rank
        self.E = coordinate_group(list(B.E.invariants) + list(fs.Lambda.invariants))
        self.names = list(B.names) + [f"s{i + 1}" for i in range(fs.Lambda.rank)]
        self.conductor = getattr(B, "conductor", 1)

    def split(self, a):
        return tuple(a[: self.nb]), self.fs.Lambda(a[self.nb:])

    def unit_product(self, a, b):
        B = self.fs.base
        e, s = self.split(a)
        f, p = self.split(b)
        x = B.mul_units((ONE, e), self.fs.gamma_of(s).apply_unit((ONE, f)))
        x = B.mul_units(x, self.fs.omega_of(s, p))
        return (x[0], tuple(x[1]) + (s + p).coords)

    def base_embedding(self) -> list:
        """Exponent images of the base generators."""
        return [tuple(self.fs.base.generator_exp(i)) + (0,) * self.fs.Lambda.rank for i in range(self.nb)]


# ---------------------------------------------------------------------------
# constructors


def qtorus(theta, n: int | None = None, names=None) -> MonomialAlgebraSpec:
    """Quantum torus with u_k u_l = e(theta_kl) u_l u_k on Z^n.

    >>> A = qtorus([[0, "1/4"], ["-1/4", 0]])
    >>> A.unit_product((0, 1), (1, 0))
    (Phase('3/4'), (1, 1))
    """
    n = n if n is not None else len(theta)
    if n < 1:
        raise InputError("a quantum torus needs at least one generator")
    if len(theta) != n:
        raise InputError(f"theta must be {n} x {n}")
    return MonomialAlgebraSpec(coordinate_group([0] * n), theta, names=names)


def laurent(names=("w",)) -> MonomialAlgebraSpec:
    n = len(names)
    return MonomialAlgebraSpec(coordinate_group([0] * n), [[0] * n for _ in range(n)], names=list(names))


def group_algebra(E: FgAbelianGroup, names=None) -> MonomialAlgebraSpec:
    """Commutative group algebra C[E] (functions on the dual group)."""
    n = E.rank
    return MonomialAlgebraSpec(E, [[0] * n for _ in range(n)], names=names)


def heisenberg():
    """(algebra, Z^3 decomposition, Z^2 grading) for the algebra of the
    discrete Heisenberg group: unitaries u, v, w with w central and
    uv = w vu, stored as v u = w^{-1} u v.

    The Z^3 decomposition sends u^k v^l w^m to (k, l, m).  Its components
    are one-dimensional but it is not multiplicative (v u has degree
    (1, 1, -1)); the Z^2 grading forgets w and is an honest grading.
    """
    E = coordinate_group([0, 0, 0])
    A = MonomialAlgebraSpec(E, [[0] * 3 for _ in range(3)], {(1, 0): (0, 0, -1)}, names=["u", "v", "w"])
    Z3 = coordinate_group([0, 0, 0])
    Z2 = coordinate_group([0, 0])
    g3 = Grading(A, Z3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    g2 = Grading(A, Z2, [[1, 0], [0, 1], [0, 0]])
    return A, g3, g2


# ---------------------------------------------------------------------------
# elements


class Element:
    """Finite linear combination of monomials with cyclotomic coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: MonomialAlgebra, terms=None):
        self.algebra = algebra
        clean = {}
        for a, c in (terms or {}).items():
            a = algebra.exp(a)
            if not isinstance(c, CycScalar):
                c = CycScalar.root(c) if isinstance(c, Phase) else CycScalar([parse_rat(c)], 1)
            if a in clean:
                c = clean[a] + c
            if c.is_zero():
                clean.pop(a, None)
            else:
                clean[a] = c
        self.terms = clean

    @classmethod
    def monomial(cls, algebra, exp, coeff=1) -> "Element":
        return cls(algebra, {algebra.exp(exp): coeff})

    def _same(self, other):
        if not isinstance(other, Element):
            other = Element(self.algebra, {self.algebra.zero_exp(): other})
        if other.algebra is not self.algebra:
            raise InputError("elements belong to different algebras")
        return other

    def __add__(self, other):
        other = self._same(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms[a] + c if a in terms else c
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return Element(self.algebra, {a: c * _scalar(other) for a, c in self.terms.items()})

    def __rmul__(self, other):
        return Element(self.algebra, {a: _scalar(other) * c for a, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Element):
            try:
                other = self._same(other)
            except InputError:
                return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[a] == other.terms[a] for a in self.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list:
        return sorted(self.terms)

    def coefficient(self, exp) -> CycScalar:
        return self.terms.get(self.algebra.exp(exp), CycScalar.zero())

    def star(self) -> "Element":
        return star(self)

    def as_unit(self):
        """(phase, exponent) when the element is a root of unity times a
        monomial, else None."""
        if len(self.terms) != 1:
            return None
        (a, c), = self.terms.items()
        p = c.as_root_of_unity()
        return None if p is None else (p, a)

    def to_json(self) -> list:
        return [{"exp": list(a), "coeff": c.to_json()} for a, c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in sorted(self.terms.items()):
            mono = "*".join(f"{n}^{k}" if k != 1 else n for n, k in zip(self.algebra.names, a) if k) or "1"
            cs = str(c)
            if cs == "1":
                parts.append(mono)
            elif mono == "1":
                parts.append(cs if " " not in cs else f"({cs})")
            else:
                parts.append(f"{cs}*{mono}" if " " not in cs else f"({cs})*{mono}")
        return " + ".join(parts)


def _as_phase(p) -> Phase:
    return p if isinstance(p, Phase) else Phase(p)


def _scalar(x) -> CycScalar:
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, Phase):
        return CycScalar.root(x)
    return CycScalar([parse_rat(x) if isinstance(x, str) else x], 1)


_ROOTS: dict = {}


def _root(p: Phase) -> CycScalar:
    r = _ROOTS.get(p)
    if r is None:
        r = CycScalar.root(p)
        _ROOTS[p] = r
    return r


def multiply(x: Element, y: Element) -> Element:
    """Bilinear extension of the monomial product.

    >>> A, _, _ = heisenberg()
    >>> multiply(A.gen(1), A.gen(0)).support()
    [(1, 1, -1)]
    """
    if x.algebra is not y.algebra:
        raise InputError("elements belong to different algebras")
    alg = x.algebra
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            p, e = alg.unit_product(a, b)
            c = ca * cb
            if p != 0:
                c = c * _root(p)
            out[e] = out[e] + c if e in out else c
    return Element(alg, out)


def star(x: Element) -> Element:
    """Antilinear involution with (u^a)* = (u^a)^{-1}."""
    alg = x.algebra
    out = {}
    for a, c in x.terms.items():
        p, b = alg.inverse(a)
        v = c.conj()
        if p != 0:
            v = v * _root(p)
        out[b] = out[b] + v if b in out else v
    return Element(alg, out)


# ---------------------------------------------------------------------------
# gradings


class Grading:
    """Assignment of a degree in ``group`` to every monomial, linear in the
    exponent: deg(u^a) = phi(a).

    The constructor does not insist on multiplicativity; ``is_multiplicative``
    tests deg(u^a u^b) = deg(u^a) + deg(u^b).
    """

    def __init__(self, algebra: MonomialAlgebra, group: FgAbelianGroup, images, check: bool = True):
        self.algebra = algebra
        self.group = group
        if isinstance(images, GroupHom):
            self.hom = images
        else:
            imgs = [list(group(list(v)).coords) if not isinstance(v, GroupElement) else list(v.coords)
                    for v in images]
            if len(imgs) != algebra.E.rank:
                raise InputError("one degree per exponent generator is required")
            m = [[imgs[j][i] for j in range(len(imgs))] for i in range(group.rank)]
            self.hom = GroupHom(algebra.E, group, m, check=check)

    def degree(self, exp) -> GroupElement:
        return self.hom(self.algebra.E(list(exp)))

    def is_homogeneous(self, x: Element):
        degs = {self.degree(a) for a in x.terms}
        return len(degs) <= 1

    def multiplicativity_defect(self, exps=None):
        """First pair (a, b) whose product leaves the expected degree."""
        alg = self.algebra
        if exps is None:
            exps = [alg.generator_exp(i) for i in range(alg.ngens)]
            exps += [alg.exp([-x for x in e]) for e in exps]
            if not isinstance(alg, MonomialAlgebraSpec):
                exps += _box(alg.E, 1, 27)
        for a in exps:
            for b in exps:
                _, c = alg.unit_product(a, b)
                if self.degree(c) != self.degree(a) + self.degree(b):
                    return (a, b)
        return None

    def is_multiplicative(self, exps=None) -> bool:
        return self.multiplicativity_defect(exps) is None

    def component_exp(self, lam: GroupElement):
        """Some exponent of degree lam (an invertible monomial), or None."""
        pre = self.hom.preimage(lam)
        return None if pre is None else tuple(pre.coords)

    def kernel_generators(self) -> list:
        K, inc = self.hom.kernel()
        return [tuple(g.coords) for g in inc.images]

    def compose(self, f: GroupHom) -> "Grading":
        return Grading(self.algebra, f.target, f.compose(self.hom))

    def __repr__(self):
        return f"Grading({self.algebra!r} -> {self.group.describe()})"


def graded_component(x: Element, G: Grading, lam) -> Element:
    """Terms of x whose degree is lam."""
    if not isinstance(lam, GroupElement):
        lam = G.group(list(lam))
    return Element(x.algebra, {a: c for a, c in x.terms.items() if G.degree(a) == lam})


def strong_grading_check(G: Grading, window=None) -> bool:
    """Each lambda of the window (default: the generators of the grading
    group and their negatives) has an invertible monomial u^a of degree
    lambda whose inverse has degree -lambda."""
    if window is None:
        window = []
        for b in G.group.basis():
            window += [b, -b]
    alg = G.algebra
    for lam in window:
        if not isinstance(lam, GroupElement):
            lam = G.group(list(lam))
        a = G.component_exp(lam)
        if a is None:
            return False
        p, b = alg.inverse(a)
        if G.degree(b) != -lam:
            return False
        if alg.mul_units((ONE, a), (p, b)) != alg.one_unit():
            return False
    return True


# ---------------------------------------------------------------------------
# maps


class MonomialMap:
    """Multiplicative map sending generator u_i to the unit ``images[i]``
    (a (phase, exponent) pair in the target)."""

    def __init__(self, source: MonomialAlgebra, target: MonomialAlgebra, images):
        if len(images) != source.ngens:
            raise InputError("one image per generator is required")
        self.source = source
        self.target = target
        self.images = [(Phase(p), target.exp(e)) for p, e in images]

    def apply_unit(self, x) -> tuple:
        p, a = x
        a = tuple(a)
        cache = self.__dict__.setdefault("_unit_cache", {})
        img = cache.get(a)
        if img is None:
            ph, seq = self.source.word(a)
            img = (ph, self.target.zero_exp())
            for i, k in seq:
                img = self.target.mul_units(img, self.target.power(self.images[i], k))
            cache[a] = img
        return (_as_phase(p) + img[0], img[1])

    def __call__(self, x):
        if isinstance(x, Element):
            terms = {}
            for a, c in x.terms.items():
                p, b = self.apply_unit((ONE, a))
                v = c * _root(p) if p != 0 else c
                terms[b] = terms[b] + v if b in terms else v
            return Element(self.target, terms)
        return self.apply_unit(x)

    def homomorphism_defect(self, exps=None):
        src = self.source
        if exps is None:
            exps = [src.generator_exp(i) for i in range(src.ngens)]
            exps += [src.exp([-x for x in e]) for e in exps]
            if not isinstance(src, MonomialAlgebraSpec):
                exps += _box(src.E, 1, 27)
        for a in exps:
            for b in exps:
                lhs = self.target.mul_units(self.apply_unit((ONE, a)), self.apply_unit((ONE, b)))
                rhs = self.apply_unit(src.unit_product(a, b))
                if lhs != rhs:
                    return (a, b)
        for i, m in enumerate(src.E.invariants):
            if m and self.target.power(self.images[i], m) != self.target.one_unit():
                return (src.generator_exp(i), m)
        return None

    def is_homomorphism(self, exps=None) -> bool:
        return self.homomorphism_defect(exps) is None

    def linear_part(self) -> GroupHom:
        m = [[self.images[j][1][i] for j in range(self.source.ngens)] for i in range(self.target.E.rank)]
        return GroupHom(self.source.E, self.target.E, m, check=False)

    def compose(self, other: "MonomialMap") -> "MonomialMap":
        """self o other."""
        return MonomialMap(other.source, self.target, [self.apply_unit(x) for x in other.images])

    def __eq__(self, other):
        if not isinstance(other, MonomialMap):
            return NotImplemented
        return self.source is other.source and self.target is other.target and self.images == other.images

    __hash__ = None

    def __repr__(self):
        return f"MonomialMap({[(str(p), e) for p, e in self.images]})"


class MonomialAut(MonomialMap):
    """Automorphism u_i -> e(shift_i) u^{S e_i}."""

    def __init__(self, algebra: MonomialAlgebra, shifts=None, substitution=None, images=None, check: bool = True):
        n = algebra.ngens
        if images is None:
            shifts = [Phase(s) for s in (shifts or [0] * n)]
            if substitution is None:
                substitution = [[int(i == j) for j in range(n)] for i in range(n)]
            imgs = [(shifts[j], tuple(substitution[i][j] for i in range(algebra.E.rank))) for j in range(n)]
        else:
            imgs = images
        super().__init__(algebra, algebra, imgs)
        self.algebra = algebra
        if check:
            bad = self.homomorphism_defect()
            if bad is not None:
                raise InputError(f"map does not preserve the relations at {bad}")
            lin = self.linear_part()
            if not (lin.is_injective() and lin.is_surjective()):
                raise InputError("exponent substitution is not invertible")

    @classmethod
    def identity(cls, algebra: MonomialAlgebra) -> "MonomialAut":
        return cls(algebra, check=False)

    @classmethod
    def conjugation(cls, algebra: MonomialAlgebra, unit) -> "MonomialAut":
        """x -> s x s^{-1} for a unit s."""
        inv = algebra.inv_unit(unit)
        imgs = []
        for i in range(algebra.ngens):
            g = (ONE, algebra.generator_exp(i))
            imgs.append(algebra.mul_units(algebra.mul_units(unit, g), inv))
        return cls(algebra, images=imgs, check=False)

    def is_identity(self) -> bool:
        return all(x == (ONE, self.algebra.generator_exp(i)) for i, x in enumerate(self.images))

    def preserves(self, grading: Grading) -> bool:
        return all(grading.degree(x[1]) == grading.degree(self.algebra.generator_exp(i))
                   for i, x in enumerate(self.images))


# ---------------------------------------------------------------------------
# centers


class CentralUnits:
    """Unit group of the center of the subalgebra spanned by the exponents
    in a subgroup S of E (optionally cut down to the kernel of a grading).

    Every central unit is e(t) b_1^{x_1} ... b_r^{x_r} for basis units b_i
    normalised so that b_i^{o_i} = 1; coordinates are (t, x_1, ..., x_r)
    with t in Q/Z.
    """

    def __init__(self, algebra: MonomialAlgebra, sub_gens=None, degree_hom: GroupHom | None = None):
        self.algebra = algebra
        E = algebra.E
        if sub_gens is None:
            sub_gens = [algebra.generator_exp(i) for i in range(E.rank)]
        self.sub_gens = [E.reduce(list(g)) for g in sub_gens]
        S, inc = subgroup_generated(E, self.sub_gens)
        s_basis = [tuple(g.coords) for g in inc.images]
        # commutator data against the subalgebra generators
        P, K = [], []
        for a in s_basis:
            prow, krow = [], []
            for b in self.sub_gens:
                ph, ex = algebra.commutator(a, b)
                prow.append(ph.value)
                krow.append(ex)
            P.append(prow)
            K.append(krow)
        m = len(s_basis)
        den = lcm(*(v.denominator for row in P for v in row)) if P else 1
        rows, mods = [], []
        for j in range(len(self.sub_gens)):
            rows.append([int(P[i][j] * den) for i in range(m)])
            mods.append(den)
            for t, d in enumerate(E.invariants):
                rows.append([K[i][j][t] for i in range(m)])
                mods.append(d)
        if degree_hom is not None:
            for t, d in enumerate(degree_hom.target.invariants):
                rows.append([degree_hom(E(list(s_basis[i]))).coords[t] for i in range(m)])
                mods.append(d)
        gens = _lattice_kernel(rows, mods, m)
        cents = []
        for v in gens:
            el = E.zero()
            for c, b in zip(v, s_basis):
                if c:
                    el = el + E(list(b)) * c
            cents.append(list(el.coords))
        C, cinc = subgroup_generated(E, cents)
        self.C = C
        self.inclusion = cinc
        self.basis_exps = [tuple(g.coords) for g in cinc.images]
        self.orders = list(C.invariants)
        # normalise basis units and check that they multiply without corrections
        self.basis_units = []
        for c, o in zip(self.basis_exps, self.orders):
            unit = (ONE, c)
            if o:
                p, e = algebra.power(unit, o)
                if e != algebra.zero_exp():
                    raise Unsupported("central monomial has the wrong order")
                unit = (Phase(-p.value / o), c)
            self.basis_units.append(unit)
        for i, x in enumerate(self.basis_units):
            for j, y in enumerate(self.basis_units):
                if algebra.commutator(x[1], y[1]) != algebra.one_unit():
                    raise Unsupported("central basis units do not commute")
            for g in self.sub_gens:
                if algebra.commutator(x[1], g) != algebra.one_unit():
                    raise Unsupported("computed central monomial is not central (nonbilinear commutator)")
        for i, x in enumerate(self.basis_units):
            for j, y in enumerate(self.basis_units):
                _, e = algebra.unit_product(x[1], y[1])
                if e != E.reduce([a + b for a, b in zip(x[1], y[1])]):
                    raise Unsupported("products of central monomials carry corrections")
        self.moduli = [-1] + [o for o in self.orders]

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def describe(self) -> str:
        parts = ["Q/Z"] + [f"Z/{o}" if o else "Z" for o in self.orders]
        return " + ".join(parts)

    def from_coords(self, x) -> tuple:
        t = Phase(x[0])
        acc = (t, self.algebra.zero_exp())
        for xi, b in zip(x[1:], self.basis_units):
            if xi:
                acc = self.algebra.mul_units(acc, self.algebra.power(b, int(xi)))
        return acc

    def to_coords(self, unit) -> tuple:
        p, e = unit
        el = self.inclusion.preimage(self.algebra.E(list(e)))
        if el is None:
            raise InputError(f"unit with exponent {e} is not central")
        xs = list(el.coords)
        ref = self.from_coords([0] + xs)
        if ref[1] != tuple(e):
            raise InputError("central coordinates do not reproduce the exponent")
        return tuple([(Phase(p) - ref[0]).value] + [int(v) for v in xs])

    def is_central(self, e) -> bool:
        return self.inclusion.preimage(self.algebra.E(list(e))) is not None


def _lattice_kernel(rows, mods, m) -> list:
    """Integer vectors x in Z^m with rows . x = 0 modulo the row moduli."""
    if not rows or m == 0:
        return [[int(i == j) for i in range(m)] for j in range(m)]
    extra = [i for i, d in enumerate(mods) if d]
    big = [row + [mods[i] if i == e else 0 for e in extra] for i, row in enumerate(rows)]
    sol = solve_int(big, [0] * len(rows), ncols=m + len(extra))
    return [v[:m] for v in sol.kernel]


@dataclass
class FrohlichMap:
    """Action of conjugation on central units in coordinates."""
    center: CentralUnits
    matrix: list
    images: list

    def is_identity(self) -> bool:
        for i, row in enumerate(self.matrix):
            m = self.center.moduli[i]
            for j, v in enumerate(row):
                diff = Fraction(v) - int(i == j)
                if m == -1 and diff % 1:
                    return False
                if m == 0 and diff:
                    return False
                if m > 0 and (diff.denominator != 1 or int(diff) % m):
                    return False
        return True

    def apply(self, x) -> tuple:
        k = self.center.rank
        out = []
        for i in range(k):
            v = sum(Fraction(self.matrix[i][j]) * x[j] for j in range(k))
            m = self.center.moduli[i]
            out.append(v % 1 if m == -1 else (int(v) % m if m else int(v)))
        return tuple(out)


def conjugation_action(center: CentralUnits, host: MonomialAlgebra, embed: Callable, pull: Callable,
                       s_unit, side: str = "left") -> FrohlichMap:
    """Matrix of a -> s a s^{-1} (side='left') or s^{-1} a s (side='right')
    on central-unit coordinates.  ``embed`` and ``pull`` translate units
    between the center's algebra and the host algebra containing s."""
    s_inv = host.inv_unit(s_unit)
    left, right = (s_unit, s_inv) if side == "left" else (s_inv, s_unit)
    k = center.rank
    cols = [[Fraction(int(i == 0)) for i in range(k)]]
    images = []
    for b in center.basis_units:
        img = host.mul_units(host.mul_units(left, embed(b)), right)
        x = center.to_coords(pull(img))
        images.append(img)
        cols.append([Fraction(v) for v in x])
    matrix = [[cols[j][i] for j in range(k)] for i in range(k)]
    return FrohlichMap(center, matrix, images)


def frohlich(G: Grading, chi, side: str = "right", check_independence: bool = True) -> FrohlichMap:
    """Conjugation by an invertible monomial s of degree chi on the central
    units of the degree-0 subalgebra; side='right' is a -> s^{-1} a s.

    The answer does not depend on s: every other invertible monomial of
    degree chi differs from s by a degree-0 unit, which commutes with the
    center.  With ``check_independence`` the alternatives s u^k (k running
    over generators of the degree-0 exponents) are compared explicitly.
    """
    alg = G.algebra
    if not isinstance(chi, GroupElement):
        chi = G.group(list(chi))
    a = G.component_exp(chi)
    if a is None:
        raise Unsupported(f"degree {list(chi.coords)} has no invertible monomial")
    ker = G.kernel_generators()
    center = CentralUnits(alg, ker)
    ident = (lambda u: u)
    out = conjugation_action(center, alg, ident, ident, (ONE, a), side)
    if check_independence:
        for k in ker:
            other = alg.mul_units((ONE, a), (ONE, k))
            alt = conjugation_action(center, alg, ident, ident, other, side)
            if alt.matrix != out.matrix:
                raise Unsupported("conjugation on central units depends on the chosen monomial")
    return out


# ---------------------------------------------------------------------------
# factor systems


@dataclass
class FactorSystemReport:
    ok: bool
    failures: list = field(default_factory=list)
    checked: int = 0

    def __bool__(self):
        return self.ok

    @property
    def witness(self):
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked,
                "failures": [{"kind": f[0], "witness": _jsonable(f[1])} for f in self.failures]}


def _jsonable(x):
    if isinstance(x, GroupElement):
        return list(x.coords)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Phase):
        return str(x)
    return x


class CleftFactorSystem:
    """Factor system with one-dimensional multiplicity spaces: gamma maps
    Lambda to automorphisms of the base and omega maps pairs to units.

    ``gamma`` is a callable sigma -> MonomialAut (None for the identity);
    ``omega`` is a callable (sigma, pi) -> (phase, exponent).
    """

    def __init__(self, Lambda: FgAbelianGroup, base: MonomialAlgebra, gamma=None, omega=None, label=""):
        self.Lambda = Lambda
        self.base = base
        self._gamma = gamma
        self._omega = omega
        self.label = label
        self._gcache = {}

    def gamma_of(self, s) -> MonomialAut:
        if not isinstance(s, GroupElement):
            s = self.Lambda(list(s))
        if self._gamma is None:
            return MonomialAut.identity(self.base)
        key = s.coords
        if key not in self._gcache:
            g = self._gamma(s)
            self._gcache[key] = MonomialAut.identity(self.base) if g is None else g
        return self._gcache[key]

    def omega_of(self, s, p) -> tuple:
        if not isinstance(s, GroupElement):
            s = self.Lambda(list(s))
        if not isinstance(p, GroupElement):
            p = self.Lambda(list(p))
        if self._omega is None:
            return self.base.one_unit()
        ph, e = self._omega(s, p)
        return (Phase(ph), self.base.exp(e))

    def conjugate(self, v: Callable) -> "CleftFactorSystem":
        """(gamma', omega') = v (gamma, omega) v^*."""
        B = self.base

        def gamma(s):
            ad = MonomialAut.conjugation(B, v(s))
            return MonomialAut(B, images=ad.compose(self.gamma_of(s)).images, check=False)

        def omega(s, p):
            x = B.mul_units(v(s), self.gamma_of(s).apply_unit(v(p)))
            x = B.mul_units(x, self.omega_of(s, p))
            return B.mul_units(x, B.inv_unit(v(s + p)))

        return CleftFactorSystem(self.Lambda, B, gamma, omega, label=self.label + "^v")

    def to_matrix(self) -> "MatrixFactorSystem":
        B = self.base
        return MatrixFactorSystem(
            self.Lambda, B, lambda s: 1,
            lambda s, b: [[self.gamma_of(s)(b)]],
            lambda s, p: [[B.unit_element(self.omega_of(s, p))]],
        )


def _test_elements(Lambda: FgAbelianGroup, limit: int = 16) -> list:
    if Lambda.is_finite and Lambda.order <= limit:
        return enumerate_group(Lambda)
    radius = 2 if Lambda.rank <= 2 else 1
    ranges = []
    for d in Lambda.invariants:
        if d and d <= 4:
            ranges.append(range(d))
        else:
            ranges.append(range(-1, radius + 1) if radius == 2 else range(-1, 2))
    return [Lambda(list(c)) for c in itertools.product(*ranges)]


def check_cleft_factor_system(fs: CleftFactorSystem, elements=None, triples=None) -> FactorSystemReport:
    """Normalisation, gamma being automorphisms, the coaction identity
    omega(s, p) gamma_{s+p}(b) = gamma_s(gamma_p(b)) omega(s, p) on base
    generators, and the cocycle identity
    omega(s, p) omega(s+p, r) = gamma_s(omega(p, r)) omega(s, p+r)."""
    B = fs.base
    L = fs.Lambda
    els = list(elements) if elements is not None else _test_elements(L)
    fails = []
    checked = 0
    zero = L.zero()
    if not fs.gamma_of(zero).is_identity():
        fails.append(("normalization", [zero]))
    for s in els:
        checked += 2
        if fs.omega_of(zero, s) != B.one_unit() or fs.omega_of(s, zero) != B.one_unit():
            fails.append(("normalization", [s]))
        g = fs.gamma_of(s)
        bad = g.homomorphism_defect()
        if bad is not None:
            fails.append(("automorphism", [s, bad]))
    gens = [(ONE, B.generator_exp(i)) for i in range(B.ngens)]
    for s in els:
        for p in els:
            w = fs.omega_of(s, p)
            gsp = fs.gamma_of(s + p)
            gs, gp = fs.gamma_of(s), fs.gamma_of(p)
            for b in gens:
                checked += 1
                lhs = B.mul_units(w, gsp.apply_unit(b))
                rhs = B.mul_units(gs.apply_unit(gp.apply_unit(b)), w)
                if lhs != rhs:
                    fails.append(("coaction", [s, p, b[1]]))
    if triples is None:
        triples = itertools.product(els, els, els)
    for s, p, r in triples:
        checked += 1
        lhs = B.mul_units(fs.omega_of(s, p), fs.omega_of(s + p, r))
        rhs = B.mul_units(fs.gamma_of(s).apply_unit(fs.omega_of(p, r)), fs.omega_of(s, p + r))
        if lhs != rhs:
            fails.append(("cocycle", [s, p, r]))
            if len(fails) > 20:
                break
    return FactorSystemReport(not fails, fails, checked)


def build_from_factor_system(fs: CleftFactorSystem, check: bool = True):
    """(CrossedProduct, Lambda-grading).  Refuses systems that fail the
    identities, quoting the first witness."""
    if check:
        rep = check_cleft_factor_system(fs)
        if not rep.ok:
            kind, wit = rep.failures[0]
            raise InputError(f"factor system fails the {kind} identity at {_jsonable(wit)}")
    alg = CrossedProduct(fs)
    nb = fs.base.E.rank
    imgs = [[0] * fs.Lambda.rank for _ in range(nb)]
    imgs += [[int(i == j) for j in range(fs.Lambda.rank)] for i in range(fs.Lambda.rank)]
    return alg, Grading(alg, fs.Lambda, imgs)


def check_conjugacy(v: Callable, fs: CleftFactorSystem, fs2: CleftFactorSystem, elements=None) -> bool:
    """The three identities of conjugacy for a unit family v (v(0) = 1)."""
    B = fs.base
    if fs2.base is not B:
        raise InputError("factor systems live over different base algebras")
    L = fs.Lambda
    els = list(elements) if elements is not None else _test_elements(L)
    if tuple(v(L.zero())) != B.one_unit():
        return False
    gens = [(ONE, B.generator_exp(i)) for i in range(B.ngens)]
    for s in els:
        vs = v(s)
        vs_inv = B.inv_unit(vs)
        for b in gens:
            left = B.mul_units(B.mul_units(vs, fs.gamma_of(s).apply_unit(b)), vs_inv)
            if left != fs2.gamma_of(s).apply_unit(b):
                return False
            back = B.mul_units(B.mul_units(vs_inv, fs2.gamma_of(s).apply_unit(b)), vs)
            if back != fs.gamma_of(s).apply_unit(b):
                return False
    for s in els:
        for p in els:
            lhs = B.mul_units(B.mul_units(v(s), fs.gamma_of(s).apply_unit(v(p))), fs.omega_of(s, p))
            rhs = B.mul_units(fs2.omega_of(s, p), v(s + p))
            if lhs != rhs:
                return False
    return True


class MatrixFactorSystem:
    """General factor system over a finite Lambda: dims n_s, gamma_s(b) an
    n_s x n_s matrix over the base, omega(s, p) an (n_s n_p) x n_{s+p}
    matrix (rows indexed by i * n_p + j)."""

    def __init__(self, Lambda: FgAbelianGroup, base: MonomialAlgebra, dims: Callable, gamma: Callable,
                 omega: Callable, test_elements=None):
        if not Lambda.is_finite or Lambda.order > 16:
            raise InputError("matrix factor systems need a finite grading group of order at most 16")
        self.Lambda = Lambda
        self.base = base
        self.dims = dims
        self.gamma = gamma
        self.omega = omega
        self.test_elements = test_elements

    def dim(self, s) -> int:
        return int(self.dims(s))

    def gamma_matrix(self, s, X):
        """gamma_s applied entrywise to an r x c matrix, giving an
        (n_s r) x (n_s c) matrix with the n_s index outermost."""
        n = self.dim(s)
        r = len(X)
        c = len(X[0]) if X else 0
        out = [[None] * (n * c) for _ in range(n * r)]
        for j in range(r):
            for jj in range(c):
                G = self.gamma(s, X[j][jj])
                _shape(G, n, n, "gamma")
                for i in range(n):
                    for ii in range(n):
                        out[i * r + j][ii * c + jj] = G[i][ii]
        return out


def _shape(M, r, c, what):
    if len(M) != r or any(len(row) != c for row in M):
        raise InputError(f"{what} has shape {len(M)} x {len(M[0]) if M else 0}, expected {r} x {c}")


def _mat_mul(A, B, zero):
    r = len(A)
    c = len(B[0]) if B else 0
    inner = len(B)
    out = []
    for i in range(r):
        row = []
        for j in range(c):
            acc = zero
            for t in range(inner):
                a = A[i][t]
                b = B[t][j]
                if a.terms and b.terms:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def _mat_star(A):
    r = len(A)
    c = len(A[0]) if A else 0
    return [[star(A[i][j]) for i in range(r)] for j in range(c)]


def _mat_eq(A, B):
    return len(A) == len(B) and all(len(a) == len(b) and all(x == y for x, y in zip(a, b)) for a, b in zip(A, B))


def _kron_id(A, n, zero):
    """A tensor 1_n with the A index outermost."""
    r = len(A)
    c = len(A[0]) if A else 0
    out = [[zero] * (c * n) for _ in range(r * n)]
    for i in range(r):
        for j in range(c):
            for k in range(n):
                out[i * n + k][j * n + k] = A[i][j]
    return out


def check_matrix_factor_system(mfs: MatrixFactorSystem) -> FactorSystemReport:
    """Exact check of the range, coaction and cocycle identities together
    with the normalisation conditions, over all of Lambda."""
    B = mfs.base
    L = mfs.Lambda
    one, zero = B.one(), B.zero()
    els = enumerate_group(L)
    tests = mfs.test_elements or ([one] + [B.gen(i) for i in range(B.ngens)])
    fails = []
    checked = 0
    z = L.zero()
    if mfs.dim(z) != 1:
        fails.append(("normalization", [z]))
    for b in tests:
        if not _mat_eq(mfs.gamma(z, b), [[b]]):
            fails.append(("normalization", [z]))
            break
    om = {}
    for s in els:
        for p in els:
            W = mfs.omega(s, p)
            _shape(W, mfs.dim(s) * mfs.dim(p), mfs.dim(s + p), f"omega({list(s.coords)}, {list(p.coords)})")
            om[(s.coords, p.coords)] = W
    for s in els:
        g1 = mfs.gamma(s, one)
        if not _mat_eq(om[(z.coords, s.coords)], g1) or not _mat_eq(om[(s.coords, z.coords)], g1):
            fails.append(("normalization", [s]))
    for s in els:
        for p in els:
            W = om[(s.coords, p.coords)]
            Ws = _mat_star(W)
            checked += 2
            if not _mat_eq(_mat_mul(Ws, W, zero), mfs.gamma(s + p, one)):
                fails.append(("range", [s, p, "omega^* omega"]))
            if not _mat_eq(_mat_mul(W, Ws, zero), mfs.gamma_matrix(s, mfs.gamma(p, one))):
                fails.append(("range", [s, p, "omega omega^*"]))
            for b in tests:
                checked += 1
                lhs = _mat_mul(W, mfs.gamma(s + p, b), zero)
                rhs = _mat_mul(mfs.gamma_matrix(s, mfs.gamma(p, b)), W, zero)
                if not _mat_eq(lhs, rhs):
                    fails.append(("coaction", [s, p]))
                    break
    for s in els:
        for p in els:
            for r in els:
                checked += 1
                lhs = _mat_mul(_kron_id(om[(s.coords, p.coords)], mfs.dim(r), zero), om[((s + p).coords, r.coords)], zero)
                rhs = _mat_mul(mfs.gamma_matrix(s, om[(p.coords, r.coords)]), om[(s.coords, (p + r).coords)], zero)
                if not _mat_eq(lhs, rhs):
                    fails.append(("cocycle", [s, p, r]))
    return FactorSystemReport(not fails, fails, checked)


# ---------------------------------------------------------------------------
# serialisation


def group_to_json(G: FgAbelianGroup) -> dict:
    return {"torsion": [d for d in G.invariants if d], "free_rank": G.free_rank,
            "coordinates": list(G.invariants)}


def group_from_json(obj) -> FgAbelianGroup:
    """Groups are {"coordinates": [...]}, {"torsion": [...], "free_rank": r}
    (coordinates in that order) or {"generators": n, "relations": R}."""
    from .abgroup import FgAbelianGroup as _G

    if not isinstance(obj, dict):
        raise InputError(f"group literal must be an object, got {obj!r}")
    try:
        if "coordinates" in obj:
            return coordinate_group(obj["coordinates"])
        if "generators" in obj:
            return _G(int(obj["generators"]), obj.get("relations") or [])
        tors = [int(d) for d in obj.get("torsion", [])]
        if any(d < 2 for d in tors):
            raise InputError("torsion orders must be at least 2")
        return coordinate_group(tors + [0] * int(obj.get("free_rank", 0)))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad group literal {obj!r}: {exc}") from exc


def algebra_from_json(obj) -> MonomialAlgebraSpec:
    try:
        E = group_from_json(obj["exponent_group"])
        theta = obj.get("theta") or [[0] * E.rank for _ in range(E.rank)]
        corr = {}
        for c in obj.get("corrections", []):
            corr[(int(c["k"]) - 1, int(c["l"]) - 1)] = tuple(int(v) for v in c["vector"])
        return MonomialAlgebraSpec(E, theta, corr, obj.get("conductor"), obj.get("names"))
    except KeyError as exc:
        raise InputError(f"algebra literal is missing {exc}") from exc


def element_from_json(algebra: MonomialAlgebra, obj) -> Element:
    if not isinstance(obj, list):
        raise InputError("element literal must be a list of terms")
    terms = {}
    for t in obj:
        try:
            a = algebra.exp(t["exp"])
            c = CycScalar.from_json(t.get("coeff", 1))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad term {t!r}") from exc
        terms[a] = terms[a] + c if a in terms else c
    return Element(algebra, terms)
