"""Finitely generated abelian groups in Smith normal form, homomorphisms,
finite duals with their character pairing, and short exact sequences
0 -> G* -> Ghat* -> Z* -> 0 of discrete (dual) groups.

A group is presented by ``n`` generators and a relation matrix whose
columns are relations.  Elements are stored in *normal-form coordinates*:
one coordinate per nontrivial invariant factor (reduced modulo it),
followed by one integer coordinate per free summand.

>>> A = group_from_relations(2, [[2, 0], [0, 3]])
>>> A.invariants
(6,)
>>> A.order
6
"""

from __future__ import annotations

import itertools
import math
import os
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import (
    InputError,
    Phase,
    SizeError,
    Unsupported,
    identity,
    snf,
    solve_int,
)

__all__ = [
    "FgAbelianGroup",
    "GroupElement",
    "GroupHom",
    "ExtensionSeq",
    "group_from_relations",
    "cyclic",
    "free",
    "direct_sum",
    "dual_finite",
    "dual_hom",
    "pair",
    "enumerate_group",
    "coordinate_group",
    "extension_from_lattice",
    "max_group_order",
]

DEFAULT_MAX_ORDER = 4096


def max_group_order() -> int:
    """Enumeration bound; ``NCLIFT_MAX_GROUP_ORDER`` overrides the default."""
    raw = os.environ.get("NCLIFT_MAX_GROUP_ORDER")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_MAX_ORDER


class FgAbelianGroup:
    """Z^n modulo the column span of ``relations``."""

    def __init__(self, n: int, relations: Sequence[Sequence[int]] = (), name: str | None = None):
        if n < 0:
            raise InputError("generator count must be non-negative")
        rel = [list(map(int, r)) for r in relations]
        if rel and len(rel) != n:
            raise InputError(f"relation matrix has {len(rel)} rows, expected {n}")
        if not rel:
            rel = [[] for _ in range(n)]
        ncols = len(rel[0]) if rel else 0
        if any(len(r) != ncols for r in rel):
            raise InputError("ragged relation matrix")
        self.ngens = n
        self.relations = tuple(tuple(r) for r in rel)
        self.name = name
        if n == 0:
            self._to_nf = []
            self._from_nf = []
            self.invariants = ()
            return
        if ncols:
            res = snf(rel, inverses=True)
            diag = res.diagonal
            U, Ui = res.U, res.Uinv
        else:
            diag, U, Ui = [], identity(n), identity(n)
        diag = diag + [0] * (n - len(diag))
        keep = [i for i in range(n) if diag[i] != 1]
        # torsion first (ascending chain), then free coordinates
        tors = [i for i in keep if diag[i] > 1]
        frees = [i for i in keep if diag[i] == 0]
        order = tors + frees
        self.invariants = tuple(diag[i] for i in tors) + (0,) * len(frees)
        self._to_nf = [list(U[i]) for i in order]
        self._from_nf = [[Ui[r][i] for i in order] for r in range(n)]

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_invariants(cls, torsion: Iterable[int] = (), free_rank: int = 0, name=None):
        torsion = [int(d) for d in torsion]
        if any(d < 1 for d in torsion) or free_rank < 0:
            raise InputError("torsion orders must be positive and free rank non-negative")
        n = len(torsion) + free_rank
        rel = [[torsion[i] if i == j else 0 for j in range(len(torsion))] for i in range(n)]
        return cls(n, rel if torsion else [], name=name)

    # -- structure ------------------------------------------------------------

    @property
    def rank(self) -> int:
        """Number of normal-form coordinates."""
        return len(self.invariants)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.invariants if d)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        if not self.is_finite:
            return math.inf
        return math.prod(self.invariants)

    @property
    def exponent(self) -> int:
        if not self.is_finite:
            return 0
        out = 1
        for d in self.invariants:
            out = out * d // math.gcd(out, d)
        return out

    def is_trivial(self) -> bool:
        return self.rank == 0

    def canonical_invariants(self) -> tuple:
        """Invariant factors in the divisibility-chain normal form."""
        inv, n = self.invariants, self.rank
        return FgAbelianGroup(n, [[inv[i] if i == j else 0 for j in range(n)] for i in range(n)]).invariants

    def isomorphic(self, other: "FgAbelianGroup") -> bool:
        return self.canonical_invariants() == other.canonical_invariants()

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FgAbelianGroup({self.describe()})"

    def __eq__(self, other):
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return self.ngens == other.ngens and self.relations == other.relations

    def __hash__(self):
        return hash((self.ngens, self.relations))

    # -- coordinates ----------------------------------------------------------

    def reduce(self, coords: Sequence[int]) -> tuple:
        if len(coords) != self.rank:
            raise InputError(f"expected {self.rank} normal-form coordinates, got {len(coords)}")
        return tuple(int(c) % d if d else int(c) for c, d in zip(coords, self.invariants))

    def __call__(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    def from_generators(self, x: Sequence[int]) -> "GroupElement":
        """Element given by integer coefficients on the presentation generators."""
        if len(x) != self.ngens:
            raise InputError(f"expected {self.ngens} generator coefficients")
        return self([sum(r * v for r, v in zip(row, x)) for row in self._to_nf])

    def generator_image(self, i: int) -> "GroupElement":
        return self.from_generators([int(i == j) for j in range(self.ngens)])

    def to_generators(self, el: "GroupElement") -> list:
        """Integer coefficients on the presentation generators (one choice)."""
        return [sum(r * v for r, v in zip(row, el.coords)) for row in self._from_nf]

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def basis(self) -> list:
        """The normal-form generators (one per invariant factor)."""
        return [self([int(i == j) for j in range(self.rank)]) for i in range(self.rank)]

    def elements(self) -> list:
        return enumerate_group(self)

    def index_of(self, el: "GroupElement") -> int:
        """Position of ``el`` in ``elements()`` (finite groups)."""
        idx = 0
        for c, d in zip(el.coords, self.invariants):
            idx = idx * d + c
        return idx


class GroupElement:
    """An element of a FgAbelianGroup, in reduced normal-form coordinates."""

    __slots__ = ("group", "coords")

    def __init__(self, group: FgAbelianGroup, coords: tuple):
        self.group = group
        self.coords = tuple(coords)

    def _other(self, other):
        if isinstance(other, GroupElement):
            if other.group is not self.group and other.group != self.group:
                raise InputError("elements of different groups")
            return other.coords
        return self.group.reduce(other)

    def __add__(self, other):
        o = self._other(other)
        return self.group([a + b for a, b in zip(self.coords, o)])

    def __sub__(self, other):
        o = self._other(other)
        return self.group([a - b for a, b in zip(self.coords, o)])

    def __neg__(self):
        return self.group([-a for a in self.coords])

    def __mul__(self, k: int):
        return self.group([a * int(k) for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, GroupElement):
            return self.group == other.group and self.coords == other.coords
        if isinstance(other, (tuple, list)):
            return self.coords == self.group.reduce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self):
        if any(c and d == 0 for c, d in zip(self.coords, self.group.invariants)):
            return math.inf
        out = 1
        for c, d in zip(self.coords, self.group.invariants):
            if d:
                k = d // math.gcd(c, d)
                out = out * k // math.gcd(out, k)
        return out

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"{list(self.coords)}"


def group_from_relations(n: int, R) -> FgAbelianGroup:
    """Group with n generators and relation columns R (an n x m matrix)."""
    return FgAbelianGroup(n, R)


def cyclic(d: int) -> FgAbelianGroup:
    return FgAbelianGroup.from_invariants([d])


def free(r: int) -> FgAbelianGroup:
    return FgAbelianGroup.from_invariants([], r)


def direct_sum(*groups: FgAbelianGroup) -> FgAbelianGroup:
    """External direct sum on the normal-form generators of the summands
    (so coordinates concatenate, up to the resorting of invariants)."""
    torsion = [d for g in groups for d in g.invariants]
    n = len(torsion)
    rel = [[torsion[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return FgAbelianGroup(n, rel)


def coordinate_group(moduli: Sequence[int], name: str | None = None) -> FgAbelianGroup:
    """Direct product of cyclic groups kept in the given coordinate order
    (0 meaning Z).  Unlike ``FgAbelianGroup`` no Smith normalisation takes
    place, so Z/2 x Z/3 stays two coordinates.

    >>> coordinate_group([2, 3]).describe()
    'Z/2 + Z/3'
    """
    moduli = [int(m) for m in moduli]
    if any(m < 0 or m == 1 for m in moduli):
        raise InputError("coordinate moduli must be 0 or at least 2")
    n = len(moduli)
    G = FgAbelianGroup.__new__(FgAbelianGroup)
    G.ngens = n
    G.relations = tuple(tuple(moduli[i] if i == j else 0 for j in range(n)) for i in range(n))
    G.name = name
    G.invariants = tuple(moduli)
    G._to_nf = identity(n)
    G._from_nf = identity(n)
    return G


def enumerate_group(A: FgAbelianGroup) -> list:
    """All elements in normal form, in lexicographic coordinate order."""
    if not A.is_finite:
        raise SizeError(f"cannot enumerate the infinite group {A.describe()}")
    bound = max_group_order()
    if A.order > bound:
        raise SizeError(f"group of order {A.order} exceeds the enumeration bound {bound}")
    return [GroupElement(A, c) for c in itertools.product(*(range(d) for d in A.invariants))]


class GroupHom:
    """Homomorphism between FgAbelianGroups.

    ``matrix`` has one column per source generator.  With ``basis='normal'``
    (the default for internally built maps) rows and columns refer to
    normal-form coordinates; with ``basis='generators'`` they refer to the
    presentation generators.
    """

    def __init__(self, source: FgAbelianGroup, target: FgAbelianGroup, matrix, basis: str = "normal",
                 check: bool = True):
        self.source = source
        self.target = target
        m = [list(map(int, r)) for r in matrix]
        if basis == "generators":
            if len(m) != target.ngens or any(len(r) != source.ngens for r in m):
                raise InputError("hom matrix shape does not match generator counts")
            cols = []
            for j in range(source.rank):
                xs = [source._from_nf[i][j] for i in range(source.ngens)]
                img = [sum(m[r][i] * xs[i] for i in range(source.ngens)) for r in range(target.ngens)]
                cols.append(target.from_generators(img).coords)
            m = [[cols[j][i] for j in range(source.rank)] for i in range(target.rank)]
        elif basis != "normal":
            raise InputError(f"unknown basis {basis!r}")
        if len(m) != target.rank or any(len(r) != source.rank for r in m):
            raise InputError("hom matrix shape does not match normal-form ranks")
        self.images = [target([m[i][j] for i in range(target.rank)]) for j in range(source.rank)]
        self.matrix = [[self.images[j].coords[i] for j in range(source.rank)] for i in range(target.rank)]
        if check:
            for j, d in enumerate(source.invariants):
                if d and not (self.images[j] * d).is_zero():
                    raise InputError(f"matrix does not respect the relation of order {d} on generator {j}")

    def __call__(self, el) -> GroupElement:
        if not isinstance(el, GroupElement):
            el = self.source(el)
        acc = [0] * self.target.rank
        for c, img in zip(el.coords, self.images):
            if c:
                for i, v in enumerate(img.coords):
                    acc[i] += c * v
        return self.target(acc)

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other."""
        imgs = [self(other.images[j]).coords for j in range(other.source.rank)]
        m = [[imgs[j][i] for j in range(other.source.rank)] for i in range(self.target.rank)]
        return GroupHom(other.source, self.target, m)

    def _lattice(self):
        # columns: images of source generators, then target relations
        cols = [list(img.coords) for img in self.images]
        for i, d in enumerate(self.target.invariants):
            if d:
                cols.append([d if k == i else 0 for k in range(self.target.rank)])
        return cols

    def kernel(self) -> tuple:
        """(K, inclusion K -> source)."""
        cols = self._lattice()
        n = self.source.rank
        if self.target.rank == 0:
            gens = [[int(i == j) for i in range(n)] for j in range(n)]
        else:
            A = [[c[i] for c in cols] for i in range(self.target.rank)]
            sol = solve_int(A, [0] * self.target.rank, ncols=len(cols))
            gens = [v[:n] for v in sol.kernel]
        return subgroup_generated(self.source, gens)

    def image(self) -> tuple:
        return subgroup_generated(self.target, [list(img.coords) for img in self.images])

    def is_injective(self) -> bool:
        return self.kernel()[0].is_trivial()

    def is_surjective(self) -> bool:
        return self.cokernel().is_trivial()

    def cokernel(self) -> FgAbelianGroup:
        cols = self._lattice()
        r = self.target.rank
        if r == 0:
            return FgAbelianGroup(0)
        return FgAbelianGroup(r, [[c[i] for c in cols] for i in range(r)] if cols else [])

    def preimage(self, el: GroupElement):
        """Some source element mapping to ``el``, or None."""
        cols = self._lattice()
        r = self.target.rank
        if r == 0:
            return self.source.zero()
        A = [[c[i] for c in cols] for i in range(r)]
        sol = solve_int(A, list(el.coords), ncols=len(cols))
        if sol is None:
            return None
        return self.source(sol.particular[: self.source.rank])

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.images == other.images

    def __repr__(self):
        return f"GroupHom({self.source.describe()} -> {self.target.describe()}, {self.matrix})"


def subgroup_generated(A: FgAbelianGroup, gens) -> tuple:
    """(S, inclusion S -> A) for the subgroup generated by the given
    normal-form coordinate vectors."""
    gens = [list(A.reduce(g)) for g in gens]
    s = len(gens)
    if s == 0:
        S = FgAbelianGroup(0)
        return S, GroupHom(S, A, [[] for _ in range(A.rank)])
    cols = [g for g in gens]
    for i, d in enumerate(A.invariants):
        if d:
            cols.append([d if k == i else 0 for k in range(A.rank)])
    if A.rank:
        M = [[c[i] for c in cols] for i in range(A.rank)]
        sol = solve_int(M, [0] * A.rank, ncols=len(cols))
        rel = [v[:s] for v in sol.kernel]
    else:
        rel = [[int(i == j) for i in range(s)] for j in range(s)]
    R = [[r[i] for r in rel] for i in range(s)] if rel else []
    S = FgAbelianGroup(s, R)
    # inclusion on generators: generator j -> gens[j]
    gm = [[gens[j][i] for j in range(s)] for i in range(A.rank)]
    images = []
    for j in range(S.rank):
        xs = [S._from_nf[i][j] for i in range(s)]
        images.append(A([sum(gm[r][i] * xs[i] for i in range(s)) for r in range(A.rank)]).coords)
    m = [[images[j][i] for j in range(S.rank)] for i in range(A.rank)]
    return S, GroupHom(S, A, m)


# ---------------------------------------------------------------------------
# duality


def dual_finite(A: FgAbelianGroup) -> tuple:
    """(A*, pairing) for a finite group; A* has the same invariants and the
    pairing is <chi, a> = sum_i chi_i a_i / d_i in Q/Z.

    >>> D, p = dual_finite(cyclic(3))
    >>> p(D([1]), cyclic(3)([2]))
    Phase('2/3')
    """
    if not A.is_finite:
        raise Unsupported("duals of infinite groups are handled on the lattice side")
    D = FgAbelianGroup.from_invariants(A.invariants)
    D.dual_of = A
    if not hasattr(A, "dual_of"):
        A.dual_of = D

    def pairing(chi: GroupElement, a: GroupElement) -> Phase:
        return pair(chi, a)

    return D, pairing


def pair(chi: GroupElement, a: GroupElement) -> Phase:
    """Character pairing between normal-form coordinates of groups with the
    same invariants (a finite group and its dual)."""
    if chi.group.invariants != a.group.invariants:
        raise InputError("character and element belong to non-dual groups")
    if not chi.group.is_finite:
        raise Unsupported("pairing is only defined for finite groups")
    return Phase(sum(Fraction(x * y, d) for x, y, d in zip(chi.coords, a.coords, chi.group.invariants)))


def dual_hom(f: GroupHom, source_dual: FgAbelianGroup | None = None,
             target_dual: FgAbelianGroup | None = None) -> GroupHom:
    """The transpose f*: B* -> A* of f: A -> B (finite groups), defined by
    <f*(beta), a> = <beta, f(a)>."""
    A, B = f.source, f.target
    if not (A.is_finite and B.is_finite):
        raise Unsupported("dual homs need finite groups")
    Ad = source_dual or dual_finite(A)[0]
    Bd = target_dual or dual_finite(B)[0]
    d = A.invariants
    e = B.invariants
    m = [[0] * B.rank for _ in range(A.rank)]
    for i in range(A.rank):
        for j in range(B.rank):
            num = f.matrix[j][i] * d[i]
            if num % e[j]:
                raise InputError("map is not well defined on the relations")
            m[i][j] = num // e[j]
    return GroupHom(Bd, Ad, m)


# ---------------------------------------------------------------------------
# extensions


class ExtensionSeq:
    """0 -> Gstar --inc--> Ghatstar --proj--> Zstar -> 0 (exactness checked)."""

    def __init__(self, inc: GroupHom, proj: GroupHom, check: bool = True):
        if inc.target != proj.source:
            raise InputError("inc and proj do not compose")
        self.inc = inc
        self.proj = proj
        self.Gstar = inc.source
        self.Ghatstar = inc.target
        self.Zstar = proj.target
        self.Z = None  # filled by builders that know the primal group
        if check:
            problems = self.exactness_defects()
            if problems:
                raise InputError("sequence is not exact: " + "; ".join(problems))

    def exactness_defects(self) -> list:
        out = []
        if not self.inc.is_injective():
            out.append("inc is not injective")
        if not self.proj.is_surjective():
            out.append("proj is not surjective")
        comp = self.proj.compose(self.inc)
        if any(not img.is_zero() for img in comp.images):
            out.append("proj o inc is nonzero")
        K, kinc = self.proj.kernel()
        for g in kinc.images:
            if self.inc.preimage(g) is None:
                out.append(f"kernel element {g} of proj is not in the image of inc")
                break
        return out

    def is_exact(self) -> bool:
        return not self.exactness_defects()

    def section(self, chi: GroupElement) -> GroupElement:
        """A preimage of chi under proj, linear on normal-form generators."""
        acc = self.Ghatstar.zero()
        for c, b in zip(chi.coords, self._section_basis()):
            acc = acc + b * c
        return acc

    def _section_basis(self):
        if not hasattr(self, "_sec"):
            sec = []
            for b in self.Zstar.basis():
                pre = self.proj.preimage(b)
                if pre is None:
                    raise InputError("proj is not surjective")
                sec.append(pre)
            self._sec = sec
        return self._sec

    def finite_model(self) -> "FiniteModel":
        return FiniteModel(self)

    def __repr__(self):
        return (f"ExtensionSeq(0 -> {self.Gstar.describe()} -> {self.Ghatstar.describe()} -> "
                f"{self.Zstar.describe()} -> 0)")


class FiniteModel:
    """The primal side of a finite extension: groups G, Ghat, Z with
    q: Ghat -> G and iota: Z -> Ghat obtained by dualising inc and proj."""

    def __init__(self, ext: ExtensionSeq):
        if not ext.Ghatstar.is_finite:
            raise Unsupported("the primal finite model needs a finite Ghat*")
        self.ext = ext
        self.G = dual_finite(ext.Gstar)[0]
        self.Ghat = dual_finite(ext.Ghatstar)[0]
        self.Z = dual_finite(ext.Zstar)[0]
        self.q = dual_hom(ext.inc, self.G, self.Ghat)
        self.iota = dual_hom(ext.proj, self.Ghat, self.Z)

    def chi_of_z(self, chi: GroupElement, z: GroupElement) -> Phase:
        """chi(z) for chi in Z*, z in Z."""
        return pair(chi, z)

    def ghat_pairing(self, xi: GroupElement, gh: GroupElement) -> Phase:
        """<xi, ghat> for xi in Ghat*, ghat in Ghat."""
        return pair(xi, gh)

    def g_pairing(self, lam: GroupElement, g: GroupElement) -> Phase:
        """<lambda, g> for lambda in G*, g in G."""
        return pair(lam, g)

    def lift(self, g: GroupElement) -> GroupElement:
        pre = self.q.preimage(g)
        if pre is None:
            raise InputError("q is not surjective")
        return pre


def extension_from_lattice(M, n: int | None = None) -> ExtensionSeq:
    """Dual sequence of 1 -> Z^n/Gamma -> R^n/Gamma -> R^n/Z^n -> 1 for
    Gamma = M Z^n.  Ghat* = (M^T)^{-1} Z^n is written in the coordinates b
    of xi = (M^T)^{-1} b, so that inc = M^T and proj is the quotient map
    onto Z^n / M^T Z^n.  The primal Z = Z^n / M Z^n is attached as ``Z``.

    >>> extension_from_lattice([[2, 0], [0, 2]]).Zstar.describe()
    'Z/2 + Z/2'
    """
    from .exact import det, transpose

    M = [list(map(int, r)) for r in M]
    n = n if n is not None else len(M)
    if len(M) != n or any(len(r) != n for r in M):
        raise InputError("M must be a square n x n integer matrix")
    if det(M) == 0:
        raise InputError("M must be invertible")
    Mt = transpose(M)
    Gs = free(n)
    Gh = free(n)
    Zs = FgAbelianGroup(n, Mt)
    inc = GroupHom(Gs, Gh, Mt)
    proj = GroupHom(Gh, Zs, identity(n), basis="generators")
    ext = ExtensionSeq(inc, proj)
    ext.Z = FgAbelianGroup(n, M)
    ext.lattice = M
    return ext
