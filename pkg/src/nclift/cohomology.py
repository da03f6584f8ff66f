"""Cohomology of finitely generated abelian groups with twisted coefficients.

Coefficient modules are finite direct sums of copies of Q/Z, Z and Z/m,
written in coordinates.  A group element acts by an integer matrix, except
that rows belonging to a Q/Z coordinate may pick up rational multiples of
the integer-type coordinates (this is how conjugation by a unitary mixes a
phase into a central monomial).

For a finite acting group everything is computed from the normalized bar
complex by Smith normal form.  Q/Z coordinates are handled through the
finite levels (1/L)Z/Z: in degrees >= 2 the answer is the image of the
level-L group in the level-L|A| group, provided L is divisible by |A| and by
the denominators of the action (a short argument with the long exact
sequence of 0 -> M_L -> M -> M/M_L -> 0).  Coboundary questions are always
answered exactly with the mixed solver.

For infinite groups only the trivial action is supported, through the
universal coefficient formula H^2(A, M) = Hom(wedge^2 A, M) + Ext(A, M).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .abgroup import FgAbelianGroup, GroupElement, GroupHom, enumerate_group, subgroup_generated
from .exact import (
    DIV,
    InputError,
    NoSolution,
    SizeError,
    Unsupported,
    format_rat,
    lcm,
    parse_rat,
    snf,
    snf_mod,
    solve_int,
    solve_mixed,
)

__all__ = [
    "DIV",
    "CoeffModule",
    "Cochain",
    "CohomologyGroup",
    "differential",
    "cohomology_group",
    "crossed_homs",
    "h2_structural",
    "ext_group",
    "is_coboundary",
    "inflate",
    "bar_matrix",
]

# dense bar matrices beyond this many entries are refused
MAX_BAR_ENTRIES = 12_000_000


def _fmod1(x) -> Fraction:
    x = Fraction(x)
    return x - math.floor(x)


def _kind_name(m: int) -> str:
    if m == DIV:
        return "Q/Z"
    if m == 0:
        return "Z"
    return f"Z/{m}"


class CoeffModule:
    """A module over an abelian group ``A``, in coordinates.

    ``moduli`` lists the coordinate types (DIV for Q/Z, 0 for Z, m for Z/m).
    ``action`` holds one square matrix per normal-form generator of A.
    """

    def __init__(self, group: FgAbelianGroup, moduli: Sequence[int], action=None, names=None,
                 check: bool = True):
        self.group = group
        self.moduli = tuple(int(m) for m in moduli)
        if any(m == 1 or m < DIV for m in self.moduli):
            raise InputError("coordinate moduli must be DIV, 0 or >= 2")
        k = len(self.moduli)
        if action is None:
            action = [_eye(k) for _ in range(group.rank)]
        if len(action) != group.rank:
            raise InputError(f"need one action matrix per generator ({group.rank})")
        self.action = [self._reduce_matrix([[Fraction(v) for v in row] for row in mat]) for mat in action]
        self.names = list(names) if names else [_kind_name(m) for m in self.moduli]
        self._table = None
        if check:
            self._check()

    # -- basic constructors -------------------------------------------------

    @classmethod
    def cyclic(cls, group: FgAbelianGroup, N: int, multipliers: Sequence[int] | None = None):
        """mu_N with generator i acting by x -> multipliers[i] * x."""
        mult = list(multipliers) if multipliers is not None else [1] * group.rank
        if N == 1:
            raise InputError("mu_1 is the zero module; use a trivial module instead")
        return cls(group, [N], [[[m]] for m in mult])

    @classmethod
    def divisible(cls, group: FgAbelianGroup, signs: Sequence[int] | None = None):
        """Q/Z with generator i acting by x -> signs[i] * x (signs are +-1)."""
        signs = list(signs) if signs is not None else [1] * group.rank
        if any(s not in (1, -1) for s in signs):
            raise InputError("Q/Z admits only the actions x -> x and x -> -x")
        return cls(group, [DIV], [[[s]] for s in signs])

    @classmethod
    def lattice(cls, group: FgAbelianGroup, matrices):
        k = len(matrices[0]) if matrices else 0
        return cls(group, [0] * k, matrices)

    def with_group(self, group: FgAbelianGroup, action) -> "CoeffModule":
        return CoeffModule(group, self.moduli, action, self.names)

    # -- structure ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def has_divisible(self) -> bool:
        return DIV in self.moduli

    @property
    def has_lattice(self) -> bool:
        return 0 in self.moduli

    def is_trivial_action(self) -> bool:
        return all(mat == _eye(self.rank) for mat in self.action)

    def describe(self) -> str:
        return " + ".join(self.names) if self.names else "0"

    def __repr__(self):
        return f"CoeffModule({self.describe()} over {self.group.describe()})"

    def action_denominator(self) -> int:
        return lcm(*(v.denominator for mat in self.action for row in mat for v in row))

    # -- elements -------------------------------------------------------------

    def reduce(self, x) -> tuple:
        if len(x) != self.rank:
            raise InputError(f"module element needs {self.rank} coordinates")
        out = []
        for v, m in zip(x, self.moduli):
            if m == DIV:
                out.append(_fmod1(parse_rat(v) if isinstance(v, str) else v))
            else:
                v = Fraction(parse_rat(v) if isinstance(v, str) else v)
                if v.denominator != 1:
                    raise InputError(f"coordinate of type {_kind_name(m)} must be an integer")
                v = int(v)
                out.append(v % m if m else v)
        return tuple(out)

    def zero(self) -> tuple:
        return tuple(Fraction(0) if m == DIV else 0 for m in self.moduli)

    def add(self, x, y) -> tuple:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x) -> tuple:
        return self.reduce([-a for a in x])

    def sub(self, x, y) -> tuple:
        return self.reduce([a - b for a, b in zip(x, y)])

    def scale(self, k: int, x) -> tuple:
        return self.reduce([k * a for a in x])

    def is_zero(self, x) -> bool:
        return tuple(self.reduce(x)) == self.zero()

    def apply_matrix(self, mat, x) -> tuple:
        return self.reduce([sum(mat[i][j] * x[j] for j in range(self.rank)) for i in range(self.rank)])

    def act(self, a: GroupElement, x) -> tuple:
        return self.apply_matrix(self.matrix_of(a), x)

    # -- matrices -------------------------------------------------------------

    def _reduce_matrix(self, mat):
        k = self.rank
        if len(mat) != k or any(len(r) != k for r in mat):
            raise InputError("action matrix has the wrong shape")
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                v = Fraction(mat[i][j])
                mi, mj = self.moduli[i], self.moduli[j]
                if mi == DIV and mj != DIV:
                    v = _fmod1(v)
                elif v.denominator != 1:
                    raise InputError("only Q/Z rows may carry rational action entries on integer coordinates")
                elif mi > 0:
                    v = Fraction(int(v) % mi)
                row.append(v)
            out.append(tuple(row))
        return tuple(out)

    def _mul(self, a, b):
        k = self.rank
        return self._reduce_matrix([[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(k)]
                                    for i in range(k)])

    def _inverse(self, mat):
        # Gauss-Jordan over Q on the integer-structured matrix, then reduce.
        k = self.rank
        aug = [[Fraction(mat[i][j]) for j in range(k)] + [Fraction(int(i == j)) for j in range(k)]
               for i in range(k)]
        for c in range(k):
            p = next((i for i in range(c, k) if aug[i][c] != 0), None)
            if p is None:
                raise Unsupported("action matrix is not invertible over Q")
            aug[c], aug[p] = aug[p], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [v * inv for v in aug[c]]
            for i in range(k):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
        inv = self._reduce_matrix([row[k:] for row in aug])
        if self._mul(inv, mat) != _eye(k):
            raise Unsupported("action matrix is not invertible on the module")
        return inv

    def matrix_of(self, a: GroupElement):
        if self.group.is_finite:
            table = self.action_table()
            return table[self.group.index_of(a)]
        mat = _eye(self.rank)
        for c, gen in zip(a.coords, self.action):
            if c >= 0:
                for _ in range(c):
                    mat = self._mul(gen, mat)
            else:
                inv = self._inverse(gen)
                for _ in range(-c):
                    mat = self._mul(inv, mat)
        return mat

    def action_table(self) -> list:
        """Action matrix of every element, in ``enumerate_group`` order."""
        if self._table is None:
            els = enumerate_group(self.group)
            table = [None] * len(els)
            table[0] = _eye(self.rank)
            for el in els[1:]:
                # peel off the last nonzero coordinate
                i = max(t for t, c in enumerate(el.coords) if c)
                prev = list(el.coords)
                prev[i] -= 1
                table[self.group.index_of(el)] = self._mul(
                    self.action[i], table[self.group.index_of(self.group(prev))])
            self._table = table
        return self._table

    def _check(self):
        k = self.rank
        for i, mat in enumerate(self.action):
            # columns of finite coordinates must be killed by the modulus
            for j, m in enumerate(self.moduli):
                if m > 0:
                    col = [mat[r][j] * m for r in range(k)]
                    if any(not self._coord_zero(r, col[r]) for r in range(k)):
                        raise InputError(f"action of generator {i} is not well defined on coordinate {j}")
                if m == DIV:
                    for r in range(k):
                        if self.moduli[r] != DIV and mat[r][j]:
                            raise InputError("a Q/Z coordinate cannot map into an integer-type coordinate")
        for a, b in itertools.combinations(self.action, 2):
            if self._mul(a, b) != self._mul(b, a):
                raise InputError("action matrices of different generators do not commute")
        for mat, d in zip(self.action, self.group.invariants):
            if d:
                p = _eye(k)
                for _ in range(d):
                    p = self._mul(mat, p)
                if p != _eye(k):
                    raise InputError(f"generator of order {d} does not act with order dividing {d}")
        if self.group.free_rank:
            for mat, d in zip(self.action, self.group.invariants):
                if d == 0:
                    self._inverse(mat)

    def _coord_zero(self, r, v) -> bool:
        m = self.moduli[r]
        if m == DIV:
            return Fraction(v).denominator == 1
        if m == 0:
            return v == 0
        return Fraction(v).denominator == 1 and int(v) % m == 0

    # -- serialisation ----------------------------------------------------------

    def value_to_json(self, x):
        x = self.reduce(x)
        if self.rank == 1 and self.moduli[0] == DIV:
            return format_rat(x[0])
        if self.rank == 1 and self.moduli[0] > 0:
            return format_rat(Fraction(x[0], self.moduli[0]))
        return [format_rat(v) if m == DIV else int(v) for v, m in zip(x, self.moduli)]

    def value_from_json(self, obj):
        if isinstance(obj, str) and self.rank == 1:
            v = parse_rat(obj)
            if self.moduli[0] == DIV:
                return self.reduce([v])
            m = self.moduli[0]
            if (v * m).denominator != 1:
                raise InputError(f"phase {obj} is not an {m}-th root of unity")
            return self.reduce([int(v * m)])
        if isinstance(obj, list):
            return self.reduce([parse_rat(v) if isinstance(v, str) else v for v in obj])
        if isinstance(obj, int) and self.rank == 1:
            return self.reduce([obj])
        raise InputError(f"bad module value {obj!r}")

    def to_json(self):
        return {
            "moduli": ["Q/Z" if m == DIV else m for m in self.moduli],
            "action": [[[format_rat(v) for v in row] for row in mat] for mat in self.action],
        }


def _eye(k):
    return tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k))


# ---------------------------------------------------------------------------
# cochains


class Cochain:
    """A normalized n-cochain on A with values in a CoeffModule.

    Finite groups carry a value table keyed by tuples of element indices
    (entries involving the identity are implicitly zero); infinite groups
    carry a Python callable on GroupElements.
    """

    def __init__(self, module: CoeffModule, degree: int, values=None, func: Callable | None = None,
                 check_normalized: bool = True):
        self.module = module
        self.group = module.group
        self.degree = degree
        self.func = func
        self.values = {}
        if values is not None:
            if not self.group.is_finite:
                raise InputError("value tables need a finite group")
            for key, val in values.items():
                key = tuple(key)
                if len(key) != degree:
                    raise InputError("cochain key has the wrong arity")
                val = module.reduce(val)
                if 0 in key:
                    if check_normalized and not module.is_zero(val):
                        raise InputError("cochain is not normalized")
                    continue
                if not module.is_zero(val):
                    self.values[key] = val
        elif func is None and not self.group.is_finite:
            raise InputError("an infinite-group cochain needs a formula")

    @classmethod
    def zero(cls, module: CoeffModule, degree: int) -> "Cochain":
        if module.group.is_finite:
            return cls(module, degree, {})
        return cls(module, degree, func=lambda *args: module.zero())

    @classmethod
    def from_function(cls, module: CoeffModule, degree: int, f: Callable, normalize: bool = False):
        """Tabulate f (taking GroupElements) on a finite group."""
        els = enumerate_group(module.group)
        vals = {}
        for key in itertools.product(range(1, len(els)), repeat=degree):
            vals[key] = f(*(els[i] for i in key))
        if normalize:
            return cls(module, degree, vals)
        for key in itertools.product(range(len(els)), repeat=degree):
            if 0 in key and not module.is_zero(f(*(els[i] for i in key))):
                raise InputError("cochain is not normalized")
        return cls(module, degree, vals)

    @property
    def is_table(self) -> bool:
        return self.func is None

    def value_at_indices(self, key) -> tuple:
        if self.func is not None:
            els = enumerate_group(self.group)
            return self.module.reduce(self.func(*(els[i] for i in key)))
        return self.values.get(tuple(key), self.module.zero())

    def __call__(self, *args) -> tuple:
        if len(args) != self.degree:
            raise InputError("wrong number of arguments")
        args = [a if isinstance(a, GroupElement) else self.group(a) for a in args]
        if self.func is not None:
            return self.module.reduce(self.func(*args))
        key = tuple(self.group.index_of(a) for a in args)
        return self.value_at_indices(key)

    def _combine(self, other, sign):
        if other.module is not self.module or other.degree != self.degree:
            if other.module.moduli != self.module.moduli or other.degree != self.degree:
                raise InputError("cochains live in different spaces")
        m = self.module
        if self.is_table and other.is_table:
            keys = set(self.values) | set(other.values)
            return Cochain(m, self.degree, {k: m.add(self.value_at_indices(k),
                                                        m.scale(sign, other.value_at_indices(k)))
                                            for k in keys})
        return Cochain(m, self.degree, func=lambda *a: m.add(self(*a), m.scale(sign, other(*a))))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, k: int) -> "Cochain":
        m = self.module
        if self.is_table:
            return Cochain(m, self.degree, {key: m.scale(k, v) for key, v in self.values.items()})
        return Cochain(m, self.degree, func=lambda *a: m.scale(k, self(*a)))

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        if not self.is_table:
            raise Unsupported("zero test of a formula cochain")
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self - other).is_zero()

    def is_normalized(self) -> bool:
        return True  # enforced at construction

    def table(self) -> dict:
        return dict(self.values)

    def to_json(self, group_json=None) -> dict:
        if not self.is_table:
            raise Unsupported("formula cochains are not serialisable")
        els = enumerate_group(self.group)
        rows = []
        for key in sorted(self.values):
            rows.append([[list(els[i].coords) for i in key], self.module.value_to_json(self.values[key])])
        return {
            "group": group_json if group_json is not None else {"torsion": list(self.group.invariants)},
            "module": self.module.to_json(),
            "degree": self.degree,
            "values": rows,
        }

    def __repr__(self):
        return f"Cochain(degree={self.degree}, {len(self.values)} nonzero entries)" if self.is_table \
            else f"Cochain(degree={self.degree}, formula)"


def cochain_from_json(module: CoeffModule, obj) -> Cochain:
    try:
        degree = int(obj["degree"])
        rows = obj["values"]
    except (KeyError, TypeError) as exc:
        raise InputError("cochain literal needs 'degree' and 'values'") from exc
    G = module.group
    vals = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 2:
            raise InputError(f"bad cochain row {row!r}")
        args, val = row
        if len(args) != degree:
            raise InputError(f"cochain row {row!r} has the wrong arity")
        key = tuple(G.index_of(G(a if isinstance(a, list) else [a])) for a in args)
        vals[key] = module.value_from_json(val)
    return Cochain(module, degree, vals)


# ---------------------------------------------------------------------------
# differentials


class _FiniteData:
    def __init__(self, A: FgAbelianGroup):
        self.els = enumerate_group(A)
        self.n = len(self.els)
        idx = {e.coords: i for i, e in enumerate(self.els)}
        self.add = [[idx[(a + b).coords] for b in self.els] for a in self.els]


def differential(c: Cochain) -> Cochain:
    """(dc)(a_1..a_{n+1}) = a_1.c(a_2..) + sum_i (-1)^i c(.., a_i + a_{i+1}, ..)
    + (-1)^{n+1} c(a_1..a_n)."""
    if c.degree > 2:
        raise Unsupported("differentials are implemented up to degree 2 -> 3")
    m = c.module
    if not c.group.is_finite:
        def f(*args):
            return _d_value(c, args)
        return Cochain(m, c.degree + 1, func=f)
    fd = _FiniteData(c.group)
    table = m.action_table()
    n = c.degree
    vals = {}
    for key in itertools.product(range(1, fd.n), repeat=n + 1):
        acc = m.apply_matrix(table[key[0]], c.value_at_indices(key[1:]))
        for i in range(n):
            s = fd.add[key[i]][key[i + 1]]
            if s:
                v = c.value_at_indices(key[:i] + (s,) + key[i + 2:])
                acc = m.add(acc, v) if (i + 1) % 2 == 0 else m.sub(acc, v)
        v = c.value_at_indices(key[:n])
        acc = m.add(acc, v) if (n + 1) % 2 == 0 else m.sub(acc, v)
        vals[key] = acc
    return Cochain(m, n + 1, vals)


def _d_value(c: Cochain, args):
    m = c.module
    n = c.degree
    acc = m.act(args[0], c(*args[1:]))
    for i in range(n):
        merged = args[:i] + (args[i] + args[i + 1],) + args[i + 2:]
        v = c(*merged)
        acc = m.add(acc, v) if (i + 1) % 2 == 0 else m.sub(acc, v)
    v = c(*args[:n])
    return m.add(acc, v) if (n + 1) % 2 == 0 else m.sub(acc, v)


def cocycle_defect(c: Cochain, triples=None):
    """First argument tuple where dc is nonzero, or None."""
    if c.group.is_finite and triples is None:
        dc = differential(c)
        if dc.values:
            els = enumerate_group(c.group)
            key = min(dc.values)
            return tuple(els[i] for i in key)
        return None
    for args in triples or []:
        if not c.module.is_zero(_d_value(c, tuple(args))):
            return tuple(args)
    return None


# ---------------------------------------------------------------------------
# bar matrices at a finite level


@dataclass
class _Realised:
    moduli: list          # realised moduli (DIV -> L)
    ring: int             # common modulus, 0 when some coordinate is Z
    level: int
    table: list           # integer action matrices per element


def _realise(M: CoeffModule, L: int) -> _Realised:
    mods = [L if m == DIV else m for m in M.moduli]
    ring = 0 if 0 in mods else lcm(*mods) if mods else 1
    table = []
    for mat in M.action_table():
        rows = []
        for i in range(M.rank):
            row = []
            for j in range(M.rank):
                v = mat[i][j]
                if M.moduli[i] == DIV and M.moduli[j] != DIV:
                    v = v * L
                if Fraction(v).denominator != 1:
                    raise InputError(f"level {L} does not absorb the action denominators")
                row.append(int(v))
            rows.append(row)
        table.append(rows)
    return _Realised(mods, ring, L, table)


def bar_matrix(M: CoeffModule, n: int, R: _Realised | None = None, level: int | None = None):
    """Integer matrix of d: C^n -> C^{n+1} on normalized cochains, columns
    indexed by (n-tuple of nonzero elements, coordinate)."""
    if R is None:
        R = _realise(M, level or 1)
    fd = _FiniteData(M.group)
    s = fd.n - 1
    k = M.rank
    nrows = s ** (n + 1) * k
    ncols = s ** n * k
    if nrows * ncols > MAX_BAR_ENTRIES:
        raise SizeError(f"bar matrix of size {nrows} x {ncols} exceeds the dense limit")
    dtype = np.int64 if R.ring else object
    D = np.zeros((nrows, ncols), dtype=dtype)

    def col_index(key):
        pos = 0
        for t in key:
            pos = pos * s + (t - 1)
        return pos * k

    for r_i, key in enumerate(itertools.product(range(1, fd.n), repeat=n + 1)):
        base_r = r_i * k
        act = R.table[key[0]]
        c0 = col_index(key[1:])
        for i in range(k):
            for j in range(k):
                if act[i][j]:
                    D[base_r + i, c0 + j] += act[i][j]
        for i in range(n):
            sm = fd.add[key[i]][key[i + 1]]
            if sm:
                c = col_index(key[:i] + (sm,) + key[i + 2:])
                sign = 1 if (i + 1) % 2 == 0 else -1
                for t in range(k):
                    D[base_r + t, c + t] += sign
        c = col_index(key[:n])
        sign = 1 if (n + 1) % 2 == 0 else -1
        for t in range(k):
            D[base_r + t, c + t] += sign
    if R.ring:
        D %= R.ring
    return D


def _bar0(M: CoeffModule, R: _Realised):
    """d: C^0 = M -> C^1, (dm)(a) = a.m - m."""
    fd_n = M.group.order
    k = M.rank
    rows = []
    for a in range(1, fd_n):
        act = R.table[a]
        for i in range(k):
            rows.append([act[i][j] - int(i == j) for j in range(k)])
    return np.array(rows, dtype=np.int64 if R.ring else object).reshape((max(0, fd_n - 1) * k, k))


def _cochain_to_vector(c: Cochain, R: _Realised) -> list:
    M = c.module
    s = M.group.order - 1
    k = M.rank
    vec = [0] * (s ** c.degree * k)
    for key, val in c.values.items():
        pos = 0
        for t in key:
            pos = pos * s + (t - 1)
        for j, (v, m) in enumerate(zip(val, M.moduli)):
            if m == DIV:
                x = Fraction(v) * R.level
                if x.denominator != 1:
                    raise InputError(f"value {v} not at level {R.level}")
                vec[pos * k + j] = int(x)
            else:
                vec[pos * k + j] = int(v)
    return vec


def _vector_to_cochain(vec, M: CoeffModule, n: int, R: _Realised) -> Cochain:
    s = M.group.order - 1
    k = M.rank
    vals = {}
    for p, key in enumerate(itertools.product(range(1, s + 1), repeat=n)):
        chunk = vec[p * k:(p + 1) * k]
        if any(chunk):
            vals[key] = [Fraction(int(v), R.level) if m == DIV else int(v) for v, m in zip(chunk, M.moduli)]
    return Cochain(M, n, vals)


@dataclass
class _Level:
    """Z^n and H^n at one realisation level, in coordinates t."""
    Zgroup: FgAbelianGroup
    Hgroup: FgAbelianGroup
    z_vectors: Callable      # t-vector -> cochain vector
    t_of: Callable           # cocycle vector -> t-vector
    realised: _Realised
    B_gens: list


def _level_data(M: CoeffModule, n: int, L: int) -> _Level:
    R = _realise(M, L)
    k = M.rank
    Dn = bar_matrix(M, n, R)
    Dprev = _bar0(M, R) if n == 1 else bar_matrix(M, n - 1, R)
    ncols = Dn.shape[1]
    # fake relations: m e_k for finite coordinates below the ring modulus
    col_mods = [R.moduli[j % k] for j in range(ncols)]
    fake = []
    for j, m in enumerate(col_mods):
        if m and (R.ring == 0 or m < R.ring):
            v = [0] * ncols
            v[j] = m
            fake.append(v)
    B_gens = [[int(x) for x in Dprev[:, j]] for j in range(Dprev.shape[1])]
    if R.ring:
        return _level_mod(M, n, R, Dn, B_gens, fake)
    return _level_int(M, n, R, Dn, B_gens, fake)


def _level_mod(M, n, R, Dn, B_gens, fake):
    N = R.ring
    k = M.rank
    ncols = Dn.shape[1]
    row_mods = [R.moduli[i % k] for i in range(Dn.shape[0])]
    scale = np.array([N // m for m in row_mods], dtype=np.int64).reshape((-1, 1))
    Dp = (Dn * scale) % N if Dn.size else Dn
    if Dn.shape[0] and ncols:
        res = snf_mod(Dp.tolist(), N, track="Vv")
        V, Vi, diag = res.V, res.Vinv, res.diagonal
    else:
        V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        Vi = V
        diag = []
    g = []
    for j in range(ncols):
        d = diag[j] if j < len(diag) else 0
        g.append(math.gcd(d, N) if d else N)
    J = [j for j in range(ncols) if g[j] > 1]
    mu = {j: N // g[j] for j in J}
    Vi_np = np.array(Vi, dtype=np.int64) if ncols else None
    V_np = np.array(V, dtype=np.int64) if ncols else None

    def t_of(vec):
        w = (Vi_np.dot(np.array(vec, dtype=np.int64) % N)) % N if ncols else []
        out = []
        for j in J:
            wj = int(w[j])
            if wj % mu[j]:
                raise InputError("vector is not a cocycle")
            out.append((wj // mu[j]) % g[j])
        # coordinates outside J must vanish for cocycles
        for j in range(ncols):
            if g[j] == 1 and int(w[j]) % N:
                raise InputError("vector is not a cocycle")
        return out

    def z_vector(t):
        y = np.zeros(ncols, dtype=np.int64)
        for tj, j in zip(t, J):
            y[j] = (tj * mu[j]) % N
        return [int(v) for v in (V_np.dot(y) % N)] if ncols else []

    fake_t = [t_of(v) for v in fake]
    B_t = [t_of(v) for v in B_gens]
    s = len(J)
    diag_rel = [[g[J[i]] if i == r else 0 for r in range(s)] for i in range(s)]
    Zcols = fake_t + diag_rel
    Hcols = B_t + Zcols
    Zg = FgAbelianGroup(s, [[c[i] for c in Zcols] for i in range(s)] if s else [])
    Hg = FgAbelianGroup(s, [[c[i] for c in Hcols] for i in range(s)] if s else [])
    return _Level(Zg, Hg, z_vector, t_of, R, B_gens)


def _level_int(M, n, R, Dn, B_gens, fake):
    k = M.rank
    nrows, ncols = Dn.shape
    row_mods = [R.moduli[i % k] for i in range(nrows)]
    extra = [i for i in range(nrows) if row_mods[i]]
    big = [[int(x) for x in Dn[i]] + [row_mods[i] if i == e else 0 for e in extra] for i in range(nrows)]
    if nrows:
        sol = solve_int(big, [0] * nrows, ncols=ncols + len(extra))
        gens = [v[:ncols] for v in sol.kernel]
    else:
        gens = [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    # lattice basis of the span of gens (columns)
    if gens:
        X = [[g_[i] for g_ in gens] for i in range(ncols)]
        res = snf(X, inverses=True)
        diag = res.diagonal
        r = sum(1 for d in diag if d)
        Ui = res.Uinv
        basis = [[Ui[i][j] * diag[j] for i in range(ncols)] for j in range(r)]
    else:
        basis = []
    s = len(basis)
    Bmat = [[b[i] for b in basis] for i in range(ncols)]

    def t_of(vec):
        if s == 0:
            if any(vec):
                raise InputError("vector is not a cocycle")
            return []
        sol_ = solve_int(Bmat, list(vec), ncols=s)
        if sol_ is None:
            raise InputError("vector is not a cocycle")
        return sol_.particular

    def z_vector(t):
        return [sum(Bmat[i][j] * t[j] for j in range(s)) for i in range(ncols)]

    fake_t = [t_of(v) for v in fake]
    B_t = [t_of(v) for v in B_gens]
    Zg = FgAbelianGroup(s, [[c[i] for c in fake_t] for i in range(s)] if (s and fake_t) else [])
    Hcols = B_t + fake_t
    Hg = FgAbelianGroup(s, [[c[i] for c in Hcols] for i in range(s)] if (s and Hcols) else [])
    return _Level(Zg, Hg, z_vector, t_of, R, B_gens)


# ---------------------------------------------------------------------------
# cohomology groups


@dataclass
class CohomologyGroup:
    """H^n (or Z^1) as an abstract group: ``group`` carries the finite and
    free parts, ``divisible`` counts Q/Z summands.  ``representatives[i]``
    is a cocycle for the i-th normal-form generator of ``group``."""

    degree: int
    acting_group: FgAbelianGroup
    module: CoeffModule | None
    group: FgAbelianGroup
    divisible: int = 0
    representatives: list = field(default_factory=list)
    divisible_families: list = field(default_factory=list)
    label: str = "H"
    _classifier: Callable | None = None
    notes: list = field(default_factory=list)

    @property
    def invariants(self) -> tuple:
        return self.group.invariants

    @property
    def torsion(self) -> tuple:
        return self.group.torsion

    @property
    def free_rank(self) -> int:
        return self.group.free_rank

    def is_trivial(self) -> bool:
        return self.group.is_trivial() and self.divisible == 0

    @property
    def order(self):
        if self.divisible or self.group.free_rank:
            return math.inf
        return self.group.order

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.group.torsion] + ["Z"] * self.group.free_rank + ["Q/Z"] * self.divisible
        return " + ".join(parts) if parts else "0"

    def class_of(self, c: Cochain) -> GroupElement:
        """Coordinates of the class of a cocycle on the normal-form basis."""
        if self._classifier is None:
            raise Unsupported("class coordinates are not available for this group")
        return self._classifier(c)

    def representative(self, el: GroupElement) -> Cochain:
        out = Cochain.zero(self.module, self.degree)
        for coef, rep in zip(el.coords, self.representatives):
            if coef:
                out = out + rep.scale(coef)
        return out

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "degree": self.degree,
            "structure": self.describe(),
            "torsion": list(self.group.torsion),
            "free_rank": self.group.free_rank,
            "divisible": self.divisible,
        }
        if self.representatives and all(r.is_table for r in self.representatives):
            out["representatives"] = [r.to_json() for r in self.representatives]
        return out


def _check_degree_size(A: FgAbelianGroup, n: int):
    if not A.is_finite:
        raise Unsupported("bar-resolution cohomology needs a finite acting group")
    bound = 16 if n == 3 else 64
    if A.order > bound:
        raise SizeError(f"|A| = {A.order} exceeds the bound {bound} for degree {n}")


def _base_level(M: CoeffModule) -> int:
    A = M.group
    return A.order * A.order * M.action_denominator()


def cohomology_group(A: FgAbelianGroup, M: CoeffModule, n: int) -> CohomologyGroup:
    """H^n(A, M) for finite A and n in {1, 2, 3} from the normalized bar
    complex.

    >>> from nclift.abgroup import cyclic
    >>> A = cyclic(2)
    >>> cohomology_group(A, CoeffModule.cyclic(A, 2), 2).describe()
    'Z/2'
    """
    if M.group != A:
        raise InputError("module is defined over a different group")
    if n not in (1, 2, 3):
        raise Unsupported("only degrees 1, 2 and 3 are implemented")
    _check_degree_size(A, n)
    if A.order == 1:
        return CohomologyGroup(n, A, M, FgAbelianGroup(0), 0, [], label=f"H^{n}",
                               _classifier=lambda c: FgAbelianGroup(0).zero())
    s = A.order - 1
    if s ** (2 * n + 1) * M.rank ** 2 > MAX_BAR_ENTRIES:
        if M.is_trivial_action() and n == 2:
            out = h2_structural(A, M)
            out.notes.append("dense bar matrix too large; universal-coefficient path used")
            return out
        raise SizeError(f"bar complex for |A| = {A.order} in degree {n} is too large for dense elimination")
    if not M.has_divisible:
        return _cohomology_plain(A, M, n)
    if n == 1:
        return _h1_divisible(A, M)
    return _cohomology_divisible(A, M, n)


def _cohomology_plain(A, M, n) -> CohomologyGroup:
    lev = _level_data(M, n, 1)
    H = lev.Hgroup
    reps = []
    for b in H.basis():
        t = H.to_generators(b)
        reps.append(_vector_to_cochain(lev.z_vectors(t), M, n, lev.realised))

    def classify(c: Cochain):
        t = lev.t_of(_cochain_to_vector(c, lev.realised))
        return H.from_generators(t)

    return CohomologyGroup(n, A, M, H, 0, reps, label=f"H^{n}", _classifier=classify)


def _cohomology_divisible(A, M, n) -> CohomologyGroup:
    L = _base_level(M)
    L2 = L * A.order
    low = _level_data(M, n, L)
    high = _level_data(M, n, L2)
    Hl, Hh = low.Hgroup, high.Hgroup
    scale = L2 // L

    def lift_vec(vec):
        k = M.rank
        return [v * scale if M.moduli[i % k] == DIV else v for i, v in enumerate(vec)]

    img = []
    for b in Hl.basis():
        vec = low.z_vectors(Hl.to_generators(b))
        img.append(list(Hh.from_generators(high.t_of(lift_vec(vec))).coords))
    S, inc = subgroup_generated(Hh, img)
    # representatives: S generators are combinations of the H_low basis
    low_reps = []
    for b in Hl.basis():
        low_reps.append(_vector_to_cochain(low.z_vectors(Hl.to_generators(b)), M, n, low.realised))
    reps = []
    for b in S.basis():
        coeffs = S.to_generators(b)
        c = Cochain.zero(M, n)
        for coef, r in zip(coeffs, low_reps):
            if coef:
                c = c + r.scale(coef)
        reps.append(c)
    out = CohomologyGroup(n, A, M, S, 0, reps, label=f"H^{n}")
    out._classifier = lambda c: _classify_by_solving(out, c)
    return out


def _h1_divisible(A, M) -> CohomologyGroup:
    z = crossed_homs(A, M)
    return z.h1


def _classify_by_solving(H: CohomologyGroup, c: Cochain) -> GroupElement:
    """Find t with c - sum t_i rep_i a coboundary (one mixed linear solve)."""
    extra = [(rep, d) for rep, d in zip(H.representatives, H.group.invariants)]
    sol = _coboundary_system(c, extra)
    if isinstance(sol, NoSolution):
        raise InputError("cocycle class not found in the computed group")
    _, t = sol
    return H.group(t)


# ---------------------------------------------------------------------------
# coboundaries


def _coboundary_system(omega: Cochain, extra=()):
    """Solve d(varpi) + sum_i t_i rep_i = omega; returns (varpi, t) or NoSolution."""
    M = omega.module
    A = omega.group
    n = omega.degree
    fd = _FiniteData(A)
    k = M.rank
    table = M.action_table()
    prev_keys = list(itertools.product(range(1, fd.n), repeat=n - 1))
    pidx = {key: i for i, key in enumerate(prev_keys)}
    nvar = len(prev_keys) * k
    col_mod = [M.moduli[j % k] for j in range(nvar)] + [d if d else 0 for _, d in extra]
    rows, rhs, row_mod = [], [], []
    for key in itertools.product(range(1, fd.n), repeat=n):
        target = omega.value_at_indices(key)
        block = [[Fraction(0)] * len(col_mod) for _ in range(k)]
        # a_1 . varpi(a_2..)
        sub = key[1:]
        if 0 not in sub:
            base = pidx[sub] * k
            act = table[key[0]]
            for i in range(k):
                for j in range(k):
                    block[i][base + j] += act[i][j]
        for i in range(n - 1):
            sm = fd.add[key[i]][key[i + 1]]
            if sm:
                kk = key[:i] + (sm,) + key[i + 2:]
                base = pidx[kk] * k
                sign = 1 if (i + 1) % 2 == 0 else -1
                for t in range(k):
                    block[t][base + t] += sign
        kk = key[: n - 1]
        base = pidx[kk] * k
        sign = 1 if n % 2 == 0 else -1
        for t in range(k):
            block[t][base + t] += sign
        for e, (rep, _) in enumerate(extra):
            val = rep.value_at_indices(key)
            for t in range(k):
                block[t][nvar + e] += val[t]
        for t in range(k):
            rows.append(block[t])
            rhs.append(target[t])
            row_mod.append(M.moduli[t])
    if not rows:
        return Cochain.zero(M, n - 1), [0] * len(extra)
    # rows in integer-type coordinates must have integer coefficients
    rows = [[c if row_mod[i] == DIV else int(c) for c in row] for i, row in enumerate(rows)]
    sol = solve_mixed(rows, rhs, col_mod, row_mod)
    if isinstance(sol, NoSolution):
        return sol
    vals = {}
    for key, i in pidx.items():
        chunk = sol[i * k:(i + 1) * k]
        vals[key] = chunk
    if n == 1:
        varpi = M.reduce(sol[:k])
    else:
        varpi = Cochain(M, n - 1, vals)
    return varpi, list(sol[nvar:])


def is_coboundary(omega: Cochain, *, check: bool = True):
    """Return varpi with d(varpi) = omega, or a NoSolution certificate.

    For degree 1 the returned "cochain" is a module element m with
    omega(a) = a.m - m.
    """
    if not omega.is_table:
        raise Unsupported("coboundary solving needs a finite acting group")
    if check and omega.degree <= 2:
        w = cocycle_defect(omega)
        if w is not None:
            raise InputError(f"not a cocycle: nonzero differential at {[list(x) for x in w]}")
    res = _coboundary_system(omega)
    if isinstance(res, NoSolution):
        return res
    return res[0]


# ---------------------------------------------------------------------------
# crossed homomorphisms


def crossed_homs(A: FgAbelianGroup, M: CoeffModule) -> CohomologyGroup:
    """Z^1 (crossed homomorphisms c(a+b) = c(a) + a.c(b)) with attributes
    ``b1`` (coboundary generators) and ``h1``."""
    if M.group != A:
        raise InputError("module is defined over a different group")
    if not A.is_finite:
        if not M.is_trivial_action():
            raise Unsupported("crossed homomorphisms of infinite groups need the trivial action")
        return _hom_structural(A, M)
    _check_degree_size(A, 1)
    if A.order == 1:
        z = CohomologyGroup(1, A, M, FgAbelianGroup(0), 0, [], label="Z^1")
        z.h1 = CohomologyGroup(1, A, M, FgAbelianGroup(0), 0, [], label="H^1")
        z.b1 = []
        return z
    if not M.has_divisible:
        lev = _level_data(M, 1, 1)
        return _z1_from_level(A, M, lev, 0)
    L = _base_level(M)
    L2 = L * A.order
    low = _level_data(M, 1, L)
    high = _level_data(M, 1, L2)
    lz = low.Zgroup.invariants
    hz = high.Zgroup.invariants
    grow = sum(1 for d in hz if d == L2)
    if sum(1 for d in lz if d == L) != grow or [d for d in lz if d != L] != [d for d in hz if d != L2]:
        raise Unsupported("crossed homomorphisms did not stabilise between the two levels")
    return _z1_from_level(A, M, low, grow, level=L)


def _z1_from_level(A, M, lev: _Level, divisible: int, level: int = 1) -> CohomologyGroup:
    Zg = lev.Zgroup
    keep = []
    reps = []
    fam = []
    for b, d in zip(Zg.basis(), Zg.invariants):
        c = _vector_to_cochain(lev.z_vectors(Zg.to_generators(b)), M, 1, lev.realised)
        if divisible and d == level:
            fam.append(c)
            continue
        keep.append(d)
        reps.append(c)
    fin = FgAbelianGroup.from_invariants([d for d in keep if d], sum(1 for d in keep if d == 0))
    z = CohomologyGroup(1, A, M, fin, divisible, reps, label="Z^1")
    z.divisible_families = [(lambda c_: (lambda lam: _scale_divisible(c_, lam, level)))(c) for c in fam]
    z.b1 = [_vector_to_cochain(v, M, 1, lev.realised) for v in lev.B_gens]
    # H^1 from the level data (exact when no Q/Z coordinates are present)
    H = lev.Hgroup
    hreps = [_vector_to_cochain(lev.z_vectors(H.to_generators(b)), M, 1, lev.realised) for b in H.basis()]
    h1 = CohomologyGroup(1, A, M, H, 0, hreps, label="H^1")
    if divisible or M.has_divisible:
        h1 = _h1_reduce(h1)
    else:
        h1._classifier = lambda c: H.from_generators(lev.t_of(_cochain_to_vector(c, lev.realised)))
    z.h1 = h1
    return z


def _h1_reduce(h1: CohomologyGroup) -> CohomologyGroup:
    """Drop level-H^1 generators that become coboundaries over Q/Z, by
    testing each generator of the finite group exactly."""
    G = h1.group
    gens = []
    for b in G.basis():
        gens.append(list(b.coords))
    # kernel of G -> H^1(A, M): elements whose representative is a coboundary
    kernel = []
    if G.is_finite and G.order <= 4096:
        for el in G.elements():
            c = h1.representative(el)
            if not isinstance(is_coboundary(c, check=False), NoSolution):
                kernel.append(list(el.coords))
    Q = FgAbelianGroup(G.rank, [[v[i] for v in kernel] + [d if i == j else 0 for j, d in enumerate(G.invariants)]
                                for i in range(G.rank)]) if G.rank else FgAbelianGroup(0)
    reps = []
    for b in Q.basis():
        reps.append(h1.representative(G(Q.to_generators(b))))
    out = CohomologyGroup(1, h1.acting_group, h1.module, Q, 0, reps, label="H^1")
    out._classifier = lambda c: _classify_by_solving(out, c)
    return out


def _scale_divisible(c: Cochain, lam, level: int) -> Cochain:
    """The member lam * (level * c) of a divisible family of crossed homs."""
    lam = Fraction(lam)
    M = c.module
    vals = {}
    for key, val in c.values.items():
        vals[key] = [(v * level * lam) if m == DIV else 0 for v, m in zip(val, M.moduli)]
    return Cochain(M, c.degree, vals)


def _hom_structural(A: FgAbelianGroup, M: CoeffModule) -> CohomologyGroup:
    """Hom(A, M) for trivial action, one summand per pair (factor, coordinate)."""
    tors, free_, div = [], 0, 0
    for d in A.invariants:
        for m in M.moduli:
            if d == 0:
                if m == DIV:
                    div += 1
                elif m == 0:
                    free_ += 1
                else:
                    tors.append(m)
            else:
                if m == DIV:
                    tors.append(d)
                elif m > 0 and math.gcd(d, m) > 1:
                    tors.append(math.gcd(d, m))
    z = CohomologyGroup(1, A, M, FgAbelianGroup.from_invariants(tors, free_), div, [], label="Z^1")
    z.notes.append("Hom(A, M) for the trivial action")
    z.h1 = z
    z.b1 = []
    return z


# ---------------------------------------------------------------------------
# structural H^2 for trivial actions


def _wedge2_summands(A: FgAbelianGroup):
    """Summands of wedge^2 A as (order, i, j) with 0 for Z; i > j index the
    normal-form coordinates whose wedge spans the summand."""
    out = []
    inv = A.invariants
    for i in range(len(inv)):
        for j in range(i):
            a, b = inv[i], inv[j]
            if a == 0 and b == 0:
                g = 0
            elif a == 0:
                g = b
            elif b == 0:
                g = a
            else:
                g = math.gcd(a, b)
            if g != 1:
                out.append((g, i, j))
    return out


def h2_structural(A: FgAbelianGroup, M: CoeffModule | None = None) -> CohomologyGroup:
    """H^2(A, M) for the trivial action via Hom(wedge^2 A, M) + Ext(A, M).

    The default coefficients are Q/Z, giving Hom(wedge^2 A, Q/Z).

    >>> from nclift.abgroup import free
    >>> h2_structural(free(2)).describe()
    'Q/Z'
    """
    if M is None:
        M = CoeffModule.divisible(A)
    if M.group != A:
        raise InputError("module is defined over a different group")
    if not M.is_trivial_action():
        raise Unsupported("the structural formula needs the trivial action")
    tors, free_, div = [], 0, 0
    reps, fams = [], []
    gen_kind = []
    for g, i, j in _wedge2_summands(A):
        for kk, m in enumerate(M.moduli):
            if g == 0:
                if m == DIV:
                    div += 1
                    fams.append(_bilinear_family(A, M, i, j, kk))
                elif m == 0:
                    free_ += 1
                    gen_kind.append(("bil", i, j, kk, Fraction(1), 0))
                else:
                    tors.append(m)
                    gen_kind.append(("bil", i, j, kk, Fraction(1), m))
            else:
                if m == DIV:
                    tors.append(g)
                    gen_kind.append(("bil", i, j, kk, Fraction(1, g), g))
                elif m == 0:
                    continue
                else:
                    h = math.gcd(g, m)
                    if h > 1:
                        tors.append(h)
                        gen_kind.append(("bil", i, j, kk, Fraction(m // h), h))
    for i, d in enumerate(A.invariants):
        if d == 0:
            continue
        for kk, m in enumerate(M.moduli):
            if m == DIV:
                continue
            h = d if m == 0 else math.gcd(d, m)
            if h > 1:
                tors.append(h)
                gen_kind.append(("carry", i, d, kk, 1, h))
    # order the generators consistently with the structure
    raw = [_kind_to_cochain(A, M, kind) for kind in gen_kind]
    # map raw generators (orders per ``tors`` list, free last) onto the normal basis
    P = FgAbelianGroup(len(gen_kind), [[o if r == c else 0 for c, o in enumerate(_orders(gen_kind))]
                                       for r in range(len(gen_kind))])
    reps = []
    for b in P.basis():
        coeffs = P.to_generators(b)
        reps.append(_combine_formula(A, M, raw, coeffs))
    out = CohomologyGroup(2, A, M, P, div, reps, label="H^2")
    out.divisible_families = fams
    out.notes.append("Hom(wedge^2 A, M) + Ext(A, M), trivial action")
    if A.is_finite:
        out._classifier = lambda c: _classify_by_solving(out, _tabulate(c))
    return out


def _orders(gen_kind):
    return [k[5] if k[0] == "bil" else k[5] for k in gen_kind]


def _kind_to_cochain(A, M, kind):
    if kind[0] == "bil":
        _, i, j, kk, val, _ = kind

        def f(a, b, i=i, j=j, kk=kk, val=val):
            x = [Fraction(0) if m == DIV else 0 for m in M.moduli]
            x[kk] = a.coords[i] * b.coords[j] * val
            return M.reduce(x)
        return f
    _, i, d, kk, val, _ = kind

    def g(a, b, i=i, d=d, kk=kk):
        x = [Fraction(0) if m == DIV else 0 for m in M.moduli]
        if a.coords[i] + b.coords[i] >= d:
            x[kk] = 1
        return M.reduce(x)
    return g


def _combine_formula(A, M, raw, coeffs):
    def f(a, b):
        acc = M.zero()
        for c, r in zip(coeffs, raw):
            if c:
                acc = M.add(acc, M.scale(c, r(a, b)))
        return acc
    if A.is_finite:
        return Cochain.from_function(M, 2, f, normalize=True)
    return Cochain(M, 2, func=f)


def _bilinear_family(A, M, i, j, kk):
    def family(lam):
        lam = Fraction(lam)

        def f(a, b):
            x = [Fraction(0) if m == DIV else 0 for m in M.moduli]
            x[kk] = a.coords[i] * b.coords[j] * lam
            return M.reduce(x)
        if A.is_finite:
            return Cochain.from_function(M, 2, f, normalize=True)
        return Cochain(M, 2, func=f)
    return family


def _tabulate(c: Cochain) -> Cochain:
    if c.is_table:
        return c
    return Cochain.from_function(c.module, c.degree, c.func, normalize=True)


def ext_group(A: FgAbelianGroup, M: CoeffModule | None = None) -> CohomologyGroup:
    """Ext(A, M) for the trivial action (the symmetric part of H^2).

    With Q/Z coefficients it always vanishes; the certificate lists, for each
    torsion factor d, the solution c/d of d x = c.
    """
    if M is None:
        M = CoeffModule.divisible(A)
    if not M.is_trivial_action():
        raise Unsupported("Ext is implemented for the trivial action only")
    tors, cert = [], []
    for d in A.invariants:
        if d == 0:
            cert.append("free summand: Ext(Z, M) = 0")
            continue
        for m in M.moduli:
            if m == DIV:
                cert.append(f"Z/{d}: x -> {d}x is onto Q/Z (x = c/{d})")
            elif m == 0:
                tors.append(d)
            elif math.gcd(d, m) > 1:
                tors.append(math.gcd(d, m))
    out = CohomologyGroup(2, A, M, FgAbelianGroup.from_invariants(tors), 0, [], label="Ext")
    out.notes.extend(cert)
    return out


# ---------------------------------------------------------------------------
# inflation


def inflate(omega: Cochain, q: GroupHom) -> Cochain:
    """omega o (q x ... x q) on the source of q, with the module pulled back."""
    if omega.group != q.target:
        raise InputError("cochain group does not match the target of q")
    if not q.is_surjective():
        raise InputError("inflation needs a surjective map")
    M = omega.module
    src = q.source
    pulled = CoeffModule(src, M.moduli, [M.matrix_of(img) for img in q.images], M.names)
    if not src.is_finite:
        return Cochain(pulled, omega.degree, func=lambda *a: omega(*(q(x) for x in a)))
    els = enumerate_group(src)
    vals = {}
    for key in itertools.product(range(1, len(els)), repeat=omega.degree):
        vals[key] = omega(*(q(els[i]) for i in key))
    return Cochain(pulled, omega.degree, vals)
