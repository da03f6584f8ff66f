"""Exact arithmetic: rationals, phases in Q/Z, cyclotomic scalars, and
integer linear algebra (Smith normal form, solvers over Z and Z/N).

Everything here is immutable from the caller's point of view.  Matrices
are passed around as lists of lists of Python ints; numpy is only used
internally to vectorise the elimination steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

Rat = Fraction

__all__ = [
    "Rat",
    "parse_rat",
    "format_rat",
    "Phase",
    "phase_add",
    "CycScalar",
    "cyclotomic_poly",
    "SnfResult",
    "snf",
    "snf_mod",
    "Certificate",
    "IntSolution",
    "solve_int",
    "solve_mod",
    "kernel_mod",
    "solve_congruences",
    "solve_mixed",
    "NoSolution",
    "DIV",
    "mat_mul",
    "mat_vec",
    "identity",
    "transpose",
    "det",
    "lcm",
    "InputError",
    "SizeError",
    "Unsupported",
]


class InputError(ValueError):
    """Malformed or inconsistent input."""


class SizeError(ValueError):
    """A finite enumeration would exceed the configured bound."""


class Unsupported(ValueError):
    """The input lies outside what the engine decides exactly."""


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v) if v else out
    return out


# ---------------------------------------------------------------------------
# rationals and phases


def parse_rat(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {text!r}") from exc
    raise InputError(f"not a rational: {text!r}")


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Phase:
    """An element of Q/Z, read as the unit scalar exp(2 pi i value).

    The stored representative always lies in [0, 1).

    >>> Phase("3/4") + Phase("3/4")
    Phase('1/2')
    >>> -Phase("1/3")
    Phase('2/3')
    """

    __slots__ = ("_v",)

    def __init__(self, value=0):
        if isinstance(value, Phase):
            v = value._v
        else:
            v = parse_rat(value)
            if not 0 <= v < 1:
                v = v - math.floor(v)
        object.__setattr__(self, "_v", v)

    @classmethod
    def _raw(cls, v: Fraction) -> "Phase":
        # v is already a Fraction in [0, 1)
        out = object.__new__(cls)
        object.__setattr__(out, "_v", v)
        return out

    def __setattr__(self, name, value):
        raise AttributeError("Phase is immutable")

    @property
    def value(self) -> Fraction:
        return self._v

    @property
    def denominator(self) -> int:
        return self._v.denominator

    def __add__(self, other):
        if not isinstance(other, Phase):
            other = Phase(other)
        if not other._v:
            return self
        if not self._v:
            return other
        v = self._v + other._v
        return Phase._raw(v - 1 if v >= 1 else v)

    __radd__ = __add__

    def __sub__(self, other):
        return Phase(self._v - Phase(other)._v)

    def __rsub__(self, other):
        return Phase(Phase(other)._v - self._v)

    def __neg__(self):
        return Phase._raw(1 - self._v) if self._v else self

    def __mul__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("phases are scaled by integers only")
        return Phase(self._v * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Phase):
            return self._v == other._v
        if isinstance(other, (int, Fraction, str)):
            return self._v == Phase(other)._v
        return NotImplemented

    def __hash__(self):
        return hash(("Phase", self._v))

    def __bool__(self):
        return self._v != 0

    def __repr__(self):
        return f"Phase({format_rat(self._v)!r})"

    def __str__(self):
        return format_rat(self._v)


def phase_add(a, b) -> Phase:
    return Phase(a) + Phase(b)


# ---------------------------------------------------------------------------
# cyclotomic scalars


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (constant term first) of the n-th cyclotomic
    polynomial, via x^n - 1 = prod_{d | n} Phi_d."""
    if n < 1:
        raise InputError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // lead
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert all(c == 0 for c in num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """Row k holds the reduction of x^k modulo Phi_n, for 0 <= k < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_n
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


class CycScalar:
    """Exact element of Q(zeta_N), stored as coefficients of powers of
    zeta_N = exp(2 pi i / N) reduced modulo the N-th cyclotomic polynomial.

    Not hashable: equality across conductors goes through a common lift.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, coeffs: Sequence = (), conductor: int = 1):
        if conductor < 1:
            raise InputError("conductor must be positive")
        deg = len(cyclotomic_poly(conductor)) - 1
        table = _power_table(conductor)
        acc = [Fraction(0)] * deg
        for k, c in enumerate(coeffs):
            c = parse_rat(c)
            if c:
                row = table[k % conductor]
                for j in range(deg):
                    if row[j]:
                        acc[j] += c * row[j]
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(acc))

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    __hash__ = None

    @classmethod
    def from_int(cls, k) -> "CycScalar":
        return cls([k], 1)

    @classmethod
    def one(cls) -> "CycScalar":
        return cls([1], 1)

    @classmethod
    def zero(cls) -> "CycScalar":
        return cls([], 1)

    @classmethod
    def root(cls, phase, conductor: int | None = None) -> "CycScalar":
        """The root of unity exp(2 pi i p) for a phase p, realised at the
        given conductor (default: the phase denominator)."""
        p = Phase(phase)
        q = p.denominator
        if conductor is None:
            conductor = q
        if conductor % q:
            raise InputError(f"phase {p} not realisable at conductor {conductor}")
        k = p.value.numerator * (conductor // q)
        coeffs = [0] * conductor
        coeffs[k % conductor] = 1
        return cls(coeffs, conductor)

    def lift(self, conductor: int) -> "CycScalar":
        if conductor % self.conductor:
            raise InputError(f"cannot lift conductor {self.conductor} to {conductor}")
        step = conductor // self.conductor
        coeffs = [Fraction(0)] * conductor
        for k, c in enumerate(self.coeffs):
            coeffs[k * step] = c
        return CycScalar(coeffs, conductor)

    def _common(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, (int, Fraction)):
                other = CycScalar([other], 1)
            elif isinstance(other, Phase):
                other = CycScalar.root(other)
            else:
                return None
        n = lcm(self.conductor, other.conductor)
        a = self if self.conductor == n else self.lift(n)
        b = other if other.conductor == n else other.lift(n)
        return a, b, n

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b, n = pair
        return CycScalar([x + y for x, y in zip(a.coeffs, b.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar([-x for x in self.coeffs], self.conductor)

    def __sub__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b, n = pair
        return CycScalar([x - y for x, y in zip(a.coeffs, b.coeffs)], n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b, n = pair
        prod = [Fraction(0)] * max(1, 2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycScalar(prod, n)

    __rmul__ = __mul__

    def conj(self) -> "CycScalar":
        """Complex conjugation, zeta -> zeta^{-1}."""
        n = self.conductor
        coeffs = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            coeffs[(-k) % n] += c
        return CycScalar(coeffs, n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b, _ = pair
        return a.coeffs == b.coeffs

    def as_root_of_unity(self) -> Phase | None:
        """Return p if this scalar equals exp(2 pi i p), else None."""
        n = self.conductor
        for k in range(n):
            if self == CycScalar.root(Fraction(k, n), n):
                return Phase(Fraction(k, n))
        return None

    def to_json(self) -> dict:
        return {"num_poly": [format_rat(c) for c in self.coeffs], "conductor": self.conductor}

    @classmethod
    def from_json(cls, obj) -> "CycScalar":
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return cls([parse_rat(obj)], 1)
        try:
            return cls([parse_rat(c) for c in obj["num_poly"]], int(obj["conductor"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad scalar literal: {obj!r}") from exc

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{format_rat(c)}*z{self.conductor}^{k}" if k else format_rat(c))
        return "CycScalar(" + (" + ".join(terms) or "0") + ")"

    def __str__(self):
        return repr(self)[len("CycScalar("):-1]


# ---------------------------------------------------------------------------
# integer matrices


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m) -> list:
    m = [list(r) for r in m]
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def mat_mul(a, b) -> list:
    a = [list(r) for r in a]
    b = [list(r) for r in b]
    if not a:
        return []
    inner = len(a[0])
    if inner != len(b):
        raise InputError("matrix dimension mismatch")
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def mat_vec(a, v) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(m) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in m]
    n = len(a)
    if any(len(r) != n for r in a):
        raise InputError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SnfResult:
    """U * M * V = D with U, V unimodular (over Z, or invertible over Z/N)
    and D diagonal with d_1 | d_2 | ...  For the modular variant the
    diagonal entries are normalised to divisors of N, with 0 meaning N."""

    U: list
    D: list
    V: list
    modulus: int = 0
    Uinv: list | None = None
    Vinv: list | None = None

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _unit_normaliser(p: int, n: int) -> int:
    """A unit u of Z/n with u*p = gcd(p, n) mod n."""
    g = math.gcd(p, n)
    m = n // g
    if m == 1:
        return 1
    u = pow(p // g, -1, m)
    while math.gcd(u, n) != 1:
        u += m
    return u % n


def _smith(a, modulus: int, track: str = "UV"):
    """Core elimination.  ``track`` selects which of U, V, Uinv, Vinv to
    maintain ('U', 'V', 'u' for Uinv, 'v' for Vinv)."""
    a = np.array(a, dtype=object) if modulus == 0 else np.array(a, dtype=np.int64)
    if a.ndim != 2:
        a = a.reshape((a.shape[0] if a.ndim else 0, 0))
    r, c = a.shape
    dt = object if modulus == 0 else np.int64
    a = a.astype(dt)
    if modulus:
        a %= modulus

    def eye(n):
        e = np.zeros((n, n), dtype=dt)
        for i in range(n):
            e[i, i] = 1
        return e

    U = eye(r) if "U" in track else None
    Ui = eye(r) if "u" in track else None
    V = eye(c) if "V" in track else None
    Vi = eye(c) if "v" in track else None

    def red(x):
        return x % modulus if modulus else x

    def row_swap(i, j):
        if i == j:
            return
        a[[i, j]] = a[[j, i]]
        if U is not None:
            U[[i, j]] = U[[j, i]]
        if Ui is not None:
            Ui[:, [i, j]] = Ui[:, [j, i]]

    def col_swap(i, j):
        if i == j:
            return
        a[:, [i, j]] = a[:, [j, i]]
        if V is not None:
            V[:, [i, j]] = V[:, [j, i]]
        if Vi is not None:
            Vi[[i, j]] = Vi[[j, i]]

    t = 0
    while t < min(r, c):
        sub = a[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        vals = sub[nz[:, 0], nz[:, 1]]
        if modulus:
            keys = np.gcd(vals, modulus) * (modulus + 1) + vals
        else:
            keys = np.array([abs(int(v)) for v in vals], dtype=object)
        k = int(np.argmin(keys)) if modulus else min(range(len(keys)), key=lambda i: keys[i])
        row_swap(t, t + int(nz[k, 0]))
        col_swap(t, t + int(nz[k, 1]))
        p = int(a[t, t])
        if modulus:
            u = _unit_normaliser(p, modulus)
            if u != 1:
                a[t] = red(a[t] * u)
                if U is not None:
                    U[t] = red(U[t] * u)
                if Ui is not None:
                    Ui[:, t] = red(Ui[:, t] * pow(u, -1, modulus))
        elif p < 0:
            a[t] = -a[t]
            if U is not None:
                U[t] = -U[t]
            if Ui is not None:
                Ui[:, t] = -Ui[:, t]
        p = int(a[t, t])
        # clear the pivot column with row operations
        q = a[t + 1 :, t] // p
        if np.any(q != 0):
            a[t + 1 :] = red(a[t + 1 :] - np.outer(q, a[t]))
            if U is not None:
                U[t + 1 :] = red(U[t + 1 :] - np.outer(q, U[t]))
            if Ui is not None:
                Ui[:, t] = red(Ui[:, t] + Ui[:, t + 1 :].dot(q))
        # clear the pivot row with column operations
        q = a[t, t + 1 :] // p
        if np.any(q != 0):
            a[:, t + 1 :] = red(a[:, t + 1 :] - np.outer(a[:, t], q))
            if V is not None:
                V[:, t + 1 :] = red(V[:, t + 1 :] - np.outer(V[:, t], q))
            if Vi is not None:
                Vi[t] = red(Vi[t] + q.dot(Vi[t + 1 :]))
        if np.any(a[t + 1 :, t] != 0) or np.any(a[t, t + 1 :] != 0):
            continue
        rest = a[t + 1 :, t + 1 :]
        bad = np.argwhere(rest % p != 0) if rest.size else []
        if len(bad):
            i = t + 1 + int(bad[0][0])
            a[t] = red(a[t] + a[i])
            if U is not None:
                U[t] = red(U[t] + U[i])
            if Ui is not None:
                Ui[:, i] = red(Ui[:, i] - Ui[:, t])
            continue
        t += 1

    def out(x):
        return None if x is None else [[int(v) for v in row] for row in x]

    return out(U), [[int(v) for v in row] for row in a], out(V), out(Ui), out(Vi)


def _check_rect(m) -> list:
    m = [list(map(int, r)) for r in m]
    if m and any(len(r) != len(m[0]) for r in m):
        raise InputError("ragged matrix")
    return m


def snf(M, *, inverses: bool = False) -> SnfResult:
    """Smith normal form over Z.

    >>> snf([[2, 0], [0, 3]]).diagonal
    [1, 6]
    """
    M = _check_rect(M)
    rows = len(M)
    cols = len(M[0]) if M else 0
    if rows == 0 or cols == 0:
        return SnfResult(identity(rows), [[0] * cols for _ in range(rows)], identity(cols), 0,
                         identity(rows) if inverses else None, identity(cols) if inverses else None)
    U, D, V, Ui, Vi = _smith(M, 0, "UVuv" if inverses else "UV")
    return SnfResult(U, D, V, 0, Ui, Vi)


def snf_mod(M, N: int, *, track: str = "UV") -> SnfResult:
    """Smith normal form over Z/N; diagonal entries are divisors of N
    (0 standing for N itself)."""
    if N < 1:
        raise InputError("modulus must be positive")
    M = _check_rect(M)
    rows = len(M)
    cols = len(M[0]) if M else 0
    if rows == 0 or cols == 0 or N == 1:
        return SnfResult(identity(rows), [[0] * cols for _ in range(rows)], identity(cols), N,
                         identity(rows), identity(cols))
    U, D, V, Ui, Vi = _smith(M, N, track)
    return SnfResult(U, D, V, N, Ui, Vi)


# ---------------------------------------------------------------------------
# solvers


@dataclass(frozen=True)
class Certificate:
    """Proof that A x = b has no solution: y.A = 0 modulo ``modulus`` while
    y.b is nonzero modulo ``modulus`` (modulus 0 means exact equality)."""

    row: list
    modulus: int

    def verify(self, A, b, base_modulus: int = 0) -> bool:
        m = self.modulus
        yA = [sum(y * A[i][j] for i, y in enumerate(self.row)) for j in range(len(A[0]) if A else 0)]
        yb = sum(y * v for y, v in zip(self.row, b))
        if base_modulus and m and base_modulus % m:
            return False
        mod = m or base_modulus
        if mod:
            return all(v % mod == 0 for v in yA) and yb % mod != 0
        return all(v == 0 for v in yA) and yb != 0

    def to_json(self):
        return {"row": list(self.row), "modulus": self.modulus}


@dataclass(frozen=True)
class IntSolution:
    particular: list
    kernel: list


def _check_system(A, b):
    A = _check_rect(A)
    b = [int(x) for x in b]
    if len(A) != len(b):
        raise InputError(f"system has {len(A)} rows but right-hand side has {len(b)} entries")
    return A, b


def solve_int(A, b, *, ncols: int | None = None, certificate: bool = False):
    """Solve A x = b over Z.  Returns IntSolution or None (or a
    Certificate instead of None when ``certificate`` is set).

    >>> solve_int([[2]], [4]).particular
    [2]
    >>> solve_int([[2]], [3]) is None
    True
    """
    A, b = _check_system(A, b)
    rows = len(A)
    cols = len(A[0]) if A else (ncols or 0)
    if rows == 0:
        return IntSolution([0] * cols, [list(col) for col in identity(cols)])
    res = snf(A)
    c = mat_vec(res.U, b)
    y = [0] * cols
    diag = res.diagonal
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return Certificate(res.U[i], 0) if certificate else None
        elif c[i] % d:
            return Certificate(res.U[i], d) if certificate else None
        else:
            y[i] = c[i] // d
    x = mat_vec(res.V, y)
    kernel = [[res.V[r][j] for r in range(cols)] for j in range(cols) if j >= len(diag) or diag[j] == 0]
    return IntSolution(x, kernel)


def solve_mod(A, b, N: int, *, certificate: bool = False):
    """Solve A x = b over Z/N.

    >>> solve_mod([[2]], [2], 4)
    [1]
    >>> solve_mod([[2]], [1], 4) is None
    True
    """
    A, b = _check_system(A, b)
    rows = len(A)
    cols = len(A[0]) if A else 0
    if N == 1:
        return [0] * cols
    if rows == 0:
        return [0] * cols
    res = snf_mod(A, N)
    c = [v % N for v in mat_vec(res.U, b)]
    diag = res.diagonal
    y = [0] * cols
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        d = d or N
        if c[i] % d:
            return Certificate([v % N for v in res.U[i]], d) if certificate else None
        if i < cols and d != N:
            y[i] = c[i] // d
    return [v % N for v in mat_vec(res.V, y)]


def kernel_mod(A, N: int) -> list:
    """Generators of {x : A x = 0 mod N}, each paired with its order,
    as a list of (vector, order) with order dividing N."""
    A = _check_rect(A)
    rows = len(A)
    cols = len(A[0]) if A else 0
    if N == 1:
        return []
    if rows == 0:
        return [([int(i == j) for i in range(cols)], N) for j in range(cols)]
    res = snf_mod(A, N, track="V")
    diag = res.diagonal
    gens = []
    for j in range(cols):
        d = diag[j] if j < len(diag) else 0
        col = [res.V[r][j] for r in range(cols)]
        if d == 0:
            gens.append((col, N))
        elif d != 1:
            f = N // d
            gens.append(([(f * v) % N for v in col], d))
    return gens


def solve_congruences(A, b, moduli: Iterable[int], *, certificate: bool = False):
    """Solve sum_j A[i][j] x_j = b_i modulo moduli[i] (0 = over Z) for an
    integer vector x.  Returns the vector, or None / a Certificate."""
    A, b = _check_system(A, b)
    moduli = [int(m) for m in moduli]
    if len(moduli) != len(A):
        raise InputError("one modulus per row is required")
    cols = len(A[0]) if A else 0
    extra = [i for i, m in enumerate(moduli) if m]
    big = [row + [moduli[i] if i == k else 0 for k in extra] for i, row in enumerate(A)]
    sol = solve_int(big, b, ncols=cols + len(extra), certificate=certificate)
    if sol is None or isinstance(sol, Certificate):
        if isinstance(sol, Certificate):
            # y.[A | diag m] = 0 mod d, so the row also kills A modulo d
            return sol
        return None
    x = sol.particular[:cols]
    return x


# ---------------------------------------------------------------------------
# mixed systems over Q/Z, Z and Z/m

DIV = -1
"""Modulus tag for a Q/Z coordinate."""


@dataclass(frozen=True)
class NoSolution:
    """Insolubility witness for a mixed system: ``certificate`` refers to the
    reduced integer congruence system ``system`` (rows, rhs, moduli)."""

    reason: str
    certificate: Certificate | None
    system: tuple | None = None

    def to_json(self):
        out = {"reason": self.reason}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - math.floor(x)


def solve_mixed(A, b, col_mod: Sequence[int], row_mod: Sequence[int]):
    """Solve A x = b where each unknown x_j lives in Q/Z (col_mod DIV),
    Z (0) or Z/m, and row i is read in Q/Z (row_mod DIV), Z (0) or Z/m.

    Rows read in Z or Z/m may not involve Q/Z unknowns.  Rows read in Q/Z
    may carry rational coefficients on the integer-type unknowns and must
    carry integer coefficients on the Q/Z unknowns.

    Returns the solution as a list (Fractions in [0,1) for Q/Z unknowns,
    reduced integers otherwise) or a NoSolution.
    """
    nrows = len(A)
    ncols = len(col_mod)
    if len(b) != nrows or len(row_mod) != nrows:
        raise InputError("dimension mismatch in mixed system")
    P = [j for j in range(ncols) if col_mod[j] == DIV]
    E = [j for j in range(ncols) if col_mod[j] != DIV]
    Rp = [i for i in range(nrows) if row_mod[i] == DIV]
    Re = [i for i in range(nrows) if row_mod[i] != DIV]
    for i in Re:
        for j in P:
            if A[i][j]:
                raise InputError("an integer-valued row depends on a Q/Z unknown")
        if Fraction(b[i]).denominator != 1 or any(Fraction(A[i][j]).denominator != 1 for j in E):
            raise InputError("integer-valued rows need integer coefficients")
    App = [[int(A[i][j]) for j in P] for i in Rp]
    for i in Rp:
        for j in P:
            if Fraction(A[i][j]).denominator != 1:
                raise InputError("Q/Z unknowns need integer coefficients")
    if Rp and P:
        res = snf(App)
        U, V, diag = res.U, res.V, res.diagonal
    else:
        U = identity(len(Rp))
        V = identity(len(P))
        diag = []
    rank = sum(1 for d in diag if d)
    # derived congruences on the integer-type unknowns
    W = U[rank:]
    Ape = [[Fraction(A[i][j]) for j in E] for i in Rp]
    bp = [Fraction(b[i]) for i in Rp]
    derived_rows, derived_rhs, derived_mod = [], [], []
    for w in W:
        coeffs = [sum(w[k] * Ape[k][j] for k in range(len(Rp))) for j in range(len(E))]
        rhs = sum(w[k] * bp[k] for k in range(len(Rp)))
        q = lcm(*(c.denominator for c in coeffs), rhs.denominator)
        derived_rows.append([int(c * q) for c in coeffs])
        derived_rhs.append(int(rhs * q))
        derived_mod.append(q)
    rows = [[int(A[i][j]) for j in E] for i in Re] + derived_rows
    rhs = [int(b[i]) for i in Re] + derived_rhs
    mods = [row_mod[i] for i in Re] + derived_mod
    # an integer-type unknown of modulus m may be shifted by m freely, which
    # the congruence solver handles since it looks for integer solutions
    if rows:
        xe = solve_congruences(rows, rhs, mods, certificate=True) if E else (
            [] if all((v % m if m else v) == 0 for v, m in zip(rhs, mods)) else None)
        if xe is None:
            return NoSolution("inconsistent constant rows", None, (rows, rhs, mods))
        if isinstance(xe, Certificate):
            return NoSolution("integer congruences are inconsistent", xe, (rows, rhs, mods))
    else:
        xe = [0] * len(E)
    c = [bp[k] - sum(Ape[k][j] * xe[j] for j in range(len(E))) for k in range(len(Rp))]
    Uc = [sum(U[i][k] * c[k] for k in range(len(Rp))) for i in range(len(Rp))]
    y = [Fraction(0)] * len(P)
    for i in range(min(rank, len(P))):
        y[i] = Uc[i] / diag[i]
    xp = [sum(V[r][i] * y[i] for i in range(len(P))) for r in range(len(P))]
    x = [None] * ncols
    for j, v in zip(P, xp):
        x[j] = _frac_mod1(v)
    for j, v in zip(E, xe):
        m = col_mod[j]
        x[j] = v % m if m else v
    return x
