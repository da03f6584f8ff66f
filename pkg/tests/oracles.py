"""Independent reference computations used to freeze expected values.

Nothing here imports the package's linear algebra: the oracles work with
plain tuples, brute force, determinantal divisors and kernel counting.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction


# ---------------------------------------------------------------------------
# Smith form via determinantal divisors


def _det(m):
    m = [list(map(Fraction, r)) for r in m]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(d)


def invariant_factors(M):
    """d_k = D_k / D_{k-1} with D_k the gcd of all k x k minors."""
    rows, cols = len(M), len(M[0]) if M else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


# ---------------------------------------------------------------------------
# numeric cyclotomic evaluation


def cyc_value(coeffs, conductor):
    z = cmath.exp(2j * math.pi / conductor)
    return sum(complex(float(c)) * z ** k for k, c in enumerate(coeffs))


# ---------------------------------------------------------------------------
# normal ordering by rewriting words


def rewrite_product(theta, corrections, a, b):
    """u^a u^b in a Z^n monomial algebra computed by moving single
    generators past each other with u_k u_l = e(theta_kl) u^{d_kl} u_l u_k
    (k > l).  Correction monomials must be central.  Returns (phase, exp)."""
    n = len(a)
    word = []
    for k in range(n):
        word += [(k, 1 if a[k] > 0 else -1)] * abs(a[k])
    for k in range(n):
        word += [(k, 1 if b[k] > 0 else -1)] * abs(b[k])
    phase = Fraction(0)
    central = [0] * n
    # bubble sort into increasing generator order, tracking the phase
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            (k, s), (l, t) = word[i], word[i + 1]
            if k == l and s == -t:
                del word[i:i + 2]
                changed = True
                continue
            if k > l:
                # u_k^s u_l^t = e(s t theta_kl) u^{s t d_kl} u_l^t u_k^s
                phase += s * t * Fraction(theta[k][l])
                d = corrections.get((k, l))
                if d:
                    for j in range(n):
                        central[j] += s * t * d[j]
                word[i], word[i + 1] = word[i + 1], word[i]
                changed = True
            i += 1
    exp = [0] * n
    for k, s in word:
        exp[k] += s
    exp = [x + c for x, c in zip(exp, central)]
    return (phase - math.floor(phase), tuple(exp))


# ---------------------------------------------------------------------------
# group cohomology with cyclic coefficients


def elements(inv):
    return list(itertools.product(*(range(d) for d in inv)))


def add(inv, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, inv))


def cocycle_matrices(inv, N, mult):
    """Normalized bar differentials d1: C^1 -> C^2, d2: C^2 -> C^3 for the
    group prod Z/inv acting on Z/N through x -> prod mult_i^{x_i}."""
    els = elements(inv)
    nz = els[1:]
    m = len(nz)
    idx = {e: i for i, e in enumerate(nz)}

    def act(g):
        r = 1
        for gi, mu in zip(g, mult):
            r *= mu ** gi
        return r % N

    d1 = []
    for a, b in itertools.product(nz, nz):
        row = [0] * m
        # (d f)(a, b) = a.f(b) - f(a + b) + f(a)
        row[idx[b]] += act(a)
        ab = add(inv, a, b)
        if ab in idx:
            row[idx[ab]] -= 1
        row[idx[a]] += 1
        d1.append([v % N for v in row])
    pairs = list(itertools.product(nz, nz))
    pidx = {p: i for i, p in enumerate(pairs)}
    d2 = []
    for a, b, c in itertools.product(nz, nz, nz):
        row = [0] * len(pairs)
        row[pidx[(b, c)]] += act(a)
        ab, bc = add(inv, a, b), add(inv, b, c)
        if ab in idx:
            row[pidx[(ab, c)]] -= 1
        if bc in idx:
            row[pidx[(a, bc)]] += 1
        row[pidx[(a, b)]] -= 1
        d2.append([v % N for v in row])
    return d1, d2, pairs


def _vp(x, p):
    if x == 0:
        return math.inf
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def kernel_size(rows, ncols, p, k):
    """|{x in (Z/p^k)^ncols : rows x = 0}|.

    A minimal-valuation pivot p^v u divides every other entry, so its row
    and column can be cleared; each pivot contributes p^v solutions for its
    coordinate and every column without a pivot contributes p^k.
    """
    N = p ** k
    A = [[v % N for v in r] for r in rows]
    cols = list(range(ncols))
    total = 0
    while A and cols:
        best = None
        for i, r in enumerate(A):
            for j in cols:
                v = _vp(r[j], p)
                if v < k and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        piv = A.pop(i)
        pv = piv[j]
        for r in A:
            if r[j]:
                f = r[j] // p ** v * pow(pv // p ** v, -1, N) % N
                for t in cols:
                    r[t] = (r[t] - f * piv[t]) % N
        # column operations clearing the pivot row do not touch the other
        # rows any more (their column j is now zero)
        cols.remove(j)
        total += v
    total += k * len(cols)
    return p ** total


def h2_invariants_prime_power(inv, N, mult):
    """Invariant factors of H^2(A, Z/N) for N a prime power, from
    |H[p^j]| = |{(z, c) : d2 z = 0, p^j z = d1 c}| / (|ker d1| |B|)."""
    p = next(q for q in range(2, N + 1) if N % q == 0)
    k = round(math.log(N, p))
    d1, d2, pairs = cocycle_matrices(inv, N, mult)
    m = len(elements(inv)) - 1
    n2 = len(pairs)
    ker_d1 = kernel_size(d1, m, p, k)
    # |B| = N^m / |ker d1|
    B = N ** m // ker_d1
    sizes = []
    for j in range(0, k + 1):
        rows = []
        for r in d2:
            rows.append(list(r) + [0] * m)
        for t in range(n2):
            row = [0] * (n2 + m)
            row[t] = p ** j
            for c in range(m):
                row[n2 + c] = -d1[t][c]
            rows.append(row)
        S = kernel_size(rows, n2 + m, p, k)
        sizes.append(S // ker_d1 // B)
    # sizes[j] = |H[p^j]|; number of cyclic factors of order >= p^j is
    # log_p(sizes[j] / sizes[j-1])
    counts = [round(math.log(sizes[j] // sizes[j - 1], p)) if sizes[j] > sizes[j - 1] else 0
              for j in range(1, k + 1)]
    out = []
    for j in range(1, k + 1):
        ge_j = counts[j - 1]
        ge_next = counts[j] if j < k else 0
        out += [p ** j] * (ge_j - ge_next)
    return sorted(out)


def h2_invariants(inv, N, mult):
    """Primary decomposition over the prime powers of N."""
    out = []
    for p in range(2, N + 1):
        if N % p == 0 and all(p % q for q in range(2, p)):
            q = p
            while N % (q * p) == 0:
                q *= p
            out += h2_invariants_prime_power(inv, q, [m % q for m in mult])
    return sorted(out)


def h2_brute_force_order(inv, N, mult):
    """|Z^2| / |B^2| by enumerating every normalized 2-cochain."""
    d1, d2, pairs = cocycle_matrices(inv, N, mult)
    n2 = len(pairs)
    if N ** n2 > 300_000:
        raise ValueError("too large for brute force")
    z = 0
    for vals in itertools.product(range(N), repeat=n2):
        if all(sum(r[t] * vals[t] for t in range(n2)) % N == 0 for r in d2):
            z += 1
    m = len(d1[0]) if d1 else 0
    bset = set()
    for f in itertools.product(range(N), repeat=m):
        bset.add(tuple(sum(d1[t][c] * f[c] for c in range(m)) % N for t in range(n2)))
    return z // len(bset)


def schur_multiplier(inv):
    """H^2(A, Q/Z) for A = prod Z/d_i: prod_{i<j} Z/gcd(d_i, d_j) (primary parts)."""
    out = []
    for i in range(len(inv)):
        for j in range(i + 1, len(inv)):
            g = math.gcd(inv[i], inv[j])
            if g > 1:
                out.append(g)
    return out


def primary_parts(orders):
    """Split cyclic orders into prime-power parts."""
    out = []
    for o in orders:
        x = o
        p = 2
        while x > 1:
            if x % p == 0:
                q = 1
                while x % p == 0:
                    x //= p
                    q *= p
                out.append(q)
            p += 1
    return sorted(out)
