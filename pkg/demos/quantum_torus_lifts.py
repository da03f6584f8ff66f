"""Lifting the rational rotation algebra u v = e(1/4) v u along the doubling
map of Z^2, then checking one of the lifts by hand."""

from fractions import Fraction

from nclift.exact import format_rat
from nclift.lifting import qtorus_lift_solve, qtorus_lift_structure, restriction_check

theta = [[0, "1/4"], ["-1/4", 0]]
M = [[2, 0], [0, 2]]

sol = qtorus_lift_solve(theta, M)
print(f"{sol.count} lifts (index of the skew lattice map: {sol.index})")
for s in sol.solutions:
    print("  theta'_12 =", format_rat(s[0][1]))

# every lift squares back: 4 theta'_12 = 1/4 modulo 1
for s in sol.solutions:
    assert (4 * s[0][1] - Fraction(1, 4)).denominator == 1

# the first lift as an honest structure: the subalgebra spanned by
# even exponents is the original torus
P, S = qtorus_lift_structure(theta, M)
print("restriction holds:", restriction_check(S))

# a wrong guess fails the same check
P, S = qtorus_lift_structure(theta, M, theta_prime=[[0, "1/8"], ["-1/8", 0]])
ok, why = restriction_check(S, detail=True)
print("theta' = 1/8:", ok, "-", why[0])

# three generators, non-diagonal lattice
M3 = [[1, 1, 0], [0, 2, 1], [1, 0, 2]]
th3 = [[0, "1/3", "1/6"], ["-1/3", 0, "1/2"], ["-1/6", "-1/2", 0]]
print("n = 3 example:", qtorus_lift_solve(th3, M3).count, "classes")
