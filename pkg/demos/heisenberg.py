"""The Heisenberg algebra as a lift of the circle along Z -> Z^3 -> Z^2.

The Z^2 grading (by the u and v degrees) is strong.  The finer Z^3
decomposition into lines spanned by u^k v^l w^m is not multiplicative:
v u = w^{-1} u v, so the product of two pieces lands one step lower in w.
The quantum 3-torus with w central does the job instead."""

from nclift.lifting import (
    classify,
    freeness_check,
    heisenberg_structure,
    picard_data,
    restriction_check,
    torus3_structure,
)
from nclift.twistalg import heisenberg

H, g3, g2 = heisenberg()
u, v, w = H.gen(0), H.gen(1), H.gen(2)
print("u v == w v u:", u * v == w * v * u)
print("v u =", v * u)

P, S = heisenberg_structure()
rep = freeness_check(S)
print("Heisenberg:", rep)
print("  restriction:", restriction_check(S), " Picard trivial:", picard_data(S).trivial)
print("  H2 over invariant central units:", classify(P, S).describe())
print("  H2 over all central units:     ", classify(P, S, invariant_only=False).describe())

P, S = torus3_structure("1/3")
print("quantum 3-torus free:", bool(freeness_check(S)), " H2:", classify(P, S).describe())
