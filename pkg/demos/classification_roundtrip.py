"""Classify the lifts of C[Z/2] along Z/2 -> (Z/2)^3 -> (Z/2)^2, twist by
every class, and confirm that the class twist is inequivalent while a
coboundary twist is equivalent to the original."""

from fractions import Fraction

from nclift.abgroup import ExtensionSeq, GroupHom, coordinate_group, enumerate_group
from nclift.cohomology import Cochain, differential
from nclift.lifting import classify, equivalence_test, toy_structure, twist
from nclift.twistalg import group_algebra

ext = ExtensionSeq(
    GroupHom(coordinate_group([2]), coordinate_group([2, 2, 2]), [[1], [0], [0]]),
    GroupHom(coordinate_group([2, 2, 2]), coordinate_group([2, 2]), [[0, 1, 0], [0, 0, 1]]),
)
P, S = toy_structure(group_algebra(coordinate_group([])), ext)

report = classify(P, S)
print("central units:", report.units.describe())
print("H2:", report.describe(), f"({report.checked_pairs} pairs checked inequivalent)")

um = report.units
els = enumerate_group(S.Zstar)
f = Cochain.from_function(um.module, 1, lambda chi: (Fraction(els.index(chi), 5),), normalize=True)
res = equivalence_test(S, twist(S, differential(f), um), um)
print("coboundary twist equivalent:", res.equivalent)
print("  varpi:", ", ".join(f"{list(x.coords)} -> {res.varpi(x)[0]}" for x in els))

res = equivalence_test(S, report.twists[0], um)
print("class twist equivalent:", res.equivalent)
