import itertools
from fractions import Fraction

import pytest

from nclift.abgroup import GroupHom, coordinate_group, cyclic, enumerate_group, free
from nclift.cohomology import (
    CoeffModule,
    Cochain,
    cochain_from_json,
    cocycle_defect,
    cohomology_group,
    crossed_homs,
    differential,
    ext_group,
    h2_structural,
    inflate,
    is_coboundary,
)
from nclift.exact import InputError, NoSolution, SizeError

from oracles import h2_brute_force_order, h2_invariants, primary_parts, schur_multiplier

SMALL_GROUPS = [(2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2)]


def _mult(inv, kind, N):
    if kind == "trivial":
        return [1] * len(inv)
    return [(-1 if d % 2 == 0 else 1) % N for d in inv]


def _grid():
    for inv in [(2,), (4,), (2, 2), (6,), (2, 4)]:
        for N in (2, 3, 4):
            for kind in ("trivial", "inversion"):
                yield inv, N, kind


@pytest.mark.parametrize("inv,N,kind", list(_grid()))
def test_h2_cyclic_coefficients_match_kernel_counting(inv, N, kind):
    A = coordinate_group(list(inv))
    mult = _mult(inv, kind, N)
    H = cohomology_group(A, CoeffModule.cyclic(A, N, mult), 2)
    assert primary_parts(H.group.torsion) == h2_invariants(inv, N, mult)
    assert H.divisible == 0 and H.free_rank == 0


@pytest.mark.parametrize("inv,N,mult", [
    ((2,), 2, [1]), ((3,), 3, [1]), ((4,), 2, [1]), ((2, 2), 2, [1, 1]),
    ((2,), 4, [3]), ((4,), 3, [2]), ((5,), 2, [1]),
])
def test_h2_order_matches_literal_enumeration(inv, N, mult):
    A = coordinate_group(list(inv))
    H = cohomology_group(A, CoeffModule.cyclic(A, N, mult), 2)
    assert H.order == h2_brute_force_order(inv, N, mult)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
@pytest.mark.parametrize("N", [2, 3, 4])
def test_cyclic_group_periodicity(n, N):
    # H^1 = Hom(Z/n, Z/N) and H^3 = H^1 for a cyclic group acting trivially
    A = cyclic(n)
    M = CoeffModule.cyclic(A, N)
    h1 = cohomology_group(A, M, 1)
    h3 = cohomology_group(A, M, 3)
    homs = sum(1 for x in range(N) if (n * x) % N == 0)
    assert h1.order == homs
    assert h3.order == homs


@pytest.mark.parametrize("inv", [(2,), (4,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (2, 6)])
def test_schur_multiplier_with_divisible_coefficients(inv):
    A = coordinate_group(list(inv))
    H = cohomology_group(A, CoeffModule.divisible(A), 2)
    assert primary_parts(H.group.torsion) == primary_parts(schur_multiplier(inv))
    assert H.divisible == 0


@pytest.mark.parametrize("inv", SMALL_GROUPS)
def test_cyclic_coefficients_stabilise_at_square_order(inv):
    A = coordinate_group(list(inv))
    L = A.order ** 2
    low = cohomology_group(A, CoeffModule.cyclic(A, L), 2)
    high = cohomology_group(A, CoeffModule.cyclic(A, L * A.order), 2)
    assert low.group.isomorphic(high.group)


def test_sign_action_on_circle():
    A = cyclic(4)
    M = CoeffModule.divisible(A, [-1])
    assert cohomology_group(A, M, 1).is_trivial()
    assert cohomology_group(A, M, 2).describe() == "Z/2"


def test_structural_h2_for_lattices():
    assert h2_structural(free(2)).describe() == "Q/Z"
    assert h2_structural(free(3)).describe() == "Q/Z + Q/Z + Q/Z"
    assert h2_structural(coordinate_group([0, 0, 2])).describe() == "Z/2 + Z/2 + Q/Z"
    assert ext_group(free(2)).is_trivial()
    assert ext_group(cyclic(2)).is_trivial()
    A = cyclic(4)
    assert ext_group(A, CoeffModule.cyclic(A, 6)).describe() == "Z/2"


def test_differential_squares_to_zero():
    A = coordinate_group([2, 2])
    M = CoeffModule.cyclic(A, 4, [3, 1])
    els = enumerate_group(A)
    f = Cochain.from_function(M, 1, lambda a: (els.index(a) * 3,), normalize=True)
    assert differential(differential(f)).is_zero()
    assert cocycle_defect(differential(f)) is None


def test_class_coordinates_roundtrip():
    A = coordinate_group([2, 2])
    M = CoeffModule.cyclic(A, 2)
    H = cohomology_group(A, M, 2)
    assert H.describe() == "Z/2 + Z/2 + Z/2"
    for coords in itertools.product(range(2), repeat=3):
        el = H.group(list(coords))
        rep = H.representative(el)
        assert cocycle_defect(rep) is None
        assert H.class_of(rep) == el
    # a coboundary has class zero, and adding one does not move a class
    els = enumerate_group(A)
    f = Cochain.from_function(M, 1, lambda a: (els.index(a) % 2,), normalize=True)
    rep = H.representative(H.group([1, 0, 1]))
    assert H.class_of(differential(f)).is_zero()
    assert H.class_of(rep + differential(f)) == H.group([1, 0, 1])


def test_is_coboundary_returns_primitive():
    A = cyclic(4)
    M = CoeffModule.divisible(A)
    els = enumerate_group(A)
    f = Cochain.from_function(M, 1, lambda a: (Fraction(els.index(a), 7),), normalize=True)
    omega = differential(f)
    varpi = is_coboundary(omega)
    assert differential(varpi) == omega


def test_nontrivial_class_gives_certificate():
    A = coordinate_group([2, 2])
    M = CoeffModule.divisible(A)
    # the commutator pairing b(a, b) = a_1 b_0 / 2 is not symmetric
    omega = Cochain.from_function(M, 2, lambda a, b: (Fraction(a.coords[1] * b.coords[0], 2),), normalize=True)
    assert cocycle_defect(omega) is None
    assert isinstance(is_coboundary(omega), NoSolution)
    with pytest.raises(InputError):
        is_coboundary(Cochain(M, 2, {(1, 2): (Fraction(1, 3),)}))


def test_crossed_homs_of_inversion_action():
    A = cyclic(2)
    Z1 = crossed_homs(A, CoeffModule.cyclic(A, 4, [3]))
    # c(1) = x with x + (-x) = 0: every x works
    assert Z1.order == 4
    assert Z1.h1.order == 2


def test_inflation_preserves_cocycles():
    A, B = cyclic(4), cyclic(2)
    q = GroupHom(A, B, [[1]])
    M = CoeffModule.cyclic(B, 2)
    H = cohomology_group(B, M, 2)
    rep = H.representative(H.group([1]))
    inf = inflate(rep, q)
    assert cocycle_defect(inf) is None


def test_cochain_json_roundtrip():
    A = cyclic(3)
    M = CoeffModule.divisible(A)
    c = Cochain(M, 2, {(1, 1): (Fraction(1, 3),), (2, 1): (Fraction(2, 9),)})
    assert cochain_from_json(M, c.to_json()) == c


def test_size_limits():
    A = coordinate_group([2, 2, 2, 2, 2])
    with pytest.raises(SizeError):
        cohomology_group(A, CoeffModule.cyclic(A, 2), 3)
    with pytest.raises(InputError):
        cohomology_group(cyclic(2), CoeffModule.cyclic(cyclic(3), 2), 2)
