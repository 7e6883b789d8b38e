"""Tests for the codimension-one local structure of the plane scheme.

Two independent oracles back the case-table implementation:

* a combinatorial one — the ideal of degree-h monomials other than the
  admissible shifts of the offset vector, rebuilt here from scratch;
* a symbolic one — coefficient extraction from the defining binomial
  relation under the tautological plane substitution (sympy).
"""

import itertools
import random

import pytest
import sympy

from toricfano.localscheme import (
    HeightCoords,
    HypothesesViolated,
    MonomialSet,
    choose_w,
    height_coordinates,
    is_isolated,
    local_ring_basis,
    multiplicity,
    multiplicity_by_height,
    s_u,
    s_u_case,
)
from toricfano.intlinalg import lattice_basis
from toricfano.pointconfig import PointConfiguration

from test_pointconfig import QUARTIC, SQUARE

# Five lattice points whose isolated fixed line has multiplicity two.
FIVE = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2)]
# Four lattice points whose isolated fixed line is reduced.
FOUR = [(0, 0), (1, 0), (0, 1), (2, 1)]
# Isolated fixed line but only the apex at height one.
STEEP = [(0, 0), (1, 0), (0, 1), (3, 2)]


def config(points):
    return PointConfiguration(tuple(tuple(p) for p in points))


# ---------------------------------------------------------------------------
# independent oracles


def degree_slice(n, h):
    return [g for g in itertools.product(range(h + 1), repeat=n) if sum(g) == h]


def oracle_ideal(hc, k):
    """Degree-h monomials not of the form cvec + e_i with all entries >= 0."""
    n = k + 1
    c = hc.cvec
    keep = set()
    for i in range(n):
        cand = tuple(x + (1 if t == i else 0) for t, x in enumerate(c))
        if all(x >= 0 for x in cand):
            keep.add(cand)
    return [g for g in degree_slice(n, hc.h) if g not in keep]


def divides(g, alpha):
    return all(a >= b for a, b in zip(alpha, g))


def symbolic_unmatched(hc, k):
    """Exponents forced to vanish when matching coefficients of the relation.

    Substituting the tautological plane into the binomial relation of the
    point gives (sum_i s_i x_i) * prod s_i^{c_i+} = (sum_i s_i z_i)^h *
    prod s_i^{c_i-}.  Every s-monomial on the right without a partner on
    the left forces its z-coefficient into the defining ideal.
    """
    n = k + 1
    c = hc.cvec
    cplus = [max(x, 0) for x in c]
    cminus = [max(-x, 0) for x in c]
    s = sympy.symbols(f"s0:{n}")
    z = sympy.symbols(f"z0:{n}")
    rhs = sympy.expand(
        sum(s[i] * z[i] for i in range(n)) ** hc.h
        * sympy.prod([s[i] ** cminus[i] for i in range(n)])
    )
    left_exponents = {
        tuple(cplus[t] + (1 if t == j else 0) for t in range(n)) for j in range(n)
    }
    unmatched = set()
    for monom, _ in sympy.Poly(rhs, *s, *z).terms():
        if tuple(monom[:n]) not in left_exponents:
            unmatched.add(tuple(monom[n:]))
    return unmatched


def random_height_coords(rng):
    while True:
        k = rng.randint(1, 3)
        h = rng.randint(1, 4)
        c = tuple(rng.randint(-3, 3) for _ in range(k))
        hc = HeightCoords(h=h, c=c)
        if any(hc.cvec):  # the all-zero vector marks the apex itself
            return hc, k


# ---------------------------------------------------------------------------
# MonomialSet


def test_minimal_generators_deduplicated_and_divisor_closed():
    ms = MonomialSet.from_ideal(2, [(0, 1), (1, 1), (2, 0), (0, 2), (0, 1)])
    assert ms.ideal_part == ((0, 1), (2, 0))


def test_zero_generator_gives_empty_set():
    ms = MonomialSet.from_ideal(3, [(0, 0, 0), (1, 2, 0)])
    assert ms.ideal_part == ((0, 0, 0),)
    assert ms.is_finite
    assert ms.finite_part == ()
    assert ms.cardinality() == 0
    assert not ms.contains((0, 0, 0))


def test_empty_ideal_describes_whole_orthant():
    ms = MonomialSet.from_ideal(2, [])
    assert not ms.is_finite
    assert ms.cardinality() is None
    assert ms.contains((7, 9))


def test_finite_part_graded_lexicographic():
    ms = MonomialSet.from_ideal(2, [(2, 0), (1, 1), (0, 2)])
    assert ms.finite_part == ((0, 0), (0, 1), (1, 0))
    assert ms.cardinality() == 3


def test_contains_rejects_negative_and_wrong_length():
    ms = MonomialSet.from_ideal(2, [(1, 1)])
    assert not ms.contains((-1, 0))
    assert ms.contains((5, 0))
    with pytest.raises(ValueError):
        ms.contains((1, 1, 1))


def test_generators_must_be_nonnegative():
    with pytest.raises(ValueError):
        MonomialSet.from_ideal(2, [(1, -1)])


def test_finite_membership_matches_enumeration():
    ms = MonomialSet.from_ideal(2, [(3, 0), (1, 1), (0, 2)])
    listed = set(ms.finite_part)
    for alpha in itertools.product(range(5), repeat=2):
        assert ms.contains(alpha) == (alpha in listed)


# ---------------------------------------------------------------------------
# height coordinates


def test_height_coords_identity_fields():
    hc = HeightCoords(h=3, c=(1, -2))
    assert hc.c0 == 3 - 1 - (1 - 2)
    assert hc.cvec == (3, 1, -2)


def test_height_coords_rejects_negative_height():
    with pytest.raises(ValueError):
        HeightCoords(h=-1, c=(0,))


def test_choose_w_quartic_unique():
    a = config(QUARTIC)
    assert choose_w(a, (0, 2)) == (0, 1)


def test_choose_w_lex_tie_break():
    # Both (0, 1) and (1, 1) put every point at nonnegative integer height
    # over the bottom edge of the square; the smaller tuple wins.
    a = config(SQUARE)
    assert choose_w(a, (0, 2)) == (0, 1)


def test_choose_w_skips_non_basis_points():
    # (2, 2) spans an index-two sublattice with the bottom edge of FIVE.
    a = config(FIVE)
    assert choose_w(a, (0, 1)) == (0, 1)


def test_height_coordinates_of_apex_and_base():
    a = config(QUARTIC)
    w = choose_w(a, (0, 2))
    at_w = height_coordinates(a, (0, 2), w, w)
    assert (at_w.h, at_w.c) == (1, (0,))
    at_v0 = height_coordinates(a, (0, 2), w, (0, 0))
    assert (at_v0.h, at_v0.c) == (0, (0,))
    at_v1 = height_coordinates(a, (0, 2), w, (1, 0))
    assert (at_v1.h, at_v1.c) == (0, (-1,))
    assert at_v1.cvec == (0, -1)


def test_height_coordinates_quartic_top_point():
    a = config(QUARTIC)
    hc = height_coordinates(a, (0, 2), (0, 1), (1, 2))
    assert (hc.h, hc.c) == (2, (-1,))
    assert hc.cvec == (2, -1)


def test_height_coordinates_reject_dependent_apex():
    a = config(QUARTIC)
    with pytest.raises(HypothesesViolated):
        height_coordinates(a, (0, 2), (1, 0), (1, 2))


def test_height_coordinates_reject_fractional_point():
    a = config(FIVE)
    with pytest.raises(HypothesesViolated):
        height_coordinates(a, (0, 1), (0, 2), (0, 1))


# ---------------------------------------------------------------------------
# case classification


@pytest.mark.parametrize(
    "h,c,expected",
    [
        (2, (-1,), 1),  # cvec (2, -1)
        (0, (-1,), 1),  # cvec (0, -1): base vertex pattern
        (3, (1, -1), 2),  # cvec (2, 1, -1)
        (4, (0, 0), 3),  # cvec (3, 0, 0)
        (1, (0,), 3),  # cvec (0, 0): the apex pattern
        (4, (2, 0), 4),  # cvec (1, 2, 0)
        (4, (1, 1), 5),  # cvec (1, 1, 1)
        (1, (2,), 6),  # cvec (-2, 2)
        (2, (-2,), 6),  # cvec (3, -2)
        (2, (1, -2), 6),  # cvec (2, 1, -2): entry below -1, no pattern fits
        (2, (1, -1), 2),  # cvec (1, 1, -1)
    ],
)
def test_case_classifier(h, c, expected):
    assert s_u_case(HeightCoords(h=h, c=c)) == expected


# ---------------------------------------------------------------------------
# standard monomial sets


def test_s_u_case_one_quartic():
    basis = s_u(HeightCoords(h=2, c=(-1,)), 1)
    assert basis.ideal_part == ((0, 2), (1, 1))
    assert not basis.is_finite
    for lam in range(6):
        assert basis.contains((lam, 0))
    assert basis.contains((0, 1))
    assert not basis.contains((0, 2))
    assert not basis.contains((1, 1))


def test_s_u_case_one_height_zero_keeps_axis():
    basis = s_u(HeightCoords(h=0, c=(-1,)), 1)
    assert basis.ideal_part == ((0, 1),)
    assert basis.contains((4, 0))
    assert not basis.contains((0, 1))


def test_s_u_case_six_is_truncation():
    basis = s_u(HeightCoords(h=2, c=(-2,)), 1)
    assert basis.ideal_part == ((0, 2), (1, 1), (2, 0))
    assert basis.is_finite
    assert basis.finite_part == ((0, 0), (0, 1), (1, 0))


def test_s_u_apex_pattern_keeps_tangent_line():
    # cvec identically zero: everything of offset weight at most one stays.
    basis = s_u(HeightCoords(h=1, c=(0,)), 1)
    assert basis.ideal_part == ((0, 2),)
    assert basis.contains((9, 1))
    assert not basis.contains((0, 2))


def test_s_u_rejects_wrong_offset_length():
    with pytest.raises(ValueError):
        s_u(HeightCoords(h=2, c=(0, 0)), 1)


@pytest.mark.parametrize(
    "h,c,k",
    [
        (2, (-1,), 1),  # case 1
        (3, (1, -1), 2),  # case 2
        (4, (0, 0), 2),  # case 3
        (4, (2, 0), 2),  # case 4
        (4, (1, 1), 2),  # case 5
        (2, (-2,), 1),  # case 6
        (2, (1, -1), 2),  # case 2 with mixed signs
        (2, (1, -2), 2),  # case 6 with mixed signs
    ],
)
def test_s_u_matches_both_oracles(h, c, k):
    hc = HeightCoords(h=h, c=c)
    fast = s_u(hc, k)
    combinatorial = oracle_ideal(hc, k)
    symbolic = symbolic_unmatched(hc, k)
    assert set(combinatorial) == symbolic
    assert fast.ideal_part == MonomialSet.from_ideal(k + 1, symbolic).ideal_part


def test_s_u_matches_oracle_on_random_coordinates():
    rng = random.Random(20260823)
    for _ in range(120):
        hc, k = random_height_coords(rng)
        fast = s_u(hc, k)
        gens = oracle_ideal(hc, k)
        bound = hc.h + k + 2
        for alpha in itertools.product(range(bound + 1), repeat=k + 1):
            if sum(alpha) > bound:
                continue
            expected = not any(divides(g, alpha) for g in gens)
            assert fast.contains(alpha) == expected, (hc, alpha)


def test_s_u_random_coordinates_match_symbolic_oracle():
    rng = random.Random(97)
    for _ in range(25):
        hc, k = random_height_coords(rng)
        assert set(oracle_ideal(hc, k)) == symbolic_unmatched(hc, k)


# ---------------------------------------------------------------------------
# local ring basis and multiplicity


def test_quartic_local_basis_is_axis_plus_one_point():
    a = config(QUARTIC)
    basis = local_ring_basis(a, (0, 2))
    assert basis.ideal_part == ((0, 2), (1, 1))
    assert not basis.is_finite
    # the line direction is free, the transverse direction truncated
    assert basis.contains((5, 0))
    assert basis.contains((0, 1))
    assert not basis.contains((0, 5))
    assert not basis.contains((1, 1))
    assert not is_isolated(a, (0, 2))
    with pytest.raises(HypothesesViolated):
        multiplicity(a, (0, 2))
    with pytest.raises(HypothesesViolated):
        multiplicity_by_height(a, (0, 2))


def test_square_ruling_line_not_isolated():
    a = config(SQUARE)
    basis = local_ring_basis(a, (0, 2))
    assert basis.ideal_part == ((0, 1),)
    assert not basis.is_finite


def test_five_point_multiplicity_two_both_ways():
    a = config(FIVE)
    basis = local_ring_basis(a, (0, 1))
    assert basis.ideal_part == ((0, 1), (2, 0))
    assert basis.finite_part == ((0, 0), (1, 0))
    assert is_isolated(a, (0, 1))
    assert multiplicity(a, (0, 1)) == 2
    assert multiplicity_by_height(a, (0, 1)) == 2


def test_four_point_multiplicity_one_both_ways():
    a = config(FOUR)
    basis = local_ring_basis(a, (0, 1))
    assert basis.ideal_part == ((0, 1), (1, 0))
    assert basis.finite_part == ((0, 0),)
    assert multiplicity(a, (0, 1)) == 1
    assert multiplicity_by_height(a, (0, 1)) == 1


def test_simplex_alone_gives_whole_ring():
    a = config([(0, 0), (1, 0), (0, 1)])
    basis = local_ring_basis(a, (0, 1))
    assert basis.ideal_part == ()
    assert not basis.is_finite
    assert not is_isolated(a, (0, 1))


def test_steep_point_isolated_but_no_second_height_one():
    a = config(STEEP)
    assert choose_w(a, (0, 1)) == (0, 1)
    basis = local_ring_basis(a, (0, 1))
    assert basis.is_finite
    assert multiplicity(a, (0, 1)) == 3
    with pytest.raises(HypothesesViolated):
        multiplicity_by_height(a, (0, 1))


def test_segment_point_scheme_never_isolated():
    # Zero-planes on a curve: the plane scheme is the curve itself.
    a = config([(0,), (1,), (3,)])
    assert choose_w(a, (0,)) == (1,)
    basis = local_ring_basis(a, (0,))
    assert basis.ideal_part == ()
    assert not basis.is_finite


def test_basis_is_intersection_of_per_point_sets():
    a = config(FIVE)
    face = a.face_from_indices((0, 1))
    w = choose_w(a, face)
    per_point = [
        s_u(height_coordinates(a, face, w, u), face.dim)
        for u in a.points
        if u not in set(face.points) | {w}
    ]
    basis = local_ring_basis(a, face)
    for alpha in itertools.product(range(6), repeat=2):
        assert basis.contains(alpha) == all(m.contains(alpha) for m in per_point)


def all_valid_apexes(a, face):
    """Re-derive the candidate apex list from its definition."""
    target = a.difference_basis
    v0 = face.points[0]
    out = []
    for w in a.points:
        if w in set(face.points):
            continue
        rows = [tuple(x - y for x, y in zip(w, v0))] + [
            tuple(x - y for x, y in zip(v, v0)) for v in face.points[1:]
        ]
        if lattice_basis(rows) != target:
            continue
        try:
            if all(
                height_coordinates(a, face, w, u).h >= 0 for u in a.points
            ):
                out.append(w)
        except HypothesesViolated:
            continue
    return out


@pytest.mark.parametrize("points,sigma", [(FIVE, (0, 1)), (FOUR, (0, 1)), (SQUARE, (0, 2))])
def test_basis_cardinality_independent_of_apex(points, sigma):
    a = config(points)
    face = a.face_from_indices(sigma)
    apexes = all_valid_apexes(a, face)
    assert choose_w(a, face) == min(apexes)
    results = []
    for w in apexes:
        gens = []
        for u in a.points:
            if u in set(face.points) | {w}:
                continue
            gens.extend(s_u(height_coordinates(a, face, w, u), face.dim).ideal_part)
        results.append(MonomialSet.from_ideal(face.dim + 1, gens))
    assert len(apexes) >= 2
    assert len({m.is_finite for m in results}) == 1
    assert len({m.cardinality() for m in results}) == 1


# ---------------------------------------------------------------------------
# hypothesis violations


def test_sigma_must_be_a_face():
    a = config(QUARTIC)
    with pytest.raises(HypothesesViolated):
        choose_w(a, (0, 3))  # interior diagonal, not a face


def test_sigma_must_have_codimension_one():
    a = config(QUARTIC)
    with pytest.raises(HypothesesViolated):
        choose_w(a, (0,))


def test_sigma_must_be_smooth():
    # Heights 2 and 3 over the bottom edge generate a numerical semigroup
    # with a gap, so the chart at the edge's fixed point is singular.
    a = config([(0, 0), (1, 0), (0, 2), (0, 3)])
    with pytest.raises(HypothesesViolated):
        local_ring_basis(a, (0, 1))


def test_lattice_stretched_configuration_is_smooth():
    # The ambient embedding is irrelevant: relative to its own difference
    # lattice this triangle is the unit simplex, so the hypotheses hold and
    # the local ring is the whole power series ring.
    a = config([(0, 0), (1, 0), (0, 2)])
    assert local_ring_basis(a, (0, 1)).ideal_part == ()


def test_zero_dimensional_configuration_rejected():
    a = config([(5, 5)])
    with pytest.raises(HypothesesViolated):
        choose_w(a, (0,))
