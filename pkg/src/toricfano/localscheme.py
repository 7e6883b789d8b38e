"""Local structure of the k-plane scheme at fixed points in codimension one.

When the plane dimension k is one less than the dimension of the
configuration, and the configuration is smooth at an empty-simplex facet
``sigma``, the coordinate ring of the chart of the k-plane scheme at the
corresponding fixed point has an explicit monomial basis.  This module
computes height coordinates of configuration points over ``sigma``, the
per-point standard-monomial sets, the basis of the local ring, isolation,
and the multiplicity of an isolated fixed plane — by counting the basis and,
independently, from the height filtration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .intlinalg import IntVector, integer_coordinates, lattice_basis, matrix_rank
from .pointconfig import Face, PointConfiguration


class HypothesesViolated(ValueError):
    """The codimension-one local-structure hypotheses fail for this input."""


@dataclass(frozen=True)
class HeightCoords:
    """Coordinates of a point over the base simplex in the direction of w.

    A point u is written uniquely as ``v_0 + h*(w - v_0) - sum c_i*(v_i - v_0)``
    over the simplex ``{v_0, ..., v_k}``; ``h >= 0`` is its height.  The
    derived coordinate ``c0 = h - 1 - sum(c)`` completes ``c`` to the full
    vector ``cvec = (c0, c_1, ..., c_k)``.
    """

    h: int
    c: tuple[int, ...]

    def __post_init__(self):
        if self.h < 0:
            raise ValueError("height must be nonnegative")

    @property
    def c0(self) -> int:
        return self.h - 1 - sum(self.c)

    @property
    def cvec(self) -> tuple[int, ...]:
        return (self.c0,) + self.c


@dataclass(frozen=True)
class MonomialSet:
    """A set of exponent vectors given as standard monomials of a monomial ideal.

    The set consists of all alpha in Z_{>=0}^nvars such that no generator in
    ``ideal_part`` divides alpha componentwise (the empty ideal describes the
    whole orthant).  When the set is finite, ``finite_part`` lists its
    members in graded lexicographic order.
    """

    nvars: int
    ideal_part: tuple[IntVector, ...]
    is_finite: bool
    finite_part: tuple[IntVector, ...]

    @staticmethod
    def from_ideal(nvars: int, gens: Iterable[Sequence[int]]) -> "MonomialSet":
        canon = _minimal_generators(nvars, gens)
        finite = all(
            any(all(g[j] == 0 for j in range(nvars) if j != i) for g in canon)
            for i in range(nvars)
        )
        members: tuple[IntVector, ...] = ()
        if finite:
            bounds = [
                min(
                    g[i]
                    for g in canon
                    if all(g[j] == 0 for j in range(nvars) if j != i)
                )
                for i in range(nvars)
            ]
            found = [
                alpha
                for alpha in product(*(range(b) for b in bounds))
                if not any(_divides(g, alpha) for g in canon)
            ]
            members = tuple(sorted(found, key=_graded_lex))
        return MonomialSet(
            nvars=nvars, ideal_part=canon, is_finite=finite, finite_part=members
        )

    def contains(self, alpha: Sequence[int]) -> bool:
        a = tuple(int(x) for x in alpha)
        if len(a) != self.nvars:
            raise ValueError("exponent vector has the wrong length")
        if any(x < 0 for x in a):
            return False
        return not any(_divides(g, a) for g in self.ideal_part)

    def cardinality(self) -> Optional[int]:
        return len(self.finite_part) if self.is_finite else None


def _graded_lex(alpha: Sequence[int]) -> tuple:
    return (sum(alpha), tuple(alpha))


def _divides(g: Sequence[int], alpha: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(alpha, g))


def _minimal_generators(
    nvars: int, gens: Iterable[Sequence[int]]
) -> tuple[IntVector, ...]:
    vecs = {tuple(int(x) for x in g) for g in gens}
    for g in vecs:
        if len(g) != nvars or any(x < 0 for x in g):
            raise ValueError("ideal generators must be nonnegative exponent vectors")
    minimal = [
        g for g in vecs if not any(o != g and _divides(o, g) for o in vecs)
    ]
    return tuple(sorted(minimal, key=_graded_lex))


def _validated_face(a: PointConfiguration, sigma: "Face | Sequence[int]") -> Face:
    if isinstance(sigma, Face):
        face = sigma
        if face.config != a:
            raise HypothesesViolated("sigma belongs to a different configuration")
    else:
        try:
            face = a.face_from_indices(sigma)
        except ValueError as exc:
            raise HypothesesViolated(f"sigma is not a face: {exc}") from exc
    k = a.dimension - 1
    if k < 0:
        raise HypothesesViolated("configuration must be at least one-dimensional")
    if face.dim != k or len(face.indices) != k + 1:
        raise HypothesesViolated(
            "sigma must be an empty-simplex face of dimension one less than "
            "the configuration"
        )
    if not a.is_smooth_at(face):
        raise HypothesesViolated("configuration is not smooth at sigma")
    return face


def _basis_rows(face: Face, w: IntVector) -> tuple[IntVector, ...]:
    vs = face.points
    v0 = vs[0]
    return (tuple(a - b for a, b in zip(w, v0)),) + tuple(
        tuple(a - b for a, b in zip(v, v0)) for v in vs[1:]
    )


def choose_w(a: PointConfiguration, sigma: "Face | Sequence[int]") -> IntVector:
    """The canonical apex point over the facet ``sigma``.

    Returns a configuration point ``w`` such that ``w - v_0`` together with
    the edge vectors of ``sigma`` is a lattice basis of the difference
    lattice and every configuration point has a nonnegative height; among
    all such points the lexicographically smallest is returned.
    """
    face = _validated_face(a, sigma)
    target = a.difference_basis
    sigma_points = set(face.points)
    candidates = []
    for w in a.points:
        if w in sigma_points:
            continue
        rows = _basis_rows(face, w)
        if lattice_basis(rows) != target:
            continue
        if all(
            (coords := integer_coordinates(rows, tuple(x - y for x, y in zip(u, face.points[0]))))
            is not None
            and coords[0] >= 0
            for u in a.points
        ):
            candidates.append(w)
    if not candidates:
        raise HypothesesViolated(
            "no configuration point at lattice height one over sigma"
        )
    return min(candidates)


def height_coordinates(
    a: PointConfiguration,
    sigma: "Face | Sequence[int]",
    w: Sequence[int],
    u: Sequence[int],
) -> HeightCoords:
    """The unique coordinates (h, c) of ``u`` over ``sigma`` with apex ``w``."""
    face = _validated_face(a, sigma)
    rows = _basis_rows(face, tuple(int(x) for x in w))
    if matrix_rank(rows) != len(rows):
        raise HypothesesViolated(
            "apex is affinely dependent on sigma; coordinates are not unique"
        )
    diff = tuple(int(x) - y for x, y in zip(u, face.points[0]))
    coords = integer_coordinates(rows, diff)
    if coords is None:
        raise HypothesesViolated(
            "point has no integral height coordinates over sigma with this apex"
        )
    if coords[0] < 0:
        raise HypothesesViolated("point has negative height over sigma")
    return HeightCoords(h=coords[0], c=tuple(-x for x in coords[1:]))


def s_u_case(hc: HeightCoords) -> int:
    """Which of the six standard-monomial case patterns matches (first match)."""
    c = hc.cvec
    n = len(c)
    for j in range(n):
        if c[j] != -1:
            continue
        for l in range(n):
            if l != j and all(c[i] == 0 for i in range(n) if i not in (j, l)):
                return 1
    for j in range(n):
        if c[j] == -1 and all(0 <= c[i] < hc.h for i in range(n) if i != j):
            return 2
    for j in range(n):
        if all(c[i] == 0 for i in range(n) if i != j):
            return 3
    positive = [i for i in range(n) if c[i] > 0]
    if len(positive) == 2 and all(c[i] == 0 for i in range(n) if i not in positive):
        return 4
    if all(x >= 0 for x in c) and sum(1 for x in c if x) >= 3:
        return 5
    return 6


def _degree_slice(n: int, h: int) -> list[IntVector]:
    """All nonnegative integer vectors of length n with coordinate sum h."""
    if n == 1:
        return [(h,)]
    out = []
    for first in range(h + 1):
        out.extend((first,) + rest for rest in _degree_slice(n - 1, h - first))
    return out


def s_u(hc: HeightCoords, k: int) -> MonomialSet:
    """The standard-monomial set attached to a point with these coordinates.

    Every exponent vector of total degree below the height belongs to the
    set; the matching case pattern determines which vectors of degree at
    least the height remain.
    """
    if len(hc.c) != k:
        raise ValueError(f"expected {k} offset coordinates, got {len(hc.c)}")
    n = k + 1
    h = hc.h
    c = hc.cvec
    case = s_u_case(hc)
    slice_h = _degree_slice(n, h)

    def shifted(i: int) -> IntVector:
        return tuple(x + (1 if t == i else 0) for t, x in enumerate(c))

    if case == 1:
        j = next(i for i in range(n) if c[i] == -1)
        l = next(
            t
            for t in range(n)
            if t != j and all(c[i] == 0 for i in range(n) if i not in (j, t))
        )
        axis_top = tuple(h if i == l else 0 for i in range(n))
        if h >= 1:
            gens = [g for g in slice_h if g != axis_top]
        else:
            gens = [tuple(1 if i == t else 0 for i in range(n)) for t in range(n) if t != l]
    elif case == 2:
        j = next(i for i in range(n) if c[i] == -1)
        keep = shifted(j)
        gens = [g for g in slice_h if g != keep]
    elif case == 3:
        j = next(
            t for t in range(n) if all(c[i] == 0 for i in range(n) if i != t)
        )
        if h >= 2:
            keep = {shifted(i) for i in range(n)}
            gens = [g for g in slice_h if g not in keep]
        else:
            gens = [
                tuple((1 if i == a else 0) + (1 if i == b else 0) for i in range(n))
                for a in range(n)
                for b in range(a, n)
                if a != j and b != j
            ]
    elif case in (4, 5):
        keep = {shifted(i) for i in range(n)}
        gens = [g for g in slice_h if g not in keep]
    else:
        gens = slice_h
    return MonomialSet.from_ideal(n, gens)


def local_ring_basis(
    a: PointConfiguration, sigma: "Face | Sequence[int]"
) -> MonomialSet:
    """Monomial basis of the local ring of the k-plane scheme at the fixed
    point of ``sigma``: the intersection of the per-point standard-monomial
    sets over all configuration points outside ``sigma`` and the apex."""
    face = _validated_face(a, sigma)
    w = choose_w(a, face)
    k = face.dim
    excluded = set(face.points) | {w}
    gens: list[IntVector] = []
    for u in a.points:
        if u in excluded:
            continue
        hc = height_coordinates(a, face, w, u)
        gens.extend(s_u(hc, k).ideal_part)
    return MonomialSet.from_ideal(k + 1, gens)


def is_isolated(a: PointConfiguration, sigma: "Face | Sequence[int]") -> bool:
    """Whether the fixed point of ``sigma`` is an isolated point of the
    k-plane scheme (finite local ring)."""
    return local_ring_basis(a, sigma).is_finite


def multiplicity(a: PointConfiguration, sigma: "Face | Sequence[int]") -> int:
    """Multiplicity of the isolated fixed plane: the basis cardinality."""
    basis = local_ring_basis(a, sigma)
    if not basis.is_finite:
        raise HypothesesViolated("fixed point is not isolated")
    return len(basis.finite_part)


def _is_nonneg_multiple(delta: IntVector, direction: IntVector) -> bool:
    if not any(delta):
        return True
    try:
        t = next(i for i in range(len(direction)) if direction[i])
    except StopIteration:
        return False
    if delta[t] % direction[t] or delta[t] * direction[t] < 0:
        return False
    n = delta[t] // direction[t]
    return n >= 0 and all(x == n * d for x, d in zip(delta, direction))


def multiplicity_by_height(
    a: PointConfiguration, sigma: "Face | Sequence[int]"
) -> int:
    """Multiplicity of an isolated fixed plane from the height filtration.

    Requires a second configuration point of height one besides the apex.
    Returns the smallest m at which the set of points of height at most m is
    contained in none of the translated rays ``sigma + N*(w - v_i)``.
    """
    face = _validated_face(a, sigma)
    basis = local_ring_basis(a, face)
    if not basis.is_finite:
        raise HypothesesViolated("fixed point is not isolated")
    w = choose_w(a, face)
    heights = {u: height_coordinates(a, face, w, u).h for u in a.points}
    if not any(h == 1 and u != w for u, h in heights.items()):
        raise HypothesesViolated("no second configuration point at height one")
    vs = face.points
    directions = [tuple(x - y for x, y in zip(w, v)) for v in vs]
    for m in range(1, max(heights.values()) + 1):
        layer = [u for u, h in heights.items() if h <= m]
        if not any(
            all(
                any(
                    _is_nonneg_multiple(tuple(x - y for x, y in zip(u, v)), d)
                    for v in vs
                )
                for u in layer
            )
            for d in directions
        ):
            return m
    raise HypothesesViolated(
        "every height layer lies on the translated rays; the fixed point "
        "cannot be isolated"
    )
