"""Independent oracles for the fast paths of the other modules.

Everything here recomputes from first principles: affine relation lattices
of faces, formal substitution of the block-plane parametrization into the
binomial relations, exact rational sampling of chart parametrizations, and
raw set-partition enumeration of Cayley structures.  The test suite holds
the fast implementations to agreement with these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from itertools import product
from typing import Iterable, Mapping, Sequence

from .cayley import CayleyStructure
from .components import chart_semigroup
from .intlinalg import (
    IntVector,
    UnsupportedSizeError,
    integer_kernel_basis,
    matrix_rank,
)
from .pointconfig import Face, PointConfiguration

BRUTE_FORCE_MAX_POINTS = 10
_SAMPLE_RANGE = 97


@dataclass(frozen=True)
class RelationBasis:
    """Basis of the affine relations among a face's points.

    Each vector is indexed like the face's points; its entries sum to zero
    and weight the points to a zero vector sum.  The basis spans the full
    (saturated) relation lattice.
    """

    face: Face
    vectors: tuple[IntVector, ...]


@dataclass(frozen=True)
class PlaneParametrization:
    """A specialized plane, one matrix row per spanning point, one column
    per configuration point, exact rational entries, full row rank."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if _rational_rank(rows) != len(rows):
            raise ValueError("plane matrix must have full row rank")


def _rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    cleared = []
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        cleared.append(tuple(int(x * lcm) for x in row))
    return matrix_rank(cleared)


def _as_face(a: PointConfiguration, tau: "Face | Sequence[int]") -> Face:
    face = tau if isinstance(tau, Face) else a.face_from_indices(tau)
    if face.config != a:
        raise ValueError("face belongs to a different configuration")
    return face


def relation_basis(a: PointConfiguration, tau: "Face | Sequence[int]") -> RelationBasis:
    """Saturated basis of the affine relation lattice of the face's points."""
    face = _as_face(a, tau)
    if not face.indices:
        return RelationBasis(face=face, vectors=())
    vectors = integer_kernel_basis(face.subconfiguration().homogenized)
    return RelationBasis(face=face, vectors=vectors)


def _substituted_sides(
    pi: CayleyStructure, relation: Sequence[int]
) -> tuple[tuple, tuple]:
    """Both sides of the binomial relation after the block substitution.

    Each point variable becomes (character for point - block representative)
    times the variable of its block; a side is summarized by its total
    character exponent and its block-exponent vector.
    """
    face = pi.face
    d = face.config.ambient_dim
    block_of = pi.block_of
    reps = [face.config.points[b[0]] for b in pi.blocks]
    sides = []
    for sign in (1, -1):
        char = [0] * d
        block_exp = [0] * len(pi.blocks)
        for pos, idx in enumerate(face.indices):
            mult = relation[pos] * sign
            if mult <= 0:
                continue
            b = block_of[idx]
            p = face.config.points[idx]
            for t in range(d):
                char[t] += mult * (p[t] - reps[b][t])
            block_exp[b] += mult
        sides.append((tuple(char), tuple(block_exp)))
    return sides[0], sides[1]


def verify_cayley_plane(a: PointConfiguration, pi: CayleyStructure) -> bool:
    """Whether the block plane of the partition lies on the toric variety.

    Substitutes the plane's parametrization into each binomial relation of
    the partition's face and demands formal equality of the two sides.
    Checking a basis of the face's relation lattice suffices: both side
    summaries are additive in the relation vector.  Relations of the full
    configuration with support off the face vanish identically on the
    plane — the face witness forces every such relation to touch the
    complement on both sides, where all plane coordinates are zero.
    """
    if pi.face.config != a:
        raise ValueError("structure belongs to a different configuration")
    for vec in relation_basis(a, pi.face).vectors:
        lhs, rhs = _substituted_sides(pi, vec)
        if lhs != rhs:
            return False
    return True


def specialized_chart_plane(
    a: PointConfiguration,
    pi: CayleyStructure,
    sigma_tilde: Sequence[int],
    sigma: Sequence[int],
    torus: Sequence[Fraction],
    coefficients: Mapping[tuple[int, int], Fraction],
) -> PlaneParametrization:
    """The plane of a chart point at given torus and coefficient values.

    Rows are indexed by the points of ``sigma``; the column of a face point
    whose block representative lies in ``sigma`` carries the character value
    of its offset in that row only, while a column represented outside
    ``sigma`` spreads the character value across all rows weighted by the
    coefficient attached to the (row point, representative) pair.  Columns
    off the face are zero.
    """
    chart = chart_semigroup(pi, sigma_tilde, sigma)
    face = pi.face
    t = tuple(Fraction(x) for x in torus)
    if len(t) != a.ambient_dim:
        raise ValueError("torus point has the wrong dimension")
    if any(x == 0 for x in t):
        raise ValueError("torus coordinates must be nonzero")
    s = tuple(sorted(sigma))
    rep_of_block = {pi.block_of[i]: i for i in sorted(sigma_tilde)}
    rows = []
    for v in s:
        row = [Fraction(0)] * len(a.points)
        for idx in face.indices:
            rep = rep_of_block[pi.block_of[idx]]
            char = _char_value(t, a.points[idx], a.points[rep])
            if rep in s:
                if rep == v:
                    row[idx] = char
            else:
                row[idx] = char * Fraction(coefficients[(v, rep)])
        rows.append(tuple(row))
    del chart
    return PlaneParametrization(matrix=tuple(rows))


def _char_value(t: Sequence[Fraction], p: IntVector, q: IntVector) -> Fraction:
    out = Fraction(1)
    for base, e in zip(t, (x - y for x, y in zip(p, q))):
        out *= base**e
    return out


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(key, Fraction(0)) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def _column_form(plane: PlaneParametrization, col: int) -> dict:
    nrows = len(plane.matrix)
    return {
        tuple(1 if r == i else 0 for r in range(nrows)): plane.matrix[i][col]
        for i in range(nrows)
        if plane.matrix[i][col]
    }


def relations_vanish_on(a: PointConfiguration, plane: PlaneParametrization) -> bool:
    """Whether every binomial relation of the configuration is identically
    zero on the plane, as a polynomial in the spanning coefficients."""
    if any(len(row) != len(a.points) for row in plane.matrix):
        raise ValueError("plane matrix must have one column per point")
    full = a.face_from_indices(range(len(a.points)))
    nrows = len(plane.matrix)
    one = {(0,) * nrows: Fraction(1)}
    forms = [_column_form(plane, col) for col in range(len(a.points))]
    for vec in relation_basis(a, full).vectors:
        lhs, rhs = one, one
        for col, mult in enumerate(vec):
            for _ in range(mult if mult > 0 else -mult):
                if mult > 0:
                    lhs = _poly_mul(lhs, forms[col])
                else:
                    rhs = _poly_mul(rhs, forms[col])
        if lhs != rhs:
            return False
    return True


def verify_chart_sample(
    a: PointConfiguration,
    pi: CayleyStructure,
    sigma_tilde: Sequence[int],
    sigma: Sequence[int],
    trials: int = 25,
    seed: int = 0,
) -> bool:
    """Whether sampled points of the chart all lie on the toric variety.

    Draws ``trials`` pseudo-random rational specializations of the torus
    and coefficient parameters (numerators and denominators up to 97) and
    checks every relation of the configuration vanishes identically on the
    resulting plane.  Trial ``i`` uses its own generator seeded from
    ``seed`` and ``i``, so runs are reproducible and order-independent.
    """
    chart = chart_semigroup(pi, sigma_tilde, sigma)
    s = tuple(sorted(sigma))
    outside = tuple(i for i in sorted(sigma_tilde) if i not in set(s))
    del chart
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)

        def draw() -> Fraction:
            return Fraction(
                rng.randint(1, _SAMPLE_RANGE), rng.randint(1, _SAMPLE_RANGE)
            )

        torus = tuple(draw() for _ in range(a.ambient_dim))
        coeffs = {(v, w): draw() for v in s for w in outside}
        plane = specialized_chart_plane(a, pi, sigma_tilde, sigma, torus, coeffs)
        if not relations_vanish_on(a, plane):
            return False
    return True


def all_set_partitions(items: Sequence[int]):
    """Every partition of the items into unordered nonempty blocks."""
    if not items:
        yield []
        return
    first = items[0]
    for part in all_set_partitions(items[1:]):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1 :]
        yield [[first]] + part


def brute_force_cayley(
    a: PointConfiguration, tau: "Face | Sequence[int]", l_min: int = 1
) -> tuple[CayleyStructure, ...]:
    """All Cayley structures on the face by raw set-partition enumeration.

    Every partition of the face's points into at least ``l_min + 1`` blocks
    is tested directly against the relation basis: a partition qualifies
    exactly when every block's entries sum to zero in every basis relation.
    No rowspan computation and no pruning — this is the slow oracle.
    """
    face = _as_face(a, tau)
    if len(face.indices) > BRUTE_FORCE_MAX_POINTS:
        raise UnsupportedSizeError(
            f"brute-force enumeration is capped at {BRUTE_FORCE_MAX_POINTS} points"
        )
    relations = relation_basis(a, face).vectors
    position = {idx: pos for pos, idx in enumerate(face.indices)}
    found = []
    for part in all_set_partitions(list(face.indices)):
        if len(part) < l_min + 1:
            continue
        if all(
            sum(vec[position[i]] for i in block) == 0
            for vec in relations
            for block in part
        ):
            found.append(CayleyStructure(face, part))
    return tuple(sorted(found, key=lambda p: p.blocks))
