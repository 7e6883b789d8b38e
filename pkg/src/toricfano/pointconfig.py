"""Lattice point configurations, their faces, and local smoothness.

A configuration is a finite set of distinct points in Z^d, kept in a fixed
order so that faces, block partitions, and reports can refer to points by
index.  A face is the subset of points lying on a face of the convex hull,
certified by an integer witness functional that attains its minimum exactly
on the face.

Smoothness at an empty-simplex face sigma means the affine semigroup
generated by all differences (point - sigma vertex) is, up to isomorphism,
Z^k x N^(n-k) with the unit part spanned by sigma's own edge vectors; for
the projective toric variety attached to the configuration this is exactly
smoothness along the torus orbit closure of sigma.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .intlinalg import (
    IntMatrix,
    IntVector,
    UnsupportedSizeError,
    integer_coordinates,
    is_nonneg_int_combination,
    lattice_basis,
    lattice_rank,
    matrix_rank,
    _kernel,
)

MAX_POINTS = 14
MAX_DIM = 6


@dataclass(frozen=True)
class PointConfiguration:
    """An ordered finite set of distinct lattice points."""

    points: tuple[IntVector, ...]

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = tuple(tuple(int(x) for x in p) for p in points)
        if pts and any(len(p) != len(pts[0]) for p in pts):
            raise ValueError("all points must share one ambient dimension")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points are not allowed")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def ambient_dim(self) -> int:
        if not self.points:
            raise ValueError("empty configuration has no ambient dimension")
        return len(self.points[0])

    @cached_property
    def homogenized(self) -> IntMatrix:
        """Matrix whose columns are the points with a 1 appended (as rows:
        one row per coordinate plus a final all-ones row)."""
        if not self.points:
            raise ValueError("empty configuration has no homogenized matrix")
        d = self.ambient_dim
        return tuple(tuple(p[i] for p in self.points) for i in range(d)) + (
            (1,) * len(self.points),
        )

    @cached_property
    def dimension(self) -> int:
        """Dimension of the affine span (= dimension of the toric variety)."""
        if not self.points:
            raise ValueError("empty configuration has no dimension")
        return matrix_rank(self.homogenized) - 1

    @cached_property
    def difference_basis(self) -> IntMatrix:
        """Canonical basis of the lattice generated by point differences."""
        p0 = self.points[0]
        diffs = [tuple(a - b for a, b in zip(p, p0)) for p in self.points[1:]]
        return lattice_basis(diffs)

    def affine_dim_of(self, indices: Sequence[int]) -> int:
        """Dimension of the affine span of the given point subset."""
        idx = list(indices)
        if not idx:
            return -1
        p0 = self.points[idx[0]]
        diffs = [
            tuple(a - b for a, b in zip(self.points[i], p0)) for i in idx[1:]
        ]
        return lattice_rank(diffs)

    def is_empty_simplex(self, indices: Sequence[int]) -> bool:
        """Whether the subset consists of affinely independent points.

        A set of k+1 points spanning an affine space of dimension k is an
        empty simplex: it contains no lattice points of the configuration
        beyond its vertices by construction (it *is* the vertex set).
        """
        idx = set(indices)
        if not idx.issubset(range(len(self.points))):
            raise ValueError("indices out of range")
        if not idx:
            return False
        return self.affine_dim_of(sorted(idx)) == len(idx) - 1

    @cached_property
    def _face_list(self) -> tuple["Face", ...]:
        return _enumerate_faces(self)

    def faces(self, dim_filter: Optional[int] = None) -> tuple["Face", ...]:
        """All faces (including the configuration itself, its vertices, and
        the empty face of dimension -1), sorted by (size, index set).

        With ``dim_filter`` only faces of that affine dimension are returned.
        """
        fl = self._face_list
        if dim_filter is None:
            return fl
        return tuple(f for f in fl if f.dim == dim_filter)

    def face_from_indices(self, indices: Sequence[int]) -> "Face":
        """The face with exactly this index set; raises if it is not a face."""
        key = tuple(sorted(set(indices)))
        for f in self._face_list:
            if f.indices == key:
                return f
        raise ValueError(f"indices {key} do not form a face")

    def is_face(self, indices: Sequence[int]) -> bool:
        key = tuple(sorted(set(indices)))
        return any(f.indices == key for f in self._face_list)

    def fixed_point_faces(self, k: int) -> tuple["Face", ...]:
        """Faces that are empty k-simplices (k+1 points, affine dimension k).

        These index the torus fixed points of the scheme of k-planes on the
        associated toric variety.
        """
        if k < 0:
            raise ValueError("k must be nonnegative")
        return tuple(
            f for f in self._face_list if len(f.indices) == k + 1 and f.dim == k
        )

    def is_smooth_at(self, sigma: "Face | Sequence[int]") -> bool:
        """Whether the configuration is smooth at an empty-simplex face.

        True iff the semigroup generated by all differences (point - sigma
        point) is isomorphic to Z^k x N^(n-k): sigma's edge lattice must be a
        saturated rank-k direct summand of the difference lattice, and the
        images of the remaining points in the quotient must generate a free
        semigroup on a lattice basis.
        """
        idx = sigma.indices if isinstance(sigma, Face) else tuple(sorted(set(sigma)))
        if not self.is_face(idx):
            raise ValueError(f"{idx} is not a face")
        if not self.is_empty_simplex(idx):
            raise ValueError(f"face {idx} is not an empty simplex")
        k = len(idx) - 1
        n = self.dimension
        v0 = self.points[idx[0]]
        sigma_diffs = [
            tuple(a - b for a, b in zip(self.points[i], v0)) for i in idx[1:]
        ]
        big = self.difference_basis  # basis of the full difference lattice, rank n
        # Express sigma's edge vectors in the difference-lattice basis and
        # check the edge lattice is saturated there (torsion-free quotient).
        coords = []
        for v in sigma_diffs:
            c = integer_coordinates(big, v)
            assert c is not None, "difference lattice must contain its generators"
            coords.append(c)
        sub = lattice_basis(coords)
        if len(sub) != k:
            return False
        # Saturation of the rank-k sublattice inside Z^n: the quotient map
        # below is only defined when sub is part of a basis.
        quotient = _quotient_map(sub, n)
        if quotient is None:
            return False
        images = []
        for i in range(len(self.points)):
            if i in idx:
                continue
            diff = tuple(a - b for a, b in zip(self.points[i], v0))
            c = integer_coordinates(big, diff)
            assert c is not None
            img = quotient(c)
            if any(img):
                images.append(img)
        distinct = sorted(set(images))
        q = n - k
        if lattice_rank(distinct) != q:
            return False
        # Free on a lattice basis: some q-subset is a basis of Z^q with every
        # image a nonnegative integer combination of it.
        for basis in itertools.combinations(distinct, q):
            if abs(_det(basis)) != 1:
                continue
            if all(is_nonneg_int_combination(basis, img) for img in distinct):
                return True
        return False


@dataclass(frozen=True)
class Face:
    """A face of a configuration: index set plus an integer witness.

    The witness functional satisfies witness . p == offset for points on the
    face and witness . p > offset for all other points of the configuration.
    """

    config: PointConfiguration
    indices: tuple[int, ...]
    witness: IntVector
    offset: int

    @cached_property
    def dim(self) -> int:
        return self.config.affine_dim_of(self.indices)

    @property
    def points(self) -> tuple[IntVector, ...]:
        return tuple(self.config.points[i] for i in self.indices)

    def contains(self, other: "Face") -> bool:
        if other.config != self.config:
            raise ValueError("faces belong to different configurations")
        return set(other.indices) <= set(self.indices)

    def subconfiguration(self) -> PointConfiguration:
        return PointConfiguration(self.points)

    def __repr__(self) -> str:
        return f"Face{self.indices}"


def _det(rows: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        # fraction-free: keep integral by Euclidean elimination
        for i in range(c + 1, n):
            while m[i][c]:
                q = m[c][c] // m[i][c]
                m[c] = [a - q * b for a, b in zip(m[c], m[i])]
                m[c], m[i] = m[i], m[c]
                sign = -sign
        det *= m[c][c]
    return sign * det


def _quotient_map(sub_basis: IntMatrix, n: int):
    """Projection Z^n -> Z^(n-r) with kernel exactly the sublattice.

    Returns None when the sublattice is not saturated (the quotient has
    torsion, so no such projection exists).
    """
    r = len(sub_basis)
    # Complete to a basis of Z^n iff the sublattice is a direct summand:
    # the kernel K of sub_basis (as a map) has rank n - r and sub + K's
    # dual... Direct approach: saturated iff some (n-r) unit vectors extend
    # sub_basis to a determinant +-1 matrix; more robustly, use the
    # HNF-canonical saturation test and build coordinates from the kernel.
    from .intlinalg import saturation

    if lattice_basis(sub_basis) != saturation(sub_basis, n):
        return None
    # Coordinates in the quotient: pair with a basis of the orthogonal
    # complement's ... simplest sound construction: choose K = kernel of the
    # matrix with rows sub_basis; then v -> (K . v) identifies Z^n / sub with
    # a finite-index subgroup of Z^(n-r), and for saturated sub the map
    # K . v is surjective onto K . Z^n whose lattice we rebase to Z^(n-r).
    kern = _kernel(tuple(sub_basis), n)  # rows orthogonal to sub_basis
    image = [tuple(sum(a * b for a, b in zip(row, unit)) for row in kern)
             for unit in _unit_vectors(n)]
    image_basis = lattice_basis(image)

    def apply(v: Sequence[int]) -> IntVector:
        raw = tuple(sum(a * b for a, b in zip(row, v)) for row in kern)
        c = integer_coordinates(image_basis, raw)
        assert c is not None
        return c

    return apply


def _unit_vectors(n: int) -> list[IntVector]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def _enumerate_faces(config: PointConfiguration) -> tuple[Face, ...]:
    """Full face list via supporting hyperplanes of the convex hull.

    Facet candidates come from the affine hulls of n affinely independent
    points; every lower face is an intersection of facets, so closing the
    facet set under intersection (plus the configuration itself and the
    empty face) yields the whole face lattice.
    """
    pts = config.points
    npts = len(pts)
    if npts == 0:
        return ()
    if npts > MAX_POINTS:
        raise UnsupportedSizeError(
            f"face enumeration supports at most {MAX_POINTS} points, got {npts}"
        )
    d = config.ambient_dim
    if config.dimension > MAX_DIM:
        raise UnsupportedSizeError(
            f"face enumeration supports dimension at most {MAX_DIM}"
        )
    n = config.dimension

    faces: dict[tuple[int, ...], tuple[IntVector, int]] = {}
    all_idx = tuple(range(npts))
    faces[all_idx] = ((0,) * d, 0)

    # facets
    for subset in itertools.combinations(range(npts), n):
        if n and config.affine_dim_of(subset) != n - 1:
            continue
        s0 = pts[subset[0]] if subset else pts[0]
        diffs = tuple(
            tuple(a - b for a, b in zip(pts[i], s0)) for i in subset[1:]
        ) if subset else ()
        for w in _kernel(diffs, d):
            heights = [sum(a * b for a, b in zip(w, p)) - sum(a * b for a, b in zip(w, s0)) for p in pts]
            if not any(heights):
                continue  # w kills the whole configuration's span
            if all(h >= 0 for h in heights):
                pass
            elif all(h <= 0 for h in heights):
                w = tuple(-a for a in w)
                heights = [-h for h in heights]
            else:
                continue
            face_idx = tuple(i for i, h in enumerate(heights) if h == 0)
            c = sum(a * b for a, b in zip(w, s0))
            faces.setdefault(face_idx, (w, c))
            break

    # close under intersection; witnesses add
    work = list(faces.items())
    while work:
        next_work = []
        items = list(faces.items())
        for idx1, (w1, c1) in work:
            for idx2, (w2, c2) in items:
                common = tuple(i for i in idx1 if i in set(idx2))
                if common not in faces:
                    w = tuple(a + b for a, b in zip(w1, w2))
                    faces[common] = (w, c1 + c2)
                    next_work.append((common, faces[common]))
        work = next_work

    if () not in faces:
        # empty face: any positive functional minus 1 below every value; the
        # zero functional with offset -1 works since 0 > -1 for every point
        faces[()] = ((0,) * d, -1)

    result = [
        Face(config, idx, w, c) for idx, (w, c) in faces.items()
    ]
    result.sort(key=lambda f: (len(f.indices), f.indices))
    return tuple(result)
