"""Cayley structures: block partitions of faces compatible with all affine
relations.

A Cayley structure on a face tau is a partition of tau's points into l+1
nonempty blocks such that every affine relation among the points restricts
to zero on each block - equivalently, each block's indicator vector lies in
the rational rowspan of tau's homogenized coordinate matrix.  Such a
partition exhibits tau as a Cayley configuration of l+1 fibers and produces
an (l-parameter family of) l-planes on the associated toric variety.

Structures are partially ordered: a structure on a smaller face is below one
on a larger face when the larger structure's blocks restrict into single
blocks of the smaller one.  The maximal structures with at least k+1 blocks
index the irreducible components of the scheme of k-planes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .intlinalg import IntMatrix, _kernel, in_rational_rowspan
from .pointconfig import Face, PointConfiguration


@dataclass(frozen=True)
class CayleyStructure:
    """A block partition of a face, canonicalized: each block is a sorted
    index tuple and blocks are ordered by smallest element."""

    face: Face
    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, face: Face, blocks: Iterable[Sequence[int]]):
        raw = [tuple(sorted(b)) for b in blocks]
        if not raw or any(not b for b in raw):
            raise ValueError("blocks must be nonempty")
        canon = tuple(sorted(raw, key=lambda b: b[0]))
        flat = [i for b in canon for i in b]
        if sorted(flat) != list(face.indices) or len(set(flat)) != len(flat):
            raise ValueError("blocks must partition the face's index set")
        object.__setattr__(self, "face", face)
        object.__setattr__(self, "blocks", canon)

    @property
    def config(self) -> PointConfiguration:
        return self.face.config

    @property
    def l(self) -> int:
        return len(self.blocks) - 1

    @cached_property
    def block_of(self) -> dict[int, int]:
        """Map from point index to the position of its block."""
        return {i: b for b, blk in enumerate(self.blocks) for i in blk}

    def restricted_to(self, face: Face) -> "CayleyStructure":
        """The induced structure on a subface (blocks intersected, empties
        dropped)."""
        if not self.face.contains(face):
            raise ValueError("can only restrict to a face of the structure's face")
        idx = set(face.indices)
        blocks = [tuple(i for i in b if i in idx) for b in self.blocks]
        return CayleyStructure(face, [b for b in blocks if b])

    def injective_on(self, indices: Sequence[int]) -> bool:
        """Whether the given points lie in pairwise distinct blocks."""
        hit = [self.block_of[i] for i in indices]
        return len(set(hit)) == len(hit)

    def __repr__(self) -> str:
        return f"CayleyStructure(face={self.face.indices}, blocks={self.blocks})"


def _block_indicator(face: Face, block: Sequence[int]) -> tuple[int, ...]:
    members = set(block)
    return tuple(int(i in members) for i in face.indices)


def _face_homogenized(face: Face) -> IntMatrix:
    pts = face.points
    d = face.config.ambient_dim
    return tuple(tuple(p[i] for p in pts) for i in range(d)) + ((1,) * len(pts),)


def is_cayley_structure(face: Face, blocks: Iterable[Sequence[int]]) -> bool:
    """Whether the given block partition of the face preserves all affine
    relations (each block indicator lies in the rational rowspan of the
    face's homogenized matrix)."""
    canon = [tuple(sorted(b)) for b in blocks]
    flat = sorted(i for b in canon for i in b)
    if flat != list(face.indices) or any(not b for b in canon):
        raise ValueError("blocks must partition the face's index set")
    m = _face_homogenized(face)
    return all(in_rational_rowspan(m, _block_indicator(face, b)) for b in canon)


def enumerate_cayley_structures(face: Face, l_min: int = 1) -> tuple[CayleyStructure, ...]:
    """All Cayley structures on the face with at least l_min + 1 blocks.

    Depth-first search over partitions in restricted-growth order (a point
    joins an existing block or opens a new one, so blocks come out sorted by
    minimum), pruning a partial assignment as soon as a block's partial
    indicator leaves the rowspan of the assigned prefix - any relation
    supported on assigned points already constrains the final block sums.
    """
    if l_min < 0:
        raise ValueError("l_min must be nonnegative")
    idx = face.indices
    t_total = len(idx)
    if t_total == 0:
        return ()
    pts = face.points
    d = face.config.ambient_dim

    def prefix_kernel(t: int) -> IntMatrix:
        rows = tuple(tuple(p[i] for p in pts[:t]) for i in range(d)) + ((1,) * t,)
        return _kernel(rows, t)

    kernels = [prefix_kernel(t) for t in range(1, t_total + 1)]

    found: list[CayleyStructure] = []
    blocks: list[list[int]] = []

    def compatible(t: int) -> bool:
        for lam in kernels[t - 1]:
            for block in blocks:
                if sum(lam[p] for p in block) != 0:
                    return False
        return True

    def assign(t: int) -> None:
        if t == t_total:
            if len(blocks) >= l_min + 1:
                found.append(
                    CayleyStructure(face, [tuple(idx[p] for p in b) for b in blocks])
                )
            return
        if len(blocks) + (t_total - t) < l_min + 1:
            return
        for b in range(len(blocks) + 1):
            if b == len(blocks):
                blocks.append([t])
            else:
                blocks[b].append(t)
            if compatible(t + 1):
                assign(t + 1)
            if b == len(blocks) - 1 and len(blocks[b]) == 1:
                blocks.pop()
            else:
                blocks[b].pop()

    assign(0)
    found.sort(key=lambda s: (len(s.blocks), s.blocks))
    return tuple(found)


def leq(small: CayleyStructure, big: CayleyStructure) -> bool:
    """Partial order: ``small`` is dominated by ``big``.

    True iff small's face is a face of big's face and every block of ``big``
    meets small's face inside a single block of ``small`` (the block merge
    map then automatically surjects because small's blocks are nonempty).
    """
    if small.config != big.config:
        raise ValueError("structures belong to different configurations")
    if not set(small.face.indices) <= set(big.face.indices):
        return False
    small_block = small.block_of
    for block in big.blocks:
        landing = {small_block[i] for i in block if i in small_block}
        if len(landing) > 1:
            return False
    return True


def maximal_cayley_structures(config: PointConfiguration, k: int) -> tuple[CayleyStructure, ...]:
    """Maximal Cayley structures with at least k+1 blocks, over all faces.

    Maximality is computed in the poset of all structures with at least two
    blocks; filtering by block count afterwards is equivalent because a
    structure can only be dominated by one with at least as many blocks.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    every: list[CayleyStructure] = []
    for face in config.faces():
        if face.indices:
            every.extend(enumerate_cayley_structures(face, l_min=1))
    maximal = [
        p for p in every if not any(q is not p and p != q and leq(p, q) for q in every)
    ]
    result = [p for p in maximal if p.l >= k]
    result.sort(key=lambda s: (s.face.indices, s.blocks))
    return tuple(result)


def cayley_structures_with_l_at_least(
    config: PointConfiguration, faces: Iterable[Face], l_min: int
) -> tuple[CayleyStructure, ...]:
    """All structures with at least l_min+1 blocks on the given faces."""
    out: list[CayleyStructure] = []
    for face in faces:
        if face.indices:
            out.extend(enumerate_cayley_structures(face, l_min=l_min))
    return tuple(out)
