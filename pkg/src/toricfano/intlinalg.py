"""Exact linear algebra over the integers and rationals.

Everything here works with arbitrary-precision Python ints and
``fractions.Fraction``; no floating point is used anywhere.  Matrices are
immutable tuples of tuples of ints (rows by columns), vectors are tuples.

The central primitive is a row-style Hermite normal form with a tracked
unimodular transform; kernel bases, ranks, rational rowspan membership,
lattice saturation, and affine unimodular equivalence of point
configurations all derive from it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]
RatVector = tuple[Fraction, ...]

EQUIVALENCE_MAX_POINTS = 12


class UnsupportedSizeError(ValueError):
    """Input exceeds the documented desk-scale bounds."""


def as_matrix(rows: Iterable[Sequence[int]]) -> IntMatrix:
    """Normalize an iterable of rows into an immutable integer matrix."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix: rows have different lengths")
    return m


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def hermite_normal_form(m: Iterable[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``h`` of ``m`` with transform ``u``.

    Returns ``(h, u)`` where ``u`` is unimodular (integer, det +-1) and
    ``u * m == h``.  Convention: ``h`` is upper echelon, pivots are positive,
    and entries above each pivot are reduced into ``[0, pivot)``.  Zero rows
    sit at the bottom.
    """
    mm = as_matrix(m)
    nrows = len(mm)
    ncols = len(mm[0]) if nrows else 0
    h = [list(row) for row in mm]
    u = [list(row) for row in identity_matrix(nrows)]

    def row_sub(i: int, q: int, j: int) -> None:
        # row_i -= q * row_j in both h and u
        if q:
            h[i] = [a - q * b for a, b in zip(h[i], h[j])]
            u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def row_swap(i: int, j: int) -> None:
        if i != j:
            h[i], h[j] = h[j], h[i]
            u[i], u[j] = u[j], u[i]

    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if h[i][c]), None)
        if pivot is None:
            continue
        row_swap(r, pivot)
        for i in range(r + 1, nrows):
            # Euclidean elimination: shrink |h[i][c]| to zero.
            while h[i][c]:
                q = h[r][c] // h[i][c]
                row_sub(r, q, i)
                row_swap(r, i)
        if h[r][c] < 0:
            h[r] = [-a for a in h[r]]
            u[r] = [-a for a in u[r]]
        for i in range(r):
            row_sub(i, h[i][c] // h[r][c], r)
        r += 1

    return tuple(map(tuple, h)), tuple(map(tuple, u))


def matrix_rank(m: Iterable[Sequence[int]]) -> int:
    """Rank over the rationals (= number of nonzero rows of the HNF)."""
    h, _ = hermite_normal_form(m)
    return sum(1 for row in h if any(row))


def lattice_rank(vectors: Iterable[Sequence[int]]) -> int:
    """Rank of the lattice generated by the given integer vectors."""
    vs = as_matrix(vectors)
    return matrix_rank(vs) if vs else 0


def lattice_basis(vectors: Iterable[Sequence[int]]) -> IntMatrix:
    """Canonical (HNF) basis of the lattice generated by the vectors."""
    vs = as_matrix(vectors)
    if not vs:
        return ()
    h, _ = hermite_normal_form(vs)
    return tuple(row for row in h if any(row))


def _kernel(rows: IntMatrix, ncols: int) -> IntMatrix:
    """Basis of the saturated lattice {v : rows . v = 0} in Z^ncols."""
    if not rows:
        return identity_matrix(ncols)
    h, u = hermite_normal_form(transpose(rows))
    rank = sum(1 for row in h if any(row))
    return u[rank:]


def integer_kernel_basis(m: Iterable[Sequence[int]]) -> IntMatrix:
    """Basis of the full integer kernel lattice {v : m . v = 0}.

    The returned basis generates a saturated lattice: every integer solution
    is an integer (not merely rational) combination of the basis vectors.
    """
    mm = as_matrix(m)
    if not mm:
        raise ValueError("kernel of an empty matrix is undefined; no column count")
    return _kernel(mm, len(mm[0]))


def in_rational_rowspan(m: Iterable[Sequence[int]], v: Sequence[int | Fraction]) -> bool:
    """Whether ``v`` lies in the span of the rows of ``m`` over the rationals."""
    mm = as_matrix(m)
    fracs = [Fraction(x) for x in v]
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // _gcd(scale, f.denominator)
    iv = tuple(int(f * scale) for f in fracs)
    if mm and len(iv) != len(mm[0]):
        raise ValueError("vector length does not match matrix columns")
    if not any(iv):
        return True
    return matrix_rank(mm) == matrix_rank(mm + (iv,))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def saturation(vectors: Iterable[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Canonical basis of (rational span of vectors) intersect Z^ncols."""
    vs = as_matrix(vectors)
    if ncols is None:
        if not vs:
            raise ValueError("ncols required for an empty generating set")
        ncols = len(vs[0])
    orth = _kernel(vs, ncols)
    return lattice_basis(_kernel(orth, ncols)) if orth else lattice_basis(identity_matrix(ncols))


def is_saturated(vectors: Iterable[Sequence[int]], ncols: Optional[int] = None) -> bool:
    """Whether the lattice generated by the vectors is saturated in Z^ncols.

    Saturated means every integer point of the rational span already lies in
    the lattice; equivalently the lattice is a direct summand of Z^ncols.
    """
    vs = as_matrix(vectors)
    return lattice_basis(vs) == saturation(vs, ncols)


def rational_solve(rows: Iterable[Sequence[int]], v: Sequence[int | Fraction]) -> Optional[RatVector]:
    """Solve ``x . rows = v`` over the rationals; None if inconsistent.

    When the rows are linearly dependent an arbitrary consistent solution is
    returned.
    """
    rr = [list(map(Fraction, row)) for row in rows]
    target = [Fraction(x) for x in v]
    n = len(rr)
    if n == 0:
        return () if not any(target) else None
    ncols = len(rr[0])
    if len(target) != ncols:
        raise ValueError("vector length does not match row length")
    # Gaussian elimination on the transposed system rows^T x^T = v^T,
    # augmented with the identity to recover x.
    aug = [[rr[i][c] for i in range(n)] + [target[c]] for c in range(ncols)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, ncols) if aug[i][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [a * inv for a in aug[row]]
        for i in range(ncols):
            if i != row and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[row])]
        pivots.append((row, col))
        row += 1
    # Inconsistent if any zeroed row has a nonzero rhs.
    for i in range(row, ncols):
        if aug[i][n]:
            return None
    x = [Fraction(0)] * n
    for prow, pcol in pivots:
        x[pcol] = aug[prow][n]
    return tuple(x)


def integer_coordinates(basis: Iterable[Sequence[int]], v: Sequence[int]) -> Optional[IntVector]:
    """Integer coordinates of ``v`` in the given basis rows, or None."""
    sol = rational_solve(basis, v)
    if sol is None or any(f.denominator != 1 for f in sol):
        return None
    return tuple(int(f) for f in sol)


def is_nonneg_int_combination(basis: Iterable[Sequence[int]], v: Sequence[int]) -> bool:
    """Whether ``v`` is a nonnegative-integer combination of the basis rows.

    The rows must be linearly independent so that the combination, when it
    exists, is unique.
    """
    sol = rational_solve(basis, v)
    return sol is not None and all(f.denominator == 1 and f >= 0 for f in sol)


def _homogenized_rows(points: Sequence[IntVector]) -> IntMatrix:
    """Rows = coordinates of the points plus a final row of ones."""
    d = len(points[0]) if points else 0
    coord_rows = tuple(tuple(p[i] for p in points) for i in range(d))
    return coord_rows + ((1,) * len(points),)


def affine_relation_lattice(points: Sequence[Sequence[int]]) -> IntMatrix:
    """Canonical basis of {lambda : sum lambda_i p_i = 0, sum lambda_i = 0}."""
    pts = tuple(tuple(int(x) for x in p) for p in points)
    if not pts:
        return ()
    return lattice_basis(_kernel(_homogenized_rows(pts), len(pts)))


def affine_unimodular_equivalent(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Whether two point configurations differ by an affine lattice isomorphism.

    True iff some bijection of the point sets extends to an affine map that
    restricts to an isomorphism between the affine lattices the
    configurations generate (translation composed with a unimodular map on
    the difference lattices).  The ambient dimensions may differ; the test is
    intrinsic.  Equivalent formulation, used here: some bijection makes the
    saturated affine relation lattices of the two configurations coincide.
    """
    pa = [tuple(int(x) for x in p) for p in a]
    pb = [tuple(int(x) for x in p) for p in b]
    if len(pa) != len(pb):
        return False
    if len(set(pa)) != len(pa) or len(set(pb)) != len(pb):
        raise ValueError("configurations must consist of distinct points")
    if len(pa) > EQUIVALENCE_MAX_POINTS:
        raise UnsupportedSizeError(
            f"equivalence search supports at most {EQUIVALENCE_MAX_POINTS} points"
        )
    if not pa:
        return True
    if matrix_rank(_homogenized_rows(pa)) != matrix_rank(_homogenized_rows(pb)):
        return False

    n = len(pa)
    # Backtracking over bijections pa[i] -> chosen pb point.  A partial
    # assignment survives iff the affine relation lattices of the two
    # prefixes coincide; at full length that is exactly equivalence.
    prefix_a = [affine_relation_lattice(pa[: t + 1]) for t in range(n)]
    chosen: list[IntVector] = []
    used = [False] * n

    def extend(t: int) -> bool:
        if t == n:
            return True
        for j in range(n):
            if used[j]:
                continue
            chosen.append(pb[j])
            if affine_relation_lattice(chosen) == prefix_a[t]:
                used[j] = True
                if extend(t + 1):
                    return True
                used[j] = False
            chosen.pop()
        return False

    return extend(0)


def cone_is_pointed(vectors: Iterable[Sequence[int]]) -> bool:
    """Whether the rational cone spanned by the vectors contains no line.

    Equivalently: the only nonnegative rational combination of the vectors
    equal to zero is the trivial one, so the semigroup they generate has no
    nonzero invertible element.  Exact; no linear programming.  A vanishing
    nonnegative combination with minimal support lives on a circuit (a
    minimally dependent subset), so it suffices to inspect the sign pattern
    of the one-dimensional kernel of every circuit.  Before enumerating,
    vectors with a strict entry in a coordinate where all vectors share a
    sign are discarded: no vanishing nonnegative combination can use them.
    """
    vs = [v for v in sorted({tuple(v) for v in vectors}) if any(v)]
    stripped = True
    while stripped and vs:
        stripped = False
        for j in range(len(vs[0])):
            column = [v[j] for v in vs]
            if any(column) and (min(column) >= 0 or max(column) <= 0):
                vs = [v for v in vs if v[j] == 0]
                stripped = True
                break
    if not vs:
        return True
    rank = matrix_rank(vs)
    for size in range(2, rank + 2):
        for subset in combinations(vs, size):
            if matrix_rank(subset) != size - 1:
                continue
            (relation,) = integer_kernel_basis(transpose(as_matrix(subset)))
            if min(relation) >= 0 or max(relation) <= 0:
                return False
    return True
