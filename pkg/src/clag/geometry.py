"""Projective and affine geometries over GF(q).

PG(n, q) is modelled on homogeneous coordinates (x0 : ... : xn); the
affine space AG(n, q) is PG(n, q) minus the fixed hyperplane at
infinity x0 = 0, with affine points normalized to x0 = 1.  A subspace
is stored as the unique reduced row echelon basis of its row space, so
two subspaces are equal iff their matrices are equal, and the
enumeration order (lexicographic on the echelon matrix, affine spaces
first) is reproducible everywhere: file formats, incidence block
structure, search certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .galois import FiniteField, field_for_order

__all__ = [
    "gaussian_binomial", "Subspace", "AmbientSpace", "ambient",
    "make_subspace", "span", "meet", "infinite_part", "is_affine",
    "apply_matrix", "DimensionOutOfRange", "AmbientMismatch",
]


class DimensionOutOfRange(ValueError):
    pass


class AmbientMismatch(ValueError):
    pass


def gaussian_binomial(a: int, b: int, q: int) -> int:
    """Number of (b-1)-dimensional projective subspaces of PG(a-1, q)."""
    if a < 0 or b < 0:
        raise DimensionOutOfRange("negative argument")
    if b > a:
        return 0
    num = 1
    den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Subspace:
    """A projective subspace in canonical reduced row echelon form."""

    n: int
    q: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    @property
    def field(self) -> FiniteField:
        return field_for_order(self.q)

    def is_affine(self) -> bool:
        """True iff the subspace is not contained in x0 = 0."""
        return self.rows[0][0] != 0

    def contains_point(self, point: tuple[int, ...]) -> bool:
        return _reduce_point(self.field, self.rows, point) is None

    def key(self):
        """Canonical sort key: affine subspaces first (leading pivot
        column 0), then the ones at infinity ordered recursively, so the
        infinite block of every enumeration is the canonical enumeration
        of the same objects one dimension down."""
        c0 = next(i for i, x in enumerate(self.rows[0]) if x)
        return (c0, self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"Subspace(n={self.n}, q={self.q}, dim={self.dim}, {self.rows})"


def _reduce_point(field, rows, point):
    """Residual of a point after reduction against echelon rows; None if
    the point lies in the row space."""
    v = list(point)
    for row in rows:
        pc = next(i for i, x in enumerate(row) if x)
        if v[pc]:
            f = v[pc]
            v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
    if any(v):
        return tuple(v)
    return None


def _rref(field, rows) -> tuple[tuple[int, ...], ...]:
    mat = np.array(rows, dtype=np.int64)
    if mat.ndim != 2:
        raise ValueError("basis must be a matrix")
    rank = _kernels.gf_rref(mat, field.add_table, field.mul_table,
                            field.neg_table, field.inv_table)
    return tuple(tuple(int(v) for v in mat[i]) for i in range(rank))


def make_subspace(n: int, q: int, rows) -> Subspace:
    """Canonicalize a generator list into a Subspace."""
    field = field_for_order(q)
    for r in rows:
        if len(r) != n + 1:
            raise DimensionOutOfRange("row length must be n+1")
    canon = _rref(field, rows)
    if not canon:
        raise ValueError("empty subspace")
    return Subspace(n, q, canon)


def span(a: Subspace, b: Subspace) -> Subspace:
    if (a.n, a.q) != (b.n, b.q):
        raise AmbientMismatch("span of subspaces of different spaces")
    return make_subspace(a.n, a.q, list(a.rows) + list(b.rows))


def meet(a: Subspace, b: Subspace) -> Subspace | None:
    """Exact intersection; None when the subspaces are disjoint."""
    if (a.n, a.q) != (b.n, b.q):
        raise AmbientMismatch("meet of subspaces of different spaces")
    field = a.field
    gens = list(a.rows) + list(b.rows)
    null = _gf_left_nullspace(field, gens)
    vecs = []
    na = len(a.rows)
    for lam in null:
        vec = [0] * (a.n + 1)
        for i in range(na):
            if lam[i]:
                vec = [field.add(x, field.mul(lam[i], y))
                       for x, y in zip(vec, a.rows[i])]
        vecs.append(vec)
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return None
    return make_subspace(a.n, a.q, vecs)


def _gf_left_nullspace(field, rows):
    """Vectors lam with lam . rows = 0, by eliminating [rows | I]."""
    m = len(rows)
    ncols = len(rows[0])
    aug = [list(r) + [1 if j == i else 0 for j in range(m)]
           for i, r in enumerate(rows)]
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, m) if aug[r][col]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        ipv = field.inv(aug[rank][col])
        if ipv != 1:
            aug[rank] = [field.mul(v, ipv) for v in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [field.sub(x, field.mul(f, y))
                          for x, y in zip(aug[r], aug[rank])]
        rank += 1
    return [row[ncols:] for row in aug[rank:]]


def infinite_part(s: Subspace) -> Subspace | None:
    """s intersected with the hyperplane at infinity x0 = 0.

    For an affine k-space this is its (k-1)-space at infinity: in echelon
    form exactly the rows below the first.  Returns None for an affine
    point.
    """
    if not s.is_affine():
        return s
    if len(s.rows) == 1:
        return None
    return Subspace(s.n, s.q, s.rows[1:])


def is_affine(s: Subspace) -> bool:
    return s.is_affine()


def apply_matrix(s: Subspace, matrix) -> Subspace:
    """Image of a subspace under an invertible (n+1)x(n+1) matrix acting
    on row vectors."""
    field = s.field
    rows = []
    for r in s.rows:
        out = [0] * (s.n + 1)
        for i, c in enumerate(r):
            if c:
                for j in range(s.n + 1):
                    out[j] = field.add(out[j], field.mul(c, matrix[i][j]))
        rows.append(out)
    return make_subspace(s.n, s.q, rows)


def _pivot_patterns(ncols: int, nrows: int):
    return itertools.combinations(range(ncols), nrows)


def _free_cells(pivots, ncols):
    cells = []
    pivot_set = set(pivots)
    for i, pc in enumerate(pivots):
        for j in range(pc + 1, ncols):
            if j not in pivot_set:
                cells.append((i, j))
    return cells


def enumerate_rref_matrices(ncols: int, nrows: int, q: int):
    """All reduced-echelon full-rank nrows x ncols matrices over GF(q)."""
    for pivots in _pivot_patterns(ncols, nrows):
        cells = _free_cells(pivots, ncols)
        base = [[0] * ncols for _ in range(nrows)]
        for i, pc in enumerate(pivots):
            base[i][pc] = 1
        if not cells:
            yield tuple(tuple(r) for r in base)
            continue
        for values in itertools.product(range(q), repeat=len(cells)):
            for (i, j), v in zip(cells, values):
                base[i][j] = v
            yield tuple(tuple(r) for r in base)


def count_rref_matrices(ncols: int, nrows: int, q: int) -> int:
    """Subspace count by summing q^(#free cells) over pivot patterns;
    independent of the Gaussian-binomial product formula."""
    total = 0
    for pivots in _pivot_patterns(ncols, nrows):
        total += q ** len(_free_cells(pivots, ncols))
    return total


class AmbientSpace:
    """PG(n, q) or AG(n, q) with memoized canonical enumerations."""

    def __init__(self, n: int, q: int, mode: str = "affine"):
        if mode not in ("affine", "projective"):
            raise ValueError(f"unknown mode {mode!r}")
        if n < 1:
            raise DimensionOutOfRange("need n >= 1")
        self.n = n
        self.q = q
        self.mode = mode
        self.field = field_for_order(q)
        self._spaces: dict[int, list[Subspace]] = {}
        self._space_idx: dict[int, dict] = {}
        self._space_pts: dict[int, list[tuple[int, ...]]] = {}

    # -- points --------------------------------------------------------

    @property
    def num_points(self) -> int:
        if self.mode == "affine":
            return self.q**self.n
        return (self.q ** (self.n + 1) - 1) // (self.q - 1)

    @lru_cache(maxsize=None)
    def _point_data(self):
        affine = [(1,) + coords
                  for coords in itertools.product(range(self.q), repeat=self.n)]
        points = affine
        if self.mode == "projective":
            infinite = [(0,) + rows[0]
                        for rows in enumerate_rref_matrices(self.n, 1, self.q)]
            infinite.sort(key=lambda t: (next(i for i, x in enumerate(t) if x), t))
            points = affine + infinite
        index = {pt: i for i, pt in enumerate(points)}
        return points, index

    @property
    def points(self) -> list[tuple[int, ...]]:
        return self._point_data()[0]

    @property
    def point_index(self) -> dict:
        return self._point_data()[1]

    # -- k-spaces ------------------------------------------------------

    def spaces(self, k: int) -> list[Subspace]:
        """Canonically ordered list of the k-spaces of this space."""
        if k < 0 or k > self.n:
            raise DimensionOutOfRange(f"k={k} outside 0..{self.n}")
        if k not in self._spaces:
            subs = [Subspace(self.n, self.q, rows)
                    for rows in enumerate_rref_matrices(self.n + 1, k + 1, self.q)]
            subs.sort(key=Subspace.key)
            if self.mode == "affine":
                subs = [s for s in subs if s.is_affine()]
            self._spaces[k] = subs
            self._space_idx[k] = {s.rows: i for i, s in enumerate(subs)}
        return self._spaces[k]

    def space_index(self, k: int) -> dict:
        self.spaces(k)
        return self._space_idx[k]

    def index_of(self, s: Subspace) -> int:
        return self.space_index(s.dim)[s.rows]

    # -- incidence helpers ----------------------------------------------

    def points_of(self, s: Subspace) -> list[tuple[int, ...]]:
        """The points of a subspace that belong to this space (all of
        them in projective mode, the x0 = 1 ones in affine mode)."""
        field = self.field
        k = s.dim
        coeffs = np.array([rows[0]
                           for rows in enumerate_rref_matrices(k + 1, 1, self.q)],
                          dtype=np.int64)
        basis = np.array(s.rows, dtype=np.int64)
        pts = _kernels.gf_combinations(coeffs, basis,
                                       field.add_table, field.mul_table)
        out = []
        for row in pts:
            tup = tuple(int(v) for v in row)
            if self.mode == "affine" and tup[0] == 0:
                continue
            out.append(tup)
        return out

    def point_indices_of(self, s: Subspace) -> tuple[int, ...]:
        idx = self.point_index
        return tuple(sorted(idx[p] for p in self.points_of(s)))

    def space_point_indices(self, k: int) -> list[tuple[int, ...]]:
        """Per k-space sorted point-index tuples, in enumeration order."""
        if k not in self._space_pts:
            self._space_pts[k] = [self.point_indices_of(s)
                                  for s in self.spaces(k)]
        return self._space_pts[k]

    def infinity_pencils(self, k: int):
        """Type II pencil structure for affine k-spaces.

        Returns (inf_list, members, per_space): the (k-1)-spaces at
        infinity in canonical order, the member index array of each
        pencil (the k-spaces through that subspace, a type II spread),
        and per_space[j] = pencil id of k-space j.
        """
        if self.mode != "affine":
            raise DimensionOutOfRange("pencil structure is an affine notion")
        key = ("pencils", k)
        if key not in self._space_idx:
            spaces = self.spaces(k)
            inf_list = self.infinite_subspaces(k - 1)
            idx = {s.rows: i for i, s in enumerate(inf_list)}
            per_space = np.array([idx[infinite_part(s).rows] for s in spaces],
                                 dtype=np.int64)
            members = [np.nonzero(per_space == i)[0] for i in range(len(inf_list))]
            self._space_idx[key] = (inf_list, members, per_space)
        return self._space_idx[key]

    def infinite_subspaces(self, d: int) -> list[Subspace]:
        """The d-spaces contained in the hyperplane at infinity, in
        canonical order."""
        if d < 0:
            return []
        subs = [Subspace(self.n, self.q, tuple((0,) + r for r in rows))
                for rows in enumerate_rref_matrices(self.n, d + 1, self.q)]
        subs.sort(key=Subspace.key)
        return subs

    def __repr__(self):
        name = "AG" if self.mode == "affine" else "PG"
        return f"{name}({self.n},{self.q})"

    def __eq__(self, other):
        return (isinstance(other, AmbientSpace)
                and (self.n, self.q, self.mode) == (other.n, other.q, other.mode))

    def __hash__(self):
        return hash((self.n, self.q, self.mode))


_AMBIENT_CACHE: dict[tuple, AmbientSpace] = {}


def ambient(n: int, q: int, mode: str) -> AmbientSpace:
    key = (n, q, mode)
    if key not in _AMBIENT_CACHE:
        _AMBIENT_CACHE[key] = AmbientSpace(n, q, mode)
    return _AMBIENT_CACHE[key]


def enumerate_subspaces(space: AmbientSpace, k: int) -> list[Subspace]:
    """The k-spaces of the given space in canonical order."""
    return space.spaces(k)


def subspace_from_json(n: int, q: int, rows) -> Subspace:
    """Validate and load a subspace; input must already be in reduced
    echelon form so that files are canonical."""
    sub = make_subspace(n, q, rows)
    if sub.rows != tuple(tuple(int(v) for v in r) for r in rows):
        raise ValueError("subspace basis is not in reduced echelon form")
    return sub
