"""Point versus k-space incidence matrices and exact row-space queries.

The projective matrix with the canonical ordering decomposes into
blocks: affine rows/columns first, so the top-left block is the affine
incidence matrix, the top-right block is zero (an affine point never
lies on a k-space at infinity) and the bottom-right block is the
incidence matrix of the hyperplane at infinity, one dimension down.

All rank/kernel/membership questions are answered over the rationals
with exact arithmetic; a membership certificate is the unique rational
row-combination vector whenever the matrix has full row rank.
"""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from . import exact
from .geometry import AmbientSpace, DimensionOutOfRange

__all__ = ["IncidenceMatrix", "build_incidence", "SizeGuard", "LengthMismatch",
           "certificate_to_json"]

DEFAULT_ENTRY_GUARD = 10**7


class SizeGuard(RuntimeError):
    pass


class LengthMismatch(ValueError):
    pass


def entry_guard() -> int:
    env = os.environ.get("CLAG_SIZE_GUARD")
    return int(env) if env else DEFAULT_ENTRY_GUARD


class IncidenceMatrix:
    def __init__(self, space: AmbientSpace, k: int, matrix: np.ndarray):
        self.space = space
        self.k = k
        self.matrix = matrix
        self._rank = None
        self._kernel = None

    @property
    def shape(self):
        return self.matrix.shape

    def rank(self) -> int:
        """Rank over the rationals, by fraction-free elimination."""
        if self._rank is None:
            self._rank = exact.bareiss_rank(self.matrix)
        return self._rank

    def kernel_basis(self) -> np.ndarray:
        """Primitive integer basis of {z : M z = 0}, as rows."""
        if self._kernel is None:
            basis = exact.nullspace_int(self.matrix.tolist())
            self._kernel = np.array(basis, dtype=np.int64).reshape(
                len(basis), self.matrix.shape[1])
        return self._kernel

    def in_row_space(self, vec) -> bool:
        """Membership of an integer vector in the rational row space,
        decided against the precomputed kernel basis."""
        v = np.asarray(vec, dtype=np.int64)
        if v.shape[0] != self.matrix.shape[1]:
            raise LengthMismatch("vector length must equal column count")
        kern = self.kernel_basis()
        if kern.shape[0] == 0:
            return True
        return not exact.int_matvec(kern, v).any()

    def row_space_membership(self, vec) -> tuple[bool, list[Fraction] | None]:
        """(member?, certificate).  The certificate y satisfies
        y^T M = vec exactly and is unique when rank equals #rows."""
        if not self.in_row_space(vec):
            return False, None
        cert = exact.solve_left(self.matrix.tolist(), [int(v) for v in vec])
        if cert is None:  # cannot happen if the kernel test passed
            return False, None
        return True, cert

    def verify_certificate(self, cert, vec) -> bool:
        rows, cols = self.matrix.shape
        for c in range(cols):
            acc = Fraction(0)
            for r in range(rows):
                if cert[r]:
                    acc += cert[r] * int(self.matrix[r, c])
            if acc != Fraction(int(vec[c])):
                return False
        return True


def build_incidence(space: AmbientSpace, k: int,
                    guard: int | None = None) -> IncidenceMatrix:
    """The 0/1 point versus k-space matrix in canonical order."""
    if not 1 <= k <= space.n - 1:
        raise DimensionOutOfRange(f"k={k} outside 1..{space.n - 1}")
    n_rows = space.num_points
    cols = space.spaces(k)
    cap = guard if guard is not None else entry_guard()
    if n_rows * len(cols) > cap:
        raise SizeGuard(
            f"{n_rows} x {len(cols)} incidence exceeds guard {cap}")
    mat = np.zeros((n_rows, len(cols)), dtype=np.int8)
    for j, pts in enumerate(space.space_point_indices(k)):
        mat[list(pts), j] = 1
    return IncidenceMatrix(space, k, mat)


def certificate_to_json(space: AmbientSpace, cert) -> dict[str, str]:
    """Certificate as rational strings keyed by point coordinates."""
    out = {}
    for pt, val in zip(space.points, cert):
        f = Fraction(val)
        out[":".join(str(c) for c in pt)] = f"{f.numerator}/{f.denominator}"
    return out
