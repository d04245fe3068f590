"""Cameron-Liebler k-sets: the definitional row-space test, the
equivalent characterizations, closure operations, affine/projective
transfer, and projection through subspaces at infinity.

The definitional test (characteristic vector in the row space of the
point versus k-space incidence matrix) is the single source of truth;
the spread, switching-set and disjointness-count checks are validators.
The count-based equivalences carry the hypothesis n >= 2k+1 and report
a dedicated not-applicable status below it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .geometry import (AmbientSpace, Subspace, ambient, gaussian_binomial,
                       make_subspace, meet, DimensionOutOfRange)
from .incidence import IncidenceMatrix, build_incidence
from .spreads import SwitchingPair, subspace_contains

__all__ = [
    "KSet", "CheckResult", "NotDisjoint", "NotContained", "NotLines",
    "WrongCodimension", "NotSkew", "DimensionViolation",
    "kset_from_indices", "kset_from_subspaces", "empty_kset", "full_kset",
    "point_pencil", "pg_hyperplane_set", "complement", "union", "difference",
    "incidence_for", "is_cameron_liebler", "check_spread_intersections",
    "check_switching_invariance", "affine_disjoint_count",
    "infinite_pencil_counts", "check_line_disjointness",
    "pg_disjoint_count", "check_pg_disjointness", "embed_to_pg",
    "restrict_from_pg", "extend_with_infinity",
    "count_through_infinite_subspace", "project_through_infinite_subspace",
    "canonical_complement", "modular_check", "kset_to_json", "kset_from_json",
]

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


class NotDisjoint(ValueError):
    pass


class NotContained(ValueError):
    pass


class NotLines(ValueError):
    pass


class WrongCodimension(ValueError):
    pass


class NotSkew(ValueError):
    pass


class DimensionViolation(ValueError):
    pass


@dataclass
class CheckResult:
    name: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass(frozen=True)
class KSet:
    """A set of k-spaces with its characteristic vector and parameter."""

    space: AmbientSpace
    k: int
    members: frozenset

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def x(self) -> Fraction:
        """Parameter |L| / [n choose k]_q."""
        return Fraction(self.size,
                        gaussian_binomial(self.space.n, self.k, self.space.q))

    def chi(self) -> np.ndarray:
        vec = np.zeros(len(self.space.spaces(self.k)), dtype=np.int8)
        if self.members:
            vec[sorted(self.members)] = 1
        return vec

    def subspaces(self) -> list[Subspace]:
        spaces = self.space.spaces(self.k)
        return [spaces[j] for j in sorted(self.members)]

    def contains_index(self, j: int) -> bool:
        return j in self.members


def kset_from_indices(space: AmbientSpace, k: int, indices) -> KSet:
    total = len(space.spaces(k))
    idx = frozenset(int(i) for i in indices)
    if idx and (min(idx) < 0 or max(idx) >= total):
        raise IndexError("member index out of range")
    return KSet(space, k, idx)


def kset_from_subspaces(space: AmbientSpace, k: int, subs) -> KSet:
    index = space.space_index(k)
    return KSet(space, k, frozenset(index[s.rows] for s in subs))


def empty_kset(space: AmbientSpace, k: int) -> KSet:
    return KSet(space, k, frozenset())


def full_kset(space: AmbientSpace, k: int) -> KSet:
    return KSet(space, k, frozenset(range(len(space.spaces(k)))))


def point_pencil(space: AmbientSpace, point, k: int) -> KSet:
    """All k-spaces of the space through a fixed point (x = 1)."""
    if isinstance(point, Subspace):
        point = point.rows[0]
    point = tuple(int(v) for v in point)
    if space.mode == "affine" and point[0] == 0:
        raise DimensionOutOfRange("affine pencils need an affine point")
    pidx = space.point_index.get(point)
    if pidx is not None:
        members = [j for j, pts in enumerate(space.space_point_indices(k))
                   if pidx in pts]
    else:  # infinite point of a projective space
        spaces = space.spaces(k)
        members = [j for j, s in enumerate(spaces) if s.contains_point(point)]
    return KSet(space, k, frozenset(members))


def pg_hyperplane_set(space: AmbientSpace, hyperplane: Subspace, k: int) -> KSet:
    """All k-spaces inside a fixed hyperplane of PG(n, q); the parameter
    (q^(n-k)-1)/(q^(k+1)-1) is an integer iff (k+1) | (n+1)."""
    if space.mode != "projective":
        raise DimensionOutOfRange("hyperplane sets live in the projective space")
    if hyperplane.dim != space.n - 1:
        raise DimensionOutOfRange("not a hyperplane")
    members = [j for j, s in enumerate(space.spaces(k))
               if subspace_contains(hyperplane, s)]
    return KSet(space, k, frozenset(members))


# ---------------------------------------------------------------------------
# closure operations
# ---------------------------------------------------------------------------

def complement(l: KSet) -> KSet:
    total = len(l.space.spaces(l.k))
    return KSet(l.space, l.k, frozenset(range(total)) - l.members)


def union(a: KSet, b: KSet) -> KSet:
    if (a.space, a.k) != (b.space, b.k):
        raise DimensionOutOfRange("mismatched ambient spaces")
    if a.members & b.members:
        raise NotDisjoint("union requires disjoint k-sets")
    return KSet(a.space, a.k, a.members | b.members)


def difference(a: KSet, b: KSet) -> KSet:
    if (a.space, a.k) != (b.space, b.k):
        raise DimensionOutOfRange("mismatched ambient spaces")
    if not b.members <= a.members:
        raise NotContained("difference requires containment")
    return KSet(a.space, a.k, a.members - b.members)


# ---------------------------------------------------------------------------
# the definitional test
# ---------------------------------------------------------------------------

_INCIDENCE_CACHE: dict = {}


def incidence_for(space: AmbientSpace, k: int) -> IncidenceMatrix:
    key = (space.n, space.q, space.mode, k)
    if key not in _INCIDENCE_CACHE:
        _INCIDENCE_CACHE[key] = build_incidence(space, k)
    return _INCIDENCE_CACHE[key]


def is_cameron_liebler(l: KSet) -> tuple[bool, list[Fraction] | None]:
    """Definitional test: chi in the row space of the incidence matrix.

    In affine mode a non-integral parameter is rejected before any
    linear algebra (type II spreads force integrality there); projective
    Cameron-Liebler sets can have non-integral parameters.
    """
    if l.space.mode == "affine" and l.x.denominator != 1:
        return False, None
    inc = incidence_for(l.space, l.k)
    return inc.row_space_membership(l.chi())


# ---------------------------------------------------------------------------
# equivalent characterizations (validators)
# ---------------------------------------------------------------------------

def _equivalence_applicable(l: KSet) -> bool:
    return l.space.n >= 2 * l.k + 1


def check_spread_intersections(l: KSet, spreads) -> CheckResult:
    """|L meet S| for every given spread; passes iff all equal x."""
    if not _equivalence_applicable(l):
        return CheckResult("spread_intersections", NOT_APPLICABLE,
                           {"reason": "requires n >= 2k+1"})
    chi = l.chi()
    counts = []
    for s in spreads:
        counts.append(int(chi[list(s.member_indices())].sum()))
    ok = l.x.denominator == 1 and all(c == l.x for c in counts)
    return CheckResult("spread_intersections", PASS if ok else FAIL,
                       {"counts": counts, "x": str(l.x)})


def check_switching_invariance(l: KSet, pair: SwitchingPair) -> CheckResult:
    if not _equivalence_applicable(l):
        return CheckResult("switching_invariance", NOT_APPLICABLE,
                           {"reason": "requires n >= 2k+1"})
    idx = l.space.space_index(l.k)
    c1 = sum(1 for m in pair.r1 if idx[m.rows] in l.members)
    c2 = sum(1 for m in pair.r2 if idx[m.rows] in l.members)
    return CheckResult("switching_invariance", PASS if c1 == c2 else FAIL,
                       {"r1": c1, "r2": c2})


def affine_disjoint_count(l: KSet, line: Subspace) -> int:
    """Members of a line class sharing no affine point with `line`."""
    if l.k != 1:
        raise NotLines("affine disjointness counts are for line classes")
    space = l.space
    line_pts = set(space.point_indices_of(line))
    pts = space.space_point_indices(1)
    return sum(1 for j in l.members if not line_pts & set(pts[j]))


def infinite_pencil_counts(l: KSet) -> list[int]:
    """Members through each (k-1)-space at infinity, canonical order."""
    _, pencil_members, _ = l.space.infinity_pencils(l.k)
    chi = l.chi()
    return [int(chi[m].sum()) for m in pencil_members]


def check_line_disjointness(l: KSet) -> CheckResult:
    """The line-class criterion: for every affine line, the number of
    members affinely disjoint to it is (q^2 [n-2 choose 1]_q + 1)(x -
    chi(line)), and every infinite point lies on exactly x members."""
    if l.k != 1:
        raise NotLines("line-class check")
    if not _equivalence_applicable(l):
        return CheckResult("line_disjointness", NOT_APPLICABLE,
                           {"reason": "requires n >= 3"})
    space = l.space
    n, q = space.n, space.q
    if l.x.denominator != 1:
        return CheckResult("line_disjointness", FAIL,
                           {"reason": "non-integral parameter"})
    x = int(l.x)
    base = q * q * gaussian_binomial(n - 2, 1, q) + 1
    pts = space.space_point_indices(1)
    point_sets = [set(p) for p in pts]
    bad = []
    for j, line in enumerate(space.spaces(1)):
        chi_l = 1 if j in l.members else 0
        expected = base * (x - chi_l)
        got = sum(1 for m in l.members if not point_sets[j] & point_sets[m])
        if got != expected:
            bad.append({"line": line.to_json(), "got": got, "expected": expected})
    pencil_counts = infinite_pencil_counts(l)
    pencil_ok = all(c == x for c in pencil_counts)
    status = PASS if not bad and pencil_ok else FAIL
    return CheckResult("line_disjointness", status,
                       {"mismatches": bad[:5], "pencil_counts_ok": pencil_ok})


def pg_disjoint_count(l: KSet, other: Subspace) -> int:
    """Members projectively disjoint from a given k-space."""
    if l.space.mode != "projective":
        raise DimensionOutOfRange("projective count on a projective set")
    spaces = l.space.spaces(l.k)
    return sum(1 for j in l.members if meet(spaces[j], other) is None)


def check_pg_disjointness(l: KSet, sample=None) -> CheckResult:
    """Projective criterion: member count disjoint from K equals
    (x - chi(K)) [n-k-1 choose k]_q q^(k^2+k) for every k-space K."""
    if not _equivalence_applicable(l):
        return CheckResult("pg_disjointness", NOT_APPLICABLE,
                           {"reason": "requires n >= 2k+1"})
    space = l.space
    n, k, q = space.n, l.k, space.q
    factor = gaussian_binomial(n - k - 1, k, q) * q ** (k * k + k)
    spaces = space.spaces(k)
    indices = range(len(spaces)) if sample is None else sample
    bad = []
    for j in indices:
        chi_k = 1 if j in l.members else 0
        expected = (l.x - chi_k) * factor
        got = pg_disjoint_count(l, spaces[j])
        if got != expected:
            bad.append({"k_space": spaces[j].to_json(),
                        "got": got, "expected": str(expected)})
    return CheckResult("pg_disjointness", PASS if not bad else FAIL,
                       {"mismatches": bad[:5]})


# ---------------------------------------------------------------------------
# affine <-> projective transfer
# ---------------------------------------------------------------------------

def embed_to_pg(l: KSet) -> KSet:
    """The same k-spaces viewed in the projective closure (parameter is
    unchanged; the projective chi is the affine chi padded with zeros)."""
    if l.space.mode != "affine":
        raise DimensionOutOfRange("embedding starts from an affine set")
    proj = ambient(l.space.n, l.space.q, "projective")
    # affine k-spaces form a prefix of the projective enumeration
    return KSet(proj, l.k, l.members)


def restrict_from_pg(l: KSet) -> tuple[KSet, int]:
    """Restriction to the affine space; also returns how many members at
    infinity were dropped (the parameter changes iff nonzero)."""
    if l.space.mode != "projective":
        raise DimensionOutOfRange("restriction starts from a projective set")
    aff = ambient(l.space.n, l.space.q, "affine")
    n_affine = len(aff.spaces(l.k))
    kept = frozenset(j for j in l.members if j < n_affine)
    return KSet(aff, l.k, kept), l.size - len(kept)


def extend_with_infinity(l: KSet) -> KSet:
    """Embed and add every k-space at infinity; the parameter grows by
    (q^(n-k)-1)/(q^(k+1)-1)."""
    emb = embed_to_pg(l)
    proj = emb.space
    n_affine = len(ambient(l.space.n, l.space.q, "affine").spaces(l.k))
    total = len(proj.spaces(l.k))
    return KSet(proj, l.k, emb.members | frozenset(range(n_affine, total)))


# ---------------------------------------------------------------------------
# counting and projecting through subspaces at infinity
# ---------------------------------------------------------------------------

def count_through_infinite_subspace(l: KSet, axis: Subspace | None) -> int:
    """Members through a fixed i-space at infinity (axis None means
    i = -1, counting everything)."""
    if axis is None:
        return l.size
    if axis.is_affine():
        raise NotSkew("axis must lie at infinity")
    if not -1 <= axis.dim <= l.k - 2:
        raise DimensionViolation("need -1 <= i <= k-2")
    spaces = l.space.spaces(l.k)
    return sum(1 for j in l.members if subspace_contains(spaces[j], axis))


def canonical_complement(space: AmbientSpace, axis: Subspace) -> Subspace:
    """First canonically enumerated affine (n-i-1)-space skew to axis."""
    proj = ambient(space.n, space.q, "projective")
    target_dim = space.n - axis.dim - 1
    for cand in proj.spaces(target_dim):
        if not cand.is_affine():
            break
        if meet(cand, axis) is None:
            return cand
    raise NotSkew("no affine complement found")


def project_through_infinite_subspace(l: KSet, axis: Subspace,
                                      pi: Subspace | None = None) -> KSet:
    """Project the members through an i-space at infinity onto a skew
    (n-i-1)-space pi, yielding a (k-i-1)-set of pi viewed as an affine
    geometry.  When the input has the Cameron-Liebler property and
    n >= 2k-i, the image does too, with the same parameter."""
    space = l.space
    i = axis.dim
    if axis.is_affine():
        raise NotSkew("axis must lie at infinity")
    if not (0 <= i <= l.k - 2) or space.n < l.k + 2:
        raise DimensionViolation("need 0 <= i <= k-2 and n >= k+2")
    if pi is None:
        pi = canonical_complement(space, axis)
    if pi.dim != space.n - i - 1:
        raise DimensionViolation("pi must have dimension n-i-1")
    if not pi.is_affine():
        raise NotSkew("pi must carry an affine part")
    if meet(pi, axis) is not None:
        raise NotSkew("pi must be skew to the axis")
    m = pi.dim
    target = ambient(m, space.q, "affine")
    pivots = [next(c for c, v in enumerate(row) if v) for row in pi.rows]
    spaces = space.spaces(l.k)
    image = set()
    for j in sorted(l.members):
        big = spaces[j]
        if not subspace_contains(big, axis):
            continue
        cut = meet(big, pi)
        if cut is None or cut.dim != l.k - i - 1:
            raise DimensionViolation("projection lost dimension")
        local_rows = [[row[p] for p in pivots] for row in cut.rows]
        image.add(make_subspace(m, space.q, local_rows).rows)
    index = target.space_index(l.k - i - 1)
    return KSet(target, l.k - i - 1, frozenset(index[r] for r in image))


def modular_check(l: KSet) -> bool:
    """For (n-2)-sets: x(x-1)/2 must vanish mod q+1."""
    if l.k != l.space.n - 2:
        raise WrongCodimension("check applies to (n-2)-sets")
    if l.x.denominator != 1:
        return False
    x = int(l.x)
    return (x * (x - 1) // 2) % (l.space.q + 1) == 0


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def kset_to_json(l: KSet) -> dict:
    return {
        "n": l.space.n, "q": l.space.q, "k": l.k, "mode": l.space.mode,
        "members": [s.to_json() for s in l.subspaces()],
    }


def kset_from_json(doc: dict) -> KSet:
    space = ambient(int(doc["n"]), int(doc["q"]), doc["mode"])
    k = int(doc["k"])
    subs = [make_subspace(space.n, space.q, rows) for rows in doc["members"]]
    for s in subs:
        if s.dim != k:
            raise DimensionViolation("member of wrong dimension")
    return kset_from_subspaces(space, k, subs)
