"""Construction and verification of k-spreads and switching sets.

Spread types:

* type I    -- a projective spread obtained by field reduction (the
               Desarguesian one), restrictable to the affine space;
* type II   -- all affine k-spaces through a fixed (k-1)-space at
               infinity (a parallel class);
* type III  -- mix over the q affine hyperplanes through a fixed
               (n-2)-space pi at infinity: in hyperplane i take the
               k-spaces through a chosen (k-1)-space tau_i inside pi,
               the tau_i not all equal;
* type III+ -- type III for lines with all chosen points distinct.

Every constructor validates its output exactly (pairwise disjointness
and point coverage).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .galois import field_for_order, make_field, expansion_table
from .geometry import (AmbientSpace, Subspace, ambient,
                       enumerate_rref_matrices, make_subspace, span)

__all__ = [
    "Spread", "SwitchingPair", "SpreadError", "DivisibilityViolated",
    "NotAtInfinity", "WrongDimension", "BadChoices", "AllEqual", "WrongType",
    "GeometryMismatch", "spread_type_I", "restrict_to_affine",
    "spread_type_II", "spread_type_III", "is_plus", "is_spread",
    "verify_switching_pair", "switching_pair_from_spreads",
    "all_type_II_spreads", "all_type_III_spreads", "sample_type_III_spreads",
    "extend_spread_from_subspace", "lift_spread_through_infinity",
    "random_affine_collineation", "transport_type_III",
]


class SpreadError(ValueError):
    pass


class DivisibilityViolated(SpreadError):
    pass


class NotAtInfinity(SpreadError):
    pass


class WrongDimension(SpreadError):
    pass


class BadChoices(SpreadError):
    pass


class AllEqual(SpreadError):
    pass


class WrongType(SpreadError):
    pass


class GeometryMismatch(SpreadError):
    pass


@dataclass(frozen=True)
class Spread:
    space: AmbientSpace
    k: int
    members: tuple[Subspace, ...]
    type_tag: str = "untyped"
    data: dict = field(default_factory=dict, compare=False, hash=False)

    def __len__(self):
        return len(self.members)

    def member_indices(self) -> tuple[int, ...]:
        idx = self.space.space_index(self.k)
        return tuple(sorted(idx[m.rows] for m in self.members))

    def to_json(self) -> dict:
        return {
            "n": self.space.n, "q": self.space.q, "k": self.k,
            "mode": self.space.mode, "type": self.type_tag,
            "data": {key: val for key, val in self.data.items()},
            "members": [m.to_json() for m in self.members],
        }


@dataclass(frozen=True)
class SwitchingPair:
    space: AmbientSpace
    k: int
    r1: tuple[Subspace, ...]
    r2: tuple[Subspace, ...]


def _sorted_members(members) -> tuple[Subspace, ...]:
    return tuple(sorted(members, key=Subspace.key))


def _coverage(space: AmbientSpace, members) -> tuple[bool, str]:
    """Exact disjointness-and-partition check over the space's points."""
    counts = np.zeros(space.num_points, dtype=np.int64)
    for m in members:
        counts[list(space.point_indices_of(m))] += 1
    if (counts > 1).any():
        return False, "members overlap"
    if (counts == 0).any():
        return False, "points left uncovered"
    return True, "ok"


def is_spread(members, space: AmbientSpace, k: int | None = None) -> tuple[bool, str]:
    """Exact verification; returns (ok, reason)."""
    members = list(members)
    if not members:
        return False, "empty"
    dims = {m.dim for m in members}
    if len(dims) != 1:
        return False, "mixed dimensions"
    if k is not None and dims != {k}:
        return False, f"dimension is not {k}"
    if len(set(m.rows for m in members)) != len(members):
        return False, "repeated member"
    return _coverage(space, members)


def verify_switching_pair(pair: SwitchingPair) -> tuple[bool, str]:
    """The three conditions on conjugated switching sets: disjoint as
    k-space sets, each a partial spread, covering the same points."""
    space = pair.space
    if set(m.rows for m in pair.r1) & set(m.rows for m in pair.r2):
        return False, "the two sets share a k-space"
    covered = []
    for part in (pair.r1, pair.r2):
        counts = np.zeros(space.num_points, dtype=np.int64)
        for m in part:
            counts[list(space.point_indices_of(m))] += 1
        if (counts > 1).any():
            return False, "not a partial spread"
        covered.append(counts > 0)
    if not np.array_equal(covered[0], covered[1]):
        return False, "covered point sets differ"
    return True, "ok"


def switching_pair_from_spreads(s1: Spread, s2: Spread) -> SwitchingPair:
    if s1.space != s2.space or s1.k != s2.k:
        raise GeometryMismatch("spreads live in different geometries")
    m1 = {m.rows: m for m in s1.members}
    m2 = {m.rows: m for m in s2.members}
    r1 = _sorted_members(m for key, m in m1.items() if key not in m2)
    r2 = _sorted_members(m for key, m in m2.items() if key not in m1)
    return SwitchingPair(s1.space, s1.k, r1, r2)


# ---------------------------------------------------------------------------
# type I: field reduction
# ---------------------------------------------------------------------------

def spread_type_I(n: int, q: int, k: int) -> Spread:
    """Desarguesian projective k-spread of PG(n, q) by field reduction:
    the points of PG((n+1)/(k+1) - 1, q^(k+1)) blown up to k-spaces."""
    if (n + 1) % (k + 1) != 0:
        raise DivisibilityViolated(f"(k+1)={k + 1} must divide (n+1)={n + 1}")
    space = ambient(n, q, "projective")
    sub = field_for_order(q)
    big = make_field(sub.p, sub.h * (k + 1))
    expand = expansion_table(sub, big)
    gen = big.p  # code of the basis generator x
    m = (n + 1) // (k + 1)
    members = []
    for rows in enumerate_rref_matrices(m, 1, big.q):
        v = rows[0]
        basis = []
        mult = 1
        for _ in range(k + 1):
            row = []
            for comp in v:
                row.extend(int(c) for c in expand[big.mul(mult, comp)])
            basis.append(row)
            mult = big.mul(mult, gen)
        members.append(make_subspace(n, q, basis))
    spread = Spread(space, k, _sorted_members(members), "I",
                    {"subfield": q, "extension": big.q})
    ok, reason = is_spread(spread.members, space, k)
    if not ok:
        raise AssertionError(f"field reduction failed: {reason}")
    return spread


def restrict_to_affine(s: Spread) -> Spread:
    """Drop the members inside the hyperplane at infinity."""
    if s.space.mode != "projective":
        raise GeometryMismatch("restriction needs a projective spread")
    aff_space = ambient(s.space.n, s.space.q, "affine")
    members = _sorted_members(m for m in s.members if m.is_affine())
    spread = Spread(aff_space, s.k, members, s.type_tag, dict(s.data))
    ok, reason = is_spread(spread.members, aff_space, s.k)
    if not ok:
        raise AssertionError(f"restriction failed: {reason}")
    return spread


# ---------------------------------------------------------------------------
# type II: parallel classes
# ---------------------------------------------------------------------------

def spread_type_II(space: AmbientSpace, at_infinity: Subspace) -> Spread:
    if space.mode != "affine":
        raise GeometryMismatch("type II spreads live in the affine space")
    if at_infinity.is_affine():
        raise NotAtInfinity("the axis of a type II spread lies at infinity")
    k = at_infinity.dim + 1
    inf_list, pencil_members, _ = space.infinity_pencils(k)
    idx = {s.rows: i for i, s in enumerate(inf_list)}
    if at_infinity.rows not in idx:
        raise WrongDimension("axis must be a (k-1)-space at infinity")
    spaces = space.spaces(k)
    members = _sorted_members(spaces[j] for j in pencil_members[idx[at_infinity.rows]])
    return Spread(space, k, members, "II", {"at_infinity": at_infinity.to_json()})


def all_type_II_spreads(space: AmbientSpace, k: int) -> list[Spread]:
    inf_list, pencil_members, _ = space.infinity_pencils(k)
    spaces = space.spaces(k)
    out = []
    for axis, idxs in zip(inf_list, pencil_members):
        members = _sorted_members(spaces[j] for j in idxs)
        out.append(Spread(space, k, members, "II",
                          {"at_infinity": axis.to_json()}))
    return out


# ---------------------------------------------------------------------------
# type III
# ---------------------------------------------------------------------------

def subspace_contains(big: Subspace, small: Subspace) -> bool:
    return all(big.contains_point(r) for r in small.rows)


def hyperplanes_through(space: AmbientSpace, pi: Subspace) -> list[Subspace]:
    """The q affine hyperplanes through an (n-2)-space at infinity."""
    return [h for h in space.spaces(space.n - 1) if subspace_contains(h, pi)]


def spread_type_III(space: AmbientSpace, pi: Subspace, choices) -> Spread:
    """Members: the k-spaces K with tau_i <= K <= pi_i, where pi_1..pi_q
    are the affine hyperplanes through pi in canonical order and tau_i
    is the i-th chosen (k-1)-space inside pi."""
    if space.mode != "affine":
        raise GeometryMismatch("type III spreads live in the affine space")
    if pi.is_affine() or pi.dim != space.n - 2:
        raise NotAtInfinity("pi must be an (n-2)-space at infinity")
    choices = list(choices)
    hyps = hyperplanes_through(space, pi)
    if len(choices) != len(hyps):
        raise BadChoices(f"need {len(hyps)} choices, got {len(choices)}")
    dims = {t.dim for t in choices}
    if len(dims) != 1:
        raise BadChoices("choices of mixed dimension")
    k = dims.pop() + 1
    for t in choices:
        if not subspace_contains(pi, t):
            raise BadChoices("every tau_i must lie inside pi")
    distinct = len(set(t.rows for t in choices))
    if distinct == 1:
        raise AllEqual("all tau_i equal degenerates to a type II spread")
    inf_list, pencil_members, _ = space.infinity_pencils(k)
    inf_idx = {s.rows: i for i, s in enumerate(inf_list)}
    spaces = space.spaces(k)
    members = []
    for h, tau in zip(hyps, choices):
        for j in pencil_members[inf_idx[tau.rows]]:
            if subspace_contains(h, spaces[j]):
                members.append(spaces[j])
    tag = "III+" if k == 1 and distinct == len(choices) else "III"
    spread = Spread(space, k, _sorted_members(members), tag, {
        "pi": pi.to_json(),
        "hyperplanes": [h.to_json() for h in hyps],
        "choices": [t.to_json() for t in choices],
    })
    ok, reason = is_spread(spread.members, space, k)
    if not ok:
        raise BadChoices(f"choices do not produce a spread: {reason}")
    return spread


def is_plus(s: Spread) -> bool:
    """True iff a type III line spread used pairwise distinct points."""
    if s.type_tag not in ("III", "III+") or s.k != 1:
        raise WrongType("defined for type III line spreads only")
    choices = s.data["choices"]
    return len({tuple(map(tuple, c)) for c in choices}) == len(choices)


def all_type_III_spreads(space: AmbientSpace, k: int = 1,
                         plus_only: bool = False) -> list[Spread]:
    """Every type III k-spread (exhaustive over pi and the tau choices).
    Desk scale only: the choice count is (#tau)^q."""
    import itertools
    out = []
    q = space.q
    for pi in space.infinite_subspaces(space.n - 2):
        taus = [t for t in space.infinite_subspaces(k - 1)
                if subspace_contains(pi, t)]
        for combo in itertools.product(taus, repeat=q):
            keys = {t.rows for t in combo}
            if len(keys) == 1:
                continue
            if plus_only and len(keys) != q:
                continue
            out.append(spread_type_III(space, pi, list(combo)))
    return out


def sample_type_III_spreads(space: AmbientSpace, k: int, count: int,
                            seed: int) -> list[Spread]:
    """Deterministic seeded sample of type III spreads, for checks where
    the exhaustive list is too large.  Repeats are discarded."""
    rng = random.Random(seed)
    pis = space.infinite_subspaces(space.n - 2)
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        pi = rng.choice(pis)
        taus = [t for t in space.infinite_subspaces(k - 1)
                if subspace_contains(pi, t)]
        combo = [rng.choice(taus) for _ in range(space.q)]
        if len({t.rows for t in combo}) == 1:
            continue
        key = (pi.rows, tuple(t.rows for t in combo))
        if key in seen:
            continue
        seen.add(key)
        out.append(spread_type_III(space, pi, combo))
    return out


# ---------------------------------------------------------------------------
# spread extension
# ---------------------------------------------------------------------------

def extend_spread_from_subspace(sub_members, tau_a: Subspace,
                                axis: Subspace, space: AmbientSpace) -> Spread:
    """Extend a k-spread of an affine subspace tau_a to one of the whole
    space by adding all k-spaces through `axis` (a (k-1)-space at
    infinity inside the closure of tau_a) that are not inside tau_a.
    The added part depends on `axis` only, never on the sub-spread."""
    sub_members = list(sub_members)
    k = sub_members[0].dim
    if axis.is_affine() or axis.dim != k - 1:
        raise GeometryMismatch("axis must be a (k-1)-space at infinity")
    if not subspace_contains(tau_a, axis):
        raise GeometryMismatch("axis must lie in the subspace at infinity")
    pencil = spread_type_II(space, axis)
    extra = [m for m in pencil.members if not subspace_contains(tau_a, m)]
    members = _sorted_members(sub_members + extra)
    spread = Spread(space, k, members, "untyped",
                    {"extended_from": tau_a.to_json(), "axis": axis.to_json()})
    ok, reason = is_spread(spread.members, space, k)
    if not ok:
        raise GeometryMismatch(f"extension is not a spread: {reason}")
    return spread


def lift_spread_through_infinity(local_members, axis: Subspace,
                                 space: AmbientSpace) -> Spread:
    """Lift a (k-i-1)-spread of a complementary (n-i-1)-space through an
    i-space `axis` at infinity: members become the spans <axis, N>."""
    if axis.is_affine():
        raise GeometryMismatch("axis must lie at infinity")
    members = [span(axis, n) for n in local_members]
    k = members[0].dim
    spread = Spread(space, k, _sorted_members(members), "untyped",
                    {"lifted_through": axis.to_json()})
    ok, reason = is_spread(spread.members, space, k)
    if not ok:
        raise GeometryMismatch(f"lift is not a spread: {reason}")
    return spread


# ---------------------------------------------------------------------------
# affine collineations (for transport tests and seeded sampling)
# ---------------------------------------------------------------------------

def random_affine_collineation(space: AmbientSpace, rng: random.Random):
    """A random element of the affine group as an (n+1)x(n+1) matrix
    acting on row vectors: fixes x0 = 0 and is invertible."""
    f = space.field
    n, q = space.n, space.q
    while True:
        mat = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        arr = np.array(mat, dtype=np.int64)
        from . import _kernels
        work = arr.copy()
        rank = _kernels.gf_rref(work, f.add_table, f.mul_table,
                                f.neg_table, f.inv_table)
        if rank == n:
            break
    translation = [rng.randrange(q) for _ in range(n)]
    full = [[1] + translation]
    for i in range(n):
        full.append([0] + mat[i])
    return full


def transport_type_III(s: Spread, matrix) -> Spread:
    """Image of a type III spread under an affine collineation, by
    transporting its construction data and rebuilding."""
    if s.type_tag not in ("III", "III+"):
        raise WrongType("transport is defined for type III spreads")
    n, q = s.space.n, s.space.q
    pi = make_subspace(n, q, s.data["pi"])
    hyps = [make_subspace(n, q, h) for h in s.data["hyperplanes"]]
    choices = [make_subspace(n, q, c) for c in s.data["choices"]]
    from .geometry import apply_matrix
    pi2 = apply_matrix(pi, matrix)
    mapped = {apply_matrix(h, matrix).rows: apply_matrix(c, matrix)
              for h, c in zip(hyps, choices)}
    hyps2 = hyperplanes_through(s.space, pi2)
    return spread_type_III(s.space, pi2, [mapped[h.rows] for h in hyps2])
