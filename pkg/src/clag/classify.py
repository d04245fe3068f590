"""Exhaustive desk-scale classification searches with machine-checkable
certificates.

The k-set search enumerates every 0/1 vector of the required weight in
the row space of the affine incidence matrix.  It backtracks over the
pencils of (k-1)-spaces at infinity (each must carry exactly x members,
a sound, necessary constraint: spread differences lie in the kernel)
and propagates forced values by exact rational elimination; every
surviving candidate still passes the definitional row-space test as a
final, independent filter.  All pruning rules are necessary conditions,
so the enumeration is complete.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

import numpy as np

from . import exact
from .clsets import (KSet, complement, incidence_for, is_cameron_liebler,
                     kset_from_indices, point_pencil,
                     project_through_infinite_subspace)
from .geometry import AmbientSpace, ambient, gaussian_binomial

__all__ = ["ScaleExceeded", "SearchStats", "search_cl_ksets",
           "search_cl_line_classes", "classify_hyperplane_cl",
           "verify_hyperplane_spread_classification",
           "cross_check_projection", "verify_certificate"]

DEFAULT_SPACE_CAP = 130
ENUM_CAP = 1 << 20       # full Boolean enumeration bound for hyperplane sets
_SCAN_GATE = 14          # run forced-value scans once this few dims remain
_ENDGAME_DIM = 6         # switch to value branching when this few remain


class ScaleExceeded(RuntimeError):
    pass


def space_cap() -> int:
    env = os.environ.get("CLAG_SIZE_GUARD")
    return int(env) if env else DEFAULT_SPACE_CAP


@dataclass
class SearchStats:
    nodes: int = 0
    forced: int = 0
    pruned_pencil: int = 0
    pruned_rank: int = 0
    endgame_nodes: int = 0
    solutions: int = 0

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "forced": self.forced,
                "pruned_by_pencil_counts": self.pruned_pencil,
                "pruned_by_elimination": self.pruned_rank,
                "endgame_nodes": self.endgame_nodes,
                "solutions": self.solutions}


class _Contradiction(Exception):
    pass


class _State:
    __slots__ = ("values", "ones", "unknown", "rows")

    def __init__(self, values, ones, unknown, rows):
        self.values = values
        self.ones = ones
        self.unknown = unknown
        self.rows = rows

    def clone(self) -> "_State":
        return _State(self.values[:], self.ones[:], self.unknown[:],
                      self.rows[:])


def _normalize(vec: list[int]) -> list[int]:
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
        if g == 1:
            return vec
    if g > 1:
        return [v // g for v in vec]
    return vec


class _Search:
    """Backtracking enumeration of the 0/1 vectors in the row space with
    exactly x members in every pencil at infinity."""

    def __init__(self, space: AmbientSpace, k: int, x: int, stats: SearchStats):
        self.space = space
        self.k = k
        self.x = x
        self.stats = stats
        self.npts = space.num_points
        pts = space.space_point_indices(k)
        self.vecs = []
        for tup in pts:
            v = [0] * self.npts
            for p in tup:
                v[p] = 1
            self.vecs.append(v)
        _, pencil_members, per_space = space.infinity_pencils(k)
        self.pencils = [list(map(int, m)) for m in pencil_members]
        self.per_space = [int(v) for v in per_space]
        self.pencil_size = len(self.pencils[0])
        kern = incidence_for(space, k).kernel_basis()
        self.kernel = kern
        self.solutions: list[tuple[int, ...]] = []

    # -- exact elimination ------------------------------------------------

    def _reduce_query(self, rows, j):
        """Reduce [vec_j | alpha=1 | beta=0]; returns ('forced', value)
        when the space's value is determined, else ('free', None)."""
        vec = self.vecs[j][:]
        alpha, beta = 1, 0
        for pivot, row in rows:
            f = vec[pivot]
            if f:
                t = row[pivot]
                vec = [t * a - f * b for a, b in zip(vec, row)]
                alpha *= t
                beta = t * beta - f * row[self.npts]
        if any(vec[:self.npts]):
            return "free", None
        val = Fraction(-beta, alpha)
        return "forced", val

    def _add_equation(self, state, j, val):
        vec = self.vecs[j] + [val]
        for pivot, row in state.rows:
            f = vec[pivot]
            if f:
                t = row[pivot]
                vec = [t * a - f * b for a, b in zip(vec, row)]
        pivot = next((i for i in range(self.npts) if vec[i]), None)
        if pivot is None:
            if vec[self.npts] != 0:
                raise _Contradiction
            return
        vec = _normalize(vec)
        if vec[pivot] < 0:
            vec = [-v for v in vec]
        state.rows.append((pivot, vec))

    # -- assignment and propagation ----------------------------------------

    def _assign(self, state, j, val):
        cur = state.values[j]
        if cur != -1:
            if cur != val:
                raise _Contradiction
            return
        state.values[j] = val
        pid = self.per_space[j]
        state.unknown[pid] -= 1
        if val:
            state.ones[pid] += 1
        ones, unknown = state.ones[pid], state.unknown[pid]
        if ones > self.x or ones + unknown < self.x:
            self.stats.pruned_pencil += 1
            raise _Contradiction
        self._add_equation(state, j, val)
        if unknown and ones == self.x:
            for t in self.pencils[pid]:
                if state.values[t] == -1:
                    self._assign(state, t, 0)
        elif unknown and ones + unknown == self.x:
            for t in self.pencils[pid]:
                if state.values[t] == -1:
                    self._assign(state, t, 1)

    def _scan_forced(self, state):
        changed = True
        while changed:
            changed = False
            for j in range(len(self.vecs)):
                if state.values[j] != -1:
                    continue
                kind, val = self._reduce_query(state.rows, j)
                if kind != "forced":
                    continue
                if val == 0:
                    self._assign(state, j, 0)
                elif val == 1:
                    self._assign(state, j, 1)
                else:
                    self.stats.pruned_rank += 1
                    raise _Contradiction
                self.stats.forced += 1
                changed = True

    # -- main recursion ----------------------------------------------------

    def run(self):
        state = _State([-1] * len(self.vecs),
                       [0] * len(self.pencils),
                       [len(p) for p in self.pencils],
                       [])
        self._dfs(state)
        self.solutions.sort()

    def _remaining_dim(self, state) -> int:
        return self.npts - len(state.rows)

    def _dfs(self, state):
        self.stats.nodes += 1
        if self._remaining_dim(state) <= _SCAN_GATE:
            try:
                self._scan_forced(state)
            except _Contradiction:
                return
        nxt = next((pid for pid in range(len(self.pencils))
                    if state.unknown[pid]), None)
        if nxt is None:
            self._leaf(state)
            return
        if self._remaining_dim(state) <= _ENDGAME_DIM:
            self.stats.endgame_nodes += 1
            j = next(t for t in self.pencils[nxt] if state.values[t] == -1)
            for val in (0, 1):
                child = state.clone()
                try:
                    self._assign(child, j, val)
                except _Contradiction:
                    continue
                self._dfs(child)
            return
        members = self.pencils[nxt]
        undecided = [t for t in members if state.values[t] == -1]
        need = self.x - state.ones[nxt]
        for chosen in itertools.combinations(undecided, need):
            chosen = set(chosen)
            child = state.clone()
            try:
                for t in undecided:
                    self._assign(child, t, 1 if t in chosen else 0)
            except _Contradiction:
                continue
            self._dfs(child)

    def _leaf(self, state):
        chi = np.array(state.values, dtype=np.int64)
        assert (chi >= 0).all()
        for pid, members in enumerate(self.pencils):
            if int(chi[members].sum()) != self.x:
                return
        if self.kernel.shape[0] and exact.int_matvec(self.kernel, chi).any():
            return  # final definitional filter
        self.solutions.append(tuple(int(i) for i in np.nonzero(chi)[0]))
        self.stats.solutions += 1


def search_cl_ksets(n: int, q: int, k: int, x: int,
                    cap: int | None = None, seed: int = 0) -> dict:
    """Complete classification certificate for the Cameron-Liebler
    k-sets of AG(n, q) with parameter x."""
    space = ambient(n, q, "affine")
    total = len(space.spaces(k))
    limit = cap if cap is not None else space_cap()
    if total > limit:
        raise ScaleExceeded(f"{total} k-spaces exceed the cap {limit}")
    start = time.monotonic()
    max_x = q ** (n - k)
    complemented = False
    solutions: list[tuple[int, ...]] = []
    stats = SearchStats()
    if 0 <= x <= max_x:
        search_x = x
        if x > max_x - x:
            complemented = True
            search_x = max_x - x
        search = _Search(space, k, search_x, stats)
        search.run()
        found = search.solutions
        if complemented:
            allidx = frozenset(range(total))
            found = sorted(tuple(sorted(allidx - frozenset(s))) for s in found)
        solutions = found
    wall = time.monotonic() - start
    spaces = space.spaces(k)
    cert = {
        "problem": {"n": n, "q": q, "k": k, "x": x, "mode": "affine"},
        "space_count": total,
        "expected_weight": x * gaussian_binomial(n, k, q),
        "complement_symmetry_used": complemented,
        "pruning_rules": ["pencil-at-infinity counts (type II spread "
                          "intersections must equal x)",
                          "exact rational forced-value elimination",
                          "final row-space membership filter"],
        "solution_count": len(solutions),
        "solutions": [{"indices": list(s),
                       "members": [spaces[j].to_json() for j in s]}
                      for s in solutions],
        "stats": stats.to_json(),
        "seed": seed,
    }
    cert["wall_clock_s"] = round(wall, 3)
    return cert


def search_cl_line_classes(n: int, q: int, x: int,
                           cap: int | None = None, seed: int = 0) -> dict:
    return search_cl_ksets(n, q, 1, x, cap=cap, seed=seed)


def verify_certificate(cert: dict) -> bool:
    """Standalone re-verification: every listed solution passes the
    definitional test and the count matches the claim."""
    prob = cert["problem"]
    space = ambient(int(prob["n"]), int(prob["q"]), prob["mode"])
    k = int(prob["k"])
    if len(cert["solutions"]) != cert["solution_count"]:
        return False
    index = space.space_index(k)
    for sol in cert["solutions"]:
        from .geometry import make_subspace
        idxs = [index[make_subspace(space.n, space.q, rows).rows]
                for rows in sol["members"]]
        if sorted(idxs) != sorted(sol["indices"]):
            return False
        l = kset_from_indices(space, k, idxs)
        ok, _ = is_cameron_liebler(l)
        if not ok or l.x != prob["x"]:
            return False
    return True


# ---------------------------------------------------------------------------
# hyperplane sets
# ---------------------------------------------------------------------------

def classify_hyperplane_cl(n: int, q: int, guard: int | None = None) -> dict:
    """Classification of Cameron-Liebler hyperplane sets.

    Two independent routes: (a) an exact structure proof (the kernel of
    the incidence matrix is spanned by parallel-class differences, so
    the Cameron-Liebler sets are exactly the per-class x-selections,
    C(q, x)^c of them for each x); (b) when 2^|X| is small enough, an
    exhaustive enumeration of all Boolean vectors in the row space,
    cross-checked against (a).
    """
    space = ambient(n, q, "affine")
    k = n - 1
    hyps = space.spaces(k)
    total = len(hyps)
    inc = incidence_for(space, k)
    rank = inc.rank()
    if rank != space.num_points:
        raise AssertionError("incidence matrix lost rank")
    _, pencil_members, per_space = space.infinity_pencils(k)
    classes = [list(map(int, m)) for m in pencil_members]
    n_classes = len(classes)
    # (a) the kernel is spanned by differences of parallel classes
    kern_dim = total - rank
    if kern_dim != n_classes - 1:
        raise AssertionError("kernel dimension does not match class count")
    base = np.zeros(total, dtype=np.int64)
    base[classes[0]] = 1
    diffs = []
    for cls in classes[1:]:
        v = base.copy()
        v[cls] -= 1
        diffs.append(v)
    diff_mat = np.array(diffs, dtype=np.int64)
    in_kernel = not exact.int_matmul(inc.matrix.astype(np.int64),
                                     diff_mat.T).any()
    if not in_kernel:
        raise AssertionError("class differences are not in the kernel")
    counts = {x: comb(q, x) ** n_classes for x in range(q + 1)}
    report = {
        "n": n, "q": q, "hyperplanes": total,
        "classes_at_infinity": n_classes,
        "structure_proof": {
            "incidence_rank": rank,
            "kernel_dim": kern_dim,
            "class_differences_span_kernel": bool(in_kernel),
        },
        "counts_per_x": {str(x): counts[x] for x in sorted(counts)},
        "total": sum(counts.values()),
        "exhaustive": None,
    }
    cap = guard if guard is not None else ENUM_CAP
    if 2**total <= cap:
        kern = inc.kernel_basis()
        found = {x: 0 for x in range(q + 1)}
        structure_ok = True
        g = gaussian_binomial(n, k, q)
        for bits in range(2**total):
            chi = np.array([(bits >> t) & 1 for t in range(total)],
                           dtype=np.int64)
            if kern.shape[0] and exact.int_matvec(kern, chi).any():
                continue
            weight = int(chi.sum())
            if weight % g:
                structure_ok = False
                continue
            x = weight // g
            found[x] = found.get(x, 0) + 1
            if any(int(chi[cls].sum()) != x for cls in classes):
                structure_ok = False
        report["exhaustive"] = {
            "counts_per_x": {str(x): found[x] for x in sorted(found)},
            "matches_structure_counts": all(
                found.get(x, 0) == counts[x] for x in counts),
            "every_solution_selects_x_per_class": structure_ok,
        }
    else:
        report["exhaustive"] = {"skipped":
                                f"2^{total} Boolean vectors exceed cap {cap}"}
    return report


def verify_hyperplane_spread_classification(n: int, q: int) -> dict:
    """Exhaustively find every (n-1)-spread of AG(n, q) by partition
    backtracking and confirm each is a parallel class (type II)."""
    space = ambient(n, q, "affine")
    k = n - 1
    pts = space.space_point_indices(k)
    point_sets = [frozenset(p) for p in pts]
    _, _, per_space = space.infinity_pencils(k)
    all_points = frozenset(range(space.num_points))
    spreads: list[tuple[int, ...]] = []

    def extend(chosen: list[int], covered: frozenset):
        # the member containing the least uncovered point is unique per
        # spread, so each spread is produced exactly once
        if covered == all_points:
            spreads.append(tuple(sorted(chosen)))
            return
        nxt = min(all_points - covered)
        for j in range(len(point_sets)):
            if nxt in point_sets[j] and not (point_sets[j] & covered):
                extend(chosen + [j], covered | point_sets[j])

    extend([], frozenset())
    unique = sorted(set(spreads))
    all_type_ii = all(len({int(per_space[j]) for j in s}) == 1 for s in unique)
    expected = (q**n - 1) // (q - 1)
    return {"n": n, "q": q, "spread_count": len(unique),
            "expected": expected,
            "count_matches": len(unique) == expected,
            "all_type_II": all_type_ii,
            "spreads": [list(s) for s in unique]}


# ---------------------------------------------------------------------------
# projection cross-check
# ---------------------------------------------------------------------------

def cross_check_projection(n: int, q: int, k: int, extra_ksets=None) -> dict:
    """Project every catalogued Cameron-Liebler k-set through each
    admissible (k-2)-space at infinity and confirm the image is a
    Cameron-Liebler line class of the same parameter."""
    if n < k + 2:
        raise ScaleExceeded("projection cross-check needs n >= k+2")
    space = ambient(n, q, "affine")
    catalog: list[tuple[str, KSet]] = []
    for p in space.points:
        catalog.append((f"pencil@{':'.join(map(str, p))}",
                        point_pencil(space, p, k)))
    catalog.append(("empty", kset_from_indices(space, k, [])))
    catalog.append(("complement_of_pencil",
                    complement(point_pencil(space, space.points[0], k))))
    if extra_ksets:
        catalog.extend(extra_ksets)
    i = k - 2
    axes = space.infinite_subspaces(i)
    results = []
    all_ok = True
    for name, l in catalog:
        ok, _ = is_cameron_liebler(l)
        if not ok:
            raise AssertionError(f"catalog set {name} is not Cameron-Liebler")
        for axis in axes:
            img = project_through_infinite_subspace(l, axis)
            img_ok, _ = is_cameron_liebler(img)
            same_x = img.x == l.x
            results.append({"set": name, "axis": axis.to_json(),
                            "image_is_cl": img_ok, "same_parameter": same_x})
            all_ok = all_ok and img_ok and same_x
    return {"n": n, "q": q, "k": k, "projections": len(results),
            "all_images_cl_with_same_x": all_ok,
            "details": results}
