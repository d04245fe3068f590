import random

import pytest

from clag.geometry import ambient, apply_matrix, infinite_part, make_subspace
from clag.spreads import (AllEqual, BadChoices, DivisibilityViolated,
                          NotAtInfinity, Spread, WrongType,
                          all_type_II_spreads, all_type_III_spreads,
                          extend_spread_from_subspace, is_plus, is_spread,
                          lift_spread_through_infinity,
                          random_affine_collineation, restrict_to_affine,
                          spread_type_I, spread_type_II, spread_type_III,
                          subspace_contains, switching_pair_from_spreads,
                          transport_type_III, verify_switching_pair)


def test_type_I_field_reduction():
    s = spread_type_I(3, 2, 1)
    assert len(s) == 5 and s.type_tag == "I"
    ok, reason = is_spread(s.members, s.space, 1)
    assert ok, reason
    assert len(spread_type_I(5, 2, 1)) == 21
    assert len(spread_type_I(3, 3, 1)) == 10
    assert len(spread_type_I(3, 4, 1)) == 17  # GF(16) over GF(4)


def test_type_I_plane_spread():
    # k = 2 field reduction: 9 planes partition PG(5,2)
    s = spread_type_I(5, 2, 2)
    assert len(s) == 9
    ok, reason = is_spread(s.members, s.space, 2)
    assert ok, reason
    aff = restrict_to_affine(s)
    assert len(aff) == 8  # q^(n-k)


def test_type_I_divisibility():
    with pytest.raises(DivisibilityViolated):
        spread_type_I(4, 2, 1)


def test_type_I_restriction():
    s = restrict_to_affine(spread_type_I(3, 2, 1))
    assert len(s) == 4  # q^(n-k)
    ok, _ = is_spread(s.members, s.space, 1)
    assert ok
    assert len(restrict_to_affine(spread_type_I(5, 2, 1))) == 16


def test_type_II():
    space = ambient(3, 2, "affine")
    axis = space.infinite_subspaces(0)[0]
    s = spread_type_II(space, axis)
    assert len(s) == 4 and s.type_tag == "II"
    assert all(infinite_part(m) == axis for m in s.members)
    assert len(spread_type_II(ambient(4, 3, "affine"),
                              ambient(4, 3, "affine").infinite_subspaces(0)[0])) == 27


def test_type_II_errors():
    space = ambient(3, 2, "affine")
    affine_point = make_subspace(3, 2, [[1, 0, 0, 0]])
    with pytest.raises(NotAtInfinity):
        spread_type_II(space, affine_point)


def test_type_II_pencils_partition_lines():
    space = ambient(3, 2, "affine")
    seen = set()
    for s in all_type_II_spreads(space, 1):
        for idx in s.member_indices():
            assert idx not in seen
            seen.add(idx)
    assert len(seen) == 28


def test_type_III_construction_and_plus():
    space = ambient(3, 2, "affine")
    pi = space.infinite_subspaces(1)[0]
    taus = [t for t in space.infinite_subspaces(0) if subspace_contains(pi, t)]
    s = spread_type_III(space, pi, [taus[0], taus[1]])
    assert len(s) == 4 and s.type_tag == "III+"
    assert is_plus(s)
    ok, _ = is_spread(s.members, space, 1)
    assert ok
    # a type III spread is not a parallel class
    assert len({infinite_part(m).rows for m in s.members}) > 1


def test_type_III_all_equal_rejected():
    space = ambient(3, 2, "affine")
    pi = space.infinite_subspaces(1)[0]
    tau = next(t for t in space.infinite_subspaces(0) if subspace_contains(pi, t))
    with pytest.raises(AllEqual):
        spread_type_III(space, pi, [tau, tau])


def test_type_III_bad_choices():
    space = ambient(3, 2, "affine")
    pi = space.infinite_subspaces(1)[0]
    outside = next(t for t in space.infinite_subspaces(0)
                   if not subspace_contains(pi, t))
    inside = next(t for t in space.infinite_subspaces(0)
                  if subspace_contains(pi, t))
    with pytest.raises(BadChoices):
        spread_type_III(space, pi, [outside, inside])


def test_type_III_not_plus_for_larger_q():
    space = ambient(3, 3, "affine")
    pi = space.infinite_subspaces(1)[0]
    taus = [t for t in space.infinite_subspaces(0) if subspace_contains(pi, t)]
    repeated = spread_type_III(space, pi, [taus[0], taus[0], taus[1]])
    assert repeated.type_tag == "III" and not is_plus(repeated)
    distinct = spread_type_III(space, pi, [taus[0], taus[1], taus[2]])
    assert distinct.type_tag == "III+" and is_plus(distinct)


def test_is_plus_wrong_type():
    space = ambient(3, 2, "affine")
    s = all_type_II_spreads(space, 1)[0]
    with pytest.raises(WrongType):
        is_plus(s)


def test_all_type_III_counts():
    space = ambient(3, 2, "affine")
    # 7 infinite lines, each with 3 points: 3^2 - 3 choice vectors
    assert len(all_type_III_spreads(space, 1)) == 42
    assert len(all_type_III_spreads(space, 1, plus_only=True)) == 42


def test_spread_counts_and_sizes():
    for s in all_type_III_spreads(ambient(3, 3, "affine"), 1, plus_only=True)[:5]:
        assert len(s) == 9
        ok, _ = is_spread(s.members, s.space, 1)
        assert ok


def test_switching_pair_from_permuted_spread():
    s1 = spread_type_I(3, 2, 1)
    perm = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    members = tuple(sorted((apply_matrix(m, perm) for m in s1.members),
                           key=lambda s: s.key()))
    s2 = Spread(s1.space, 1, members, "I", {})
    pair = switching_pair_from_spreads(s1, s2)
    ok, reason = verify_switching_pair(pair)
    assert ok, reason
    assert len(pair.r1) == len(pair.r2) > 0


def test_degenerate_switching_pair():
    s1 = spread_type_I(3, 2, 1)
    pair = switching_pair_from_spreads(s1, s1)
    ok, _ = verify_switching_pair(pair)
    assert ok and len(pair.r1) == 0 == len(pair.r2)


def test_switching_pair_restricts_to_affine():
    # conjugated switching sets keep the property after dropping the
    # members at infinity
    s1 = spread_type_I(3, 2, 1)
    perm = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    members = tuple(sorted((apply_matrix(m, perm) for m in s1.members),
                           key=lambda s: s.key()))
    s2 = Spread(s1.space, 1, members, "I", {})
    pair = switching_pair_from_spreads(s1, s2)
    ok, _ = verify_switching_pair(pair)
    assert ok
    from clag.spreads import SwitchingPair
    aff = ambient(3, 2, "affine")
    r1 = tuple(m for m in pair.r1 if m.is_affine())
    r2 = tuple(m for m in pair.r2 if m.is_affine())
    ok, reason = verify_switching_pair(SwitchingPair(aff, 1, r1, r2))
    assert ok, reason


def test_type_III_transport_under_affine_maps():
    space = ambient(3, 2, "affine")
    pi = space.infinite_subspaces(1)[0]
    taus = [t for t in space.infinite_subspaces(0) if subspace_contains(pi, t)]
    s = spread_type_III(space, pi, [taus[0], taus[1]])
    rng = random.Random(41)
    for _ in range(8):
        mat = random_affine_collineation(space, rng)
        img = transport_type_III(s, mat)
        assert img.type_tag == "III+"
        ok, _ = is_spread(img.members, space, 1)
        assert ok


def test_extend_spread_from_subspace():
    space = ambient(4, 2, "affine")
    hyp = space.spaces(3)[0]
    inf_pts = [p for p in space.infinite_subspaces(0)
               if subspace_contains(hyp, p)]
    sub_members = [m for m in spread_type_II(space, inf_pts[1]).members
                   if subspace_contains(hyp, m)]
    assert len(sub_members) == 4
    ext = extend_spread_from_subspace(sub_members, hyp, inf_pts[0], space)
    assert len(ext) == 8
    ok, _ = is_spread(ext.members, space, 1)
    assert ok


def test_lift_spread_through_infinity():
    # a line spread of a solid lifted through an infinite point gives a
    # plane spread of AG(4,2)
    space = ambient(4, 2, "affine")
    solid = space.spaces(3)[0]
    inf_in = next(p for p in space.infinite_subspaces(0)
                  if subspace_contains(solid, p))
    local = [m for m in spread_type_II(space, inf_in).members
             if subspace_contains(solid, m)]
    axis = next(p for p in space.infinite_subspaces(0)
                if not subspace_contains(solid, p))
    lifted = lift_spread_through_infinity(local, axis, space)
    assert lifted.k == 2 and len(lifted) == 4


def test_lift_degenerate_is_type_II_pencil():
    # i = 0, n = 3, k = 1: the 0-spread of a complementary plane lifted
    # through an infinite point is exactly the type II pencil there
    space = ambient(3, 2, "affine")
    plane = space.spaces(2)[0]
    pts = [make_subspace(3, 2, [list(p)]) for p in space.points_of(plane)]
    axis = next(p for p in space.infinite_subspaces(0)
                if not subspace_contains(plane, p))
    lifted = lift_spread_through_infinity(pts, axis, space)
    assert lifted.k == 1 and len(lifted) == 4
    pencil = spread_type_II(space, axis)
    assert {m.rows for m in lifted.members} == {m.rows for m in pencil.members}


def test_type_I_spread_json():
    s = spread_type_I(3, 2, 1)
    doc = s.to_json()
    assert doc["type"] == "I" and len(doc["members"]) == 5
