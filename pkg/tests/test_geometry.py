import random

import pytest

from clag.galois import field_for_order
from clag.geometry import (AmbientMismatch, DimensionOutOfRange,
                           ambient, apply_matrix, count_rref_matrices,
                           gaussian_binomial, infinite_part, is_affine,
                           make_subspace, meet, span, subspace_from_json)


def test_gaussian_binomial_values():
    assert gaussian_binomial(3, 1, 2) == 7    # points of PG(2,2)
    assert gaussian_binomial(4, 2, 2) == 35   # lines of PG(3,2)
    assert gaussian_binomial(4, 2, 3) == 130  # lines of PG(3,3)
    assert gaussian_binomial(2, 3, 5) == 0    # b > a
    assert gaussian_binomial(5, 0, 7) == 1


def test_gaussian_binomial_matches_pivot_pattern_count():
    # independent oracle: sum of q^(free cells) over echelon pivot patterns
    for a in range(6):
        for b in range(a + 1):
            for q in (2, 3, 4, 5):
                assert count_rref_matrices(a, b, q) == gaussian_binomial(a, b, q)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_enumeration_counts(n, q):
    pg = ambient(n, q, "projective")
    ag = ambient(n, q, "affine")
    assert len(pg.points) == (q ** (n + 1) - 1) // (q - 1)
    assert len(ag.points) == q**n
    for k in range(n + 1):
        expected = gaussian_binomial(n + 1, k + 1, q)
        if expected > 25000:
            continue
        spaces = pg.spaces(k)
        assert len(spaces) == expected
        assert len({s.rows for s in spaces}) == expected
        affine = ag.spaces(k)
        assert len(affine) == q ** (n - k) * gaussian_binomial(n, k, q)


def test_specific_counts():
    assert len(ambient(3, 2, "projective").spaces(1)) == 35
    assert len(ambient(3, 2, "affine").spaces(1)) == 28
    assert len(ambient(3, 2, "affine").spaces(2)) == 14
    assert len(ambient(3, 3, "affine").spaces(1)) == 117
    assert len(ambient(4, 2, "affine").spaces(1)) == 120


def test_affine_spaces_through_infinite_axis():
    # the members of one pencil at infinity number exactly q^(n-k)
    for n, q, k in [(3, 2, 1), (3, 3, 1), (4, 2, 2), (3, 2, 2)]:
        space = ambient(n, q, "affine")
        _, members, _ = space.infinity_pencils(k)
        assert all(len(m) == q ** (n - k) for m in members)
        assert len(members) == gaussian_binomial(n, k, q)


def test_rref_canonicalization_invariance():
    rng = random.Random(23)
    space = ambient(3, 3, "projective")
    field = field_for_order(3)
    lines = space.spaces(1)
    for _ in range(50):
        sub = rng.choice(lines)
        rows = [list(r) for r in sub.rows]
        # random invertible coefficient mix of the basis
        a, b, c, d = rng.randrange(3), rng.randrange(3), rng.randrange(3), rng.randrange(3)
        if (a * d - b * c) % 3 == 0:
            continue
        mixed = [
            [field.add(field.mul(a, u), field.mul(b, v)) for u, v in zip(*rows)],
            [field.add(field.mul(c, u), field.mul(d, v)) for u, v in zip(*rows)],
        ]
        assert make_subspace(3, 3, mixed).rows == sub.rows


def test_span_meet_grassmann():
    rng = random.Random(7)
    space = ambient(3, 2, "projective")
    lines = space.spaces(1)
    for _ in range(60):
        a, b = rng.choice(lines), rng.choice(lines)
        s = span(a, b)
        m = meet(a, b)
        meet_dim = m.dim if m is not None else -1
        assert s.dim + meet_dim == a.dim + b.dim


def test_meet_idempotent_and_two_point_span():
    space = ambient(3, 2, "projective")
    line = space.spaces(1)[0]
    assert meet(line, line) == line
    p1 = make_subspace(3, 2, [[1, 0, 0, 0]])
    p2 = make_subspace(3, 2, [[1, 1, 1, 0]])
    joined = span(p1, p2)
    assert joined.dim == 1
    assert joined.contains_point((1, 0, 0, 0)) and joined.contains_point((1, 1, 1, 0))


def test_disjoint_lines_span_whole_space():
    space = ambient(3, 2, "projective")
    lines = space.spaces(1)
    a = lines[0]
    b = next(l for l in lines if meet(a, l) is None)
    assert span(a, b).dim == 3


def test_ambient_mismatch():
    a = ambient(3, 2, "projective").spaces(1)[0]
    b = ambient(3, 3, "projective").spaces(1)[0]
    with pytest.raises(AmbientMismatch):
        span(a, b)


def test_infinite_part():
    ag = ambient(3, 2, "affine")
    line = ag.spaces(1)[0]
    part = infinite_part(line)
    assert part.dim == 0 and not part.is_affine()
    plane = ag.spaces(2)[0]
    assert infinite_part(plane).dim == 1
    inf_line = next(s for s in ambient(3, 2, "projective").spaces(1)
                    if not s.is_affine())
    assert not is_affine(inf_line)
    assert infinite_part(inf_line) == inf_line


def test_affine_spaces_are_projective_prefix():
    # the affine enumeration is the leading block of the projective one,
    # which is what makes zero-padded embedding an index identity
    for k in (1, 2):
        aff = [s.rows for s in ambient(3, 2, "affine").spaces(k)]
        proj = [s.rows for s in ambient(3, 2, "projective").spaces(k)]
        assert proj[:len(aff)] == aff


def test_point_ordering_affine_first():
    pg = ambient(3, 2, "projective")
    pts = pg.points
    assert all(p[0] == 1 for p in pts[:8])
    assert all(p[0] == 0 for p in pts[8:])
    # infinite block ordered like the canonical points one dimension down
    tails = [p[1:] for p in pts[8:]]
    assert tails == list(ambient(2, 2, "projective").points)


def test_enumeration_order_is_deterministic():
    from clag.geometry import AmbientSpace
    a = [s.rows for s in ambient(3, 2, "affine").spaces(1)]
    b = [s.rows for s in AmbientSpace(3, 2, "affine").spaces(1)]
    assert a == b


def test_dimension_errors():
    with pytest.raises(DimensionOutOfRange):
        ambient(3, 2, "projective").spaces(5)
    with pytest.raises(DimensionOutOfRange):
        ambient(3, 2, "affine").spaces(-1)


def test_apply_matrix_preserves_incidence():
    space = ambient(3, 2, "projective")
    line = space.spaces(1)[3]
    perm = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    img = apply_matrix(line, perm)
    mapped = {apply_matrix(make_subspace(3, 2, [list(p)]), perm).rows[0]
              for p in space.points_of(line)}
    assert {tuple(p) for p in space.points_of(img)} == mapped


def test_subspace_serialization_round_trip():
    sub = ambient(3, 2, "affine").spaces(1)[5]
    doc = sub.to_json()
    assert subspace_from_json(3, 2, doc) == sub
    # non-echelon input is rejected
    with pytest.raises(ValueError):
        subspace_from_json(3, 2, [[0, 0, 0, 1], [1, 0, 0, 1]])


def test_points_of_affine_subspace():
    ag = ambient(3, 2, "affine")
    plane = ag.spaces(2)[0]
    pts = ag.points_of(plane)
    assert len(pts) == 4  # q^k affine points
    assert all(p[0] == 1 for p in pts)
    pg = ambient(3, 2, "projective")
    assert len(pg.points_of(plane)) == 7  # all projective points
