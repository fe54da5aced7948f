"""Fiber tables, Leray-Hirsch dimension counts, Gysin certificates."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdeg import (
    FGAbelianGroup,
    lh_projective_dim,
    lh_quadric_dim,
    nonsurjectivity_certificate,
    phi_torsion_replay,
    quadric_betti,
    quadric_fiber_data,
    fiber_gysin_index,
    torsion_certificate,
)

betti_vectors = st.lists(st.integers(0, 5), min_size=1, max_size=11).map(
    lambda b: b[:-1] + [max(b[-1], 1)]
)


# -- fiber Betti table -----------------------------------------------------------


def test_quadric_betti_pinned_values():
    assert quadric_betti(6, 2) == 2
    assert quadric_betti(5, 1) == 1
    assert quadric_betti(2, 0) == 2


def test_quadric_betti_out_of_range_is_zero():
    assert quadric_betti(6, -1) == 0
    assert quadric_betti(6, 5) == 0
    assert quadric_betti(5, 4) == 0


def test_quadric_betti_rejects_degenerate_rank():
    with pytest.raises(ValueError):
        quadric_betti(1, 0)


def oracle_table(r, i):
    """Table transcribed slot by slot, no arithmetic shared with the code."""
    dim = r - 2
    if i < 0 or i > dim:
        return 0
    if r % 2 == 1:
        return 1
    return 2 if i == r // 2 - 1 else 1


@settings(deadline=None)
@given(st.integers(2, 14), st.integers(-2, 14))
def test_quadric_betti_matches_transcribed_table(r, i):
    assert quadric_betti(r, i) == oracle_table(r, i)


@settings(deadline=None)
@given(st.integers(2, 14))
def test_fiber_total_rank_is_two_n(r):
    n = r // 2
    assert sum(quadric_betti(r, i) for i in range(r - 1)) == 2 * n


@settings(deadline=None)
@given(st.integers(2, 14))
def test_fiber_table_poincare_symmetry(r):
    for i in range(r - 1):
        assert quadric_betti(r, i) == quadric_betti(r, (r - 2) - i)


# -- labeled bases ------------------------------------------------------------------


def test_fiber_data_even_case():
    fd = quadric_fiber_data(6)
    assert fd.parity == "even" and fd.n == 3 and fd.dim == 4
    assert fd.relations == ("h^2 = e + f", "h*e = h*f")
    flat = [label for labels in fd.basis_labels for label in labels]
    assert sorted(flat) == sorted(["1", "h", "h^2", "e", "h*e", "h^2*e"])
    assert len(flat) == 2 * fd.n


def test_fiber_data_odd_case():
    fd = quadric_fiber_data(5)
    assert fd.parity == "odd" and fd.n == 2 and fd.dim == 3
    assert fd.relations == ("h^2 = 2*e",)
    flat = [label for labels in fd.basis_labels for label in labels]
    assert sorted(flat) == sorted(["1", "h", "e", "h*e"])


@settings(deadline=None)
@given(st.integers(2, 12))
def test_fiber_data_label_counts_match_table(r):
    fd = quadric_fiber_data(r)
    for i, labels in enumerate(fd.basis_labels):
        assert len(labels) == quadric_betti(r, i)


# -- fiber Gysin index ----------------------------------------------------------------


def test_gysin_odd_five():
    record = fiber_gysin_index(5)
    assert record.relation == "h^2 = 2*e"
    assert record.image_index == 2


def test_gysin_odd_three():
    record = fiber_gysin_index(3)
    assert record.relation == "h = 2*e"
    assert record.image_index == 2


def test_gysin_even_six():
    record = fiber_gysin_index(6)
    assert record.source_rank == 1 and record.target_rank == 2
    assert record.relation is None


def test_gysin_needs_rank_three():
    with pytest.raises(ValueError):
        fiber_gysin_index(2)


# -- Leray-Hirsch dimension counts -------------------------------------------------------


def test_lh_quadric_point_base():
    # X a point: reduces to the fiber table
    assert lh_quadric_dim([1], 6, 4) == 2


def test_lh_quadric_p2_base():
    betti_p2 = [1, 0, 1, 0, 1]
    assert lh_quadric_dim(betti_p2, 4, 6) == 3


def test_lh_quadric_vanishes_above_top():
    betti_p2 = [1, 0, 1, 0, 1]
    assert lh_quadric_dim(betti_p2, 4, 4 + 2 * 2 + 1) == 0
    assert lh_quadric_dim(betti_p2, 4, 100) == 0


def test_lh_quadric_rejects_negative_degree():
    with pytest.raises(ValueError):
        lh_quadric_dim([1], 4, -2)


@settings(deadline=None)
@given(st.integers(2, 12), st.integers(0, 20))
def test_lh_quadric_point_base_is_fiber_table(r, k):
    expected = quadric_betti(r, k // 2) if k % 2 == 0 else 0
    assert lh_quadric_dim([1], r, k) == expected


def test_lh_projective_pinned():
    betti_p2 = [1, 0, 1, 0, 1]
    assert lh_projective_dim(betti_p2, 3, 8) == 2
    assert lh_projective_dim([1], 3, 4) == 1


def test_lh_projective_odd_degrees_vanish_over_even_base():
    betti_p2 = [1, 0, 1, 0, 1]
    assert lh_projective_dim(betti_p2, 3, 5) == 0


@settings(deadline=None)
@given(betti_vectors, st.integers(1, 5))
def test_lh_counts_reproduce_truncated_sums(betti, n):
    # quadric count in degree 2d+2n-2 is 2*b[2d] + b[2d-2] + ... + b[2d-2n+2];
    # projective count in degree 2d+2n over fiber dim 2n-1 is b[2d] + ... + b[2d-2n+2]
    two_d = len(betti) - 1
    if two_d % 2 != 0:
        betti = betti + [1]
        two_d += 1
    d = two_d // 2

    def b(i):
        return betti[i] if 0 <= i < len(betti) else 0

    quad = lh_quadric_dim(betti, 2 * n, 2 * d + 2 * n - 2)
    tail = sum(b(2 * d - 2 * j) for j in range(1, n))
    assert quad == 2 * b(2 * d) + tail

    proj = lh_projective_dim(betti, 2 * n - 1, 2 * d + 2 * n)
    assert proj == sum(b(2 * d - 2 * j) for j in range(n))


# -- nonsurjectivity (even rank) -----------------------------------------------------------


def test_nonsurjectivity_p2():
    betti_p2 = [1, 0, 1, 0, 1]
    cert = nonsurjectivity_certificate(betti_p2, 4, 2)
    assert cert.dim_source == 2
    assert cert.dim_target == 3
    assert cert.surjection_impossible


def test_nonsurjectivity_point_base():
    cert = nonsurjectivity_certificate([1], 4, 0)
    assert (cert.dim_source, cert.dim_target) == (1, 2)
    assert cert.surjection_impossible


def test_nonsurjectivity_sparse_betti():
    betti = [0, 0, 0, 0, 1]
    for r in (4, 6, 8):
        cert = nonsurjectivity_certificate(betti, r, 2)
        assert (cert.dim_source, cert.dim_target) == (1, 2)
        assert cert.surjection_impossible


def test_nonsurjectivity_rejects_odd_rank():
    with pytest.raises(ValueError, match="odd"):
        nonsurjectivity_certificate([1], 5, 0)


@settings(deadline=None)
@given(betti_vectors, st.integers(2, 5))
def test_nonsurjectivity_gap_is_top_betti(betti, n):
    if (len(betti) - 1) % 2 != 0:
        betti = betti + [1]
    d = (len(betti) - 1) // 2
    cert = nonsurjectivity_certificate(betti, 2 * n, d)
    assert cert.dim_target - cert.dim_source == betti[2 * d]
    assert cert.surjection_impossible


# -- torsion replay in fiber coordinates --------------------------------------------------


def test_phi_replay_unit_vector():
    report = phi_torsion_replay([[1], [0]], 1)
    assert report.b == ((1,), (0,))
    assert report.image == ((4,), (0,))
    assert report.check


def test_phi_replay_zero():
    report = phi_torsion_replay([[0, 0], [0, 0]], 1)
    assert report.check
    assert all(all(x == 0 for x in row) for row in report.image)


def test_phi_replay_all_ones_n2():
    report = phi_torsion_replay([[1], [1], [1], [1]], 2)
    assert report.b == ((1,), (1,), (2,), (2,))
    assert report.image == ((4,), (4,), (4,), (4,))
    assert report.check
    assert "image" in report.conclusion


def test_phi_replay_dimension_mismatch():
    with pytest.raises(ValueError):
        phi_torsion_replay([[1], [0], [0]], 2)


@settings(deadline=None)
@given(st.integers(1, 4), st.data())
def test_phi_replay_always_checks(n, data):
    width = data.draw(st.integers(1, 3))
    a = [
        [data.draw(st.integers(-9, 9)) for _ in range(width)] for _ in range(2 * n)
    ]
    report = phi_torsion_replay(a, n)
    assert report.check
    for q in range(2 * n):
        factor = 1 if q < n else 2
        assert list(report.b[q]) == [factor * x for x in a[q]]
        assert list(report.image[q]) == [4 * x for x in a[q]]


# -- torsion certificate (odd rank) ----------------------------------------------------------


def test_torsion_point_base():
    cert = torsion_certificate([1], 3, 0)
    assert cert.bottom_matrix == ((2,),)
    assert cert.quotient == FGAbelianGroup(0, (2,))
    assert cert.element_order == 2
    assert cert.vertical_surjective


def test_torsion_p1_base():
    cert = torsion_certificate([1, 0, 1], 5, 1)
    assert cert.quotient == FGAbelianGroup(0, (2,))
    assert cert.snf_diagonal == (2,)
    assert cert.relation == "h^2 = 2*e"
    assert cert.vertical_surjective


def test_torsion_rejects_even_rank():
    with pytest.raises(ValueError, match="even"):
        torsion_certificate([1], 4, 0)


def test_torsion_smallest_odd_rank():
    # r = 1 means an empty fiber table; the bottom map model still applies
    cert = torsion_certificate([1], 1, 0)
    assert cert.quotient == FGAbelianGroup(0, (2,))
    assert cert.relation is None


def test_torsion_json_round_trip():
    import json

    cert = torsion_certificate([1, 0, 1], 5, 1)
    payload = cert.to_json_dict()
    assert json.loads(json.dumps(payload)) == payload
    assert payload["quotient"] == {"free_rank": 0, "torsion": [2]}
