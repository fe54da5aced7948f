"""Acceptance gate: one test per shipped criterion, exact arithmetic throughout.

Each test states its criterion in full and enforces the stated runtime
budget where one applies.  Randomized inputs are seeded so every run
checks the identical instances.
"""

import itertools
import math
import random
import time
from fractions import Fraction

from symdeg import (
    FGAbelianGroup,
    MultiPoly,
    adapt_coordinates,
    block_decompose,
    build_hessian,
    differentiate,
    divides,
    dual_dimension,
    evaluate,
    generic_rank_on_hypersurface,
    homogeneous_degree,
    lh_projective_dim,
    lh_quadric_dim,
    main_bound,
    minor_dets,
    nonsurjectivity_certificate,
    parse_poly,
    phi_torsion_replay,
    quadric_betti,
    rank_at,
    rank_rational,
    rank_relation_check,
    replay_main_theorem,
    second_order_implicit,
    smith_normal_form,
    sym_stratum_dim,
    torsion_certificate,
    veronese_witness,
)
from symdeg.linalg import det_rational, mat_mul

W = ["w0", "w1", "w2", "w3"]
QUARTIC = "w0^2*w3^2 - 6*w0*w1*w2*w3 + 4*w0*w2^3 + 4*w1^3*w3 - 3*w1^2*w2^2"


# -- criterion 2 support: seeded surfaces through seeded smooth points -----------


def degree_monomials(n, d):
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(set(out))


def nullspace(rows, width):
    """Kernel basis of a small rational matrix, by Gaussian elimination."""
    work = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    free_cols = [c for c in range(width) if c not in pivots]
    for free in free_cols:
        vec = [Fraction(0)] * width
        vec[free] = Fraction(1)
        for row_idx, col in enumerate(pivots):
            vec[col] = -work[row_idx][free]
        basis.append(vec)
    return basis


def seeded_smooth_surfaces():
    """Five seeded hypersurfaces, each with four seeded smooth points on it.

    A form of the requested degree through four random integer points is
    found by solving the linear conditions on its coefficients exactly;
    draws are repeated until every point is a smooth point of the zero
    locus.
    """
    rng = random.Random(20260814)
    configs = [(4, 3), (4, 4), (5, 3), (5, 4), (4, 3)]
    surfaces = []
    for n, d in configs:
        while True:
            points = [
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
                for _ in range(4)
            ]
            if any(all(c == 0 for c in p) for p in points):
                continue
            if len(set(points)) < 4:
                continue
            monos = degree_monomials(n, d)
            rows = [
                [
                    math.prod(int(c) ** e for c, e in zip(p, exps))
                    for exps in monos
                ]
                for p in points
            ]
            kernel = nullspace(rows, len(monos))
            weights = [rng.randint(-2, 2) for _ in kernel]
            coeff_vec = [
                sum(w * vec[j] for w, vec in zip(weights, kernel))
                for j in range(len(monos))
            ]
            terms = {
                exps: coeff for exps, coeff in zip(monos, coeff_vec) if coeff != 0
            }
            f = MultiPoly(n, terms)
            if f.is_zero() or homogeneous_degree(f) != d:
                continue
            smooth = all(
                any(
                    evaluate(differentiate(f, i), list(p)) != 0 for i in range(n)
                )
                for p in points
            )
            if not smooth:
                continue
            surfaces.append((f, points))
            break
    return surfaces


# -- criteria ---------------------------------------------------------------------


def test_criterion_1_worked_quartic_example():
    # the pinned quartic: pointwise ranks, generic rank on the
    # hypersurface, dual dimension, and divisibility of the determinant
    start = time.perf_counter()
    f = parse_poly(QUARTIC, W)
    h = build_hessian(f)
    assert rank_at(h, [1, 0, 0, 0]) == 1
    assert rank_at(h, [0, 0, 0, 1]) == 1
    assert rank_at(h, [0, 1, 0, 0]) == 3
    assert rank_at(h, [0, 0, 1, 0]) == 3
    assert generic_rank_on_hypersurface(h) == 3
    assert dual_dimension(f) == 1
    ((rows, cols, det),) = minor_dets([list(r) for r in h.hessian], 4)
    assert rows == (0, 1, 2, 3) and cols == (0, 1, 2, 3)
    quotient = divides(f, det)
    assert quotient is not None
    assert quotient * f == det
    assert time.perf_counter() - start < 5.0


def test_criterion_2_rank_relation_on_seeded_points():
    # rank Q_p = rank(middle block) + 2 at 20 seeded smooth points across
    # 5 seeded cubics/quartics in 4 or 5 variables, with the implicit
    # quadric equal to -A/2 exactly at each point
    start = time.perf_counter()
    checked = 0
    for f, points in seeded_smooth_surfaces():
        for p in points:
            report = rank_relation_check(f, p)
            assert report.holds, (f.format(), p)
            af = adapt_coordinates(f, p)
            block = block_decompose(af)
            q = second_order_implicit(af)
            n_mid = af.num_vars - 2
            for i in range(n_mid):
                for j in range(n_mid):
                    assert q[i][j] == -Fraction(block.a[i][j], 2)
            checked += 1
    assert checked == 20
    assert time.perf_counter() - start < 30.0


def test_criterion_3_quadric_betti_tables():
    # fiber tables for 3 <= r <= 12: total rank 2n, a rank-2 middle entry
    # exactly in the even case at i = n-1, and Poincare symmetry
    for r in range(3, 13):
        n = r // 2
        dim = r - 2
        table = [quadric_betti(r, i) for i in range(dim + 1)]
        assert sum(table) == 2 * n
        for i, value in enumerate(table):
            if r % 2 == 0 and i == n - 1:
                assert value == 2
            else:
                assert value == 1
        assert table == table[::-1]


def test_criterion_4_betti_sum_identities():
    # dimension counts match the truncated Betti sums term for term on
    # 100 randomized Betti vectors for every half-rank n up to 5
    rng = random.Random(4)
    for _ in range(100):
        d = rng.randint(0, 5)
        betti = [rng.randint(0, 9) for _ in range(2 * d + 1)]
        betti[2 * d] = max(1, betti[2 * d])

        def b(i):
            return betti[i] if 0 <= i < len(betti) else 0

        for n in range(1, 6):
            quad = lh_quadric_dim(betti, 2 * n, 2 * d + 2 * n - 2)
            expected = 2 * b(2 * d) + sum(b(2 * d - 2 * j) for j in range(1, n))
            assert quad == expected
            proj = lh_projective_dim(betti, 2 * n - 1, 2 * d + 2 * n)
            assert proj == sum(b(2 * d - 2 * j) for j in range(n))


def test_criterion_5_nonsurjectivity_gap():
    # the target always exceeds the source by exactly the top Betti
    # number, for every even rank up to 12 and randomized Betti vectors
    rng = random.Random(5)
    for _ in range(100):
        d = rng.randint(0, 5)
        betti = [rng.randint(0, 9) for _ in range(2 * d + 1)]
        betti[2 * d] = max(1, betti[2 * d])
        for r in range(4, 13, 2):
            cert = nonsurjectivity_certificate(betti, r, d)
            assert cert.dim_target - cert.dim_source == betti[2 * d]
            assert cert.dim_target - cert.dim_source >= 1
            assert cert.surjection_impossible


def test_criterion_6_torsion_replay():
    # the slot construction always lands on 4a, on 1000 randomized
    # inputs, and the certificate quotient is the order-2 group
    rng = random.Random(6)
    for _ in range(1000):
        n = rng.randint(1, 4)
        width = rng.randint(1, 4)
        a = [[rng.randint(-99, 99) for _ in range(width)] for _ in range(2 * n)]
        report = phi_torsion_replay(a, n)
        assert report.check
        for q in range(2 * n):
            assert list(report.image[q]) == [4 * x for x in a[q]]
    for r, d, betti in ((3, 0, [1]), (5, 1, [1, 0, 1]), (7, 2, [1, 0, 2, 0, 1])):
        cert = torsion_certificate(betti, r, d)
        assert cert.quotient == FGAbelianGroup(0, (2,))
        assert cert.element_order == 2


def test_criterion_7_bound_replay_exhaustive():
    # replayed verdict vs the closed-form inequality d <= N - r, for all
    # 1 <= r <= N <= 12 and 0 <= d <= 12, with the default Betti vector
    start = time.perf_counter()
    for big_n in range(1, 13):
        for r in range(1, big_n + 1):
            for d in range(0, 13):
                betti = [0] * (2 * d) + [1]
                report = replay_main_theorem(big_n, r, d, betti)
                assert report.consistent == (d <= big_n - r), (big_n, r, d)
    assert time.perf_counter() - start < 1.0


def test_criterion_8_stratum_dimensions_and_witness():
    # first differences reproduce the codimension N - r + 1 for all
    # 2 <= r <= N <= 30; the rank-one family stays rank one on 100
    # seeded samples and its dimension meets the bound at r = 1
    for big_n in range(2, 31):
        for r in range(2, big_n + 1):
            drop = sym_stratum_dim(big_n, r) - sym_stratum_dim(big_n, r - 1)
            assert drop == big_n - r + 1
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 10)
        v = [rng.randint(-9, 9) for _ in range(n)]
        if all(x == 0 for x in v):
            v[0] = 1
        assert rank_rational(veronese_witness(v)) == 1
        assert n - 1 == main_bound(n, 1)


def test_criterion_9_linear_algebra_oracles():
    # rank agrees with naive rational Gaussian elimination on 500 seeded
    # matrices, and the Smith form re-verifies U*m*V = D with unimodular
    # factors and a divisibility chain on 500 seeded matrices
    def oracle_rank(m):
        work = [[Fraction(x) for x in row] for row in m]
        rank = 0
        for col in range(len(work[0])):
            pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            for i in range(rank + 1, len(work)):
                factor = work[i][col] / work[rank][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
            rank += 1
        return rank

    rng = random.Random(9)
    for _ in range(500):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        assert rank_rational(m) == oracle_rank(m)

    rng = random.Random(99)
    for _ in range(500):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        u, d, v = smith_normal_form(m)
        assert abs(det_rational(u)) == 1
        assert abs(det_rational(v)) == 1
        assert mat_mul(mat_mul(u, m), v) == d
        diag = [d[i][i] for i in range(min(rows, cols))]
        assert all(x >= 0 for x in diag)
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0 if a != 0 else b == 0
