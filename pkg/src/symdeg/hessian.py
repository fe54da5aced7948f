"""Hessian quadratic form of a homogeneous polynomial.

The form attached to f is the symmetric matrix of second partials; its
entries are homogeneous of degree d-2, so the rank at a projective point
does not depend on the chosen lift.  Generic ranks (over the ambient
space and over the hypersurface f = 0) are certified symbolically: a
randomized evaluation guesses the answer, then an explicit minor
certificate removes the randomness from the claim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InternalCheckError
from .linalg import inverse_rational, mat_vec, minor_dets, rank_rational
from .poly import MultiPoly, compose_linear, differentiate, divides, evaluate, homogeneous_degree

Point = Sequence[Fraction | int]

# Numerator range for seeded sample points.  Small integers keep the
# fraction-free elimination fast and are generic enough at this scale.
_SAMPLE_BOUND = 10_000
_DEFAULT_BUDGET = 8


@dataclass(frozen=True)
class HessianForm:
    """Symmetric matrix of second partials with degree bookkeeping."""

    f: MultiPoly
    hessian: tuple[tuple[MultiPoly, ...], ...]
    degree: int
    ambient_dim: int  # projective dimension N; the matrix is (N+1) x (N+1)

    @property
    def size(self) -> int:
        return self.ambient_dim + 1


def build_hessian(f: MultiPoly) -> HessianForm:
    """Second-partials matrix of a homogeneous f of degree >= 2."""
    d = homogeneous_degree(f)
    if d is None:
        if f.is_zero():
            raise ValueError("zero polynomial has no Hessian form")
        raise ValueError("not homogeneous")
    if d < 2:
        raise ValueError(f"degree {d} < 2: the Hessian form needs degree >= 2")
    n = f.num_vars
    gradient = [differentiate(f, i) for i in range(n)]
    rows: list[tuple[MultiPoly, ...]] = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(differentiate(gradient[i], j) if j >= i else rows[j][i])
        rows.append(tuple(row))
    return HessianForm(f=f, hessian=tuple(rows), degree=d, ambient_dim=n - 1)


def _check_point(h: HessianForm, p: Point) -> list[Fraction]:
    coords = [Fraction(c) for c in p]
    if len(coords) != h.size:
        raise ValueError(f"point has {len(coords)} coordinates, expected {h.size}")
    if all(c == 0 for c in coords):
        raise ValueError("zero point does not define a projective point")
    return coords


def evaluate_hessian(h: HessianForm, p: Point) -> list[list[Fraction]]:
    coords = _check_point(h, p)
    return [[evaluate(entry, coords) for entry in row] for row in h.hessian]


def rank_at(h: HessianForm, p: Point) -> int:
    """Rank of the form at a nonzero point (lift-independent)."""
    return rank_rational(evaluate_hessian(h, p))


# -- generic rank certificates -------------------------------------------------


@dataclass(frozen=True)
class RankCertificate:
    """A certified generic rank.

    ``witness_rows``/``witness_cols`` index a minor of size ``rank``
    that is a nonzero polynomial (ambient case) or not divisible by f
    (hypersurface case); the search already verified that every larger
    minor fails the same test, so the rank value needs no trust in the
    randomized guessing phase.
    """

    rank: int
    witness_rows: tuple[int, ...]
    witness_cols: tuple[int, ...]
    witness_minor: MultiPoly
    on_hypersurface: bool
    caveat: Optional[str] = None


def _sample_point(rng: random.Random, n: int) -> list[Fraction]:
    while True:
        coords = [Fraction(rng.randint(-_SAMPLE_BOUND, _SAMPLE_BOUND)) for _ in range(n)]
        if any(c != 0 for c in coords):
            return coords


def _guess_rank(h: HessianForm, seed: int, sample_budget: int) -> int:
    rng = random.Random(seed)
    guess = 0
    for _ in range(max(1, sample_budget)):
        point = _sample_point(rng, h.size)
        guess = max(guess, rank_rational(evaluate_hessian(h, point)))
        if guess == h.size:
            break
    return guess


def _first_minor(h: HessianForm, k: int, keep) -> Optional[tuple[tuple[int, ...], tuple[int, ...], MultiPoly]]:
    for rows, cols, det in minor_dets(h.hessian, k):
        if keep(det):
            return rows, cols, det
    return None


def ambient_rank_certificate(
    h: HessianForm, seed: int = 0, sample_budget: int = _DEFAULT_BUDGET
) -> RankCertificate:
    """Largest k with a k x k minor that is a nonzero polynomial.

    A rank seen at any sample point is a lower bound for the symbolic
    rank, so the guess can only undershoot and the certification loop
    only ever climbs.
    """
    k = _guess_rank(h, seed, sample_budget)
    witness = _first_minor(h, k, lambda det: not det.is_zero())
    if witness is None:
        raise InternalCheckError("evaluation rank has no matching symbolic minor")
    while k < h.size:
        bigger = _first_minor(h, k + 1, lambda det: not det.is_zero())
        if bigger is None:
            break
        k += 1
        witness = bigger
    rows, cols, det = witness
    return RankCertificate(
        rank=k,
        witness_rows=rows,
        witness_cols=cols,
        witness_minor=det,
        on_hypersurface=False,
    )


def _reduced_caveat(f: MultiPoly) -> Optional[str]:
    """Cheap non-reducedness screen: common monomial factor of f.

    Only the content monomial is inspected; a square factor that is not
    a monomial goes undetected.  Good enough to flag degenerate inputs
    like pure powers of a variable.
    """
    mins = None
    for exps in f.terms:
        mins = exps if mins is None else tuple(map(min, mins, exps))
    if mins is None:
        return None
    if any(e >= 2 for e in mins):
        return "f is divisible by the square of a variable: the hypersurface is not reduced"
    if any(e >= 1 for e in mins):
        return "f is divisible by a variable: the hypersurface is reducible"
    return None


def hypersurface_rank_certificate(
    h: HessianForm, seed: int = 0, sample_budget: int = _DEFAULT_BUDGET
) -> RankCertificate:
    """Largest k with a k x k minor not divisible by f.

    Searches downward from the certified ambient rank; every minor of
    every larger size has been checked divisible by the time a witness
    is returned.  Irreducibility of f is the caller's responsibility;
    a cheap screen flags obviously non-reduced input.
    """
    ambient = ambient_rank_certificate(h, seed=seed, sample_budget=sample_budget)
    caveat = _reduced_caveat(h.f)
    for k in range(ambient.rank, -1, -1):
        witness = _first_minor(
            h, k, lambda det: not det.is_zero() and divides(h.f, det) is None
        )
        if witness is not None:
            rows, cols, det = witness
            return RankCertificate(
                rank=k,
                witness_rows=rows,
                witness_cols=cols,
                witness_minor=det,
                on_hypersurface=True,
                caveat=caveat,
            )
    # k = 0 always ends the loop: the empty minor is 1 and deg f >= 2.
    raise InternalCheckError("divisibility search fell through the empty minor")


def generic_rank_ambient(
    h: HessianForm, seed: int = 0, sample_budget: int = _DEFAULT_BUDGET
) -> int:
    return ambient_rank_certificate(h, seed=seed, sample_budget=sample_budget).rank


def generic_rank_on_hypersurface(
    h: HessianForm, seed: int = 0, sample_budget: int = _DEFAULT_BUDGET
) -> int:
    return hypersurface_rank_certificate(h, seed=seed, sample_budget=sample_budget).rank


# -- stratification -------------------------------------------------------------


@dataclass(frozen=True)
class RankStratification:
    """Sample points bucketed by exact rank of the form."""

    buckets: dict[int, list[tuple[Fraction, ...]]] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "ranks": {
                str(rank): [[_coord_json(c) for c in point] for point in points]
                for rank, points in sorted(self.buckets.items())
            }
        }


def _coord_json(c: Fraction):
    return c.numerator if c.denominator == 1 else str(c)


def stratify(h: HessianForm, points: Sequence[Point]) -> RankStratification:
    buckets: dict[int, list[tuple[Fraction, ...]]] = {}
    for p in points:
        coords = _check_point(h, p)
        buckets.setdefault(rank_at(h, coords), []).append(tuple(coords))
    return RankStratification(buckets=buckets)


# -- equivariance ----------------------------------------------------------------


@dataclass(frozen=True)
class EquivarianceReport:
    """Per-sample results of the transformation identity check."""

    passes: tuple[bool, ...]

    @property
    def all_pass(self) -> bool:
        return all(self.passes)


def _form_value(
    matrix: Sequence[Sequence[Fraction]], v: Sequence[Fraction], w: Sequence[Fraction]
) -> Fraction:
    return sum(
        v[i] * matrix[i][j] * w[j] for i in range(len(matrix)) for j in range(len(matrix))
    )


def equivariance_check(
    h: HessianForm,
    g: Sequence[Sequence[Fraction | int]],
    c_of_g_inv: Fraction | int,
    samples: Sequence[tuple[Point, Point, Point]],
) -> EquivarianceReport:
    """Check the form transforms with the stated multiplier under g.

    Precondition, verified symbolically first: composing f with g must
    rescale f by exactly ``c_of_g_inv`` (f spans a weight line for g).
    Then each sample (x, v, w) checks, in exact arithmetic, that the
    form at g*x applied to (v, w) equals ``c_of_g_inv`` times the form
    at x applied to (g^{-1}v, g^{-1}w).  With the precondition verified
    this is an identity, so the report is a consistency tester: any
    failed sample means a bug, not new mathematics.
    """
    c = Fraction(c_of_g_inv)
    if len(g) != h.size or any(len(row) != h.size for row in g):
        raise ValueError(f"transformation must be {h.size}x{h.size}")
    g_rat = [[Fraction(x) for x in row] for row in g]
    g_inv = inverse_rational(g_rat)  # raises ValueError when singular
    if compose_linear(h.f, g_rat) != c * h.f:
        raise ValueError("f composed with g is not c_of_g_inv times f")
    passes = []
    for x, v, w in samples:
        x_c = [Fraction(t) for t in x]
        v_c = [Fraction(t) for t in v]
        w_c = [Fraction(t) for t in w]
        left = _form_value(evaluate_hessian(h, mat_vec(g_rat, x_c)), v_c, w_c)
        right = c * _form_value(
            evaluate_hessian(h, x_c), mat_vec(g_inv, v_c), mat_vec(g_inv, w_c)
        )
        passes.append(left == right)
    return EquivarianceReport(passes=tuple(passes))
