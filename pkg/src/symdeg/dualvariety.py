"""Dual-variety dimension and the rank relation at smooth points.

For a hypersurface f = 0 the generic Hessian rank on the hypersurface
exceeds the dual-variety dimension by exactly 2.  The pointwise version
is replayed here in coordinates: move a smooth point to (1, 0, ..., 0)
with its tangent hyperplane becoming the last-coordinate hyperplane,
read off the normal-form pieces, and compare the Hessian rank with the
rank of the middle block.  Every structural identity along the way is
re-verified in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalCheckError
from .hessian import (
    HessianForm,
    build_hessian,
    evaluate_hessian,
    generic_rank_on_hypersurface,
    rank_at,
)
from .linalg import det_rational, rank_rational
from .poly import MultiPoly, compose_linear, differentiate, evaluate, homogeneous_degree

Point = Sequence[Fraction | int]


@dataclass(frozen=True)
class AdaptedForm:
    """f in coordinates adapted to a smooth point.

    ``transform`` columns: the point lift first, then a basis of the
    tangent directions, then one transverse direction.  After composing
    and rescaling by ``scale``, the polynomial splits as

        f_adapted = X0^(d-1)*XN + X0^(d-2)*(g + XN*L) + higher

    with g quadratic in the middle variables, L linear in X1..XN and
    ``higher`` collecting everything of lower X0-degree.
    """

    transform: tuple[tuple[Fraction, ...], ...]
    f_adapted: MultiPoly
    degree: int
    c: Fraction  # leading normal-form coefficient, 1 after rescaling
    g: MultiPoly
    ell: MultiPoly
    higher: MultiPoly
    scale: Fraction  # the coefficient divided out of f o T

    @property
    def num_vars(self) -> int:
        return self.f_adapted.num_vars


def _validated_smooth_point(f: MultiPoly, p: Point) -> tuple[list[Fraction], list[Fraction]]:
    coords = [Fraction(x) for x in p]
    if len(coords) != f.num_vars:
        raise ValueError(f"point has {len(coords)} coordinates, expected {f.num_vars}")
    if all(x == 0 for x in coords):
        raise ValueError("zero point does not define a projective point")
    if evaluate(f, coords) != 0:
        raise ValueError("point does not lie on the hypersurface")
    gradient = [evaluate(differentiate(f, i), coords) for i in range(f.num_vars)]
    if all(x == 0 for x in gradient):
        raise ValueError("point is a singular point of the hypersurface")
    return coords, gradient


def adapt_coordinates(f: MultiPoly, p: Point) -> AdaptedForm:
    """Linear change of coordinates putting a smooth point in normal form.

    The new coordinates send (1, 0, ..., 0) to the point and the
    hyperplane XN = 0 to its tangent hyperplane.  Pivots are the first
    admissible indices, so the transform is deterministic.  All claimed
    normal-form properties are re-checked on the result.
    """
    d = homogeneous_degree(f)
    if d is None:
        raise ValueError("not homogeneous")
    if d < 2:
        raise ValueError(f"degree {d} < 2: no second-order structure to adapt")
    coords, gradient = _validated_smooth_point(f, p)
    n = f.num_vars
    big_n = n - 1

    j_star = next(i for i in range(n) if gradient[i] != 0)
    # Kernel of the differential: e_i - (grad_i/grad_j*) e_j* for i != j*.
    # The point lift itself lies in the kernel (Euler, since f(p) = 0),
    # and expanding it in this kernel basis uses the coefficients p_i,
    # so dropping the first index with p_i != 0 leaves a complement.
    kernel_indices = [i for i in range(n) if i != j_star]
    i_0 = next(i for i in kernel_indices if coords[i] != 0)

    columns: list[list[Fraction]] = [coords]
    for i in kernel_indices:
        if i == i_0:
            continue
        col = [Fraction(0)] * n
        col[i] = Fraction(1)
        col[j_star] = -gradient[i] / gradient[j_star]
        columns.append(col)
    last = [Fraction(0)] * n
    last[j_star] = Fraction(1)
    columns.append(last)

    transform = [[columns[j][i] for j in range(n)] for i in range(n)]
    if det_rational(transform) == 0:
        raise InternalCheckError("adapted coordinate change is singular")

    composed = compose_linear(f, transform)
    lead_exps = tuple(d - 1 if i == 0 else (1 if i == big_n else 0) for i in range(n))
    scale = composed.coefficient(lead_exps)
    if scale == 0:
        raise InternalCheckError("transverse direction lost the leading coefficient")
    f_adapted = composed * (1 / scale)

    g_terms: dict[tuple[int, ...], Fraction] = {}
    ell_terms: dict[tuple[int, ...], Fraction] = {}
    higher_terms: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in f_adapted.terms.items():
        k = d - exps[0]  # degree away from the distinguished point
        stripped = (0,) + exps[1:]
        if k == 0:
            raise InternalCheckError("adapted form does not vanish at the point")
        if k == 1:
            if exps[big_n] != 1:
                raise InternalCheckError("adapted form has a surviving tangential gradient")
            continue  # the X0^(d-1)*XN term itself
        if k == 2:
            if exps[big_n] == 0:
                g_terms[stripped] = coeff
            else:
                lowered = list(stripped)
                lowered[big_n] -= 1
                ell_terms[tuple(lowered)] = coeff
        else:
            higher_terms[exps] = coeff
    g = MultiPoly(n, g_terms)
    ell = MultiPoly(n, ell_terms)
    higher = MultiPoly(n, higher_terms)

    x0 = MultiPoly.variable(0, n)
    xn = MultiPoly.variable(big_n, n)
    rebuilt = x0 ** (d - 1) * xn + x0 ** (d - 2) * (g + xn * ell) + higher
    if rebuilt != f_adapted:
        raise InternalCheckError("normal-form pieces do not reassemble the adapted form")

    return AdaptedForm(
        transform=tuple(tuple(row) for row in transform),
        f_adapted=f_adapted,
        degree=d,
        c=Fraction(1),
        g=g,
        ell=ell,
        higher=higher,
        scale=scale,
    )


@dataclass(frozen=True)
class BlockDecomposition:
    """Hessian of the adapted form at the point, in block shape.

    ``assembled`` is the full matrix; its rank always equals
    2 + rank(a) because the two antidiagonal corner entries d-1 clear
    the last row and column.
    """

    a: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    l_n: Fraction
    assembled: tuple[tuple[Fraction, ...], ...]


def block_decompose(af: AdaptedForm) -> BlockDecomposition:
    n = af.num_vars
    big_n = n - 1
    d = af.degree

    a = [
        [
            evaluate(
                differentiate(differentiate(af.g, i), j), [Fraction(0)] * n
            )
            for j in range(1, big_n)
        ]
        for i in range(1, big_n)
    ]
    b = [af.ell.coefficient(tuple(1 if k == i else 0 for k in range(n))) for i in range(1, big_n)]
    l_n = af.ell.coefficient(tuple(1 if k == big_n else 0 for k in range(n)))

    corner = Fraction(d - 1)
    assembled = [[Fraction(0)] * n for _ in range(n)]
    assembled[0][big_n] = corner
    assembled[big_n][0] = corner
    for i in range(big_n - 1):
        for j in range(big_n - 1):
            assembled[i + 1][j + 1] = a[i][j]
    for i in range(big_n - 1):
        assembled[i + 1][big_n] = b[i]
        assembled[big_n][i + 1] = b[i]
    assembled[big_n][big_n] = 2 * l_n

    point = [Fraction(1)] + [Fraction(0)] * (n - 1)
    direct = evaluate_hessian(build_hessian(af.f_adapted), point)
    if direct != assembled:
        raise InternalCheckError("block matrix disagrees with the Hessian at the point")

    return BlockDecomposition(
        a=tuple(tuple(row) for row in a),
        b=tuple(b),
        l_n=l_n,
        assembled=tuple(tuple(row) for row in assembled),
    )


def second_order_implicit(af: AdaptedForm) -> list[list[Fraction]]:
    """Quadratic coefficients of the implicit solution of the last variable.

    On the affine chart X0 = 1 the hypersurface solves XN as a function
    of the middle variables vanishing to second order.  Substituting an
    unknown quadratic for XN and matching weight-2 terms (middle
    variables weigh 1, XN weighs 2) gives one linear equation per
    quadratic monomial, with the same nonzero leading coefficient
    multiplying every unknown.  The result is checked against -a/2 from
    the block decomposition, which reads the same numbers through the
    differentiation route.
    """
    n = af.num_vars
    big_n = n - 1
    gamma = Fraction(0)
    quad: dict[tuple[int, int], Fraction] = {}
    for exps, coeff in af.f_adapted.terms.items():
        middle_weight = sum(exps[1:big_n])
        weight = middle_weight + 2 * exps[big_n]
        if weight > 2:
            continue
        if weight == 2 and exps[big_n] == 1:
            gamma += coeff
            continue
        if weight == 2:
            support = [i for i in range(1, big_n) for _ in range(exps[i])]
            quad[(support[0], support[1])] = quad.get((support[0], support[1]), Fraction(0)) + coeff
            continue
        # weight < 2: a constant or linear leftover contradicts vanishing
        # to second order at the point
        raise InternalCheckError("adapted form is not flat to second order")
    if gamma == 0:
        raise InternalCheckError("implicit step is degenerate: no transverse linear term")

    q = [[Fraction(0)] * (big_n - 1) for _ in range(big_n - 1)]
    for (i, j), coeff in quad.items():
        value = -coeff / gamma
        if i == j:
            q[i - 1][j - 1] += value
        else:
            q[i - 1][j - 1] += value / 2
            q[j - 1][i - 1] += value / 2

    block = block_decompose(af)
    expected = [[-x / 2 for x in row] for row in block.a]
    if q != expected:
        raise InternalCheckError("implicit quadratic does not equal minus half the block")
    return q


@dataclass(frozen=True)
class RankRelationReport:
    """Hessian rank vs middle-block rank at one smooth point."""

    rank_q: int
    rank_a: int
    holds: bool
    transform: tuple[tuple[Fraction, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "rank_Q": self.rank_q,
            "rank_A": self.rank_a,
            "holds": self.holds,
            "transform": [[_frac_json(x) for x in row] for row in self.transform],
        }


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def rank_relation_check(f: MultiPoly, p: Point) -> RankRelationReport:
    """Verify rank(Hessian at p) = 2 + rank(middle block) at a smooth point."""
    d = homogeneous_degree(f)
    if d is None or d < 3:
        raise ValueError("rank relation needs homogeneous f of degree >= 3")
    af = adapt_coordinates(f, p)
    block = block_decompose(af)
    rank_a = rank_rational([list(row) for row in block.a])
    if rank_rational([list(row) for row in block.assembled]) != rank_a + 2:
        raise InternalCheckError("assembled block rank is not 2 + rank of the middle block")
    rank_q = rank_at(build_hessian(f), p)
    return RankRelationReport(
        rank_q=rank_q,
        rank_a=rank_a,
        holds=(rank_q == rank_a + 2),
        transform=af.transform,
    )


def dual_dimension(f: MultiPoly, seed: int = 0, sample_budget: int = 8) -> int:
    """Dimension of the dual variety of the hypersurface f = 0.

    Equals the certified generic Hessian rank on the hypersurface minus
    2.  Irreducibility of f is the caller's responsibility.
    """
    d = homogeneous_degree(f)
    if d is None or d < 3:
        raise ValueError("dual dimension needs homogeneous f of degree >= 3")
    h: HessianForm = build_hessian(f)
    r = generic_rank_on_hypersurface(h, seed=seed, sample_budget=sample_budget)
    if r < 2:
        raise InternalCheckError(
            "generic rank below 2: input cannot define a reduced irreducible hypersurface"
        )
    return r - 2
