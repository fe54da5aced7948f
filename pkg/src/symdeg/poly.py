"""Sparse multivariate polynomials over the rationals.

A polynomial in ``n`` variables is stored as a map from exponent vectors
(length-``n`` tuples of non-negative ints) to nonzero ``Fraction``
coefficients.  The zero polynomial is the empty map.  All arithmetic is
exact; nothing in this module ever touches floating point.

The global monomial order is graded lexicographic: monomials are compared
by total degree first, then lexicographically on the exponent vector with
earlier variables dominating.  Division, leading terms and the canonical
text form all use this order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import PolyParseError

Exponents = tuple[int, ...]


def _grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[Exponents, Fraction | int]):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != num_vars:
                raise ValueError(
                    f"exponent vector {exps} has length {len(exps)}, expected {num_vars}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = Fraction(coeff)
            if c != 0:
                clean[exps] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(num_vars: int) -> MultiPoly:
        return MultiPoly(num_vars, {})

    @staticmethod
    def constant(value: Fraction | int, num_vars: int) -> MultiPoly:
        return MultiPoly(num_vars, {(0,) * num_vars: Fraction(value)})

    @staticmethod
    def variable(index: int, num_vars: int) -> MultiPoly:
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for {num_vars} variables")
        exps = tuple(1 if i == index else 0 for i in range(num_vars))
        return MultiPoly(num_vars, {exps: Fraction(1)})

    @staticmethod
    def monomial(coeff: Fraction | int, exps: Iterable[int]) -> MultiPoly:
        exps = tuple(exps)
        return MultiPoly(len(exps), {exps: Fraction(coeff)})

    # -- predicates and views ------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Maximum total degree of a term.  Undefined (error) for zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no total degree")
        return max(sum(e) for e in self.terms)

    def leading_term(self) -> tuple[Exponents, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def coefficient(self, exps: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # -- ring operations ------------------------------------------------

    def _check_same_ring(self, other: MultiPoly) -> None:
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"mixed variable counts: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.num_vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_ring(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return MultiPoly(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        return self + (-other if isinstance(other, MultiPoly) else -Fraction(other))

    def __rsub__(self, other: Fraction | int) -> MultiPoly:
        return (-self) + Fraction(other)

    def __mul__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return MultiPoly(self.num_vars, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_ring(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1, self.num_vars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- text form -------------------------------------------------------

    def format(self, var_names: Optional[Sequence[str]] = None) -> str:
        """Canonical text form: terms in descending graded-lex order.

        Coefficients print as ``num/den`` with the denominator omitted
        when it is 1.  Unit coefficients are suppressed in front of a
        nonempty monomial.
        """
        if var_names is None:
            var_names = [f"x{i}" for i in range(self.num_vars)]
        if len(var_names) != self.num_vars:
            raise ValueError("wrong number of variable names")
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(var_names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mon = "*".join(factors)
            mag = abs(coeff)
            if mon and mag == 1:
                body = mon
            elif mon:
                body = f"{mag}*{mon}"
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {self.format()!r})"


# -- parsing ---------------------------------------------------------------

_TOKEN_CHARS = set("+-*/^")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split into (kind, value, position) tokens; kinds: num, name, op."""
    tokens: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r} at position {i}")
    return tokens


def parse_poly(text: str, var_names: Sequence[str]) -> MultiPoly:
    """Parse a sum of rational-coefficient monomials.

    Grammar: terms joined by ``+`` and ``-``; each term is a ``*``-joined
    product of factors; a factor is an integer, a fraction ``a/b``, or a
    variable with an optional ``^power``.  Implicit coefficient 1 and a
    leading sign are accepted; whitespace is ignored.
    """
    var_index = {name: i for i, name in enumerate(var_names)}
    if len(var_index) != len(var_names):
        raise ValueError("duplicate variable names")
    num_vars = len(var_names)
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial text")

    result = MultiPoly.zero(num_vars)
    pos = 0

    def peek() -> Optional[tuple[str, str, int]]:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> tuple[str, str, int]:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise PolyParseError(f"unexpected end of input at position {len(text)}")
        pos += 1
        return tok

    def parse_factor() -> tuple[Fraction, Exponents]:
        kind, value, at = take()
        if kind == "num":
            numerator = int(value)
            nxt = peek()
            if nxt is not None and nxt[:2] == ("op", "/"):
                take()
                dkind, dvalue, dat = take()
                if dkind != "num":
                    raise PolyParseError(f"expected denominator at position {dat}")
                if int(dvalue) == 0:
                    raise PolyParseError(f"zero denominator at position {dat}")
                return Fraction(numerator, int(dvalue)), (0,) * num_vars
            return Fraction(numerator), (0,) * num_vars
        if kind == "name":
            if value not in var_index:
                raise PolyParseError(f"unknown variable {value!r} at position {at}")
            power = 1
            nxt = peek()
            if nxt is not None and nxt[:2] == ("op", "^"):
                take()
                pkind, pvalue, pat = take()
                if pkind != "num":
                    raise PolyParseError(f"expected exponent at position {pat}")
                power = int(pvalue)
            exps = [0] * num_vars
            exps[var_index[value]] = power
            return Fraction(1), tuple(exps)
        raise PolyParseError(f"expected number or variable at position {at}, got {value!r}")

    def parse_term() -> MultiPoly:
        coeff, exps = parse_factor()
        exps = list(exps)
        while True:
            nxt = peek()
            if nxt is None or nxt[:2] != ("op", "*"):
                break
            take()
            c2, e2 = parse_factor()
            coeff *= c2
            exps = [a + b for a, b in zip(exps, e2)]
        return MultiPoly(num_vars, {tuple(exps): coeff})

    # leading sign
    sign = Fraction(1)
    first = peek()
    if first is not None and first[0] == "op" and first[1] in "+-":
        take()
        if first[1] == "-":
            sign = Fraction(-1)
    result = result + sign * parse_term()
    while True:
        nxt = peek()
        if nxt is None:
            break
        kind, value, at = nxt
        if kind != "op" or value not in "+-":
            raise PolyParseError(f"expected '+' or '-' at position {at}, got {value!r}")
        take()
        term = parse_term()
        result = result + (term if value == "+" else -term)
    return result


# -- calculus and structure --------------------------------------------------


def differentiate(p: MultiPoly, var_index: int) -> MultiPoly:
    """Formal partial derivative along one variable."""
    if not 0 <= var_index < p.num_vars:
        raise ValueError(f"variable index {var_index} out of range for {p.num_vars} variables")
    out: dict[Exponents, Fraction] = {}
    for exps, coeff in p.terms.items():
        e = exps[var_index]
        if e == 0:
            continue
        new = list(exps)
        new[var_index] = e - 1
        key = tuple(new)
        out[key] = out.get(key, Fraction(0)) + coeff * e
    return MultiPoly(p.num_vars, out)


def evaluate(p: MultiPoly, point: Sequence[Fraction | int]) -> Fraction:
    """Exact value of p at a rational point."""
    if len(point) != p.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.num_vars}")
    coords = [Fraction(c) for c in point]
    total = Fraction(0)
    for exps, coeff in p.terms.items():
        value = coeff
        for c, e in zip(coords, exps):
            if e:
                value *= c**e
        total += value
    return total


def homogeneous_degree(p: MultiPoly) -> Optional[int]:
    """Common total degree of all terms, or None for 0 / inhomogeneous p.

    The zero polynomial reports None here; callers that need to tell the
    two None cases apart check ``p.is_zero()``.
    """
    if not p.terms:
        return None
    degrees = {sum(e) for e in p.terms}
    if len(degrees) == 1:
        return degrees.pop()
    return None


def divides(f: MultiPoly, m: MultiPoly) -> Optional[MultiPoly]:
    """Quotient q with m = q*f, or None when f does not divide m.

    Long division by the single divisor f under the graded-lex order:
    membership in a principal ideal is decided by remainder zero, and
    with one divisor the first leading term that LT(f) fails to divide
    already lands in the remainder, so we can stop there.
    """
    if f.num_vars != m.num_vars:
        raise ValueError("mixed variable counts")
    if f.is_zero():
        raise ValueError("division by the zero polynomial")
    quotient = MultiPoly.zero(f.num_vars)
    remainder = m
    f_exps, f_coeff = f.leading_term()
    while not remainder.is_zero():
        r_exps, r_coeff = remainder.leading_term()
        diff = tuple(a - b for a, b in zip(r_exps, f_exps))
        if any(d < 0 for d in diff):
            return None
        t = MultiPoly.monomial(r_coeff / f_coeff, diff)
        quotient = quotient + t
        remainder = remainder - t * f
    return quotient


def compose_linear(p: MultiPoly, matrix: Sequence[Sequence[Fraction | int]]) -> MultiPoly:
    """Substitute x_i = sum_j matrix[i][j] * y_j into p.

    ``matrix`` is square of size num_vars; the result lives in the same
    number of variables.  This is polynomial pullback along the linear
    map y -> matrix @ y.
    """
    n = p.num_vars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("substitution matrix must be square of size num_vars")
    images = [
        MultiPoly(
            n,
            {
                tuple(1 if k == j else 0 for k in range(n)): Fraction(matrix[i][j])
                for j in range(n)
            },
        )
        for i in range(n)
    ]
    result = MultiPoly.zero(n)
    power_cache: list[dict[int, MultiPoly]] = [{} for _ in range(n)]

    def power(i: int, e: int) -> MultiPoly:
        cache = power_cache[i]
        if e not in cache:
            cache[e] = images[i] ** e
        return cache[e]

    for exps, coeff in p.terms.items():
        term = MultiPoly.constant(coeff, n)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        result = result + term
    return result
