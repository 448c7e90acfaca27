"""Exact computation of inclusion-exclusion polynomials.

An inclusion-exclusion polynomial is determined by pairwise coprime integers
q_1 < q_2 < ... < q_k (all >= 2).  With m = q_1 q_2 ... q_k it is the quotient

          prod over even-size subsets S of (1 - x^(m / prod_{i in S} q_i))
    Q  =  ------------------------------------------------------------------
          prod over odd-size  subsets S of (1 - x^(m / prod_{i in S} q_i))

which is always a polynomial, of degree prod (q_j - 1).  When every q_j is
prime, Q is the cyclotomic polynomial of index m.

``expand`` computes the coefficient vector exactly by streaming the signed
factors through a window of degree+1 coefficients: multiplication by
(1 - x^d) is a high-to-low subtraction sweep, division by (1 - x^d) is a
low-to-high prefix-sum sweep with stride d (the truncated geometric series).
A factor whose d exceeds the window is the identity on the truncation and is
skipped; in particular the d = m factor never materializes.  The default
lane runs on int64 numpy arrays and promotes to Python integers when
coefficients approach the fixed-width limit; the promotion check is sound
because every sweep step adds or subtracts exactly two already-checked
values (see INT64_SAFE_LIMIT).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeCapExceeded,
    EmptyTuple,
    EntryBelowTwo,
    NotCoprime,
    NotIncreasing,
    OverflowInFastPath,
    TupleTooLarge,
)

# Post-sweep magnitude limit for the int64 lane.  If every stored value is
# within L = 2^62 - 1 after each sweep, no step can have wrapped silently:
# a multiplication step computes |a - b| <= 2L < 2^63 from pre-sweep values,
# and the first division step able to wrap would need an already-final
# operand of magnitude > L, which the same post-sweep check rejects.
INT64_SAFE_LIMIT = (1 << 62) - 1

DEFAULT_DEGREE_CAP = 1 << 28
DEFAULT_SUBSET_CAP = 20

# Sign convention for factors: +1 multiplies by (1 - x^d), -1 divides.
Factor = tuple[int, int]


@dataclass(frozen=True)
class ExpandOptions:
    """Knobs for ``expand``.

    degree_cap bounds the dense coefficient window (memory guard).
    half_degree computes only the low half and mirrors it (the result is
    always palindromic); off by default so palindromy stays an independent
    check.  fast_path_limit exists so tests can shrink the promotion
    threshold; it is clamped to INT64_SAFE_LIMIT.
    """

    degree_cap: int = DEFAULT_DEGREE_CAP
    subset_cap: int = DEFAULT_SUBSET_CAP
    half_degree: bool = False
    fast_path: bool = True
    promote_on_overflow: bool = True
    fast_path_limit: int = INT64_SAFE_LIMIT


DEFAULT_OPTIONS = ExpandOptions()


@dataclass(frozen=True)
class CoprimeTuple:
    """Strictly increasing pairwise coprime integers and their product m."""

    qs: tuple[int, ...]
    m: int

    @property
    def k(self) -> int:
        return len(self.qs)

    def __str__(self) -> str:
        return "{" + ",".join(str(q) for q in self.qs) + "}"


@dataclass(frozen=True)
class FactorSystem:
    """Signed divisor multiset: one (d, sign) entry per subset of the tuple."""

    factors: tuple[Factor, ...]

    def signed_degree_sum(self) -> int:
        return sum(sign * d for d, sign in self.factors)


@dataclass(frozen=True)
class IEPolynomial:
    """Dense exact-integer coefficient vector; index i holds the x^i coefficient."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def validate_tuple(values: Iterable[int]) -> CoprimeTuple:
    """Check k >= 1, all q >= 2, strict increase, pairwise coprimality; compute m."""
    qs = tuple(int(v) for v in values)
    if not qs:
        raise EmptyTuple()
    for idx, q in enumerate(qs):
        if q < 2:
            raise EntryBelowTwo(idx, q)
    for idx in range(len(qs) - 1):
        if qs[idx] >= qs[idx + 1]:
            raise NotIncreasing(idx, qs[idx], qs[idx + 1])
    for i, j in combinations(range(len(qs)), 2):
        g = math.gcd(qs[i], qs[j])
        if g != 1:
            raise NotCoprime(i, j, qs[i], qs[j], g)
    m = 1
    for q in qs:
        m *= q
    return CoprimeTuple(qs, m)


def degree_of(rho: CoprimeTuple) -> int:
    """Degree of the expanded polynomial: prod (q_j - 1)."""
    deg = 1
    for q in rho.qs:
        deg *= q - 1
    return deg


def factor_system(rho: CoprimeTuple, subset_cap: int = DEFAULT_SUBSET_CAP) -> FactorSystem:
    """Enumerate all 2^k subsets as signed factors (d = m / prod q_i, sign = parity)."""
    if rho.k > subset_cap:
        raise TupleTooLarge(rho.k, subset_cap)
    factors: list[Factor] = []
    for size in range(rho.k + 1):
        sign = 1 if size % 2 == 0 else -1
        for subset in combinations(rho.qs, size):
            d = rho.m
            for q in subset:
                d //= q
            factors.append((d, sign))
    return FactorSystem(tuple(factors))


def ordered_factors(system: FactorSystem) -> list[Factor]:
    """Default application order: divisions ascending by d, then multiplications."""
    divisions = sorted(f for f in system.factors if f[1] < 0)
    multiplications = sorted(f for f in system.factors if f[1] > 0)
    return divisions + multiplications


def expand(rho: CoprimeTuple, opts: ExpandOptions = DEFAULT_OPTIONS) -> IEPolynomial:
    """Expand the inclusion-exclusion polynomial of ``rho`` exactly."""
    degree = degree_of(rho)
    if degree + 1 > opts.degree_cap:
        raise DegreeCapExceeded(degree, opts.degree_cap)
    system = factor_system(rho, subset_cap=opts.subset_cap)
    window = (degree + 2) // 2 if opts.half_degree else degree + 1
    coeffs = apply_factors(window, ordered_factors(system), opts)
    if opts.half_degree:
        coeffs = coeffs + [coeffs[degree - i] for i in range(window, degree + 1)]
    return IEPolynomial(tuple(coeffs))


def apply_factors(window: int, factors: Sequence[Factor], opts: ExpandOptions = DEFAULT_OPTIONS) -> list[int]:
    """Apply signed (1 - x^d) factors in the given order to the constant polynomial 1.

    The result is the truncation to ``window`` coefficients.  Exposed
    separately from ``expand`` so order-independence can be exercised
    directly.
    """
    if opts.fast_path:
        return _apply_fast(window, factors, opts)
    c = [0] * window
    c[0] = 1
    _apply_bigint(c, factors)
    return c


def _apply_fast(window: int, factors: Sequence[Factor], opts: ExpandOptions) -> list[int]:
    limit = min(opts.fast_path_limit, INT64_SAFE_LIMIT)
    c = np.zeros(window, dtype=np.int64)
    c[0] = 1
    for pos, (d, sign) in enumerate(factors):
        if d >= window:
            continue
        if sign > 0:
            c[d:] -= c[: window - d]
        else:
            _strided_prefix_sum(c, d)
        if int(c.max()) > limit or -int(c.min()) > limit:
            if not opts.promote_on_overflow:
                raise OverflowInFastPath(
                    f"coefficient magnitude exceeded {limit} while applying (1 - x^{d})"
                )
            big = [int(v) for v in c]
            _apply_bigint(big, factors[pos + 1 :])
            return big
    return [int(v) for v in c]


def _strided_prefix_sum(c: np.ndarray, d: int) -> None:
    # c[i] += c[i-d] for i ascending: cumulative sums along each residue
    # class mod d.  Full rows vectorize as a 2-d cumsum; the ragged tail
    # needs one extra shifted add since its predecessors are then final.
    n = c.shape[0]
    rows = n // d
    if rows >= 2:
        head = c[: rows * d].reshape(rows, d)
        np.cumsum(head, axis=0, out=head)
    if rows * d < n:
        c[rows * d :] += c[(rows - 1) * d : n - d]


def _apply_bigint(c: list[int], factors: Sequence[Factor]) -> None:
    n = len(c)
    for d, sign in factors:
        if d >= n:
            continue
        if sign > 0:
            for i in range(n - 1, d - 1, -1):
                c[i] -= c[i - d]
        else:
            for i in range(d, n):
                c[i] += c[i - d]


def height(p: IEPolynomial) -> int:
    """Largest coefficient magnitude."""
    return max(max(p.coeffs), -min(p.coeffs))


def is_palindromic(p: IEPolynomial) -> bool:
    return p.coeffs == p.coeffs[::-1]


def eval_at_one(p: IEPolynomial) -> int:
    """Coefficient sum; q_1 for a single-entry tuple and 1 otherwise."""
    return sum(p.coeffs)
