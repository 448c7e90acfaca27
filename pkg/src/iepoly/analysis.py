"""Height normalization, ratio identities, the limiting constant, and tuple search.

The scale against which coefficient heights are measured is the normalizer
M = prod_{j=1}^{k-2} q_j^(2^(k-j-1) - 1) (empty product 1 for k <= 2); the
reported statistic is the normalized ratio (A / M)^(2^-k) where A is the
height.  Ratios are always evaluated through logarithms of exact integers:
M alone overflows double-precision range at moderate k.

``limit_constant`` evaluates prod_{j>=1} (4j - 2)^(-2^(-j-1)), the limiting
value of the constructed families' predicted ratio, together with a proven
truncation bound (derivation in the docstring).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from mpmath import mp

from .construction import family_parameters
from .core import (
    CoprimeTuple,
    ExpandOptions,
    IEPolynomial,
    degree_of,
    expand,
    height,
)
from .errors import CapExceeded, IdentityMismatch, InvalidParameter

DEFAULT_MANTISSA_BITS = 128
DEFAULT_SEARCH_EXPAND_CAP = 10**5
MAX_ENUM_PRODUCT = 10**7

# Opaque literature bracket for the double-limit supremum of normalized
# ratios; used purely to annotate search reports.
RATIO_BRACKET_LOW = 0.487
RATIO_BRACKET_HIGH = 0.9541


@dataclass(frozen=True)
class HeightReport:
    rho: CoprimeTuple
    height: int
    normalizer: int
    degree: int
    normalized_ratio: "mp.mpf"


@dataclass(frozen=True)
class ConstantResult:
    value: "mp.mpf"
    terms_used: int
    error_bound: "mp.mpf"


def normalizer(rho: CoprimeTuple) -> int:
    """M = prod_{j=1}^{k-2} q_j^(2^(k-j-1) - 1); 1 for k <= 2."""
    k = rho.k
    out = 1
    for j in range(1, k - 1):
        out *= rho.qs[j - 1] ** ((1 << (k - j - 1)) - 1)
    return out


def normalized_ratio(A: int, M: int, k: int, mantissa_bits: int = DEFAULT_MANTISSA_BITS) -> "mp.mpf":
    """(A / M)^(2^-k), computed as exp(2^-k (ln A - ln M)) on exact integers."""
    if A < 1 or M < 1 or k < 1:
        raise InvalidParameter(f"need A >= 1, M >= 1, k >= 1, got A={A}, M={M}, k={k}")
    with mp.workprec(mantissa_bits):
        return mp.exp((mp.log(A) - mp.log(M)) / (1 << k))


def height_report(
    rho: CoprimeTuple,
    opts: Optional[ExpandOptions] = None,
    mantissa_bits: int = DEFAULT_MANTISSA_BITS,
    polynomial: Optional[IEPolynomial] = None,
) -> HeightReport:
    """Expand (unless a polynomial is supplied), measure, and normalize."""
    if polynomial is None:
        polynomial = expand(rho, opts if opts is not None else ExpandOptions())
    A = height(polynomial)
    M = normalizer(rho)
    ratio = normalized_ratio(A, M, rho.k, mantissa_bits)
    return HeightReport(rho, A, M, polynomial.degree, ratio)


def predicted_ratio(
    N: int,
    k: int,
    mantissa_bits: int = DEFAULT_MANTISSA_BITS,
    rel_tol: float = 1e-9,
    exact_bits_cap: int = 1 << 22,
) -> "mp.mpf":
    """Predicted normalized ratio of the (N, k) family, checked two ways.

    Route (a) takes logarithms of the exact integers r^(2^(k-1)), m, and M;
    route (b) evaluates the per-member product (r/q_k) * prod (r/q_j)^(2^(k-j-1))
    in the log domain.  The two arrangements are algebraically identical, so
    disagreement beyond ``rel_tol`` relative error raises IdentityMismatch.
    When the exact integers would exceed ``exact_bits_cap`` bits, route (a)
    falls back to scaled logarithms of r and the q_j.
    """
    r, qs = family_parameters(N, k)
    with mp.workprec(mantissa_bits):
        log_r = mp.log(r)
        logs_q = [mp.log(q) for q in qs]
        chain = log_r - logs_q[-1]
        for j in range(1, k):
            chain += (1 << (k - j - 1)) * (log_r - logs_q[j - 1])
        value_b = mp.exp(chain / (1 << k))

        m = 1
        for q in qs:
            m *= q
        if (1 << (k - 1)) * r.bit_length() <= exact_bits_cap:
            numerator = r ** (1 << (k - 1))
            M = 1
            for j in range(1, k - 1):
                M *= qs[j - 1] ** ((1 << (k - j - 1)) - 1)
            grouped = mp.log(numerator) - mp.log(m) - mp.log(M)
        else:
            log_M = mp.mpf(0)
            for j in range(1, k - 1):
                log_M += ((1 << (k - j - 1)) - 1) * logs_q[j - 1]
            grouped = (1 << (k - 1)) * log_r - mp.log(m) - log_M
        value_a = mp.exp(grouped / (1 << k))

        if abs(value_a - value_b) > mp.mpf(rel_tol) * abs(value_b):
            raise IdentityMismatch(
                f"ratio routes disagree for N={N}, k={k}: {value_a} vs {value_b}"
            )
    return value_a


def constant_log_tail_bound(terms: int) -> "mp.mpf":
    """Majorant for the dropped log-sum tail sum_{j>T} 2^(-j-1) ln(4j-2).

    Write j = T + 1 + i with i >= 0.  Then 4j - 2 = (4T + 2) + 4i, and for
    T >= 1 we have (4T + 2) * 2^i >= (4T + 2)(1 + i) >= (4T + 2) + 4i, so
    ln(4j - 2) <= ln(4T + 2) + i ln 2.  Summing the geometric majorants:

        sum_{j>T} 2^(-j-1) ln(4j-2)
          <= 2^(-T-2) [ ln(4T+2) sum_i 2^(-i) + ln 2 sum_i i 2^(-i) ]
          =  2^(-T-2) [ 2 ln(4T+2) + 2 ln 2 ]
          =  2^(-T-1) (ln(4T+2) + ln 2).

    Checked against direct summation out to 200 terms in the test suite.
    """
    if terms < 1:
        raise InvalidParameter(f"terms must be >= 1, got {terms}")
    return mp.ldexp(mp.log(4 * terms + 2) + mp.log(2), -(terms + 1))


def limit_constant(terms: int, mantissa_bits: int = DEFAULT_MANTISSA_BITS) -> ConstantResult:
    """Partial product prod_{j=1}^{terms} (4j - 2)^(-2^(-j-1)) with a rigorous error bar.

    The value is exp(-S) for the partial log sum S; the true limit lies in
    [value * exp(-tail), value] for the proven tail bound, so
    value * tail dominates the truncation error.  Rounding error at >= 64
    mantissa bits is orders of magnitude below the reported bound.
    """
    if terms < 1:
        raise InvalidParameter(f"terms must be >= 1, got {terms}")
    if mantissa_bits < 64:
        raise InvalidParameter(f"mantissa_bits must be >= 64, got {mantissa_bits}")
    with mp.workprec(mantissa_bits):
        log_sum = mp.mpf(0)
        for j in range(1, terms + 1):
            log_sum += mp.ldexp(mp.log(4 * j - 2), -(j + 1))
        value = mp.exp(-log_sum)
        error_bound = value * constant_log_tail_bound(terms)
    return ConstantResult(value, terms, error_bound)


def coprime_tuples(k: int, m_cap: int) -> Iterator[CoprimeTuple]:
    """All valid tuples with exactly k entries and product <= m_cap, lexicographic order.

    Recursive extension with pruning: entries are chosen ascending, and a
    branch dies as soon as the cheapest completion q(q+1)...(q+t-1) pushes
    the product past the cap.
    """
    if k < 1:
        raise InvalidParameter(f"k must be >= 1, got {k}")
    if m_cap < 1:
        raise InvalidParameter(f"m_cap must be >= 1, got {m_cap}")

    def extend(prefix: tuple[int, ...], product: int, start: int, remaining: int) -> Iterator[CoprimeTuple]:
        if remaining == 0:
            yield CoprimeTuple(prefix, product)
            return
        q = start
        while True:
            cheapest = 1
            for t in range(remaining):
                cheapest *= q + t
            if product * cheapest > m_cap:
                return
            if all(math.gcd(q, p) == 1 for p in prefix):
                yield from extend(prefix + (q,), product * q, q + 1, remaining - 1)
            q += 1

    yield from extend((), 1, 2, k)


def search_max_ratio(
    m_cap: int,
    k: int,
    expand_cap: int = DEFAULT_SEARCH_EXPAND_CAP,
    subset_cap: int = 20,
    jobs: int = 1,
    mantissa_bits: int = DEFAULT_MANTISSA_BITS,
) -> list[HeightReport]:
    """Rank every enumerable tuple (given k, m <= m_cap, degree <= expand_cap) by ratio.

    The output is a finite-sample statistic over the enumerated set, nothing
    more.  Ties in the ratio are broken by lexicographic tuple order, so the
    ranking is a pure function of the enumerated set; with jobs > 1 the
    expansions run in a thread pool and are merged before sorting, which
    preserves that determinism.
    """
    if jobs < 1:
        raise InvalidParameter(f"jobs must be >= 1, got {jobs}")
    if k > subset_cap:
        raise CapExceeded(f"k = {k} exceeds subset cap {subset_cap}")
    if m_cap > MAX_ENUM_PRODUCT:
        raise CapExceeded(f"m_cap = {m_cap} exceeds enumeration cap {MAX_ENUM_PRODUCT}")
    opts = ExpandOptions(degree_cap=expand_cap + 1, subset_cap=subset_cap)
    candidates = [rho for rho in coprime_tuples(k, m_cap) if degree_of(rho) <= expand_cap]

    def measure(rho: CoprimeTuple) -> tuple[CoprimeTuple, int, int]:
        p = expand(rho, opts)
        return rho, height(p), p.degree

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            measured = list(pool.map(measure, candidates))
    else:
        measured = [measure(rho) for rho in candidates]

    # Ratio evaluation stays on this thread: the precision context is global.
    reports = []
    for rho, A, deg in measured:
        M = normalizer(rho)
        reports.append(HeightReport(rho, A, M, deg, normalized_ratio(A, M, rho.k, mantissa_bits)))
    reports.sort(key=lambda rep: (-rep.normalized_ratio, rep.rho.qs))
    return reports
