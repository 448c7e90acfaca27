"""Extremal coprime families built from factorial-scaled congruence classes.

The family with parameters (N, k) sets r = N * k! and q_j = (4j - 2) r + 1.
Every pair is coprime: gcd(q_i, q_j) reduces by one Euclid step to
gcd(4(i - j) r, q_j), and every prime divisor of 4(i - j) r divides N or is
at most k, while q_j = 1 (mod both).  Each member satisfies
q_j = 2r + 1 (mod 4r), which guarantees the coefficient height of the
expanded polynomial is at least r^(2^(k-1)) / m.

The exact rational height bound has r^(2^(k-1)) in the numerator and is
materialized only while its estimated size fits ``bound_bits_cap``; beyond
that the family still constructs (r, q_j stay cheap) and the bound is
reported in the log domain by callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import CoprimeTuple, validate_tuple
from .errors import CongruenceNotSatisfied, InvalidParameter

# Exact bounds are materialized only below this size; ~2^19 bits keeps the
# decimal rendering of the numerator under a second on CPython.
DEFAULT_BOUND_BITS_CAP = 1 << 19


@dataclass(frozen=True)
class ElementResidue:
    """Residue check of a single element against 2r - 1 / 2r + 1 mod 4r."""

    q: int
    residue: int
    ok: bool
    branch: Optional[str]  # "plus", "minus", or None when the check fails


@dataclass(frozen=True)
class CongruenceReport:
    r: int
    modulus: int
    elements: tuple[ElementResidue, ...]
    ok: bool


@dataclass(frozen=True)
class HeightBound:
    """Exact rational lower bound r^(2^(k-1)) / m and its integer ceiling."""

    bound: Fraction
    floor: int


@dataclass(frozen=True)
class CongruenceFamily:
    N: int
    k: int
    r: int
    rho: CoprimeTuple
    height_bound: Optional[HeightBound]  # None when larger than bound_bits_cap


@dataclass(frozen=True)
class CoprimalityTrace:
    """One Euclid reduction step gcd(q_i, q_j) -> gcd(4(i-j)r, q_j), both verified."""

    r: int
    qi: int
    qj: int
    reduced: int
    gcd_direct: int
    gcd_reduced: int

    @property
    def ok(self) -> bool:
        return self.gcd_direct == self.gcd_reduced == 1


def check_congruence(rho: CoprimeTuple, r: int) -> CongruenceReport:
    """Report, per element, whether q = 2r - 1 or 2r + 1 modulo 4r."""
    if r < 1:
        raise InvalidParameter(f"r must be positive, got {r}")
    modulus = 4 * r
    elements = []
    for q in rho.qs:
        residue = q % modulus
        if residue == (2 * r + 1) % modulus:
            elements.append(ElementResidue(q, residue, True, "plus"))
        elif residue == (2 * r - 1) % modulus:
            elements.append(ElementResidue(q, residue, True, "minus"))
        else:
            elements.append(ElementResidue(q, residue, False, None))
    return CongruenceReport(r, modulus, tuple(elements), all(e.ok for e in elements))


def height_lower_bound(rho: CoprimeTuple, r: int) -> HeightBound:
    """Exact bound r^(2^(k-1)) / m, valid only under the congruence hypothesis."""
    report = check_congruence(rho, r)
    if not report.ok:
        bad = [e.q for e in report.elements if not e.ok]
        raise CongruenceNotSatisfied(
            f"elements {bad} are not congruent to 2r +- 1 mod {report.modulus} (r = {r})"
        )
    bound = Fraction(r ** (1 << (rho.k - 1)), rho.m)
    floor = -(-bound.numerator // bound.denominator)
    return HeightBound(bound, floor)


def family_parameters(N: int, k: int) -> tuple[int, list[int]]:
    """r = N * k! and the member list q_j = (4j - 2) r + 1."""
    if N < 1:
        raise InvalidParameter(f"N must be positive, got {N}")
    if k < 1:
        raise InvalidParameter(f"k must be positive, got {k}")
    r = N * math.factorial(k)
    return r, [(4 * j - 2) * r + 1 for j in range(1, k + 1)]


def congruence_family(N: int, k: int, bound_bits_cap: int = DEFAULT_BOUND_BITS_CAP) -> CongruenceFamily:
    """Build the (N, k) family and re-check every property it is supposed to have."""
    r, qs = family_parameters(N, k)
    rho = validate_tuple(qs)
    if rho.qs[0] <= N:
        raise AssertionError(f"constructed q_1 = {rho.qs[0]} does not exceed N = {N}")
    report = check_congruence(rho, r)
    if not report.ok or any(e.branch != "plus" for e in report.elements):
        raise AssertionError("constructed family must sit on the 2r + 1 branch")
    bound: Optional[HeightBound] = None
    if (1 << (k - 1)) * r.bit_length() <= bound_bits_cap:
        bound = height_lower_bound(rho, r)
    return CongruenceFamily(N, k, r, rho, bound)


def coprimality_trace(N: int, k: int, i: int, j: int) -> CoprimalityTrace:
    """Execute the Euclid reduction for members i > j and verify both gcds directly."""
    if not (1 <= j < i <= k):
        raise InvalidParameter(f"need 1 <= j < i <= k, got i = {i}, j = {j}, k = {k}")
    r, qs = family_parameters(N, k)
    qi, qj = qs[i - 1], qs[j - 1]
    reduced = 4 * (i - j) * r
    # qi - qj = 4(i-j)r, so gcd(qi, qj) = gcd(qi - qj, qj) = gcd(reduced, qj).
    return CoprimalityTrace(r, qi, qj, reduced, math.gcd(qi, qj), math.gcd(reduced, qj))
