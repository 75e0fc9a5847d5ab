"""Minimal square perfecter of n! and the class-restricted theta function.

The minimal perfecter of an integer N is the least m with m*N a perfect
square; it equals the squarefree kernel of N, the product of the primes
dividing N to an odd power.  For N = n! the kernel's logarithm coincides
with theta(n; 2, 1), the theta sum restricted to primes whose exponent in
n! is odd.

Empty residue classes contribute 0 to theta(n; q, a), so the additivity
theta(n) = sum over a of theta(n; q, a) always holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, OutOfRangeError
from .primes import PrimeTable, kahan_sum
from .report import MARGINAL_SLACK, BoundReport
from .valuation import is_prime, valuation_vector

DEFAULT_EXACT_MAX_BITS = 4096

# Coefficient of the deviation bound that drives both perfecter exponents.
_DEV_COEFF = 793 / 200


@dataclass(frozen=True)
class PerfecterResult:
    """Minimal square perfecter of n! in factored and logarithmic form.

    exact_value is the kernel as a big integer when its size fits the
    configured bit cap, else None.
    """

    n: int
    odd_primes: list[int]
    log_value: float
    exact_value: int | None


@dataclass(frozen=True)
class ThetaClassed:
    """theta(n; q, a) for a = 0 .. q-1: log-sums of primes classed by their
    exponent in n! modulo q."""

    n: int
    q: int
    values: list[float]

    def total(self) -> float:
        return math.fsum(self.values)


@dataclass(frozen=True)
class BertrandCheck:
    """The two equivalent statements at one n, plus the identity pieces.

    perfecter_exceeds_one and prime_in_upper_half must agree at every n;
    for n >= 4, singleton_match records that the primes with exponent
    exactly 1 are precisely those in (n/2, n], and theta_gap carries their
    log-sum (equal to theta(n) - theta(n/2)).
    """

    n: int
    perfecter_exceeds_one: bool
    prime_in_upper_half: bool
    log_perfecter: float
    singleton_match: bool | None
    theta_gap: float | None


def squarefree_kernel(factored: Sequence[tuple[int, int]]) -> list[int]:
    """Primes appearing to an odd power in a factored integer.

    Their product is the unique minimal multiplier turning the integer into
    a perfect square.

    Raises:
        DomainError: duplicate primes, non-prime bases, or exponents < 1.
    """
    seen = set()
    odd = []
    for p, e in factored:
        if p in seen:
            raise DomainError(f"duplicate prime {p} in factorization")
        seen.add(p)
        if p < 2 or not is_prime(p):
            raise DomainError(f"base {p} is not prime")
        if e < 1:
            raise DomainError(f"exponent of {p} must be >= 1, got {e}")
        if e % 2 == 1:
            odd.append(p)
    return sorted(odd)


def _odd_exponent_primes(table: PrimeTable, n: int) -> np.ndarray:
    v = valuation_vector(table, n)
    ps = table.primes_up_to(n)
    return ps[(v & 1) == 1]


def perfecter_factorial(table: PrimeTable, n: int, *,
                        exact_max_bits: int = DEFAULT_EXACT_MAX_BITS
                        ) -> PerfecterResult:
    """Minimal m with m * n! a perfect square, for n >= 1.

    log_value is the compensated log-sum over the odd-exponent primes in
    ascending order; the exact product is materialized only while it fits
    in exact_max_bits.

    Raises:
        DomainError: n < 1.
        OutOfRangeError: n beyond the table limit.
    """
    if n < 1:
        raise DomainError(f"perfecter needs n >= 1, got {n}")
    if n > table.limit:
        raise OutOfRangeError(f"n={n} exceeds table limit {table.limit}")
    if n == 1:
        return PerfecterResult(n=1, odd_primes=[], log_value=0.0, exact_value=1)
    odd = _odd_exponent_primes(table, n)
    log_value = kahan_sum(np.log(odd.astype(np.float64)))
    # bit length of the product is log_value/log 2 up to rounding
    if log_value / math.log(2) <= exact_max_bits:
        exact: int | None = 1
        for p in odd:
            exact *= int(p)
        if exact.bit_length() > exact_max_bits:
            exact = None
    else:
        exact = None
    return PerfecterResult(n=n, odd_primes=[int(p) for p in odd],
                           log_value=log_value, exact_value=exact)


def theta_classed(table: PrimeTable, n: int, q: int) -> ThetaClassed:
    """theta restricted by exponent class: values[a] sums log p over primes
    p <= n with v_p(n!) congruent to a mod q.  Empty classes sum to 0.

    Raises:
        DomainError: n < 2 or q not prime.
        OutOfRangeError: n beyond the table limit.
    """
    if n < 2:
        raise DomainError(f"theta_classed needs n >= 2, got {n}")
    if q < 2 or not is_prime(q):
        raise DomainError(f"modulus must be prime, got {q}")
    if n > table.limit:
        raise OutOfRangeError(f"n={n} exceeds table limit {table.limit}")
    v = valuation_vector(table, n)
    ps = table.primes_up_to(n).astype(np.float64)
    residues = v % q
    values = [kahan_sum(np.log(ps[residues == a])) for a in range(q)]
    return ThetaClassed(n=n, q=q, values=values)


def perfecter_bounds(table: PrimeTable, n: int) -> tuple[BoundReport, BoundReport]:
    """Two-sided exponential bounds on the perfecter, compared in log space.

    exp(n/2 - (793/200) n (1/log n + 1/(2 log(n/2))))  <  perfecter(n!)
    and perfecter(n!) < exp(n + (793/200) n / log n), both for n >= 4.

    Raises:
        DomainError: n < 4.
        OutOfRangeError: n beyond the table limit.
    """
    if n < 4:
        raise DomainError(f"perfecter bounds need n >= 4, got {n}")
    log_s = perfecter_factorial(table, n).log_value
    lg = math.log(n)
    lower = n / 2 - _DEV_COEFF * n * (1 / lg + 1 / (2 * math.log(n / 2)))
    upper = n + _DEV_COEFF * n / lg
    rep_lo = BoundReport("S32_lower", n, log_s, lower, log_s - lower,
                         log_s > lower, marginal=abs(log_s - lower) < MARGINAL_SLACK)
    rep_hi = BoundReport("S32_upper", n, log_s, upper, upper - log_s,
                         log_s < upper, marginal=abs(upper - log_s) < MARGINAL_SLACK)
    return rep_lo, rep_hi


def bertrand_equivalence(table: PrimeTable, n: int) -> BertrandCheck:
    """Check perfecter(n!) > 1 against the existence of a prime in (n/2, n].

    For n >= 4 also verifies the supporting identity: the primes with
    exponent exactly 1 in n! are exactly the primes in (n/2, n], and their
    log-sum (computed over the same summands both ways) is theta(n) -
    theta(n/2).

    Raises:
        DomainError: n < 2.
        OutOfRangeError: n beyond the table limit.
    """
    if n < 2:
        raise DomainError(f"needs n >= 2, got {n}")
    if n > table.limit:
        raise OutOfRangeError(f"n={n} exceeds table limit {table.limit}")
    v = valuation_vector(table, n)
    ps = table.primes_up_to(n)
    odd = ps[(v & 1) == 1]
    log_perfecter = kahan_sum(np.log(odd.astype(np.float64)))
    exceeds_one = len(odd) > 0

    # primes strictly above n/2 (real division; n/2 itself is excluded)
    half_idx = int(np.searchsorted(ps, n / 2, side="right"))
    block = ps[half_idx:]
    in_upper_half = len(block) > 0

    if n >= 4:
        singles = ps[v == 1]
        singleton_match = bool(np.array_equal(singles, block))
        theta_gap = kahan_sum(np.log(block.astype(np.float64)))
    else:
        singleton_match = None
        theta_gap = None
    return BertrandCheck(n=n, perfecter_exceeds_one=exceeds_one,
                         prime_in_upper_half=in_upper_half,
                         log_perfecter=log_perfecter,
                         singleton_match=singleton_match, theta_gap=theta_gap)
