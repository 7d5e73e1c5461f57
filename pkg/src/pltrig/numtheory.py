"""Exact integer arithmetic: Moebius function, primitive vectors, odd ratios,
and partial Euler products.

Everything here is pure integer / rational arithmetic.  Floating point never
enters, so the results are usable as ground truth by the analytic inner-product
kernel and its tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
import numpy as np

__all__ = [
    "OddRatio",
    "PrimitiveDecomposition",
    "gcd",
    "two_adic_valuation",
    "moebius",
    "primes_up_to",
    "primitive_decompose",
    "odd_ratio",
    "euler_product_partial",
]

# Moebius values are looked up from a sieve below this bound and computed by
# trial division above it.  Rebuilt only if a larger bound is requested.
DEFAULT_SIEVE_BOUND = 10**6

_mu_table: Optional[np.ndarray] = None
_mu_bound = 0


def gcd(i: int, j: int) -> int:
    """Greatest common divisor of two positive integers."""
    if i < 1 or j < 1:
        raise ValueError("gcd requires positive integers")
    return math.gcd(i, j)


def two_adic_valuation(n: int) -> int:
    """Largest e with 2**e dividing n (n >= 1)."""
    if n < 1:
        raise ValueError("two_adic_valuation requires n >= 1")
    return (n & -n).bit_length() - 1


def _build_mu_table(bound: int) -> np.ndarray:
    # Linear-space Moebius sieve: divide out each prime once, zero multiples
    # of p**2.
    mu = np.ones(bound + 1, dtype=np.int8)
    primality = np.ones(bound + 1, dtype=bool)
    primality[:2] = False
    for p in range(2, bound + 1):
        if primality[p]:
            primality[2 * p :: p] = False
            mu[p::p] *= -1
            sq = p * p
            if sq <= bound:
                mu[sq::sq] = 0
    mu[0] = 0
    return mu


def moebius(n: int, sieve_bound: int = DEFAULT_SIEVE_BOUND) -> int:
    """Moebius function: (-1)**k for square-free n with k prime factors, else 0."""
    global _mu_table, _mu_bound
    if n < 1:
        raise ValueError("moebius requires n >= 1")
    if n <= sieve_bound:
        if _mu_table is None or n > _mu_bound:
            _mu_bound = sieve_bound
            _mu_table = _build_mu_table(_mu_bound)
        return int(_mu_table[n])
    # Trial division fallback for values above the sieve.
    m = n
    k = 0
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            k += 1
        d += 1 if d == 2 else 2
    if m > 1:
        k += 1
    return -1 if k % 2 else 1


def primes_up_to(bound: int) -> np.ndarray:
    """All primes <= bound, ascending (empty array for bound < 2)."""
    if bound < 2:
        return np.array([], dtype=np.int64)
    primality = np.ones(bound + 1, dtype=bool)
    primality[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if primality[p]:
            primality[p * p :: p] = False
    return np.nonzero(primality)[0].astype(np.int64)


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """A nonzero integer vector split as content * direction.

    direction has coprime entries and positive first nonzero entry; flipped
    records whether the input had to be negated to achieve that.
    """

    direction: tuple
    content: int
    flipped: bool

    def reconstruct(self) -> tuple:
        """content * direction, i.e. the sign-normalized input."""
        return tuple(self.content * a for a in self.direction)


@dataclass(frozen=True)
class OddRatio:
    """A ratio of two coprime odd positive integers."""

    p_num: int
    q_den: int

    def __post_init__(self):
        if self.p_num < 1 or self.q_den < 1:
            raise ValueError("odd ratio parts must be positive")
        if self.p_num % 2 == 0 or self.q_den % 2 == 0:
            raise ValueError("odd ratio parts must be odd")
        if math.gcd(self.p_num, self.q_den) != 1:
            raise ValueError("odd ratio parts must be coprime")

    def as_fraction(self) -> Fraction:
        return Fraction(self.p_num, self.q_den)


def primitive_decompose(alpha: Sequence[int]) -> PrimitiveDecomposition:
    """Factor a nonzero integer vector into content * primitive direction.

    The direction is sign-normalized so its first nonzero entry is positive.
    """
    vec = tuple(int(a) for a in alpha)
    lead = next((a for a in vec if a != 0), 0)
    if lead == 0:
        raise ValueError("zero vector has no primitive decomposition")
    flipped = lead < 0
    if flipped:
        vec = tuple(-a for a in vec)
    content = 0
    for a in vec:
        content = math.gcd(content, abs(a))
    direction = tuple(a // content for a in vec)
    return PrimitiveDecomposition(direction=direction, content=content, flipped=flipped)


def odd_ratio(alpha: Sequence[int], beta: Sequence[int]) -> Optional[OddRatio]:
    """Co-linearity test returning t with alpha = t * beta when t is a
    quotient of two odd positive integers, else None.

    Both inputs must be sign-normalized (first nonzero entry positive).  The
    test compares primitive directions, so no floating-point ratios occur.
    """
    da = primitive_decompose(alpha)
    db = primitive_decompose(beta)
    if da.flipped or db.flipped:
        raise ValueError("odd_ratio arguments must have positive leading entry")
    if da.direction != db.direction:
        return None
    g = math.gcd(da.content, db.content)
    num = da.content // g
    den = db.content // g
    if num % 2 == 0 or den % 2 == 0:
        return None
    return OddRatio(p_num=num, q_den=den)


def euler_product_partial(
    prime_bound: int, include_two: bool = True
) -> Union[Fraction, mpmath.mpf]:
    """Partial product over primes p <= prime_bound of (1 + p^-2)/(1 - p^-2).

    Exact rational below 10**4; 30-digit mpmath beyond (the exact numerators
    grow to thousands of digits there for no benefit).  The full product
    converges to 5/2; excluding p = 2 it converges to 3/2.
    """
    if prime_bound < 2:
        raise ValueError("prime_bound must be >= 2")
    primes = primes_up_to(prime_bound)
    if not include_two:
        primes = primes[primes != 2]
    if prime_bound <= 10**4:
        prod = Fraction(1)
        for p in primes:
            p2 = int(p) * int(p)
            prod *= Fraction(p2 + 1, p2 - 1)
        return prod
    with mpmath.workdps(30):
        acc = mpmath.mpf(1)
        for p in primes:
            p2 = mpmath.mpf(int(p)) ** 2
            acc *= (p2 + 1) / (p2 - 1)
        return acc
