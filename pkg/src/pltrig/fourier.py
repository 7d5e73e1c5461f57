"""Bridge between the triangle-wave system and the trigonometric system.

Writing c_k(x) = sqrt(2) cos(2 pi k x) and s_k likewise, each normalized
triangle wave expands over odd harmonics,

    sqrt(3) tri_cos_k = mu * sum_m (2m+1)^-2 c_{(2m+1)k},
    sqrt(3) tri_sin_k = mu * sum_m (-1)^m (2m+1)^-2 s_{(2m+1)k},

with mu fixed by mu^2 * pi^4 / 96 = 1.  Inverting the cos expansion gives
c_1 as an odd-harmonic series over the rescaled waves cbar_l = sqrt(3)
tri_cos_l / mu whose coefficients are Moebius values mu(l)/l^2, the unique
bounded solution of the divisor-convolution system implemented in
convolution_identity_check.  product_decomposition_2d extends this to
two-factor products c_{k1}(x_1) c_{k2}(x_2) (and sin variants), expanding
them into ridge functions over [0,1]^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from pltrig import basis
from pltrig.basis import BasisFunction, RidgeIndex
from pltrig.numtheory import moebius

__all__ = [
    "FourierExpansion",
    "DecompositionSeries",
    "mu_constant",
    "fourier_expansion",
    "decomposition_coefficients",
    "evaluate_decomposition",
    "convolution_sum",
    "odd_power_sum",
    "convolution_identity_check",
    "product_decomposition_2d",
    "evaluate_rescaled_terms",
]


def mu_constant() -> float:
    """The normalization mu = sqrt(96) / pi^2 = 0.9927408002342284..."""
    return math.sqrt(96.0) / math.pi**2


def odd_power_sum(exponent: int, terms: int) -> float:
    """Truncated sum over m < terms of (2m+1)^-exponent.

    The full sums behind the normalization and the crude row-sum bound:
    exponent 4 gives pi^4/96, exponent 2 gives pi^2/8 (squared: pi^4/64).
    Summed smallest-first so rounding stays near one ulp.
    """
    if exponent < 2 or terms < 1:
        raise ValueError("need exponent >= 2 and terms >= 1")
    odd = 2.0 * np.arange(terms - 1, -1, -1, dtype=np.float64) + 1.0
    return float(np.sum(odd**-float(exponent)))


@dataclass(frozen=True)
class FourierExpansion:
    """Truncated odd-harmonic expansion of a normalized triangle wave.

    terms lists (2m+1, coefficient): the coefficient multiplies the unit
    trig function c_{(2m+1)k} (cos parity) or s_{(2m+1)k} (sin parity).
    """

    base_frequency: RidgeIndex
    parity: str  # "cos_like" | "sin_like"
    terms: Tuple[Tuple[int, float], ...]

    def partial_norm(self) -> float:
        """L2 norm of the truncated expansion (orthonormal harmonics)."""
        return math.sqrt(sum(c * c for _, c in self.terms))


def fourier_expansion(f: BasisFunction, truncation: int) -> FourierExpansion:
    """First truncation terms of the expansion of sqrt(3) * f.

    f must be a cos or sin member (any dimension; harmonics multiply its
    frequency vector).  Magnitude of the (2m+1)-harmonic is mu / (2m+1)^2;
    the sin expansion alternates in sign.
    """
    if f.kind == "const":
        raise ValueError("the constant has no odd-harmonic expansion")
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    mu = mu_constant()
    terms = []
    for m in range(truncation):
        h = 2 * m + 1
        coef = mu / h**2
        if f.kind == "sin" and m % 2:
            coef = -coef
        terms.append((h, coef))
    parity = "cos_like" if f.kind == "cos" else "sin_like"
    return FourierExpansion(f.index, parity, tuple(terms))


@dataclass(frozen=True)
class DecompositionSeries:
    """Odd-harmonic series for c_1 or s_1 over the rescaled triangle waves.

    terms lists (l, coefficient) for odd l only; the coefficient is exact
    (mu(l)/l^2 for cos, alternating for sin) and multiplies the rescaled
    wave sqrt(3) tri_cos_l / mu (resp. tri_sin).  Coefficients at
    non-square-free odd l are exact zeros.
    """

    target: str  # "cos" | "sin"
    terms: Tuple[Tuple[int, Fraction], ...]


def decomposition_coefficients(target: str, truncation: int) -> DecompositionSeries:
    """Coefficients of the odd-harmonic inverse series up to harmonic truncation."""
    if target not in ("cos", "sin"):
        raise ValueError("target must be 'cos' or 'sin'")
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    terms = []
    for ell in range(1, truncation + 1, 2):
        coef = Fraction(moebius(ell), ell * ell)
        if target == "sin" and ((ell - 1) // 2) % 2:
            coef = -coef
        terms.append((ell, coef))
    return DecompositionSeries(target=target, terms=tuple(terms))


def evaluate_decomposition(series: DecompositionSeries, x) -> np.ndarray:
    """Pointwise partial sum of a decomposition series on [0,1]."""
    pts = np.atleast_1d(np.asarray(x, dtype=np.float64))
    wave = basis.tri_cos if series.target == "cos" else basis.tri_sin
    scale = basis.SQRT3 / mu_constant()
    out = np.zeros_like(pts)
    for ell, coef in series.terms:
        if coef != 0:
            out += float(coef) * scale * np.atleast_1d(wave(ell * pts))
    return out


def convolution_sum(n: int) -> int:
    """sum over factorizations l*m = n of beta_l * alpha_m, in exact integers.

    alpha is the odd indicator, beta the odd-supported Moebius sequence; the
    sum is 1 at n = 1 and 0 for every n >= 2, which is what makes the inverse
    decomposition work.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            lo, hi = d, n // d
            if lo % 2 and hi % 2:
                total += moebius(lo)
                if lo != hi:
                    total += moebius(hi)
        d += 1
    return total


def convolution_identity_check(n: int) -> bool:
    """Exact check of the divisor-convolution identity at n."""
    return convolution_sum(n) == (1 if n == 1 else 0)


def product_decomposition_2d(
    kinds: Sequence[Optional[str]],
    frequencies: Sequence[int],
    truncation: int,
) -> List[Tuple[BasisFunction, float]]:
    """Expand a product of per-coordinate trig factors into 2D ridge waves.

    kinds is a pair from {"cos", "sin", None} (None: that coordinate carries
    no factor); frequencies the matching positive integers.  At most two
    active factors are supported.  Returns aggregated (member, coefficient)
    pairs, coefficients applying to the rescaled waves as in
    evaluate_rescaled_terms; member indices are sign-normalized, which flips
    the coefficient of sin terms.
    """
    if len(kinds) != 2 or len(frequencies) != 2:
        raise ValueError("kinds and frequencies must be pairs")
    active = [
        (pos, kind, int(frequencies[pos]))
        for pos, kind in enumerate(kinds)
        if kind is not None
    ]
    if not 1 <= len(active) <= 2:
        raise ValueError("need one or two active factors")
    for _, kind, k in active:
        if kind not in ("cos", "sin"):
            raise ValueError(f"unknown kind {kind!r}")
        if k < 1:
            raise ValueError("frequencies must be positive")
    n_sin = sum(1 for _, kind, _ in active if kind == "sin")
    n_fac = len(active)
    # Sign-vector prefactor times the 1/sqrt(2) that converts each expanded
    # harmonic into a rescaled triangle wave.
    prefactor = (-1.0) ** (n_sin // 2) / 2.0 ** (n_fac / 2.0) / math.sqrt(2.0)
    out_kind = "cos" if n_sin % 2 == 0 else "sin"

    agg: dict = {}
    sign_choices = [(-1, 1)] * n_fac
    for ell in range(1, truncation + 1, 2):
        mu_l = moebius(ell)
        if mu_l == 0:
            continue
        base = prefactor * mu_l / ell**2
        if out_kind == "sin" and ((ell - 1) // 2) % 2:
            base = -base
        for signs in _product(sign_choices):
            vec = [0, 0]
            sin_weight = 1
            for (pos, kind, k), e in zip(active, signs):
                vec[pos] = ell * e * k
                if kind == "sin":
                    sin_weight *= e
            coef = base * sin_weight
            lead = next(v for v in vec if v != 0)
            if lead < 0:
                vec = [-v for v in vec]
                if out_kind == "sin":
                    coef = -coef
            key = tuple(vec)
            agg[key] = agg.get(key, 0.0) + coef
    members = []
    for key in sorted(agg):
        fn = BasisFunction(out_kind, RidgeIndex(key))
        members.append((fn, agg[key]))
    return members


def _product(choices):
    if len(choices) == 1:
        for a in choices[0]:
            yield (a,)
    else:
        for a in choices[0]:
            for b in choices[1]:
                yield (a, b)


def evaluate_rescaled_terms(
    terms: Sequence[Tuple[BasisFunction, float]], x
) -> np.ndarray:
    """Pointwise sum of coefficient * sqrt(3)/mu * member over a term list."""
    pts = np.asarray(x, dtype=np.float64)
    scale = basis.SQRT3 / mu_constant()
    out = np.zeros(pts.shape[0] if pts.ndim > 0 else 1)
    for fn, coef in terms:
        if coef != 0.0:
            out += coef * scale * np.atleast_1d(basis.evaluate(fn, pts))
    return out
