"""The piecewise-linear trigonometric system on [0,1]^d.

tri_cos and tri_sin are the 1-periodic triangle waves that play the roles of
cos(2*pi*t) and sin(2*pi*t):

    tri_cos(t) = 4|t - 1/2| - 1        on [0,1], extended 1-periodically
    tri_sin(t) = |2 - 4|t - 1/4|| - 1  on [0,1], extended 1-periodically

Multivariate members are ridge functions tri_cos(alpha . x), tri_sin(alpha . x)
with an integer frequency vector alpha whose first nonzero entry is positive
(the sign normalization that removes even/odd duplicates), plus the constant 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

__all__ = [
    "MAX_L1_NORM",
    "SQRT3",
    "RidgeIndex",
    "BasisFunction",
    "constant",
    "cos_ridge",
    "sin_ridge",
    "tri_cos",
    "tri_sin",
    "evaluate",
    "enumerate_indices",
    "cos_breakpoints",
    "sin_breakpoints",
    "breakpoints",
]

# Periodic wrap is t - floor(t) in doubles; |alpha . x| beyond ~2**52 loses the
# fractional part entirely, so supported frequencies are capped with margin.
MAX_L1_NORM = 2**20

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class RidgeIndex:
    """Integer frequency vector with positive first nonzero entry."""

    alpha: tuple

    def __init__(self, alpha: Union[int, Sequence[int]]):
        if isinstance(alpha, (int, np.integer)):
            alpha = (int(alpha),)
        vec = tuple(int(a) for a in alpha)
        lead = next((a for a in vec if a != 0), 0)
        if lead == 0:
            raise ValueError("frequency vector must be nonzero")
        if lead < 0:
            raise ValueError("first nonzero entry must be positive")
        if sum(abs(a) for a in vec) > MAX_L1_NORM:
            raise ValueError(f"l1 norm above supported cap {MAX_L1_NORM}")
        object.__setattr__(self, "alpha", vec)

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def l1_norm(self) -> int:
        return sum(abs(a) for a in self.alpha)

    def __iter__(self):
        return iter(self.alpha)


@dataclass(frozen=True)
class BasisFunction:
    """One member of the system: the constant, or a cos/sin-like ridge.

    normalized=True multiplies the ridge by sqrt(3), giving unit L2 norm.
    """

    kind: str  # "const" | "cos" | "sin"
    index: Optional[RidgeIndex] = None
    normalized: bool = False

    def __post_init__(self):
        if self.kind not in ("const", "cos", "sin"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "const":
            if self.index is not None:
                raise ValueError("constant carries no frequency index")
        elif self.index is None:
            raise ValueError(f"{self.kind} ridge requires a frequency index")

    @property
    def dim(self) -> Optional[int]:
        return None if self.index is None else self.index.dim

    def __str__(self) -> str:
        if self.kind == "const":
            return "1"
        name = "C" if self.kind == "cos" else "S"
        body = f"{name}:{','.join(str(a) for a in self.index.alpha)}"
        return f"sqrt3*{body}" if self.normalized else body


def constant() -> BasisFunction:
    return BasisFunction("const")


def cos_ridge(alpha, normalized: bool = False) -> BasisFunction:
    index = alpha if isinstance(alpha, RidgeIndex) else RidgeIndex(alpha)
    return BasisFunction("cos", index, normalized)


def sin_ridge(alpha, normalized: bool = False) -> BasisFunction:
    index = alpha if isinstance(alpha, RidgeIndex) else RidgeIndex(alpha)
    return BasisFunction("sin", index, normalized)


def _check_finite(t) -> np.ndarray:
    arr = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("argument must be finite")
    return arr


def tri_cos(t):
    """Triangle-wave cosine: 4|t - 1/2| - 1 on [0,1], 1-periodic, range [-1,1]."""
    arr = _check_finite(t)
    w = arr - np.floor(arr)
    out = 4.0 * np.abs(w - 0.5) - 1.0
    return out if out.ndim else float(out)


def tri_sin(t):
    """Triangle-wave sine: |2 - 4|t - 1/4|| - 1 on [0,1], 1-periodic, range [-1,1]."""
    arr = _check_finite(t)
    w = arr - np.floor(arr)
    out = np.abs(2.0 - 4.0 * np.abs(w - 0.25)) - 1.0
    return out if out.ndim else float(out)


def evaluate(f: BasisFunction, x):
    """Evaluate f at one point or at a batch of points.

    x has shape (d,) for a single point or (n, d) for a batch; plain scalars
    are accepted when d = 1.  The constant evaluates to 1 everywhere.
    """
    pts = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if f.kind == "const":
        # A flat array is read as a batch of scalar points, matching the
        # 1D ridge convenience below.
        n = pts.shape[0]
        return 1.0 if n == 1 else np.ones(n)
    alpha = np.array(f.index.alpha, dtype=np.float64)
    d = alpha.size
    if pts.ndim == 1:
        if pts.size != d:
            if d == 1:
                # 1D convenience: a flat array is a batch of scalar points.
                pts = pts[:, None]
            else:
                raise ValueError(f"point has dimension {pts.size}, index has {d}")
        else:
            pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[1] != d:
        raise ValueError(f"points have dimension {pts.shape[-1]}, index has {d}")
    arg = pts @ alpha
    vals = tri_cos(arg) if f.kind == "cos" else tri_sin(arg)
    vals = np.atleast_1d(vals)
    if f.normalized:
        vals = SQRT3 * vals
    return float(vals[0]) if vals.size == 1 else vals


def enumerate_indices(d: int, max_inf_norm: int) -> List[RidgeIndex]:
    """All sign-normalized frequency vectors with |alpha_i| <= max_inf_norm,
    in lexicographic order.  Deterministic; this is the canonical Gram order.
    """
    if d < 1 or max_inf_norm < 1:
        raise ValueError("dimension and bound must be >= 1")
    rng = range(-max_inf_norm, max_inf_norm + 1)
    out = []
    for alpha in itertools.product(rng, repeat=d):
        lead = next((a for a in alpha if a != 0), 0)
        if lead > 0:
            out.append(RidgeIndex(alpha))
    return out


def cos_breakpoints(k: int) -> np.ndarray:
    """Sorted breakpoints of tri_cos(k t) on [0,1] (kinks at k t in Z/2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return np.arange(2 * k + 1, dtype=np.float64) / (2 * k)


def sin_breakpoints(k: int) -> np.ndarray:
    """Sorted breakpoints of tri_sin(k t) on [0,1], including both endpoints."""
    if k < 1:
        raise ValueError("k must be >= 1")
    interior = (2.0 * np.arange(2 * k) + 1.0) / (4 * k)
    return np.concatenate(([0.0], interior, [1.0]))


def breakpoints(f: BasisFunction) -> np.ndarray:
    """Breakpoints on [0,1] of a univariate member (constant: just 0 and 1)."""
    if f.kind == "const":
        return np.array([0.0, 1.0])
    if f.index.dim != 1:
        raise ValueError("breakpoints are defined for univariate members only")
    k = abs(f.index.alpha[0])
    return cos_breakpoints(k) if f.kind == "cos" else sin_breakpoints(k)
