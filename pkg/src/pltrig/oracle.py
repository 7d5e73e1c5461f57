"""Independent numerical-integration oracle for inner products on [0,1]^d.

The oracle validates the analytic inner-product kernel without sharing any
code with it.  In 1D the product of two members is piecewise quadratic, so a
three-point (Simpson) rule on the merged breakpoint partition is exact up to
rounding.  In d = 2, 3 the rule integrates one axis exactly the same way
(piece-adapted Gauss) and applies a composite two-point Gauss-Legendre rule
with a uniform mesh to the remaining axes.

Accuracy of the multivariate rule.  Both factors have integer frequency
vectors, so the integrand is 1-periodic in every coordinate and its Fourier
frequencies are r*alpha + s*beta with odd r, s.  After the exact inner
integration only frequencies with r*alpha_j + s*beta_j = 0 on the sliced axis
j survive.  A uniform composite rule with n cells per axis integrates
exp(2*pi*i k.y) exactly unless every component of k is divisible by n, so
choosing n prime and larger than every |q*alpha_i - p*beta_i| / gcd(p, q)
(p = alpha_j, q = beta_j) forces the first aliased term to odd index >= n.
The Fourier coefficients decay like 1/r^2, leaving an error below roughly
n^-3, which the default mesh keeps under 1e-8.

Per-piece contributions are accumulated in a fixed order (numpy pairwise
sums, math.fsum for the 1D piece list), so results are deterministic and the
rounding stays within a couple of ulps per term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from pltrig import basis
from pltrig.basis import BasisFunction

__all__ = [
    "QuadratureSpec",
    "auto_spec",
    "inner_product_oracle",
    "inner_product_oracle_1d",
    "inner_product_oracle_nd",
    "project_oracle",
    "integrate_nd",
]

# 2-point Gauss-Legendre nodes on [-1, 1]; order 4, exact through cubics.
_GL2 = np.array([-1.0, 1.0]) / math.sqrt(3.0)
# 10-point nodes/weights for smooth-target projections.
_GL10_X, _GL10_W = np.polynomial.legendre.leggauss(10)

_MIN_CELLS = 67  # floor for the per-axis mesh; keeps the alias bound under 1e-6


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution and rule of one oracle evaluation.

    points_per_axis counts Gauss nodes per axis (two per mesh cell) and is
    meaningful for the composite rule only; the exact piecewise rule has no
    mesh.  reported_error_bound is an a-priori bound on the absolute
    quadrature error, from the aliasing analysis in the module docstring.
    """

    dimension: int
    points_per_axis: int
    rule: str  # "exact_piecewise" | "composite_gauss"
    reported_error_bound: float

    def __post_init__(self):
        if self.rule not in ("exact_piecewise", "composite_gauss"):
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.rule == "exact_piecewise" and self.dimension != 1:
            raise ValueError("exact_piecewise rule is 1D only")


def _next_prime(n: int) -> int:
    cand = max(n, 2)
    while True:
        if all(cand % p for p in range(2, math.isqrt(cand) + 1)):
            return cand
        cand += 1


def _pair_frequencies(f: BasisFunction, g: BasisFunction):
    dims = {fn.index.dim for fn in (f, g) if fn.index is not None}
    if len(dims) > 1:
        raise ValueError("mixed dimensions")
    d = dims.pop() if dims else 1
    zero = (0,) * d
    alpha = f.index.alpha if f.index is not None else zero
    beta = g.index.alpha if g.index is not None else zero
    return d, alpha, beta


def _slice_axis(alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Axis for the exact inner integration.

    Prefer an axis where both frequencies are nonzero (moves all kinks of
    both factors); otherwise any nonzero coordinate, where the inner integral
    sweeps whole periods of the only kinked factor and vanishes identically.
    """
    both = [min(abs(a), abs(b)) for a, b in zip(alpha, beta)]
    if max(both) > 0:
        return int(np.argmax(both))
    mags = [abs(a) + abs(b) for a, b in zip(alpha, beta)]
    return int(np.argmax(mags))


def auto_spec(f: BasisFunction, g: BasisFunction) -> QuadratureSpec:
    """Mesh choice for a pair: prime cell count beating the alias frequency."""
    d, alpha, beta = _pair_frequencies(f, g)
    if d == 1:
        return QuadratureSpec(1, 0, "exact_piecewise", 1e-13)
    j = _slice_axis(alpha, beta)
    p, q = alpha[j], beta[j]
    g_ = math.gcd(abs(p), abs(q))
    if g_ == 0:
        v_max = 0
    else:
        v_max = max(
            (abs(q * alpha[i] - p * beta[i]) // g_ for i in range(d) if i != j),
            default=0,
        )
    cells = _next_prime(max(_MIN_CELLS, v_max + 1))
    # First aliased Fourier term has odd index >= cells; 1/t^4 tail.
    bound = 0.7 * (cells**-4 + cells**-3 / 6.0) + 1e-12
    return QuadratureSpec(d, 2 * cells, "composite_gauss", bound)


def _kink_positions(p: int, offset: np.ndarray, phase: float) -> np.ndarray:
    """x in [0,1] where u = p*x + offset crosses a kink at u = m/2 + phase.

    Padded to a fixed width of 2|p|+1 candidates per row; out-of-range
    candidates are clipped to the endpoints and create zero-width pieces.
    """
    if p == 0:
        return np.empty((offset.shape[0], 0))
    q = 2 * abs(p)
    shifted = 2.0 * (offset - phase) * (1.0 if p > 0 else -1.0)
    m0 = np.ceil(shifted)
    k = np.arange(q + 1, dtype=np.float64)
    x = (m0[:, None] + k[None, :] - shifted[:, None]) / q
    return np.clip(x, 0.0, 1.0)


class _Factor:
    """Pointwise evaluation and kink phase of one factor."""

    def __init__(self, fn: BasisFunction):
        scale = basis.SQRT3 if fn.normalized else 1.0
        if fn.kind == "const":
            self.eval = lambda u: np.full_like(u, scale)
            self.phase = 0.0
            return
        wave = basis.tri_cos if fn.kind == "cos" else basis.tri_sin
        self.eval = wave if scale == 1.0 else (lambda u: scale * wave(u))
        self.phase = 0.25 if fn.kind == "sin" else 0.0


def _inner_exact(
    fa: _Factor, fb: _Factor, p: int, q: int, a: np.ndarray, b: np.ndarray
) -> np.ndarray:
    """Exact integral over x in [0,1] of fa(p x + a) fb(q x + b), vectorized
    over the offset vectors a, b.  The integrand is piecewise quadratic on the
    merged kink partition, so the per-piece three-point rule commits rounding
    error only.
    """
    n = a.shape[0]
    ends = np.broadcast_to(np.array([0.0, 1.0]), (n, 2))
    xs = np.concatenate(
        [ends, _kink_positions(p, a, fa.phase), _kink_positions(q, b, fb.phase)],
        axis=1,
    )
    xs.sort(axis=1)
    xl, xr = xs[:, :-1], xs[:, 1:]
    mid = 0.5 * (xl + xr)
    w = xr - xl
    av, bv = a[:, None], b[:, None]

    def h(x):
        return fa.eval(p * x + av) * fb.eval(q * x + bv)

    return np.sum(w / 6.0 * (h(xl) + 4.0 * h(mid) + h(xr)), axis=1)


def _canonical_order(f: BasisFunction, g: BasisFunction):
    """Deterministic argument order so oracle(f, g) == oracle(g, f) exactly."""

    def key(fn: BasisFunction):
        idx = fn.index.alpha if fn.index is not None else ()
        return (fn.kind, idx, fn.normalized)

    return (f, g) if key(f) <= key(g) else (g, f)


def inner_product_oracle_1d(f: BasisFunction, g: BasisFunction) -> float:
    """Integral over [0,1] of f*g by exact piecewise integration.

    Both members must be univariate.  Error is rounding only (<= 1e-13).
    """
    for fn in (f, g):
        if fn.index is not None and fn.index.dim != 1:
            raise ValueError("inner_product_oracle_1d requires univariate members")
    f, g = _canonical_order(f, g)
    cuts = np.union1d(basis.breakpoints(f), basis.breakpoints(g))
    xl, xr = cuts[:-1], cuts[1:]
    mid = 0.5 * (xl + xr)
    w = xr - xl

    def h(x):
        return np.atleast_1d(basis.evaluate(f, x)) * np.atleast_1d(basis.evaluate(g, x))

    pieces = w / 6.0 * (h(xl) + 4.0 * h(mid) + h(xr))
    return math.fsum(pieces.tolist())


def _outer_nodes(cells: int) -> np.ndarray:
    i = np.arange(cells, dtype=np.float64)
    return ((i[:, None] + 0.5 + 0.5 * _GL2[None, :]) / cells).ravel()


def inner_product_oracle_nd(
    f: BasisFunction, g: BasisFunction, spec: Optional[QuadratureSpec] = None
) -> float:
    """Integral over [0,1]^d (d = 2 or 3) of f*g.

    One axis is integrated exactly piece by piece; the others by the
    composite Gauss rule of the spec.  Defaults to auto_spec(f, g).
    """
    d, alpha, beta = _pair_frequencies(f, g)
    if d == 1:
        return inner_product_oracle_1d(f, g)
    if d not in (2, 3):
        raise ValueError(f"oracle supports d in {{1, 2, 3}}, got {d}")
    for vec in (alpha, beta):
        if sum(abs(a) for a in vec) > 32:
            raise ValueError("oracle frequency cap ||alpha||_1 <= 32 exceeded")
    f, g = _canonical_order(f, g)
    d, alpha, beta = _pair_frequencies(f, g)
    if spec is None:
        spec = auto_spec(f, g)
    if spec.rule != "composite_gauss" or spec.dimension != d:
        raise ValueError("spec does not match a composite multivariate rule")
    cells = max(1, spec.points_per_axis // 2)
    j = _slice_axis(alpha, beta)
    outer = [i for i in range(d) if i != j]
    nodes = _outer_nodes(cells)
    if d == 2:
        a = alpha[outer[0]] * nodes
        b = beta[outer[0]] * nodes
    else:
        a = np.add.outer(alpha[outer[0]] * nodes, alpha[outer[1]] * nodes).ravel()
        b = np.add.outer(beta[outer[0]] * nodes, beta[outer[1]] * nodes).ravel()
    vals = _inner_exact(_Factor(f), _Factor(g), alpha[j], beta[j], a, b)
    return float(np.sum(vals)) / (2 * cells) ** (d - 1)


def inner_product_oracle(
    f: BasisFunction, g: BasisFunction, spec: Optional[QuadratureSpec] = None
) -> float:
    """Dimension-dispatching convenience wrapper."""
    d, _, _ = _pair_frequencies(f, g)
    if d == 1:
        return inner_product_oracle_1d(f, g)
    return inner_product_oracle_nd(f, g, spec)


def _piecewise_gauss_1d(fn: Callable, cuts: np.ndarray) -> float:
    """10-point Gauss per piece of a partition; near-exact when the integrand
    is smooth times affine on each piece."""
    xl, xr = cuts[:-1], cuts[1:]
    mid, half = 0.5 * (xl + xr), 0.5 * (xr - xl)
    x = mid[:, None] + half[:, None] * _GL10_X[None, :]
    vals = np.asarray(fn(x.ravel())).reshape(x.shape)
    return math.fsum((half * (vals @ _GL10_W)).tolist())


def project_oracle(
    target: Union[BasisFunction, Callable],
    g: BasisFunction,
    spec: Optional[QuadratureSpec] = None,
    dimension: Optional[int] = None,
) -> float:
    """Approximate integral of target * g over [0,1]^d.

    target is either a system member (dispatching to the exact oracle) or a
    pointwise-evaluable callable taking an (n, d) point array ((n,) in 1D).
    Smooth targets are integrated by 10-point Gauss on g's piece partition
    along one axis, so the error is set by the target's smoothness, not by
    g's kinks.
    """
    if isinstance(target, BasisFunction):
        return inner_product_oracle(target, g, spec)
    if g.index is not None:
        d = g.index.dim
    elif dimension is not None:
        d = dimension
    elif spec is not None:
        d = spec.dimension
    else:
        d = 1
    if d == 1:
        cuts = basis.breakpoints(g)
        gv = _Factor(g)
        k = float(g.index.alpha[0]) if g.index is not None else 0.0
        return _piecewise_gauss_1d(
            lambda x: np.asarray(target(x)) * gv.eval(k * x), cuts
        )
    if d not in (2, 3):
        raise ValueError(f"project_oracle supports d in {{1, 2, 3}}, got {d}")
    cells = max(1, spec.points_per_axis // 2) if spec is not None else 127
    return _project_nd(target, g, d, cells)


def _project_nd(target: Callable, g: BasisFunction, d: int, cells: int) -> float:
    beta = g.index.alpha if g.index is not None else (0,) * d
    j = int(np.argmax([abs(b) for b in beta]))
    outer = [i for i in range(d) if i != j]
    nodes = _outer_nodes(cells)
    mesh = np.meshgrid(*([nodes] * (d - 1)), indexing="ij")
    outer_pts = np.stack([m.ravel() for m in mesh], axis=-1)
    n_out = outer_pts.shape[0]
    gv = _Factor(g)
    q = beta[j]
    b = outer_pts @ np.array([beta[i] for i in outer], dtype=np.float64)
    ends = np.broadcast_to(np.array([0.0, 1.0]), (n_out, 2))
    xs = np.concatenate([ends, _kink_positions(q, b, gv.phase)], axis=1)
    xs.sort(axis=1)
    xl, xr = xs[:, :-1], xs[:, 1:]
    mid, half = 0.5 * (xl + xr), 0.5 * (xr - xl)
    total = np.zeros(n_out)
    pts = np.empty((n_out, xs.shape[1] - 1, d))
    for col, i in enumerate(outer):
        pts[:, :, i] = outer_pts[:, col : col + 1]
    for k in range(_GL10_X.size):
        xk = mid + half * _GL10_X[k]
        pts[:, :, j] = xk
        tv = np.asarray(target(pts.reshape(-1, d))).reshape(n_out, -1)
        total += _GL10_W[k] * np.sum(half * tv * gv.eval(q * xk + b[:, None]), axis=1)
    return float(np.sum(total)) / (2 * cells) ** (d - 1)


def integrate_nd(fn: Callable, d: int, cells: int = 311) -> float:
    """Composite Gauss integral of a callable over [0,1]^d, d <= 3.

    fn takes an (n, d) array ((n,) when d = 1) and returns n values.  Used
    for residual norms of projections; prime cell counts avoid aliasing
    against integer-frequency integrands.
    """
    nodes = _outer_nodes(cells)
    w = 1.0 / (2 * cells)
    if d == 1:
        return float(np.sum(fn(nodes))) * w
    if d == 2:
        mesh = np.meshgrid(nodes, nodes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
        return float(np.sum(fn(pts))) * w**2
    if d == 3:
        grid2 = np.meshgrid(nodes, nodes, indexing="ij")
        flat2 = np.stack([m.ravel() for m in grid2], axis=-1)
        block = np.empty((flat2.shape[0], 3))
        block[:, 1:] = flat2
        total = 0.0
        for x0 in nodes:
            block[:, 0] = x0
            total += float(np.sum(fn(block)))
        return total * w**3
    raise ValueError("integrate_nd supports d <= 3")
