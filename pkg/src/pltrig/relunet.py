"""Exact ReLU feed-forward realizations of the triangle-wave system.

A network of width W and depth L is a chain of L+1 affine maps with ReLU
between consecutive maps (never after the last): d -> W -> ... -> W -> 1.

The constructions run on the classic hat-function engine.  The hat
H(x) = min(2x, 2-2x) on [0,1] is a width-2 depth-1 network, m-fold
self-composition gives a 2^m-tooth sawtooth, and

    tri_cos(2^m x) = (1 - 2 H)(H^(m)(x)),   x in [0,1],

so frequency 2^m costs depth m+1: the (1 - 2H) is fused into the output
affine map.  Arbitrary frequency j folds the dilation j/2^ceil(log2 j) into
the first layer; sin variants shift phase by composing one extra dyadic
input map; ridge functions tri_cos(alpha . x) rescale alpha . x, which lives
in [-||alpha||_1, ||alpha||_1], into [0,1] at the cost of one extra halving.
All weights stay dyadic rationals bounded by 8, so they are exact in floats.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from pltrig.basis import RidgeIndex

__all__ = [
    "AffineLayer",
    "ReluNetwork",
    "BoundReport",
    "ReluNetParseError",
    "evaluate",
    "hat_network",
    "identity_network",
    "compose",
    "pad_depth",
    "compile_cos_univariate",
    "compile_sin_univariate",
    "compile_cos_ridge",
    "compile_sin_ridge",
    "compile_combination",
    "bound_report",
    "serialize",
    "deserialize",
]


@dataclass(frozen=True, eq=False)
class AffineLayer:
    """One affine map x -> matrix @ x + bias."""

    matrix: np.ndarray
    bias: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, AffineLayer):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix) and np.array_equal(
            self.bias, other.bias
        )

    def __post_init__(self):
        mat = np.atleast_2d(np.asarray(self.matrix, dtype=np.float64))
        b = np.atleast_1d(np.asarray(self.bias, dtype=np.float64))
        if mat.shape[0] != b.shape[0]:
            raise ValueError("bias length must match matrix rows")
        if not (np.all(np.isfinite(mat)) and np.all(np.isfinite(b))):
            raise ValueError("layer entries must be finite")
        mat.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "bias", b)

    @property
    def out_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def in_dim(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True, eq=False)
class ReluNetwork:
    """Width-W depth-L ReLU network: L+1 affine maps, ReLU after all but the
    last.  Hidden widths must all equal W and the output must be scalar."""

    input_dim: int
    layers: Tuple[AffineLayer, ...]

    def __eq__(self, other):
        if not isinstance(other, ReluNetwork):
            return NotImplemented
        return self.input_dim == other.input_dim and self.layers == other.layers

    def __post_init__(self):
        layers = tuple(self.layers)
        if len(layers) < 2:
            raise ValueError("a network needs at least two affine maps (depth 1)")
        if layers[0].in_dim != self.input_dim:
            raise ValueError("first layer input does not match input_dim")
        w = layers[0].out_dim
        for prev, nxt in zip(layers, layers[1:]):
            if nxt.in_dim != prev.out_dim:
                raise ValueError("adjacent layer dimensions do not chain")
        for hidden in layers[1:-1]:
            if hidden.out_dim != w:
                raise ValueError("hidden widths must all equal the first")
        if layers[-1].out_dim != 1:
            raise ValueError("output layer must produce a scalar")
        object.__setattr__(self, "layers", layers)

    @property
    def width(self) -> int:
        return self.layers[0].out_dim

    @property
    def depth(self) -> int:
        return len(self.layers) - 1


@dataclass(frozen=True)
class BoundReport:
    width: int
    depth: int
    max_abs_weight: float
    max_abs_bias: float


def evaluate(net: ReluNetwork, x) -> Union[float, np.ndarray]:
    """Network value at a point of shape (d,) or a batch of shape (n, d)."""
    pts = np.asarray(x, dtype=np.float64)
    single = pts.ndim <= 1
    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        if net.input_dim == 1 and pts.size != 1:
            single = False
            pts = pts[:, None]  # batch of scalar inputs
        else:
            pts = pts[None, :]
    if pts.shape[1] != net.input_dim:
        raise ValueError(
            f"point dimension {pts.shape[1]} does not match input_dim {net.input_dim}"
        )
    act = pts
    for layer in net.layers[:-1]:
        act = np.maximum(act @ layer.matrix.T + layer.bias, 0.0)
    out = act @ net.layers[-1].matrix.T + net.layers[-1].bias
    return float(out[0, 0]) if single else out[:, 0]


# Hat-chain building blocks.  After the two-channel split (ReLU(t),
# ReLU(t - 1/2)) of a value t in [0,1], the row (2, -4) reconstitutes H(t).
_HAT_MIDDLE = ([[2.0, -4.0], [2.0, -4.0]], [0.0, -0.5])
_COS_OUTPUT = ([[-4.0, 8.0]], [1.0])  # fuses tri_cos = 1 - 2H


def hat_network() -> ReluNetwork:
    """The hat function on [0,1]: width 2, depth 1, weights {1, 2, -4, -1/2}."""
    return ReluNetwork(
        1,
        (
            AffineLayer([[1.0], [1.0]], [0.0, -0.5]),
            AffineLayer([[2.0, -4.0]], [0.0]),
        ),
    )


def identity_network() -> ReluNetwork:
    """id(x) = ReLU(x) - ReLU(-x); exact on all of R, width 2, depth 1."""
    return ReluNetwork(
        1,
        (
            AffineLayer([[1.0], [-1.0]], [0.0, 0.0]),
            AffineLayer([[1.0, -1.0]], [0.0]),
        ),
    )


def _hat_chain(
    first_matrix: np.ndarray, first_bias: np.ndarray, stages: int
) -> ReluNetwork:
    """Network evaluating tri_cos(2^stages * t(x)) where the first layer
    encodes the two-channel split of t(x) = w . x + b, t(x) in [0,1]."""
    layers = [AffineLayer(first_matrix, first_bias)]
    for _ in range(stages - 1):
        layers.append(AffineLayer(*_HAT_MIDDLE))
    layers.append(AffineLayer(*_COS_OUTPUT))
    return ReluNetwork(int(np.atleast_2d(first_matrix).shape[1]), tuple(layers))


def _split_first(w: np.ndarray, b0: float):
    """First layer computing (ReLU(t), ReLU(t - 1/2)) for t = w . x + b0."""
    w = np.atleast_1d(np.asarray(w, dtype=np.float64))
    return np.vstack([w, w]), np.array([b0, b0 - 0.5])


def _ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("argument must be >= 1")
    return (n - 1).bit_length()


def compile_cos_univariate(j: int) -> ReluNetwork:
    """Network equal to tri_cos(j x) on [0,1]: width 2, depth ceil(log2 j)+1."""
    if j < 1:
        raise ValueError("frequency must be >= 1")
    m = _ceil_log2(j)
    scale = j / 2.0**m  # in (1/2, 1], folded into the first layer
    mat, bias = _split_first([scale], 0.0)
    return _hat_chain(mat, bias, m + 1)


def compile_sin_univariate(j: int) -> ReluNetwork:
    """Network equal to tri_sin(j x) on [0,1]: width 2, depth ceil(log2 j)+2.

    Uses tri_sin(j x) = tri_cos(2^(m+1) u) with u = j 2^-(m+1) x + 3/8 2^-m,
    which keeps u inside [0,1].
    """
    if j < 1:
        raise ValueError("frequency must be >= 1")
    m = _ceil_log2(j)
    scale = j / 2.0 ** (m + 1)
    shift = 0.375 / 2.0**m
    mat, bias = _split_first([scale], shift)
    return _hat_chain(mat, bias, m + 2)


def compile_cos_ridge(alpha) -> ReluNetwork:
    """Network equal to tri_cos(alpha . x) on [0,1]^d: width 2, depth
    ceil(log2 ||alpha||_1) + 2.

    alpha . x lies in [-A, A] with A = ||alpha||_1; mapping it through
    u = 2^-(m+1) alpha . x + 1/2 with m = ceil(log2 A) lands in [0,1] and
    tri_cos(2^(m+1) u) = tri_cos(alpha . x) by periodicity.
    """
    index = alpha if isinstance(alpha, RidgeIndex) else RidgeIndex(alpha)
    m = _ceil_log2(index.l1_norm())
    w = np.array(index.alpha, dtype=np.float64) / 2.0 ** (m + 1)
    mat, bias = _split_first(w, 0.5)
    return _hat_chain(mat, bias, m + 2)


def compile_sin_ridge(alpha) -> ReluNetwork:
    """Network equal to tri_sin(alpha . x) on [0,1]^d: width 2, depth
    ceil(log2 ||alpha||_1) + 3."""
    index = alpha if isinstance(alpha, RidgeIndex) else RidgeIndex(alpha)
    m = _ceil_log2(index.l1_norm())
    w = np.array(index.alpha, dtype=np.float64) / 2.0 ** (m + 2)
    b0 = 0.25 + 0.375 / 2.0 ** (m + 1)
    mat, bias = _split_first(w, b0)
    return _hat_chain(mat, bias, m + 3)


def compose(nets: Sequence[ReluNetwork]) -> ReluNetwork:
    """Pipeline composition: compose([f, g]) computes g(f(x)).

    All networks must share one width and every network after the first must
    take the scalar output of its predecessor.  Depths add; the glue affine
    maps (next first layer times previous output layer) are merged.
    """
    nets = list(nets)
    if not nets:
        raise ValueError("compose needs at least one network")
    widths = {net.width for net in nets}
    if len(widths) > 1:
        raise ValueError(f"compose requires equal widths, got {sorted(widths)}")
    for net in nets[1:]:
        if net.input_dim != 1:
            raise ValueError("inner networks must take the scalar output")
    layers: List[AffineLayer] = list(nets[0].layers)
    for net in nets[1:]:
        tail = layers.pop()
        head = net.layers[0]
        merged = AffineLayer(
            head.matrix @ tail.matrix, head.matrix[:, 0] * tail.bias[0] + head.bias
        )
        layers.append(merged)
        layers.extend(net.layers[1:])
    return ReluNetwork(nets[0].input_dim, tuple(layers))


def pad_depth(net: ReluNetwork, target_depth: int) -> ReluNetwork:
    """Same function, depth exactly target_depth.

    Identity affine maps are inserted after the last ReLU, where activations
    are componentwise nonnegative, so ReLU acts as the identity on them.
    """
    if target_depth < net.depth:
        raise ValueError(f"target depth {target_depth} below current {net.depth}")
    extra = target_depth - net.depth
    if extra == 0:
        return net
    w = net.width
    eye = AffineLayer(np.eye(w), np.zeros(w))
    layers = net.layers[:-1] + (eye,) * extra + (net.layers[-1],)
    return ReluNetwork(net.input_dim, layers)


def compile_combination(
    c_terms: Sequence[Tuple[float, object]],
    s_terms: Sequence[Tuple[float, object]] = (),
) -> ReluNetwork:
    """Network for sum_i a_i tri_cos(alpha_i . x) + sum_j b_j tri_sin(beta_j . x).

    Width is exactly 2(k+l); depth is the maximum of the per-term depths
    (multivariate cos: ceil(log2 ||alpha||_1)+2, sin: +3; for d = 1 the
    sharper univariate constructions save one level), shallower sub-networks
    being depth-padded; the final affine map applies the coefficients, so its
    weights are bounded by 8 max(|a_i|, |b_j|, 1).
    """
    c_terms = [(float(a), _as_index(ix)) for a, ix in c_terms]
    s_terms = [(float(b), _as_index(ix)) for b, ix in s_terms]
    if not c_terms and not s_terms:
        raise ValueError("need at least one term")
    dims = {ix.dim for _, ix in c_terms + s_terms}
    if len(dims) > 1:
        raise ValueError("terms mix dimensions")
    d = dims.pop()

    if d == 1:
        subnets = [(a, compile_cos_univariate(ix.alpha[0])) for a, ix in c_terms]
        subnets += [(b, compile_sin_univariate(ix.alpha[0])) for b, ix in s_terms]
    else:
        subnets = [(a, compile_cos_ridge(ix)) for a, ix in c_terms]
        subnets += [(b, compile_sin_ridge(ix)) for b, ix in s_terms]
    depth = max(net.depth for _, net in subnets)
    subnets = [(coef, pad_depth(net, depth)) for coef, net in subnets]

    k = len(subnets)
    width = 2 * k
    first = AffineLayer(
        np.vstack([net.layers[0].matrix for _, net in subnets]),
        np.concatenate([net.layers[0].bias for _, net in subnets]),
    )
    layers = [first]
    for t in range(1, depth):
        mat = np.zeros((width, width))
        bias = np.zeros(width)
        for i, (_, net) in enumerate(subnets):
            sl = slice(2 * i, 2 * i + 2)
            mat[sl, sl] = net.layers[t].matrix
            bias[sl] = net.layers[t].bias
        layers.append(AffineLayer(mat, bias))
    out_mat = np.zeros((1, width))
    out_bias = 0.0
    for i, (coef, net) in enumerate(subnets):
        out_mat[0, 2 * i : 2 * i + 2] = coef * net.layers[-1].matrix[0]
        out_bias += coef * net.layers[-1].bias[0]
    layers.append(AffineLayer(out_mat, [out_bias]))
    return ReluNetwork(d, tuple(layers))


def _as_index(ix) -> RidgeIndex:
    return ix if isinstance(ix, RidgeIndex) else RidgeIndex(ix)


def bound_report(net: ReluNetwork) -> BoundReport:
    """Exact width/depth and maxima of |weights| and |biases| over all layers."""
    max_w = max(float(np.max(np.abs(layer.matrix))) for layer in net.layers)
    max_b = max(float(np.max(np.abs(layer.bias))) for layer in net.layers)
    return BoundReport(
        width=net.width, depth=net.depth, max_abs_weight=max_w, max_abs_bias=max_b
    )


class ReluNetParseError(ValueError):
    """Malformed textual network; message carries the offending line number."""


def serialize(net: ReluNetwork) -> str:
    """Textual form with 17-significant-digit decimals (lossless round-trip)."""
    out = [
        f"relunet v1 input_dim={net.input_dim} width={net.width} depth={net.depth}"
    ]
    for i, layer in enumerate(net.layers):
        out.append("")
        out.append(f"layer {i} rows={layer.out_dim} cols={layer.in_dim}")
        for row in layer.matrix:
            out.append(" ".join(f"{v:.17g}" for v in row))
        out.append("bias: " + " ".join(f"{v:.17g}" for v in layer.bias))
    out.append("")
    return "\n".join(out)


_HEADER_RE = re.compile(
    r"^relunet v1 input_dim=(\d+) width=(\d+) depth=(\d+)\s*$"
)
_LAYER_RE = re.compile(r"^layer (\d+) rows=(\d+) cols=(\d+)\s*$")


def deserialize(text: str) -> ReluNetwork:
    """Parse the textual form, rejecting wrong counts with the line number."""
    lines = text.splitlines()

    def fail(lineno: int, msg: str):
        raise ReluNetParseError(f"line {lineno + 1}: {msg}")

    pos = 0
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos >= len(lines):
        raise ReluNetParseError("line 1: missing header")
    header = _HEADER_RE.match(lines[pos])
    if not header:
        fail(pos, "expected 'relunet v1 input_dim=<d> width=<W> depth=<L>'")
    input_dim, width, depth = (int(g) for g in header.groups())
    pos += 1

    layers = []
    for layer_idx in range(depth + 1):
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            raise ReluNetParseError(
                f"line {len(lines)}: missing section for layer {layer_idx}"
            )
        m = _LAYER_RE.match(lines[pos])
        if not m:
            fail(pos, f"expected 'layer {layer_idx} rows=<r> cols=<c>'")
        idx, rows, cols = (int(g) for g in m.groups())
        if idx != layer_idx:
            fail(pos, f"expected layer {layer_idx}, found layer {idx}")
        pos += 1
        mat = np.empty((rows, cols))
        for r in range(rows):
            if pos >= len(lines):
                raise ReluNetParseError(
                    f"line {len(lines)}: missing weight row {r} of layer {layer_idx}"
                )
            parts = lines[pos].split()
            if len(parts) != cols:
                fail(pos, f"expected {cols} weights, found {len(parts)}")
            try:
                mat[r] = [float(p) for p in parts]
            except ValueError:
                fail(pos, "unparseable weight value")
            pos += 1
        if pos >= len(lines) or not lines[pos].startswith("bias:"):
            fail(min(pos, len(lines) - 1), f"missing bias line for layer {layer_idx}")
        parts = lines[pos][len("bias:") :].split()
        if len(parts) != rows:
            fail(pos, f"expected {rows} bias values, found {len(parts)}")
        try:
            bias = np.array([float(p) for p in parts])
        except ValueError:
            fail(pos, "unparseable bias value")
        pos += 1
        layers.append(AffineLayer(mat, bias))

    while pos < len(lines):
        if lines[pos].strip():
            fail(pos, "unexpected content after the last layer")
        pos += 1

    net = ReluNetwork(input_dim, tuple(layers))
    if net.width != width:
        raise ReluNetParseError(f"declared width {width}, layers give {net.width}")
    if net.depth != depth:
        raise ReluNetParseError(f"declared depth {depth}, layers give {net.depth}")
    return net
