"""
Compiling triangle waves into exact ReLU networks
=================================================

The hat function is a width-2 depth-1 ReLU network; composing it m times
yields a 2^m-tooth sawtooth, and one affine output map turns that into
tri_cos at frequency 2^m.  General frequencies fold a dilation into the
first layer, so frequency j costs depth ceil(log2 j) + 1 at width 2 with all
weights bounded by 8.  Ridge functions and linear combinations stack the
same machinery side by side.
"""

import numpy as np

from pltrig import basis, relunet as rn

# the hat network and the sawtooth from composing it with itself
hat = rn.hat_network()
grid = np.arange(9) / 8.0
print("hat:", rn.evaluate(hat, grid[:, None]))
saw = rn.compose([hat, hat, hat])
print("3-fold hat (8 teeth):", rn.evaluate(saw, grid[:, None]))

# frequency 1000 at depth 11: exact agreement with the direct evaluation
j = 1000
net = rn.compile_cos_univariate(j)
rep = rn.bound_report(net)
xs = np.linspace(0, 1, 10_001)
err = np.max(np.abs(rn.evaluate(net, xs[:, None]) - basis.tri_cos(j * xs)))
print(f"\ntri_cos({j} x): width {rep.width}, depth {rep.depth}, "
      f"max|weight| {rep.max_abs_weight:g}, max deviation {err:.2e}")

# a multivariate ridge wave costs one extra level for the domain rescale
ix = basis.RidgeIndex((3, -4, 5))
net = rn.compile_cos_ridge(ix)
pts = np.random.default_rng(0).random((2000, 3))
err = np.max(np.abs(rn.evaluate(net, pts) - basis.evaluate(basis.cos_ridge(ix), pts)))
print(f"tri_cos((3,-4,5) . x): depth {net.depth} "
      f"(= ceil(log2 12) + 2), max deviation {err:.2e}")

# linear combinations stack sub-networks: width 2 per term
net = rn.compile_combination(
    [(2.0, (1, 1)), (-0.5, (2, -1))], [(1.0, (0, 3))]
)
rep = rn.bound_report(net)
print(f"\n2*cos((1,1).x) - 0.5*cos((2,-1).x) + sin((0,3).x): "
      f"width {rep.width}, depth {rep.depth}, max|weight| {rep.max_abs_weight:g}")
pts = np.random.default_rng(1).random((2000, 2))
direct = (2.0 * basis.evaluate(basis.cos_ridge((1, 1)), pts)
          - 0.5 * basis.evaluate(basis.cos_ridge((2, -1)), pts)
          + basis.evaluate(basis.sin_ridge((0, 3)), pts))
print("max deviation:", np.max(np.abs(rn.evaluate(net, pts) - direct)))

# networks round-trip through a plain text format losslessly
text = rn.serialize(hat)
print("\nserialized hat network:")
print(text)
back = rn.deserialize(text)
print("round trip bit-identical:",
      all(np.array_equal(a.matrix, b.matrix) and np.array_equal(a.bias, b.bias)
          for a, b in zip(hat.layers, back.layers)))
