import math

import numpy as np
import pytest

from pltrig import basis, relunet as rn


def test_hat_values_and_weights():
    hat = rn.hat_network()
    np.testing.assert_array_equal(hat.layers[0].matrix, [[1.0], [1.0]])
    np.testing.assert_array_equal(hat.layers[0].bias, [0.0, -0.5])
    np.testing.assert_array_equal(hat.layers[1].matrix, [[2.0, -4.0]])
    assert rn.evaluate(hat, np.array([0.25])) == 0.5
    assert rn.evaluate(hat, np.array([0.5])) == 1.0
    assert rn.evaluate(hat, np.array([0.1])) == pytest.approx(0.2, abs=1e-15)
    assert rn.evaluate(hat, np.array([0.9])) == pytest.approx(0.2, abs=1e-15)


def test_hat_bound_report():
    rep = rn.bound_report(rn.hat_network())
    assert rep == rn.BoundReport(width=2, depth=1, max_abs_weight=4.0, max_abs_bias=0.5)


def test_identity_network():
    ident = rn.identity_network()
    assert rn.evaluate(ident, np.array([-0.7])) == -0.7
    xs = np.linspace(-1, 1, 1001)
    np.testing.assert_array_equal(rn.evaluate(ident, xs[:, None]), xs)


def test_compose_sawtooth():
    hat = rn.hat_network()
    saw = rn.compose([hat, hat])
    grid = np.arange(5) / 4.0
    np.testing.assert_allclose(
        rn.evaluate(saw, grid[:, None]), [0, 1, 0, 1, 0], atol=1e-15
    )
    assert saw.depth == 2


def test_compose_single_and_depth():
    hat = rn.hat_network()
    assert rn.compose([hat]) == hat
    # equality is by value, not identity
    assert rn.hat_network() == hat
    assert rn.identity_network() != hat
    assert rn.compose([hat, hat, hat]).depth == 3


def test_compose_associativity():
    hat = rn.hat_network()
    ident = rn.identity_network()
    a = rn.compose([hat, rn.compose([ident, hat])])
    b = rn.compose([hat, ident, hat])
    xs = np.linspace(0, 1, 1001)[:, None]
    np.testing.assert_allclose(rn.evaluate(a, xs), rn.evaluate(b, xs), atol=1e-12)
    assert a.depth == b.depth == 3


def test_compose_width_mismatch():
    wide = rn.compile_combination([(1.0, (1,)), (1.0, (2,))])
    with pytest.raises(ValueError):
        rn.compose([rn.hat_network(), wide])


def test_pad_depth_preserves_function():
    hat = rn.hat_network()
    padded = rn.pad_depth(hat, 3)
    assert padded.depth == 3
    xs = np.linspace(0, 1, 1000)[:, None]
    np.testing.assert_allclose(
        rn.evaluate(padded, xs), rn.evaluate(hat, xs), atol=1e-12
    )


def test_pad_depth_identity_on_negative_inputs():
    # the identity's first layer splits signs, so padding stays exact on [-1,1]
    padded = rn.pad_depth(rn.identity_network(), 5)
    assert padded.depth == 5
    xs = np.linspace(-1, 1, 1001)
    np.testing.assert_array_equal(rn.evaluate(padded, xs[:, None]), xs)


def test_pad_depth_rejects_shrink():
    with pytest.raises(ValueError):
        rn.pad_depth(rn.compile_cos_univariate(8), 2)


@pytest.mark.parametrize("j", list(range(1, 33)) + [64, 100, 512, 1000])
def test_cos_univariate(j):
    net = rn.compile_cos_univariate(j)
    assert net.width == 2
    assert net.depth == (j - 1).bit_length() + 1
    xs = np.linspace(0.0, 1.0, 2001)
    np.testing.assert_allclose(
        rn.evaluate(net, xs[:, None]), basis.tri_cos(j * xs), atol=1e-9
    )
    rep = rn.bound_report(net)
    assert max(rep.max_abs_weight, rep.max_abs_bias) <= 8.0


@pytest.mark.parametrize("j", [1, 2, 3, 5, 8, 17, 100, 1000])
def test_sin_univariate(j):
    net = rn.compile_sin_univariate(j)
    assert net.width == 2
    assert net.depth == (j - 1).bit_length() + 2
    xs = np.linspace(0.0, 1.0, 2001)
    np.testing.assert_allclose(
        rn.evaluate(net, xs[:, None]), basis.tri_sin(j * xs), atol=1e-9
    )


def test_univariate_examples():
    assert rn.compile_cos_univariate(1).depth == 1
    assert rn.evaluate(rn.compile_cos_univariate(1), np.array([0.0])) == 1.0
    assert rn.compile_cos_univariate(5).depth == 4
    assert rn.evaluate(
        rn.compile_cos_univariate(8), np.array([0.3])
    ) == pytest.approx(-0.6, abs=1e-12)
    assert rn.evaluate(
        rn.compile_sin_univariate(1), np.array([0.25])
    ) == pytest.approx(1.0, abs=1e-15)
    assert rn.compile_sin_univariate(1).depth == 2
    assert rn.evaluate(
        rn.compile_sin_univariate(3), np.array([1 / 12])
    ) == pytest.approx(1.0, abs=1e-12)


def test_zero_frequency_rejected():
    with pytest.raises(ValueError):
        rn.compile_cos_univariate(0)
    with pytest.raises(ValueError):
        rn.compile_sin_univariate(0)
    with pytest.raises(ValueError):
        rn.compile_cos_ridge((0, 0))


def test_ridge_depths_and_values():
    net = rn.compile_cos_ridge((3, 4))
    assert net.depth == 5  # ceil(log2 7) + 2
    assert rn.evaluate(
        rn.compile_cos_ridge((1, 1)), np.array([0.25, 0.25])
    ) == pytest.approx(-1.0, abs=1e-15)

    rng = np.random.default_rng(5)
    pts = rng.random((1000, 3))
    net = rn.compile_cos_ridge((1, -2, 3))
    np.testing.assert_allclose(
        rn.evaluate(net, pts),
        basis.evaluate(basis.cos_ridge((1, -2, 3)), pts),
        atol=1e-9,
    )


@pytest.mark.parametrize("seed", range(6))
def test_ridge_random(seed):
    rng = np.random.default_rng(100 + seed)
    d = int(rng.choice([2, 3, 5]))
    while True:
        alpha = rng.integers(-12, 13, size=d)
        lead = next((int(v) for v in alpha if v), 0)
        if lead and np.sum(np.abs(alpha)) <= 64:
            break
    alpha = tuple(int(v) for v in (alpha if lead > 0 else -alpha))
    ix = basis.RidgeIndex(alpha)
    m = (ix.l1_norm() - 1).bit_length()
    pts = rng.random((500, d))

    net_c = rn.compile_cos_ridge(ix)
    assert net_c.depth == m + 2
    np.testing.assert_allclose(
        rn.evaluate(net_c, pts), basis.evaluate(basis.cos_ridge(ix), pts), atol=1e-9
    )
    net_s = rn.compile_sin_ridge(ix)
    assert net_s.depth == m + 3
    np.testing.assert_allclose(
        rn.evaluate(net_s, pts), basis.evaluate(basis.sin_ridge(ix), pts), atol=1e-9
    )
    for net in (net_c, net_s):
        rep = rn.bound_report(net)
        assert max(rep.max_abs_weight, rep.max_abs_bias) <= 8.0


def test_combination_single_term_reduces_to_univariate():
    net = rn.compile_combination([(1.0, (1,))])
    assert net.width == 2
    assert net.depth == 1  # univariate construction in 1D
    xs = np.linspace(0, 1, 2001)
    np.testing.assert_allclose(
        rn.evaluate(net, xs[:, None]), basis.tri_cos(xs), atol=1e-12
    )


def test_combination_width_and_depth():
    net = rn.compile_combination(
        [(1.0, (3, 1)), (0.5, (1, 0))], [(2.0, (0, 1))]
    )
    assert net.width == 6
    # depths: cos (4,2): ceil(log2 4)+2 = 4, ceil(log2 1)+2 = 2; sin: +3 = 3
    assert net.depth == 4


def test_combination_values_and_bounds():
    net = rn.compile_combination([(2.0, (3,))], [(-1.0, (5,))])
    xs = np.linspace(0, 1, 10_001)
    direct = 2 * basis.tri_cos(3 * xs) - basis.tri_sin(5 * xs)
    np.testing.assert_allclose(rn.evaluate(net, xs[:, None]), direct, atol=1e-9)
    rep = rn.bound_report(net)
    assert max(rep.max_abs_weight, rep.max_abs_bias) <= 16.0

    rep3 = rn.bound_report(rn.compile_combination([(3.0, (1,))]))
    assert max(rep3.max_abs_weight, rep3.max_abs_bias) <= 24.0


def test_combination_rejects_bad_input():
    with pytest.raises(ValueError):
        rn.compile_combination([])
    with pytest.raises(ValueError):
        rn.compile_combination([(1.0, (1,))], [(1.0, (1, 2))])


def test_bound_report_c1000():
    rep = rn.bound_report(rn.compile_cos_univariate(1000))
    assert rep.max_abs_weight <= 8.0
    assert rep.max_abs_bias <= 8.0


def test_piecewise_linear_away_from_breakpoints():
    j = 6
    net = rn.compile_cos_univariate(j)
    cuts = basis.cos_breakpoints(j)
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        x = np.linspace(lo, hi, 7)[1:-1][:, None]
        h = (hi - lo) / 16
        second = (
            rn.evaluate(net, x + h) - 2 * rn.evaluate(net, x) + rn.evaluate(net, x - h)
        )
        np.testing.assert_allclose(second, 0.0, atol=1e-11)


def _random_network(rng):
    d = int(rng.integers(1, 4))
    width = int(rng.integers(2, 7))
    depth = int(rng.integers(1, 6))
    layers = [rn.AffineLayer(rng.standard_normal((width, d)), rng.standard_normal(width))]
    for _ in range(depth - 1):
        layers.append(
            rn.AffineLayer(rng.standard_normal((width, width)), rng.standard_normal(width))
        )
    layers.append(rn.AffineLayer(rng.standard_normal((1, width)), rng.standard_normal(1)))
    return rn.ReluNetwork(d, tuple(layers))


def test_serialize_round_trip_random_networks():
    rng = np.random.default_rng(42)
    for _ in range(20):
        net = _random_network(rng)
        back = rn.deserialize(rn.serialize(net))
        assert back == net  # value equality: bit-identical weights and biases
        for l1, l2 in zip(net.layers, back.layers):
            assert np.array_equal(l1.matrix, l2.matrix)
            assert np.array_equal(l1.bias, l2.bias)
        pts = rng.random((10, net.input_dim))
        assert np.array_equal(rn.evaluate(net, pts), rn.evaluate(back, pts))


def test_deserialize_rejects_truncated():
    text = rn.serialize(rn.compile_cos_univariate(4))
    truncated = text.rsplit("bias:", 1)[0]
    with pytest.raises(rn.ReluNetParseError, match="bias"):
        rn.deserialize(truncated)


def test_deserialize_rejects_wrong_counts():
    text = rn.serialize(rn.hat_network())
    with pytest.raises(rn.ReluNetParseError, match="line"):
        rn.deserialize(text.replace("rows=2 cols=1", "rows=3 cols=1", 1))
    with pytest.raises(rn.ReluNetParseError, match="line 1"):
        rn.deserialize("not a network\n")
    # a tampered depth makes the parser expect one more layer section
    with pytest.raises(rn.ReluNetParseError, match="layer 2"):
        rn.deserialize(text.replace("depth=1", "depth=2", 1))


def test_network_shape_validation():
    good = rn.AffineLayer(np.ones((2, 1)), np.zeros(2))
    out = rn.AffineLayer(np.ones((1, 2)), np.zeros(1))
    with pytest.raises(ValueError):
        rn.ReluNetwork(1, (good,))  # only one affine map
    with pytest.raises(ValueError):
        rn.ReluNetwork(2, (good, out))  # input_dim mismatch
    bad_mid = rn.AffineLayer(np.ones((3, 2)), np.zeros(3))
    with pytest.raises(ValueError):
        rn.ReluNetwork(1, (good, bad_mid, out))
    with pytest.raises(ValueError):
        rn.AffineLayer(np.ones((2, 2)), np.zeros(3))
    with pytest.raises(ValueError):
        rn.AffineLayer(np.full((2, 2), np.inf), np.zeros(2))


def test_evaluate_dimension_check():
    net = rn.compile_cos_ridge((1, 2))
    with pytest.raises(ValueError):
        rn.evaluate(net, np.array([0.1, 0.2, 0.3]))
