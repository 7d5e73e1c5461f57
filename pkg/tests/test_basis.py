import math

import numpy as np
import pytest

from pltrig import basis
from pltrig.basis import RidgeIndex
from pltrig.oracle import inner_product_oracle_1d


def test_tri_cos_values():
    assert basis.tri_cos(0.0) == 1.0
    assert basis.tri_cos(0.5) == -1.0
    assert basis.tri_cos(2.4) == pytest.approx(-0.6, abs=1e-14)
    assert basis.tri_cos(0.25) == 0.0


def test_tri_sin_values():
    assert basis.tri_sin(0.25) == 1.0
    assert basis.tri_sin(0.0) == 0.0
    assert basis.tri_sin(7 / 8) == -0.5
    assert basis.tri_sin(0.75) == -1.0


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        basis.tri_cos(float("nan"))
    with pytest.raises(ValueError):
        basis.tri_sin(float("inf"))


def test_periodicity():
    rng = np.random.default_rng(0)
    t = rng.uniform(-5, 5, size=10_000)
    np.testing.assert_allclose(basis.tri_cos(t), basis.tri_cos(t + 1), atol=2e-14)
    np.testing.assert_allclose(basis.tri_sin(t), basis.tri_sin(t + 1), atol=2e-14)


def test_range_bound():
    t = np.linspace(-3, 3, 200_001)
    assert np.max(np.abs(basis.tri_cos(t))) <= 1.0
    assert np.max(np.abs(basis.tri_sin(t))) <= 1.0


def test_symmetries():
    rng = np.random.default_rng(1)
    t = rng.uniform(-4, 4, size=10_000)
    np.testing.assert_allclose(basis.tri_cos(-t), basis.tri_cos(t), atol=1e-14)
    np.testing.assert_allclose(basis.tri_sin(-t), -basis.tri_sin(t), atol=1e-14)


def test_shift_identity():
    # The sine wave is the cosine wave delayed by a quarter period.
    rng = np.random.default_rng(2)
    t = rng.uniform(-5, 5, size=10_000)
    np.testing.assert_allclose(basis.tri_sin(t), basis.tri_cos(t - 0.25), atol=1e-13)


def test_piecewise_affine_between_breakpoints():
    for k in (1, 2, 5, 16):
        for fn, cuts in (
            (lambda t: basis.tri_cos(k * t), basis.cos_breakpoints(k)),
            (lambda t: basis.tri_sin(k * t), basis.sin_breakpoints(k)),
        ):
            for lo, hi in zip(cuts[:-1], cuts[1:]):
                x = np.linspace(lo, hi, 9)[1:-1]
                h = (hi - lo) / 16
                second = fn(x + h) - 2 * fn(x) + fn(x - h)
                np.testing.assert_allclose(second, 0.0, atol=1e-12)


def test_mean_zero_by_oracle():
    const = basis.constant()
    for k in range(1, 65):
        assert abs(inner_product_oracle_1d(basis.cos_ridge(k), const)) <= 1e-14
        assert abs(inner_product_oracle_1d(basis.sin_ridge(k), const)) <= 1e-14


def test_evaluate_ridge_examples():
    assert basis.evaluate(basis.cos_ridge((1, 1)), np.array([0.25, 0.25])) == -1.0
    assert basis.evaluate(basis.sin_ridge((5,)), np.array([0.05])) == pytest.approx(
        1.0, abs=1e-12
    )
    assert basis.evaluate(basis.constant(), np.array([[0.3, 0.9]])) == 1.0
    # a flat array is a batch of scalar points for the constant
    np.testing.assert_array_equal(
        basis.evaluate(basis.constant(), np.array([0.3, 0.9])), [1.0, 1.0]
    )


def test_evaluate_batches_and_normalization():
    pts = np.array([[0.0, 0.0], [0.25, 0.25], [0.5, 0.0]])
    vals = basis.evaluate(basis.cos_ridge((1, 1)), pts)
    np.testing.assert_allclose(vals, [1.0, -1.0, -1.0])
    norm_vals = basis.evaluate(basis.cos_ridge((1, 1), normalized=True), pts)
    np.testing.assert_allclose(norm_vals, basis.SQRT3 * vals)


def test_evaluate_dimension_mismatch():
    with pytest.raises(ValueError):
        basis.evaluate(basis.cos_ridge((1, 2, 3)), np.array([0.1, 0.2]))


def test_ridge_index_validation():
    with pytest.raises(ValueError):
        RidgeIndex((0, 0))
    with pytest.raises(ValueError):
        RidgeIndex((-1, 2))
    with pytest.raises(ValueError):
        RidgeIndex((2**21,))
    assert RidgeIndex(3).alpha == (3,)
    assert RidgeIndex((0, 2, -5)).l1_norm() == 7


def test_basis_function_validation():
    with pytest.raises(ValueError):
        basis.BasisFunction("cos")  # missing index
    with pytest.raises(ValueError):
        basis.BasisFunction("const", RidgeIndex(1))
    with pytest.raises(ValueError):
        basis.BasisFunction("tangent", RidgeIndex(1))


def test_enumerate_indices_1d():
    assert [ix.alpha for ix in basis.enumerate_indices(1, 3)] == [(1,), (2,), (3,)]


def test_enumerate_indices_2d():
    got = [ix.alpha for ix in basis.enumerate_indices(2, 1)]
    assert got == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert got == sorted(got)


@pytest.mark.parametrize("bound", [1, 2, 3, 4])
def test_enumerate_count_2d(bound):
    count = len(basis.enumerate_indices(2, bound))
    assert count == ((2 * bound + 1) ** 2 - 1) // 2


def test_enumerate_deterministic():
    a = basis.enumerate_indices(3, 2)
    b = basis.enumerate_indices(3, 2)
    assert a == b


def test_breakpoints():
    np.testing.assert_allclose(basis.cos_breakpoints(1), [0, 0.5, 1])
    np.testing.assert_allclose(basis.sin_breakpoints(1), [0, 0.25, 0.75, 1])
    np.testing.assert_allclose(basis.cos_breakpoints(2), [0, 0.25, 0.5, 0.75, 1])
    np.testing.assert_allclose(
        basis.breakpoints(basis.constant()), [0.0, 1.0]
    )
