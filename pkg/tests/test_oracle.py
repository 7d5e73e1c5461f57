import itertools
import math

import numpy as np
import pytest

from pltrig import basis
from pltrig.fourier import mu_constant
from pltrig.gram import inner_product_exact
from pltrig.oracle import (
    QuadratureSpec,
    auto_spec,
    inner_product_oracle,
    inner_product_oracle_1d,
    inner_product_oracle_nd,
    integrate_nd,
    project_oracle,
)


def test_1d_examples():
    c1, s1 = basis.cos_ridge(1), basis.sin_ridge(1)
    assert inner_product_oracle_1d(c1, c1) == pytest.approx(1 / 3, abs=1e-13)
    assert inner_product_oracle_1d(c1, s1) == pytest.approx(0.0, abs=1e-13)
    assert inner_product_oracle_1d(basis.constant(), basis.constant()) == 1.0


def test_1d_exact_on_known_closed_forms():
    # handcrafted piecewise-affine pairs with pencil-and-paper integrals
    assert inner_product_oracle_1d(basis.cos_ridge(1), basis.cos_ridge(3)) == (
        pytest.approx(1 / 27, abs=1e-13)
    )
    assert inner_product_oracle_1d(basis.sin_ridge(1), basis.sin_ridge(3)) == (
        pytest.approx(-1 / 27, abs=1e-13)
    )
    assert inner_product_oracle_1d(basis.cos_ridge(2), basis.cos_ridge(2)) == (
        pytest.approx(1 / 3, abs=1e-13)
    )
    assert inner_product_oracle_1d(basis.cos_ridge(1), basis.cos_ridge(2)) == (
        pytest.approx(0.0, abs=1e-13)
    )


def test_1d_rejects_multivariate():
    with pytest.raises(ValueError):
        inner_product_oracle_1d(basis.cos_ridge((1, 2)), basis.cos_ridge((1, 2)))


def test_nd_examples():
    f = basis.cos_ridge((1, 2))
    g = basis.cos_ridge((3, 6))
    assert inner_product_oracle_nd(f, g) == pytest.approx(1 / 27, abs=1e-5)
    assert inner_product_oracle_nd(
        basis.cos_ridge((1, 0)), basis.cos_ridge((0, 1))
    ) == pytest.approx(0.0, abs=1e-5)
    s = basis.sin_ridge((1, 1))
    assert inner_product_oracle_nd(s, s) == pytest.approx(1 / 3, abs=1e-5)


def test_nd_normalized_pair():
    f = basis.cos_ridge((1, 2), normalized=True)
    assert inner_product_oracle_nd(f, f) == pytest.approx(1.0, abs=1e-5)


def test_oracle_symmetry_is_exact():
    rng = np.random.default_rng(3)
    for _ in range(25):
        d = int(rng.choice([1, 2, 3]))
        f = _random_member(rng, d)
        g = _random_member(rng, d)
        assert inner_product_oracle(f, g) == inner_product_oracle(g, f)


def _random_member(rng, d, bound=6):
    while True:
        alpha = rng.integers(-bound, bound + 1, size=d)
        lead = next((int(v) for v in alpha if v), 0)
        if lead:
            break
    alpha = tuple(int(v) for v in (alpha if lead > 0 else -alpha))
    kind = "cos" if rng.random() < 0.5 else "sin"
    return basis.BasisFunction(kind, basis.RidgeIndex(alpha))


def test_refinement_convergence():
    # Against analytic values, the total deviation over random pairs shrinks
    # as the mesh doubles, down to the rounding floor.  Individual coarse
    # meshes can resonate with individual pairs, so the check aggregates.
    rng = np.random.default_rng(4)
    pairs = [(_random_member(rng, 2), _random_member(rng, 2)) for _ in range(50)]
    totals = []
    for cells in (2, 4, 8, 16, 32, 64):
        spec = QuadratureSpec(2, 2 * cells, "composite_gauss", 1.0)
        total = 0.0
        for f, g in pairs:
            total += abs(
                inner_product_oracle_nd(f, g, spec) - float(inner_product_exact(f, g))
            )
        totals.append(total)
    noise_floor = 1e-12
    for coarse, fine in zip(totals, totals[1:]):
        assert fine < coarse or fine < noise_floor
    assert totals[-1] < totals[0] / 100


def test_consistency_across_dimensions():
    for k, j in [(1, 3), (2, 2), (3, 5), (4, 12)]:
        one_d = inner_product_oracle_1d(basis.cos_ridge(k), basis.cos_ridge(j))
        two_d = inner_product_oracle_nd(
            basis.cos_ridge((k, 0)), basis.cos_ridge((j, 0))
        )
        assert two_d == pytest.approx(one_d, abs=1e-5)


def test_unsupported_dimension():
    f = basis.cos_ridge((1, 2, 3, 4))
    with pytest.raises(ValueError):
        inner_product_oracle_nd(f, f)


def test_frequency_cap():
    f = basis.cos_ridge((20, 20))
    with pytest.raises(ValueError):
        inner_product_oracle_nd(f, f)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(2, 10, "exact_piecewise", 0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(1, 10, "trapezoid", 0.0)
    spec = auto_spec(basis.cos_ridge((1, 2)), basis.cos_ridge((3, 4)))
    assert spec.rule == "composite_gauss"
    assert spec.points_per_axis % 2 == 0
    assert spec.reported_error_bound < 1e-5


def test_project_oracle_smooth_target():
    target = lambda x: math.sqrt(2.0) * np.cos(2 * np.pi * np.asarray(x))
    got = project_oracle(target, basis.cos_ridge(1, normalized=True))
    assert got == pytest.approx(mu_constant(), abs=1e-8)


def test_project_oracle_constant_target():
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    for k in (1, 2, 7, 32):
        assert project_oracle(one, basis.cos_ridge(k)) == pytest.approx(0.0, abs=1e-13)


def test_project_oracle_member_target_dispatches_exact():
    s3 = basis.sin_ridge(3)
    assert project_oracle(s3, s3) == pytest.approx(1 / 3, abs=1e-13)


def test_project_oracle_2d_smooth():
    target = lambda p: math.sqrt(2.0) * np.cos(2 * np.pi * np.asarray(p)[:, 0])
    got = project_oracle(target, basis.cos_ridge((1, 0), normalized=True))
    assert got == pytest.approx(mu_constant(), abs=1e-6)
    ortho = project_oracle(target, basis.cos_ridge((0, 1), normalized=True))
    assert ortho == pytest.approx(0.0, abs=1e-6)


def test_integrate_nd():
    assert integrate_nd(lambda x: np.asarray(x) ** 2, 1, cells=101) == pytest.approx(
        1 / 3, abs=1e-12
    )
    assert integrate_nd(
        lambda p: p[:, 0] * p[:, 1], 2, cells=31
    ) == pytest.approx(0.25, abs=1e-12)
    assert integrate_nd(
        lambda p: p[:, 0] + p[:, 1] + p[:, 2], 3, cells=11
    ) == pytest.approx(1.5, abs=1e-12)
