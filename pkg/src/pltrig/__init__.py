"""Piecewise-linear trigonometric Riesz basis of L2([0,1]^d).

A library for the triangle-wave analogue of the trigonometric system: exact
rational inner products, Gram-matrix spectral certification via Gershgorin
discs, Moebius/Fourier decompositions, and a compiler emitting exact ReLU
feed-forward networks for the basis functions and their linear combinations.
"""

from pltrig.basis import (
    BasisFunction,
    RidgeIndex,
    constant,
    cos_ridge,
    enumerate_indices,
    evaluate,
    sin_ridge,
    tri_cos,
    tri_sin,
)
from pltrig.fourier import (
    DecompositionSeries,
    FourierExpansion,
    convolution_identity_check,
    decomposition_coefficients,
    evaluate_decomposition,
    fourier_expansion,
    mu_constant,
    product_decomposition_2d,
)
from pltrig.gram import (
    GramMatrix,
    RieszBounds,
    SpectralSummary,
    assemble_gram,
    canonical_system,
    certify_riesz_bounds,
    extreme_eigenvalues,
    gershgorin_radii,
    inner_product_exact,
    measure_riesz_bounds,
    project_l2,
    rayleigh_quotient,
)
from pltrig.numtheory import (
    OddRatio,
    PrimitiveDecomposition,
    euler_product_partial,
    moebius,
    odd_ratio,
    primitive_decompose,
    two_adic_valuation,
)
from pltrig.oracle import (
    QuadratureSpec,
    inner_product_oracle,
    inner_product_oracle_1d,
    inner_product_oracle_nd,
    project_oracle,
)
from pltrig.relunet import (
    AffineLayer,
    BoundReport,
    ReluNetwork,
    bound_report,
    compile_combination,
    compile_cos_ridge,
    compile_cos_univariate,
    compile_sin_ridge,
    compile_sin_univariate,
    compose,
    deserialize,
    hat_network,
    identity_network,
    pad_depth,
    serialize,
)

__version__ = "0.1.0"
