"""Analytic inner products, Gram matrices, and spectral certification.

The closed-form kernel: members with non-co-linear frequency vectors are
orthogonal, as are all cos/sin pairs and the constant against everything.
Co-linear pairs interact only when the ratio reduces to odd/(odd); then

    3 <cos(alpha.x), cos(beta.x)> = 1 / (a^2 b^2),
    3 <sin(alpha.x), sin(beta.x)> = (-1)^((a-1)/2 + (b-1)/2) / (a^2 b^2),

with alpha = (a/b) beta in lowest odd terms.  Every value is an exact
rational; floats appear only when a matrix is assembled.

Assembly groups indices by primitive direction: across groups every entry is
an exact zero, and within a group the kernel depends only on the integer
contents, which vectorizes with np.gcd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from pltrig import basis, oracle
from pltrig.basis import BasisFunction, RidgeIndex
from pltrig.numtheory import odd_ratio, primitive_decompose

__all__ = [
    "GramMatrix",
    "RieszBounds",
    "SpectralSummary",
    "GershgorinResult",
    "inner_product_exact",
    "canonical_system",
    "assemble_gram",
    "gershgorin_radii",
    "extreme_eigenvalues",
    "rayleigh_quotient",
    "certify_riesz_bounds",
    "measure_riesz_bounds",
    "project_l2",
    "evaluate_combination",
    "matrix_csv_lines",
    "spectrum_csv_lines",
]

DENSE_EIG_LIMIT = 4096  # larger matrices take the iterative extreme-pair path


def inner_product_exact(f: BasisFunction, g: BasisFunction) -> Fraction:
    """Exact rational inner product of two system members on [0,1]^d.

    Normalization flags are honored when they keep the value rational (both
    raw, both normalized, or a structural zero); a nonzero value scaled by a
    single sqrt(3) is irrational and raises instead.
    """
    if f.index is not None and g.index is not None and f.index.dim != g.index.dim:
        raise ValueError("dimension mismatch")
    raw = _raw_inner_product(f, g)
    # The constant already has unit norm, so its flag carries no scaling.
    norm_count = sum(1 for fn in (f, g) if fn.normalized and fn.kind != "const")
    if norm_count == 2:
        return 3 * raw
    if norm_count == 1 and raw != 0:
        raise ValueError("mixed normalization makes a nonzero inner product irrational")
    return raw


def _raw_inner_product(f: BasisFunction, g: BasisFunction) -> Fraction:
    if f.kind == "const" and g.kind == "const":
        return Fraction(1)
    if f.kind == "const" or g.kind == "const":
        return Fraction(0)  # ridges have mean zero
    if f.kind != g.kind:
        return Fraction(0)  # cos block is orthogonal to sin block
    ratio = odd_ratio(f.index.alpha, g.index.alpha)
    if ratio is None:
        return Fraction(0)
    a, b = ratio.p_num, ratio.q_den
    sign = 1
    if f.kind == "sin" and ((a - 1) // 2 + (b - 1) // 2) % 2:
        sign = -1
    return Fraction(sign, 3 * a * a * b * b)


@dataclass(frozen=True, eq=False)  # identity equality; entries is an ndarray
class GramMatrix:
    """Dense symmetric Gram matrix with its ordering manifest."""

    ordering: tuple  # BasisFunction per row/column
    entries: np.ndarray
    normalized: bool

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class RieszBounds:
    lower_A: float
    upper_B: float
    provenance: str  # "gershgorin_certified" | "eigensolver_measured"

    def __post_init__(self):
        if not 0 < self.lower_A <= self.upper_B:
            raise ValueError("need 0 < A <= B")
        if self.provenance not in ("gershgorin_certified", "eigensolver_measured"):
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass(frozen=True)
class SpectralSummary:
    n: int
    lambda_min: float
    lambda_max: float
    residual_norms: Tuple[float, float]  # ||G v - lambda v|| for (min, max) pair


class GershgorinResult(NamedTuple):
    centers: np.ndarray
    radii: np.ndarray
    hull: Tuple[float, float]


def canonical_system(
    d: int,
    max_inf_norm: int,
    normalized: bool = False,
    indices: Optional[Sequence[RidgeIndex]] = None,
) -> List[BasisFunction]:
    """Constant, then all cos members, then all sin members.

    Index order is enumerate_indices (lexicographic); for d = 1 this is the
    truncation frequency 1..N with N = max_inf_norm.  Truncation 0 is the
    constant alone (1x1 Gram matrix [1]).
    """
    if indices is None:
        indices = [] if max_inf_norm == 0 else basis.enumerate_indices(d, max_inf_norm)
    out = [basis.constant()]
    out += [basis.cos_ridge(ix, normalized) for ix in indices]
    out += [basis.sin_ridge(ix, normalized) for ix in indices]
    return out


def _content_block(contents: np.ndarray, kind: str, normalized: bool) -> np.ndarray:
    """Inner-product block for members sharing one primitive direction.

    The odd-ratio reduction depends only on the integer contents, which is
    exactly the univariate rule: with g = gcd(i, j), the entry is nonzero iff
    i/g and j/g are both odd, value g^4 / (3 i^2 j^2) (3x that when
    normalized), sin pairs negative iff (i + j) / 2g is even.  Numerator and
    denominator stay below 2^53 for contents up to 2^13, so each entry is the
    correctly rounded value of the exact rational.
    """
    i = contents[:, None]
    j = contents[None, :]
    g = np.gcd(i, j)
    io, jo = i // g, j // g
    mask = (io % 2 == 1) & (jo % 2 == 1)
    gf = g.astype(np.float64)
    denom = i.astype(np.float64) ** 2 * j.astype(np.float64) ** 2
    if not normalized:
        denom = 3.0 * denom
    vals = np.zeros(g.shape)
    np.divide(gf**4, denom, out=vals, where=mask)
    if kind == "sin":
        even = ((i + j) // (2 * g)) % 2 == 0
        vals[mask & even] *= -1.0
    return vals


def assemble_gram(
    system: Sequence[BasisFunction], normalized: Optional[bool] = None
) -> GramMatrix:
    """Dense symmetric Gram matrix of an ordered system.

    When normalized is true the ridge members enter with their sqrt(3)
    factor, i.e. ridge-ridge entries are 3x the raw inner product; the block
    zeros (constant row, cos-sin block) hold exactly either way.  The flag
    defaults to the members' own normalization, which must be uniform.
    """
    flags = {fn.normalized for fn in system if fn.kind != "const"}
    if len(flags) > 1:
        raise ValueError("system mixes raw and normalized members")
    if normalized is None:
        normalized = flags.pop() if flags else False
    dims = {fn.index.dim for fn in system if fn.index is not None}
    if len(dims) > 1:
        raise ValueError("system mixes dimensions")

    n = len(system)
    mat = np.zeros((n, n))
    for kind in ("cos", "sin"):
        rows = [i for i, fn in enumerate(system) if fn.kind == kind]
        groups: dict = {}
        for i in rows:
            direction = primitive_decompose(system[i].index.alpha).direction
            groups.setdefault(direction, []).append(i)
        for members in groups.values():
            contents = np.array(
                [primitive_decompose(system[i].index.alpha).content for i in members],
                dtype=np.int64,
            )
            block = _content_block(contents, kind, normalized)
            mat[np.ix_(members, members)] = block
    for i, fn in enumerate(system):
        if fn.kind == "const":
            mat[i, i] = 1.0
    # Mirror the upper triangle so symmetry holds to the last bit.
    mat = np.triu(mat) + np.triu(mat, 1).T
    return GramMatrix(ordering=tuple(system), entries=mat, normalized=normalized)


def gershgorin_radii(G: Union[GramMatrix, np.ndarray]) -> GershgorinResult:
    """Per-row disc centers and radii, plus the union-interval hull."""
    mat = G.entries if isinstance(G, GramMatrix) else np.asarray(G)
    centers = np.diag(mat).copy()
    radii = np.abs(mat).sum(axis=1) - np.abs(centers)
    hull = (float(np.min(centers - radii)), float(np.max(centers + radii)))
    return GershgorinResult(centers=centers, radii=radii, hull=hull)


def extreme_eigenvalues(
    G: Union[GramMatrix, np.ndarray], tolerance: float = 1e-10
) -> SpectralSummary:
    """Smallest and largest eigenvalue with residual check.

    Dense symmetric solver up to DENSE_EIG_LIMIT rows; beyond that a Lanczos
    iteration per end with the deterministic all-ones start vector.
    """
    mat = G.entries if isinstance(G, GramMatrix) else np.asarray(G)
    n = mat.shape[0]
    if n <= DENSE_EIG_LIMIT:
        lo_val, lo_vec = scipy.linalg.eigh(mat, subset_by_index=[0, 0])
        hi_val, hi_vec = scipy.linalg.eigh(mat, subset_by_index=[n - 1, n - 1])
        lam_min, lam_max = float(lo_val[0]), float(hi_val[0])
        v_min, v_max = lo_vec[:, 0], hi_vec[:, 0]
    else:
        v0 = np.ones(n) / math.sqrt(n)
        try:
            lo_val, lo_vec = scipy.sparse.linalg.eigsh(
                mat, k=1, which="SA", v0=v0, tol=tolerance / 10
            )
            hi_val, hi_vec = scipy.sparse.linalg.eigsh(
                mat, k=1, which="LA", v0=v0, tol=tolerance / 10
            )
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise RuntimeError(
                f"extreme eigenpair iteration failed to converge: {exc}"
            ) from exc
        lam_min, lam_max = float(lo_val[0]), float(hi_val[0])
        v_min, v_max = lo_vec[:, 0], hi_vec[:, 0]
    res_min = float(np.linalg.norm(mat @ v_min - lam_min * v_min))
    res_max = float(np.linalg.norm(mat @ v_max - lam_max * v_max))
    scale = max(abs(lam_max), abs(lam_min), 1e-300)
    if max(res_min, res_max) > max(tolerance, 1e-9 * scale):
        raise RuntimeError(
            f"eigen-residuals {res_min:.3e}, {res_max:.3e} above tolerance"
        )
    return SpectralSummary(
        n=n, lambda_min=lam_min, lambda_max=lam_max, residual_norms=(res_min, res_max)
    )


def rayleigh_quotient(G: Union[GramMatrix, np.ndarray], coefficients) -> float:
    """c^T G c / c^T c."""
    mat = G.entries if isinstance(G, GramMatrix) else np.asarray(G)
    c = np.asarray(coefficients, dtype=np.float64)
    if c.ndim != 1 or c.size != mat.shape[0]:
        raise ValueError("coefficient length must match the matrix")
    denom = float(c @ c)
    if denom == 0.0:
        raise ValueError("zero coefficient vector")
    return float(c @ (mat @ c)) / denom


def certify_riesz_bounds(G: GramMatrix) -> RieszBounds:
    """Riesz bounds from the Gershgorin hull (a rigorous enclosure)."""
    hull = gershgorin_radii(G).hull
    return RieszBounds(hull[0], hull[1], "gershgorin_certified")


def measure_riesz_bounds(G: GramMatrix, tolerance: float = 1e-10) -> RieszBounds:
    """Riesz bounds from the extreme eigenvalues (measured, not certified)."""
    s = extreme_eigenvalues(G, tolerance)
    return RieszBounds(s.lambda_min, s.lambda_max, "eigensolver_measured")


def evaluate_combination(
    system: Sequence[BasisFunction], coefficients, x
) -> np.ndarray:
    """Pointwise value of sum_i c_i phi_i at an (n, d) batch of points."""
    c = np.asarray(coefficients, dtype=np.float64)
    pts = np.asarray(x, dtype=np.float64)
    out = np.zeros(pts.shape[0])
    for ci, fn in zip(c, system):
        if ci != 0.0:
            out += ci * np.atleast_1d(basis.evaluate(fn, pts))
    return out


def project_l2(
    target: Union[BasisFunction, Callable],
    system: Sequence[BasisFunction],
    spec: Optional[oracle.QuadratureSpec] = None,
    residual_cells: Optional[int] = None,
) -> Tuple[np.ndarray, float]:
    """L2-orthogonal projection of a target onto the span of a system.

    Solves G c = b with b_i from the quadrature oracle; the system matrix is
    positive definite with spectrum in [1/2, 3/2] for normalized canonical
    systems, so a direct Cholesky solve needs no regularization.  Returns the
    coefficients and the quadrature residual norm ||target - sum c_i phi_i||.
    """
    G = assemble_gram(system)
    b = np.array([oracle.project_oracle(target, fn, spec) for fn in system])
    c_fac = scipy.linalg.cho_factor(G.entries)
    coeffs = scipy.linalg.cho_solve(c_fac, b)

    dims = {fn.index.dim for fn in system if fn.index is not None}
    d = dims.pop() if dims else 1

    def residual_sq(pts):
        recon = evaluate_combination(system, coeffs, np.atleast_1d(pts))
        if isinstance(target, BasisFunction):
            tv = np.atleast_1d(basis.evaluate(target, pts))
        else:
            tv = np.asarray(target(pts))
        return (tv - recon) ** 2

    if residual_cells is None:
        residual_cells = 997 if d == 1 else 127
    err_sq = oracle.integrate_nd(residual_sq, d, cells=residual_cells)
    return coeffs, math.sqrt(max(err_sq, 0.0))


def matrix_csv_lines(G: GramMatrix, config: str = "") -> List[str]:
    """Row-major CSV with 17-significant-digit entries and ordering manifest."""
    lines = [f"# config: {config}" if config else "# gram matrix"]
    lines.append("# ordering: " + " | ".join(str(fn) for fn in G.ordering))
    n = G.n
    lines.append(",".join(f"col{j}" for j in range(n)))
    for i in range(n):
        lines.append(",".join(f"{v:.17g}" for v in G.entries[i]))
    return lines


def spectrum_csv_lines(
    rows: Sequence[Tuple[int, float, float]], config: str = ""
) -> List[str]:
    lines = [f"# config: {config}" if config else "# spectrum ladder"]
    lines.append("N,lambda_min,lambda_max")
    for n, lo, hi in rows:
        lines.append(f"{n},{lo:.17g},{hi:.17g}")
    return lines
