"""Command-line surface: spectra, inner products, certification, network
compilation, decomposition series, Euler products, and projections.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
All commands are deterministic given their flags (and --seed where random
draws are involved); reruns write byte-identical files.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from pltrig import basis, fourier, gram, oracle, relunet
from pltrig.basis import BasisFunction
from pltrig.numtheory import euler_product_partial


class UsageError(Exception):
    pass


def parse_member(text: str) -> BasisFunction:
    """Member mini-grammar: 'const', 'C:3', 'S:1,-2,3'."""
    text = text.strip()
    if text == "const":
        return basis.constant()
    if ":" not in text:
        raise UsageError(f"bad member spec {text!r}: expected 'const', 'C:...' or 'S:...'")
    head, _, body = text.partition(":")
    if head not in ("C", "S"):
        raise UsageError(f"bad member kind {head!r}: expected C or S")
    try:
        alpha = tuple(int(p) for p in body.split(","))
    except ValueError:
        raise UsageError(f"bad frequency vector {body!r}") from None
    try:
        index = basis.RidgeIndex(alpha)
    except ValueError as exc:
        raise UsageError(f"bad frequency vector {body!r}: {exc}") from None
    kind = "cos" if head == "C" else "sin"
    return BasisFunction(kind, index)


def parse_term(text: str) -> Tuple[float, BasisFunction]:
    """Term mini-grammar: '2.5*C:3', '-1*S:1,2', or bare 'C:3' (coefficient 1)."""
    text = text.strip()
    if "*" in text:
        coef_text, _, member_text = text.partition("*")
        try:
            coef = float(coef_text)
        except ValueError:
            raise UsageError(f"bad coefficient {coef_text!r}") from None
    else:
        coef, member_text = 1.0, text
    member = parse_member(member_text)
    if member.kind == "const":
        raise UsageError("network terms must be C or S members")
    return coef, member


def _write_lines(path: Optional[str], lines: Sequence[str]):
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _spectrum_ladder(n_max: int) -> List[int]:
    ladder = []
    n = 16
    while n <= n_max:
        ladder.append(n)
        n *= 2
    if not ladder or ladder[-1] != n_max:
        ladder.append(n_max)
    return ladder


def cmd_gram_spectrum(args) -> int:
    if args.dim == 1:
        if args.n > 2**14:
            raise UsageError(f"--n {args.n} above the dense-path limit 2^14")
        sizes = _spectrum_ladder(args.n)
    else:
        sizes = list(range(1, args.max_norm + 1))
    rows = []
    for size in sizes:
        indices = basis.enumerate_indices(args.dim, size)
        if args.variant == "raw-c":
            system = [basis.cos_ridge(ix) for ix in indices]
            G = gram.assemble_gram(system, normalized=False)
        else:
            G = gram.assemble_gram(
                gram.canonical_system(args.dim, size), normalized=True
            )
        summary = gram.extreme_eigenvalues(G, tolerance=args.tol)
        rows.append((size, summary.lambda_min, summary.lambda_max))
    config = (
        f"gram-spectrum dim={args.dim} variant={args.variant} "
        f"n={args.n if args.dim == 1 else args.max_norm} tol={args.tol:g}"
    )
    _write_lines(args.out, gram.spectrum_csv_lines(rows, config))
    return 0


def cmd_inner_product(args) -> int:
    f = parse_member(args.f)
    g = parse_member(args.g)
    exact = gram.inner_product_exact(f, g)
    print(f"analytic: {exact} ({float(exact):.17g})")
    d = f.dim or g.dim or 1
    if d > 3:
        print("oracle: unsupported for d > 3 (analytic value only)")
        return 0
    try:
        approx = oracle.inner_product_oracle(f, g)
    except ValueError as exc:
        print(f"oracle: skipped ({exc})")
        return 0
    print(f"oracle:   {approx:.17g}")
    print(f"delta:    {abs(float(exact) - approx):.3e}")
    return 0


def cmd_gershgorin(args) -> int:
    if args.dim == 1:
        system = gram.canonical_system(1, args.n)
    else:
        system = gram.canonical_system(args.dim, args.max_norm)
    G = gram.assemble_gram(system, normalized=True)
    if args.matrix_out:
        config = f"gershgorin matrix dim={args.dim} size={args.n if args.dim == 1 else args.max_norm}"
        _write_lines(args.matrix_out, gram.matrix_csv_lines(G, config))
    res = gram.gershgorin_radii(G)
    worst = float(np.max(res.radii))
    bound = 0.5 + args.tol
    lines = [
        f"# config: gershgorin dim={args.dim} "
        f"size={args.n if args.dim == 1 else args.max_norm} tol={args.tol:g}",
        "row,center,radius",
    ]
    lines += [
        f"{i},{c:.17g},{r:.17g}" for i, (c, r) in enumerate(zip(res.centers, res.radii))
    ]
    if args.out:
        _write_lines(args.out, lines)
    print(f"rows: {G.n}, max radius: {worst:.17g}, hull: [{res.hull[0]:.6f}, {res.hull[1]:.6f}]")
    if worst > bound:
        print(f"FAIL: max radius exceeds 1/2 + {args.tol:g}")
        return 1
    print(f"certified: all radii <= 1/2 + {args.tol:g}")
    if args.rayleigh > 0:
        rng = np.random.default_rng(args.seed)
        quotients = np.array(
            [gram.rayleigh_quotient(G, rng.standard_normal(G.n)) for _ in range(args.rayleigh)]
        )
        lo, hi = float(np.min(quotients)), float(np.max(quotients))
        print(
            f"rayleigh check ({args.rayleigh} seeded vectors): "
            f"quotients in [{lo:.6f}, {hi:.6f}]"
        )
        if lo < 0.5 - args.tol or hi > 1.5 + args.tol:
            print("FAIL: a Rayleigh quotient left the certified interval")
            return 1
    return 0


def _split_terms(term_texts: Sequence[str]):
    c_terms, s_terms = [], []
    for text in term_texts:
        coef, member = parse_term(text)
        if member.kind == "cos":
            c_terms.append((coef, member.index))
        else:
            s_terms.append((coef, member.index))
    return c_terms, s_terms


def _expected_depth(c_terms, s_terms) -> int:
    # Per-term depths: ridge construction for d >= 2, one level less in 1D.
    dims = {ix.dim for _, ix in c_terms + s_terms}
    extra = 1 if dims == {1} else 2
    out = [(ix.l1_norm() - 1).bit_length() + extra for _, ix in c_terms]
    out += [(ix.l1_norm() - 1).bit_length() + extra + 1 for _, ix in s_terms]
    return max(out)


def cmd_net_build(args) -> int:
    c_terms, s_terms = _split_terms(args.terms)
    net = relunet.compile_combination(c_terms, s_terms)
    _write_lines(args.out, relunet.serialize(net).splitlines())
    rep = relunet.bound_report(net)
    print(
        f"built width={rep.width} depth={rep.depth} "
        f"max|w|={rep.max_abs_weight:g} max|b|={rep.max_abs_bias:g}"
    )
    return 0


def _load_net(path: str) -> relunet.ReluNetwork:
    try:
        with open(path) as fh:
            return relunet.deserialize(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read network file: {exc}") from None


def cmd_net_eval(args) -> int:
    net = _load_net(args.net)
    for point_text in args.point:
        try:
            x = np.array([float(p) for p in point_text.split(",")])
        except ValueError:
            raise UsageError(f"bad point {point_text!r}") from None
        if x.size != net.input_dim:
            raise UsageError(
                f"point {point_text!r} has dimension {x.size}, network wants {net.input_dim}"
            )
        print(f"{relunet.evaluate(net, x):.17g}")
    return 0


def cmd_net_check(args) -> int:
    net = _load_net(args.net)
    c_terms, s_terms = _split_terms(args.terms)
    rep = relunet.bound_report(net)
    k_l = len(c_terms) + len(s_terms)
    failures = []
    if rep.width != 2 * k_l:
        failures.append(f"width {rep.width} != 2(k+l) = {2 * k_l}")
    expected_depth = _expected_depth(c_terms, s_terms)
    if rep.depth != expected_depth:
        failures.append(f"depth {rep.depth} != expected {expected_depth}")
    coef_bound = 8.0 * max(
        [1.0] + [abs(a) for a, _ in c_terms] + [abs(b) for b, _ in s_terms]
    )
    if max(rep.max_abs_weight, rep.max_abs_bias) > coef_bound + 1e-12:
        failures.append(
            f"weights/biases reach {max(rep.max_abs_weight, rep.max_abs_bias):g} "
            f"> bound {coef_bound:g}"
        )
    d = net.input_dim
    rng = np.random.default_rng(args.seed)
    pts = rng.random((args.grid, d))
    direct = np.zeros(args.grid)
    for a, ix in c_terms:
        direct += a * np.atleast_1d(basis.evaluate(basis.cos_ridge(ix), pts))
    for b, ix in s_terms:
        direct += b * np.atleast_1d(basis.evaluate(basis.sin_ridge(ix), pts))
    got = relunet.evaluate(net, pts)
    dev = np.abs(got - direct)
    worst = int(np.argmax(dev))
    if dev[worst] > args.tol:
        failures.append(
            f"max deviation {dev[worst]:.3e} at point {pts[worst].tolist()} "
            f"(tolerance {args.tol:g})"
        )
    if failures:
        for f in failures:
            print(f"FAIL: {f}")
        return 1
    print(
        f"OK: width={rep.width} depth={rep.depth} "
        f"max|w,b|={max(rep.max_abs_weight, rep.max_abs_bias):g} "
        f"max deviation {dev[worst]:.3e} on {args.grid} points"
    )
    return 0


def cmd_decomp(args) -> int:
    truncations = _parse_int_list(args.truncations)
    if args.target == "cos":
        target = lambda x: math.sqrt(2.0) * np.cos(2 * np.pi * np.asarray(x))
    elif args.target == "sin":
        target = lambda x: math.sqrt(2.0) * np.sin(2 * np.pi * np.asarray(x))
    else:
        raise UsageError(f"unknown target {args.target!r}: expected cos or sin")
    rows = []
    for trunc in truncations:
        series = fourier.decomposition_coefficients(args.target, trunc)
        err_sq = oracle.integrate_nd(
            lambda x: (target(x) - fourier.evaluate_decomposition(series, x)) ** 2,
            1,
            cells=2003,
        )
        rows.append((trunc, math.sqrt(max(err_sq, 0.0))))
    lines = [
        f"# config: decomp target={args.target} truncations={args.truncations}",
        "truncation,l2_error",
    ]
    lines += [f"{t},{e:.17g}" for t, e in rows]
    _write_lines(args.out, lines)
    return 0


def cmd_euler(args) -> int:
    bounds = []
    b = 10
    while b < args.bound:
        bounds.append(b)
        b *= 10
    bounds.append(args.bound)
    lines = [
        f"# config: euler bound={args.bound}",
        "prime_bound,all_primes,delta_5_2,odd_primes,delta_3_2",
    ]
    for bound in bounds:
        full = float(euler_product_partial(bound, include_two=True))
        odd = float(euler_product_partial(bound, include_two=False))
        lines.append(
            f"{bound},{full:.17g},{abs(full - 2.5):.3e},{odd:.17g},{abs(odd - 1.5):.3e}"
        )
    _write_lines(args.out, lines)
    return 0


def _parse_int_list(text: str) -> List[int]:
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None
    if not values:
        raise UsageError("empty integer list")
    return values


def _project_target(text: str, dim: int):
    if text == "const":
        return basis.constant()
    if text.startswith("member:"):
        member = parse_member(text[len("member:") :])
        if member.kind == "const":
            return member
        # The projection system is normalized, so match the sqrt(3) factor.
        return BasisFunction(member.kind, member.index, normalized=True)
    if text.startswith("file:"):
        path = text[len("file:") :]
        if dim != 1:
            raise UsageError("file targets are 1D (columns: x,value)")
        data = np.loadtxt(path, delimiter=",")
        if data.ndim != 2 or data.shape[1] != 2:
            raise UsageError("sample file must have two columns x,value")
        xs, vals = data[:, 0], data[:, 1]
        return lambda x: np.interp(np.asarray(x), xs, vals)
    head, _, k_text = text.partition(":")
    try:
        k = int(k_text) if k_text else 1
    except ValueError:
        raise UsageError(f"bad target frequency {k_text!r}") from None
    if head == "cos":
        if dim == 1:
            return lambda x: math.sqrt(2.0) * np.cos(2 * np.pi * k * np.asarray(x))
        return lambda p: math.sqrt(2.0) * np.cos(2 * np.pi * k * np.asarray(p)[:, 0])
    if head == "sin":
        if dim == 1:
            return lambda x: math.sqrt(2.0) * np.sin(2 * np.pi * k * np.asarray(x))
        return lambda p: math.sqrt(2.0) * np.sin(2 * np.pi * k * np.asarray(p)[:, 0])
    raise UsageError(f"unknown target {text!r}")


def cmd_project(args) -> int:
    size = args.n if args.dim == 1 else args.max_norm
    system = gram.canonical_system(args.dim, size, normalized=True)
    target = _project_target(args.target, args.dim)
    coeffs, err = gram.project_l2(target, system)
    order = np.argsort(-np.abs(coeffs))
    print(f"system size: {len(system)} (dim {args.dim}, truncation {size})")
    print("largest coefficients:")
    for i in order[:8]:
        if abs(coeffs[i]) < 1e-12:
            break
        print(f"  {str(system[i]):>16s}: {coeffs[i]: .12g}")
    print(f"l2 error: {err:.6e}")
    if args.out:
        lines = [
            f"# config: project dim={args.dim} size={size} target={args.target}",
            "member,coefficient",
        ]
        lines += [f"{system[i]},{coeffs[i]:.17g}" for i in range(len(system))]
        _write_lines(args.out, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pltrig",
        description="Piecewise-linear trigonometric basis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gram-spectrum", help="extreme eigenvalues over a truncation ladder")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--n", type=int, default=1024, help="max truncation (d=1 ladder)")
    p.add_argument("--max-norm", type=int, default=4, help="max-norm ladder top (d>=2)")
    p.add_argument("--variant", choices=["raw-c", "normalized"], default="normalized")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gram_spectrum)

    p = sub.add_parser("inner-product", help="analytic vs oracle inner product")
    p.add_argument("f", help="member spec, e.g. C:3 or S:1,-2,3 or const")
    p.add_argument("g")
    p.set_defaults(func=cmd_inner_product)

    p = sub.add_parser("gershgorin", help="row-radius certification of the normalized Gram")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--max-norm", type=int, default=6)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out", default=None)
    p.add_argument("--matrix-out", default=None, help="write the full Gram matrix CSV")
    p.add_argument(
        "--rayleigh", type=int, default=0,
        help="also check this many seeded random Rayleigh quotients",
    )
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gershgorin)

    p_net = sub.add_parser("net", help="ReLU network compiler tools")
    net_sub = p_net.add_subparsers(dest="net_command", required=True)

    p = net_sub.add_parser("build", help="compile terms into a network file")
    p.add_argument(
        "terms",
        nargs="+",
        help="terms like 2.5*C:3; put -- before terms with negative coefficients",
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_net_build)

    p = net_sub.add_parser("eval", help="evaluate a network file at points")
    p.add_argument("--net", required=True)
    p.add_argument("--point", action="append", required=True, help="comma-separated coordinates")
    p.set_defaults(func=cmd_net_eval)

    p = net_sub.add_parser("check", help="verify a network file against terms")
    p.add_argument(
        "terms",
        nargs="+",
        help="terms like 2.5*C:3; put -- before terms with negative coefficients",
    )
    p.add_argument("--net", required=True)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_net_check)

    p = sub.add_parser("decomp", help="L2 error of the Moebius decomposition series")
    p.add_argument("--target", default="cos")
    p.add_argument("--truncations", default="9,19,49,99")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("euler", help="partial Euler products vs 5/2 and 3/2")
    p.add_argument("--bound", type=int, default=10**5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("project", help="L2 projection onto a truncated system")
    p.add_argument("--target", default="cos:1")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--max-norm", type=int, default=2)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_project)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except relunet.ReluNetParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
