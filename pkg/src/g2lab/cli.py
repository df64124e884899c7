"""Command-line front end.

    g2lab identities [--exact] [--tol T]
    g2lab curvature [--count N] [--seed S] [--tol T]
    g2lab analyze FILE.g2 [--json] [--tol T]
    g2lab warp --f PROFILE --theta PROFILE --sigma S --t T
    g2lab sweep [--t T] [--json]

Exit codes: 0 all checks passed, 1 at least one check failed, 2 bad input.
The default tolerance is 1e-9 (relative where a scale is available) and can
also be set through the environment variable G2LAB_TOL.

Lie algebras are read from UTF-8 JSON files:

    {"dim": 7,
     "coframe_d": [{"k": 1, "terms": [{"i": 1, "j": 7, "coeff": -1.0}]}],
     "phi": [{"indices": [1, 2, 7], "coeff": 1.0}, ...]}   # optional

meaning de^k = sum_j coeff e^ij; a missing "phi" defaults to the standard
three-form.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from ._linalg import max_abs
from .exterior_algebra import Form, check_contraction_identities, standard_phi
from . import cohomo_one as co
from .curvature import (
    decompose,
    inner,
    norm_split_residual,
    random_algebraic_curvature,
)
from .homogeneous import Report, analyze
from .torsion import fg_type


def _tol(args) -> float:
    if args.tol is not None:
        return args.tol
    return float(os.environ.get("G2LAB_TOL", "1e-9"))


def _print_checks(rows, as_json: bool) -> int:
    if as_json:
        print(json.dumps({"checks": rows, "passed": all(r["passed"] for r in rows)}, indent=2))
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            mark = "ok " if r["passed"] else "FAIL"
            print(f"[{mark}] {r['name']:<{width}}  residual {r['residual']:.3e}")
        n_bad = sum(not r["passed"] for r in rows)
        print(f"{len(rows) - n_bad}/{len(rows)} checks passed")
    return 0 if all(r["passed"] for r in rows) else 1


# --- identities --------------------------------------------------------------------


def random_traceless(seed: int = 0, exact: bool = False) -> np.ndarray:
    """Random symmetric traceless tensor; dyadic entries so exact mode is exact."""
    from ._linalg import as_mode, eye

    rng = np.random.default_rng(seed)
    h = np.round(rng.normal(size=(7, 7)) * 16) / 16
    h = (h + h.T) / 2
    h = as_mode(h, exact)
    return h - eye(7, exact) * (h.trace() / 7)


def cmd_identities(args) -> int:
    from .g2_algebra import (
        SIGMA_LAMBDA3_CONSTANT,
        VALID_LABELS,
        lambda3,
        wedge3_test_pair,
        projector_matrix,
        sigma_contract,
        wedge3,
    )
    from ._linalg import eye, scalar
    from .curvature import inner, kn_product, phi_product, phi_ricci, ricci

    exact = args.exact
    tol = 0.0 if exact else max(_tol(args), 1e-12)
    rows = []

    def add(name, residual):
        rows.append(
            {"name": name, "residual": float(residual), "passed": float(residual) <= tol}
        )

    for name, res in check_contraction_identities(exact).items():
        add(f"contraction: {name}", res)

    for r, d in VALID_LABELS:
        p = projector_matrix(r, d, exact)
        add(f"projector ({r},{d}) idempotent", max_abs(p.dot(p) - p))
        add(f"projector ({r},{d}) trace = {d}", abs(float(p.trace()) - d))

    g = eye(7, exact)
    phi = standard_phi(exact)
    add("lambda3(g) = 3 phi", max_abs(lambda3(g).coeffs - 3 * phi.coeffs))
    add("sigma(phi) = 6 g", max_abs(sigma_contract(phi) - 6 * g))

    h = random_traceless(0, exact)
    hn = (h * h).sum()
    add("|lambda3(h)|^2 = 2 ||h||^2", abs(float(lambda3(h).norm2() - 2 * hn)))
    s0 = sigma_contract(lambda3(h))
    s0 = s0 - g * (s0.trace() / 7)
    add(
        f"sigma(lambda3(h))_0 = {SIGMA_LAMBDA3_CONSTANT} h",
        max_abs(s0 - SIGMA_LAMBDA3_CONSTANT * h),
    )

    gp, gpp = wedge3_test_pair(exact)
    add("mixed tensor ||gamma'||^2 = 4", abs(float(gp.tensor_norm2() - 4)))
    add("mixed tensor ||gamma''||^2 = 16/3", abs(float(gpp.tensor_norm2() * 3 - 16)))
    add(
        "wedge3(gamma'') = 4/3 wedge3(gamma')",
        max_abs(3 * wedge3(gpp).coeffs - 4 * wedge3(gp).coeffs),
    )
    gam = gp + gpp
    add(
        "7 ||gamma||^2 = ||wedge3 gamma||^2",
        abs(float(7 * gam.tensor_norm2() - wedge3(gam).tensor_norm2())),
    )

    rg, rp = kn_product(h), phi_product(h)
    one = scalar(1, exact)
    add("c^g(r_g(h)) = 5 h", max_abs(ricci(rg) - 5 * h))
    add("c^g(r_phi(h)) = h", max_abs(ricci(rp) - h))
    add("c^phi(r_g(h)) = 4 h", max_abs(phi_ricci(rg) - 4 * h))
    add("c^phi(r_phi(h)) = 92/3 h", max_abs(phi_ricci(rp) - (92 * one / 3) * h))
    rgg = kn_product(g)
    add("c^g(r_g(g)) = 12 g", max_abs(ricci(rgg) - 12 * g))
    add("c^phi(r_g(g)) = -24 g", max_abs(phi_ricci(rgg) + 24 * g))
    add("||r_g(h)||^2 = 20 ||h||^2", abs(float(rg.norm2() - 20 * hn)))
    add("||r_phi(h)||^2 = 92/3 ||h||^2", abs(float(3 * rp.norm2() - 92 * hn)))
    add("<r_phi(h), r_g(h)> = 4 ||h||^2", abs(float(inner(rp, rg) - 4 * hn)))
    add("||r_g(g)||^2 = 336", abs(float(rgg.norm2() - 336)))

    return _print_checks(rows, args.json)


# --- curvature ---------------------------------------------------------------------


def cmd_curvature(args) -> int:
    tol = _tol(args)
    rows = []
    worst = {"reassemble": 0.0, "orthogonality": 0.0, "norm split": 0.0}
    import itertools

    for i in range(args.count):
        r = random_algebraic_curvature(seed=args.seed + i)
        dec = decompose(r)
        worst["reassemble"] = max(
            worst["reassemble"], max_abs(dec.reassemble().mat - r.mat)
        )
        blocks = [dec.w77, dec.w64, dec.w27, dec.ricci_block, dec.scalar_block]
        worst["orthogonality"] = max(
            worst["orthogonality"],
            max(abs(float(inner(a, b))) for a, b in itertools.combinations(blocks, 2)),
        )
        worst["norm split"] = max(worst["norm split"], norm_split_residual(r, dec))
    for name, res in worst.items():
        rows.append(
            {
                "name": f"{name} over {args.count} random tensors",
                "residual": res,
                "passed": res <= max(tol, 1e-10),
            }
        )
    return _print_checks(rows, args.json)


# --- analyze -----------------------------------------------------------------------


def load_spec(path: str):
    """Parse a .g2 JSON document into (LieAlgebraSpec, phi)."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("dim", 7) != 7:
        raise ValueError(f"{path}: only dim = 7 is supported")
    coframe = {}
    for entry in doc.get("coframe_d", []):
        k = int(entry["k"])
        if not 1 <= k <= 7:
            raise ValueError(f"{path}: coframe index k = {k} out of range")
        terms = {}
        for t in entry.get("terms", []):
            i, j = int(t["i"]), int(t["j"])
            if not 1 <= i < j <= 7:
                raise ValueError(f"{path}: bad index pair ({i}, {j}) for k = {k}")
            terms[(i, j)] = float(t["coeff"])
        coframe[k] = terms
    from .homogeneous import spec_from_coframe_d

    name = doc.get("name", os.path.splitext(os.path.basename(path))[0])
    spec = spec_from_coframe_d(name, coframe)
    phi = None
    if "phi" in doc:
        terms = {tuple(t["indices"]): float(t["coeff"]) for t in doc["phi"]}
        phi = Form.from_terms(3, terms)
    return spec, phi


def report_to_text(rep: Report) -> str:
    lines = [f"analysis of {rep.name}"]
    for key, val in rep.summary.items():
        lines.append(f"  {key}: {val}")
    width = max(len(c.name) for c in rep.checks)
    for c in rep.checks:
        mark = "ok " if c.passed else "FAIL"
        lines.append(f"[{mark}] {c.name:<{width}}  residual {c.residual:.3e}")
    lines.append("PASS" if rep.passed else "FAIL")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    try:
        spec, phi = load_spec(args.path)
        rep = analyze(spec, phi, tol=_tol(args))
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rep.as_dict(), indent=2, default=str))
    else:
        print(report_to_text(rep))
    return 0 if rep.passed else 1


# --- warp / sweep -------------------------------------------------------------------


def cmd_warp(args) -> int:
    try:
        f = co.jet_profile(args.f, args.t)
        theta = co.jet_profile(args.theta, args.t)
        spec = co.WarpSpec(f, theta, args.sigma)
        tor = co.warped_torsion(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cls = sorted(fg_type(tor))
    payload = {
        "t": args.t,
        "fg_type": cls,
        "tau0": float(tor.tau0),
        "tau1_norm": tor.norms()[4],
        "tau2_norm": tor.norms()[2],
        "tau3_norm": tor.norms()[3],
        "scalar_curvature": co.scalar_curvature_warped(spec),
        "ricW_residual": co.ricW_vanishes(spec),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")
    return 0


def cmd_sweep(args) -> int:
    table = co.type_sweep(t=args.t)
    realized = sorted({tuple(v) for v in table.values()})
    if args.json:
        print(json.dumps({"table": table, "realized": [list(r) for r in realized]}, indent=2))
    else:
        width = max(len(k) for k in table)
        for name, cls in table.items():
            label = "{" + ", ".join(map(str, cls)) + "}" if cls else "parallel"
            print(f"{name:<{width}}  {label}")
        print("realized classes:", [list(r) for r in realized])
    return 0


# --- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="g2lab", description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=None, help="residual tolerance")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="run the pointwise identity suite")
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    p.set_defaults(fn=cmd_identities)

    p = sub.add_parser("curvature", help="verify the five-block decomposition")
    p.add_argument("--count", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_curvature)

    p = sub.add_parser("analyze", help="analyze a Lie algebra document")
    p.add_argument("path")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("warp", help="torsion of a warped product at a point")
    p.add_argument("--f", default="sin")
    p.add_argument("--theta", default="t")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.set_defaults(fn=cmd_warp)

    p = sub.add_parser("sweep", help="Fernandez-Gray type sweep")
    p.add_argument("--t", type=float, default=1.0)
    p.set_defaults(fn=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
