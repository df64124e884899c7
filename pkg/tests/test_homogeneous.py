"""Left-invariant geometry: connection, curvature, torsion, analyze."""

import numpy as np
import pytest

from g2lab._linalg import max_abs
from g2lab.curvature import decompose, kn_product, ric_W, scalar_curvature
from g2lab.exterior_algebra import (
    Form,
    dim_of,
    form_inner,
    standard_phi,
    standard_phi_dual,
)
from g2lab.g2_algebra import split_v14
from g2lab.homogeneous import (
    LieAlgebraSpec,
    analyze,
    builtin_examples,
    canonical_connection,
    covariant_wedge,
    d_squared_residual,
    geometry,
    invariant_d,
    invariant_d_matrices,
    invariant_delta,
    jacobi_residual,
    levi_civita,
    nabla_bar_tau,
    riemann,
    spec_from_coframe_d,
)
from g2lab.torsion import fg_type

PHI = standard_phi()


def diag_spec(name, a):
    return spec_from_coframe_d(name, {i: {(i, 7): -a[i - 1]} for i in range(1, 7)})


def almost_abelian(name, mat):
    c = np.zeros((7, 7, 7))
    for k in range(6):
        for j in range(6):
            c[k, j, 6] = mat[k, j]
            c[k, 6, j] = -mat[k, j]
    return LieAlgebraSpec(name, c)


SU2SU2 = spec_from_coframe_d(
    "su2su2",
    {
        1: {(2, 3): -1},
        2: {(1, 3): 1},
        3: {(1, 2): -1},
        4: {(5, 6): -1},
        5: {(4, 6): 1},
        6: {(4, 5): -1},
    },
)
HEIS = spec_from_coframe_d("heis", {7: {(1, 2): -1, (3, 4): -1, (5, 6): -1}})


def test_spec_validation():
    with pytest.raises(ValueError):
        LieAlgebraSpec("bad-shape", np.zeros((7, 7)))
    c = np.zeros((7, 7, 7))
    c[0, 1, 2] = 1.0  # not antisymmetric in (i, j)
    with pytest.raises(ValueError):
        LieAlgebraSpec("bad-sym", c)
    with pytest.raises(ValueError):
        spec_from_coframe_d("bad-pair", {1: {(3, 2): 1.0}})


def test_jacobi_rejection():
    bad = spec_from_coframe_d("nojacobi", {1: {(1, 7): -1}, 7: {(3, 4): -0.5}})
    assert jacobi_residual(bad) > 0.1
    with pytest.raises(ValueError):
        levi_civita(bad)


def test_abelian_is_flat():
    spec = builtin_examples()["flat"]["spec"]
    assert max_abs(levi_civita(spec)) == 0.0
    assert max_abs(riemann(spec).mat) == 0.0
    mats = invariant_d_matrices(spec)
    assert max_abs(mats[3]) == 0.0
    assert max_abs(invariant_delta(mats, PHI).coeffs) == 0.0
    xi, gamma_bar = canonical_connection(spec)
    assert max_abs(xi.xi) == 0.0 and max_abs(gamma_bar) == 0.0


def test_hyperbolic_koszul_pattern():
    spec = builtin_examples()["hyperbolic"]["spec"]
    gamma = levi_civita(spec)
    for i in range(6):
        assert gamma[i, 6, i] == 1.0
        assert gamma[i, i, 6] == -1.0
    assert max_abs(gamma[6]) == 0.0
    # metric compatibility and torsion-free
    assert max_abs(gamma + gamma.transpose(0, 2, 1)) == 0.0
    cl = spec.c.transpose(1, 2, 0)
    assert max_abs(gamma - gamma.transpose(1, 0, 2) - cl) == 0.0


def test_hyperbolic_constant_curvature_oracle():
    # sectional curvature -1: R = -(1/2) r_g(g) exactly
    spec = builtin_examples()["hyperbolic"]["spec"]
    r = riemann(spec)
    assert max_abs(r.mat + kn_product(np.eye(7)).mat / 2) < 1e-13
    dec = decompose(r)
    assert abs(dec.s + 42.0) < 1e-12
    assert max_abs(dec.w77.mat) < 1e-12
    assert max_abs(dec.w64.mat) < 1e-12
    assert max_abs(dec.w27.mat) < 1e-12
    assert max_abs(dec.ric0) < 1e-12


def test_hyperbolic_torsion_type_four():
    spec = builtin_examples()["hyperbolic"]["spec"]
    geo = geometry(spec)
    t = geo.torsion
    assert fg_type(t) == {4}
    np.testing.assert_allclose(t.tau1.coeffs, Form.basis((7,)).coeffs, atol=1e-13)
    # xibar concentrates in the 7-part
    xb = geo.xi.xi_bar
    assert abs(np.trace(xb)) < 1e-12
    assert max_abs(xb + xb.T) < 1e-12  # purely antisymmetric


def test_d_squared_and_adjointness_unimodular():
    rng = np.random.default_rng(0)
    for spec in (SU2SU2, HEIS, builtin_examples()["flat"]["spec"]):
        assert d_squared_residual(spec) < 1e-12
        mats = invariant_d_matrices(spec)
        for k in range(1, 7):
            a = Form(k - 1, rng.normal(size=dim_of(k - 1)))
            b = Form(k, rng.normal(size=dim_of(k)))
            lhs = form_inner(invariant_d(mats, a), b)
            rhs = form_inner(a, invariant_delta(mats, b))
            assert abs(lhs - rhs) < 1e-12


def test_bryant_structure_equations():
    spec = builtin_examples()["bryant"]["spec"]
    mats = invariant_d_matrices(spec)
    assert jacobi_residual(spec) < 1e-13
    dphi = invariant_d(mats, PHI)
    assert max_abs(dphi.coeffs) < 1e-13  # closed three-form
    # delta phi = tau lies in Lambda^2_14
    geo = geometry(spec)
    tau = geo.torsion.tau2
    from g2lab.g2_algebra import project

    assert max_abs(project(tau, (2, 14)).coeffs - tau.coeffs) < 1e-12
    assert max_abs(geo.delta(PHI).coeffs - tau.coeffs) < 1e-12


def test_bryant_parallel_torsion_and_w64():
    geo = geometry(builtin_examples()["bryant"]["spec"])
    nb = nabla_bar_tau(geo)
    assert max_abs(nb.array) < 1e-12  # nabla-bar tau = 0
    dec = decompose(geo.curvature)
    assert max_abs(dec.w64.mat) < 1e-12
    # scalar curvature from the closed-case formula
    assert abs(scalar_curvature(geo.curvature) + geo.torsion.tau2.norm2() / 2) < 1e-12


def test_bryant_extremally_pinched_ricci():
    geo = geometry(builtin_examples()["bryant"]["spec"])
    from g2lab.curvature import ricci, traceless_part

    ric0 = traceless_part(ricci(geo.curvature))
    s = scalar_curvature(geo.curvature)
    assert abs((ric0 * ric0).sum() - 4 / 21 * s * s) < 1e-10


def test_canonical_connection_annihilates_phi():
    for spec in (
        builtin_examples()["bryant"]["spec"],
        builtin_examples()["hyperbolic"]["spec"],
        diag_spec("d2", [1, 2, 3, 1, 2, 3]),
        SU2SU2,
    ):
        xi, gamma_bar = canonical_connection(spec)
        geo = geometry(spec)
        res = max(max_abs(f.coeffs) for f in geo.nabla_bar(PHI))
        assert res < 1e-12
        assert max_abs(gamma_bar + gamma_bar.transpose(0, 2, 1)) < 1e-13


def test_d_equals_alt_grad():
    spec = diag_spec("d3", [0.5, 1.5, 2.5, 0.7, 1.1, 0.3])
    geo = geometry(spec)
    for form in (PHI, standard_phi_dual(), geo.torsion.tau2):
        lhs = covariant_wedge(geo.gamma, form)
        rhs = geo.d(form)
        assert max_abs(lhs.coeffs - rhs.coeffs) < 1e-12


def test_nabla_bar_tau_split_closed():
    geo = geometry(HEIS)
    # heis is not closed; use bryant and a closed nilpotent variant
    geo = geometry(builtin_examples()["bryant"]["spec"])
    nb = nabla_bar_tau(geo)
    g64, g27, g7 = split_v14(nb)
    assert max_abs(g7.array) < 1e-12


@pytest.mark.parametrize(
    "name", ["flat", "hyperbolic", "bryant"]
)
def test_analyze_builtins_pass(name):
    ex = builtin_examples()[name]
    rep = analyze(ex["spec"])
    assert rep.passed, [c.name for c in rep.failed_checks()]
    expected = ex["expected"]
    if "fg_type" in expected:
        assert rep.summary["fg_type"] == expected["fg_type"]
    if "scalar_curvature" in expected:
        assert abs(rep.summary["scalar_curvature"] - expected["scalar_curvature"]) < 1e-9
    if expected.get("extremally_pinched"):
        assert rep.summary["extremally_pinched"]
    if expected.get("parallel_torsion"):
        assert rep.summary["parallel_torsion"]
    if expected.get("W64_zero"):
        assert rep.summary["block_norms"]["W64"] < 1e-12
    if expected.get("pure_scalar_block"):
        bn = rep.summary["block_norms"]
        assert max(bn["W77"], bn["W64"], bn["W27"], bn["R0"]) < 1e-10


def test_analyze_generic_families():
    rng = np.random.default_rng(42)
    specs = [
        diag_spec("d2", [1, 2, 3, 1, 2, 3]),
        SU2SU2,
        HEIS,
        almost_abelian("aa1", rng.normal(size=(6, 6))),
    ]
    for spec in specs:
        rep = analyze(spec)
        assert rep.passed, (spec.name, [c.name for c in rep.failed_checks()])


def test_analyze_flat_summary_is_trivial():
    rep = analyze(builtin_examples()["flat"]["spec"])
    assert rep.summary["fg_type"] == []
    assert rep.summary["scalar_curvature"] == 0.0
    assert all(v < 1e-14 for v in rep.summary["block_norms"].values())


def test_exact_mode_bryant():
    from fractions import Fraction

    ex = builtin_examples(exact=True)["bryant"]
    geo = geometry(ex["spec"])
    s = scalar_curvature(geo.curvature)
    assert s == -36
    from g2lab.curvature import ricci, traceless_part

    ric0 = traceless_part(ricci(geo.curvature))
    assert (ric0 * ric0).sum() == Fraction(4, 21) * s * s
    assert all(v == 0 for v in nabla_bar_tau(geo).array.reshape(-1))


def test_conformal_scaling_of_lie_spec():
    # scaling the structure constants by e^-f rescales Ric^W by e^-2f
    import math

    spec = builtin_examples()["bryant"]["spec"]
    f0 = 0.42
    scaled = LieAlgebraSpec("bryant-scaled", math.exp(-f0) * spec.c)
    rw = ric_W(geometry(spec).curvature)
    rw2 = ric_W(geometry(scaled).curvature)
    assert max_abs(rw) > 1.0
    assert max_abs(rw2 - math.exp(-2 * f0) * rw) < 1e-10
    assert fg_type(geometry(scaled).torsion) == {2}
