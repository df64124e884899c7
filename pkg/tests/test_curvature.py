"""Algebraic curvature tensors and the five-block decomposition."""

import itertools

import numpy as np
import pytest

from g2lab._linalg import max_abs
from g2lab.curvature import (
    CurvatureTensor,
    bianchi_b,
    bianchi_residual,
    coefficient_consistency_report,
    decompose,
    generalized_ricci,
    inner,
    kn_product,
    norm_split_residual,
    phi_product,
    phi_ricci,
    project_to_kernel,
    random_algebraic_curvature,
    ric_W,
    ricci,
    scalar_curvature,
)

RNG = np.random.default_rng(11)
G = np.eye(7)


def random_traceless(rng=RNG):
    h = rng.normal(size=(7, 7))
    h = (h + h.T) / 2
    return h - np.eye(7) * np.trace(h) / 7


def test_bianchi_kernel_membership():
    assert bianchi_residual(kn_product(G)) < 1e-13
    assert bianchi_residual(kn_product(random_traceless())) < 1e-13
    assert bianchi_residual(phi_product(random_traceless())) < 1e-13
    raw = RNG.normal(size=(21, 21))
    generic = CurvatureTensor((raw + raw.T) / 2)
    assert bianchi_residual(generic) > 0.1


def test_bianchi_kernel_dimension_196():
    cols = []
    for p in range(21):
        for q in range(p, 21):
            m = np.zeros((21, 21))
            m[p, q] = m[q, p] = 1.0
            cols.append(bianchi_b(CurvatureTensor(m)).reshape(-1))
    rank = np.linalg.matrix_rank(np.stack(cols, axis=1), tol=1e-8)
    assert 231 - rank == 196


def test_random_algebraic_curvature():
    r = random_algebraic_curvature(seed=5)
    assert bianchi_residual(r) < 1e-12
    dec = decompose(r)
    assert max_abs(dec.reassemble().mat - r.mat) < 1e-12


def test_sphere_pattern_of_kn_product():
    # r_g(g)(x, y, y, x) = 2 for orthonormal x perp y
    full = kn_product(G).to_full()
    assert full[0, 1, 1, 0] == 2.0
    assert full[0, 1, 0, 1] == -2.0
    assert kn_product(np.zeros((7, 7))).norm2() == 0.0


def test_ricci_contraction_constants():
    h = random_traceless()
    np.testing.assert_allclose(ricci(kn_product(G)), 12 * G, atol=1e-13)
    np.testing.assert_allclose(ricci(kn_product(h)), 5 * h, atol=1e-12)
    np.testing.assert_allclose(ricci(phi_product(h)), h, atol=1e-12)
    np.testing.assert_allclose(phi_ricci(kn_product(G)), -24 * G, atol=1e-12)
    np.testing.assert_allclose(phi_ricci(kn_product(h)), 4 * h, atol=1e-12)
    np.testing.assert_allclose(phi_ricci(phi_product(h)), 92 / 3 * h, atol=1e-11)
    assert max_abs(ricci(CurvatureTensor(np.zeros((21, 21))))) == 0.0


def test_phi_ricci_trace_is_minus_two_scalar():
    for seed in range(5):
        r = random_algebraic_curvature(seed)
        assert abs(np.trace(phi_ricci(r)) + 2 * scalar_curvature(r)) < 1e-11


def test_norm_constants():
    h = random_traceless()
    hn = (h * h).sum()
    assert abs(kn_product(h).norm2() - 20 * hn) < 1e-10
    assert abs(phi_product(h).norm2() - 92 / 3 * hn) < 1e-10
    assert abs(inner(phi_product(h), kn_product(h)) - 4 * hn) < 1e-10
    assert abs(kn_product(G).norm2() - 336) < 1e-12


def test_generalized_ricci_and_ric_w():
    h = random_traceless()
    r = kn_product(h)
    np.testing.assert_allclose(generalized_ricci(r, (1, 0)), 5 * h, atol=1e-12)
    # ric_W kills the image of r_g on traceless tensors
    assert max_abs(ric_W(r)) < 1e-12
    # pure W27 elements have c^g = 0 and ric_W = (112/3) h / 20-normalised
    w27 = kn_product(h) - 5 * phi_product(h)
    assert max_abs(ricci(w27)) < 1e-11
    np.testing.assert_allclose(ric_W(w27), 112 / 3 * h, atol=1e-10)


def test_decompose_of_scalar_block():
    dec = decompose(kn_product(G))
    assert abs(dec.s - 84.0) < 1e-12
    assert max_abs(dec.w77.mat) < 1e-12
    assert max_abs(dec.w64.mat) < 1e-12
    assert max_abs(dec.w27.mat) < 1e-12
    assert max_abs(dec.ric0) < 1e-12


def test_decompose_of_pure_w27():
    h = random_traceless()
    w27 = kn_product(h) - 5 * phi_product(h)
    dec = decompose(w27, tol=1e-7)
    assert max_abs(dec.w27.mat - w27.mat) < 1e-10
    assert max_abs(dec.w77.mat) < 1e-10
    assert max_abs(dec.w64.mat) < 1e-10
    assert max_abs(dec.ric0) < 1e-10
    assert abs(dec.s) < 1e-10
    # its phi-Ricci is nonzero even though the plain Ricci vanishes
    assert max_abs(phi_ricci(w27)) > 1.0


def test_decompose_nearly_parallel_shape():
    # R = W + tau0^2/32 r_g(g) with W a 77-block: pure (W77, S) output
    tau0 = 1.7
    w = decompose(random_algebraic_curvature(3)).w77
    r = w + (tau0**2 / 32) * kn_product(G)
    dec = decompose(r, tol=1e-7)
    assert abs(dec.s - 21 / 8 * tau0**2) < 1e-10
    assert max_abs(dec.w77.mat - w.mat) < 1e-10
    assert max_abs(dec.w64.mat) < 1e-10
    assert max_abs(dec.w27.mat) < 1e-10
    assert max_abs(dec.ric0) < 1e-10


def test_decompose_random_blocks():
    for seed in range(10):
        r = random_algebraic_curvature(seed)
        dec = decompose(r)
        assert max_abs(dec.reassemble().mat - r.mat) < 1e-12
        blocks = [dec.w77, dec.w64, dec.w27, dec.ricci_block, dec.scalar_block]
        for a, b in itertools.combinations(blocks, 2):
            assert abs(inner(a, b)) < 1e-10
        assert norm_split_residual(r, dec) < 1e-12
        # Weyl blocks are Ricci-flat in both contractions
        for w in (dec.w77, dec.w64):
            assert max_abs(ricci(w)) < 1e-10
            assert max_abs(phi_ricci(w)) < 1e-10
        assert max_abs(ricci(dec.w27)) < 1e-10


def test_block_idempotency():
    dec = decompose(random_algebraic_curvature(21))
    for name in ("w77", "w64", "w27"):
        block = getattr(dec, name)
        again = decompose(block, tol=1e-6)
        assert max_abs(getattr(again, name).mat - block.mat) < 1e-9
        others = {"w77", "w64", "w27"} - {name}
        for o in others:
            assert max_abs(getattr(again, o).mat) < 1e-9


def test_decompose_rejects_non_bianchi():
    raw = RNG.normal(size=(21, 21))
    with pytest.raises(ValueError):
        decompose(CurvatureTensor((raw + raw.T) / 2))


def test_project_to_kernel_is_orthogonal_projection():
    raw = RNG.normal(size=(21, 21))
    r = CurvatureTensor((raw + raw.T) / 2)
    p = project_to_kernel(r)
    assert bianchi_residual(p) < 1e-12
    # residual r - p is orthogonal to the kernel
    assert abs(inner(r - p, p)) < 1e-9


def test_coefficient_consistency_report():
    for name, (derived, stated, diff) in coefficient_consistency_report().items():
        assert diff < 1e-10, f"{name}: derived {derived} vs stated {stated}"


def test_exact_mode_decomposition():
    r = random_algebraic_curvature(seed=2, exact=True)
    dec = decompose(r)
    assert all(v == 0 for v in (dec.reassemble().mat - r.mat).reshape(-1))
    assert norm_split_residual(r, dec) == 0.0
