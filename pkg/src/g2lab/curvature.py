"""Algebraic curvature tensors on R^7 and their five G2 blocks.

A curvature-like tensor is stored as a symmetric 21 x 21 matrix over the
i < j pair basis of Lambda^2, M[(ij), (kl)] = R_ijkl.  Component
conventions:

* R_ijkl = g(R(e_i, e_j) e_k, e_l), so the round sphere has R_ijji = +1
  and r_g(g) = g (.) g equals -2 Id as a pair matrix;
* norms sum over all four indices: ||R||^2 = 4 ||M||_F^2, which makes
  ||r_g(g)||^2 = 336;
* the Ricci contraction is c^g(r)(u, v) = r(u, e_i, e_i, v) and the
  phi-Ricci is c^phi(r)(u, v) = 4 r(u -| phi, v -| phi), evaluated by
  pairing pair-basis coefficient vectors.

The five-block splitting is

    S    = s/84 r_g(g)
    R_0  = 1/5 r_g(Ric0^g)
    W_27 = 3/112 (r_g - 5 r_phi)(Ric^W),   Ric^W = (4 Ric0^g - 5 Ric0^phi)/20
    W_64 = P_odot(W - W_27)
    W_77 = P_g2(W - W_27)

with P_g2 = Q14 X Q14 and P_odot = Q7 X Q14 + Q14 X Q7 acting on the pair
matrix through the degree-2 projectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import eye, is_exact, max_abs, scalar, zeros
from .exterior_algebra import BASIS, DIM, INDEX, basis_vector, interior, phi_arrays
from .g2_algebra import projector_matrix

PAIRS = BASIS[2]
NPAIRS = len(PAIRS)
PAIR_INDEX = INDEX[2]


@dataclass(frozen=True)
class CurvatureTensor:
    """Element of S^2(Lambda^2 R^7) over the i < j pair basis."""

    mat: np.ndarray

    def __post_init__(self):
        if self.mat.shape != (NPAIRS, NPAIRS):
            raise ValueError(f"expected a {NPAIRS} x {NPAIRS} matrix")

    @property
    def exact(self) -> bool:
        return is_exact(self.mat)

    def symmetry_residual(self) -> float:
        return max_abs(self.mat - self.mat.T)

    def to_full(self) -> np.ndarray:
        """Full R_ijkl array with both antisymmetries unfolded."""
        full = zeros((DIM,) * 4, self.exact)
        for p, (i, j) in enumerate(PAIRS):
            for q, (k, l) in enumerate(PAIRS):
                v = self.mat[p, q]
                if v == 0:
                    continue
                full[i, j, k, l] = v
                full[j, i, k, l] = -v
                full[i, j, l, k] = -v
                full[j, i, l, k] = v
        return full

    def norm2(self):
        """Tensor norm, summed over all four indices."""
        return 4 * (self.mat * self.mat).sum()

    def __add__(self, other):
        return CurvatureTensor(self.mat + other.mat)

    def __sub__(self, other):
        return CurvatureTensor(self.mat - other.mat)

    def __mul__(self, c):
        return CurvatureTensor(self.mat * c)

    __rmul__ = __mul__

    def __neg__(self):
        return CurvatureTensor(-self.mat)


def from_full(full: np.ndarray) -> CurvatureTensor:
    m = zeros((NPAIRS, NPAIRS), is_exact(full))
    for p, (i, j) in enumerate(PAIRS):
        for q, (k, l) in enumerate(PAIRS):
            m[p, q] = full[i, j, k, l]
    return CurvatureTensor(m)


def inner(a: CurvatureTensor, b: CurvatureTensor):
    return 4 * (a.mat * b.mat).sum()


# --- Bianchi map ----------------------------------------------------------------


def bianchi_b(r: CurvatureTensor) -> np.ndarray:
    """(br)(X,Y,Z,W) = R(X,Y,Z,W) + R(Y,Z,X,W) + R(Z,X,Y,W)."""
    full = r.to_full()
    return full + full.transpose(1, 2, 0, 3) + full.transpose(2, 0, 1, 3)


def bianchi_residual(r: CurvatureTensor) -> float:
    return max_abs(bianchi_b(r))


def project_to_kernel(r: CurvatureTensor) -> CurvatureTensor:
    """Orthogonal projection of S^2(Lambda^2) onto ker b.

    Subtracts the total antisymmetrisation (the Lambda^4 part), which is
    b/3 reindexed into S^2(Lambda^2).
    """
    full = r.to_full()
    lam4 = (full + full.transpose(1, 2, 0, 3) + full.transpose(2, 0, 1, 3)) / 3
    return from_full(full - lam4)


def random_algebraic_curvature(seed: int = 0, exact: bool = False) -> CurvatureTensor:
    """Random element of ker b (Bianchi residual at rounding level)."""
    rng = np.random.default_rng(seed)
    if exact:
        from fractions import Fraction

        raw = rng.integers(-9, 10, size=(NPAIRS, NPAIRS))
        m = zeros((NPAIRS, NPAIRS), True)
        for p in range(NPAIRS):
            for q in range(NPAIRS):
                m[p, q] = Fraction(int(raw[p, q] + raw[q, p]), 2)
    else:
        raw = rng.normal(size=(NPAIRS, NPAIRS))
        m = (raw + raw.T) / 2
    return project_to_kernel(CurvatureTensor(m))


# --- contractions ----------------------------------------------------------------


def ricci(r: CurvatureTensor) -> np.ndarray:
    """c^g(r)(u, v) = r(u, e_i, e_i, v)."""
    return r.to_full().trace(axis1=1, axis2=2)


def scalar_curvature(r: CurvatureTensor):
    return ricci(r).trace()


_IPHI_MATRIX: dict = {}


def _iphi_matrix(exact: bool) -> np.ndarray:
    """7 x 21 matrix whose row u holds the pair coefficients of e_u -| phi."""
    key = bool(exact)
    if key not in _IPHI_MATRIX:
        from .exterior_algebra import standard_phi

        phi = standard_phi(exact)
        rows = [interior(basis_vector(u + 1, exact), phi).coeffs for u in range(DIM)]
        _IPHI_MATRIX[key] = np.stack(rows, axis=0)
    return _IPHI_MATRIX[key]


def phi_ricci(r: CurvatureTensor) -> np.ndarray:
    """c^phi(r)(u, v) = 4 r(u -| phi, v -| phi); trace is -2 s_g."""
    b = _iphi_matrix(r.exact)
    return 4 * b.dot(r.mat).dot(b.T)


def traceless_part(h: np.ndarray) -> np.ndarray:
    return h - eye(DIM, is_exact(h)) * (h.trace() / DIM)


# --- Kulkarni-Nomizu style products ------------------------------------------------


def kn_product(h: np.ndarray) -> CurvatureTensor:
    """r_g(h) = h (.) g, the Kulkarni-Nomizu product with the metric."""
    h = np.asarray(h)
    g = eye(DIM, is_exact(h))
    gh = np.multiply.outer(g, h)  # gh[a,b,c,d] = g_ab h_cd
    # R_ijkl = h_jk g_il - h_ik g_jl + h_il g_jk - h_jl g_ik
    full = (
        gh.transpose(0, 2, 3, 1)  # g_il h_jk
        - gh.transpose(2, 0, 3, 1)  # g_jl h_ik
        + gh.transpose(2, 0, 1, 3)  # g_jk h_il
        - gh.transpose(0, 2, 1, 3)  # g_ik h_jl
    )
    return from_full(full)


def phi_product(h: np.ndarray) -> CurvatureTensor:
    """r_phi(h): insert both slots of h into phi, Bianchi-projected.

    T_ijkl = h_ab phi_aij phi_bkl followed by removal of the Lambda^4 part.
    """
    h = np.asarray(h)
    p3, _ = phi_arrays(is_exact(h))
    hphi = np.tensordot(h, p3, axes=([1], [0]))  # (a, i, j) -> h_ab phi_bij
    full = np.tensordot(hphi, p3, axes=([0], [0]))  # phi_a.. phi_a..
    return project_to_kernel(from_full(full))


def generalized_ricci(r: CurvatureTensor, k) -> np.ndarray:
    """Ric0^k = k1 Ric0^g + k2 Ric0^phi (traceless)."""
    k1, k2 = k
    return k1 * traceless_part(ricci(r)) + k2 * traceless_part(phi_ricci(r))


def ric_W(r: CurvatureTensor) -> np.ndarray:
    """Ric^W = (4 Ric0^g - 5 Ric0^phi) / 20, the conformally invariant one."""
    return generalized_ricci(r, (4, -5)) / 20


# --- the five-block decomposition ---------------------------------------------------


@dataclass(frozen=True)
class CurvatureDecomposition:
    w77: CurvatureTensor
    w64: CurvatureTensor
    w27: CurvatureTensor
    ric0: np.ndarray  # traceless Ricci, determines R_0 = r_g(ric0)/5
    s: object  # scalar curvature

    @property
    def scalar_block(self) -> CurvatureTensor:
        g = eye(DIM, is_exact(self.ric0))
        return (self.s / 84) * kn_product(g)

    @property
    def ricci_block(self) -> CurvatureTensor:
        return kn_product(self.ric0) * (scalar(1, is_exact(self.ric0)) / 5)

    def reassemble(self) -> CurvatureTensor:
        return (
            self.w77 + self.w64 + self.w27 + self.ricci_block + self.scalar_block
        )

    def block_norms(self) -> dict:
        return {
            "W77": float(self.w77.norm2()),
            "W64": float(self.w64.norm2()),
            "W27": float(self.w27.norm2()),
            "R0": float(self.ricci_block.norm2()),
            "S": float(self.scalar_block.norm2()),
        }


def _p_g2(m: np.ndarray, exact: bool) -> np.ndarray:
    q14 = projector_matrix(2, 14, exact)
    return q14.dot(m).dot(q14)


def _p_odot(m: np.ndarray, exact: bool) -> np.ndarray:
    q7 = projector_matrix(2, 7, exact)
    q14 = projector_matrix(2, 14, exact)
    return q7.dot(m).dot(q14) + q14.dot(m).dot(q7)


def decompose(r: CurvatureTensor, tol: float = 1e-9) -> CurvatureDecomposition:
    """Split an algebraic curvature tensor into its five orthogonal blocks.

    Rejects input whose first Bianchi residual exceeds tol (relative to the
    largest entry) rather than silently projecting.
    """
    scale = max(max_abs(r.mat), 1.0)
    res = bianchi_residual(r)
    if res > tol * scale:
        raise ValueError(
            f"input violates the first Bianchi identity (residual {res:.3g})"
        )
    if r.symmetry_residual() > tol * scale:
        raise ValueError("input pair matrix is not symmetric")
    exact = r.exact
    one = scalar(1, exact)

    s = scalar_curvature(r)
    ric0 = traceless_part(ricci(r))
    ricw = ric_W(r)

    g = eye(DIM, exact)
    s_block = (s * one / 84) * kn_product(g)
    r_block = (one / 5) * kn_product(ric0)
    w27 = (3 * one / 112) * (kn_product(ricw) - 5 * phi_product(ricw))

    weyl_rest = r - s_block - r_block - w27
    w64 = CurvatureTensor(_p_odot(weyl_rest.mat, exact))
    w77 = CurvatureTensor(_p_g2(weyl_rest.mat, exact))
    return CurvatureDecomposition(w77=w77, w64=w64, w27=w27, ric0=ric0, s=s)


def norm_split_residual(r: CurvatureTensor, dec: CurvatureDecomposition = None) -> float:
    """Residual of ||R||^2 = ||W77||^2 + ||W64||^2 + 15/28 ||RicW||^2
    + 4/5 ||Ric0||^2 + 1/21 s^2, relative to ||R||^2."""
    if dec is None:
        dec = decompose(r)
    ricw = ric_W(r)
    total = (
        dec.w77.norm2()
        + dec.w64.norm2()
        + scalar(15, r.exact) / 28 * (ricw * ricw).sum()
        + scalar(4, r.exact) / 5 * (dec.ric0 * dec.ric0).sum()
        + dec.s * dec.s / 21
    )
    n = r.norm2()
    return abs(float(total - n)) / max(float(n), 1e-30)


def coefficient_consistency_report() -> dict:
    """Re-derive the splitting coefficients from the measured contraction
    constants of r_g and r_phi, and report them against the closed forms.

    Returns {name: (derived, stated, |difference|)}.
    """
    rng = np.random.default_rng(7)
    h = rng.normal(size=(DIM, DIM))
    h = traceless_part((h + h.T) / 2)
    hn = (h * h).sum()

    rg, rp = kn_product(h), phi_product(h)
    cg_rg = ricci(rg)[0, 1] / h[0, 1]
    cg_rp = ricci(rp)[0, 1] / h[0, 1]
    cp_rg = phi_ricci(rg)[0, 1] / h[0, 1]
    cp_rp = phi_ricci(rp)[0, 1] / h[0, 1]

    # W27 normaliser: ric_W((r_g - 5 r_phi)(h)) = c h needs 1/c as coefficient
    c = (4 * (cg_rg - 5 * cg_rp) - 5 * (cp_rg - 5 * cp_rp)) / 20
    derived_w27 = 1 / c

    n_rg = rg.norm2() / hn
    n_rp = rp.norm2() / hn
    x_gp = inner(rg, rp) / hn
    n_w27_per_ricw = (n_rg - 10 * x_gp + 25 * n_rp) / c**2  # ||W27||^2 / ||RicW||^2
    g = np.eye(DIM)
    n_rgg = kn_product(g).norm2()

    report = {
        "c^g r_g |S0": (cg_rg, 5.0),
        "c^g r_phi |S0": (cg_rp, 1.0),
        "c^phi r_g |S0": (cp_rg, 4.0),
        "c^phi r_phi |S0": (cp_rp, 92.0 / 3),
        "||r_g(h)||^2 / ||h||^2": (n_rg, 20.0),
        "||r_phi(h)||^2 / ||h||^2": (n_rp, 92.0 / 3),
        "<r_g(h), r_phi(h)> / ||h||^2": (x_gp, 4.0),
        "||r_g(g)||^2": (n_rgg, 336.0),
        "W27 coefficient": (derived_w27, 3.0 / 112),
        "norm weight RicW": (n_w27_per_ricw, 15.0 / 28),
        "norm weight Ric0": (n_rg / 25, 4.0 / 5),
        "norm weight s": (n_rgg / 84**2, 1.0 / 21),
    }
    return {k: (a, b, abs(a - b)) for k, (a, b) in report.items()}
