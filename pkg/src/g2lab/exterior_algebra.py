"""Dense exterior-form calculus on R^7.

Conventions, fixed once for the whole package:

* basis covectors e^1..e^7 are orthonormal, orientation vol = e^1234567;
* a degree-k form is a coefficient vector over the C(7,k) sorted
  multi-indices in lexicographic order (sorted monomials are orthonormal,
  the "form" inner product);
* the Hodge star satisfies a wedge *b = <a,b> vol, which on monomials reads
  *(e^I) = sign(I, I^c) e^(I^c);
* the "tensor" norm of the totally antisymmetric component array of a
  k-form is k! times its form norm.  Identities in later modules name which
  of the two norms they use; mixing them up is a factor-of-k! bug.

The distinguished three-form is

    phi = e^127 + e^347 + e^567 + e^135 - e^245 - e^146 - e^236

and its dual four-form *phi, together with the contraction identities
between their component arrays that the rest of the package relies on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._linalg import eye, is_exact, max_abs, scalar, zeros

DIM = 7

#: sorted multi-indices (0-based) per degree, lexicographic
BASIS = {k: tuple(itertools.combinations(range(DIM), k)) for k in range(DIM + 1)}
#: multi-index -> position in the coefficient vector
INDEX = {k: {I: p for p, I in enumerate(BASIS[k])} for k in range(DIM + 1)}


def dim_of(degree: int) -> int:
    return len(BASIS[degree])


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (entries must be distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


def check_multi_index(indices, degree=None):
    """Validate a 1-based strictly increasing multi-index, return 0-based."""
    idx = tuple(int(i) for i in indices)
    if any(i < 1 or i > DIM for i in idx):
        raise ValueError(f"multi-index entries must lie in 1..7, got {idx}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"multi-index must be strictly increasing, got {idx}")
    if degree is not None and len(idx) != degree:
        raise ValueError(f"multi-index {idx} does not have length {degree}")
    return tuple(i - 1 for i in idx)


@dataclass(frozen=True)
class Form:
    """A degree-k exterior form as a dense coefficient vector."""

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 0 <= self.degree <= DIM:
            raise ValueError(f"degree must be 0..7, got {self.degree}")
        if self.coeffs.shape != (dim_of(self.degree),):
            raise ValueError(
                f"degree-{self.degree} form needs {dim_of(self.degree)} "
                f"coefficients, got shape {self.coeffs.shape}"
            )

    # --- constructors ----------------------------------------------------
    @staticmethod
    def zero(degree: int, exact: bool = False) -> "Form":
        return Form(degree, zeros(dim_of(degree), exact))

    @staticmethod
    def from_terms(degree: int, terms: dict, exact: bool = False) -> "Form":
        """Build a form from ``{1-based multi-index: coefficient}``."""
        f = zeros(dim_of(degree), exact)
        for idx, c in terms.items():
            pos = INDEX[degree][check_multi_index(idx, degree)]
            f[pos] += scalar(c, exact)
        return Form(degree, f)

    @staticmethod
    def basis(indices, exact: bool = False) -> "Form":
        """The unit monomial e^I for a 1-based multi-index I."""
        return Form.from_terms(len(tuple(indices)), {tuple(indices): 1}, exact)

    # --- ring structure ---------------------------------------------------
    @property
    def exact(self) -> bool:
        return is_exact(self.coeffs)

    def __add__(self, other: "Form") -> "Form":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return Form(self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other: "Form") -> "Form":
        if self.degree != other.degree:
            raise ValueError("cannot subtract forms of different degree")
        return Form(self.degree, self.coeffs - other.coeffs)

    def __mul__(self, c) -> "Form":
        return Form(self.degree, self.coeffs * c)

    __rmul__ = __mul__

    def __neg__(self) -> "Form":
        return Form(self.degree, -self.coeffs)

    def coeff(self, indices):
        """Coefficient at a 1-based sorted multi-index."""
        return self.coeffs[INDEX[self.degree][check_multi_index(indices, self.degree)]]

    def norm2(self):
        """Form norm squared (sorted monomials orthonormal)."""
        return (self.coeffs * self.coeffs).sum()

    def tensor_norm2(self):
        return math.factorial(self.degree) * self.norm2()

    def to_float(self) -> "Form":
        return Form(self.degree, np.asarray(self.coeffs, dtype=float))

    def __repr__(self):
        parts = []
        for pos, I in enumerate(BASIS[self.degree]):
            c = self.coeffs[pos]
            if c != 0:
                label = "e" + "".join(str(i + 1) for i in I) if I else "1"
                parts.append(f"{c!s}*{label}" if label != "1" else f"{c!s}")
        body = " + ".join(parts) if parts else "0"
        return f"Form({self.degree}: {body})"


def form_inner(a: Form, b: Form):
    if a.degree != b.degree:
        raise ValueError("inner product needs equal degrees")
    return (a.coeffs * b.coeffs).sum()


# --- wedge -----------------------------------------------------------------

_WEDGE_TABLES: dict = {}


def _wedge_table(ka: int, kb: int):
    """List of (pos_a, pos_b, pos_out, sign) with I, J disjoint."""
    tab = _WEDGE_TABLES.get((ka, kb))
    if tab is None:
        tab = []
        for pa, I in enumerate(BASIS[ka]):
            si = set(I)
            for pb, J in enumerate(BASIS[kb]):
                if si.isdisjoint(J):
                    merged = I + J
                    out = tuple(sorted(merged))
                    tab.append((pa, pb, INDEX[ka + kb][out], perm_sign(merged)))
        _WEDGE_TABLES[(ka, kb)] = tab
    return tab


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; rejects degree overflow past 7."""
    if a.degree + b.degree > DIM:
        raise ValueError(
            f"wedge of degrees {a.degree} and {b.degree} exceeds dimension {DIM}"
        )
    out = zeros(dim_of(a.degree + b.degree), a.exact or b.exact)
    ca, cb = a.coeffs, b.coeffs
    for pa, pb, po, sg in _wedge_table(a.degree, b.degree):
        va = ca[pa]
        if va == 0:
            continue
        vb = cb[pb]
        if vb == 0:
            continue
        out[po] += sg * va * vb
    return Form(a.degree + b.degree, out)


def wedge_all(*forms: Form) -> Form:
    acc = forms[0]
    for f in forms[1:]:
        acc = wedge(acc, f)
    return acc


# --- Hodge star ------------------------------------------------------------

_HODGE_TABLES: dict = {}


def _hodge_table(k: int):
    tab = _HODGE_TABLES.get(k)
    if tab is None:
        tab = []
        for pos, I in enumerate(BASIS[k]):
            comp = tuple(i for i in range(DIM) if i not in I)
            tab.append((pos, INDEX[DIM - k][comp], perm_sign(I + comp)))
        _HODGE_TABLES[k] = tab
    return tab


def hodge(a: Form) -> Form:
    """Hodge star for vol = e^1234567; a wedge *b = <a,b> vol."""
    out = zeros(dim_of(DIM - a.degree), a.exact)
    for pos, po, sg in _hodge_table(a.degree):
        out[po] = sg * a.coeffs[pos]
    return Form(DIM - a.degree, out)


def volume_form(exact: bool = False) -> Form:
    return Form.basis(range(1, 8), exact)


# --- interior product -------------------------------------------------------

_INTERIOR_TABLES: dict = {}


def _interior_table(k: int):
    """Per degree: list of (pos_in, vector_index, pos_out, sign)."""
    tab = _INTERIOR_TABLES.get(k)
    if tab is None:
        tab = []
        for pos, I in enumerate(BASIS[k]):
            for p, i in enumerate(I):
                rest = I[:p] + I[p + 1 :]
                tab.append((pos, i, INDEX[k - 1][rest], (-1) ** p))
        _INTERIOR_TABLES[k] = tab
    return tab


def interior(v, a: Form) -> Form:
    """Interior product i_v a for a vector v (length-7 components)."""
    v = np.asarray(v, dtype=object if a.exact else float)
    if a.degree == 0:
        return Form.zero(0, a.exact)
    out = zeros(dim_of(a.degree - 1), a.exact)
    for pos, i, po, sg in _interior_table(a.degree):
        c = a.coeffs[pos]
        if c != 0 and v[i] != 0:
            out[po] += sg * v[i] * c
    return Form(a.degree - 1, out)


def basis_vector(i: int, exact: bool = False) -> np.ndarray:
    """The vector e_i (1-based) as a component array."""
    v = zeros(DIM, exact)
    v[i - 1] = scalar(1, exact)
    return v


def contract(a: Form, b: Form) -> Form:
    """Adjoint of wedging: <contract(a, b), c> = <b, a wedge c>.

    On monomials e^pq -| beta = i_q i_p beta, extended bilinearly.
    """
    if a.degree > b.degree:
        raise ValueError("cannot contract a higher degree into a lower one")
    out = Form.zero(b.degree - a.degree, a.exact or b.exact)
    for pos, I in enumerate(BASIS[a.degree]):
        c = a.coeffs[pos]
        if c == 0:
            continue
        piece = b
        for i in I:
            piece = interior(basis_vector(i + 1, piece.exact), piece)
        out = out + c * piece
    return out


# --- totally antisymmetric component arrays ---------------------------------


@dataclass(frozen=True)
class AntisymArray:
    """Full component array A[i1..ik] of a k-form, totally antisymmetric."""

    degree: int
    array: np.ndarray

    def tensor_norm2(self):
        return (self.array * self.array).sum()


def to_antisym(a: Form) -> AntisymArray:
    arr = zeros((DIM,) * a.degree, a.exact)
    for pos, I in enumerate(BASIS[a.degree]):
        c = a.coeffs[pos]
        if c == 0:
            continue
        for perm in itertools.permutations(I):
            arr[perm] = perm_sign(perm) * c
    return AntisymArray(a.degree, arr)


def from_antisym(arr, degree: int = None, tol: float = 1e-12) -> Form:
    """Inverse of to_antisym; rejects arrays that are not antisymmetric."""
    if isinstance(arr, AntisymArray):
        degree, arr = arr.degree, arr.array
    arr = np.asarray(arr)
    if degree is None:
        degree = arr.ndim
    exact = is_exact(arr)
    out = zeros(dim_of(degree), exact)
    for pos, I in enumerate(BASIS[degree]):
        out[pos] = arr[I]
    form = Form(degree, out)
    residual = max_abs(to_antisym(form).array - arr)
    if residual > tol:
        raise ValueError(f"input array is not antisymmetric (residual {residual:.3g})")
    return form


# --- the G2 three-form -------------------------------------------------------

_PHI_TERMS = {
    (1, 2, 7): 1,
    (3, 4, 7): 1,
    (5, 6, 7): 1,
    (1, 3, 5): 1,
    (2, 4, 5): -1,
    (1, 4, 6): -1,
    (2, 3, 6): -1,
}


def standard_phi(exact: bool = False) -> Form:
    """The fundamental three-form in its adapted coframe."""
    return Form.from_terms(3, _PHI_TERMS, exact)


def standard_phi_dual(exact: bool = False) -> Form:
    return hodge(standard_phi(exact))


def standard_omega(exact: bool = False) -> Form:
    """omega = e^12 + e^34 + e^56, the Kaehler form of the e^7 reduction."""
    return Form.from_terms(2, {(1, 2): 1, (3, 4): 1, (5, 6): 1}, exact)


def standard_psi_plus(exact: bool = False) -> Form:
    return Form.from_terms(
        3, {(1, 3, 5): 1, (2, 4, 5): -1, (1, 4, 6): -1, (2, 3, 6): -1}, exact
    )


def standard_psi_minus(exact: bool = False) -> Form:
    return Form.from_terms(
        3, {(2, 4, 6): -1, (1, 3, 6): 1, (2, 3, 5): 1, (1, 4, 5): 1}, exact
    )


_PHI_ARRAYS: dict = {}


def phi_arrays(exact: bool = False):
    """Cached component arrays (phi_ijk, phi_ijkl) of phi and *phi."""
    key = bool(exact)
    if key not in _PHI_ARRAYS:
        p3 = to_antisym(standard_phi(exact)).array
        p4 = to_antisym(standard_phi_dual(exact)).array
        _PHI_ARRAYS[key] = (p3, p4)
    return _PHI_ARRAYS[key]


# --- contraction identity suite ---------------------------------------------


def _outer(a, b):
    return np.multiply.outer(a, b)


def check_contraction_identities(exact: bool = False) -> dict:
    """Componentwise residuals of the five phi/ *phi contraction identities.

    Returns a mapping name -> max absolute residual (floats, even in exact
    mode, so callers can compare against a tolerance; in exact mode each
    residual is literally 0.0).
    """
    p3, p4 = phi_arrays(exact)
    g = eye(DIM, exact)

    dd = _outer(g, g).transpose(0, 2, 1, 3)  # delta_ik delta_jl
    dd_swap = dd.transpose(1, 0, 2, 3)  # delta_jk delta_il

    report = {}

    lhs = np.tensordot(p3, p3, axes=([1, 2], [1, 2]))
    report["phi.phi -> 6 delta"] = max_abs(lhs - 6 * g)

    lhs = np.tensordot(p3, p3, axes=([2], [0]))
    report["phi.phi -> delta delta + *phi"] = max_abs(lhs - (dd - dd_swap + p4))

    lhs = np.tensordot(p4, p4, axes=([2, 3], [0, 1]))
    report["*phi.*phi -> 4 delta delta + 2 *phi"] = max_abs(
        lhs - (4 * (dd - dd_swap) + 2 * p4)
    )

    lhs = np.tensordot(p3, p4, axes=([1, 2], [0, 1]))
    report["phi.*phi -> 4 phi"] = max_abs(lhs - 4 * p3)

    lhs = np.tensordot(p3, p4, axes=([2], [0]))
    rhs = (
        _outer(g, p3).transpose(0, 2, 1, 3, 4)  # d_ik phi_jlm
        - _outer(g, p3).transpose(2, 0, 1, 3, 4)  # d_jk phi_ilm
        + _outer(g, p3).transpose(0, 2, 4, 1, 3)  # d_il phi_jmk
        - _outer(g, p3).transpose(2, 0, 4, 1, 3)  # d_jl phi_imk
        + _outer(g, p3).transpose(0, 2, 3, 4, 1)  # d_im phi_jkl
        - _outer(g, p3).transpose(2, 0, 3, 4, 1)  # d_jm phi_ikl
    )
    report["phi.*phi -> delta phi (6 terms)"] = max_abs(lhs - rhs)

    lhs = np.tensordot(p4, p4, axes=([1, 2, 3], [1, 2, 3]))
    report["*phi.*phi full -> 24 delta"] = max_abs(lhs - 24 * g)

    return report
