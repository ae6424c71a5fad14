"""Dense complex linear algebra primitives shared by the whole package.

Everything operates on plain numpy arrays.  Rank and kernel decisions are
relative to the largest singular value (scale free); residual decisions are
absolute and assume the caller normalized its inputs.  Both cutoffs live in a
single :class:`Tolerance` record that the higher-level modules thread through
unchanged, so that verdicts are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian

REAL = "real"
COMPLEX = "complex"

__all__ = [
    "REAL",
    "COMPLEX",
    "Tolerance",
    "DEFAULT_TOL",
    "ZERO_POLY",
    "as_matrix",
    "numerical_rank",
    "kernel_basis",
    "smallest_singular_value",
    "hermitian_eig",
    "trim_polynomial",
    "poly_roots",
    "psd_sqrt",
    "psd_inv_sqrt",
]


@dataclass(frozen=True)
class Tolerance:
    """Shared tolerance policy.

    rank_rel
        Relative singular-value cutoff for rank and kernel decisions.
    residual_abs
        Absolute cutoff for residual tests on normalized inputs.
    root_cluster
        Matching radius when clustering or comparing polynomial roots.
    """

    rank_rel: float = 1e-10
    residual_abs: float = 1e-8
    root_cluster: float = 1e-7

    def __post_init__(self):
        if not 0.0 < self.rank_rel < 1.0:
            raise ValueError("rank_rel must lie in (0, 1)")
        if self.residual_abs <= 0.0 or self.root_cluster <= 0.0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


class _ZeroPoly:
    """Sentinel for the identically-zero polynomial (every point is a root)."""

    __slots__ = ()

    def __repr__(self):
        return "ZERO_POLY"


ZERO_POLY = _ZeroPoly()


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-d complex array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={a.ndim}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _svdvals(M: np.ndarray) -> np.ndarray:
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def numerical_rank(M, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_rel`` times the largest one.

    The zero matrix (and the empty matrix) has rank 0.
    """
    s = _svdvals(as_matrix(M))
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * s[0]))


def kernel_basis(M, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical null space of ``M``.

    Returns the right singular vectors whose singular value is at most
    ``rank_rel`` times the largest one (all of them for the zero matrix);
    an empty list when ``M`` has full column rank.
    """
    A = as_matrix(M)
    rows, cols = A.shape
    if cols == 0:
        return []
    if rows == 0:
        return [np.eye(cols, dtype=complex)[:, k] for k in range(cols)]
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    smax = s[0] if s.size else 0.0
    cutoff = tol.rank_rel * smax
    basis = [vh[k].conj() for k in range(cols) if k >= s.size or s[k] <= cutoff]
    return basis


def smallest_singular_value(M) -> float:
    """Smallest singular value counted over the column dimension.

    A matrix with more columns than rows always has a nontrivial kernel, so
    the value is 0 in that case.
    """
    A = as_matrix(M)
    rows, cols = A.shape
    if rows == 0 or cols == 0:
        return 0.0
    if rows < cols:
        return 0.0
    s = _svdvals(A)
    return float(s[-1])


def hermitian_eig(H, tol: Tolerance = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(values, vectors)`` with eigenvalues sorted in descending order
    and eigenvectors as the matching orthonormal columns.  Raises
    :class:`NotHermitian` when ``H`` deviates from its adjoint by more than
    ``residual_abs * (1 + ||H||_F)``.
    """
    A = as_matrix(H)
    if A.shape[0] != A.shape[1]:
        raise NotHermitian(f"matrix of shape {A.shape} is not square")
    dev = np.linalg.norm(A - A.conj().T)
    if dev > tol.residual_abs * (1.0 + np.linalg.norm(A)):
        raise NotHermitian(f"Hermiticity residual {dev:.3e} beyond tolerance")
    w, v = np.linalg.eigh((A + A.conj().T) / 2.0)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def trim_polynomial(coeffs, rel: float = 1e-12) -> np.ndarray:
    """Drop near-zero leading coefficients of an ascending coefficient array.

    Determinant expansion of near-singular pencils produces spurious tiny
    leading terms; coefficients below ``rel`` times the largest magnitude are
    stripped from the high-degree end.  Returns an empty array for the zero
    polynomial.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    if c.size == 0:
        return c
    top = float(np.max(np.abs(c)))
    if top == 0.0:
        return c[:0]
    keep = np.nonzero(np.abs(c) >= rel * top)[0]
    return c[: keep[-1] + 1]


def poly_roots(coeffs):
    """All complex roots (with multiplicity) of an ascending-coefficient polynomial.

    The polynomial is degree-trimmed first and solved through the balanced
    companion matrix.  Returns :data:`ZERO_POLY` when the polynomial is
    identically zero and an empty list for nonzero constants.
    """
    c = trim_polynomial(coeffs)
    if c.size == 0:
        return ZERO_POLY
    if c.size == 1:
        return []
    roots = np.polynomial.polynomial.polyroots(c)
    return [complex(r) for r in roots]


def psd_sqrt(H, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Hermitian square root of a PSD matrix; tiny negative eigenvalues are clipped."""
    w, v = hermitian_eig(H, tol)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def psd_inv_sqrt(H, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Inverse Hermitian square root of a positive definite matrix."""
    w, v = hermitian_eig(H, tol)
    if w[-1] <= tol.rank_rel * max(w[0], 0.0):
        raise np.linalg.LinAlgError("matrix is numerically singular")
    return (v / np.sqrt(w)) @ v.conj().T
