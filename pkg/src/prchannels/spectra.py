"""Operator-tuple left invertibility, relative joint spectra, pencil singular sets.

The workhorse is :func:`pencil_singular_set`, which computes the finitely many
``lam`` at which ``P + lam Q`` loses injectivity.  Candidate roots come from
one nonzero maximal minor (scanned in lexicographic row order) plus one random
linear combination of all minors used as a guard; each candidate is then kept
only if the smallest singular value of the pencil at that point actually
vanishes.  Common zeros of all minors are contained in the zeros of any single
nonzero minor, so the construction never misses a true singular point while
the verification step removes the spurious ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ConstraintViolated, DimensionMismatch
from .linalg import (
    DEFAULT_TOL,
    ZERO_POLY,
    Tolerance,
    as_matrix,
    kernel_basis,
    numerical_rank,
    poly_roots,
    smallest_singular_value,
    trim_polynomial,
)

FINITE = "finite"
ALL_OF_C = "all_of_c"

# Scanning every maximal minor is exact but exponential in the row surplus;
# beyond this many subsets the guard polynomial alone is used.
_MAX_MINOR_SCAN = 5000

__all__ = [
    "FINITE",
    "ALL_OF_C",
    "SingularSet",
    "SpectrumPoint",
    "is_left_invertible",
    "in_relative_spectrum",
    "pencil_singular_set",
    "constrained_2x2_eigenpair",
]


@dataclass
class SingularSet:
    """Either a finite list of pencil singular points or all of the plane."""

    kind: str
    roots: list

    @property
    def is_all(self) -> bool:
        return self.kind == ALL_OF_C


@dataclass
class SpectrumPoint:
    """One point of a scalar relative joint spectrum with its kernel witness."""

    lam: np.ndarray
    witness: np.ndarray


def _stack(ops) -> np.ndarray:
    mats = [as_matrix(A) for A in ops]
    if not mats:
        raise ValueError("empty operator tuple")
    shape = mats[0].shape
    for A in mats[1:]:
        if A.shape != shape:
            raise DimensionMismatch("operator tuple has mixed shapes")
    return np.vstack(mats)


def is_left_invertible(ops, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the stacked tuple has full column rank (trivial common kernel)."""
    S = _stack(ops)
    return numerical_rank(S, tol) == S.shape[1]


def in_relative_spectrum(a_ops, b_ops, lam, tol: Tolerance = DEFAULT_TOL):
    """Membership test for the left relative joint spectrum.

    ``lam`` must have shape ``(len(b_ops), len(a_ops))``.  Returns
    ``(True, witness)`` when the residual operators ``A_j - sum_i lam[i, j] B_i``
    share a nonzero kernel vector, ``(False, None)`` otherwise.
    """
    A = [as_matrix(a) for a in a_ops]
    B = [as_matrix(b) for b in b_ops]
    L = np.asarray(lam, dtype=complex)
    if L.shape != (len(B), len(A)):
        raise DimensionMismatch(f"lambda of shape {L.shape}, expected ({len(B)}, {len(A)})")
    residuals = []
    for j, Aj in enumerate(A):
        R = Aj - sum(L[i, j] * B[i] for i in range(len(B)))
        residuals.append(R)
    kern = kernel_basis(_stack(residuals), tol)
    if not kern:
        return False, None
    return True, kern[0]


def _det_poly_square(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Ascending coefficients of det(P + lam Q) by interpolation at roots of unity."""
    n = P.shape[0]
    k = n + 1
    nodes = np.exp(2j * np.pi * np.arange(k) / k)
    vals = np.array([np.linalg.det(P + t * Q) for t in nodes])
    # vals[j] = sum_t c_t * exp(+2 pi i j t / k), so the forward FFT recovers c.
    return np.fft.fft(vals) / k


def _cluster_roots(cands, radius):
    """Group candidates within ``radius`` of each other; returns list of clusters."""
    clusters = []
    for z in cands:
        placed = False
        for cl in clusters:
            if abs(z - cl[0]) <= radius:
                cl.append(z)
                placed = True
                break
        if not placed:
            clusters.append([z])
    return clusters


def _cluster_pairs(pairs, radius):
    """Like :func:`_cluster_roots` but for (root, score) pairs, clustered on the root."""
    clusters = []
    for lam, sv in pairs:
        placed = False
        for cl in clusters:
            if abs(lam - cl[0][0]) <= radius:
                cl.append((lam, sv))
                placed = True
                break
        if not placed:
            clusters.append([(lam, sv)])
    return clusters


def _significant_poly(coeffs, floor: float = 1e-12):
    """Trimmed coefficients, or None when the polynomial sits at round-off level.

    Inputs are pre-normalized pencils, so any genuine minor has coefficients
    far above the absolute floor; determinants of an everywhere-singular
    pencil only produce noise near machine epsilon.
    """
    c = trim_polynomial(coeffs)
    if c.size == 0 or float(np.max(np.abs(c))) <= floor:
        return None
    return c


def pencil_singular_set(P, Q, tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> SingularSet:
    """The set of ``lam`` at which the tall pencil ``P + lam Q`` is not injective.

    Requires matching shapes with at least as many rows as columns.  Returns
    :data:`ALL_OF_C` when every maximal minor is the zero polynomial.
    """
    Pm = as_matrix(P)
    Qm = as_matrix(Q)
    if Pm.shape != Qm.shape:
        raise DimensionMismatch("pencil matrices differ in shape")
    m, n = Pm.shape
    if m < n:
        raise DimensionMismatch("pencil must have at least as many rows as columns")
    scale = max(np.linalg.norm(Pm), np.linalg.norm(Qm))
    if scale == 0.0:
        return SingularSet(ALL_OF_C, [])
    Pn = Pm / scale
    Qn = Qm / scale
    margin = 1e-6 * (np.linalg.norm(Pn) + np.linalg.norm(Qn))
    rng = np.random.default_rng(np.random.SeedSequence([abs(int(seed)), 0x5EC7]))

    # First nonzero maximal minor, lexicographic row-subset order.
    first_poly = None
    for count, rows in enumerate(combinations(range(m), n)):
        if count >= _MAX_MINOR_SCAN:
            break
        poly = _significant_poly(_det_poly_square(Pn[list(rows)], Qn[list(rows)]))
        if poly is not None:
            first_poly = poly
            break

    # Guard: det(R (P + lam Q)) is, by Cauchy-Binet, a random linear
    # combination of all maximal minors.
    R = rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))
    guard_poly = _significant_poly(_det_poly_square(R @ Pn, R @ Qn))

    if first_poly is None and guard_poly is None:
        # Every minor sits at noise level.  Confirm the degeneracy with a few
        # random probes; a full-rank probe means the minors were genuinely
        # tiny, in which case their noisy roots are still usable candidates.
        probes = [complex(rng.normal(), rng.normal()) for _ in range(3)]
        if all(smallest_singular_value(Pn + lam * Qn) <= margin for lam in probes):
            return SingularSet(ALL_OF_C, [])
        guard_poly = trim_polynomial(_det_poly_square(R @ Pn, R @ Qn))
        if guard_poly.size == 0:
            return SingularSet(FINITE, [])

    candidates = []
    for poly in (first_poly, guard_poly):
        if poly is None or poly.size <= 1:
            continue
        roots = poly_roots(poly)
        if roots is not ZERO_POLY:
            candidates.extend(roots)
    # Centroids of loose clusters recover multiple roots whose companion
    # eigenvalues split symmetrically around the true location.
    for cl in _cluster_roots(candidates, 1e-4):
        if len(cl) > 1:
            candidates.append(complex(np.mean(cl)))

    verified = [
        (lam, sv)
        for lam in candidates
        if (sv := smallest_singular_value(Pn + lam * Qn)) <= margin
    ]
    kept = []
    for cl in _cluster_pairs(verified, tol.root_cluster):
        lam_best, _ = min(cl, key=lambda pair: pair[1])
        kept.append(lam_best)
    kept.sort(key=lambda z: (z.real, z.imag))
    return SingularSet(FINITE, kept)


def constrained_2x2_eigenpair(A, tol: Tolerance = DEFAULT_TOL):
    """Both eigenvalues of a 2x2 matrix obeying the unit-circle constraint system.

    The entries must satisfy ``1 + |a11|^2 - |a21|^2 = 0``,
    ``1 + |a22|^2 - |a12|^2 = 0`` and ``a11 conj(a12) = a21 conj(a22)``, each
    within ``residual_abs``.  The two eigenvalues are then distinct and their
    product ``lam1 * conj(lam2)`` equals -1.
    """
    M = as_matrix(A)
    if M.shape != (2, 2):
        raise DimensionMismatch("expected a 2x2 matrix")
    a1, b1 = M[0, 0], M[0, 1]
    a2, b2 = M[1, 0], M[1, 1]
    c1 = 1.0 + abs(a1) ** 2 - abs(a2) ** 2
    c2 = 1.0 + abs(b2) ** 2 - abs(b1) ** 2
    c3 = a1 * np.conj(b1) - a2 * np.conj(b2)
    worst = max(abs(c1), abs(c2), abs(c3))
    if worst > tol.residual_abs:
        raise ConstraintViolated(f"constraint residual {worst:.3e} beyond tolerance")
    lams = sorted(np.linalg.eigvals(M), key=lambda z: (z.real, z.imag), reverse=True)
    return complex(lams[0]), complex(lams[1])
