"""Vector frames: bounds, Parseval normalization, complement property, retrievability.

Phase retrievability of a real frame is decided exactly through the
complement property.  For complex frames the decision problem is
semialgebraic, so the test is one sided: a failure is certified by an
explicit pair of vectors with identical phaseless measurements, while success
is only ever reported as "likely".  The complex search runs over differences
of rank-one projections written as symmetric products, which reduces it to
the same alternating bilinear minimization used by the channel oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .bilinear import OracleConfig, minimize_symmetric_pair
from .errors import NotAFrame, TooManyVectors
from .linalg import (
    COMPLEX,
    DEFAULT_TOL,
    REAL,
    Tolerance,
    kernel_basis,
    numerical_rank,
    psd_inv_sqrt,
)

YES = "YES"
NO = "NO"
LIKELY_YES = "LIKELY_YES"

EXACT = "exact"
UPPER_BOUND = "upper_bound"

# complement_property enumerates 2^(N-1) bipartitions; hard cap on N.
_MAX_BIPARTITION_VECTORS = 24

__all__ = [
    "YES",
    "NO",
    "LIKELY_YES",
    "EXACT",
    "UPPER_BOUND",
    "Frame",
    "FrameReport",
    "frame_operator",
    "frame_bounds",
    "parseval_normalize",
    "complement_property",
    "is_phase_retrievable_frame",
    "random_generic_frame",
    "minimal_pr_length",
    "rank_one_independent",
]


@dataclass
class Frame:
    """An ordered list of vectors in a fixed-dimension space.

    ``vectors`` is stored as an (N, dim) complex array, one vector per row.
    """

    dim: int
    vectors: np.ndarray = dc_field(default_factory=lambda: np.zeros((0, 0)))
    field: str = COMPLEX

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("frame dimension must be positive")
        if self.field not in (REAL, COMPLEX):
            raise ValueError(f"unknown field tag {self.field!r}")
        V = np.asarray(self.vectors, dtype=complex)
        if V.ndim != 2 or V.shape[1] != self.dim or V.shape[0] == 0:
            raise ValueError(f"expected a nonempty (N, {self.dim}) vector array")
        if not np.all(np.isfinite(V)):
            raise ValueError("frame vectors must be finite")
        if not np.any(np.abs(V) > 0):
            raise ValueError("at least one frame vector must be nonzero")
        if self.field == REAL and np.any(V.imag != 0.0):
            raise ValueError("real frame carries nonzero imaginary parts")
        self.vectors = V

    def __len__(self):
        return self.vectors.shape[0]


@dataclass
class FrameReport:
    is_frame: bool
    lower_bound: float
    upper_bound: float
    is_parseval: bool
    complement_property: bool | None  # None means unknown (not computed)
    phase_retrievable: str
    witness: tuple | None = None


def frame_operator(f: Frame) -> np.ndarray:
    """The positive operator summing the rank-one projections of all vectors."""
    V = f.vectors
    return V.T @ V.conj()


def frame_bounds(f: Frame):
    """Optimal frame bounds: extreme eigenvalues of the frame operator."""
    w = np.linalg.eigvalsh(frame_operator(f))
    return float(max(w[0], 0.0)), float(w[-1])


def _is_frame(f: Frame, tol: Tolerance) -> bool:
    lo, hi = frame_bounds(f)
    return lo > tol.rank_rel * hi


def parseval_normalize(f: Frame, tol: Tolerance = DEFAULT_TOL) -> Frame:
    """Rescale by the inverse square root of the frame operator.

    The result has frame operator equal to the identity; invertible
    reshaping preserves phase retrievability.
    """
    if not _is_frame(f, tol):
        raise NotAFrame("vectors do not span the space")
    W = psd_inv_sqrt(frame_operator(f), tol)
    cols = W @ f.vectors.T
    new = cols.T
    if f.field == REAL:
        new = new.real.astype(complex)
    return Frame(dim=f.dim, vectors=new, field=f.field)


def _failing_bipartition(f: Frame, tol: Tolerance):
    """First bipartition (by mask order) where neither side spans, or None."""
    V = f.vectors
    N, n = V.shape
    if N > _MAX_BIPARTITION_VECTORS:
        raise TooManyVectors(f"{N} vectors exceed the bipartition cap {_MAX_BIPARTITION_VECTORS}")
    for mask in range(2 ** (N - 1)):
        side = [0] + [j for j in range(1, N) if (mask >> (j - 1)) & 1]
        comp = [j for j in range(1, N) if not (mask >> (j - 1)) & 1]
        if numerical_rank(V[side], tol) == n:
            continue
        if comp and numerical_rank(V[comp], tol) == n:
            continue
        return side, comp
    return None


def complement_property(f: Frame, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether every bipartition of the frame has a side spanning the space."""
    return _failing_bipartition(f, tol) is None


def _measurements(vectors: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.abs(vectors.conj() @ x) ** 2


def _frame_pair_maps(vectors: np.ndarray):
    """Real-linear measurement map of the symmetric product against each vector."""

    def pair_maps(u):
        alpha = vectors.conj() @ u
        left = alpha[:, None] * vectors  # acts on conj(v)
        right = alpha.conj()[:, None] * vectors.conj()  # acts on v
        return left, right

    return pair_maps


def _real_no_witness(f: Frame, tol: Tolerance):
    """Explicit equal-measurement pair from a failing bipartition (real case)."""
    V = f.vectors
    if not _is_frame(f, tol):
        u = kernel_basis(V.conj(), tol)[0]
        return u, 2.0 * u
    side, comp = _failing_bipartition(f, tol)
    u = kernel_basis(V[side].conj(), tol)[0]
    v = kernel_basis(V[comp].conj(), tol)[0] if comp else np.zeros(f.dim, dtype=complex)
    x = u + v
    y = u - v
    if f.field == REAL:
        x, y = x.real.astype(complex), y.real.astype(complex)
    return x, y


def is_phase_retrievable_frame(
    f: Frame, oracle_cfg: OracleConfig | None = None, tol: Tolerance = DEFAULT_TOL
) -> FrameReport:
    """Full frame report with a phase-retrievability verdict.

    Real frames are decided exactly.  Complex frames get NO with a verified
    witness when the bilinear search finds a pair of vectors with equal
    phaseless measurements, and LIKELY_YES otherwise.
    """
    cfg = oracle_cfg or OracleConfig()
    V = f.vectors
    n = f.dim
    lo, hi = frame_bounds(f)
    is_frame = lo > tol.rank_rel * hi
    is_parseval = bool(
        np.linalg.norm(frame_operator(f) - np.eye(n)) <= tol.residual_abs * (1.0 + np.sqrt(n))
    )
    try:
        cp = complement_property(f, tol)
    except TooManyVectors:
        cp = None

    if not is_frame:
        u = kernel_basis(V.conj(), tol)[0]
        return FrameReport(False, lo, hi, is_parseval, cp, NO, (u, 2.0 * u))

    if f.field == REAL:
        if cp is None:
            raise TooManyVectors("real decision needs the bipartition enumeration")
        if cp:
            return FrameReport(True, lo, hi, is_parseval, cp, YES, None)
        x, y = _real_no_witness(f, tol)
        return FrameReport(True, lo, hi, is_parseval, cp, NO, (x, y))

    result = minimize_symmetric_pair(_frame_pair_maps(V), n, cfg)
    if result is not None:
        val, u, v = result
        if val < tol.residual_abs**2:
            x = (u + v) / 2.0
            y = (u - v) / 2.0
            # Joint rescale so the projection difference has unit norm.
            diff = np.outer(x, x.conj()) - np.outer(y, y.conj())
            s = np.linalg.norm(diff)
            if s > 0:
                x = x / np.sqrt(s)
                y = y / np.sqrt(s)
            gap = float(
                np.sum((_measurements(V, x) - _measurements(V, y)) ** 2)
            )
            if gap < tol.residual_abs**2:
                return FrameReport(True, lo, hi, is_parseval, cp, NO, (x, y))
    return FrameReport(True, lo, hi, is_parseval, cp, LIKELY_YES, None)


def random_generic_frame(n: int, N: int, field: str = COMPLEX, seed: int = 0) -> Frame:
    """N vectors with i.i.d. standard Gaussian entries, deterministic per seed."""
    if N < 1:
        raise ValueError("need at least one vector")
    rng = np.random.default_rng(np.random.SeedSequence([abs(int(seed)), 0xF0A]))
    V = rng.normal(size=(N, n))
    if field == COMPLEX:
        V = V + 1j * rng.normal(size=(N, n))
    return Frame(dim=n, vectors=np.asarray(V, dtype=complex), field=field)


def minimal_pr_length(n: int, field: str = COMPLEX):
    """Smallest number of frame vectors that can do phase retrieval in dimension n.

    Real spaces need exactly ``2n - 1`` vectors.  Complex spaces need at most
    ``4n - 4``; that bound is known to be attained exactly when ``n - 1`` is a
    power of two, and the true complex minimum is open otherwise.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if field == REAL:
        return 2 * n - 1, EXACT
    value = 4 * n - 4
    k = n - 1
    exact = k > 0 and (k & (k - 1)) == 0
    return value, (EXACT if exact else UPPER_BOUND)


def rank_one_independent(f: Frame, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the rank-one projections of the frame vectors are linearly independent."""
    V = f.vectors
    vecs = np.array([np.outer(v, v.conj()).reshape(-1) for v in V])
    gram = vecs @ vecs.conj().T
    return numerical_rank(gram, tol) == len(V)
