"""Multistart alternating minimization for vanishing bilinear tensor searches.

Two engines live here.  The simple-tensor engine minimizes the norm of a map
applied to ``x (x) y`` over unit vectors; for fixed ``x`` the objective is
linear in the conjugated coordinates of ``y``, so each half step is an exact
smallest-singular-vector solve.  The symmetric engine minimizes the norm of a
map applied to ``x (x) y + y (x) x`` relative to the norm of that symmetric
product; for fixed ``x`` the objective is real-linear in ``y``, so each half
step is an exact generalized smallest-singular solve restricted to the range
of the normalizer.  All solves go through singular value decompositions, never
through normal equations, so vanishing minima resolve to machine precision.

Both engines are deterministic functions of the configured seed: restart ``r``
draws from ``default_rng([seed, tag, r])``, restarts stop early once a
witness-grade minimum is found, and the reported pair is the best seen so far
(lowest restart index on ties).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import COMPLEX, REAL

# An objective below this is treated as an exact zero of the bilinear form.
_SUCCESS = 1e-26
# A restart is abandoned once its current geometric convergence rate cannot
# push the objective below this witness-grade value within the remaining
# iteration budget.  Runs heading to a strictly positive minimum slow to a
# rate near one and are cut off immediately; runs heading to a true zero keep
# a rate bounded away from one and survive the projection.
_TARGET = 1e-18


def _hopeless(val: float, prev: float, iters_left: int) -> bool:
    if not np.isfinite(prev) or prev <= 0.0 or val <= 0.0:
        return False
    rate = val / prev
    if rate >= 1.0:
        return True
    return np.log(val) + iters_left * np.log(rate) > np.log(_TARGET)


__all__ = [
    "OracleConfig",
    "smallest_generalized",
    "minimize_simple_pair",
    "minimize_symmetric_pair",
]


@dataclass(frozen=True)
class OracleConfig:
    """Multistart search budget and decision threshold for the numeric oracles."""

    restarts: int = 64
    max_iters: int = 500
    seed: int = 0
    decision_floor: float = 1e-6

    def __post_init__(self):
        if self.restarts <= 0 or self.max_iters <= 0 or self.decision_floor <= 0:
            raise ValueError("oracle configuration values must be positive")


def smallest_generalized(L: np.ndarray, N: np.ndarray, cutoff: float = 1e-12):
    """Minimize ``||L v||^2 / ||N v||^2`` over real v with ``N v != 0``.

    Returns ``(value, v)`` with ``||N v|| = 1``, or ``(None, None)`` when
    ``N`` vanishes.
    """
    _, sn, vnt = np.linalg.svd(N, full_matrices=False)
    if sn.size == 0 or sn[0] <= 0.0:
        return None, None
    keep = sn > cutoff * sn[0]
    if not np.any(keep):
        return None, None
    W = vnt[keep].T / sn[keep]  # columns map whitened coords back to v
    M = L @ W
    k = W.shape[1]
    _, sm, vmt = np.linalg.svd(M, full_matrices=True)
    if M.shape[0] < k:
        val = 0.0
    else:
        val = float(sm[-1]) ** 2
    v = W @ vmt[-1]
    return val, v


def _rand_unit(rng, n: int, field: str) -> np.ndarray:
    v = rng.normal(size=n)
    if field == COMPLEX:
        v = v + 1j * rng.normal(size=n)
    nrm = np.linalg.norm(v)
    while nrm == 0.0:  # essentially impossible, but keeps the loop total
        v = rng.normal(size=n) + (1j * rng.normal(size=n) if field == COMPLEX else 0.0)
        nrm = np.linalg.norm(v)
    return v / nrm


def _block_real(C1: np.ndarray, C2: np.ndarray) -> np.ndarray:
    """Real matrix of v -> C1 Re(v) + C2 Im(v) in stacked [Re; Im] coordinates."""
    return np.block([[C1.real, C2.real], [C1.imag, C2.imag]])


def minimize_simple_pair(kraus, field: str, cfg: OracleConfig, dim_in: int):
    """Minimize ``|| sum_i (A_i x)(A_i y)^* ||_F^2`` over unit ``x``, ``y``.

    For real channels the search stays over real vectors.  Returns the best
    ``(value, x, y)`` over all restarts.
    """
    best = None
    for r in range(cfg.restarts):
        rng = np.random.default_rng(np.random.SeedSequence([abs(int(cfg.seed)), 0x51, r]))
        x = _rand_unit(rng, dim_in, field)
        y = x.copy()
        prev = np.inf
        val = np.inf
        for it in range(cfg.max_iters):
            # Fixed x: the map sends conj(y) through sum_i kron(A_i x, conj(A_i)).
            My = sum(np.kron((A @ x)[:, None], A.conj()) for A in kraus)
            if field == REAL:
                My = My.real
            _, _, vh1 = np.linalg.svd(My)
            y = np.array(vh1[-1])  # the solve yields conj(y); undo the conjugation
            # Fixed y: the map sends x through sum_i kron(A_i, conj(A_i y)).
            Mx = sum(np.kron(A, (A @ y).conj()[:, None]) for A in kraus)
            if field == REAL:
                Mx = Mx.real
            _, s2, vh2 = np.linalg.svd(Mx)
            x = vh2[-1].conj()
            val = float(s2[-1]) ** 2
            if val < _SUCCESS or prev - val <= 0.0:
                break
            if _hopeless(val, prev, cfg.max_iters - it):
                break
            prev = val
        if best is None or val < best[0]:
            best = (val, x, y)
        if best[0] < _SUCCESS:
            break
    return best


def minimize_symmetric_pair(pair_maps, dim: int, cfg: OracleConfig):
    """Minimize ``||map(x, y)||^2 / ||x y^* + y x^*||_F^2`` by alternation.

    ``pair_maps(u)`` must return complex matrices ``(P1, P2)`` such that the
    objective at the fixed slot ``u`` is ``P1 conj(v) + P2 v``; the map is
    assumed symmetric in its two slots.  Returns the best ``(value, x, y)``
    with the pair normalized so the symmetric product has unit Frobenius
    norm, or None when every restart degenerated.
    """
    eye = np.eye(dim)
    best = None
    for r in range(cfg.restarts):
        rng = np.random.default_rng(np.random.SeedSequence([abs(int(cfg.seed)), 0x52, r]))
        x = _rand_unit(rng, dim, COMPLEX)
        y = None
        prev = np.inf
        val = np.inf
        for it in range(cfg.max_iters):
            P1, P2 = pair_maps(x)
            L = _block_real(P1 + P2, 1j * (P2 - P1))
            D1 = np.kron(x[:, None], eye)  # sends conj(v) to vec(x v^*)
            D2 = np.kron(eye, x.conj()[:, None])  # sends v to vec(v x^*)
            N = _block_real(D1 + D2, 1j * (D2 - D1))
            step_val, vt = smallest_generalized(L, N)
            if vt is None:
                x = _rand_unit(rng, dim, COMPLEX)
                continue
            y = vt[:dim] + 1j * vt[dim:]
            val = step_val
            x, y = y, x  # alternate which slot is solved next
            if val < _SUCCESS or prev - val <= 0.0:
                break
            if _hopeless(val, prev, cfg.max_iters - it):
                break
            prev = val
        if y is None:
            continue
        pair = _renormalize_symmetric(x, y)
        if pair is None:
            continue
        if best is None or val < best[0]:
            best = (val, pair[0], pair[1])
        if best[0] < _SUCCESS:
            break
    return best


def _renormalize_symmetric(x: np.ndarray, y: np.ndarray):
    s = np.linalg.norm(np.outer(x, y.conj()) + np.outer(y, x.conj()))
    if s == 0.0:
        return None
    root = np.sqrt(s)
    return x / root, y / root
