"""Channels in Kraus form: application, adjoint duality, and the Choi picture.

Run:  python3 demos/01_channels_and_choi.py
"""

import numpy as np

from prchannels import (
    adjoint_apply,
    apply,
    channels_equal,
    choi_matrix,
    choi_rank,
    fixture,
    minimal_kraus_from_choi,
    validate,
)

print("== The dephasing channel deletes off-diagonal entries ==")
deph = fixture("dephasing")
T = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
print("input:\n", T.real)
print("output:\n", apply(deph, T).real)

print("\n== Validation report ==")
rep = validate(deph)
print(f"trace preserving: {rep.is_trace_preserving} (residual {rep.tp_residual:.2e})")
print(f"unital:           {rep.is_unital} (residual {rep.unital_residual:.2e})")
print(f"Choi rank:        {rep.choi_rank}")

print("\n== Adjoint duality <Phi(T), S> = <T, Phi*(S)> ==")
rng = np.random.default_rng(0)
T = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
S = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
lhs = np.trace(apply(deph, T) @ S.conj().T)
rhs = np.trace(T @ adjoint_apply(deph, S).conj().T)
print(f"lhs = {lhs:.12f}")
print(f"rhs = {rhs:.12f}")

print("\n== Choi round trip recovers a minimal Kraus family ==")
C = choi_matrix(deph)
print("Choi matrix:\n", np.round(C.real, 3))
back = minimal_kraus_from_choi(C, 2, 2)
print(f"recovered {len(back.kraus)} Kraus operators (Choi rank {choi_rank(deph)})")
print(f"same map as the original: {channels_equal(deph, back)}")

print("\n== A completely positive map that is not trace preserving ==")
three = fixture("example_2_11")
rep = validate(three)
print(f"TP: {rep.is_trace_preserving}, residual {rep.tp_residual:.6f} (= sqrt(2)/3)")
print("It stays loadable and analyzable; only the flag records the failure.")
