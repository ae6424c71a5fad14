"""Exact phase-retrievability decision for Choi-rank-2 channels.

A rank-2 channel fails to separate pure states exactly when some lam makes
both A1 + lam A2 and -conj(lam) A1 + A2 lose injectivity.  Both singular sets
are finite (or the whole plane), so intersecting them after reflection is a
complete decision procedure.

Run:  python3 demos/02_exact_rank2_decision.py
"""

import numpy as np

from prchannels import (
    QuantumChannel,
    apply,
    decide_rank2,
    fixture,
    pencil_singular_set,
    verify_certificate,
)

print("== Dephasing: the classic failure ==")
deph = fixture("dephasing")
A1, A2 = deph.kraus
s1 = pencil_singular_set(A1, A2)
t = pencil_singular_set(A2, A1)
print("singular set of A1 + lam A2:", np.round(s1.roots, 6))
print("singular set of A2 + mu A1: ", np.round(t.roots, 6))
print("reflection -conj(mu):       ", np.round([-np.conj(m) for m in t.roots], 6))
verdict = decide_rank2(deph)
print(f"verdict: {verdict.status} via {verdict.method}, clash at lam = {verdict.certificate.lam:.6f}")

sw = verdict.state_witness
print("colliding pure states:")
print("  x =", np.round(sw.x, 6))
print("  y =", np.round(sw.y, 6))
rx = apply(deph, np.outer(sw.x, sw.x.conj()))
ry = apply(deph, np.outer(sw.y, sw.y.conj()))
print("  ||Phi(rho_x) - Phi(rho_y)|| =", np.linalg.norm(rx - ry))
print("  re-verified:", verify_certificate(deph, verdict))

print("\n== A retrievable rank-2 pair: the singular sets miss each other ==")
B1 = np.diag([1 / np.sqrt(2), 1.0]).astype(complex)
B2 = np.diag([1 / np.sqrt(2), 0.0]).astype(complex)
ch = QuantumChannel(2, 2, [B1, B2], "complex")
s1 = pencil_singular_set(B1, B2)
t = pencil_singular_set(B2, B1)
print("singular set of B1 + lam B2:", np.round(s1.roots, 6))
print("reflected second set:       ", np.round([-np.conj(m) for m in t.roots], 6))
print("verdict:", decide_rank2(ch).status)

print("\n== An injective part plus a rank-two part can still fail ==")
X = np.array([[0, 1], [1, 0]], dtype=complex)
swap_mix = QuantumChannel(2, 2, [np.eye(2, dtype=complex) / np.sqrt(2), X / np.sqrt(2)], "complex")
e1, e2 = np.eye(2)
print("Phi(e1 e1*) == Phi(e2 e2*):", np.allclose(apply(swap_mix, np.outer(e1, e1)), apply(swap_mix, np.outer(e2, e2))))
print("verdict:", decide_rank2(swap_mix).status)
