"""Why the complex case needs the symmetric-product test, not just simple tensors.

The normalized projector channel of the complex frame {e1, e2, e1+e2}
annihilates no simple tensor x (x) y, yet it still collides two pure states;
only the symmetric product x (x) y + y (x) x exposes the failure.  This is
the one-sidedness that the LIKELY_PR verdict encodes: for general complex
channels a missing witness is evidence, not proof.

Run:  python3 demos/04_one_sided_oracles.py
"""

import numpy as np

from prchannels import (
    NoWitness,
    OracleConfig,
    apply,
    decide,
    fixture,
    is_phase_retrievable_frame,
    Frame,
    simple_tensor_oracle,
    symmetric_tensor_oracle,
)

cfg = OracleConfig(restarts=64, seed=0)
ch = fixture("example_2_6")

print("== Simple-tensor search comes up empty ==")
simple = simple_tensor_oracle(ch, cfg)
assert isinstance(simple, NoWitness)
print(f"no simple tensor annihilated; observed floor = {simple.floor:.4f}")

print("\n== Symmetric-product search finds the failure ==")
symmetric = symmetric_tensor_oracle(ch, cfg)
sym = np.outer(symmetric.x, symmetric.y.conj()) + np.outer(symmetric.y, symmetric.x.conj())
print(f"witness pair found; ||Phi(x y* + y x*)|| = {np.linalg.norm(apply(ch, sym)):.2e}")
print(f"verdict: {decide(ch, cfg).status}")

print("\n== The same story at the frame level ==")
vectors = np.array([[1, 0], [0, 1], [1, 1]], dtype=complex)
real_frame = Frame(dim=2, vectors=vectors, field="real")
complex_frame = Frame(dim=2, vectors=vectors, field="complex")
print("real field:    ", is_phase_retrievable_frame(real_frame).phase_retrievable)
report = is_phase_retrievable_frame(complex_frame, cfg)
print("complex field: ", report.phase_retrievable)
x, y = report.witness
mx = np.abs(vectors.conj() @ x) ** 2
my = np.abs(vectors.conj() @ y) ** 2
print("equal phaseless measurements, max gap:", np.max(np.abs(mx - my)))
print("for distinct rays, ||rho_x - rho_y|| =", np.linalg.norm(np.outer(x, x.conj()) - np.outer(y, y.conj())))
