"""The mean/dispersion split of a Hermitian operator on a state.

Applying a Hermitian operator to a unit vector always yields a component
along the vector (the mean) plus an orthogonal remainder whose squared
length is the dispersion.  A state is an eigenvector exactly when the
remainder vanishes; otherwise the pair (mean, dispersion) is the whole
story the operator can tell about that state.
"""

import numpy as np

from eigenschaft import (
    H2Params,
    StateVector,
    build_h2,
    decompose_state,
    hadamard,
    superpose,
)

e1 = StateVector.basis_state(2, 0)
e2 = StateVector.basis_state(2, 1)

print("Operator diag(1, -1) on its own eigenvector e1:")
d = decompose_state(np.diag([1.0, -1.0]), e1)
print(f"  mean = {d.mean:+.6f}, dispersion = {d.dispersion:.6f}, "
      f"residual present: {d.residual_state is not None}")

print("\nThe 50/50 splitter on e1 (not an eigenvector):")
d = decompose_state(hadamard().matrix, e1)
print(f"  mean = {d.mean:+.6f}  (= 1/sqrt(2))")
print(f"  dispersion = {d.dispersion:.6f}  (= 1/2)")
print(f"  residual state = {np.round(d.residual_state.amplitudes, 6)}  (= e2)")

print("\nSweep the mixing angle: mean = cos(gamma), dispersion = sin^2(gamma)")
for gamma_deg in (0, 30, 45, 60, 90):
    op = build_h2(H2Params(np.radians(gamma_deg), 0.0))
    d = decompose_state(op.matrix, e1)
    print(f"  gamma = {gamma_deg:>2} deg: mean = {d.mean:+.4f}, "
          f"dispersion = {d.dispersion:.4f}")

print("\nReconstruction check on a superposed state:")
psi = superpose(0.8, e1, 0.6j, e2)
op = build_h2(H2Params(np.radians(70.0), 0.9))
d = decompose_state(op.matrix, psi)
lhs = op.matrix @ psi.amplitudes
rhs = d.mean * psi.amplitudes + np.sqrt(d.dispersion) * d.residual_state.amplitudes
print(f"  | A psi - (mean psi + b psi_2) | = {np.linalg.norm(lhs - rhs):.2e}")
overlap = abs(np.vdot(psi.amplitudes, d.residual_state.amplitudes))
print(f"  |<psi | psi_2>| = {overlap:.2e}")
