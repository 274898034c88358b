"""What dropping off-diagonals does to a pure density matrix.

The outer product of a unit vector is a rank-1 projector: Hermitian, unit
trace, idempotent.  Truncating it to its diagonal keeps the trace but
breaks idempotency, and the trace dispersion Tr(rho^2) - (Tr rho)^2 goes
strictly negative -- the truncated object is neither a pure quantum state
nor a classical observable.
"""

import numpy as np

from eigenschaft import StateVector, classify, diagonal_truncate, outer_product

print("Pure state (1, 1)/sqrt(2):")
psi = StateVector(np.array([1.0, 1.0]) / np.sqrt(2))
rho = outer_product(psi)
print(np.round(rho.matrix.real, 4))
c = classify(rho)
print(f"  kind = {c.kind}, purity = {c.purity:.6f}, "
      f"trace dispersion = {c.rho_dispersion:+.6f}")

print("\nDiagonal truncation of the same matrix:")
trunc = diagonal_truncate(rho)
print(np.round(trunc.matrix.real, 4))
c = classify(trunc)
print(f"  kind = {c.kind}, purity = {c.purity:.6f}, "
      f"trace dispersion = {c.rho_dispersion:+.6f}  (= -2 |a|^2 |b|^2)")

print("\nThe dispersion deficit grows with how evenly the state spreads:")
for weights in ([0.99, 0.01], [0.9, 0.1], [0.5, 0.5],
                [0.4, 0.3, 0.3], [1 / 3, 1 / 3, 1 / 3]):
    amp = np.sqrt(np.array(weights, dtype=float))
    c = classify(diagonal_truncate(outer_product(StateVector(amp))))
    populations = ", ".join(f"{w:.2f}" for w in weights)
    print(f"  populations ({populations}): "
          f"purity = {c.purity:.4f}, dispersion = {c.rho_dispersion:+.4f}")

print("\nA relative phase changes nothing after truncation:")
for phase in (0.0, np.pi / 3, np.pi):
    amp = np.array([1.0, np.exp(1j * phase)]) / np.sqrt(2)
    c = classify(diagonal_truncate(outer_product(StateVector(amp))))
    print(f"  phase {phase:+.3f} rad -> dispersion {c.rho_dispersion:+.4f}")
print("which is the point: the off-diagonals carried the phase information.")
