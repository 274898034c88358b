"""Two-level dynamics: only the relative phase moves.

Detuned level frequencies wind the off-diagonal phase of a dimension-2
involution linearly in time while the diagonal (and hence the spectrum)
stays put.  The wrapped phase trace is what an interferometric beat
measurement would record.
"""

import numpy as np

from eigenschaft import (
    TwoLevelSystem,
    beat_trace,
    evolve_h2,
    h2_elements,
    hadamard,
    involution_residual,
)

system = TwoLevelSystem(omega1=2.0, omega2=0.5, h2=hadamard())
print(f"detuning omega1 - omega2 = {system.detuning}")

print("\nOperator snapshots (upper off-diagonal element):")
for t in (0.0, 0.5, 1.0, 2.0):
    op = evolve_h2(system, t)
    el = h2_elements(op)
    print(f"  t = {t:4.1f}: H12 = {op.matrix[0, 1]:+.4f}, "
          f"alpha = {el.alpha:.4f}, beta = {el.beta:.4f}, "
          f"involution residual = {involution_residual(op.matrix):.1e}")

print("\nBeat trace (t, delta_phi), wrapped to (-pi, pi]:")
times = np.linspace(0.0, 6.0, 13)
for sample in beat_trace(system, times):
    marks = int(round((sample.delta_phi + np.pi) / (2 * np.pi) * 40))
    print(f"  t = {sample.t:4.2f}  delta_phi = {sample.delta_phi:+7.4f}  "
          f"|{'-' * marks}*{'-' * (40 - marks)}|")

print("\nThe slope of the unwrapped phase equals the detuning:")
samples = beat_trace(system, [0.0, 0.25])
slope = (samples[1].delta_phi - samples[0].delta_phi) / 0.25
print(f"  measured {slope:.12f} vs detuning {system.detuning}")
