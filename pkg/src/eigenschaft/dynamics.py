"""Two-level time evolution of a dimension-2 involution.

With level frequencies ``omega1, omega2`` and the overall phase dropped,
the diagonal of the operator is constant while the upper off-diagonal
winds as ``exp(+i (omega1 - omega2) t)``.  Only the relative phase moves,
so the operator stays a Hermitian involution at every instant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError, ShapeError
from .operators import EigenschaftOp, h2_elements, wrap_phase


@dataclass(frozen=True)
class TwoLevelSystem:
    """A dimension-2 involution with its two level frequencies (rad/time)."""

    omega1: float
    omega2: float
    h2: EigenschaftOp

    def __post_init__(self):
        if not (np.isfinite(self.omega1) and np.isfinite(self.omega2)):
            raise DomainError("frequencies must be finite")
        if self.h2.dim != 2:
            raise ShapeError("two-level evolution needs a dimension-2 operator")

    @property
    def detuning(self) -> float:
        return float(self.omega1 - self.omega2)


class BeatSample(NamedTuple):
    t: float
    delta_phi: float


def evolve_h2(sys: TwoLevelSystem, t: float) -> EigenschaftOp:
    """Advance the off-diagonal phase by ``(omega1 - omega2) * t``.

    The diagonal (and with it the spectrum) is unchanged; the off-diagonal
    magnitude is preserved, so the result is again a valid involution.
    """
    if not np.isfinite(t):
        raise DomainError("time must be finite")
    m = np.array(sys.h2.matrix, dtype=complex)
    m[0, 1] = m[0, 1] * np.exp(1j * sys.detuning * t)
    m[1, 0] = np.conj(m[0, 1])
    return EigenschaftOp.from_matrix(m)


def beat_trace(sys: TwoLevelSystem, t_samples: Iterable[float]) -> list[BeatSample]:
    """Relative phase versus time, wrapped to ``(-pi, pi]``.

    The phase winds linearly at the detuning frequency from the operator's
    initial off-diagonal phase.
    """
    times = np.asarray(list(t_samples), dtype=float)
    if times.size and not np.all(np.isfinite(times)):
        raise DomainError("time samples must be finite")
    base = h2_elements(sys.h2).delta_phi
    return [
        BeatSample(t=float(t), delta_phi=wrap_phase(base + sys.detuning * t))
        for t in times
    ]
