"""State vectors, density matrices, and the mean/dispersion split.

A Hermitian operator applied to a unit vector always splits into a component
along the vector (the mean) and an orthogonal remainder whose squared length
is the dispersion.  This module implements that decomposition together with
the density-matrix diagnostics that expose when a "diagonal truncation" of a
pure state stops behaving like a quantum state: it keeps unit trace, but its
purity drops below one and its trace dispersion goes negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, ShapeError
from .linalg import TOL_HERM, as_square, hermitian_eig, hermiticity_residual

TOL_NORM = 1e-10
#: Dispersions at or below this are treated as exactly zero (eigenvector case).
DISPERSION_EPS = 1e-12
#: Eigenvalue floor for positive semidefiniteness of density matrices.
PSD_FLOOR = -1e-10


def _as_amplitudes(values) -> np.ndarray:
    amp = np.asarray(values, dtype=complex)
    if amp.ndim != 1 or amp.size == 0:
        raise ShapeError("amplitudes must form a non-empty 1-d sequence")
    if not np.all(np.isfinite(amp)):
        raise DomainError("amplitudes must be finite")
    return amp


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = _as_amplitudes(self.amplitudes)
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > TOL_NORM:
            raise DomainError(
                f"state vector is not normalized: |psi| = {norm!r}"
            )
        amp = amp.copy()  # never freeze an array the caller still owns
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    @classmethod
    def normalized(cls, values) -> "StateVector":
        """Construct from an arbitrary nonzero vector, normalizing it."""
        amp = _as_amplitudes(values)
        norm = float(np.linalg.norm(amp))
        if norm <= 1e-12:
            raise DomainError("cannot normalize a (near-)zero vector")
        return cls(amp / norm)

    @classmethod
    def basis_state(cls, dim: int, index: int) -> "StateVector":
        """The ``index``-th standard basis vector in ``dim`` dimensions."""
        if not 0 <= index < dim:
            raise ShapeError(f"basis index {index} out of range for dim {dim}")
        amp = np.zeros(dim, dtype=complex)
        amp[index] = 1.0
        return cls(amp)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_square(self.matrix)
        if hermiticity_residual(m) > TOL_HERM:
            raise DomainError("density matrix must be Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TOL_NORM:
            raise DomainError(f"density matrix must have unit trace, got {tr!r}")
        lo = float(hermitian_eig(m).eigenvalues[0])
        if lo < PSD_FLOOR:
            raise DomainError(
                f"density matrix must be positive semidefinite "
                f"(smallest eigenvalue {lo:.3e})"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True)
class Decomposition:
    """Mean/dispersion split of an operator applied to a state.

    ``residual_state`` is the normalized orthogonal remainder; it is absent
    when the state is an eigenvector (dispersion at the zero cut).
    """

    mean: float
    dispersion: float
    residual_state: StateVector | None


def superpose(c1: complex, s1: StateVector, c2: complex, s2: StateVector) -> StateVector:
    """Normalized linear combination ``c1*s1 + c2*s2``.

    Raises ``DomainError`` when the combination is (numerically) the zero
    vector, i.e. the two terms cancel.
    """
    if s1.dim != s2.dim:
        raise ShapeError(f"state dimensions differ: {s1.dim} vs {s2.dim}")
    combo = c1 * s1.amplitudes + c2 * s2.amplitudes
    norm = float(np.linalg.norm(combo))
    if norm <= 1e-12:
        raise DomainError("degenerate superposition: the components cancel")
    return StateVector(combo / norm)


def decompose_state(a, psi1: StateVector) -> Decomposition:
    """Split ``a @ psi1`` into ``mean * psi1 + b * psi2`` with ``psi2``
    orthonormal to ``psi1``.

    ``mean`` is the expectation value of the Hermitian operator ``a`` in
    ``psi1`` and ``b = sqrt(dispersion)`` is chosen real and nonnegative,
    any phase being absorbed into ``psi2``.  The dispersion equals the
    second moment minus the squared mean; tiny negative rounding (within
    ``DISPERSION_EPS``) is clamped to zero.
    """
    m = as_square(a)
    if hermiticity_residual(m) > TOL_HERM:
        raise DomainError("operator must be Hermitian")
    if m.shape[0] != psi1.dim:
        raise ShapeError(
            f"operator dim {m.shape[0]} does not match state dim {psi1.dim}"
        )
    psi = psi1.amplitudes
    image = m @ psi
    mean = float(np.vdot(psi, image).real)
    second_moment = float(np.vdot(image, image).real)
    dispersion = second_moment - mean * mean
    if dispersion <= DISPERSION_EPS:
        return Decomposition(mean=mean, dispersion=max(dispersion, 0.0), residual_state=None)
    remainder = image - mean * psi
    psi2 = StateVector.normalized(remainder)
    overlap = abs(np.vdot(psi, psi2.amplitudes))
    if overlap > 1e-10:
        raise DomainError(
            f"residual state is not orthogonal (overlap {overlap:.3e}); "
            "operator is likely non-Hermitian beyond tolerance"
        )
    return Decomposition(mean=mean, dispersion=dispersion, residual_state=psi2)


def outer_product(psi: StateVector) -> DensityMatrix:
    """Pure-state density matrix ``psi psi^+`` (a rank-1 projector)."""
    amp = psi.amplitudes
    return DensityMatrix(np.outer(amp, amp.conj()))


def diagonal_truncate(rho: DensityMatrix) -> DensityMatrix:
    """Drop all off-diagonal entries, keeping the (unit) trace.

    The result is a statistical mixture of the basis populations; it is
    idempotent as an operation but generally not idempotent as a matrix.
    """
    return DensityMatrix(np.diag(np.diag(rho.matrix)))


@dataclass(frozen=True)
class Classification:
    """Purity diagnostics of a density matrix.

    ``rho_dispersion`` is ``trace(rho^2) - trace(rho)^2``.  It is zero for
    pure states and strictly negative for mixtures; the sign is reported
    rather than clamped because the negativity is the interesting part.
    """

    kind: Literal["pure", "mixture"]
    purity: float
    rho_dispersion: float


def classify(rho: DensityMatrix | np.ndarray) -> Classification:
    """Classify a density matrix as pure or mixed via its purity."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    m = rho.matrix
    purity = float(np.trace(m @ m).real)
    tr = float(np.trace(m).real)
    dispersion = purity - tr * tr
    kind = "pure" if abs(purity - 1.0) <= 1e-10 else "mixture"
    return Classification(kind=kind, purity=purity, rho_dispersion=dispersion)
