"""Hermitian involutions: construction, projector interconversion, algebra.

An operator that is simultaneously self-adjoint and unitary squares to the
identity, so its spectrum is contained in {+1, -1} and its trace is an
integer with the parity of the dimension (the "trace class").  This module
provides:

* closed-form constructors in dimension 2 (mixing angle plus relative
  phase) and dimensions 3 and 4 in the rank-one-deficiency branches, where
  the prescribed diagonal determines every off-diagonal magnitude;
* conversion to and from complete rank-1 projector families (sign flips
  over a resolution of the identity), which covers every dimension;
* product/commutator tables for operator families built over a shared
  projector set;
* a residual report (``validate``) quantifying how far an arbitrary matrix
  is from satisfying each of the structural constraints.

Sign convention for the closed-form branches: with trace sign ``s`` the
operator is ``s * (I - 2 P)`` for a rank-1 projector ``P``, which forces
every off-diagonal amplitude to carry the sign ``-s``.  Amplitudes are kept
as signed reals so that the dependent relative phases are exact differences
of the independent ones (not merely differences modulo pi).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConstructionError, DomainError, ShapeError
from .linalg import (
    TOL_HERM,
    TOL_INV,
    as_square,
    hermitian_eig,
    hermiticity_residual,
    involution_residual,
    kron,
    max_abs,
    unitarity_residual,
)

#: Off-diagonal magnitudes below this leave the associated phase undefined.
PHASE_EPS = 1e-12
#: A product counts as expressible in span{I, family} below this residual.
EXPRESSIBLE_TOL = 1e-9


def wrap_phase(x):
    """Wrap angle(s) to the half-open interval (-pi, pi]."""
    wrapped = np.pi - np.mod(np.pi - np.asarray(x, dtype=float), 2.0 * np.pi)
    if np.ndim(x) == 0:
        return float(wrapped)
    return wrapped


def _nearest_trace_class(trace: complex, dim: int) -> tuple[int, float]:
    """Nearest integer of the correct parity, clamped to [-dim, dim]."""
    parity = dim % 2
    k = int(round((trace.real - parity) / 2.0)) * 2 + parity
    k = max(-dim, min(dim, k))
    return k, abs(trace - k)


@dataclass(frozen=True)
class EigenschaftOp:
    """A Hermitian involution with its integer trace class and eigenvalue
    multiplicities ``(n_plus, n_minus)``.

    Use :meth:`from_matrix` to build one from a foreign matrix; it gates on
    the Hermiticity and involution residuals.  The plain constructor only
    checks structural consistency and trusts the numerical invariants, which
    is what the in-package builders rely on.
    """

    matrix: np.ndarray
    trace_class: int
    multiplicities: tuple[int, int]

    def __post_init__(self):
        m = as_square(self.matrix)
        n = m.shape[0]
        tc = int(self.trace_class)
        if abs(tc) > n or (tc - n) % 2 != 0:
            raise DomainError(
                f"trace class {tc} impossible for dimension {n}"
            )
        n_plus, n_minus = self.multiplicities
        if n_plus + n_minus != n or n_plus - n_minus != tc:
            raise DomainError(
                f"multiplicities {self.multiplicities} inconsistent with "
                f"dim {n}, trace class {tc}"
            )
        if abs(complex(np.trace(m)) - tc) > 1e-8:
            raise DomainError(
                f"matrix trace {np.trace(m)!r} is not within 1e-8 of the "
                f"declared trace class {tc}"
            )
        m = m.copy()  # never freeze an array the caller still owns
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "trace_class", tc)
        object.__setattr__(self, "multiplicities", (int(n_plus), int(n_minus)))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def from_matrix(cls, m, *, tol_inv: float = TOL_INV,
                    tol_herm: float = TOL_HERM) -> "EigenschaftOp":
        """Validate a matrix as a Hermitian involution and wrap it.

        Raises ``DomainError`` when the Hermiticity or involution residual
        exceeds its gate, or when the trace is not close to an integer of
        the correct parity.
        """
        mat = as_square(m)
        herm = hermiticity_residual(mat)
        if herm > tol_herm:
            raise DomainError(
                f"not Hermitian: residual {herm:.3e} exceeds {tol_herm:g}"
            )
        inv = involution_residual(mat)
        if inv > tol_inv:
            raise DomainError(
                f"not an involution: residual {inv:.3e} exceeds {tol_inv:g}"
            )
        n = mat.shape[0]
        trace = complex(np.trace(mat))
        tc, dist = _nearest_trace_class(trace, n)
        if dist > 1e-8:
            raise DomainError(
                f"trace {trace!r} is {dist:.3e} away from the nearest "
                f"admissible trace class {tc}"
            )
        n_plus = (n + tc) // 2
        return cls(matrix=mat, trace_class=tc,
                   multiplicities=(n_plus, n - n_plus))


@dataclass(frozen=True)
class ProjectorSet:
    """A complete orthogonal family of one-dimensional projectors.

    Validation enforces: each member Hermitian, idempotent, unit trace
    (rank one); mutual orthogonality; and completeness (the members sum to
    the identity), which together force exactly ``dim`` members.
    """

    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(as_square(p) for p in self.projectors)
        if not mats:
            raise ShapeError("projector set must be non-empty")
        n = mats[0].shape[0]
        if any(p.shape[0] != n for p in mats):
            raise ShapeError("projectors must share one dimension")
        if len(mats) != n:
            raise DomainError(
                f"a complete rank-1 family in dimension {n} has exactly "
                f"{n} members, got {len(mats)}"
            )
        for i, p in enumerate(mats):
            if hermiticity_residual(p) > TOL_HERM:
                raise DomainError(f"projector {i} is not Hermitian")
            if max_abs(p @ p - p) > TOL_INV:
                raise DomainError(f"projector {i} is not idempotent")
            if abs(complex(np.trace(p)) - 1.0) > 1e-8:
                raise DomainError(f"projector {i} is not rank one")
        for i in range(n):
            for j in range(i + 1, n):
                if max_abs(mats[i] @ mats[j]) > TOL_INV:
                    raise DomainError(
                        f"projectors {i} and {j} are not orthogonal"
                    )
        if max_abs(sum(mats) - np.eye(n)) > TOL_INV:
            raise DomainError("projectors do not resolve the identity")
        mats = tuple(p.copy() for p in mats)
        for p in mats:
            p.setflags(write=False)
        object.__setattr__(self, "projectors", mats)

    @property
    def dim(self) -> int:
        return int(self.projectors[0].shape[0])

    @classmethod
    def from_columns(cls, u) -> "ProjectorSet":
        """Rank-1 projectors onto the columns of a unitary matrix."""
        m = as_square(u)
        cols = [m[:, k] for k in range(m.shape[1])]
        return cls(tuple(np.outer(c, c.conj()) for c in cols))

    @classmethod
    def standard_basis(cls, dim: int) -> "ProjectorSet":
        return cls.from_columns(np.eye(dim, dtype=complex))


class ProjectorDecomposition(NamedTuple):
    """Spectral resolution of an involution: projectors plus their signs."""

    projectors: ProjectorSet
    signs: tuple[int, ...]


@dataclass(frozen=True)
class H2Params:
    """Mixing angle and relative phase for the dimension-2 solution.

    ``gamma_angle`` is the mixing angle in radians (this is a different
    gamma from the dimension-3 off-diagonal amplitude); ``delta_phi`` is
    the phase of the upper off-diagonal entry.
    """

    gamma_angle: float
    delta_phi: float

    def __post_init__(self):
        if not (np.isfinite(self.gamma_angle) and np.isfinite(self.delta_phi)):
            raise DomainError("angles must be finite")


class H2Elements(NamedTuple):
    """Measurable matrix elements of a dimension-2 involution: the diagonal
    ``alpha`` (fixing the spectrum side) and the off-diagonal magnitude
    ``beta`` with its phase (fixing the dispersion)."""

    alpha: float
    beta: float
    delta_phi: float


def build_h2(params: H2Params) -> EigenschaftOp:
    """Traceless dimension-2 involution from mixing angle and phase.

    The matrix is ``[[cos g, e^{i dphi} sin g], [e^{-i dphi} sin g, -cos g]]``;
    it is Hermitian and involutive identically in the parameters.
    """
    c = np.cos(params.gamma_angle)
    off = np.sin(params.gamma_angle) * np.exp(1j * params.delta_phi)
    m = np.array([[c, off], [np.conj(off), -c]], dtype=complex)
    return EigenschaftOp.from_matrix(m)


def hadamard() -> EigenschaftOp:
    """The symmetric traceless involution ``[[1, 1], [1, -1]] / sqrt(2)``,
    i.e. the lossless 50/50 beam-splitter matrix."""
    return build_h2(H2Params(gamma_angle=np.pi / 4.0, delta_phi=0.0))


def h2_elements(op: EigenschaftOp) -> H2Elements:
    """Read back ``(alpha, beta, delta_phi)`` from a dimension-2 operator.

    ``beta`` is reported nonnegative; when it vanishes the phase is
    conventionally zero.
    """
    if op.dim != 2:
        raise ShapeError(f"expected a dimension-2 operator, got dim {op.dim}")
    m = op.matrix
    alpha = float(m[0, 0].real)
    beta = float(abs(m[0, 1]))
    delta_phi = float(np.angle(m[0, 1])) if beta > PHASE_EPS else 0.0
    return H2Elements(alpha=alpha, beta=beta, delta_phi=delta_phi)


@dataclass(frozen=True)
class DiagSpec:
    """Prescribed diagonal for the closed-form dimension-3/4 constructions.

    ``alphas`` are the diagonal entries, ``trace_sign`` selects the branch
    (trace ``+-1`` in dimension 3, ``+-2`` in dimension 4), and ``phases``
    are the free relative phases of the first row: ``(dphi_12, dphi_13)``
    for dimension 3 and ``(dphi_12, dphi_13, dphi_14)`` for dimension 4.
    The remaining phases are fixed by closure.
    """

    dim: int
    alphas: tuple[float, ...]
    trace_sign: int
    phases: tuple[float, ...]

    def __post_init__(self):
        if self.dim not in (3, 4):
            raise ConstructionError(
                f"closed-form diagonal construction covers dims 3 and 4, "
                f"got {self.dim}"
            )
        if self.trace_sign not in (1, -1):
            raise ConstructionError("trace_sign must be +1 or -1")
        alphas = tuple(float(a) for a in self.alphas)
        if len(alphas) != self.dim:
            raise ConstructionError(
                f"need {self.dim} diagonal entries, got {len(alphas)}"
            )
        for i, a in enumerate(alphas):
            if not np.isfinite(a) or abs(a) > 1.0:
                raise ConstructionError(f"|alpha_{i + 1}| <= 1 violated (got {a!r})")
        target = float(self.trace_sign) * (1.0 if self.dim == 3 else 2.0)
        total = sum(alphas)
        if abs(total - target) > 1e-12:
            raise ConstructionError(
                f"sum(alphas) must equal trace_sign * "
                f"{1 if self.dim == 3 else 2} = {target:g} (got {total!r})"
            )
        n_free = 2 if self.dim == 3 else 3
        phases = tuple(float(p) for p in self.phases)
        if len(phases) != n_free:
            raise ConstructionError(
                f"dimension {self.dim} takes {n_free} free phases, "
                f"got {len(phases)}"
            )
        if not all(np.isfinite(p) for p in phases):
            raise ConstructionError("phases must be finite")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "trace_sign", int(self.trace_sign))
        object.__setattr__(self, "dim", int(self.dim))


def build_from_diag(spec: DiagSpec) -> EigenschaftOp:
    """Build the rank-one-deficiency involution with the prescribed diagonal.

    With ``s = trace_sign`` the operator is ``s * (I - 2 P)`` where ``P``
    projects onto the unit vector with ``|c_i|^2 = (1 - s * alpha_i) / 2``
    and phases chosen so the first-row off-diagonals carry exactly the
    requested free phases.  Every off-diagonal magnitude then satisfies
    ``|H_ij|^2 = (1 - s*alpha_i) * (1 - s*alpha_j)`` and the dependent
    phases are differences of the free ones.
    """
    s = float(spec.trace_sign)
    alphas = np.asarray(spec.alphas, dtype=float)
    radicands = (1.0 - s * alphas) / 2.0
    bad = np.nonzero(radicands < -1e-15)[0]
    if bad.size:
        i = int(bad[0]) + 1
        raise ConstructionError(
            f"radicand (1 - trace_sign*alpha_{i}) is negative"
        )
    r = np.sqrt(np.maximum(radicands, 0.0))
    thetas = np.zeros(spec.dim)
    thetas[1:] = [-p for p in spec.phases]
    c = r * np.exp(1j * thetas)
    c = c / np.linalg.norm(c)
    h = s * (np.eye(spec.dim, dtype=complex) - 2.0 * np.outer(c, c.conj()))
    return EigenschaftOp.from_matrix(h)


def from_projector_flip(ps: ProjectorSet, signs) -> EigenschaftOp:
    """Signed sum ``sum_i signs_i * P_i`` over a complete projector family.

    Any assignment of ``+-1`` signs yields a Hermitian involution whose
    trace class is the sum of the signs.
    """
    sgn = [int(x) for x in signs]
    if len(sgn) != ps.dim:
        raise DomainError(
            f"need {ps.dim} signs for dimension {ps.dim}, got {len(sgn)}"
        )
    if any(x not in (1, -1) for x in sgn):
        raise DomainError("signs must be +1 or -1")
    h = sum(s * p for s, p in zip(sgn, ps.projectors))
    return EigenschaftOp.from_matrix(h)


def to_projectors(op: EigenschaftOp) -> ProjectorDecomposition:
    """Spectral resolution of an involution into rank-1 projectors.

    Inside degenerate eigenspaces the projector basis is arbitrary; only
    sign-weighted sums (which reproduce the operator) are canonical.
    """
    spectrum = hermitian_eig(op.matrix)
    signs = []
    for lam in spectrum.eigenvalues:
        k = 1 if lam > 0 else -1
        if abs(lam - k) > 1e-8:
            raise DomainError(
                f"eigenvalue {lam!r} is not within 1e-8 of +-1; "
                "input is not an involution"
            )
        signs.append(k)
    cols = spectrum.eigenvectors
    projectors = tuple(
        np.outer(cols[:, k], cols[:, k].conj()) for k in range(op.dim)
    )
    return ProjectorDecomposition(ProjectorSet(projectors), tuple(signs))


def complement_family(ps: ProjectorSet, kind: str = "flip") -> list[EigenschaftOp]:
    """Canonical involution families over a projector set.

    ``kind="flip"`` gives the ``dim`` operators ``I - 2 P_i`` (one flipped
    sign each; trace class ``dim - 2``).  ``kind="traceless"`` gives the
    dimension-4 triple with balanced signs ``(+,-,+,-)``, ``(+,+,-,-)``,
    ``(+,-,-,+)`` and trace class 0.
    """
    eye = np.eye(ps.dim, dtype=complex)
    if kind == "flip":
        return [
            EigenschaftOp.from_matrix(eye - 2.0 * p) for p in ps.projectors
        ]
    if kind == "traceless":
        if ps.dim != 4:
            raise DomainError(
                "the balanced traceless family exists only in dimension 4"
            )
        sign_rows = [(1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1)]
        return [from_projector_flip(ps, row) for row in sign_rows]
    raise DomainError(f"unknown family kind {kind!r}")


def build_kron_family(h_a: EigenschaftOp, h_b: EigenschaftOp) -> tuple[
        EigenschaftOp, EigenschaftOp, EigenschaftOp]:
    """The commuting traceless dimension-4 triple built from two traceless
    dimension-2 involutions: ``(I (x) B, A (x) I, A (x) B)``."""
    for name, op in (("first", h_a), ("second", h_b)):
        if op.dim != 2:
            raise ShapeError(f"{name} factor must have dimension 2")
        if op.trace_class != 0:
            raise DomainError(
                f"{name} factor must be traceless (trace class 0), "
                f"got {op.trace_class}"
            )
    eye = np.eye(2, dtype=complex)
    return (
        EigenschaftOp.from_matrix(kron(eye, h_b.matrix)),
        EigenschaftOp.from_matrix(kron(h_a.matrix, eye)),
        EigenschaftOp.from_matrix(kron(h_a.matrix, h_b.matrix)),
    )


class ProductExpansion(NamedTuple):
    """Least-squares expansion of a pairwise product in span{I, family}.

    ``coefficients[0]`` multiplies the identity, ``coefficients[1:]`` the
    family members in order.  When the family is linearly dependent (for
    instance when it sums to a multiple of the identity) the expansion is
    the minimum-norm representative of infinitely many.
    """

    coefficients: np.ndarray
    residual: float
    expressible: bool


@dataclass
class AlgebraTable:
    """Pairwise products and commutators of an involution family."""

    dim: int
    products: dict[tuple[int, int], ProductExpansion]
    commutator_norms: dict[tuple[int, int], float]

    @property
    def max_commutator(self) -> float:
        return max(self.commutator_norms.values(), default=0.0)


def algebra_table(family: list[EigenschaftOp]) -> AlgebraTable:
    """Express every pairwise product in span{identity, family members}.

    The expansion solves a real least-squares problem over the stacked real
    and imaginary parts of the entries; a product counts as expressible
    when the max-norm residual of its reconstruction is at most
    ``EXPRESSIBLE_TOL``.
    """
    if not family:
        raise DomainError("family must be non-empty")
    dim = family[0].dim
    if any(op.dim != dim for op in family):
        raise ShapeError("family members must share one dimension")
    basis = [np.eye(dim, dtype=complex)] + [op.matrix for op in family]
    design = np.column_stack(
        [np.concatenate([b.ravel().real, b.ravel().imag]) for b in basis]
    )
    products: dict[tuple[int, int], ProductExpansion] = {}
    commutators: dict[tuple[int, int], float] = {}
    for i, hi in enumerate(family):
        for j, hj in enumerate(family):
            prod = hi.matrix @ hj.matrix
            target = np.concatenate([prod.ravel().real, prod.ravel().imag])
            coeffs, *_ = np.linalg.lstsq(design, target, rcond=None)
            recon = sum(c * b for c, b in zip(coeffs, basis))
            residual = max_abs(prod - recon)
            products[(i, j)] = ProductExpansion(
                coefficients=coeffs,
                residual=residual,
                expressible=residual <= EXPRESSIBLE_TOL,
            )
            if i < j:
                commutators[(i, j)] = max_abs(
                    prod - hj.matrix @ hi.matrix
                )
    return AlgebraTable(dim=dim, products=products, commutator_norms=commutators)


@dataclass(frozen=True)
class ValidationReport:
    """Residuals quantifying how far a matrix is from a Hermitian involution.

    ``relation_residuals`` carries the closed-form structural constraints
    (off-diagonal magnitudes determined by the diagonal, and phase
    closures) for dimension 2 always and for dimensions 3/4 when the
    nearest trace class selects a rank-one-deficiency branch; it is empty
    otherwise.  All reporting, no gating: inspect the numbers and decide.
    """

    dim: int
    hermiticity_residual: float
    unitarity_residual: float
    involution_residual: float
    trace: complex
    trace_class: int
    trace_class_distance: float
    trace_class_suspect: bool
    relation_residuals: dict[str, float]

    def as_flat_dict(self) -> dict:
        """Flat JSON-ready dict; the complex trace splits into re/im."""
        out = {
            "dim": self.dim,
            "hermiticity_residual": self.hermiticity_residual,
            "unitarity_residual": self.unitarity_residual,
            "involution_residual": self.involution_residual,
            "trace_re": self.trace.real,
            "trace_im": self.trace.imag,
            "trace_class": self.trace_class,
            "trace_class_distance": self.trace_class_distance,
            "trace_class_suspect": self.trace_class_suspect,
        }
        out.update(self.relation_residuals)
        return out


def _closure_residual(m: np.ndarray, s: float, dep: tuple[int, int],
                      plus: tuple[int, int], minus: tuple[int, int]) -> float | None:
    """|wrap(phi_dep - (phi_plus - phi_minus))| with signed-amplitude phases
    ``phi_ij = arg(-s * m_ij)``; None when any amplitude is too small."""
    entries = [m[dep], m[plus], m[minus]]
    if any(abs(e) <= PHASE_EPS for e in entries):
        return None
    phi = [float(np.angle(-s * e)) for e in entries]
    return abs(wrap_phase(phi[0] - (phi[1] - phi[2])))


def validate(matrix) -> ValidationReport:
    """Residual report for an arbitrary square matrix.

    Accepts a plain array or an :class:`EigenschaftOp`.  Never raises on
    bad numbers; every deviation shows up as a residual.
    """
    if isinstance(matrix, EigenschaftOp):
        m = matrix.matrix
    else:
        m = as_square(matrix)
    n = m.shape[0]
    trace = complex(np.trace(m))
    tc, dist = _nearest_trace_class(trace, n)
    relations: dict[str, float] = {}

    diag = np.real(np.diag(m))
    if n == 2:
        beta = abs(m[0, 1])
        relations["balance"] = float(abs(beta * (diag[0] + diag[1])))
        relations["unit_norm_1"] = float(abs(diag[0] ** 2 + beta**2 - 1.0))
        relations["unit_norm_2"] = float(abs(diag[1] ** 2 + beta**2 - 1.0))
    elif n in (3, 4) and abs(tc) == n - 2:
        s = 1.0 if tc > 0 else -1.0
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for i, j in pairs:
            predicted = (1.0 - s * diag[i]) * (1.0 - s * diag[j])
            relations[f"mag_{i + 1}{j + 1}"] = float(
                abs(abs(m[i, j]) ** 2 - predicted)
            )
        closures = [((1, 2), (0, 2), (0, 1))]
        if n == 4:
            closures += [((1, 3), (0, 3), (0, 1)), ((2, 3), (0, 3), (0, 2))]
        for dep, plus, minus in closures:
            res = _closure_residual(m, s, dep, plus, minus)
            if res is not None:
                key = f"closure_{dep[0] + 1}{dep[1] + 1}"
                relations[key] = float(res)

    return ValidationReport(
        dim=n,
        hermiticity_residual=hermiticity_residual(m),
        unitarity_residual=unitarity_residual(m),
        involution_residual=involution_residual(m),
        trace=trace,
        trace_class=tc,
        trace_class_distance=float(dist),
        trace_class_suspect=bool(dist > 1e-6),
        relation_residuals=relations,
    )
