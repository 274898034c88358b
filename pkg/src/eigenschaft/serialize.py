"""JSON and CSV wire formats.

Matrices travel as ``{"dim": n, "entries": [[re, im], ...]}`` in row-major
order; state vectors as ``{"dim": n, "amplitudes": [[re, im], ...]}``.
Operator payloads add an integer ``"trace_class"``.  Readers are strict:
wrong-length entry arrays, non-numeric components, and malformed structure
all raise :class:`SerializationError`.

Output is deterministic: keys are emitted in a fixed order and floats use
the shortest round-trip representation, so identical inputs produce
byte-identical payloads.
"""

from __future__ import annotations

import json

import numpy as np

from .dynamics import BeatSample
from .errors import SerializationError
from .interferometer import FringeRecord, HolographicReport, RecoveryResult
from .operators import (
    EigenschaftOp,
    ProjectorDecomposition,
    ProjectorSet,
    ValidationReport,
)
from .states import Classification, Decomposition, StateVector


def dumps(payload) -> str:
    """Stable JSON text: two-space indent, fixed key order, trailing newline."""
    return json.dumps(payload, indent=2) + "\n"


def _require_dict(d, what: str) -> dict:
    if not isinstance(d, dict):
        raise SerializationError(f"{what} payload must be a JSON object")
    return d


def _require_dim(d, what: str) -> int:
    dim = d.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SerializationError(f"{what} needs a positive integer 'dim'")
    return dim


def _pairs_to_complex(raw, count: int, what: str) -> np.ndarray:
    if not isinstance(raw, list):
        raise SerializationError(f"{what} must be a list of [re, im] pairs")
    if len(raw) != count:
        raise SerializationError(
            f"{what} has {len(raw)} entries, expected {count}"
        )
    values = np.empty(count, dtype=complex)
    for k, pair in enumerate(raw):
        if (not isinstance(pair, list)) or len(pair) != 2:
            raise SerializationError(
                f"{what}[{k}] must be a [re, im] pair"
            )
        re, im = pair
        for comp in (re, im):
            if isinstance(comp, bool) or not isinstance(comp, (int, float)):
                raise SerializationError(
                    f"{what}[{k}] components must be numbers"
                )
        z = complex(float(re), float(im))
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            raise SerializationError(f"{what}[{k}] must be finite")
        values[k] = z
    return values


def _complex_to_pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values).ravel()]


def matrix_to_dict(m) -> dict:
    """Serialize a square complex matrix."""
    mat = np.asarray(m, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise SerializationError("only square matrices are serialized")
    return {"dim": int(mat.shape[0]), "entries": _complex_to_pairs(mat)}


def matrix_from_dict(d) -> np.ndarray:
    """Parse the matrix payload, rejecting wrong-length entry arrays."""
    d = _require_dict(d, "matrix")
    dim = _require_dim(d, "matrix")
    flat = _pairs_to_complex(d.get("entries"), dim * dim, "entries")
    return flat.reshape(dim, dim)


def state_to_dict(state: StateVector) -> dict:
    return {"dim": state.dim, "amplitudes": _complex_to_pairs(state.amplitudes)}


def state_from_dict(d) -> StateVector:
    d = _require_dict(d, "state")
    dim = _require_dim(d, "state")
    amp = _pairs_to_complex(d.get("amplitudes"), dim, "amplitudes")
    return StateVector(amp)


def op_to_dict(op: EigenschaftOp) -> dict:
    out = matrix_to_dict(op.matrix)
    out["trace_class"] = op.trace_class
    return out


def op_from_dict(d, *, tol_inv: float | None = None,
                 tol_herm: float | None = None) -> EigenschaftOp:
    """Parse and re-validate an operator payload.

    A present ``trace_class`` must agree with the one inferred from the
    matrix.  Tolerance overrides pass through to the validation gates.
    """
    m = matrix_from_dict(d)
    kwargs = {}
    if tol_inv is not None:
        kwargs["tol_inv"] = tol_inv
    if tol_herm is not None:
        kwargs["tol_herm"] = tol_herm
    op = EigenschaftOp.from_matrix(m, **kwargs)
    declared = d.get("trace_class")
    if declared is not None:
        if isinstance(declared, bool) or not isinstance(declared, int):
            raise SerializationError("'trace_class' must be an integer")
        if declared != op.trace_class:
            raise SerializationError(
                f"declared trace_class {declared} does not match the "
                f"matrix (inferred {op.trace_class})"
            )
    return op


def projector_set_to_dict(ps: ProjectorSet) -> dict:
    return {
        "dim": ps.dim,
        "projectors": [matrix_to_dict(p) for p in ps.projectors],
    }


def projector_set_from_dict(d) -> ProjectorSet:
    d = _require_dict(d, "projector set")
    dim = _require_dim(d, "projector set")
    raw = d.get("projectors")
    if not isinstance(raw, list):
        raise SerializationError("'projectors' must be a list of matrices")
    mats = [matrix_from_dict(item) for item in raw]
    if any(m.shape[0] != dim for m in mats):
        raise SerializationError("projector dimensions disagree with 'dim'")
    return ProjectorSet(tuple(mats))


def projector_decomposition_to_dict(pd: ProjectorDecomposition) -> dict:
    out = projector_set_to_dict(pd.projectors)
    out["signs"] = [int(s) for s in pd.signs]
    return out


def validation_report_to_dict(report: ValidationReport) -> dict:
    return report.as_flat_dict()


def decomposition_to_dict(dec: Decomposition) -> dict:
    return {
        "mean": float(dec.mean),
        "dispersion": float(dec.dispersion),
        "residual_state": (
            None if dec.residual_state is None else state_to_dict(dec.residual_state)
        ),
    }


def classification_to_dict(c: Classification) -> dict:
    return {
        "kind": c.kind,
        "purity": float(c.purity),
        "rho_dispersion": float(c.rho_dispersion),
    }


def recovery_to_dict(result: RecoveryResult) -> dict:
    rec, diag = result.state, result.diagnostics
    return {
        "recovered": {
            "mag1": float(rec.mag1),
            "mag2": float(rec.mag2),
            "relative_phase": float(rec.relative_phase),
        },
        "diagnostics": {
            "residual_rms": float(diag.residual_rms),
            "offset": float(diag.offset),
            "visibility": float(diag.visibility),
            "ambiguous": bool(diag.ambiguous),
        },
    }


def holographic_report_to_dict(report: HolographicReport) -> dict:
    rec, diag, err = report.recovered, report.diagnostics, report.truth_error
    return {
        "recovered": {
            "mag1": float(rec.mag1),
            "mag2": float(rec.mag2),
            "relative_phase": float(rec.relative_phase),
        },
        "diagnostics": {
            "residual_rms": float(diag.residual_rms),
            "offset": float(diag.offset),
            "visibility": float(diag.visibility),
            "ambiguous": bool(diag.ambiguous),
        },
        "truth_error": {
            "mag1": float(err.mag1),
            "mag2": float(err.mag2),
            "phase": float(err.phase),
        },
    }


def beat_trace_csv(samples: list[BeatSample]) -> str:
    """CSV with columns ``t,delta_phi``."""
    lines = ["t,delta_phi"]
    lines += [f"{s.t!r},{s.delta_phi!r}" for s in samples]
    return "\n".join(lines) + "\n"


def fringe_csv(fr: FringeRecord) -> str:
    """CSV with columns ``phi,I1,I2``."""
    lines = ["phi,I1,I2"]
    lines += [
        f"{float(p)!r},{float(a)!r},{float(b)!r}"
        for p, a, b in zip(fr.phases, fr.intensity_port1, fr.intensity_port2)
    ]
    return "\n".join(lines) + "\n"
