"""Command line front end.

Machine-readable payloads (JSON or CSV) go to stdout; human diagnostics go
to stderr.  Exit codes: 0 success, 1 domain error (mathematically invalid
input), 2 usage error (bad flags, unreadable or malformed files).

Angles on the command line are degrees; the library works in radians.
The environment variable ``EIGENSCHAFT_TOL`` overrides the default 1e-10
gate tolerance used when admitting operator files and by ``validate
--strict``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import serialize
from .dynamics import TwoLevelSystem, beat_trace, evolve_h2
from .errors import EigenschaftError, SerializationError
from .interferometer import (
    InterferometerConfig,
    holographic_report,
    run_interferometer,
    uniform_sweep,
)
from .operators import (
    DiagSpec,
    H2Params,
    build_from_diag,
    build_h2,
    build_kron_family,
    complement_family,
    from_projector_flip,
    hadamard,
    to_projectors,
    validate,
)
from .states import DensityMatrix, classify, decompose_state

ENV_TOL = "EIGENSCHAFT_TOL"
DEFAULT_GATE_TOL = 1e-10

_KRON_MEMBERS = {"ib": 0, "ai": 1, "ab": 2}


class UsageError(Exception):
    """Command-level usage problem; maps to exit code 2."""


def gate_tolerance() -> float:
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return DEFAULT_GATE_TOL
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{ENV_TOL} must be a number, got {raw!r}")
    if not value > 0.0 or not math.isfinite(value):
        raise UsageError(f"{ENV_TOL} must be a positive finite number")
    return value


def _csv_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _sign(text: str) -> int:
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise argparse.ArgumentTypeError(f"sign must be +1 or -1, got {text!r}")


def _load_json(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}")


def _read_op(path: str):
    tol = gate_tolerance()
    return serialize.op_from_dict(_load_json(path), tol_inv=tol, tol_herm=tol)


def _cmd_construct_h2(args) -> tuple[str, int]:
    params = H2Params(
        gamma_angle=math.radians(args.gamma), delta_phi=math.radians(args.dphi)
    )
    return serialize.dumps(serialize.op_to_dict(build_h2(params))), 0


def _cmd_construct_diag(args) -> tuple[str, int]:
    spec = DiagSpec(
        dim=args.dim,
        alphas=tuple(args.alphas),
        trace_sign=args.sign,
        phases=tuple(math.radians(p) for p in args.phases),
    )
    return serialize.dumps(serialize.op_to_dict(build_from_diag(spec))), 0


def _cmd_construct_kron(args) -> tuple[str, int]:
    family = build_kron_family(_read_op(args.a), _read_op(args.b))
    if args.member is not None:
        op = family[_KRON_MEMBERS[args.member]]
        return serialize.dumps(serialize.op_to_dict(op)), 0
    payload = {"members": [serialize.op_to_dict(op) for op in family]}
    return serialize.dumps(payload), 0


def _cmd_construct_flip(args) -> tuple[str, int]:
    ps = serialize.projector_set_from_dict(_load_json(args.projectors))
    op = from_projector_flip(ps, args.signs)
    return serialize.dumps(serialize.op_to_dict(op)), 0


def _cmd_validate(args) -> tuple[str, int]:
    m = serialize.matrix_from_dict(_load_json(args.matrix))
    report = validate(m)
    payload = serialize.dumps(serialize.validation_report_to_dict(report))
    code = 0
    if args.strict:
        tol = gate_tolerance()
        if report.involution_residual > tol or report.hermiticity_residual > tol:
            print(
                f"strict gate failed: involution residual "
                f"{report.involution_residual:.3e}, hermiticity residual "
                f"{report.hermiticity_residual:.3e}, tolerance {tol:g}",
                file=sys.stderr,
            )
            code = 1
    return payload, code


def _cmd_convert(args) -> tuple[str, int]:
    if (args.op is None) == (args.projectors is None):
        raise UsageError("convert needs exactly one of --op or --projectors")
    if args.op is not None:
        decomposition = to_projectors(_read_op(args.op))
        return serialize.dumps(
            serialize.projector_decomposition_to_dict(decomposition)
        ), 0
    ps = serialize.projector_set_from_dict(_load_json(args.projectors))
    members = complement_family(ps, kind=args.family)
    payload = {"members": [serialize.op_to_dict(op) for op in members]}
    return serialize.dumps(payload), 0


def _cmd_decompose(args) -> tuple[str, int]:
    operator = serialize.matrix_from_dict(_load_json(args.op))
    state = serialize.state_from_dict(_load_json(args.state))
    dec = decompose_state(operator, state)
    return serialize.dumps(serialize.decomposition_to_dict(dec)), 0


def _cmd_classify(args) -> tuple[str, int]:
    rho = DensityMatrix(serialize.matrix_from_dict(_load_json(args.rho)))
    return serialize.dumps(serialize.classification_to_dict(classify(rho))), 0


def _cmd_evolve(args) -> tuple[str, int]:
    if (args.time is None) == (args.times is None):
        raise UsageError("evolve needs exactly one of --time or --times")
    system = TwoLevelSystem(
        omega1=args.omega1, omega2=args.omega2, h2=_read_op(args.op)
    )
    if args.time is not None:
        op = evolve_h2(system, args.time)
        return serialize.dumps(serialize.op_to_dict(op)), 0
    samples = beat_trace(system, args.times)
    return serialize.beat_trace_csv(samples), 0


def _cmd_simulate(args) -> tuple[str, int]:
    state = serialize.state_from_dict(_load_json(args.state))
    splitter = hadamard() if args.splitter is None else _read_op(args.splitter)
    cfg = InterferometerConfig(
        splitter=splitter,
        sweep_phases=uniform_sweep(args.phases),
        shot_noise_sigma=args.noise,
    )
    if args.fringes:
        fringe = run_interferometer(state, cfg, rng_seed=args.seed)
        return serialize.fringe_csv(fringe), 0
    report = holographic_report(state, cfg, seed=args.seed)
    return serialize.dumps(serialize.holographic_report_to_dict(report)), 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigenschaft",
        description="Construct, validate, and exercise Hermitian involutions.",
        epilog=f"Set {ENV_TOL} to override the 1e-10 gate tolerance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser(
        "construct", help="build an operator and print its JSON"
    )
    csub = construct.add_subparsers(dest="builder", required=True)

    h2 = csub.add_parser("h2", help="dimension-2 operator from angles (degrees)")
    h2.add_argument("--gamma", type=float, required=True, help="mixing angle, degrees")
    h2.add_argument("--dphi", type=float, required=True, help="relative phase, degrees")
    h2.set_defaults(handler=_cmd_construct_h2)

    diag = csub.add_parser(
        "diag", help="dimension-3/4 operator from its prescribed diagonal"
    )
    diag.add_argument("--dim", type=int, choices=(3, 4), required=True)
    diag.add_argument("--alphas", type=_csv_floats, required=True,
                      help="comma-separated diagonal entries")
    diag.add_argument("--sign", type=_sign, required=True,
                      help="trace sign branch, +1 or -1")
    diag.add_argument("--phases", type=_csv_floats, required=True,
                      help="comma-separated free phases, degrees")
    diag.set_defaults(handler=_cmd_construct_diag)

    kron = csub.add_parser(
        "kron", help="dimension-4 family from two traceless dimension-2 operators"
    )
    kron.add_argument("--a", required=True, help="first operator JSON file")
    kron.add_argument("--b", required=True, help="second operator JSON file")
    kron.add_argument("--member", choices=sorted(_KRON_MEMBERS),
                      help="emit a single member (ib: I(x)B, ai: A(x)I, ab: A(x)B)")
    kron.set_defaults(handler=_cmd_construct_kron)

    flip = csub.add_parser(
        "flip", help="signed sum over a projector-set JSON file"
    )
    flip.add_argument("--projectors", required=True)
    flip.add_argument("--signs", type=_csv_ints, required=True,
                      help="comma-separated +1/-1 signs (use --signs=-1,... )")
    flip.set_defaults(handler=_cmd_construct_flip)

    val = sub.add_parser("validate", help="residual report for a matrix JSON")
    val.add_argument("matrix", nargs="?", default="-",
                     help="matrix JSON file, or - for stdin (default)")
    val.add_argument("--strict", action="store_true",
                     help="exit 1 unless Hermiticity and involution residuals "
                          "pass the gate tolerance")
    val.set_defaults(handler=_cmd_validate)

    conv = sub.add_parser(
        "convert",
        help="operator -> projectors (--op) or projectors -> family (--projectors)",
    )
    conv.add_argument("--op", help="operator JSON file")
    conv.add_argument("--projectors", help="projector-set JSON file")
    conv.add_argument("--family", choices=("flip", "traceless"), default="flip",
                      help="family kind for --projectors (default flip)")
    conv.set_defaults(handler=_cmd_convert)

    dec = sub.add_parser(
        "decompose", help="mean/dispersion split of a Hermitian operator on a state"
    )
    dec.add_argument("--op", required=True, help="Hermitian matrix JSON file")
    dec.add_argument("--state", required=True, help="state JSON file")
    dec.set_defaults(handler=_cmd_decompose)

    cls = sub.add_parser("classify", help="purity diagnostics of a density matrix")
    cls.add_argument("--rho", required=True, help="density matrix JSON file")
    cls.set_defaults(handler=_cmd_classify)

    evo = sub.add_parser("evolve", help="two-level evolution of a dimension-2 operator")
    evo.add_argument("--op", required=True, help="operator JSON file")
    evo.add_argument("--omega1", type=float, required=True)
    evo.add_argument("--omega2", type=float, required=True)
    evo.add_argument("--time", type=float, help="single time: evolved operator JSON")
    evo.add_argument("--times", type=_csv_floats,
                     help="comma-separated times: beat-trace CSV")
    evo.set_defaults(handler=_cmd_evolve)

    sim = sub.add_parser(
        "simulate", help="phase-sweep interferometer run and state recovery"
    )
    sim.add_argument("--state", required=True, help="two-component state JSON file")
    sim.add_argument("--phases", type=int, required=True,
                     help="number of uniform sweep phases")
    sim.add_argument("--noise", type=float, default=0.0,
                     help="intensity noise sigma (default 0)")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--splitter", help="operator JSON file (default: 50/50)")
    sim.add_argument("--fringes", action="store_true",
                     help="emit the fringe CSV instead of the recovery report")
    sim.set_defaults(handler=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SerializationError as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 2
    except EigenschaftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(payload)
    return code


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
