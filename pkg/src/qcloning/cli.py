"""Batch command-line front end.

Subcommands: frontier (no-cloning curve sweep), machine (full report for one
cloning machine), capacity (qubit channel capacity bound), verify (seeded
invariant suites). Exit codes: 0 success, 1 verification failure, 2 usage
error. All sampling is driven by one seeded RNG and identical configurations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .channels import channel_fidelity, depolarizing_fraction
from .config import ORACLE_TOL
from .hcm import (
    BUILD_DIM_CAP,
    grid_from_qubit_amplitudes,
    isotropic_hcm,
    load_grid,
    output_channels,
    frontier,
    ucm_ndim,
)
from .linalg import random_state
from .pcm import DoubleBellAmplitudes, capacity_upper_bound, symmetric_pcm, triplicator
from .uncertainty import entropic_check, marginal_entropic_check, robertson_check
from .verify import FAULTS, run_all

DEFAULT_SEED = 12345
FAMILIES = ("ucm", "isotropic", "symmetric", "triplicator")


@dataclass(frozen=True)
class RunConfig:
    command: str
    dim: int
    samples: int
    seed: int
    tolerance: float
    output_format: str
    output_path: str | None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.dim < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim}")
        if self.command in ("machine", "verify") and self.dim > BUILD_DIM_CAP:
            raise ValueError(
                f"{self.command} builds the four-party state and is capped at "
                f"dim {BUILD_DIM_CAP}, got {self.dim}"
            )
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _report_dict(report) -> dict:
    return {
        "lhs": report.lhs,
        "rhs": report.rhs,
        "satisfied": report.satisfied,
        "slack": report.slack,
    }


def _channel_dict(ch) -> dict:
    payload = {"dim": ch.dim, "probs": [[float(v) for v in row] for row in ch.probs]}
    try:
        fraction = depolarizing_fraction(ch)
        payload["isotropic"] = True
        payload["depolarizing_fraction"] = fraction.pi
        payload["scaling"] = fraction.scaling
    except ValueError as exc:
        payload["isotropic"] = False
        payload["anisotropy"] = str(exc)
    return payload


def _cmd_frontier(cfg: RunConfig) -> str:
    if cfg.samples < 2:
        raise ValueError("frontier needs at least 2 samples")
    rng = np.random.default_rng(cfg.seed)
    simulated = cfg.dim <= BUILD_DIM_CAP
    rows = []
    for point in frontier(cfg.dim, cfg.samples):
        if simulated:
            out = output_channels(isotropic_hcm(point.a, cfg.dim).grid())
            psi = random_state(cfg.dim, rng)
            fid_a = channel_fidelity(out.a, psi)
            fid_b = channel_fidelity(out.b, psi)
            method = "simulated"
        else:
            fid_a = 1.0 - point.pi_a + point.pi_a / cfg.dim
            fid_b = 1.0 - point.pi_b + point.pi_b / cfg.dim
            method = "analytic"
        rows.append(
            {
                "a": point.a,
                "b": point.b,
                "pi_a": point.pi_a,
                "pi_b": point.pi_b,
                "fid_a": fid_a,
                "fid_b": fid_b,
                "method": method,
            }
        )
    if cfg.output_format == "json":
        return _json({"dim": cfg.dim, "seed": cfg.seed, "points": rows})
    header = ["a", "b", "pi_a", "pi_b", "fid_a", "fid_b", "method"]
    return _csv(header, [[row[k] for k in header] for row in rows])


def _machine_grid(cfg: RunConfig, args) -> tuple:
    if args.grid is not None:
        grid = load_grid(args.grid)
        if args.dim is not None and args.dim != grid.dim:
            raise ValueError(f"--dim {args.dim} does not match grid dim {grid.dim}")
        return grid, f"grid:{args.grid}"
    family = args.family
    if family == "ucm":
        return ucm_ndim(cfg.dim), "family:ucm"
    if family == "isotropic":
        if args.a is None:
            raise ValueError("isotropic family needs --a")
        return isotropic_hcm(args.a, cfg.dim).grid(), f"family:isotropic:a={_fmt(args.a)}"
    if cfg.dim != 2:
        raise ValueError(f"family {family!r} is qubit-only; use --dim 2")
    if family == "symmetric":
        if args.theta is None or args.phi is None:
            raise ValueError("symmetric family needs --theta and --phi")
        point = symmetric_pcm(args.theta, args.phi, rc_variant=args.rc_variant)
        label = f"family:symmetric:theta={_fmt(args.theta)},phi={_fmt(args.phi)}"
        return grid_from_qubit_amplitudes(point.amplitudes()), label
    if family == "triplicator":
        if args.x is None:
            raise ValueError("triplicator family needs --x")
        amps = triplicator(args.x)
        return grid_from_qubit_amplitudes(amps), f"family:triplicator:x={_fmt(args.x)}"
    raise ValueError(f"unknown family {family!r}")


def _cmd_machine(cfg: RunConfig, args) -> str:
    if cfg.output_format != "json":
        raise ValueError("machine reports are JSON only")
    grid, source = _machine_grid(cfg, args)
    out = output_channels(grid)
    rng = np.random.default_rng(cfg.seed)
    fids_a, fids_b = [], []
    for _ in range(cfg.samples):
        psi = random_state(grid.dim, rng)
        fids_a.append(channel_fidelity(out.a, psi))
        fids_b.append(channel_fidelity(out.b, psi))

    def stats(values):
        return {
            "mean": float(np.mean(values)),
            "min": float(np.min(values)),
            "max": float(np.max(values)),
            "spread": float(np.max(values) - np.min(values)),
        }

    marginal_1, marginal_2 = marginal_entropic_check(grid)
    uncertainty = {
        "entropic": _report_dict(entropic_check(out.a, out.b)),
        "marginal_1": _report_dict(marginal_1),
        "marginal_2": _report_dict(marginal_2),
    }
    if grid.dim == 2:
        amps = DoubleBellAmplitudes.from_array(grid.alpha.ravel())
        uncertainty["robertson_1"] = _report_dict(robertson_check(amps, 1))
        uncertainty["robertson_2"] = _report_dict(robertson_check(amps, 2))
    report = {
        "dim": grid.dim,
        "source": source,
        "seed": cfg.seed,
        "channels": {
            "a": _channel_dict(out.a),
            "b": _channel_dict(out.b),
            "c": {
                "weights": [[float(v) for v in row] for row in out.c.grid()],
                "residual": out.c.residual,
            },
        },
        "fidelity": {"samples": cfg.samples, "a": stats(fids_a), "b": stats(fids_b)},
        "uncertainty": uncertainty,
    }
    return _json(report)


def _cmd_capacity(cfg: RunConfig, args) -> str:
    bound = capacity_upper_bound(args.p_x, args.p_y, args.p_z)
    payload = {
        "p_x": args.p_x,
        "p_y": args.p_y,
        "p_z": args.p_z,
        "bound": bound.bound,
        "quadratic_form": bound.quadratic_form,
        "region": bound.region,
    }
    if cfg.output_format == "json":
        return _json(payload)
    header = ["p_x", "p_y", "p_z", "bound", "quadratic_form", "region"]
    return _csv(header, [[payload[k] for k in header]])


def _cmd_verify(cfg: RunConfig, args) -> tuple[str, int]:
    results = run_all(cfg.dim, cfg.samples, cfg.seed, cfg.tolerance, fault=args.inject_fault)
    lines = []
    for suite in results:
        total = suite.passed + suite.failed
        if suite.ok:
            lines.append(f"{suite.name}: PASS ({total} checks)")
        else:
            lines.append(f"{suite.name}: FAIL ({suite.failed}/{total} failed)")
            lines.append(f"  first counterexample: {suite.first_failure}")
    failed = sum(1 for suite in results if not suite.ok)
    if failed:
        lines.append(f"{failed} of {len(results)} suites failed")
    else:
        lines.append(f"all {len(results)} suites passed")
    return "\n".join(lines) + "\n", 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcloning",
        description="Asymmetric cloning machines: sweeps, reports and self-verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, samples_default, format_default):
        p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--tolerance", type=float, default=ORACLE_TOL)
        p.add_argument(
            "--format", choices=("csv", "json"), default=format_default, dest="output_format"
        )
        p.add_argument("--out", dest="output_path", default=None)

    p_frontier = sub.add_parser("frontier", help="sample the no-cloning trade-off curve")
    p_frontier.add_argument("--dim", type=int, default=2)
    add_common(p_frontier, samples_default=50, format_default="csv")

    p_machine = sub.add_parser("machine", help="full report for one cloning machine")
    p_machine.add_argument("--dim", type=int, default=None)
    source = p_machine.add_mutually_exclusive_group(required=True)
    source.add_argument("--family", choices=FAMILIES)
    source.add_argument("--grid", help="path to an amplitude grid JSON file")
    p_machine.add_argument("--a", type=float, default=None, help="isotropic flat amplitude")
    p_machine.add_argument("--theta", type=float, default=None, help="symmetric polar angle")
    p_machine.add_argument("--phi", type=float, default=None, help="symmetric azimuthal angle")
    p_machine.add_argument("--rc-variant", action="store_true", dest="rc_variant")
    p_machine.add_argument("--x", type=float, default=None, help="triplicator parameter")
    add_common(p_machine, samples_default=100, format_default="json")

    p_capacity = sub.add_parser("capacity", help="capacity upper bound of a qubit channel")
    p_capacity.add_argument("p_x", type=float)
    p_capacity.add_argument("p_y", type=float)
    p_capacity.add_argument("p_z", type=float)
    add_common(p_capacity, samples_default=1, format_default="json")

    p_verify = sub.add_parser("verify", help="run the seeded invariant suites")
    p_verify.add_argument("--dim", type=int, default=4)
    add_common(p_verify, samples_default=50, format_default="json")
    p_verify.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "machine" and args.dim is None and args.grid is not None:
            dim_for_cfg = 2  # validated against the file after loading
        else:
            dim_for_cfg = args.dim if getattr(args, "dim", None) is not None else 2
        cfg = RunConfig(
            command=args.command,
            dim=dim_for_cfg,
            samples=args.samples,
            seed=args.seed,
            tolerance=args.tolerance,
            output_format=args.output_format,
            output_path=args.output_path,
        )
        exit_code = 0
        if args.command == "frontier":
            output = _cmd_frontier(cfg)
        elif args.command == "machine":
            output = _cmd_machine(cfg, args)
        elif args.command == "capacity":
            output = _cmd_capacity(cfg, args)
        elif args.command == "verify":
            output, exit_code = _cmd_verify(cfg, args)
        else:  # pragma: no cover
            raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(f"seed={args.seed}", file=sys.stderr)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
