"""Command-line front end.

    calmir force SCENARIO -d D [--tau TAU]     single-point pressure
    calmir sweep SCENARIO -o OUT.csv           distance sweep to CSV
    calmir asympt SCENARIO -d D [--tau TAU]    closed-form context
    calmir preset NAME -o FILE                 write a bundled scenario

Pressures are reported as F d^3/(hbar Omega); pass --omega-rad-s to add an
SI column (Pa).  Sweep rows are computed in parallel but written in order,
so output bytes do not depend on the worker count.  Exit codes: 0 ok,
1 usage, 2 scenario error, 3 convergence failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .asymptotics import build_report, hamaker_c3
from .errors import ConvergenceError, ScenarioError, UnsupportedConfigurationError
from .lifshitz import QuadratureConfig, bound_envelope, force_finite_T, force_zero_T
from .materials import Kind
from .presets import PRESET_NAMES, preset_scenario
from .scenario import Scenario, parse, serialize

HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m/s

CSV_COLUMNS = (
    "d_over_c_by_omega",
    "d_over_lambda",
    "pressure_norm",
    "te_part",
    "tm_part",
    "bound_lo",
    "bound_hi",
    "c3_over_d3",
    "est_error",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="calmir", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=float, default=None, help="relative tolerance")
        sp.add_argument("--max-matsubara", type=int, default=None)
        sp.add_argument("--omega-rad-s", type=float, default=None,
                        help="reference frequency in rad/s; adds SI pressure output")
        sp.add_argument("--quiet", action="store_true")

    sp = sub.add_parser("force", help="pressure at one distance")
    sp.add_argument("scenario", type=Path)
    sp.add_argument("-d", "--distance", type=float, required=True, help="gap in c/Omega")
    sp.add_argument("--tau", type=float, default=None, help="override the file temperature")
    common(sp)

    sp = sub.add_parser("sweep", help="distance sweep to CSV")
    sp.add_argument("scenario", type=Path)
    sp.add_argument("-o", "--output", type=Path, required=True)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)

    sp = sub.add_parser("asympt", help="closed-form limits and regime")
    sp.add_argument("scenario", type=Path)
    sp.add_argument("-d", "--distance", type=float, required=True)
    sp.add_argument("--tau", type=float, default=None)
    common(sp)

    sp = sub.add_parser("preset", help="write a bundled scenario file")
    sp.add_argument("name", choices=PRESET_NAMES)
    sp.add_argument("-o", "--output", type=Path, required=True)
    return p


def _config(args) -> QuadratureConfig:
    kw = {}
    if getattr(args, "tol", None) is not None:
        kw["rel_tol"] = args.tol
    if getattr(args, "max_matsubara", None) is not None:
        kw["max_matsubara"] = args.max_matsubara
    return QuadratureConfig(**kw)


def _load(path: Path) -> Scenario:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ScenarioError(f"cannot read '{path}': {exc.strerror}") from None
    return parse(data)


def _force_at(scn: Scenario, d: float, tau: float, cfg: QuadratureConfig):
    if tau == 0.0:
        return force_zero_T(scn.mirror1, scn.mirror2, scn.gap, d, cfg)
    return force_finite_T(scn.mirror1, scn.mirror2, scn.gap, d, tau, cfg)


def _si_pressure(pressure_norm: float, d: float, omega: float) -> float:
    # F = pressure_norm * hbar Omega / d^3 with d in metres (d c/Omega)
    return pressure_norm * HBAR * omega**4 / (C_LIGHT**3 * d**3)


def _c3_or_none(scn: Scenario):
    homogeneous = not scn.mirror1.layers and not scn.mirror2.layers
    if not homogeneous or scn.gap.kind is not Kind.VACUUM:
        return None
    try:
        return hamaker_c3(scn.mirror1.substrate, scn.mirror2.substrate, scn.temperature)
    except UnsupportedConfigurationError:
        return None


def cmd_force(args) -> int:
    scn = _load(args.scenario)
    cfg = _config(args)
    tau = scn.temperature if args.tau is None else args.tau
    res = _force_at(scn, args.distance, tau, cfg)
    if args.quiet:
        print(f"{res.pressure_norm:.12e}")
        return 0
    print(f"d={args.distance:.12e}")
    print(f"tau={tau:.12e}")
    print(f"pressure_norm={res.pressure_norm:.12e}")
    print(f"te_part={res.te_part:.12e}")
    print(f"tm_part={res.tm_part:.12e}")
    print(f"bound_lo={res.bound_lo:.12e}")
    print(f"bound_hi={res.bound_hi:.12e}")
    print(f"n_terms_used={res.n_terms_used}")
    print(f"est_error={res.est_error:.12e}")
    if args.omega_rad_s:
        print(f"F_SI_Pa={_si_pressure(res.pressure_norm, args.distance, args.omega_rad_s):.12e}")
    return 0


def _sweep_rows(scn: Scenario, tau: float, cfg: QuadratureConfig, workers: int, omega):
    distances = scn.sweep.distances()
    c3 = _c3_or_none(scn)

    def one(d: float):
        res = _force_at(scn, float(d), tau, cfg)
        return res

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(one, distances))

    rows = []
    for d, res in zip(distances, results):
        # independent re-check: the analytic envelopes must contain the result
        lo, hi = bound_envelope(float(d), tau)
        slack = res.est_error + 1e-12 * max(1.0, abs(res.pressure_norm))
        if not (lo - slack <= res.pressure_norm <= hi + slack):
            raise ConvergenceError(
                f"bound check failed at d={d}: {res.pressure_norm} not in [{lo}, {hi}]"
            )
        row = [
            f"{d:.12e}",
            f"{d / (2.0 * math.pi):.12e}",
            f"{res.pressure_norm:.12e}",
            f"{res.te_part:.12e}",
            f"{res.tm_part:.12e}",
            f"{res.bound_lo:.12e}",
            f"{res.bound_hi:.12e}",
            f"{c3:.12e}" if c3 is not None else "",
            f"{res.est_error:.12e}",
        ]
        if omega:
            row.append(f"{_si_pressure(res.pressure_norm, float(d), omega):.12e}")
        rows.append(",".join(row))
    header = ",".join(CSV_COLUMNS + (("F_SI_Pa",) if omega else ()))
    return header + "\n" + "\n".join(rows) + "\n"


def _suffixed(path: Path, tau: float) -> Path:
    return path.with_name(f"{path.stem}_tau{tau:g}{path.suffix}")


def cmd_sweep(args) -> int:
    scn = _load(args.scenario)
    cfg = _config(args)
    taus = scn.temperatures if scn.temperatures is not None else (scn.temperature,)
    for tau in taus:
        text = _sweep_rows(scn, tau, cfg, args.workers, args.omega_rad_s)
        out = _suffixed(args.output, tau) if len(taus) > 1 else args.output
        out.write_text(text)
        if not args.quiet:
            print(f"wrote {out}")
    return 0


def cmd_asympt(args) -> int:
    scn = _load(args.scenario)
    tau = scn.temperature if args.tau is None else args.tau
    homogeneous = not scn.mirror1.layers and not scn.mirror2.layers
    report = build_report(
        args.distance,
        tau,
        mirror1=scn.mirror1.substrate if homogeneous else None,
        mirror2=scn.mirror2.substrate if homogeneous else None,
        gap=scn.gap,
    )
    if report.c3_norm is not None:
        print(f"c3_norm={report.c3_norm:.12e}")
    elif not homogeneous:
        print("c3_norm=unavailable (layered mirrors)")
    else:
        print("c3_norm=unavailable (nonretarded limit diverges)")
    if report.c1_norm is not None:
        print(f"c1_norm={report.c1_norm:.12e}")
    print(f"f_casimir={report.f_casimir:.12e}")
    print(f"f_thermal={report.f_thermal:.12e}")
    print(f"lambda_T={report.lambda_T:.12e}")
    print(f"regime={report.regime.value}")
    return 0


def cmd_preset(args) -> int:
    args.output.write_text(serialize(preset_scenario(args.name)))
    print(f"wrote {args.output}")
    return 0


_DISPATCH = {
    "force": cmd_force,
    "sweep": cmd_sweep,
    "asympt": cmd_asympt,
    "preset": cmd_preset,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return _DISPATCH[args.command](args)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, UnsupportedConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
