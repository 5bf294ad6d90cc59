"""Command-line front end.

Every command prints one JSON document (or a CSV table with ``--format csv``)
to stdout.  Exit codes: 0 on success, 1 on usage errors, 2 on domain errors
(the error class name is reported verbatim) or a failed ``verify``.
The ``CRLAB_TOL`` environment variable overrides the event-location
tolerance used by ``phase``, ``metric`` and ``verify``.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional

from . import orbifold_metric as om
from . import phase_plane as pp
from . import reeb_flow as rf
from . import report
from . import sl2_model as sl
from . import verify
from .errors import CRLabError

DEFAULT_METRIC_TOL = 1e-10
DEFAULT_PHASE_TOL = 1e-12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    parameters: Dict[str, object]
    output_format: str = "json"
    svg_path: Optional[str] = None
    seed: int = 0
    tol: Optional[float] = None


def _tol_from_env() -> Optional[float]:
    raw = os.environ.get("CRLAB_TOL")
    if raw is None or raw == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"CRLAB_TOL: invalid float value {raw!r}")
    if not tol > 0:
        raise UsageError("CRLAB_TOL: must be positive")
    return tol


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--svg", default=None, help="write an SVG figure to this path")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="crlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("classify", parents=[common], help="regularity of a weighted Reeb flow")
    c.add_argument("--p", type=int)
    c.add_argument("--q", type=int)
    c.add_argument("--scale", type=float, default=1.0)
    c.add_argument("--irrational", type=float, help="declare an irrational speed ratio")
    c.add_argument("--certificate", default="declared")
    c.add_argument("--n", type=int, default=10000, help="orbit samples for the torus gap")

    p = sub.add_parser("phase", parents=[common], help="phase-plane orbit of k'' = -k^2/2 + c")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--F0", type=float, required=True)
    p.add_argument("--steps", type=int, default=2000, help="RK4 steps per half period")

    m = sub.add_parser("metric", parents=[common], help="cone metric from (q1, q2, l)")
    m.add_argument("--q1", type=float, required=True)
    m.add_argument("--q2", type=float, required=True)
    m.add_argument("--l", type=float, default=1.0)
    m.add_argument("--grid", type=int, default=2048)
    m.add_argument("--verify", action="store_true")
    m.add_argument("--real-cones", action="store_true", help="allow non-integer cone orders")

    s = sub.add_parser("sl2", parents=[common], help="orbit-space curvature of J_qJ")
    s.add_argument("--qJ", type=float, default=1.0)
    s.add_argument("--radius", type=float, default=100.0)
    s.add_argument("--n", type=int, default=201)

    sub.add_parser("verify", parents=[common], help="run the consistency battery")
    return parser


def parse_config(argv: List[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "svg", "seed")}
    if args.svg is not None and args.command not in FIGURES:
        raise UsageError(f"--svg: no figure is drawn for {args.command!r}")
    return RunConfig(args.command, params, args.format, args.svg, args.seed, _tol_from_env())


# -- commands -----------------------------------------------------------------

def _classify(cfg: RunConfig):
    prm = cfg.parameters
    if prm["irrational"] is not None:
        if prm["p"] is not None or prm["q"] is not None:
            raise UsageError("--irrational cannot be combined with --p/--q")
        w = rf.IrrationalRatio(prm["irrational"], prm["certificate"])
        a, b = 1.0, w.value
        inputs = {"irrational": w.value, "certificate": w.certificate}
    else:
        if prm["p"] is None or prm["q"] is None:
            raise UsageError("--p and --q are required (or --irrational)")
        if prm["p"] <= 0 or prm["q"] <= 0 or not prm["scale"] > 0:
            raise UsageError("--p, --q and --scale must be positive")
        w = rf.RationalPair(prm["p"], prm["q"], prm["scale"])
        a, b = rf.reeb_speeds(w)
        inputs = {"p": prm["p"], "q": prm["q"], "scale": prm["scale"]}
    if prm["n"] < 1:
        raise UsageError("--n must be >= 1")
    rep = rf.classify_weights(w)
    gap = rf.torus_gap(a, b, prm["n"])
    outputs = {"class": rep.cls.value,
               "lengths": list(rep.lengths) if rep.lengths else None,
               "wrapping": list(rep.wrapping) if rep.wrapping else None,
               "speeds": [a, b],
               "torus_gap": gap, "torus_samples": prm["n"]}
    residuals = {}
    if rep.lengths:
        back = rf.wrapping_from_lengths(*rep.lengths)
        residuals["wrapping_roundtrip"] = abs(back[0] - rep.wrapping[0]) + abs(back[1] - rep.wrapping[1])
    inputs["n"] = prm["n"]
    csv = None
    if cfg.output_format == "csv":
        lengths = rep.lengths or (math.nan,) * 3
        wrap = rep.wrapping or (math.nan, math.nan)
        csv = ("class," + ",".join(("len_x0", "len_y0", "len_generic", "p", "q", "torus_gap")) + "\n"
               + rep.cls.value + "," + ",".join(report.format_float(float(v))
                                                for v in (*lengths, *wrap, gap)) + "\n")
    return inputs, outputs, residuals, csv, None


def _phase(cfg: RunConfig):
    prm = cfg.parameters
    params = pp.PhaseParams(prm["c"])
    F0 = prm["F0"]
    if prm["steps"] < 1:
        raise UsageError("--steps must be >= 1")
    tol = cfg.tol or DEFAULT_PHASE_TOL
    level = pp.classify_level(params, F0)
    wp, wq = pp.weierstrass_reduce(params, F0)
    outputs = {"s": params.s,
               "fixed_points": [[f.x, f.y] for f in pp.fixed_points(params)],
               "level_class": level.cls.value, "roots": list(level.roots),
               "weierstrass": [wp, wq]}
    residuals = {}
    orbit = None
    if level.cls is pp.LevelClass.CIRCLE_AND_LINE:
        s1, s2 = pp.crossings(params, F0)
        tau = pp.period_quadrature(params, F0)
        orbit = pp.integrate_orbit(params, pp.PhaseState(s1, 0.0), 2.25 * tau,
                                   tau / prm["steps"], tol)
        outputs.update({"crossings": [s1, s2], "half_period_quadrature": tau,
                        "half_period_rk4": orbit.half_period, "t_end": float(orbit.t[-1]),
                        "n_samples": len(orbit.t)})
        s = params.s
        z = -orbit.x / 3.0
        zp = -orbit.y / 3.0
        residuals = {
            "F_drift": orbit.F_drift,
            "period_relative": (abs(orbit.half_period - tau) / tau
                                if orbit.half_period is not None else None),
            "s12_identity": abs(s1 * s1 + s1 * s2 + s2 * s2 - 3 * s * s),
            "weierstrass_max": float(abs(zp ** 2 - z ** 3 - wp * z - wq).max()),
        }
    csv = None
    if cfg.output_format == "csv":
        csv = report.orbit_csv(orbit) if orbit is not None else ",".join(report.PHASE_COLUMNS) + "\n"
    svg = report.emit_svg("phase_portrait", {"params": params, "orbit": orbit}) if cfg.svg_path else None
    return {"c": prm["c"], "F0": F0, "steps": prm["steps"], "event_tol": tol}, outputs, residuals, csv, svg


def _metric(cfg: RunConfig):
    prm = cfg.parameters
    if prm["grid"] < 4:
        raise UsageError("--grid must be >= 4")
    q1, q2 = prm["q1"], prm["q2"]
    if not prm["real_cones"]:
        if q1 != int(q1) or q2 != int(q2):
            raise UsageError("--q1/--q2 must be integers (use --real-cones otherwise)")
        q1, q2 = int(q1), int(q2)
    try:
        cone = om.ConeData(q1, q2, prm["l"], allow_real_cones=prm["real_cones"])
    except ValueError as exc:
        raise UsageError(f"--q1/--q2/--l: {exc}")
    tol = cfg.tol or DEFAULT_METRIC_TOL
    prof = om.construct_profile(cone, prm["grid"], tol)
    outputs = {"s": prof.s, "s1": prof.s1, "s2": prof.s2, "tau": prof.tau,
               "r_prime_poles": list(prof.r_prime_poles),
               "cone_angles": list(om.cone_angles(prof))}
    residuals = {}
    if prm["verify"]:
        rep = om.construction_report(prof)
        outputs.update({"gauss_bonnet": rep.gauss_bonnet, "area": rep.area})
        gb_target = 1.0 / cone.q1 + 1.0 / cone.q2
        area_target = 2 * math.pi * (prof.s2 - prof.s1) / cone.l
        residuals = {
            "cone_angle_relative": max(abs(rep.cone_angles[0] * cone.q1 / (2 * math.pi) - 1),
                                       abs(rep.cone_angles[1] * cone.q2 / (2 * math.pi) - 1)),
            "gauss_bonnet": abs(rep.gauss_bonnet - gb_target),
            "area": abs(rep.area - area_target),
            "curvature": rep.curvature_residual,
            "killing": rep.killing_residual,
            "s12_identity": abs(prof.s1 ** 2 + prof.s1 * prof.s2 + prof.s2 ** 2 - 3 * prof.s ** 2),
            "uniqueness": om.uniqueness_cross_check(cone),
            "tau_vs_quadrature": om.period_cross_check(prof),
        }
    csv = report.profile_csv(prof) if cfg.output_format == "csv" else None
    svg = report.emit_svg("profile", {"profile": prof}) if cfg.svg_path else None
    inputs = {"q1": cone.q1, "q2": cone.q2, "l": cone.l, "grid": prm["grid"],
              "verify": prm["verify"], "event_tol": tol}
    return inputs, outputs, residuals, csv, svg


def _sl2(cfg: RunConfig):
    prm = cfg.parameters
    if not prm["qJ"] > 0 or not prm["radius"] > 0 or prm["n"] < 1:
        raise UsageError("--qJ and --radius must be positive, --n >= 1")
    d = sl.DeformParam(prm["qJ"])
    sup, arg = sl.boundedness_probe(d, prm["radius"], prm["n"])
    probes = [sl.BasePoint(0.0, 0.0), sl.BasePoint(1.0, 0.0), sl.BasePoint(0.0, 1.0),
              sl.BasePoint(0.5, -0.7)]
    curv = [sl.base_curvature(d, z) for z in probes]
    oracle = [sl.curvature_fd_oracle(d, z) for z in probes]
    outputs = {"sup_abs_K": sup, "argmax": [arg.u, arg.v],
               "probe_points": [[z.u, z.v] for z in probes],
               "K_closed_form": curv, "K_oracle": oracle}
    residuals = {"oracle_relative": max(abs(a - b) / max(1.0, abs(a)) for a, b in zip(curv, oracle))}
    csv = report.scan_csv(prm["qJ"], prm["radius"], prm["n"]) if cfg.output_format == "csv" else None
    svg = (report.emit_svg("curvature_scan", {"qJ": prm["qJ"], "R": prm["radius"], "n": prm["n"]})
           if cfg.svg_path else None)
    return {"qJ": prm["qJ"], "radius": prm["radius"], "n": prm["n"]}, outputs, residuals, csv, svg


def _verify(cfg: RunConfig):
    tol = cfg.tol or DEFAULT_METRIC_TOL
    checks = verify.run_suite(cfg.seed, tol)
    outputs = {c.name: {"value": c.value, "tolerance": c.tolerance, "passed": c.passed} for c in checks}
    residuals = {c.name: c.value for c in checks}
    csv = None
    if cfg.output_format == "csv":
        csv = "name,value,tolerance,passed\n" + "".join(
            f"{c.name},{report.format_float(c.value)},{report.format_float(c.tolerance)},{int(c.passed)}\n"
            for c in checks)
    status = "pass" if all(c.passed for c in checks) else "fail"
    return {"seed": cfg.seed, "event_tol": tol}, outputs, residuals, csv, None, status


FIGURES = ("phase", "metric", "sl2")
COMMANDS = {"classify": _classify, "phase": _phase, "metric": _metric, "sl2": _sl2, "verify": _verify}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    result = COMMANDS[cfg.command](cfg)
    status = "ok"
    if len(result) == 6:
        *result, status = result
    inputs, outputs, residuals, csv, svg = result
    if svg is not None:
        with open(cfg.svg_path, "wb") as fh:
            fh.write(svg)
    if cfg.output_format == "csv":
        stdout.write(csv)
    else:
        stdout.write(report.make_report(cfg.command, inputs, outputs, residuals, status))
    return 0 if status in ("ok", "pass") else 2


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return run(cfg, stdout)
    except UsageError as exc:
        stderr.write(f"crlab: usage error: {exc}\n")
        return 1
    except CRLabError as exc:
        name = type(exc).__name__
        stdout.write(report.dumps({"command": argv[0] if argv else None, "status": "error",
                                   "error": name, "message": str(exc)}) + "\n")
        stderr.write(f"crlab: {name}: {exc}\n")
        return 2
    except ValueError as exc:
        stderr.write(f"crlab: usage error: {exc}\n")
        return 1
