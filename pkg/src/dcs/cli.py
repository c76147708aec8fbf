"""``dcs`` command line: batch operations over mesh and structure files.

Exit codes: 0 success, 1 validation failure, 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis, gauge, io, solver
from .curvature import gauss_bonnet_residual, total_area, vertex_curvatures
from .errors import (
    CompatibilityViolated,
    DCSError,
    FaceNotEmbeddable,
    InvalidStructure,
)
from .geometry import Geometry
from .structures import (
    REALIZE_TOL,
    Family,
    conformality_residuals,
    face_residuals,
    realize,
    validate_structure,
)

COMMANDS = ("check", "realize", "classify", "normalize-alpha", "fix-gauge", "convert", "reduce", "curvature", "solve")


class ValidationFailure(Exception):
    def __init__(self, reason, violations=(), residuals=None):
        super().__init__(reason)
        self.reason = reason
        self.violations = list(violations)
        self.residuals = residuals or {}


def _violation_from_error(exc: DCSError) -> list[dict]:
    if isinstance(exc, CompatibilityViolated):
        return [{"kind": exc.reason, "where": list(fc), "detail": "compatibility"} for fc in exc.faces]
    if isinstance(exc, FaceNotEmbeddable):
        return [{"kind": "not-embeddable", "where": list(fc), "detail": ""} for fc in exc.faces]
    return [{"kind": type(exc).__name__, "where": [], "detail": str(exc)}]


def _realize_or_fail(surface, data, tol=REALIZE_TOL):
    try:
        return realize(surface, data, tol)
    except DCSError as exc:
        raise ValidationFailure(type(exc).__name__, _violation_from_error(exc)) from exc


def cmd_check(args, surface, data):
    problems = [v for v in validate_structure(surface, data)]
    if problems:
        raise ValidationFailure(
            "structure invariants violated", [v.to_json() for v in problems]
        )
    tol = args.tolerance if args.tolerance is not None else REALIZE_TOL
    metric = _realize_or_fail(surface, data, tol)
    conf = conformality_residuals(surface, data)
    residuals = {
        "max_compatibility": max(face_residuals(surface, metric)),
        "max_partial_length_gap": metric.max_partial_gap(),
        "max_conformality": max(max(r[0], r[1]) for _, _, r in conf),
        "max_dd_dfk": max(r[2] for _, _, r in conf),
        "gauss_bonnet": gauss_bonnet_residual(surface, data.geometry, metric),
    }
    return residuals, None


def cmd_realize(args, surface, data):
    metric = _realize_or_fail(surface, data)
    return {"max_compatibility": max(face_residuals(surface, metric))}, io.metric_to_json(metric)


def cmd_classify(args, surface, data):
    if data.geometry is Geometry.EUCLIDEAN:
        raise ValidationFailure("WrongGeometry", [{"kind": "WrongGeometry", "where": [], "detail": "euclidean"}])
    r = args.radius
    edges, violations = {}, []
    for i, j in surface.edges:
        box = ((data.f[i] - r, data.f[i] + r), (data.f[j] - r, data.f[j] + r))
        try:
            res = analysis.classify_edge(analysis.edge_provider(data, i, j), data.geometry, box)
        except DCSError as exc:
            violations.append({"kind": type(exc).__name__, "where": [i, j], "detail": str(exc)})
            continue
        edges[io.edge_str((i, j))] = res.to_json()
    if violations:
        raise ValidationFailure("edges not classifiable", violations)
    fit = max(e["fit_residual"] for e in edges.values())
    return {"max_fit_residual": fit}, {"edges": edges}


def _length_change(surface, before, after):
    m0, m1 = realize(surface, before), realize(surface, after)
    return max(abs(m0.l[e] - m1.l[e]) for e in surface.edges)


def cmd_normalize_alpha(args, surface, data):
    try:
        out = gauge.normalize_alpha(data)
        change = _length_change(surface, data, out)
    except DCSError as exc:
        raise ValidationFailure(type(exc).__name__, _violation_from_error(exc)) from exc
    return {"max_length_change": change}, io.structure_to_json(out)


def cmd_fix_gauge(args, surface, data):
    try:
        out = gauge.fix_gauge(surface, data)
        change = _length_change(surface, data, out)
    except DCSError as exc:
        raise ValidationFailure(type(exc).__name__, _violation_from_error(exc)) from exc
    return {"max_length_change": change}, io.structure_to_json(out)


def cmd_convert(args, surface, data):
    try:
        z = gauge.convert_to_zgzlyg(data)
        before = realize(surface, data)
        after = gauge.zgzlyg_lengths(surface, z)
    except DCSError as exc:
        raise ValidationFailure(type(exc).__name__, _violation_from_error(exc)) from exc
    gap = max(abs(before.l[e] - after[e]) for e in surface.edges)
    return {"max_length_gap": gap}, io.zgzlyg_to_json(z)


def cmd_reduce(args, surface, data):
    edges, violations = {}, []
    for i, j in surface.edges:
        if data.family_of(i, j) is not Family.C3:
            continue
        try:
            a, b = data.alpha_at(i), data.alpha_at(j)
            red = gauge.reduce_c3_guo_luo(
                a, b, data.eta[(i, j)], gauge.c3_radius(int(a), data.f[i]), gauge.c3_radius(int(b), data.f[j])
            )
        except (DCSError, ValueError) as exc:
            violations.append({"kind": type(exc).__name__, "where": [i, j], "detail": str(exc)})
            continue
        edges[io.edge_str((i, j))] = {
            "type": red.type_label,
            "swapped": red.swapped,
            "cos_structure": red.cos_structure,
            "cos_reduced": red.cos_reduced,
            "residual": red.residual,
        }
    if violations:
        raise ValidationFailure("edges not reducible", violations)
    if not edges:
        raise ValidationFailure("no c3 edges", [{"kind": "WrongFamily", "where": [], "detail": "no c3 edges"}])
    return {"max_residual": max(e["residual"] for e in edges.values())}, {"edges": edges}


def cmd_curvature(args, surface, data):
    metric = _realize_or_fail(surface, data)
    K = vertex_curvatures(surface, metric)
    out = {"K": list(K)}
    if data.geometry.curvature:
        out["area"] = total_area(surface, metric)
    return {"gauss_bonnet": gauss_bonnet_residual(surface, data.geometry, metric)}, out


def cmd_solve(args, surface, data):
    if args.target is None:
        raise io.SchemaError("solve needs --target")
    target = io.load_target(args.target, surface.n_vertices)
    cfg = solver.SolverConfig(tolerance=args.tolerance) if args.tolerance is not None else solver.SolverConfig()
    try:
        result = solver.solve_prescribed_curvature(surface, data, target, cfg)
    except DCSError as exc:
        raise ValidationFailure(type(exc).__name__, _violation_from_error(exc)) from exc
    return (
        {"max_curvature_error": result.residual, "iterations": result.iterations},
        io.structure_to_json(data.with_f(result.f)),
    )


HANDLERS = {
    "check": cmd_check,
    "realize": cmd_realize,
    "classify": cmd_classify,
    "normalize-alpha": cmd_normalize_alpha,
    "fix-gauge": cmd_fix_gauge,
    "convert": cmd_convert,
    "reduce": cmd_reduce,
    "curvature": cmd_curvature,
    "solve": cmd_solve,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dcs", description="Discrete conformal structures on closed triangulated surfaces.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--mesh", required=True)
    p.add_argument("--structure", required=True)
    p.add_argument("--target")
    p.add_argument("--out")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--report")
    p.add_argument("--radius", type=float, default=0.05, help="half-width of the classification probe box")
    return p


def run(argv=None) -> tuple[int, dict]:
    """Execute one command; returns ``(exit code, report)``."""
    return _run(build_parser().parse_args(argv))


def _run(args) -> tuple[int, dict]:
    report = {"command": args.command, "status": "ok", "residuals": {}, "violations": []}
    code = 0
    try:
        surface = io.load_mesh(args.mesh)
        data = io.load_structure(args.structure, surface)
        residuals, output = HANDLERS[args.command](args, surface, data)
        report["residuals"] = residuals
        if output is not None:
            report["output"] = output
            if args.out:
                io.write_json(args.out, output)
    except io.SchemaError as exc:
        code = 2
        report["status"] = "error"
        report["violations"] = [{"kind": "SchemaError", "where": [], "detail": str(exc)}]
    except ValidationFailure as exc:
        code = 1
        report["status"] = "failed"
        report["reason"] = exc.reason
        report["violations"] = exc.violations
    except (DCSError, InvalidStructure) as exc:
        code = 1
        report["status"] = "failed"
        report["reason"] = type(exc).__name__
        report["violations"] = _violation_from_error(exc)
    return code, report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report = _run(args)
    text = io.dumps(report)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
