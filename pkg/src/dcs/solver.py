"""Damped Newton iteration for prescribed vertex curvature.

The unknowns are the conformal factors ``f``; everything else in the
structure stays fixed. The Jacobian ``dK/df`` is built column by column
with central differences, so one code path serves every family.

In the plane a uniform shift of ``f`` scales all lengths and leaves the
angles alone, so ``dK/df`` is singular along ``(1, ..., 1)``. There the
iteration works with mean-zero factors: the start is centred and every
update is projected onto the mean-zero subspace, which makes the result
independent of the starting shift.

Spherical solves work but are experimental: the region of ``f`` where all
faces stay embeddable is usually small.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .curvature import vertex_curvatures
from .errors import DCSError, InfeasibleTarget, MaxIterations, StepDegenerate
from .geometry import Geometry
from .structures import ConformalData, realize
from .surface import TriangulatedSurface, euler_characteristic

log = logging.getLogger(__name__)

GB_TOL = 1e-9


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 50
    tolerance: float = 1e-10
    min_damping: float = 2.0 ** -20
    fd_step: float = 1e-6

    def __post_init__(self):
        if self.max_iterations < 1 or self.tolerance <= 0 or self.fd_step <= 0:
            raise ValueError("solver settings must be positive")
        if not 0 < self.min_damping < 1:
            raise ValueError("min_damping must lie in (0, 1)")


@dataclass
class SolveResult:
    f: np.ndarray
    iterations: int
    residual: float
    history: list = field(default_factory=list)


def _curvature(surface, data, f):
    """Curvature at ``f``, or None where some face degenerates."""
    try:
        metric = realize(surface, data.with_f(f))
        return vertex_curvatures(surface, metric)
    except DCSError:
        return None


def solve_prescribed_curvature(
    surface: TriangulatedSurface,
    data: ConformalData,
    target,
    config: SolverConfig | None = None,
) -> SolveResult:
    """Find ``f`` with ``K(f) = target``, starting from ``data.f``.

    Raises
    ------
    InfeasibleTarget
        Euclidean target whose sum is not ``2 pi chi``.
    StepDegenerate
        The start is invalid, or no damping level keeps every face embeddable.
    MaxIterations
        Not converged within ``config.max_iterations``.
    """
    cfg = config or SolverConfig()
    target = np.asarray(target, dtype=float)
    n = surface.n_vertices
    if target.shape != (n,):
        raise ValueError(f"target has shape {target.shape}, expected ({n},)")
    planar = data.geometry is Geometry.EUCLIDEAN
    if planar and abs(math.fsum(target) - 2 * math.pi * euler_characteristic(surface)) > GB_TOL:
        raise InfeasibleTarget(
            f"sum of target curvatures {math.fsum(target)!r} != 2 pi chi = {2 * math.pi * euler_characteristic(surface)!r}"
        )

    f = data.f.astype(float).copy()
    if planar:
        f -= f.mean()
    K = _curvature(surface, data, f)
    if K is None:
        raise StepDegenerate("starting factors do not give a valid metric")
    history = []
    for it in range(cfg.max_iterations + 1):
        r = K - target
        err = float(np.max(np.abs(r)))
        history.append(err)
        log.debug("iteration %d: max |K - target| = %.3e", it, err)
        if err < cfg.tolerance:
            return SolveResult(f, it, err, history)
        if it == cfg.max_iterations:
            break
        J = _jacobian(surface, data, f, K, cfg.fd_step)
        if planar:
            step = np.linalg.lstsq(J, -r, rcond=None)[0]
            step -= step.mean()
        else:
            try:
                step = np.linalg.solve(J, -r)
            except np.linalg.LinAlgError:
                step = np.linalg.lstsq(J, -r, rcond=None)[0]
        t = 1.0
        while True:
            trial = f + t * step
            K_trial = _curvature(surface, data, trial)
            if K_trial is not None:
                break
            t /= 2
            if t < cfg.min_damping:
                raise StepDegenerate(f"iteration {it}: no damped step keeps all faces embeddable")
        f, K = trial, K_trial
    raise MaxIterations(f"max |K - target| = {history[-1]:.3e} after {cfg.max_iterations} iterations")


def _jacobian(surface, data, f, K, h):
    n = f.shape[0]
    J = np.empty((n, n))
    for v in range(n):
        fp, fm = f.copy(), f.copy()
        fp[v] += h
        fm[v] -= h
        Kp, Km = _curvature(surface, data, fp), _curvature(surface, data, fm)
        if Kp is None or Km is None:
            raise StepDegenerate(f"finite-difference probe at vertex {v} leaves the valid region")
        J[:, v] = (Kp - Km) / (2 * h)
    return J
