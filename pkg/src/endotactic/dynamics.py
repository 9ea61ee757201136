"""Floating-point side: field evaluation, trajectories, fixed points,
steady-curve sampling and phase-portrait grids."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .algebra import Polynomial, PolyVector

BOUNDARY_GUARD = 1e-12
BLOWUP_GUARD = 1e12
ROOT_TOL = 1e-12
STEADY_TOL = 1e-9
FIXED_POINT_TOL = 1e-10


class NoConvergence(RuntimeError):
    pass


class SingularJacobian(NoConvergence):
    pass


class StepSizeUnderflow(RuntimeError):
    pass


class CompiledField:
    """A PolyVector lowered to numpy arrays for fast double-precision evaluation."""

    def __init__(self, f: PolyVector | Polynomial):
        if isinstance(f, Polynomial):
            f = PolyVector([f])
        self.field = f
        self.n = f.nvars
        exps = f.support()
        self.exponents = np.array(exps, dtype=float).reshape(len(exps), self.n)
        self.coeffs = np.array([[float(p.coefficient(e)) for e in exps] for p in f]).reshape(len(f), len(exps))
        self._jac = None

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            mono = np.prod(x[None, :] ** self.exponents, axis=1)
            return self.coeffs @ mono
        # batch: rows are points
        mono = np.prod(x[:, None, :] ** self.exponents[None, :, :], axis=2)
        return mono @ self.coeffs.T

    def jacobian(self, x) -> np.ndarray:
        """Exact polynomial Jacobian evaluated in floating point."""
        if self._jac is None:
            self._jac = [[CompiledField(p.derivative(j)) for j in range(self.n)] for p in self.field]
        return np.array([[d(x)[0] for d in row] for row in self._jac])


def _compiled(f) -> CompiledField:
    return f if isinstance(f, CompiledField) else CompiledField(f)


def eval_field(f, x) -> np.ndarray:
    return _compiled(f)(x)


def finite_difference_jacobian(f, x, h: float = 1e-6) -> np.ndarray:
    """Central differences with a step relative to each coordinate."""
    F = _compiled(f)
    x = np.asarray(x, dtype=float)
    J = np.empty((len(F.field), len(x)))
    for j in range(len(x)):
        step = h * max(1.0, abs(x[j]))
        e = np.zeros_like(x)
        e[j] = step
        J[:, j] = (F(x + e) - F(x - e)) / (2 * step)
    return J


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    step_sizes: np.ndarray
    halted: str | None = None  # "boundary" or "blowup" when a guard fired

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def to_csv(self, names: Sequence[str] | None = None) -> str:
        n = self.states.shape[1]
        names = list(names) if names else [f"x{i + 1}" for i in range(n)]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", *names])
        for t, row in zip(self.times, self.states):
            w.writerow([repr(float(t)), *(repr(float(v)) for v in row)])
        return buf.getvalue()


def integrate(f, x0, t_end: float, tol: float = 1e-8, max_step: float = np.inf) -> Trajectory:
    """Dormand-Prince RK45 with ``rtol = atol = tol``.

    Stops early, with ``halted`` set, when a coordinate drops to the boundary
    guard or exceeds the blow-up guard.
    """
    F = _compiled(f)
    x0 = np.asarray(x0, dtype=float)
    if np.any(x0 <= 0):
        raise ValueError("initial state must be strictly positive")
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    def rhs(_t, x):
        return F(x)

    def hit_boundary(_t, x):
        return np.min(x) - BOUNDARY_GUARD

    def hit_blowup(_t, x):
        return BLOWUP_GUARD - np.max(x)

    hit_boundary.terminal = True
    hit_blowup.terminal = True
    sol = solve_ivp(
        rhs, (0.0, float(t_end)), x0, method="RK45", rtol=tol, atol=tol,
        events=(hit_boundary, hit_blowup), max_step=max_step,
    )
    if sol.status == -1:
        raise StepSizeUnderflow(sol.message)
    halted = None
    if sol.status == 1:
        halted = "boundary" if len(sol.t_events[0]) else "blowup"
    times = sol.t
    return Trajectory(times, sol.y.T.copy(), np.diff(times), halted)


def newton_fixed_point(f, x0, tol: float = FIXED_POINT_TOL, max_iter: int = 100) -> tuple[np.ndarray, int]:
    """Damped Newton iteration on ``f(x) = 0``.

    Returns ``(point, iterations)``.  Uses the exact polynomial Jacobian;
    the step is halved until the residual's max-norm decreases.
    """
    F = _compiled(f)
    x = np.asarray(x0, dtype=float).copy()
    r = F(x)
    for it in range(max_iter + 1):
        res = np.max(np.abs(r))
        if res <= tol:
            return x, it
        if it == max_iter:
            break
        J = F.jacobian(x)
        try:
            if abs(np.linalg.det(J)) < 1e-300 or np.linalg.cond(J) > 1e14:
                raise np.linalg.LinAlgError("ill-conditioned")
            step = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(f"singular Jacobian at {x}") from exc
        lam = 1.0
        while lam > 1e-10:
            trial = x + lam * step
            rt = F(trial)
            if np.max(np.abs(rt)) < res:
                break
            lam /= 2
        else:
            # no decrease found; take the full step and let the cap catch divergence
            trial = x + step
            rt = F(trial)
        x, r = trial, rt
    raise NoConvergence(f"no convergence after {max_iter} iterations, residual {np.max(np.abs(r)):.3e}")


@dataclass
class SteadyCurveSample:
    points: np.ndarray
    residuals: np.ndarray
    scalar_values: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __len__(self):
        return len(self.points)


def _polish(h: CompiledField, line, a, b):
    """Root of ``t -> h(line(t))`` bracketed in [a, b], polished to ROOT_TOL."""
    g = lambda t: h(line(t))[0]  # noqa: E731
    t = brentq(g, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    dh = h.jacobian(line(t))[0]
    for _ in range(5):
        val = g(t)
        if abs(val) <= ROOT_TOL:
            break
        p = line(t)
        direction = line(t + 1.0) - p
        slope = float(dh @ direction)
        if slope == 0:
            break
        t -= val / slope
    return t, abs(g(t))


def sample_steady_curve(
    h: Polynomial,
    box: Sequence[tuple[float, float]],
    count: int,
    field: PolyVector | None = None,
    extra_lines: Sequence[Sequence[float]] = (),
    resolution: int = 400,
) -> SteadyCurveSample:
    """Zeros of ``h`` inside ``box`` found along axis-parallel scan lines.

    Lines run along the last coordinate; their positions in the remaining
    coordinates form an even grid of about ``count`` lines (plus any
    ``extra_lines``).  Sign changes on a fine sampling of each line are
    refined by Brent's method and a Newton polish; points whose ``|h|``
    stays above 1e-12 or that touch the boundary are dropped.  Residuals
    are the max-norm of ``field`` at each point when a field is given,
    otherwise ``|h|``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    box = [(float(a), float(b)) for a, b in box]
    n = len(box)
    if n != h.nvars:
        raise ValueError("box dimension does not match the polynomial")
    if any(a <= 0 or b <= a for a, b in box):
        raise ValueError("box must lie in the positive orthant")
    H = CompiledField(h)
    lo, hi = box[-1]
    if n == 1:
        positions = [()]
    else:
        per_axis = max(1, int(round(count ** (1.0 / (n - 1)))))
        while per_axis ** (n - 1) < count:
            per_axis += 1
        axes = [np.linspace(a, b, per_axis + 2)[1:-1] for a, b in box[:-1]]
        positions = [tuple(p) for p in itertools.product(*axes)]
    positions += [tuple(float(v) for v in p) for p in extra_lines]

    pts, hvals = [], []
    ts = np.linspace(lo, hi, resolution)
    for pos in positions:
        base = np.array(list(pos) + [0.0])

        def line(t, base=base):
            q = base.copy()
            q[-1] = t
            return q

        grid = np.tile(base, (resolution, 1))
        grid[:, -1] = ts
        vals = H(grid)[:, 0]
        for k in range(resolution - 1):
            if vals[k] == 0:
                cand, hv = ts[k], 0.0
            elif vals[k] * vals[k + 1] < 0:
                cand, hv = _polish(H, line, ts[k], ts[k + 1])
            else:
                continue
            p = line(cand)
            if hv <= ROOT_TOL and np.all(p > 0):
                pts.append(p)
                hvals.append(hv)
    points = np.array(pts).reshape(len(pts), n)
    hvals = np.array(hvals)
    if field is not None and len(points):
        residuals = np.max(np.abs(CompiledField(field)(points)), axis=1)
    else:
        residuals = hvals.copy()
    return SteadyCurveSample(points, residuals, hvals)


@dataclass
class PortraitGrid:
    points: np.ndarray  # (N, n)
    directions: np.ndarray  # unit vectors, zero where the field vanishes
    magnitudes: np.ndarray
    signs: np.ndarray  # sign of each field component

    def to_csv(self) -> str:
        n = self.points.shape[1]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(n)] + [f"u{i + 1}" for i in range(n)] + ["mag"])
        for p, d, m in zip(self.points, self.directions, self.magnitudes):
            w.writerow([repr(float(v)) for v in (*p, *d, m)])
        return buf.getvalue()


def phase_portrait_grid(f, box: Sequence[tuple[float, float]], resolution: int) -> PortraitGrid:
    """Field sampled on a ``resolution``-per-axis grid whose corners are the box corners."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    F = _compiled(f)
    axes = [np.linspace(float(a), float(b), resolution) for a, b in box]
    mesh = np.array(list(itertools.product(*axes)))
    vals = F(mesh)
    mag = np.linalg.norm(vals, axis=1)
    safe = np.where(mag > 0, mag, 1.0)
    dirs = np.where(mag[:, None] > 0, vals / safe[:, None], 0.0)
    return PortraitGrid(mesh, dirs, mag, np.sign(vals).astype(int))
