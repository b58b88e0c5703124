"""
Hénon family F(x, y) = (a - x² - b·y, x).

At b = 0 the x-coordinate follows the quadratic map, so a superattracting
parameter a± of f_a gives a period-p orbit through (a±, 0) whose p-step
derivative has zero trace. `continue_isotracal` follows that solution of

    F^p(x, y) = (x, y),    tr DF^p(x, y) = 0

in the unknowns (a, x, y) as b increases, for the two members of a pair in
lockstep, until their a-values meet. `scatter` classifies a parameter grid by
the period of the attractor reached from the origin.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import mpmath
import numpy as np

ESCAPE_RADIUS = 4.0
TRANSIENT = 2000
PERIOD_TOL = 1e-6
NEWTON_TOL = 1e-10
NEWTON_MAX_ITER = 50
FD_STEP = 1e-12  # central differences in WORKING_DPS arithmetic
MEET_TOL = 1e-6
WORKING_DPS = 30


class NewtonError(ArithmeticError):
    """Newton's method diverged or met a singular matrix."""


@dataclasses.dataclass(frozen=True)
class HenonParams:
    a: float
    b: float

    @property
    def left_of_saddle_node(self) -> bool:
        """No fixed points: every orbit escapes."""
        return (1 + self.b) ** 2 + 4 * self.a < 0

    @property
    def horseshoe(self) -> bool:
        """Right of the full-horseshoe bound."""
        return self.a > (5 + 2 * math.sqrt(5)) * (1 + self.b) ** 2


def henon_step(params: HenonParams, x: float, y: float) -> tuple[tuple[float, float], np.ndarray]:
    """Image of (x, y) and the derivative there."""
    jac = np.array([[-2.0 * x, -params.b], [1.0, 0.0]])
    return (params.a - x * x - params.b * y, x), jac


def orbit_jacobian(a: float, b: float, x: float, y: float, p: int):
    """
    F^p(x, y), DF^p(x, y) as a 2×2 tuple of rows, and ∂F^p/∂a.
    Plain floats: this sits in the inner loop of every Newton step.
    """
    m00, m01, m10, m11 = 1.0, 0.0, 0.0, 1.0
    da_x, da_y = 0.0, 0.0
    for _ in range(p):
        # new rows: J·M with J = ((-2x, -b), (1, 0))
        m00, m01, m10, m11 = -2 * x * m00 - b * m10, -2 * x * m01 - b * m11, m00, m01
        da_x, da_y = -2 * x * da_x - b * da_y + 1.0, da_x
        x, y = a - x * x - b * y, x
    return (x, y), ((m00, m01), (m10, m11)), (da_x, da_y)


def orbit_trace(a: float, b: float, x: float, y: float, p: int) -> float:
    _, m, _ = orbit_jacobian(a, b, x, y, p)
    return m[0][0] + m[1][1]


def isotracal_residual(a, b, x, y, p: int) -> tuple:
    """(X_p - x, Y_p - y, tr DF^p); exact arithmetic type follows the inputs."""
    (xp, yp), m, _ = orbit_jacobian(a, b, x, y, p)
    return xp - x, yp - y, m[0][0] + m[1][1]


def _newton_matrix(a, b, x, y, p: int) -> mpmath.matrix:
    _, m, (dax, day) = orbit_jacobian(a, b, x, y, p)
    J = mpmath.matrix(3, 3)
    J[0, 0], J[0, 1], J[0, 2] = dax, m[0][0] - 1, m[0][1]
    J[1, 0], J[1, 1], J[1, 2] = day, m[1][0], m[1][1] - 1
    # Trace row by central differences in each unknown.
    base = (a, x, y)
    for k in range(3):
        up, dn = list(base), list(base)
        up[k] += FD_STEP
        dn[k] -= FD_STEP
        J[2, k] = (orbit_trace(up[0], b, up[1], up[2], p) - orbit_trace(dn[0], b, dn[1], dn[2], p)) / (2 * FD_STEP)
    return J


@dataclasses.dataclass(frozen=True)
class IsotracalPoint:
    a: float
    x: float
    y: float
    res_fp: float
    res_tr: float
    iterations: int
    exact: tuple = dataclasses.field(repr=False, compare=False, default=())

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.x, self.y])


def solve_isotracal_point(p: int, guess: Sequence, b: float, tol: float = NEWTON_TOL,
                          max_iter: int = NEWTON_MAX_ITER, dps: int = WORKING_DPS) -> IsotracalPoint:
    """
    Newton's method for (a, x, y) at fixed b, in `dps`-digit arithmetic.
    Double precision is not enough: the p-step trace amplifies rounding of
    its inputs by the orbit's derivative product (about 1e4 at p = 17), and
    near a fold in b the Newton matrix is close to singular, so iteration
    continues well past `tol` until the correction itself is negligible.
    """
    if isinstance(guess, IsotracalPoint):
        guess = guess.exact or (guess.a, guess.x, guess.y)
    with mpmath.workdps(dps):
        z = mpmath.matrix([mpmath.mpf(v) for v in guess])
        bm = mpmath.mpf(b)
        fine = mpmath.mpf(10) ** (-(dps - 8))
        step = mpmath.inf
        for it in range(max_iter + 1):
            r = isotracal_residual(z[0], bm, z[1], z[2], p)
            if not all(mpmath.isfinite(v) for v in r):
                raise NewtonError(f"non-finite residual at iteration {it}")
            res_fp, res_tr = max(abs(r[0]), abs(r[1])), abs(r[2])
            if max(res_fp, res_tr) < tol and (max(res_fp, res_tr) < fine or step < fine):
                return IsotracalPoint(float(z[0]), float(z[1]), float(z[2]),
                                      float(res_fp), float(res_tr), it, tuple(z))
            if it == max_iter:
                break
            try:
                dz = mpmath.lu_solve(_newton_matrix(z[0], bm, z[1], z[2], p), -mpmath.matrix(r))
            except ZeroDivisionError as exc:
                raise NewtonError("singular Newton matrix") from exc
            z += dz
            step = max(abs(v) for v in dz)
            if max(abs(v) for v in z) > 10:
                raise NewtonError("iterate left the bounded region")
    raise NewtonError(f"no convergence in {max_iter} iterations (residual {float(max(res_fp, res_tr)):.2e})")


@dataclasses.dataclass(frozen=True)
class IsotracalSample:
    b: float
    a: float
    x: float
    y: float
    res_fp: float
    res_tr: float


@dataclasses.dataclass
class IsotracalPath:
    period: int
    branch: str
    samples: list[IsotracalSample]
    met: bool = False
    meet_b: float | None = None
    diagnostic: str = ""


@dataclasses.dataclass(frozen=True)
class StepControl:
    initial: float = 1e-4
    floor: float = 1e-12
    ceiling: float = 1e-3
    easy_iterations: int = 5
    easy_streak: int = 3
    b_max: float = 1.0
    newton_iterations: int = 15
    newton_tol: float = NEWTON_TOL
    # A corrector may move the solution at most this fraction of the
    # predicted displacement; larger moves mean Newton hopped to another arm.
    max_correction: float = 0.2
    meet_tol: float = MEET_TOL


def _sample(b: float, pt: IsotracalPoint) -> IsotracalSample:
    return IsotracalSample(b, pt.a, pt.x, pt.y, pt.res_fp, pt.res_tr)


def _tangent(p: int, pt: IsotracalPoint, b: float, dps: int = WORKING_DPS) -> np.ndarray:
    """d(a, x, y)/db along the solution curve, by implicit differentiation."""
    with mpmath.workdps(dps):
        a, x, y = pt.exact
        hb = mpmath.mpf(FD_STEP)
        up = isotracal_residual(a, b + hb, x, y, p)
        dn = isotracal_residual(a, b - hb, x, y, p)
        rb = mpmath.matrix([(u - d) / (2 * hb) for u, d in zip(up, dn)])
        try:
            t = mpmath.lu_solve(_newton_matrix(a, mpmath.mpf(b), x, y, p), -rb)
        except ZeroDivisionError:
            return np.zeros(3)
    return np.array([float(v) for v in t])


class _Branch:
    """One branch's state: the last accepted point and its b-tangent."""

    def __init__(self, p: int, pt: IsotracalPoint, b: float):
        self.p, self.pt, self.b = p, pt, b
        self.t = _tangent(p, pt, b)

    def advance(self, b: float, control: StepControl) -> IsotracalPoint:
        h = b - self.b
        guess = self.pt.vector + h * self.t
        exact = tuple(mpmath.mpf(e) + h * float(t) for e, t in zip(self.pt.exact, self.t))
        pt = solve_isotracal_point(self.p, exact, b, tol=control.newton_tol,
                                  max_iter=control.newton_iterations)
        moved = np.max(np.abs(pt.vector - guess))
        if moved > control.max_correction * max(abs(h) * np.max(np.abs(self.t)), abs(h)):
            raise NewtonError(f"corrector moved {moved:.2e}, predictor step {abs(h):.2e}")
        return pt

    def accept(self, pt: IsotracalPoint, b: float) -> None:
        self.pt, self.b = pt, b
        self.t = _tangent(self.p, pt, b)


def continue_isotracal(a_minus, a_plus, p: int,
                       control: StepControl = StepControl()) -> tuple[IsotracalPath, IsotracalPath]:
    """
    Follow both branches from (a±, x = a±, y = 0) at b = 0 with a shared,
    adaptive b-step until their a-values agree to `control.meet_tol`.

    Each step predicts along the tangent and corrects by Newton at the new b.
    A step is retried at half size when either corrector fails or strays too
    far from its prediction. If the gap a₋ - a₊ changes sign across a step the
    crossing is located by bisection in b. A branch that turns back in b (a
    fold) stalls the step size; the run then stops with met=False and a
    diagnostic naming the branch and the remaining gap.
    """
    paths, branches = [], []
    for name, a0 in (("minus", a_minus), ("plus", a_plus)):
        pt = solve_isotracal_point(p, (a0, a0, 0), 0.0, tol=control.newton_tol)
        paths.append(IsotracalPath(p, name, [_sample(0.0, pt)]))
        branches.append(_Branch(p, pt, 0.0))

    def gap() -> float:
        return branches[0].pt.a - branches[1].pt.a

    def record(b: float, pts) -> None:
        for path, br, pt in zip(paths, branches, pts):
            br.accept(pt, b)
            path.samples.append(_sample(b, pt))

    def met(b: float) -> tuple[IsotracalPath, IsotracalPath]:
        for path in paths:
            path.met, path.meet_b = True, b
        return tuple(paths)

    b, h, streak = 0.0, control.initial, 0
    failing = "no step attempted"
    while True:
        if abs(gap()) < control.meet_tol:
            return met(b)
        if b >= control.b_max:
            msg = f"reached b = {b} without meeting (gap {abs(gap()):.3g})"
            break
        if h < control.floor:
            msg = f"step underflow at b = {b:.8g}, {failing} (gap {abs(gap()):.3g})"
            break
        trial_b = min(b + h, control.b_max)
        solved, failing = [], ""
        for path, br in zip(paths, branches):
            try:
                solved.append(br.advance(trial_b, control))
            except NewtonError as exc:
                failing = f"{path.branch} branch: {exc}"
                break
        if failing:
            h, streak = h / 2, 0
            continue
        before = gap()
        after = solved[0].a - solved[1].a
        if before * after < 0:
            hit = _bisect_meeting(branches, b, trial_b, before, control)
            if hit is not None:
                mb, pts = hit
                record(mb, pts)
                return met(mb)
        b = trial_b
        record(b, solved)
        if max(pt.iterations for pt in solved) <= control.easy_iterations:
            streak += 1
            if streak >= control.easy_streak:
                h, streak = min(2 * h, control.ceiling), 0
        else:
            streak = 0
    for path in paths:
        path.diagnostic = msg
    return tuple(paths)


def _bisect_meeting(branches, lo: float, hi: float, gap_lo: float, control: StepControl):
    """Locate b in (lo, hi) where the two a-values agree; None if it cannot be resolved."""
    while hi - lo > control.floor:
        mid = 0.5 * (lo + hi)
        try:
            pts = [br.advance(mid, control) for br in branches]
        except NewtonError:
            return None
        g = pts[0].a - pts[1].a
        if abs(g) < control.meet_tol:
            return mid, pts
        if g * gap_lo > 0:
            lo = mid
        else:
            hi = mid
    return None


def paths_csv(paths: Sequence[IsotracalPath]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["b", "a", "x", "y", "res_fp", "res_tr", "branch", "period"])
    for path in paths:
        for s in path.samples:
            out.writerow([repr(s.b), repr(s.a), repr(s.x), repr(s.y),
                          f"{s.res_fp:.3e}", f"{s.res_tr:.3e}", path.branch, path.period])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Scatterplots


@dataclasses.dataclass(frozen=True)
class ScatterGrid:
    a_range: tuple[float, float]
    b_range: tuple[float, float]
    resolution: tuple[int, int]
    period_min: int
    period_max: int
    periods: np.ndarray  # shape (nb, na); 0 = escape or no period in range

    @property
    def a_values(self) -> np.ndarray:
        return np.linspace(*self.a_range, self.resolution[0])

    @property
    def b_values(self) -> np.ndarray:
        return np.linspace(*self.b_range, self.resolution[1])

    def cells(self, period: int) -> list[tuple[float, float]]:
        rows, cols = np.nonzero(self.periods == period)
        a, b = self.a_values, self.b_values
        return [(float(a[c]), float(b[r])) for r, c in zip(rows, cols)]


def attractor_periods(a: np.ndarray, b: np.ndarray, period_min: int, period_max: int,
                      transient: int = TRANSIENT, tol: float = PERIOD_TOL) -> np.ndarray:
    """
    Minimal period of the attractor reached from (0, 0), for arrays of
    parameters; 0 where the orbit escapes or the period is out of range.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.zeros_like(a)
    y = np.zeros_like(a)
    alive = np.ones(a.shape, dtype=bool)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(transient):
            x, y = a - x * x - b * y, x
            alive &= np.abs(x) <= ESCAPE_RADIUS
            x = np.where(alive, x, 0.0)
            y = np.where(alive, y, 0.0)
        x0, y0 = x.copy(), y.copy()
        found = np.zeros(a.shape, dtype=int)
        for q in range(1, period_max + 1):
            x, y = a - x * x - b * y, x
            alive &= np.abs(x) <= ESCAPE_RADIUS
            x = np.where(alive, x, 0.0)
            y = np.where(alive, y, 0.0)
            hit = alive & (found == 0) & (np.maximum(np.abs(x - x0), np.abs(y - y0)) < tol)
            found[hit] = q
    found[(found < period_min) | ~alive] = 0
    return found


def _scatter_rows(args):
    a_vals, b_vals, pmin, pmax, transient, tol = args
    A, B = np.meshgrid(a_vals, b_vals)
    return attractor_periods(A, B, pmin, pmax, transient, tol)


def scatter(a_range: tuple[float, float], b_range: tuple[float, float], resolution: tuple[int, int],
            period_min: int, period_max: int | None = None, transient: int = TRANSIENT,
            tol: float = PERIOD_TOL, jobs: int = 1) -> ScatterGrid:
    """Scan a grid (endpoints included). Cells are independent, so `jobs` only affects speed."""
    period_max = period_min if period_max is None else period_max
    na, nb = resolution
    if na < 2 or nb < 2:
        raise ValueError("resolution must be at least 2 in each direction")
    a_vals = np.linspace(*a_range, na)
    b_vals = np.linspace(*b_range, nb)
    chunks = np.array_split(b_vals, max(1, min(jobs, nb)))
    tasks = [(a_vals, chunk, period_min, period_max, transient, tol) for chunk in chunks if len(chunk)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scatter_rows, tasks))
    else:
        parts = [_scatter_rows(t) for t in tasks]
    return ScatterGrid(tuple(a_range), tuple(b_range), (na, nb), period_min, period_max, np.vstack(parts))


def scatter_csv(grid: ScatterGrid) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["a", "b", "period"])
    a, b = grid.a_values, grid.b_values
    for r in range(len(b)):
        for c in range(len(a)):
            out.writerow([f"{a[c]:.10g}", f"{b[r]:.10g}", int(grid.periods[r, c])])
    return buf.getvalue()
