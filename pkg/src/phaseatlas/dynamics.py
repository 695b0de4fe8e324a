"""Numerical flow machinery: adaptive integration, ω-limits, field index.

Integration always runs on the reparametrised (polynomial) time τ, never on
the original rational-system time; the two differ by the positive factor
recorded in PolyField.time_factor, so trajectories coincide away from its
zero set.

The integrator is an embedded Dormand-Prince 5(4) pair with standard
proportional step control.  Termination is part of the contract: capture
near a known equilibrium (with the field pointing inward), box exit, time
exhaustion, or step underflow — never a silent stop.  For fixed options the
result is bit-deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .desing import PolyField
from .errors import PreconditionError, SingularEvaluationError

# Dormand-Prince 5(4) coefficients (the classic DOPRI5 tableau)
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


@dataclass(frozen=True)
class IntegratorOptions:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_time: float = 1e4
    box: tuple = (-1e6, 1e6, -1e6, 1e6)
    equilibrium_capture_radius: float = 1e-6
    equilibria: tuple = ()
    max_steps: int = 500_000
    fixed_step: float | None = None

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise PreconditionError("tolerances must be positive")


@dataclass(frozen=True)
class Termination:
    kind: str  # reached_equilibrium | left_box | time_exhausted | step_underflow
    which: tuple | None = None


@dataclass(frozen=True)
class Trajectory:
    samples: tuple  # ((tau, (x, y)), ...) with tau strictly increasing
    termination: Termination
    direction: str = "forward"

    @property
    def last_point(self) -> tuple[float, float]:
        return self.samples[-1][1]

    @property
    def last_time(self) -> float:
        return self.samples[-1][0]


def _as_rhs(f):
    if isinstance(f, PolyField):
        return f.compiled()
    if callable(f):
        return f
    raise PreconditionError(f"cannot evaluate object of type {type(f).__name__} as a field")


def integrate(f, z0, opts: IntegratorOptions | None = None, direction: str = "forward") -> Trajectory:
    """Integrate the field from z0 until a termination condition fires."""
    if opts is None:
        opts = IntegratorOptions()
    if direction not in ("forward", "backward"):
        raise PreconditionError("direction must be 'forward' or 'backward'")
    base = _as_rhs(f)
    sign = 1.0 if direction == "forward" else -1.0

    def rhs(x, y):
        u, v = base(x, y)
        return sign * u, sign * v

    xmin, xmax, ymin, ymax = opts.box
    caps = [(float(ex), float(ey)) for ex, ey in opts.equilibria]
    crad = opts.equilibrium_capture_radius

    def capture_at(x, y):
        for ex, ey in caps:
            if math.hypot(x - ex, y - ey) <= crad:
                u, v = rhs(x, y)
                inward = u * (ex - x) + v * (ey - y)
                if inward > 0 or math.hypot(u, v) <= opts.abs_tol:
                    return (ex, ey)
        return None

    x, y = float(z0[0]), float(z0[1])
    tau = 0.0
    samples = [(tau, (x, y))]

    hit = capture_at(x, y)
    if hit is not None:
        return Trajectory(tuple(samples), Termination("reached_equilibrium", hit), direction)
    if not (xmin <= x <= xmax and ymin <= y <= ymax):
        return Trajectory(tuple(samples), Termination("left_box"), direction)

    u0, v0 = rhs(x, y)
    speed = math.hypot(u0, v0)
    if opts.fixed_step is not None:
        h = opts.fixed_step
    else:
        h = min(1.0, 0.01 * (1.0 + math.hypot(x, y)) / (speed + 1e-30))

    k = [(0.0, 0.0)] * 7
    for _ in range(opts.max_steps):
        if tau >= opts.max_time:
            return Trajectory(tuple(samples), Termination("time_exhausted"), direction)
        h = min(h, opts.max_time - tau)
        if h < 1e-14 * max(1.0, abs(tau)):
            return Trajectory(tuple(samples), Termination("step_underflow"), direction)

        k[0] = rhs(x, y)
        for i in range(1, 7):
            ai = _A[i]
            dx = dy = 0.0
            for j, a in enumerate(ai):
                dx += a * k[j][0]
                dy += a * k[j][1]
            k[i] = rhs(x + h * dx, y + h * dy)

        x5 = x + h * sum(b * ki[0] for b, ki in zip(_B5, k))
        y5 = y + h * sum(b * ki[1] for b, ki in zip(_B5, k))
        x4 = x + h * sum(b * ki[0] for b, ki in zip(_B4, k))
        y4 = y + h * sum(b * ki[1] for b, ki in zip(_B4, k))

        if opts.fixed_step is not None:
            accept, hnew = True, h
        else:
            sx = opts.abs_tol + opts.rel_tol * max(abs(x), abs(x5))
            sy = opts.abs_tol + opts.rel_tol * max(abs(y), abs(y5))
            err = math.sqrt((((x5 - x4) / sx) ** 2 + ((y5 - y4) / sy) ** 2) / 2.0)
            accept = err <= 1.0
            factor = 0.9 * (err + 1e-300) ** -0.2
            hnew = h * min(5.0, max(0.2, factor))

        if accept:
            tau += h
            x, y = x5, y5
            samples.append((tau, (x, y)))
            if not (math.isfinite(x) and math.isfinite(y)):
                return Trajectory(tuple(samples), Termination("step_underflow"), direction)
            hit = capture_at(x, y)
            if hit is not None:
                return Trajectory(
                    tuple(samples), Termination("reached_equilibrium", hit), direction
                )
            if not (xmin <= x <= xmax and ymin <= y <= ymax):
                return Trajectory(tuple(samples), Termination("left_box"), direction)
        h = hnew

    return Trajectory(tuple(samples), Termination("time_exhausted"), direction)


@dataclass(frozen=True)
class OmegaResult:
    kind: str  # "equilibrium" | "unresolved"
    point: tuple | None
    trajectory: Trajectory


def omega_limit(f, z0, opts: IntegratorOptions | None = None) -> OmegaResult:
    """Forward limit set: an equilibrium if captured, unresolved otherwise.

    The systems this package analyses have no limit cycles, so no cycle
    detection is attempted; slow convergence lands in "unresolved".
    """
    traj = integrate(f, z0, opts, "forward")
    if traj.termination.kind == "reached_equilibrium":
        return OmegaResult("equilibrium", traj.termination.which, traj)
    return OmegaResult("unresolved", None, traj)


def index_on_circle(f, center, radius: float, n: int = 4096) -> int:
    """Winding number of the field direction around a circle.

    Samples the field at n points, accumulates unwrapped direction angles,
    and rejects the computation when an equilibrium sits on the circle or
    the accumulated angle is not close to a multiple of 2π.
    """
    rhs = _as_rhs(f)
    cx, cy = float(center[0]), float(center[1])
    if radius <= 0:
        raise PreconditionError("radius must be positive")

    angles = []
    min_norm, max_norm = math.inf, 0.0
    for i in range(n):
        theta = 2.0 * math.pi * i / n
        u, v = rhs(cx + radius * math.cos(theta), cy + radius * math.sin(theta))
        norm = math.hypot(u, v)
        min_norm = min(min_norm, norm)
        max_norm = max(max_norm, norm)
        angles.append(math.atan2(v, u))
    if max_norm == 0.0 or min_norm <= 1e-12 * max_norm:
        raise PreconditionError("field vanishes on the circle (equilibrium on circle?)")

    total = 0.0
    for i in range(n):
        d = angles[(i + 1) % n] - angles[i]
        while d > math.pi:
            d -= 2.0 * math.pi
        while d < -math.pi:
            d += 2.0 * math.pi
        total += d
    winding = total / (2.0 * math.pi)
    nearest = round(winding)
    if abs(winding - nearest) > 0.1:
        raise PreconditionError(
            f"winding residual {abs(winding - nearest):.3f} exceeds 0.1; "
            "increase the sample count or move the circle"
        )
    return int(nearest)


def slope_limit_check(fixture, y0: float, x_eval: float) -> float:
    """Trajectory slope dy/dx of the logarithmic system at (x_eval, y0).

    Equals (½ln x² + x) / (½ln x² − y0); the limit for x → 0 is 1 for
    every y0, which is how the streamlines cross the y-axis.
    """
    if x_eval == 0:
        raise PreconditionError("x_eval must be nonzero")
    half_log = math.log(x_eval * x_eval) / 2.0
    denom = half_log - y0
    if denom == 0.0:
        raise SingularEvaluationError("evaluation point lies on the x-nullcline")
    return (half_log + x_eval) / denom


def default_cdk_options(points, **overrides) -> IntegratorOptions:
    """Options preloaded with capture targets from a stationary-point list."""
    eqs = tuple(p.location_floats() for p in points)
    base = IntegratorOptions(equilibria=eqs)
    return replace(base, **overrides) if overrides else base
