"""Finite stationary points: location, Jacobians, and classification.

The CDK system gets a closed-form solver (two axis points s1, s2 always;
a symmetric pair s3, s4 exactly when the parameters straddle 1; the full
circle x² + (y-1/2)² = 1/4 at a = b = 1).  A numeric finder based on
interval subdivision plus Newton polishing cross-checks the closed form
and serves arbitrary polynomial fields.

Classification: hyperbolic kinds drop out of the 2x2 eigenvalue structure;
points with exactly one zero eigenvalue go through a center-manifold series
(exact rational coefficients) and the standard semi-hyperbolic trichotomy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .desing import PolyField, cdk_poly_field
from .errors import (
    AmbiguityError,
    DomainError,
    InconclusiveError,
    PreconditionError,
)
from .polycore import BiPoly, as_rational

KIND_NAMES = (
    "saddle",
    "attracting_node",
    "repelling_node",
    "attracting_focus",
    "repelling_focus",
    "center_linear",
    "semi_hyperbolic",
    "nilpotent",
    "degenerate_curve",
)

SEMI_HYPERBOLIC_SUBKINDS = ("saddle", "attracting_node", "repelling_node", "saddle_node")

# relative threshold below which a float eigenvalue real part counts as zero
_ZERO_EIG_REL = 1e-10


@dataclass(frozen=True)
class ClassificationKind:
    name: str
    subkind: str | None = None
    boundary: bool = False

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise DomainError(f"unknown classification kind {self.name!r}")
        if self.subkind is not None and self.subkind not in SEMI_HYPERBOLIC_SUBKINDS:
            raise DomainError(f"unknown semi-hyperbolic subkind {self.subkind!r}")

    def __str__(self):
        s = self.name if self.subkind is None else f"{self.name}({self.subkind})"
        return s + (" [boundary]" if self.boundary else "")


@dataclass(frozen=True)
class StationaryPoint:
    """A finite stationary point with its local linear data."""

    location: tuple
    jacobian: tuple
    eigenvalues: tuple
    kind: ClassificationKind
    label: str | None = None
    exact: bool = True
    error_bound: float | None = None

    def location_floats(self) -> tuple[float, float]:
        return (float(self.location[0]), float(self.location[1]))


@dataclass(frozen=True)
class StationaryCircle:
    """A whole circle of stationary points: x² + (y - cy)² = radius²."""

    center: tuple
    radius: Fraction

    def contains(self, x, y) -> bool:
        cx, cy = self.center
        return (as_rational(x) - cx) ** 2 + (as_rational(y) - cy) ** 2 == self.radius**2


@dataclass(frozen=True)
class Continuum:
    """Numeric evidence of a curve of zeros rather than isolated points."""

    samples: tuple


# -- eigenvalues and linear classification -------------------------------------


def eigenvalues_2x2(J) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix via the quadratic formula.

    Cancellation is avoided by computing the small root from the product of
    roots when the discriminant is positive.
    """
    a11, a12 = float(J[0][0]), float(J[0][1])
    a21, a22 = float(J[1][0]), float(J[1][1])
    tr = a11 + a22
    det = a11 * a22 - a12 * a21
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        root = math.sqrt(disc)
        big = (tr + root) / 2.0 if tr >= 0 else (tr - root) / 2.0
        if big == 0.0:
            return (0j, 0j)
        small = det / big
        lam1, lam2 = complex(big), complex(small)
    else:
        root = math.sqrt(-disc)
        lam1 = complex(tr / 2.0, root / 2.0)
        lam2 = complex(tr / 2.0, -root / 2.0)
    return (lam1, lam2) if (lam1.real, lam1.imag) >= (lam2.real, lam2.imag) else (lam2, lam1)


def _matrix_is_exact(J) -> bool:
    return all(not isinstance(J[i][j], float) for i in range(2) for j in range(2))


def classify_linear(J) -> ClassificationKind:
    """Kind of an equilibrium from its Jacobian alone.

    Exact matrices (Fraction entries) are classified by exact sign tests;
    float matrices use a relative threshold of 1e-10 on the matrix norm and
    set `boundary` when a decisive quantity sits below it.
    """
    if _matrix_is_exact(J):
        a11, a12 = as_rational(J[0][0]), as_rational(J[0][1])
        a21, a22 = as_rational(J[1][0]), as_rational(J[1][1])
        tr = a11 + a22
        det = a11 * a22 - a12 * a21
        disc = tr * tr - 4 * det
        zero = Fraction(0)

        def near(v):
            return v == zero

        boundary = False
    else:
        a11, a12 = float(J[0][0]), float(J[0][1])
        a21, a22 = float(J[1][0]), float(J[1][1])
        tr = a11 + a22
        det = a11 * a22 - a12 * a21
        disc = tr * tr - 4.0 * det
        norm = max(abs(a11), abs(a12), abs(a21), abs(a22), 1e-300)
        tol = _ZERO_EIG_REL * norm

        def near(v):
            return abs(v) <= tol * max(1.0, norm)

        boundary = near(det) or (det > 0 and near(tr)) or (disc < 0 and near(tr))

    if near(det) and near(tr):
        return ClassificationKind("nilpotent", boundary=boundary)
    if near(det):
        return ClassificationKind("semi_hyperbolic", boundary=boundary)
    if det < 0:
        return ClassificationKind("saddle", boundary=boundary)
    # det > 0 from here on
    if near(tr):
        return ClassificationKind("center_linear", boundary=boundary)
    if disc < 0:
        name = "attracting_focus" if tr < 0 else "repelling_focus"
    else:
        name = "attracting_node" if tr < 0 else "repelling_node"
    return ClassificationKind(name, boundary=boundary)


# -- Jacobians and shifts --------------------------------------------------------


def jacobian_at(f: PolyField, z):
    """2x2 Jacobian of (P, Q) at z; exact whenever z has exact coordinates."""
    x, y = z
    px, py, qx, qy = f.jacobian_polys()
    return (
        (px.eval(x, y), py.eval(x, y)),
        (qx.eval(x, y), qy.eval(x, y)),
    )


def shift_to_origin(f: PolyField, z) -> PolyField:
    """Field in coordinates moving z to the origin (exact recomposition)."""
    return f.shifted(as_rational(z[0]), as_rational(z[1]))


# -- semi-hyperbolic analysis ------------------------------------------------------


@dataclass(frozen=True)
class SemiHyperbolicAnalysis:
    subkind: str
    nonzero_eigenvalue: Fraction
    center_order: int
    center_coefficient: Fraction
    center_direction: tuple
    hyperbolic_direction: tuple


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if i + j > order:
                    break
                out[i + j] += ca * cb
    return out


def _series_of_bipoly(p: BiPoly, h, order):
    """Series of p(xi, h(xi)) truncated at the given order; h[0] = h[1] = 0."""
    if p.is_zero():
        return [Fraction(0)] * (order + 1)
    hpow = [[Fraction(1)] + [Fraction(0)] * order]
    for _ in range(p.degree_in("y")):
        hpow.append(_series_mul(hpow[-1], h, order))
    out = [Fraction(0)] * (order + 1)
    for (i, j), c in p.terms.items():
        if i > order:
            continue
        for k, hk in enumerate(hpow[j]):
            if i + k > order:
                break
            out[i + k] += c * hk
    return out


def semihyperbolic_analysis(f: PolyField, z, order: int = 6) -> SemiHyperbolicAnalysis:
    """Center-manifold classification at a point with one zero eigenvalue.

    Moves z to the origin, aligns the zero eigendirection with the first
    axis, solves the invariance equation for the center manifold eta = h(xi)
    up to the truncation order, and reads the trichotomy off the lowest
    nonzero coefficient of the reduced flow together with the sign of the
    nonzero eigenvalue.  All arithmetic is exact.
    """
    g = shift_to_origin(f, z)
    J = jacobian_at(g, (Fraction(0), Fraction(0)))
    a11, a12 = J[0]
    a21, a22 = J[1]
    tr = a11 + a22
    det = a11 * a22 - a12 * a21
    if det != 0 or tr == 0:
        raise PreconditionError("point does not have exactly one zero eigenvalue")
    mu = tr

    v0 = (a12, -a11) if (a12, a11) != (0, 0) else (a22, -a21)
    vmu = (a12, mu - a11) if (a12, mu - a11) != (0, 0) else (mu - a22, a21)
    t11, t21 = v0
    t12, t22 = vmu
    dT = t11 * t22 - t12 * t21
    if dT == 0:
        raise PreconditionError("degenerate eigenbasis")

    # field in eigen-coordinates: (x, y) = T (xi, eta), Ftilde = T^-1 F(T.)
    xi_x = BiPoly.monomial(t11, 1, 0) + BiPoly.monomial(t12, 0, 1)
    xi_y = BiPoly.monomial(t21, 1, 0) + BiPoly.monomial(t22, 0, 1)
    Pn = g.P.subst(xi_x, xi_y)
    Qn = g.Q.subst(xi_x, xi_y)
    A = (t22 * Pn - t12 * Qn) * (Fraction(1) / dT)
    B = (-t21 * Pn + t11 * Qn) * (Fraction(1) / dT)

    # h(xi) = sum c_k xi^k from the invariance equation B(xi,h) = h'(xi) A(xi,h)
    h = [Fraction(0)] * (order + 1)
    for k in range(2, order + 1):
        bs = _series_of_bipoly(B, h, k)
        as_ = _series_of_bipoly(A, h, k)
        hp = [Fraction(0)] * (order + 1)
        for m in range(1, order):
            hp[m] = (m + 1) * h[m + 1] if m + 1 <= order else Fraction(0)
        lhs_k = bs[k] - _series_mul(hp, as_, k)[k]
        # B's linear eta-term contributes mu * c_k at order k; solve it out
        h[k] = -lhs_k / mu

    gseries = _series_of_bipoly(A, h, order)
    m = None
    for k in range(2, order + 1):
        if gseries[k] != 0:
            m = k
            break
    if m is None:
        raise InconclusiveError(
            f"center-manifold flow vanishes through order {order}", order=order
        )
    coeff = gseries[m]

    if m % 2 == 0:
        subkind = "saddle_node"
    elif coeff > 0:  # center direction unstable
        subkind = "saddle" if mu < 0 else "repelling_node"
    else:  # center direction stable
        subkind = "attracting_node" if mu < 0 else "saddle"
    return SemiHyperbolicAnalysis(
        subkind=subkind,
        nonzero_eigenvalue=mu,
        center_order=m,
        center_coefficient=coeff,
        center_direction=v0,
        hyperbolic_direction=vmu,
    )


def classify_semihyperbolic(f: PolyField, z, order: int = 6) -> str:
    """Semi-hyperbolic subkind: saddle, attracting/repelling node, or saddle-node."""
    return semihyperbolic_analysis(f, z, order).subkind


def classify_point(f: PolyField, z, order: int = 6) -> ClassificationKind:
    """Full classification dispatch for a stationary point of f."""
    J = jacobian_at(f, z)
    kind = classify_linear(J)
    if kind.name == "semi_hyperbolic" and _matrix_is_exact(J):
        try:
            sub = classify_semihyperbolic(f, z, order)
            return ClassificationKind("semi_hyperbolic", subkind=sub, boundary=kind.boundary)
        except (InconclusiveError, PreconditionError):
            return kind
    return kind


# -- CDK closed-form solver --------------------------------------------------------


def sqrt_exact_or_float(v: Fraction):
    """Square root of a nonnegative rational: Fraction if perfect square, else float.

    The float branch is correctly rounded from the exact numerator and
    denominator roots; its relative error is bounded by a few ulp (< 1e-15).
    """
    if v < 0:
        raise DomainError("square root of a negative rational")
    n, d = v.numerator, v.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return math.sqrt(n / d) if n < 2**52 and d < 2**52 else math.sqrt(n) / math.sqrt(d)


def _s34_kind(a: Fraction, b: Fraction) -> ClassificationKind:
    """Kind shared by s3 and s4, decided by exact sign tests on the closed form."""
    radicand = b * (b + 8 * a * (a - 1))
    denom = 2 * a * (b - a)
    if radicand < 0:
        # complex pair, common real part b(1-b)/denom
        re = b * (1 - b) / denom
        if re < 0:
            return ClassificationKind("attracting_focus")
        if re > 0:
            return ClassificationKind("repelling_focus")
        return ClassificationKind("center_linear")
    # real eigenvalues: det carries the sign of b² - radicand = -8ab(a-1)
    if b * b - radicand < 0:
        return ClassificationKind("saddle")
    tr = b * (1 - b) / (a * (b - a))
    return ClassificationKind("attracting_node" if tr < 0 else "repelling_node")


def s34_eigenvalues(a, b) -> tuple[complex, complex]:
    """Shared eigenvalue pair of s3/s4:
    [b(1-b) ± (b-1)·sqrt(b(b+8a(a-1)))] / (2a(b-a))."""
    a, b = as_rational(a), as_rational(b)
    if not (b > 1 > a or a > 1 > b):
        raise DomainError("s3/s4 exist only for b>1>a or a>1>b")
    radicand = b * (b + 8 * a * (a - 1))
    denom = 2 * a * (b - a)
    base = b * (1 - b)
    if radicand >= 0:
        root = sqrt_exact_or_float(radicand)
        lam1 = (float(base) + float(b - 1) * float(root)) / float(denom)
        lam2 = (float(base) - float(b - 1) * float(root)) / float(denom)
        return (complex(lam1), complex(lam2))
    root = math.sqrt(float(-radicand))
    re = float(base) / float(denom)
    im = float(b - 1) * root / float(denom)
    return (complex(re, abs(im)), complex(re, -abs(im)))


def _make_point(f: PolyField, loc, label, kind=None, exact=True, error_bound=None):
    J = jacobian_at(f, loc)
    eig = eigenvalues_2x2(J)
    if kind is None:
        kind = classify_point(f, loc) if exact else classify_linear(J)
    return StationaryPoint(
        location=tuple(loc),
        jacobian=J,
        eigenvalues=eig,
        kind=kind,
        label=label,
        exact=exact,
        error_bound=error_bound,
    )


def cdk_stationary_points(a, b):
    """Finite stationary points of the CDK polynomial field.

    Returns a StationaryCircle for a = b = 1; otherwise a list holding
    s1 = (0,0), s2 = (0,1) and, exactly when the parameters straddle 1,
    the pair s3/s4 = (±sqrt(y2/a − y2²), y2) with y2 = −(b−1)/(a−b).
    """
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise DomainError("CDK parameters must be positive")
    if a == 1 and b == 1:
        return StationaryCircle(center=(Fraction(0), Fraction(1, 2)), radius=Fraction(1, 2))

    f = cdk_poly_field(a, b)
    zero = Fraction(0)
    points = [
        _make_point(f, (zero, zero), "s1", kind=ClassificationKind("nilpotent")),
        _make_point(f, (zero, Fraction(1)), "s2"),
    ]
    if b > 1 > a or b < 1 < a:
        y2 = -(b - 1) / (a - b)
        x_sq = y2 / a - y2 * y2
        if x_sq < 0:
            raise DomainError("inconsistent closed form: negative x^2")
        root = sqrt_exact_or_float(x_sq)
        kind = _s34_kind(a, b)
        exact = isinstance(root, Fraction)
        err = None if exact else 5e-16 * float(root)
        for label, sign in (("s3", 1), ("s4", -1)):
            loc = (sign * root, y2)
            points.append(
                _make_point(f, loc, label, kind=kind, exact=exact, error_bound=err)
            )
    return points


# -- numeric finder -----------------------------------------------------------------


def _interval_eval(p: BiPoly, xlo, xhi, ylo, yhi):
    """Crude interval range of p over the box (monomial-wise products)."""
    lo = hi = 0.0
    for (i, j), c in p.terms.items():
        xs = _interval_pow(xlo, xhi, i)
        ys = _interval_pow(ylo, yhi, j)
        cands = [xs[0] * ys[0], xs[0] * ys[1], xs[1] * ys[0], xs[1] * ys[1]]
        tlo, thi = min(cands), max(cands)
        cf = float(c)
        if cf >= 0:
            lo += cf * tlo
            hi += cf * thi
        else:
            lo += cf * thi
            hi += cf * tlo
    pad = 1e-14 * max(abs(lo), abs(hi), 1.0)
    return lo - pad, hi + pad


def _interval_pow(lo, hi, n):
    if n == 0:
        return (1.0, 1.0)
    pl, ph = lo**n, hi**n
    if n % 2 == 0 and lo < 0 < hi:
        return (0.0, max(pl, ph))
    return (min(pl, ph), max(pl, ph))


def _newton_polish(rhs, jac, x, y, tol, max_iter=60):
    for _ in range(max_iter):
        fx, fy = rhs(x, y)
        res = math.hypot(fx, fy)
        a11, a12, a21, a22 = jac(x, y)
        det = a11 * a22 - a12 * a21
        if abs(det) > 1e-14 * max(1.0, a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22):
            dx = (-fx * a22 + fy * a12) / det
            dy = (-fy * a11 + fx * a21) / det
        else:
            # near-singular Jacobian (continuum direction): damped gradient step
            import numpy as np

            sol, *_ = np.linalg.lstsq(
                np.array([[a11, a12], [a21, a22]]), np.array([-fx, -fy]), rcond=None
            )
            dx, dy = float(sol[0]), float(sol[1])
        x, y = x + dx, y + dy
        if res < tol and math.hypot(dx, dy) < tol:
            return x, y, res
    fx, fy = rhs(x, y)
    return x, y, math.hypot(fx, fy)


def find_stationary(f: PolyField, box, tol: float = 1e-10):
    """All isolated common zeros of (P, Q) in the box, to residual < tol.

    Recursive interval subdivision discards boxes where either component is
    sign-definite; surviving cells are polished by Newton.  Points closer
    than 10*tol are merged.  Returns a Continuum marker when the zero set
    is a curve; raises AmbiguityError if resolution runs out first.
    """
    xmin, xmax, ymin, ymax = (float(v) for v in box)
    if not (xmin < xmax and ymin < ymax and all(map(math.isfinite, (xmin, xmax, ymin, ymax)))):
        raise PreconditionError("box bounds must be finite and ordered")
    if tol <= 0:
        raise PreconditionError("tolerance must be positive")

    rhs = f.compiled()
    px, py, qx, qy = f.jacobian_polys()

    def jac(x, y):
        return (px.eval(x, y), py.eval(x, y), qx.eval(x, y), qy.eval(x, y))

    min_diam = max((xmax - xmin), (ymax - ymin)) / 2**9
    max_depth = 40
    stack = [(xmin, xmax, ymin, ymax, 0)]
    candidates = []
    failed = []
    while stack:
        xlo, xhi, ylo, yhi, depth = stack.pop()
        plo, phi = _interval_eval(f.P, xlo, xhi, ylo, yhi)
        if plo > 0 or phi < 0:
            continue
        qlo, qhi = _interval_eval(f.Q, xlo, xhi, ylo, yhi)
        if qlo > 0 or qhi < 0:
            continue
        if max(xhi - xlo, yhi - ylo) <= min_diam or depth >= max_depth:
            cx, cy = (xlo + xhi) / 2, (ylo + yhi) / 2
            x, y, res = _newton_polish(rhs, jac, cx, cy, tol)
            if res < tol:
                margin = 2 * max(xhi - xlo, yhi - ylo)
                if xlo - margin <= x <= xhi + margin and ylo - margin <= y <= yhi + margin:
                    candidates.append((x, y))
                # converged far away: that root is caught by its own cell
            else:
                failed.append((cx, cy))
            continue
        xm, ym = (xlo + xhi) / 2, (ylo + yhi) / 2
        stack.extend(
            [
                (xlo, xm, ylo, ym, depth + 1),
                (xm, xhi, ylo, ym, depth + 1),
                (xlo, xm, ym, yhi, depth + 1),
                (xm, xhi, ym, yhi, depth + 1),
            ]
        )

    merged: list[tuple[float, float]] = []
    for x, y in sorted(candidates):
        for k, (mx, my) in enumerate(merged):
            if math.hypot(x - mx, y - my) <= 10 * max(tol, 1e-12):
                merged[k] = (mx, my)
                break
        else:
            merged.append((x, y))

    # a curve of zeros floods the subdivision with distinct converged points;
    # report it before worrying about the handful of stalled cells on it
    if len(merged) > 16:
        return Continuum(samples=tuple(sorted(merged)))

    if failed:
        raise AmbiguityError(
            f"{len(failed)} cells exhausted resolution without separating",
            clusters=failed,
        )

    points = []
    for x, y in sorted(merged):
        points.append(_make_point(f, (x, y), None, exact=False, error_bound=tol))
    return points
