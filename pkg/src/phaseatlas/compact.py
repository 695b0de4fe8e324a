"""Poincaré compactification: chart fields, infinite points, disc coordinates.

The plane embeds into the unit sphere; the equator carries the directions
at infinity.  Work happens in four affine charts: U1/V1 cover the front
and back (±x) hemispheres via (x, y) = (±1/z, ±u/z), U2/V2 the right and
left (±y) ones via (x, y) = (±u/z, ±1/z).  For a field of maximal degree d
the chart field, after the standard z^(d-1) time rescaling, is

    U1:  u̇ = z^d (Q − u·P)(1/z, u/z),    ż = −z^(d+1) P(1/z, u/z)
    U2:  u̇ = z^d (P − u·Q)(u/z, 1/z),    ż = −z^(d+1) Q(u/z, 1/z)

with V1/V2 equal to U1/U2 times (−1)^(d−1).  The divisor {z = 0} is the
equator; its stationary points are the roots of u̇(u, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .blowup import _univariate_real_roots
from .desing import PolyField
from .equilibria import ClassificationKind, classify_linear, jacobian_at
from .errors import DomainError, PreconditionError
from .polycore import BiPoly

CHART_IDS = ("U1", "U2", "V1", "V2")

# chart -> the axis direction of its u = 0 divisor point
_CHART_AXIS = {"U1": "+x", "V1": "-x", "U2": "+y", "V2": "-y"}


@dataclass(frozen=True)
class InfinitePoint:
    """A stationary point on the equator of the Poincaré sphere."""

    chart: str
    u: object  # Fraction or float position on the divisor
    exact: bool
    direction_label: str  # "+x" | "-x" | "+y" | "-y" | "slope"
    jacobian: tuple
    kind: ClassificationKind
    transverse_eigenvalue: object
    antipode_chart: str


@dataclass(frozen=True)
class InfinityContinuum:
    """Every equator point is stationary (the a = b case of the CDK family)."""

    tangential_eigenvalue: object  # identically zero along the divisor
    sample_transverse: tuple  # ((u, eigenvalue), ...) at sample positions

    def one_outgoing_trajectory_each(self) -> bool:
        return all(lam > 0 for _, lam in self.sample_transverse)


def compactify_chart(f: PolyField, chart: str) -> PolyField:
    """Chart field of the compactified system, common z-power cancelled."""
    if chart not in CHART_IDS:
        raise DomainError(f"unknown chart {chart!r}")
    d = f.max_degree()
    if d < 0:
        raise PreconditionError("cannot compactify the zero field")

    u_terms: dict[tuple[int, int], Fraction] = {}
    z_terms: dict[tuple[int, int], Fraction] = {}

    def add(terms, i, j, c):
        if c:
            terms[(i, j)] = terms.get((i, j), Fraction(0)) + c
            if not terms[(i, j)]:
                del terms[(i, j)]

    if chart in ("U1", "V1"):
        # u̇ = z^d (Q - u P)(1/z, u/z): term x^i y^j -> u^j z^(d-i-j)
        for (i, j), c in f.Q.terms.items():
            add(u_terms, j, d - i - j, c)
        for (i, j), c in f.P.terms.items():
            add(u_terms, j + 1, d - i - j, -c)
        for (i, j), c in f.P.terms.items():
            add(z_terms, j, d + 1 - i - j, -c)
    else:
        # u̇ = z^d (P - u Q)(u/z, 1/z): term x^i y^j -> u^i z^(d-i-j)
        for (i, j), c in f.P.terms.items():
            add(u_terms, i, d - i - j, c)
        for (i, j), c in f.Q.terms.items():
            add(u_terms, i + 1, d - i - j, -c)
        for (i, j), c in f.Q.terms.items():
            add(z_terms, i, d + 1 - i - j, -c)

    sign = 1 if chart in ("U1", "U2") else (-1) ** (d - 1)
    pu = BiPoly(u_terms) * sign
    pz = BiPoly(z_terms) * sign

    # cancel a shared z power, keeping the divisor {z = 0} invariant
    orders = [p.monomial_order("y") for p in (pu, pz) if not p.is_zero()]
    s = min(orders) if orders else 0
    if not pz.is_zero():
        s = min(s, pz.monomial_order("y") - 1)
    s = max(s, 0)
    if s:
        pu = pu.div_monomial("y", s)
        pz = pz.div_monomial("y", s)
    return PolyField(pu, pz, provenance=("compactified", chart))


def divisor_polynomial(f: PolyField, chart: str) -> list[Fraction]:
    """Coefficients (ascending) of u̇(u, 0) in the chart."""
    cf = compactify_chart(f, chart)
    coeffs: dict[int, Fraction] = {}
    for (i, j), c in cf.P.terms.items():
        if j == 0:
            coeffs[i] = coeffs.get(i, Fraction(0)) + c
    if not coeffs:
        return []
    out = [Fraction(0)] * (max(coeffs) + 1)
    for i, c in coeffs.items():
        out[i] = c
    return out


_ANTIPODE = {"U1": "V1", "V1": "U1", "U2": "V2", "V2": "U2"}


def infinite_stationary_points(f: PolyField):
    """Classified stationary points at infinity, or a continuum marker.

    Points are listed per direction chart (U1 = +x, V1 = −x, U2 = +y,
    V2 = −y); slope points (u ≠ 0) appear in the x-direction charts for
    |u| <= 1 and in the y-direction charts otherwise, so each equator
    point is reported exactly once per hemisphere end, with its antipodal
    partner chart recorded.
    """
    coeffs_x = divisor_polynomial(f, "U1")
    if not coeffs_x or all(c == 0 for c in coeffs_x):
        # every equator point stationary: report the structure along it
        cf = compactify_chart(f, "U1")
        samples = []
        for u in (Fraction(0), Fraction(1), Fraction(-1), Fraction(2)):
            J = jacobian_at(cf, (u, Fraction(0)))
            samples.append((u, J[1][1]))
        return InfinityContinuum(
            tangential_eigenvalue=Fraction(0), sample_transverse=tuple(samples)
        )

    points = []
    for chart in CHART_IDS:
        cf = compactify_chart(f, chart)
        coeffs = divisor_polynomial(f, chart)
        exact, floats, _ = _univariate_real_roots(coeffs)
        exact = sorted(set(exact))
        roots = [(u, True) for u in exact] + [(u, False) for u in floats]
        for u, is_exact in roots:
            au = abs(float(u))
            in_x_chart = chart in ("U1", "V1")
            if u != 0 and ((in_x_chart and au > 1) or (not in_x_chart and au >= 1)):
                continue  # the other chart family owns this slope
            z = (u, Fraction(0)) if is_exact else (float(u), 0.0)
            J = jacobian_at(cf, z)
            kind = classify_linear(J)
            label = _CHART_AXIS[chart] if u == 0 else "slope"
            points.append(
                InfinitePoint(
                    chart=chart,
                    u=u,
                    exact=is_exact,
                    direction_label=label,
                    jacobian=J,
                    kind=kind,
                    transverse_eigenvalue=J[1][1],
                    antipode_chart=_ANTIPODE[chart],
                )
            )
    return points


# -- Poincaré disc coordinates -----------------------------------------------------


@dataclass(frozen=True)
class InfinityMarker:
    """Returned by the inverse map on the boundary circle."""

    direction: tuple


def disc_coords(z) -> tuple[float, float]:
    """Diffeomorphism of the plane onto the open unit disc.

    The central projection onto the Poincaré sphere followed by vertical
    projection: p -> p / sqrt(1 + |p|²).
    """
    x, y = float(z[0]), float(z[1])
    r = math.sqrt(1.0 + x * x + y * y)
    return (x / r, y / r)


def disc_coords_inverse(q):
    """Inverse of disc_coords; boundary points map to an InfinityMarker."""
    X, Y = float(q[0]), float(q[1])
    rho2 = X * X + Y * Y
    if rho2 >= 1.0:
        norm = math.sqrt(rho2)
        return InfinityMarker(direction=(X / norm, Y / norm))
    r = math.sqrt(1.0 - rho2)
    return (X / r, Y / r)


def boundary_point(direction_angle: float) -> tuple[float, float]:
    """Point on the disc boundary for a direction at infinity."""
    return (math.cos(direction_angle), math.sin(direction_angle))
