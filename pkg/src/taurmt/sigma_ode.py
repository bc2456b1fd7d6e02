"""Residual evaluation and integration of the second-degree sigma-form ODEs.

All three equations handled here share one algebraic shape,

    F(t, z, z', z'') = L(t, z') z''^2 + R(t, z, z') = 0,

quadratic in the second derivative. Differentiating once in t and using the
structural identity R_t + z' R_z = 0 (which all three satisfy) factors the
result as z'' (L_t z'' + L_z' z''^2 + R_z' + 2 L z''') = 0, so the explicit
third-order flow

    z''' = -(L_t z'' + L_z' z''^2 + R_z') / (2 L)

is regular wherever L != 0; inflection points of the solution need no special
handling. The only genuine turning points are zeros of the leading
coefficient L: z' = 0 for the sixth-system form, t = 0 for the other two.

The integrator steps this third-order system with an adaptive embedded
Runge-Kutta pair and monitors the original second-degree relation as a
conserved constraint, re-projecting z'' onto the nearest root whenever the
scaled residual drifts above the tolerance. Solutions that ride a double
root of the quadratic identically (linear-in-t solutions other than fixed
points) are not followed; they form a measure-zero family the flow above
does not see.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass

import numpy as np

from .monodromy_v import ThetaV
from .monodromy_vi import SSEParams, ThetaVI
from .tau_series import (
    BoundaryExpansion,
    BulkParams,
    TauSeries,
    h_to_u,
    sigma_from_logderiv_v,
    sigma_from_logderiv_vi,
)

__all__ = [
    "TurningPointError",
    "StepSizeUnderflowError",
    "NonIntegrableAnchorError",
    "OdeKind",
    "OdeSeed",
    "SigmaTrajectory",
    "residual",
    "residual_scaled",
    "residual_gradient",
    "solve_second_degree",
    "third_derivative",
    "integrate",
    "tau_reconstruct",
    "seed_vi",
    "seed_v",
    "seed_bulk",
    "suggest_seed_radius",
]


class TurningPointError(RuntimeError):
    """Leading coefficient of the quadratic-in-z'' relation vanished."""

    def __init__(self, t: complex, leading: complex):
        self.t = complex(t)
        self.leading = complex(leading)
        super().__init__(
            f"turning point at t = {t}: leading coefficient {leading} ~ 0")


class StepSizeUnderflowError(RuntimeError):
    def __init__(self, t: complex):
        self.t = complex(t)
        super().__init__(f"step size underflow near t = {t}")


class NonIntegrableAnchorError(ValueError):
    """The reconstruction integrand does not vanish fast enough at the anchor."""


_KINDS = ("pvi_sf", "pv_sf", "jmo_pv")


@dataclass(frozen=True)
class OdeKind:
    """Which second-degree relation, together with its parameters."""

    name: str
    params: object

    def __post_init__(self):
        if self.name not in _KINDS:
            raise ValueError(f"unknown kind {self.name!r}; expected one of {_KINDS}")
        wanted = {"pvi_sf": ThetaVI, "pv_sf": ThetaV, "jmo_pv": BulkParams}[self.name]
        if not isinstance(self.params, wanted):
            raise TypeError(f"{self.name} needs {wanted.__name__} parameters, "
                            f"got {type(self.params).__name__}")

    @classmethod
    def pvi_sf(cls, theta: ThetaVI) -> "OdeKind":
        return cls("pvi_sf", theta)

    @classmethod
    def pv_sf(cls, theta: ThetaV) -> "OdeKind":
        return cls("pv_sf", theta)

    @classmethod
    def jmo_pv(cls, v: BulkParams) -> "OdeKind":
        return cls("jmo_pv", v)

    @property
    def singularities(self) -> tuple:
        if self.name == "pvi_sf":
            return (0j, 1 + 0j)
        return (0j,)


def _pieces(kind: OdeKind, t: complex, z: complex, z1: complex):
    """Everything the relation needs at one state.

    Returns (L, R, R_p, L_t, L_p, parts) with R_p = dR/dz', L_t = dL/dt,
    L_p = dL/dz' and parts the term magnitudes used for residual scaling.
    """
    t, z, z1 = complex(t), complex(z), complex(z1)
    if kind.name == "pvi_sf":
        th0, tht, th1, thi = kind.params.as_tuple()
        c0 = (tht ** 2 - thi ** 2) * (th0 ** 2 - th1 ** 2) / 16
        roots = (0.25 * (tht + thi) ** 2, 0.25 * (tht - thi) ** 2,
                 0.25 * (th0 + th1) ** 2, 0.25 * (th0 - th1) ** 2)
        a = t * (t - 1)
        b = 2 * z1 * (t * z1 - z) - z1 ** 2 - c0
        factors = [z1 + e for e in roots]
        p = factors[0] * factors[1] * factors[2] * factors[3]
        pp = sum(math.prod(factors[j] for j in range(4) if j != k) for k in range(4))
        bp = 4 * t * z1 - 2 * z - 2 * z1
        lead = z1 * a ** 2
        return (lead, b ** 2 - p, 2 * b * bp - pp,
                2 * a * (2 * t - 1) * z1, a ** 2,
                (abs(b) ** 2, abs(p)))
    if kind.name == "pv_sf":
        th0, th1, thi = kind.params.as_tuple()
        shift = 2 * th0 + thi
        roots = (0j, th0, (th0 - th1 + thi) / 2, (th0 + th1 + thi) / 2)
    else:
        shift = 0j
        roots = tuple(-v for v in kind.params.as_tuple())
    b = z - t * z1 + 2 * z1 ** 2 - shift * z1
    factors = [z1 - r for r in roots]
    p = factors[0] * factors[1] * factors[2] * factors[3]
    pp = sum(math.prod(factors[j] for j in range(4) if j != k) for k in range(4))
    bp = -t + 4 * z1 - shift
    return (t ** 2, -b ** 2 + 4 * p, -2 * b * bp + 4 * pp,
            2 * t, 0j,
            (abs(b) ** 2, 4 * abs(p)))


def residual(kind: OdeKind, t: complex, z: complex, z1: complex, z2: complex) -> complex:
    """The printed polynomial relation, exactly; zero on true solutions."""
    lead, r, *_ = _pieces(kind, t, z, z1)
    return lead * complex(z2) ** 2 + r


def residual_scaled(kind: OdeKind, t, z, z1, z2) -> float:
    """|relation| divided by the largest term magnitude (floored at 1)."""
    lead, r, _, _, _, parts = _pieces(kind, t, z, z1)
    f = lead * complex(z2) ** 2 + r
    scale = max(1.0, abs(lead) * abs(z2) ** 2, *parts)
    return abs(f) / scale


def residual_gradient(kind: OdeKind, t, z, z1, z2) -> tuple:
    """(dF/dt, dF/dz, dF/dz', dF/dz'') of the second-degree relation."""
    t, z, z1, z2 = complex(t), complex(z), complex(z1), complex(z2)
    lead, _, rp, lt, lp, _ = _pieces(kind, t, z, z1)
    if kind.name == "pvi_sf":
        th0, tht, th1, thi = kind.params.as_tuple()
        c0 = (tht ** 2 - thi ** 2) * (th0 ** 2 - th1 ** 2) / 16
        b = 2 * z1 * (t * z1 - z) - z1 ** 2 - c0
        ft = lt * z2 ** 2 + 4 * b * z1 ** 2
        fz = -4 * b * z1
    else:
        shift = (2 * kind.params.theta0 + kind.params.theta_inf
                 if kind.name == "pv_sf" else 0j)
        b = z - t * z1 + 2 * z1 ** 2 - shift * z1
        ft = lt * z2 ** 2 + 2 * b * z1
        fz = -2 * b
    return (ft, fz, lp * z2 ** 2 + rp, 2 * lead * z2)


def _check_turning(kind: OdeKind, t, z, z1, lead):
    # The leading coefficient is a product, so it vanishes only through one
    # factor: z' for the sixth form (t and t-1 are kept off zero by the path
    # guard), t itself for the fifth forms. Testing the factor instead of the
    # assembled product keeps legitimate tiny-but-nonzero leads usable.
    if kind.name == "pvi_sf":
        small = abs(z1) <= 1e-12 * max(1.0, abs(z))
    else:
        small = abs(t) <= 1e-12
    if small:
        raise TurningPointError(t, lead)


def third_derivative(kind: OdeKind, t, z, z1, z2) -> complex:
    """Explicit z''' of the once-differentiated relation; see module docstring."""
    z2 = complex(z2)
    lead, _, rp, lt, lp, _ = _pieces(kind, t, z, z1)
    _check_turning(kind, t, z, z1, lead)
    return -(lt * z2 + lp * z2 ** 2 + rp) / (2 * lead)


def solve_second_degree(kind: OdeKind, t, z, z1) -> tuple:
    """Both roots of the relation viewed as a quadratic in z''."""
    lead, r, *_ = _pieces(kind, t, z, z1)
    _check_turning(kind, t, z, z1, lead)
    root = cmath.sqrt(-r / lead)
    return (root, -root)


@dataclass(frozen=True)
class OdeSeed:
    """Initial data for integrate; curvature picks the z'' branch when set."""

    t: complex
    zeta: complex
    dzeta: complex
    curvature: complex | None = None


@dataclass(frozen=True)
class SigmaTrajectory:
    """Accepted integration nodes with values and constraint residuals.

    values holds (zeta, zeta') pairs; curvatures the z'' the integrator
    carried; residuals the scaled second-degree defect after any
    re-projection. Every accepted node obeys residual <= 100 * tolerance.
    """

    path: tuple
    values: tuple
    curvatures: tuple
    residuals: tuple
    tolerance: float

    def __len__(self) -> int:
        return len(self.path)

    @property
    def final(self) -> tuple:
        return (self.path[-1], *self.values[-1])

    def to_csv(self, dest) -> None:
        """Write nodes to dest (path string or writable file object)."""
        close = False
        if isinstance(dest, (str, bytes)):
            dest = open(dest, "w", newline="")
            close = True
        try:
            writer = csv.writer(dest)
            writer.writerow(["t_re", "t_im", "zeta_re", "zeta_im",
                             "dzeta_re", "dzeta_im", "residual"])
            for t, (z, z1), res in zip(self.path, self.values, self.residuals):
                writer.writerow([repr(t.real), repr(t.imag), repr(z.real),
                                 repr(z.imag), repr(z1.real), repr(z1.imag),
                                 repr(res)])
        finally:
            if close:
                dest.close()


def _segment_distance(a: complex, b: complex, p: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    s = ((p - a) * d.conjugate()).real / abs(d) ** 2
    s = min(1.0, max(0.0, s))
    return abs(a + s * d - p)


# Cash-Karp embedded 4(5) tableau
_CK_C = (0.0, 0.2, 0.3, 0.6, 1.0, 0.875)
_CK_A = (
    (),
    (0.2,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
)
_CK_B5 = (37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771)
_CK_B4 = (2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 0.25)


def integrate(kind: OdeKind, seed, path, tol: float = 1e-10,
              zeta2_hint: complex | None = None,
              max_step: float | None = None) -> SigmaTrajectory:
    """Integrate the third-order flow along straight segments through path.

    seed is an OdeSeed or a (t0, zeta0, zeta0') triple; the z'' branch at the
    seed is the second-degree root nearest zeta2_hint (or seed.curvature),
    defaulting to the principal root. path lists the waypoints to visit after
    t0; each segment must stay clear of the fixed singularities. The
    second-degree relation is re-checked at every accepted node and z''
    re-projected onto the nearest root when the scaled residual exceeds tol.
    """
    if isinstance(seed, OdeSeed):
        t0, z0, z10 = seed.t, seed.zeta, seed.dzeta
        if zeta2_hint is None:
            zeta2_hint = seed.curvature
    else:
        t0, z0, z10 = (complex(v) for v in seed)
    waypoints = [complex(w) for w in path]
    if not waypoints:
        raise ValueError("path must contain at least one waypoint")
    if waypoints[0] == t0:
        waypoints = waypoints[1:]
        if not waypoints:
            raise ValueError("path reduces to the seed point")
    legs = list(zip([t0] + waypoints[:-1], waypoints))
    for a, b in legs:
        for s in kind.singularities:
            if _segment_distance(a, b, s) < 1e-9:
                raise ValueError(f"path segment {a} -> {b} passes within 1e-9 "
                                 f"of the fixed singularity {s}")

    roots = solve_second_degree(kind, t0, z0, z10)
    if zeta2_hint is None:
        z2 = roots[0]
    else:
        z2 = min(roots, key=lambda r: abs(r - complex(zeta2_hint)))

    nodes = [t0]
    values = [(z0, z10)]
    curvatures = [z2]
    residuals = [residual_scaled(kind, t0, z0, z10, z2)]
    y = np.array([z0, z10, z2], dtype=complex)

    for a, b in legs:
        if a == b:
            continue
        dt = b - a

        def rhs(s: float, state: np.ndarray) -> np.ndarray:
            t = a + s * dt
            z3 = third_derivative(kind, t, state[0], state[1], state[2])
            return dt * np.array([state[1], state[2], z3], dtype=complex)

        s = 0.0
        h = 0.05
        if max_step is not None:
            h = min(h, max_step / abs(dt))
        while s < 1.0:
            last = h >= 1.0 - s
            if last:
                h = 1.0 - s
            k = [rhs(s, y)]
            for i in range(1, 6):
                yi = y + h * sum(aij * kj for aij, kj in zip(_CK_A[i], k))
                k.append(rhs(s + _CK_C[i] * h, yi))
            y5 = y + h * sum(bj * kj for bj, kj in zip(_CK_B5, k))
            y4 = y + h * sum(bj * kj for bj, kj in zip(_CK_B4, k))
            err = max(
                abs(d) / (tol + tol * max(abs(u), abs(v)))
                for d, u, v in zip(y5 - y4, y, y5)
            )
            if err <= 1.0:
                s = 1.0 if last else s + h
                y = y5
                t_node = b if last else a + s * dt
                res = residual_scaled(kind, t_node, *y)
                if res > tol:
                    pair = solve_second_degree(kind, t_node, y[0], y[1])
                    y[2] = min(pair, key=lambda r: abs(r - y[2]))
                    res = residual_scaled(kind, t_node, *y)
                nodes.append(t_node)
                values.append((complex(y[0]), complex(y[1])))
                curvatures.append(complex(y[2]))
                residuals.append(res)
            grow = 0.9 * err ** -0.2 if err > 0 else 5.0
            h *= min(5.0, max(0.2, grow))
            if max_step is not None:
                h = min(h, max_step / abs(dt))
            # the completed-leg dust step may legitimately leave h tiny
            if h < 1e-14 and s < 1.0:
                raise StepSizeUnderflowError(a + s * dt)

    return SigmaTrajectory(path=tuple(nodes), values=tuple(values),
                           curvatures=tuple(curvatures),
                           residuals=tuple(residuals), tolerance=tol)


def _cumulative_trapezoid(ts, fs):
    acc = 0j
    out = [0j]
    for i in range(1, len(ts)):
        acc += (fs[i - 1] + fs[i]) / 2 * (ts[i] - ts[i - 1])
        out.append(acc)
    return out


def tau_reconstruct(trajectory: SigmaTrajectory, kind: OdeKind,
                    anchor_value: complex = 1.0) -> list:
    """Rebuild the tau-like function along the trajectory by log-integration.

    For jmo_pv the integrand is u(y)/y with u recovered from h by the affine
    bulk shift, anchored at y = 0 where u must vanish (the average is 1
    there); the root parameters must be ordered as bulk_okamoto_params emits
    them, mu-pair first. For the sixth and fifth forms the integrand is the
    tau log-derivative recovered by inverting the affine sigma map, anchored
    at the first node with value anchor_value.
    """
    anchor_value = complex(anchor_value)
    ts = [complex(t) for t in trajectory.path]
    if kind.name == "jmo_pv":
        v = kind.params
        mu = (v.v1 - v.v2) / 2
        half_sum = v.v3 + v.v4  # equals i omega2
        om1 = (v.v3 - v.v4) / 2
        slope = -half_sum / 2
        intercept = half_sum ** 2 / 2 - 2 * mu * om1
        us = [z + slope * t + intercept
              for t, (z, _) in zip(ts, trajectory.values)]
        du0 = trajectory.values[0][1] + slope
        # Linear extrapolation of u back to 0; for an integrable anchor it
        # vanishes up to the curvature of u over the first node, so this is a
        # coarse relative guard against u(0) != 0, not a precision check.
        u_at_zero = us[0] - ts[0] * du0
        if abs(u_at_zero) > 0.05 * max(abs(us[0]), abs(ts[0] * du0)):
            raise NonIntegrableAnchorError(
                f"u(0) ~ {u_at_zero} != 0: integrand u/y is not integrable "
                "at the anchor")
        # integrand at the anchor is the limit u'(0), estimated at the first node
        fs = [du0] + [u / t for u, t in zip(us, ts)]
        cum = _cumulative_trapezoid([0j] + ts, fs)
        return [(0j, anchor_value)] + [
            (t, anchor_value * cmath.exp(c)) for t, c in zip(ts, cum[1:])]

    if kind.name == "pvi_sf":
        th0, tht, th1, thi = kind.params.as_tuple()
        def dlog(t, z):
            return ((z - (tht ** 2 - thi ** 2) / 4 * t
                     + (tht ** 2 + th0 ** 2 - thi ** 2 - th1 ** 2) / 8)
                    / (t * (t - 1)))
    else:
        th0, th1, thi = kind.params.as_tuple()
        def dlog(t, z):
            return (z - (th0 + thi) / 2 * t - ((th0 + thi) ** 2 - th1 ** 2) / 4) / t
    fs = [dlog(t, z) for t, (z, _) in zip(ts, trajectory.values)]
    cum = _cumulative_trapezoid(ts, fs)
    return [(t, anchor_value * cmath.exp(c)) for t, c in zip(ts, cum)]


def seed_vi(theta: ThetaVI, expansion: BoundaryExpansion, t: complex) -> OdeSeed:
    """Seed the sixth-system form from a boundary expansion at variable value t.

    The expansion variable must be the same variable the ODE is integrated
    in; for an expansion about the other fixed singularity the caller works
    in the flipped frame throughout.
    """
    t = complex(t)
    l1, l2, l3 = expansion.log_derivatives(t, 3)
    tht, thi = theta.theta_t, theta.theta_inf
    quarter = (tht ** 2 - thi ** 2) / 4
    zeta = sigma_from_logderiv_vi(t, l1, theta)
    dzeta = (2 * t - 1) * l1 + t * (t - 1) * l2 + quarter
    curv = 2 * l1 + 2 * (2 * t - 1) * l2 + t * (t - 1) * l3
    return OdeSeed(t, zeta, dzeta, curv)


def seed_v(theta: ThetaV, expansion: BoundaryExpansion, t: complex) -> OdeSeed:
    t = complex(t)
    l1, l2, l3 = expansion.log_derivatives(t, 3)
    half = (theta.theta0 + theta.theta_inf) / 2
    zeta = sigma_from_logderiv_v(t, l1, theta)
    dzeta = l1 + t * l2 + half
    curv = 2 * l2 + t * l3
    return OdeSeed(t, zeta, dzeta, curv)


def seed_bulk(p: SSEParams, expansion: BoundaryExpansion, x: complex) -> OdeSeed:
    """Seed the alternative fifth form from the bulk expansion at x."""
    x = complex(x)
    l1, l2, l3 = expansion.log_derivatives(x, 3)
    intercept = h_to_u(0.0, 0.0, p)
    slope = h_to_u(1.0, 0.0, p) - intercept
    u, du = x * l1, l1 + x * l2
    return OdeSeed(x, u - slope * x - intercept, du - slope, 2 * l2 + x * l3)


def suggest_seed_radius(series: TauSeries, target: float = 1e-10) -> float:
    """Radius where the next-term magnitude estimate reaches target.

    The first omitted coefficient is estimated by the largest kept one from
    a positive-exponent term, so this is a balance heuristic, not a bound.
    """
    rem = series.remainder_exponent.real
    if rem <= 0:
        raise ValueError("series remainder exponent must have positive real part")
    scale = max((abs(c) for e, c in series.terms if e.real > 0), default=1.0)
    if scale == 0:
        scale = 1.0
    return float((target / scale) ** (1.0 / rem))
