"""Independent numerical routes to the spectrum-singularity average.

Other layers predict the N point circular average through series or ODE
integration. This module recomputes the same numbers from the defining
integrals, sharing no code with those layers. Three routes:

  * Toeplitz: the average equals det[c_{j-k}] over the weight's Fourier
    coefficients (Heine), each coefficient from adaptive panel quadrature
    of w(theta) e^{-ik theta}.
  * Direct: for N <= 3, the literal N fold angular integral with the
    squared Vandermonde factor, as a tensor-product rule. Slow and simple
    on purpose; this is the oracle the Toeplitz route is checked against.
  * Fredholm: det(I - xi K) for the sine kernel sin(x-y)/(pi (x-y)) on
    (-t, t) by Gauss-Legendre Nystrom discretization, the expected bulk
    scaling limit of the normalized average. A Richardson harness in 1/N
    connects the two.

Quadrature notes. The weight has algebraic singularities at the arc ends
theta = +-pi (exponent 2 omega_1) and at the angle where 1 + t z vanishes
(exponent 2 mu); on the defining circle the modified measure also jumps
there. Panels split at these angles and each panel maps to (0, 1) under a
tanh-sinh substitution, which handles endpoint singularities of any
integrable exponent. Nodes are never formed by subtracting nearly equal
angles: every node carries exact distances to both panel ends, and the
singular factors are evaluated as trigonometric functions of those
distances, so precision survives where the integrand varies fastest.

For |t| < 1 the coefficients are the radial-in-t analytic continuation of
the on-circle ones. Writing the second factor as a power of 2 sin(zeta),
with zeta a complex half-angle whose real part is kept inside [0, pi/2]
through the complementary-angle identity, pins the base to the closed
right half plane, so the principal power is the correct continuation on
both sides of the wrap angle pi - Re phi; the two sides differ by exactly
the phase jump the continued power must carry across the cut that lands
on the contour there. The subtracted arc of the modified measure becomes
a straight leg from pi - phi to pi in the complex angle plane with the
same sine structure. On the circle all of this collapses back to the
real-modulus weight.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .complexfn import barnes_prefactor
from .monodromy_vi import SSEParams

__all__ = [
    "QuadratureError",
    "WeightSpec",
    "FredholmSpec",
    "BulkLimitResult",
    "weight_eval",
    "fourier_coeff",
    "fourier_table",
    "toeplitz_an",
    "quad_oracle_an",
    "fredholm_sine",
    "fredholm_log_derivatives",
    "bulk_limit_an",
]

_TWO_PI = 2.0 * math.pi
_HALF_PI = 0.5 * math.pi
_TS_TAU_MAX = 6.0
_CHUNK_ROWS = 8192


class QuadratureError(RuntimeError):
    """Refinement stopped before reaching the requested accuracy."""

    def __init__(self, message: str, achieved: float, target: float):
        self.achieved = float(achieved)
        self.target = float(target)
        super().__init__(
            f"{message}: achieved {achieved:.3e}, target {target:.3e}")


@dataclass(frozen=True)
class WeightSpec:
    """Circular weight with one fixed and one movable singular point.

    t = e^{i phi} places the movable point; |t| = 1 is the defining
    circle and |t| < 1 is read as the radial analytic continuation into
    the disc. Integrability of the exponents is enforced by SSEParams
    itself, so constructing the parameter set is the error path for
    non-integrable weights.
    """

    p: SSEParams
    t: complex = 1.0 + 0.0j

    def __post_init__(self):
        tt = complex(self.t)
        if tt == 0 or abs(tt) > 1.0 + 1e-12:
            raise ValueError("t must lie in the closed unit disc, not at 0")

    def phase(self) -> complex:
        """Angle phi with t = e^{i phi}, Re phi in [0, 2 pi), Im phi >= 0
        inside the disc.

        A modulus within 1e-12 of 1 snaps onto the circle so the phase
        comes out exactly real. Rounding noise in |t| would otherwise
        regularize the singular points at a ~1e-16 angular scale, which
        for negative exponents shifts integrals at the (1e-16)^(1+2a)
        level, far above quadrature accuracy.
        """
        tt = complex(self.t)
        if abs(abs(tt) - 1.0) <= 1e-12:
            phi = complex(cmath.phase(tt), 0.0)
        else:
            phi = -1j * cmath.log(tt)
        if phi.real < 0.0:
            phi += _TWO_PI
        return phi


def _wrap_angle(a: float) -> float:
    """Reduce a real angle to (-pi, pi]."""
    r = math.remainder(a, _TWO_PI)
    if r <= -math.pi:
        r += _TWO_PI
    return r


# ---------------------------------------------------------------------------
# tanh-sinh machinery


@lru_cache(maxsize=None)
def _ts_new_nodes(level: int):
    """Nodes joining the tanh-sinh rule on (0, 1) at this level.

    Returns (d0, d1, w): distances to the endpoints 0 and 1, each formed
    without cancellation, and the substitution weight. Level 0 is the
    full coarse rule; level l > 0 holds only the odd multiples of its
    step, so the union over levels 0..l is the complete rule at step
    2^-l.
    """
    h = 0.5 ** level
    if level == 0:
        tau = np.arange(-int(_TS_TAU_MAX), int(_TS_TAU_MAX) + 1, dtype=float)
    else:
        top = int(math.floor(_TS_TAU_MAX / h))
        j = np.arange(-top, top + 1)
        tau = (j * h)[j % 2 != 0]
    y = _HALF_PI * np.sinh(tau)
    e = np.exp(-2.0 * np.abs(y))
    near = e / (1.0 + e)
    far = 1.0 / (1.0 + e)
    d0 = np.where(tau < 0.0, near, far)
    d1 = np.where(tau < 0.0, far, near)
    w = math.pi * np.cosh(tau) * near * far
    return d0, d1, w


def _ts_full_rule(level: int):
    """Complete tanh-sinh rule at the given level, weights included."""
    parts = [_ts_new_nodes(k) for k in range(level + 1)]
    d0 = np.concatenate([p[0] for p in parts])
    d1 = np.concatenate([p[1] for p in parts])
    w = np.concatenate([p[2] for p in parts]) * (0.5 ** level)
    return d0, d1, w


def _integrate_01(f, tol: float, max_level: int = 11, min_level: int = 4):
    """Adaptive tanh-sinh integration of a vector integrand over (0, 1).

    f(d0, d1) -> (len(d0), K) samples, with d0 and d1 the nodes' exact
    distances to the interval ends. Halves the step until the level to
    level change falls below tol (absolute, max over components).

    The substitution reaches endpoint distances ~exp(-pi sinh(tau_max)),
    which is plenty for any fixed integrable exponent, but exponents
    within a few hundredths of -1 decay so slowly that the tail past the
    node range would go missing silently. The outermost summand is
    checked before a converged value is reported; a non-negligible edge
    turns into QuadratureError instead of a quiet deficit.
    """
    total = None
    prev = None
    err = math.inf
    for level in range(max_level + 1):
        d0, d1, w = _ts_new_nodes(level)
        part = None
        for lo in range(0, len(w), _CHUNK_ROWS):
            sl = slice(lo, lo + _CHUNK_ROWS)
            block = w[sl] @ f(d0[sl], d1[sl])
            part = block if part is None else part + block
        total = part if total is None else total + part
        cur = (0.5 ** level) * total
        if prev is not None:
            err = float(np.max(np.abs(cur - prev)))
            if level >= min_level and err <= tol:
                ends = np.array([0, -1])
                edge = float(np.max(np.abs(
                    w[ends, None] * f(d0[ends], d1[ends]))))
                if edge > 1e3 * tol:
                    raise QuadratureError(
                        "endpoint decay too slow for the node range",
                        edge, tol)
                return cur, err
        prev = cur
    raise QuadratureError("tanh-sinh refinement stalled", err, tol)


# ---------------------------------------------------------------------------
# weight and Fourier coefficients


def weight_eval(w: WeightSpec, theta: float) -> complex:
    """Pointwise weight at a real angle theta in (-pi, pi].

    Moduli raised to principal powers, times e^{omega_2 theta}, times
    (1 - xi*) on the subtracted arc (pi - phi, pi). A probe for plots and
    the direct oracle; the Fourier path below never calls it.
    """
    return complex(_weight_values(w, np.asarray([float(theta)]))[0])


def _weight_values(w: WeightSpec, theta: np.ndarray) -> np.ndarray:
    p = w.p
    phi = w.phase()
    base1 = np.abs(2.0 * np.cos(0.5 * theta))
    alpha = theta + phi.real
    alpha = np.where(alpha > math.pi, alpha - _TWO_PI, alpha)
    if phi.imag == 0.0:
        base2 = np.abs(2.0 * np.cos(0.5 * alpha))
    else:
        base2 = np.abs(1.0 + complex(w.t) * np.exp(1j * theta))
    with np.errstate(divide="ignore", invalid="ignore"):
        logw = (p.omega2 * theta
                + (2.0 * p.omega1) * np.log(base1)
                + (2.0 * p.mu) * np.log(base2))
        vals = np.exp(logw)
    jump = (theta > math.pi - phi.real) & (theta < math.pi)
    return np.where(jump, (1.0 - p.xi_star) * vals, vals + 0j)


def _arc_panels(phi: complex):
    """Split (-pi, pi) at the wrap angle of the continued second factor.

    Returns (a, b, wrapped) panels. A wrap angle within 1e-12 of the arc
    ends is snapped onto them, leaving a single panel.
    """
    star = _wrap_angle(math.pi - phi.real)
    if math.pi - abs(star) <= 1e-12:
        return [(-math.pi, math.pi, star < 0.0)]
    return [(-math.pi, star, False), (star, math.pi, True)]


def _arc_integrand(p: SSEParams, phi: complex, panel, ks: np.ndarray):
    """Continued weight times e^{-ik theta} on one main-arc panel.

    The first singular base is 2 sin of half the distance to the nearer
    arc end. The second is 2 sin(zeta) with zeta the half-angle measured
    from the wrap point, +i Im(phi)/2 on the wrapped side and -i Im(phi)/2
    on the other; whenever Re(zeta) exceeds pi/2 the complementary form
    built from the opposite distance replaces it, so the argument of the
    sine is always resolved from the nearest zero of the base.
    """
    a, b, wrapped = panel
    width = b - a
    gap_pi = math.pi - b
    gap_mpi = a + math.pi
    re_phi, im_phi = phi.real, phi.imag
    two_w1 = 2.0 * p.omega1
    two_mu = 2.0 * p.mu
    om2 = p.omega2

    def f(d0, d1):
        da = width * d0
        db = width * d1
        theta = a + da
        dist_pi = db + gap_pi
        dist_mpi = da + gap_mpi
        base1 = 2.0 * np.sin(0.5 * np.minimum(dist_pi, dist_mpi))
        if wrapped:
            prim = 0.5 * (da + 1j * im_phi)
            alt = 0.5 * ((dist_pi + (_TWO_PI - re_phi)) - 1j * im_phi)
        else:
            prim = 0.5 * (db - 1j * im_phi)
            alt = 0.5 * ((dist_mpi + re_phi) + 1j * im_phi)
        zeta = np.where(prim.real > _HALF_PI, alt, prim)
        base2 = 2.0 * np.sin(zeta)
        logw = om2 * theta + two_w1 * np.log(base1) + two_mu * np.log(base2)
        vals = np.exp(logw)
        return vals[:, None] * np.exp(-1j * np.outer(theta, ks))

    return f


def _leg_integrand(p: SSEParams, phi: complex, ks: np.ndarray):
    """Continued weight on the leg theta(u) = pi - (1 - u) phi, u in (0, 1).

    Both singular factors reduce to principal powers of 2 sin of complex
    half-angles whose real parts stay inside [0, pi), so no branch
    tracking is needed; on a real leg this is exactly the real-modulus
    weight restricted to the subtracted arc.
    """
    two_w1 = 2.0 * p.omega1
    two_mu = 2.0 * p.mu
    om2 = p.omega2

    def f(d0, d1):
        theta = math.pi - d1 * phi
        base1 = 2.0 * np.sin((0.5 * d1) * phi)
        base2 = 2.0 * np.sin((0.5 * d0) * phi)
        logw = om2 * theta + two_w1 * np.log(base1) + two_mu * np.log(base2)
        vals = np.exp(logw)
        return vals[:, None] * np.exp(-1j * np.outer(theta, ks))

    return f


def _fourier_block(w: WeightSpec, ks: np.ndarray, tol: float):
    """All requested coefficients in one pass. Returns (values, error)."""
    ks = np.asarray(ks, dtype=float)
    p = w.p
    phi = w.phase()
    xi = complex(p.xi_star)
    parts = []
    for panel in _arc_panels(phi):
        scale = complex((panel[1] - panel[0]) / _TWO_PI)
        parts.append((scale, _arc_integrand(p, phi, panel, ks)))
    if xi != 0 and phi != 0:
        scale = -xi * phi / _TWO_PI
        parts.append((scale, _leg_integrand(p, phi, ks)))
    total = np.zeros(ks.shape, dtype=complex)
    achieved = 0.0
    inner = tol / len(parts)
    for scale, f in parts:
        vals, err = _integrate_01(f, inner / max(abs(scale), 1e-3))
        total = total + scale * vals
        achieved += abs(scale) * err
    return total, achieved


def fourier_coeff(w: WeightSpec, k: int, tol: float = 1e-12) -> complex:
    """Coefficient (2 pi)^{-1} (int - xi* int_leg) w(theta) e^{-ik theta}.

    Absolute accuracy tol, by panel-split tanh-sinh refinement; raises
    QuadratureError (with the achieved error attached) if stalled.
    """
    vals, _ = _fourier_block(w, np.array([float(k)]), tol)
    return complex(vals[0])


def fourier_table(w: WeightSpec, kmax: int, tol: float = 1e-12,
                  return_error: bool = False):
    """Coefficients for k = -kmax .. kmax in a single quadrature pass."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    ks = np.arange(-kmax, kmax + 1, dtype=float)
    vals, err = _fourier_block(w, ks, tol)
    if return_error:
        return vals, err
    return vals


# ---------------------------------------------------------------------------
# Toeplitz route and direct oracle


def toeplitz_an(p: SSEParams, t: complex, tol: float = 1e-12) -> complex:
    """N point average as the Toeplitz determinant det[c_{j-k}].

    Dense LU with partial pivoting on the N x N matrix of coefficients;
    N = 0 gives 1. Dimension is capped at 64: per-coefficient adaptive
    quadrature is deliberate (endpoint singularities and the measure jump
    defeat uniform-grid spectral methods), and beyond that cap its cost
    buys nothing this library needs.
    """
    n = int(p.N)
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if n > 64:
        raise ValueError("Toeplitz dimension capped at 64")
    if n == 0:
        return 1.0 + 0.0j
    c = fourier_table(WeightSpec(p=p, t=t), n - 1, tol=tol)
    idx = (n - 1) + (np.arange(n)[:, None] - np.arange(n)[None, :])
    return complex(np.linalg.det(c[idx]))


def quad_oracle_an(p: SSEParams, t: complex, rtol: float = 1e-9) -> complex:
    """Literal N fold angular integral, N <= 3, on the defining circle.

    Tensor-product tanh-sinh rule over the real angles with the modified
    measure applied per coordinate and the squared Vandermonde factor
    2 - 2 cos(theta_j - theta_k) written in. Two refinement levels must
    agree to rtol before a value is accepted; one escalation is tried,
    then QuadratureError. Kept independent of the Fourier machinery: no
    complex legs, no continued weight, just the real-modulus integrand.
    """
    tt = complex(t)
    if abs(abs(tt) - 1.0) > 1e-12:
        raise ValueError("direct oracle is defined on the unit circle only")
    n = int(p.N)
    if n < 0 or n > 3:
        raise ValueError("direct oracle handles N in 0..3")
    if n == 0:
        return 1.0 + 0.0j
    phi_r = WeightSpec(p=p, t=tt).phase().real
    panels = _arc_panels(phi_r + 0j)
    jump = 1.0 - p.xi_star

    def nodes(level):
        thetas, weights = [], []
        for a, b, wrapped in panels:
            d0, d1, wq = _ts_full_rule(level)
            width = b - a
            da, db = width * d0, width * d1
            theta = a + da
            dist_pi = db + (math.pi - b)
            dist_mpi = da + (a + math.pi)
            base1 = 2.0 * np.sin(0.5 * np.minimum(dist_pi, dist_mpi))
            if wrapped:
                arg2 = np.minimum(da, dist_pi + (_TWO_PI - phi_r))
            else:
                arg2 = np.minimum(db, dist_mpi + phi_r)
            base2 = 2.0 * np.sin(0.5 * arg2)
            logw = (p.omega2 * theta
                    + (2.0 * p.omega1) * np.log(base1)
                    + (2.0 * p.mu) * np.log(base2))
            wt = np.exp(logw) * (width / _TWO_PI) * wq
            if wrapped:
                wt = wt * jump
            thetas.append(theta)
            weights.append(wt)
        return np.concatenate(thetas), np.concatenate(weights)

    def value(level):
        theta, u = nodes(level)
        if np.iscomplexobj(u) and not np.any(u.imag):
            u = u.real
        if n == 1:
            return complex(np.sum(u))
        dmat = 2.0 - 2.0 * np.cos(theta[:, None] - theta[None, :])
        if n == 2:
            return complex(0.5 * (u @ dmat @ u))
        v = u[:, None] * dmat
        diag = np.einsum("ac,ac->c", v, dmat @ v)
        return complex((u @ diag) / 6.0)

    low, high = 5, 6
    for _ in range(2):
        v_low = value(low)
        v_high = value(high)
        diff = abs(v_high - v_low)
        if diff <= rtol * max(abs(v_high), 1e-30):
            return v_high
        low, high = high, high + 1
    raise QuadratureError("direct oracle levels disagree",
                          diff / max(abs(v_high), 1e-30), rtol)


# ---------------------------------------------------------------------------
# sine-kernel Fredholm determinant


@dataclass(frozen=True)
class FredholmSpec:
    """Gap determinant request: interval (-t, t), coupling xi, m nodes."""

    t: float
    xi: complex = 1.0
    m: int = 80

    def __post_init__(self):
        if isinstance(self.t, complex) or not (float(self.t) > 0.0):
            raise ValueError("half-width t must be a positive real")
        if int(self.m) < 10:
            raise ValueError("need at least 10 quadrature nodes")


@lru_cache(maxsize=64)
def _gl_rule(m: int):
    return np.polynomial.legendre.leggauss(m)


def _sine_kernel(t, m: int):
    """Symmetrized Nystrom matrix of sin(t(u-v))/(pi(u-v)) on (-1, 1)."""
    x, w = _gl_rule(m)
    d = x[:, None] - x[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.sin(t * d) / (math.pi * d)
    np.fill_diagonal(k, t / math.pi)
    sq = np.sqrt(w)
    return k * np.outer(sq, sq)


def fredholm_sine(spec: FredholmSpec):
    """det(I - xi K) on (-t, t) for the kernel sin(x-y)/(pi(x-y)).

    Rescaled to (-1, 1), where the kernel is sin(t(u-v))/(pi(u-v)) with
    diagonal t/pi. Convergence in m is exponential; doubling m is the
    error check. Returns float for real xi.
    """
    a = _sine_kernel(float(spec.t), int(spec.m))
    xi = complex(spec.xi)
    if xi.imag == 0.0:
        return float(np.linalg.det(np.eye(spec.m) - xi.real * a))
    return complex(np.linalg.det(np.eye(spec.m, dtype=complex) - xi * a))


def fredholm_log_derivatives(t: complex, xi: complex = 1.0, m: int = 140):
    """(log E, d log E/dt, d2, d3) for the sine-kernel determinant.

    Resolvent-trace identities rather than finite differences. The
    half-width may be complex here (the determinant is entire in t, and
    the sigma-form chain needs it on the imaginary axis); the gap wrapper
    above keeps its positive-real contract.
    """
    m = int(m)
    x, w = _gl_rule(m)
    d = x[:, None] - x[None, :]
    sq = np.outer(np.sqrt(w), np.sqrt(w))
    td = t * d
    with np.errstate(divide="ignore", invalid="ignore"):
        k0 = np.sin(td) / (math.pi * d)
    np.fill_diagonal(k0, t / math.pi)
    a0 = k0 * sq
    a1 = (np.cos(td) / math.pi) * sq
    a2 = (-np.sin(td) * d / math.pi) * sq
    a3 = (-np.cos(td) * d * d / math.pi) * sq
    xi = complex(xi)
    mat = np.eye(m, dtype=complex) - xi * a0
    sign, logabs = np.linalg.slogdet(mat)
    loge = complex(logabs) + cmath.log(complex(sign))
    r = np.linalg.solve(mat, np.eye(m, dtype=complex))
    b1, b2, b3 = r @ a1, r @ a2, r @ a3
    l1 = -xi * np.trace(b1)
    l2 = -xi * (xi * np.trace(b1 @ b1) + np.trace(b2))
    l3 = -xi * (2.0 * xi * xi * np.trace(b1 @ b1 @ b1)
                + 3.0 * xi * np.trace(b1 @ b2) + np.trace(b3))
    return loge, complex(l1), complex(l2), complex(l3)


# ---------------------------------------------------------------------------
# bulk limit harness


@dataclass(frozen=True)
class BulkLimitResult:
    """Normalized averages along t = exp(-x/N) and their extrapolation."""

    x: complex
    n_values: tuple
    normalized: tuple
    extrapolant: complex
    observed_order: float
    richardson_diff: float


def bulk_limit_an(x: complex, p: SSEParams, n_list,
                  tol: float = 1e-12) -> BulkLimitResult:
    """Drive the Toeplitz route toward the bulk scaling limit.

    For each N the average at t = exp(-x/N) is divided by its own t -> 1
    value (the product of gamma factors), so x = 0 normalizes to exactly 1
    and the N -> infinity limit is the bulk determinant. The extrapolation
    is a Neville table in 1/N evaluated at 0; no convergence rate is
    assumed. observed_order reports the empirical leading power fitted
    from successive differences (nan with fewer than three dimensions),
    and richardson_diff the change from the table's last column, as a
    stability handle.
    """
    ns = sorted({int(n) for n in n_list})
    if not ns:
        raise ValueError("need at least one matrix dimension")
    if ns[0] < 1 or ns[-1] > 64:
        raise ValueError("dimensions must lie in 1..64")
    xx = complex(x)
    vals = []
    for n in ns:
        pn = replace(p, N=n)
        tn = cmath.exp(-xx / n)
        det = toeplitz_an(pn, tn, tol=tol)
        vals.append(det / barnes_prefactor(n, p.mu, p.omega1, p.omega2))
    hs = [1.0 / n for n in ns]
    work = list(vals)
    diag = [work[-1]]
    for mcol in range(1, len(ns)):
        for i in range(len(ns) - 1, mcol - 1, -1):
            work[i] = ((hs[i - mcol] * work[i] - hs[i] * work[i - 1])
                       / (hs[i - mcol] - hs[i]))
        diag.append(work[-1])
    rich = abs(diag[-1] - diag[-2]) if len(diag) >= 2 else math.nan
    order = math.nan
    if len(ns) >= 3:
        fits = []
        for i in range(len(ns) - 2):
            lo = abs(vals[i + 1] - vals[i])
            hi = abs(vals[i + 2] - vals[i + 1])
            if lo > 0.0 and hi > 0.0:
                fits.append(math.log(lo / hi) / math.log(hs[i] / hs[i + 1]))
        if fits:
            order = sum(fits) / len(fits)
    return BulkLimitResult(
        x=xx,
        n_values=tuple(ns),
        normalized=tuple(complex(v) for v in vals),
        extrapolant=complex(diag[-1]),
        observed_order=float(order),
        richardson_diff=float(rich),
    )
