"""Adaptive Gauss-Kronrod quadrature for contour and singular-endpoint work.

One engine drives everything: a G7/K15 panel rule over a worklist of
parametrized legs, splitting whichever panel currently carries the worst
error estimate until the summed estimate meets an absolute tolerance or
the panel budget runs out.  Legs can be straight complex segments,
circular arcs, or real intervals whose integrable endpoint singularities
``(x - a)**(-alpha)`` (0 < alpha < 1) have been removed analytically by
the substitution ``s = (x - a)**(1 - alpha)``.
"""

from __future__ import annotations

import cmath
import heapq
import math
from typing import Callable, Sequence

from .errors import ConvergenceError

# Default numerical policy: desk-scale accuracy, generous budget.
DEFAULT_TOL = 1e-9
MAX_PANELS = 2 ** 14

# 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_WG = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)


def _panel(g, a: float, b: float):
    """K15 value and |K15 - G7| estimate of ``g`` over [a, b]."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = g(center)
    resk = _WGK[7] * fc
    resg = _WG[3] * fc
    for j in range(7):
        dx = half * _XGK[j]
        fsum = g(center - dx) + g(center + dx)
        resk += _WGK[j] * fsum
        if j % 2 == 1:
            resg += _WG[j // 2] * fsum
    resk *= half
    resg *= half
    return resk, abs(resk - resg)


class QuadResult:
    __slots__ = ("value", "error", "panels")

    def __init__(self, value, error, panels):
        self.value = value
        self.error = error
        self.panels = panels


def integrate_legs(legs: Sequence[tuple[Callable[[float], complex], float, float]],
                   tol: float = DEFAULT_TOL,
                   max_panels: int = MAX_PANELS) -> QuadResult:
    """Integrate a list of ``(g, a, b)`` legs to a shared absolute tolerance.

    Raises ConvergenceError carrying the partial QuadResult if the panel
    budget is exhausted first.
    """
    work = []  # (-err, seq, g, a, b, value, err)
    seq = 0
    panels = 0
    value_sum = 0.0 + 0.0j
    err_sum = 0.0
    for g, a, b in legs:
        if a == b:
            continue
        value, err = _panel(g, a, b)
        work.append((-err, seq, g, a, b, value, err))
        seq += 1
        panels += 1
        value_sum += value
        err_sum += err
    heapq.heapify(work)

    while True:
        if err_sum <= tol or not work:
            return QuadResult(value_sum, max(err_sum, 0.0), panels)
        # Roundoff floor: splitting cannot help once the worst panel's
        # estimate is at machine noise relative to the accumulated value.
        worst = -work[0][0]
        if worst <= 1e-16 * max(1.0, abs(value_sum)):
            return QuadResult(value_sum, max(err_sum, 0.0), panels)
        if panels >= max_panels:
            raise ConvergenceError(
                f"quadrature error {err_sum:.3e} > tol {tol:.3e} "
                f"after {panels} panels",
                partial=QuadResult(value_sum, err_sum, panels),
            )
        _, _, g, a, b, v_old, e_old = heapq.heappop(work)
        value_sum -= v_old
        err_sum -= e_old
        m = 0.5 * (a + b)
        if m == a or m == b:  # interval at float resolution; give up on it
            heapq.heappush(work, (0.0, seq, g, a, b, v_old, 0.0))
            seq += 1
            value_sum += v_old
            continue
        for lo, hi in ((a, m), (m, b)):
            v, e = _panel(g, lo, hi)
            heapq.heappush(work, (-e, seq, g, lo, hi, v, e))
            seq += 1
            panels += 1
            value_sum += v
            err_sum += e


def segment_leg(f, z0: complex, z1: complex):
    """Leg for ``integral of f along the straight segment z0 -> z1``."""
    dz = z1 - z0

    def g(t: float) -> complex:
        return f(z0 + t * dz) * dz

    return (g, 0.0, 1.0)


def arc_leg(f, center: complex, radius: float, phi0: float, phi1: float):
    """Leg for ``f`` along the circular arc ``center + radius*e^{i phi}``."""
    dphi = phi1 - phi0

    def g(t: float) -> complex:
        phi = phi0 + t * dphi
        e = complex(math.cos(phi), math.sin(phi))
        return f(center + radius * e) * (1j * radius * dphi) * e

    return (g, 0.0, 1.0)


def transformed_left_leg(rest, a: float, b: float, alpha: float):
    """Leg for ``int_a^b (x-a)^(-alpha) rest(x) dx`` with 0 < alpha < 1.

    ``rest`` must be smooth on [a, b].  Under ``s = (x-a)^(1-alpha)`` the
    integrand becomes ``rest(a + s^(1/beta)) / beta`` with beta = 1-alpha,
    which is bounded at s = 0.
    """
    beta = 1.0 - alpha
    inv_beta = 1.0 / beta
    s_hi = (b - a) ** beta

    def g(s: float) -> complex:
        x = a + s ** inv_beta if s > 0.0 else a
        return rest(x) * inv_beta

    return (g, 0.0, s_hi)


def transformed_right_leg(rest, a: float, b: float, alpha: float):
    """Mirror of `transformed_left_leg` for a singularity at ``b``."""
    beta = 1.0 - alpha
    inv_beta = 1.0 / beta
    s_hi = (b - a) ** beta

    def g(s: float) -> complex:
        x = b - s ** inv_beta if s > 0.0 else b
        return rest(x) * inv_beta

    return (g, 0.0, s_hi)


def plain_leg(f, a: float, b: float):
    return (f, a, b)


def endpoint_substituted_leg(f, z0: complex, z1: complex, alpha: float):
    """Leg for ``int f dz`` along the segment z0 -> z1 when ``f`` carries an
    integrable ``|z - z1|**(-alpha)`` singularity at the far endpoint.

    ``u = (1-t)**(1-alpha)`` in the segment parameter removes it; the
    blow-up of ``f`` is compensated by the vanishing Jacobian factor, and
    interior quadrature nodes never touch u = 0.
    """
    beta = 1.0 - alpha
    inv_beta = 1.0 / beta
    d = z1 - z0

    def g(u: float) -> complex:
        zeta = z1 - (u ** inv_beta) * d
        return f(zeta) * d * inv_beta * u ** (inv_beta - 1.0)

    return (g, 0.0, 1.0)


def circle_crossings(z0: complex, z1: complex, c: float, r: float):
    """Parameters t in (0,1) where the segment z0->z1 crosses |z - c| = r,
    or None when it stays outside (c is a point on the real axis)."""
    d = z1 - z0
    a2 = abs(d) ** 2
    if a2 == 0.0:
        return None
    w = z0 - c
    b = 2.0 * (w.real * d.real + w.imag * d.imag)
    c0 = abs(w) ** 2 - r * r
    disc = b * b - 4.0 * a2 * c0
    if disc <= 0.0:
        return None
    sq = math.sqrt(disc)
    t_in = (-b - sq) / (2.0 * a2)
    t_out = (-b + sq) / (2.0 * a2)
    if t_out <= 0.0 or t_in >= 1.0:
        return None
    return t_in, t_out


def detoured_segment(f, z0: complex, z1: complex, centers, radius: float,
                     sigma: int):
    """Legs and report waypoints for the straight segment z0 -> z1 with
    circular detours around listed real-axis points it passes too close to.

    Detours bulge into the ``sigma`` half-plane (+1 upper, -1 lower).  A
    near-approach that contains one of the segment's own endpoints is left
    alone: there the approach is intentional (an integrable endpoint) and
    adaptive refinement absorbs it.
    """
    events = []
    for c in centers:
        hit = circle_crossings(z0, z1, c, radius)
        if hit is None:
            continue
        t_in, t_out = hit
        if t_in <= 0.0 or t_out >= 1.0:
            continue
        events.append((t_in, t_out, c))
    if not events:
        return [segment_leg(f, z0, z1)], [z0, z1]
    events.sort()
    merged = [list(events[0])]
    for t_in, t_out, c in events[1:]:
        if t_in <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], t_out)
        else:
            merged.append([t_in, t_out, c])
    legs = []
    waypoints = [z0]
    d = z1 - z0
    t_prev = 0.0
    for t_in, t_out, c in merged:
        q_in = z0 + t_in * d
        q_out = z0 + t_out * d
        legs.append(segment_leg(f, z0 + t_prev * d, q_in))
        phi_in = math.atan2(q_in.imag, q_in.real - c)
        phi_out = math.atan2(q_out.imag, q_out.real - c)
        delta = math.remainder(phi_out - phi_in, 2.0 * math.pi)
        mid = phi_in + 0.5 * delta
        if sigma * math.sin(mid) < 0.0:
            delta += -2.0 * math.pi if delta > 0.0 else 2.0 * math.pi
        legs.append(arc_leg(f, complex(c, 0.0), radius, phi_in, phi_in + delta))
        apex = complex(c, 0.0) + radius * cmath.exp(1j * (phi_in + 0.5 * delta))
        waypoints.extend((q_in, apex, q_out))
        t_prev = t_out
    legs.append(segment_leg(f, z0 + t_prev * d, z1))
    waypoints.append(z1)
    return legs, waypoints


def quad_endpoint_singular(rest_left, rest_right, a: float, b: float,
                           alpha_a: float, alpha_b: float,
                           tol: float = DEFAULT_TOL,
                           max_panels: int = MAX_PANELS) -> QuadResult:
    """``int_a^b (x-a)^(-alpha_a) (b-x)^(-alpha_b) g(x) dx`` for integrable
    endpoint powers (alpha < 1; non-positive alphas mean no singularity).

    ``rest_left(x)`` must equal the integrand times ``(x-a)^alpha_a`` (i.e.
    everything except the left singular factor) and be smooth on [a, m];
    ``rest_right`` likewise on [m, b].
    """
    if alpha_a >= 1.0 or alpha_b >= 1.0:
        raise ValueError("non-integrable endpoint exponent")
    m = 0.5 * (a + b)
    legs = []
    if alpha_a > 0.0:
        legs.append(transformed_left_leg(rest_left, a, m, alpha_a))
    else:
        def f_left(x, _g=rest_left, _a=a, _al=alpha_a):
            return _g(x) * (x - _a) ** (-_al)
        legs.append(plain_leg(f_left, a, m))
    if alpha_b > 0.0:
        legs.append(transformed_right_leg(rest_right, m, b, alpha_b))
    else:
        def f_right(x, _g=rest_right, _b=b, _al=alpha_b):
            return _g(x) * (_b - x) ** (-_al)
        legs.append(plain_leg(f_right, m, b))
    return integrate_legs(legs, tol, max_panels)
