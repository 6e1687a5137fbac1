"""SC map specifications and their numerical evaluation.

An `SCSpec` pins a map through its derivative
``C / prod (z - x_i)**k_i`` plus an additive constant ``kay``.  From it
this module computes the derivative itself, the contour type, the full
boundary skeleton of either half-plane (vertex positions, turn angles,
segment lengths, end-ray data), and values of the map anywhere off the
real axis by adaptive contour quadrature.

Boundary conventions
--------------------
The image of the real interval beyond the last prevertex is shared by the
upper and lower half-plane images (all factor angles vanish there), so
both skeletons are glued to the same reference value on that interval.
With the default (no anchor) convention the first finite vertex of the
upper image sits at ``kay``; gallery entries instead pass an anchor pair
``(z0, w0)`` tying the skeleton to their closed form.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from . import quadrature
from .errors import ArgumentError, ConvergenceError, DomainError, SingularPointError
from .kernel import LOWER, UPPER, principal_angle, signed_angle, wrap_principal

TYPE_EQ_TOL = 1e-12
CLEARANCE = 1e-8  # minimum prevertex distance kept by complex paths


class HalfPlane(Enum):
    """Which side of the real axis a boundary image belongs to."""

    UPPER = +1
    LOWER = -1

    @property
    def sign(self) -> int:
        return self.value


class ContourType(Enum):
    """Boundary-image taxonomy by |sum k_i|: <1, =1, in (1,2), =2."""

    A = "a"
    B = "b"
    C = "c"
    D = "d"


@dataclass(frozen=True)
class PreVertex:
    """A real singular point ``x`` of the derivative with exponent ``k``."""

    x: float
    k: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.k)):
            raise DomainError(f"prevertex fields must be finite, got {self!r}")
        if abs(self.k) > 2.0:
            raise DomainError(f"|k| = {abs(self.k)!r} exceeds 2")


@dataclass(frozen=True)
class SCSpec:
    """Derivative constant ``c``, map constant ``kay``, ordered prevertices."""

    c: complex = 1.0 + 0.0j
    kay: complex = 0.0 + 0.0j
    prevertices: tuple[PreVertex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "kay", complex(self.kay))
        object.__setattr__(self, "prevertices", tuple(self.prevertices))
        for v in (self.c, self.kay):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError(f"non-finite constant {v!r}")
        if self.c == 0.0:
            raise DomainError("multiplicative constant c must be nonzero")
        xs = [p.x for p in self.prevertices]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError(f"prevertices must be strictly increasing, got {xs!r}")
        s = self.sum_k
        if abs(s) > 2.0 + TYPE_EQ_TOL:
            raise DomainError(f"sum of exponents {s!r} outside [-2, 2]")

    @property
    def n(self) -> int:
        return len(self.prevertices)

    @property
    def sum_k(self) -> float:
        return math.fsum(p.k for p in self.prevertices)

    @property
    def xs(self) -> tuple[float, ...]:
        return tuple(p.x for p in self.prevertices)

    @property
    def ks(self) -> tuple[float, ...]:
        return tuple(p.k for p in self.prevertices)


@dataclass(frozen=True)
class QuadratureReport:
    """One contour integral: value, error estimate, and path metadata."""

    value: complex
    abs_error_estimate: float
    subdivisions: int
    path: tuple[complex, ...]


@dataclass(frozen=True)
class BoundaryImage:
    """Computed image skeleton of R+ or R- for one spec.

    ``vertices[i]`` is None when the corresponding vertex lies at infinity
    (exponent >= 1); ``vertex_finite`` carries the flags.  ``ray_lengths``
    holds the initial and final straight-piece lengths (+inf when the
    image point of z = infinity is itself at infinity).
    """

    half: HalfPlane
    vertices: tuple[Optional[complex], ...]
    vertex_finite: tuple[bool, ...]
    turns: tuple[float, ...]
    alpha0: float
    alphaN: float
    w_infinity_finite: bool
    w_infinity: Optional[complex]
    segment_lengths: tuple[float, ...]
    ray_lengths: tuple[float, float] = (math.inf, math.inf)


def sc_derivative(spec: SCSpec, z: complex, half: int = UPPER) -> complex:
    """dw/dz at ``z``: ``c * prod (z - x_i)**(-k_i)`` with branch phases
    ``-k_i * angle(z - x_i)`` accumulated unwrapped.

    ``half`` selects the one-sided angle for points on the real axis;
    off-axis it has no effect.
    """
    z = complex(z)
    log_mag = 0.0
    phase = 0.0
    for p in spec.prevertices:
        d = complex(z.real - p.x, z.imag)
        if d.real == 0.0 and d.imag == 0.0:
            raise SingularPointError(f"z = {z!r} is the prevertex x = {p.x!r}")
        log_mag -= p.k * math.log(abs(d))
        phase -= p.k * signed_angle(d, half)
    return spec.c * cmath.exp(complex(log_mag, phase))


def classify(spec: SCSpec) -> ContourType:
    """Contour type from |sum k_i| (equalities at tolerance 1e-12)."""
    s = abs(spec.sum_k)
    if abs(s - 1.0) <= TYPE_EQ_TOL:
        return ContourType.B
    if abs(s - 2.0) <= TYPE_EQ_TOL:
        return ContourType.D
    if s < 1.0:
        return ContourType.A
    return ContourType.C


def _angle_c(spec: SCSpec) -> float:
    return principal_angle(spec.c)


def orientations(spec: SCSpec, half: HalfPlane) -> tuple[float, float]:
    """(alpha0, alphaN): orientations of the initial and final straight
    pieces of the boundary image, wrapped into (-pi, pi].

    Upper: alpha0 = angle(C) - pi*sum(k); lower: + pi*sum(k).  Both halves
    share alphaN = angle(C).
    """
    theta_c = _angle_c(spec)
    alpha0 = wrap_principal(theta_c - half.sign * math.pi * spec.sum_k)
    return alpha0, theta_c


def turn_angles(spec: SCSpec, half: HalfPlane) -> list[float]:
    """Direction changes at the vertices: ``k_i * pi`` on the upper image,
    negated on the lower."""
    return [half.sign * p.k * math.pi for p in spec.prevertices]


def _segment_direction(spec: SCSpec, i: int, half_sign: int) -> float:
    """Unwrapped direction of the image of (x_i, x_{i+1}) (0-based: segment
    ``i`` follows prevertex ``i``; i = 0 is the initial piece)."""
    tail = math.fsum(p.k for p in spec.prevertices[i:])
    return _angle_c(spec) - half_sign * math.pi * tail


def _log_rest(spec: SCSpec, skip: tuple[int, ...]):
    """|integrand| with the ``skip`` factors removed, via a log-space sum."""
    pv = spec.prevertices

    def rest(x: float) -> float:
        acc = 0.0
        for j, p in enumerate(pv):
            if j in skip:
                continue
            acc -= p.k * math.log(abs(x - p.x))
        return math.exp(acc)

    return rest


def segment_length(spec: SCSpec, i: int, *, tol: float = quadrature.DEFAULT_TOL) -> float:
    """Length of the image of (x_i, x_{i+1}) (1-based, 1 <= i <= n-1).

    Returns +inf when an adjacent exponent >= 1 makes the integral
    diverge.  Endpoint singularities with exponent in (0, 1) are removed
    by substitution before Gauss-Kronrod is applied.
    """
    if not isinstance(i, int) or not (1 <= i <= spec.n - 1):
        raise ArgumentError(f"segment index {i!r} outside 1..{spec.n - 1}")
    left = spec.prevertices[i - 1]
    right = spec.prevertices[i]
    if left.k >= 1.0 or right.k >= 1.0:
        return math.inf
    res = quadrature.quad_endpoint_singular(
        _log_rest(spec, (i - 1,)), _log_rest(spec, (i,)),
        left.x, right.x, left.k, right.k, tol)
    return abs(spec.c) * abs(res.value)


def _mirror_spec(spec: SCSpec) -> SCSpec:
    """Spec with x -> -x (used to reuse the +infinity ray machinery for
    the -infinity side); c is irrelevant for magnitude integrals."""
    pv = tuple(PreVertex(-p.x, p.k) for p in reversed(spec.prevertices))
    return SCSpec(c=spec.c, kay=spec.kay, prevertices=pv)


def _tail_legs(spec: SCSpec, start: float):
    """Legs for ``int_start^inf prod |x - x_j|**(-k_j) dx`` with ``start``
    strictly beyond the last prevertex.  Caller guarantees sum k > 1.

    Under ``x = start/t`` the integrand gains the endpoint power
    ``t**(sum_k - 2)`` at t = 0, whose regular part is evaluated in log
    space so nothing overflows as t -> 0.
    """
    s_k = spec.sum_k
    pv = spec.prevertices
    m_point = start

    def regular(t: float) -> float:
        acc = (1.0 - s_k) * math.log(m_point)
        for p in pv:
            acc -= p.k * math.log1p(-p.x * t / m_point)
        return math.exp(acc)

    alpha_t = 2.0 - s_k
    if alpha_t > 0.0:
        return [quadrature.transformed_left_leg(regular, 0.0, 1.0, alpha_t)]

    def plain(t: float) -> float:
        return regular(t) * t ** (-alpha_t)

    return [quadrature.plain_leg(plain, 0.0, 1.0)]


def _tail_magnitude(spec: SCSpec, start: float, tol: float) -> float:
    """``int_start^inf prod |x - x_j|**(-k_j) dx`` for start > x_n."""
    if spec.sum_k <= 1.0 + TYPE_EQ_TOL:
        return math.inf
    res = quadrature.integrate_legs(_tail_legs(spec, start), tol)
    return abs(res.value.real)


def _ray_length(spec: SCSpec, final: bool, tol: float) -> float:
    """Length of the final (or initial) infinite-interval image piece,
    measured from the extreme prevertex; +inf when divergent."""
    sp = spec if final else _mirror_spec(spec)
    if sp.n == 0 or sp.sum_k <= 1.0 + TYPE_EQ_TOL:
        return math.inf
    last = sp.prevertices[-1]
    if last.k >= 1.0:
        return math.inf
    span = max(2.0, sp.xs[-1] - sp.xs[0])
    mid = sp.xs[-1] + span
    near = quadrature.quad_endpoint_singular(
        _log_rest(sp, (sp.n - 1,)), _log_rest(sp, ()),
        last.x, mid, last.k, 0.0, tol)
    far = _tail_magnitude(sp, mid, tol)
    return abs(spec.c) * (abs(near.value) + far)


def _partial_from_prevertex(spec: SCSpec, j: int, m: float, tol: float) -> float:
    """``|C| * int_{x_j}^{m} prod |x - x_i|**(-k_i) dx`` for m inside the
    interval to the right of x_j (k_j < 1)."""
    res = quadrature.quad_endpoint_singular(
        _log_rest(spec, (j,)), _log_rest(spec, ()),
        spec.prevertices[j].x, m, spec.prevertices[j].k, 0.0, tol)
    return abs(spec.c) * abs(res.value)


# ---------------------------------------------------------------------------
# contour evaluation


def _derivative_fn(spec: SCSpec, half_sign: int):
    def f(z: complex) -> complex:
        return sc_derivative(spec, z, half_sign)

    return f


def _lift_height(spec: SCSpec) -> float:
    if spec.n < 2:
        return 1.0
    return 1.0 + 0.25 * (spec.xs[-1] - spec.xs[0])


def _waypoints(spec: SCSpec, z0: complex, z1: complex, half_sign: int,
               via: Sequence[complex] = ()) -> list[complex]:
    """Straight-line route z0 -> z1 inside one closed half-plane, lifted
    off the axis when both endpoints sit on it (a real-to-real hop would
    otherwise run straight through the prevertices)."""
    pts = [complex(z0), *map(complex, via), complex(z1)]
    out = [pts[0]]
    for a, b in zip(pts, pts[1:]):
        if a.imag == 0.0 and b.imag == 0.0 and a != b:
            h = half_sign * _lift_height(spec)
            out.append(complex(a.real, h))
            out.append(complex(b.real, h))
        out.append(b)
    return out


def _contour_value(spec: SCSpec, z0: complex, z1: complex, half_sign: int,
                   tol: float, max_panels: int = quadrature.MAX_PANELS,
                   via: Sequence[complex] = ()):
    """``int_{z0}^{z1} dw`` along an admissible path; returns
    (value, err, panels, waypoints)."""
    f = _derivative_fn(spec, half_sign)
    legs = []
    waypoints = []
    pts = _waypoints(spec, z0, z1, half_sign, via)
    for a, b in zip(pts, pts[1:]):
        if a == b:
            continue
        seg_legs, seg_pts = quadrature.detoured_segment(
            f, a, b, spec.xs, CLEARANCE, half_sign)
        legs.extend(seg_legs)
        waypoints.extend(seg_pts if not waypoints else seg_pts[1:])
    if not legs:
        return 0.0 + 0.0j, 0.0, 0, [complex(z0)]
    try:
        res = quadrature.integrate_legs(legs, tol, max_panels)
    except ConvergenceError as exc:
        partial = exc.partial
        report = QuadratureReport(
            value=partial.value if partial else 0.0 + 0.0j,
            abs_error_estimate=partial.error if partial else math.inf,
            subdivisions=partial.panels if partial else 0,
            path=tuple(waypoints))
        raise ConvergenceError(str(exc), partial=report) from None
    return res.value, res.error, res.panels, waypoints


def _half_sign_of(z: complex) -> int:
    if z.imag > 0.0:
        return UPPER
    if z.imag < 0.0:
        return LOWER
    return 0


def map_point(spec: SCSpec, z: complex,
              anchor: tuple[complex, complex], *,
              tol: float = quadrature.DEFAULT_TOL,
              max_panels: int = quadrature.MAX_PANELS,
              via: Sequence[complex] = ()) -> QuadratureReport:
    """Map value at ``z`` as ``w0 + int_{z0}^{z} dw`` for an anchor pair
    ``(z0, w0)`` in the same open half-plane as ``z``.

    The path is the straight chain z0 (-> via...) -> z pushed around
    prevertices by the configured clearance.  Raises SingularPointError
    for a prevertex endpoint and ConvergenceError (with the partial
    report) when the tolerance cannot be met within the panel budget.
    """
    z0, w0 = complex(anchor[0]), complex(anchor[1])
    z = complex(z)
    for point in (z, z0):
        if point.imag == 0.0 and any(point.real == x for x in spec.xs):
            raise SingularPointError(f"endpoint {point!r} is a prevertex")
    if z == z0:
        return QuadratureReport(w0, 0.0, 0, (z0,))
    s0, s1 = _half_sign_of(z0), _half_sign_of(z)
    if s0 == 0 or s1 == 0 or s0 != s1:
        raise DomainError(
            f"anchor {z0!r} and target {z!r} must share one open half-plane")
    value, err, panels, waypoints = _contour_value(
        spec, z0, z, s0, tol, max_panels, via)
    return QuadratureReport(w0 + value, err, panels, tuple(waypoints))


# ---------------------------------------------------------------------------
# boundary skeletons


def _finite_runs(spec: SCSpec) -> list[list[int]]:
    """Maximal runs of consecutive finite vertices (k < 1)."""
    runs: list[list[int]] = []
    current: list[int] = []
    for j, p in enumerate(spec.prevertices):
        if p.k < 1.0:
            current.append(j)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def _glue_abscissa(spec: SCSpec) -> float:
    """A real reference point beyond the last prevertex, where the upper
    and lower boundary values coincide."""
    if spec.n == 0:
        return 1.0
    span = max(2.0, spec.xs[-1] - spec.xs[0])
    return spec.xs[-1] + 0.5 * span


@functools.lru_cache(maxsize=256)
def _default_glue_value(spec: SCSpec, tol: float) -> complex:
    """Boundary value at the glue abscissa under the default convention
    (first finite vertex of the upper image at ``kay``)."""
    b = _glue_abscissa(spec)
    runs = _finite_runs(spec)
    if spec.n == 0:
        return spec.kay
    if not runs:
        raise DomainError(
            "default boundary convention needs at least one finite vertex")
    base_run = runs[0]
    w = spec.kay  # value at vertex base_run[0]
    # walk to the run's last vertex, then out to a midpoint past it
    for j in base_run[:-1]:
        w += _segment_step(spec, j, UPPER, tol)
    last = base_run[-1]
    if last == spec.n - 1:
        step = _partial_from_prevertex(spec, last, b, tol)
        return w + cmath.rect(step, _segment_direction(spec, last + 1, UPPER))
    m = 0.5 * (spec.xs[last] + spec.xs[last + 1])
    step = _partial_from_prevertex(spec, last, m, tol)
    w_m = w + cmath.rect(step, _segment_direction(spec, last + 1, UPPER))
    value, _, _, _ = _contour_value(spec, m, b, UPPER, tol)
    return w_m + value


def _anchored_glue_value(spec: SCSpec, anchor: tuple[complex, complex],
                         tol: float) -> complex:
    z0, w0 = complex(anchor[0]), complex(anchor[1])
    if not z0.imag > 0.0:
        raise DomainError("boundary anchor must lie in the open upper half-plane")
    value, _, _, _ = _contour_value(spec, z0, _glue_abscissa(spec), UPPER, tol)
    return w0 + value


def _segment_step(spec: SCSpec, j: int, half_sign: int, tol: float) -> complex:
    """Complex increment w_{j+1} - w_j along the image of (x_j, x_{j+1})."""
    length = segment_length(spec, j + 1, tol=tol)
    return cmath.rect(length, _segment_direction(spec, j + 1, half_sign))


def boundary_image(spec: SCSpec, half: HalfPlane, *,
                   anchor: tuple[complex, complex] | None = None,
                   tol: float = quadrature.DEFAULT_TOL) -> BoundaryImage:
    """Full boundary skeleton of one half-plane image.

    Vertices with exponent >= 1 lie at infinity (None + flag).  Both
    halves are glued to the same reference value beyond the last
    prevertex; the lower-half run anchors are reached by integrating
    through the open lower half-plane, so the reflection relation between
    the two images is a computed result rather than a construction.
    """
    sign = half.sign
    alpha0, alpha_n = orientations(spec, half)
    turns = tuple(turn_angles(spec, half))
    finite = tuple(p.k < 1.0 for p in spec.prevertices)
    seg_lengths = tuple(
        segment_length(spec, i, tol=tol) for i in range(1, spec.n))
    rays = (_ray_length(spec, False, tol), _ray_length(spec, True, tol))
    s_k = spec.sum_k
    w_inf_finite = s_k > 1.0 + TYPE_EQ_TOL

    if spec.n == 0:
        return BoundaryImage(half, (), (), turns, alpha0, alpha_n,
                             False, None, (), (math.inf, math.inf))

    glue = (_anchored_glue_value(spec, anchor, tol) if anchor is not None
            else _default_glue_value(spec, tol))
    b = _glue_abscissa(spec)

    vertices: list[Optional[complex]] = [None] * spec.n
    for run in _finite_runs(spec):
        last = run[-1]
        if last == spec.n - 1:
            # anchored directly off the glue point
            back = _partial_from_prevertex(spec, last, b, tol)
            w_last = glue - cmath.rect(back, _segment_direction(spec, last + 1, sign))
        else:
            m = 0.5 * (spec.xs[last] + spec.xs[last + 1])
            value, _, _, _ = _contour_value(spec, b, m, sign, tol)
            back = _partial_from_prevertex(spec, last, m, tol)
            w_last = (glue + value
                      - cmath.rect(back, _segment_direction(spec, last + 1, sign)))
        vertices[last] = w_last
        w = w_last
        for j in reversed(run[:-1]):
            w = w - _segment_step(spec, j, sign, tol)
            vertices[j] = w

    w_inf = None
    if w_inf_finite:
        far = _tail_magnitude(spec, b, tol) * abs(spec.c)
        w_inf = glue + cmath.rect(far, alpha_n)

    return BoundaryImage(half, tuple(vertices), finite, turns, alpha0,
                         alpha_n, w_inf_finite, w_inf, seg_lengths, rays)


# ---------------------------------------------------------------------------
# generic evaluation used by the grid sampler


@functools.lru_cache(maxsize=256)
def _glue_pair(spec: SCSpec, tol: float) -> tuple[float, complex]:
    return _glue_abscissa(spec), _default_glue_value(spec, tol)


def eval_map(spec: SCSpec, z: complex, half_sign: int, *,
             anchor: tuple[complex, complex] | None = None,
             tol: float = quadrature.DEFAULT_TOL) -> complex:
    """Map value at ``z`` (axis points allowed as one-sided limits from
    the ``half_sign`` side) under the default convention, or from an
    explicit upper-half anchor."""
    z = complex(z)
    if z.imag == 0.0 and any(z.real == x for x in spec.xs):
        raise SingularPointError(f"{z!r} is a prevertex")
    if anchor is not None:
        b = _glue_abscissa(spec)
        wb = _anchored_glue_value(spec, anchor, tol)
    else:
        b, wb = _glue_pair(spec, tol)
    value, _, _, _ = _contour_value(spec, complex(b, 0.0), z, half_sign, tol)
    return wb + value
