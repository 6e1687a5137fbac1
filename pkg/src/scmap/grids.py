"""Images of coordinate lines, plus the pointwise verification checks.

`sample_line` walks a horizontal or vertical line of the z-plane through
a map (gallery closed form where available, chained contour quadrature
everywhere else) and flags image discontinuities.  The residual checks
implement the two classic conformality identities (Cauchy-Riemann and
harmonicity, by finite differences) and the tangent-orientation identity
relating a curve's direction to the argument of the derivative.
"""

from __future__ import annotations

import cmath
import math
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Union

from . import core, gallery, quadrature
from .errors import DomainError, SingularPointError
from .kernel import LOWER, UPPER, principal_angle, wrap_principal

BREAK_FACTOR = 50.0  # jump > 50x median inter-sample distance
SECANT_STEP = 1e-6

Target = Union[core.SCSpec, gallery.GalleryEntry]


class Orientation(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class LineRequest:
    """One z-plane coordinate line to sample.

    Horizontal lines must sit off the real axis (request the boundary
    images through small +/- offsets); vertical lines crossing the axis
    get the two one-sided limits at y = 0 as extra samples.
    """

    orientation: Orientation
    level: float
    span: tuple[float, float]
    samples: int

    def __post_init__(self):
        lo, hi = self.span
        if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(self.level)):
            raise DomainError(f"non-finite line request {self!r}")
        if not lo < hi:
            raise DomainError(f"span must satisfy lo < hi, got {self.span!r}")
        if self.samples < 2:
            raise DomainError(f"need at least 2 samples, got {self.samples!r}")
        if self.orientation is Orientation.HORIZONTAL and self.level == 0.0:
            raise DomainError("horizontal lines must have level != 0")


@dataclass(frozen=True)
class Polyline:
    """Sampled image of one line.

    ``breaks[i] = j`` flags a discontinuity between ``points[j]`` and
    ``points[j+1]``.  Samples that landed exactly on a prevertex are
    omitted from the arrays and their source values recorded in
    ``skipped``.
    """

    points: tuple[complex, ...]
    source_points: tuple[complex, ...]
    breaks: tuple[int, ...]
    skipped: tuple[complex, ...] = ()


def _spec_of(target: Target) -> core.SCSpec:
    return target.spec if isinstance(target, gallery.GalleryEntry) else target


def _is_prevertex(spec: core.SCSpec, z: complex) -> bool:
    return z.imag == 0.0 and any(z.real == x for x in spec.xs)


def _entry_fallback_anchor(entry: gallery.GalleryEntry, z: complex,
                           half: int) -> tuple[complex, complex]:
    """Anchor pair for quadrature when ``z`` is outside the closed form's
    disk: a same-half point on the half-unit circle, where the form holds."""
    if half == UPPER:
        z0 = 0.5 * cmath.exp(1j * max(0.3, min(math.pi - 0.3, principal_angle(z))))
    else:
        z0 = 0.5 * cmath.exp(1j * min(-0.3, max(-math.pi + 0.3, principal_angle(z))))
    return z0, entry.closed_form(z0, half)


def _evaluator(target: Target, half: int, tol: float) -> Callable[[complex], complex]:
    """Map evaluator for one closed half-plane (axis points are one-sided
    limits).  Plain callables pass through untouched."""
    if callable(target) and not isinstance(target, (core.SCSpec, gallery.GalleryEntry)):
        return target
    if isinstance(target, gallery.GalleryEntry):
        def ev(z: complex) -> complex:
            try:
                return target.closed_form(z, half)
            except DomainError:
                anchor = _entry_fallback_anchor(target, z, half)
                return core.eval_map(target.spec, z, half, anchor=None, tol=tol) \
                    if False else _quad_value(target.spec, anchor, z, half, tol)
        return ev

    def ev(z: complex) -> complex:
        return core.eval_map(target, z, half, tol=tol)

    return ev


def _quad_value(spec: core.SCSpec, anchor: tuple[complex, complex],
                z: complex, half: int, tol: float) -> complex:
    value, _, _, _ = core._contour_value(spec, anchor[0], z, half, tol)
    return anchor[1] + value


def _chain_values(target: Target, zs: Sequence[complex], half: int,
                  tol: float) -> list[complex]:
    """Map values along one half-plane run, reusing the previous sample as
    the quadrature anchor so each step integrates a short segment."""
    spec = _spec_of(target)
    entry = target if isinstance(target, gallery.GalleryEntry) else None
    out: list[complex] = []
    prev: Optional[tuple[complex, complex]] = None
    for z in zs:
        w = None
        if entry is not None:
            try:
                w = entry.closed_form(z, half)
            except DomainError:
                w = None
        if w is None:
            if prev is not None:
                w = _quad_value(spec, prev, z, half, tol)
            elif entry is not None:
                anchor = _entry_fallback_anchor(entry, z, half)
                w = _quad_value(spec, anchor, z, half, tol)
            else:
                w = core.eval_map(spec, z, half, tol=tol)
        out.append(w)
        if z.imag != 0.0:  # axis limits make poor anchors for the next step
            prev = (z, w)
    return out


def _find_breaks(points: Sequence[complex]) -> tuple[int, ...]:
    if len(points) < 2:
        return ()
    dists = [abs(b - a) for a, b in zip(points, points[1:])]
    med = statistics.median(dists)
    if med == 0.0:
        return ()
    cut = BREAK_FACTOR * med
    return tuple(j for j, d in enumerate(dists) if d > cut)


def sample_line(target: Target, req: LineRequest, *,
                tol: float = quadrature.DEFAULT_TOL) -> Polyline:
    """Sampled image of one coordinate line.

    Horizontal lines stay inside one open half-plane.  Vertical lines are
    sampled on a grid shifted half a step off y = 0, with the two
    one-sided limits at the axis appended in between; when those limits
    disagree the jump shows up as a flagged break.
    """
    spec = _spec_of(target)
    lo, hi = req.span
    n = req.samples
    step = (hi - lo) / (n - 1)
    skipped: list[complex] = []

    if req.orientation is Orientation.HORIZONTAL:
        half = UPPER if req.level > 0.0 else LOWER
        zs = [complex(lo + j * step, req.level) for j in range(n)]
        kept = [z for z in zs if not _is_prevertex(spec, z)]
        skipped = [z for z in zs if _is_prevertex(spec, z)]
        ws = _chain_values(target, kept, half, tol)
        points = list(zip(kept, ws))
    else:
        x = req.level
        ys = [lo + j * step for j in range(n)]
        if lo < 0.0 < hi:
            # keep the grid clear of the axis by half a step
            ys = [y - 0.5 * step if y == 0.0 else y for y in ys]
        neg = [complex(x, y) for y in ys if y < 0.0]
        pos = [complex(x, y) for y in ys if y > 0.0]
        points = []
        if neg:
            run = list(neg)
            if lo < 0.0 < hi:
                run.append(complex(x, -0.0))
            run = [z for z in run if not _is_prevertex(spec, z)] \
                if _on_prevertex_column(spec, x) else run
            skipped.extend(z for z in (complex(x, -0.0),)
                           if lo < 0.0 < hi and _is_prevertex(spec, complex(x, 0.0)))
            ws = _chain_values(target, run, LOWER, tol)
            points.extend(zip(run, ws))
        if pos:
            run = [complex(x, 0.0)] + list(pos) if lo < 0.0 < hi else list(pos)
            run = [z for z in run if not _is_prevertex(spec, z)] \
                if _on_prevertex_column(spec, x) else run
            skipped.extend(z for z in (complex(x, 0.0),)
                           if lo < 0.0 < hi and _is_prevertex(spec, complex(x, 0.0)))
            ws = _chain_values(target, run, UPPER, tol)
            points.extend(zip(run, ws))

    zs_out = tuple(z for z, _ in points)
    ws_out = tuple(w for _, w in points)
    return Polyline(points=ws_out, source_points=zs_out,
                    breaks=_find_breaks(ws_out), skipped=tuple(skipped))


def _on_prevertex_column(spec: core.SCSpec, x: float) -> bool:
    return any(x == p for p in spec.xs)


def _stencil_evaluator(target, z: complex, h: float, tol: float):
    if abs(z.imag) <= h and not callable(target):
        raise DomainError(
            f"stencil of step {h!r} at {z!r} crosses the real axis")
    half = UPPER if z.imag > 0.0 else LOWER
    if callable(target) and not isinstance(target, (core.SCSpec, gallery.GalleryEntry)):
        return target
    return _evaluator(target, half, tol)


def cauchy_riemann_residual(target, z: complex, h: float, *,
                            tol: float = quadrature.DEFAULT_TOL) -> float:
    """max(|du/dx - dv/dy|, |du/dy + dv/dx|) by central differences.

    ``target`` may be a spec, a gallery entry, or any callable z -> w
    (handy for checking non-analytic surrogates).
    """
    ev = _stencil_evaluator(target, z, h, tol)
    wxp, wxm = ev(z + h), ev(z - h)
    wyp, wym = ev(z + 1j * h), ev(z - 1j * h)
    ux = (wxp.real - wxm.real) / (2.0 * h)
    vx = (wxp.imag - wxm.imag) / (2.0 * h)
    uy = (wyp.real - wym.real) / (2.0 * h)
    vy = (wyp.imag - wym.imag) / (2.0 * h)
    return max(abs(ux - vy), abs(uy + vx))


def harmonic_residual(target, z: complex, h: float, *,
                      tol: float = quadrature.DEFAULT_TOL) -> tuple[float, float]:
    """(|laplacian u|, |laplacian v|) by the 5-point stencil at step h."""
    ev = _stencil_evaluator(target, z, h, tol)
    lap = (ev(z + h) + ev(z - h) + ev(z + 1j * h) + ev(z - 1j * h)
           - 4.0 * ev(z)) / (h * h)
    return abs(lap.real), abs(lap.imag)


def tangent_orientation_check(target: Target, curve_point: complex,
                              curve_direction_theta: float, *,
                              tol: float = quadrature.DEFAULT_TOL
                              ) -> tuple[float, float]:
    """Predicted image-tangent direction and its measured residual.

    The identity: the image of a curve through ``curve_point`` with
    direction theta leaves with direction theta + angle(dw/dz).  The
    measured direction comes from a finite secant of length 1e-6.
    """
    spec = _spec_of(target)
    z = complex(curve_point)
    half = UPPER if z.imag > 0.0 else (LOWER if z.imag < 0.0 else UPPER)
    dw = core.sc_derivative(spec, z, half)
    phi = wrap_principal(curve_direction_theta + principal_angle(dw))
    ev = _evaluator(target, half, tol)
    delta = SECANT_STEP * cmath.exp(1j * curve_direction_theta)
    secant = ev(z + delta) - ev(z)
    if secant == 0.0:
        raise SingularPointError(f"degenerate secant at {z!r}")
    measured = principal_angle(secant)
    residual = abs(wrap_principal(phi - measured))
    return phi, residual
