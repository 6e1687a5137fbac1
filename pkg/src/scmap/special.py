"""Special functions needed by the closed-form example maps.

Three callables matter downstream: the Gauss hypergeometric series on the
open unit disk (plus its Gauss summation at 1), the incomplete elliptic
integral of the second kind for complex upper limits (with modulus able
to exceed 1, which puts branch points inside the unit interval), and the
principal inverse hyperbolic cosine.  A positive-real-argument gamma
rounds out the set for the summation formula.
"""

from __future__ import annotations

import cmath
import math

from . import quadrature
from .errors import ConvergenceError, DivergenceError, DomainError
from .kernel import LOWER, UPPER, signed_angle

_SERIES_CUTOFF = 1e-15
_MAX_TERMS = 500_000

# Lanczos g=7, n=9 coefficients (Godfrey's set); relative error well below
# 1e-12 on the positive real axis.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_positive(x: float) -> float:
    """Gamma(x) for real x > 0 via the Lanczos approximation."""
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"gamma implemented for positive real x only, got {x!r}")
    if x < 0.5:
        return gamma_positive(x + 1.0) / x
    z = x - 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, 9):
        acc += _LANCZOS_C[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def hyp2f1(a: float, b: float, c: float, zeta: complex) -> complex:
    """Gauss hypergeometric F(a, b; c; zeta) on |zeta| < 1, plus zeta = 1.

    Inside the disk the Taylor series is summed until a term falls below
    1e-15 * (1 + |partial sum|).  At zeta = 1 the Gauss summation
    Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)) is used and requires
    c - a - b > 0.  Anything else on or outside the unit circle raises
    DomainError (no analytic continuation is implemented).
    """
    if _is_nonpositive_integer(c):
        raise DomainError(f"c = {c!r} is zero or a negative integer")
    zeta = complex(zeta)
    if zeta == 1.0:
        s = c - a - b
        if s <= 0.0:
            raise DivergenceError(
                f"series at zeta=1 diverges for c-a-b = {s!r} <= 0")
        return complex(
            gamma_positive(c) * gamma_positive(s)
            / (gamma_positive(c - a) * gamma_positive(c - b)))
    if abs(zeta) >= 1.0:
        raise DomainError(f"|zeta| = {abs(zeta)!r} outside the implemented disk")
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    m = 0
    while True:
        term *= (a + m) * (b + m) / ((c + m) * (1.0 + m)) * zeta
        total += term
        m += 1
        if abs(term) <= _SERIES_CUTOFF * (1.0 + abs(total)):
            return total
        if m >= _MAX_TERMS:
            raise ConvergenceError(
                f"hypergeometric series did not converge at zeta = {zeta!r}")


def acosh_principal(z: complex) -> complex:
    """acosh branch with Re >= 0 and Im in (-pi, pi].

    cmath.acosh already delivers the non-negative-real-part branch; only
    the cut boundary Im = -pi (reached for real z < -1 tagged with a
    negative-zero imaginary part) is folded onto +pi to honor the
    half-open angle interval.
    """
    w = cmath.acosh(complex(z))
    if w.imag == -math.pi:
        w = complex(w.real, math.pi)
    return w


def _elliptic_integrand(k: float, sigma: int):
    """Pointwise integrand sqrt(1-k^2 z^2)/sqrt(1-z^2) continued from the
    ``sigma`` half-plane.

    Both radicands are split into linear factors; each factor contributes
    half its one-sided principal angle to the phase.  The constant in
    front is fixed by the value 1 at z = 0.
    """
    if k == 1.0:
        return lambda zeta: 1.0 + 0.0j

    def f(zeta: complex) -> complex:
        d3 = zeta - 1.0
        d4 = zeta + 1.0
        phase = -0.5 * (signed_angle(d3, sigma) + signed_angle(d4, sigma))
        mag = 1.0 / math.sqrt(abs(d3) * abs(d4))
        if k != 0.0:
            d1 = zeta - 1.0 / k
            d2 = zeta + 1.0 / k
            if d1 == 0.0 or d2 == 0.0:
                return 0.0 + 0.0j  # at a zero of the numerator radicand
            phase += 0.5 * (signed_angle(d1, sigma) + signed_angle(d2, sigma))
            mag *= k * math.sqrt(abs(d1) * abs(d2))
            # the -i*sigma constants of numerator and denominator cancel
            return mag * cmath.exp(1j * phase)
        # k = 0: only the denominator pair is present, so its -i*sigma
        # normalization (fixed by the value 1 at zeta = 0) survives.
        return 1j * sigma * mag * cmath.exp(1j * phase)

    return f


def _branch_points(k: float):
    pts = [-1.0, 1.0]
    if k > 0.0 and k != 1.0:
        pts.extend((-1.0 / k, 1.0 / k))
    return sorted(set(pts))


def ellip_e_incomplete(z_upper: complex, modulus: float, *,
                       tol: float = quadrature.DEFAULT_TOL,
                       half: int | None = None) -> complex:
    """Incomplete elliptic integral of the second kind,
    ``E(Z, k) = int_0^Z sqrt(1 - k^2 t^2)/sqrt(1 - t^2) dt``.

    The path is the straight segment 0 -> Z, pushed around branch points
    on circular arcs of radius 1e-6 whenever it passes that close to one.
    Branch sign conventions come from the half-plane of Z (real Z counts
    as the upper side); pass ``half`` to force a side for boundary-limit
    work.
    """
    if not (modulus >= 0.0) or not math.isfinite(modulus):
        raise DomainError(f"modulus must be a finite non-negative real, got {modulus!r}")
    Z = complex(z_upper)
    if not (math.isfinite(Z.real) and math.isfinite(Z.imag)):
        raise DomainError(f"non-finite upper limit {z_upper!r}")
    if Z == 0.0:
        return 0.0 + 0.0j
    sigma = half if half is not None else (LOWER if Z.imag < 0.0 else UPPER)
    f = _elliptic_integrand(modulus, sigma)
    points = _branch_points(modulus)
    if modulus != 1.0 and (Z == 1.0 or Z == -1.0):
        # upper limit exactly on a pole of the integrand: peel off the
        # last stretch and remove the 1/2-power endpoint singularity
        end = Z.real
        gap = min((abs(end - p) for p in points if p != end), default=2.0)
        delta = min(0.45 * gap, 0.1)
        join = complex(end - math.copysign(delta, end), 0.0)
        legs, _ = quadrature.detoured_segment(f, 0.0 + 0.0j, join, points,
                                              1e-6, sigma)
        legs.append(quadrature.endpoint_substituted_leg(f, join, Z, 0.5))
    else:
        legs, _ = quadrature.detoured_segment(f, 0.0 + 0.0j, Z, points,
                                              1e-6, sigma)
    res = quadrature.integrate_legs(legs, tol)
    return res.value
