"""Principal-angle arithmetic and branch-consistent complex powers.

Every map in this package is built on one convention: the angle of a
nonzero complex number lives in the half-open interval (-pi, pi].  The
boundary value +pi is legal, -pi is not, and negative reals always get
+pi.  Comparisons against the interval endpoints use exact IEEE
semantics; there is no epsilon snapping near the cut.  Fractional powers
pinned to a point on the real axis use ``k * angle`` directly as their
phase (no re-wrap), which is what makes upper- and lower-half-plane
images of the same expression come out on the correct branches.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError, SingularPointError

TWO_PI = 2.0 * math.pi

# Upper / lower half-plane selectors used wherever a boundary value on the
# real axis must be taken as a one-sided limit.
UPPER = +1
LOWER = -1


def principal_angle(omega: complex) -> float:
    """Angle of ``omega`` in (-pi, pi]; negative reals map to +pi.

    Raises DomainError for zero (the angle of 0 is undefined) and for
    non-finite input.
    """
    re, im = omega.real, omega.imag
    if re == 0.0 and im == 0.0:
        raise DomainError("angle of 0 is undefined")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise DomainError(f"angle of non-finite value {omega!r}")
    theta = math.atan2(im, re)
    # atan2 returns -pi for (im=-0.0, re<0); the convention excludes -pi.
    if theta == -math.pi:
        return math.pi
    return theta


def signed_angle(omega: complex, half: int) -> float:
    """One-sided angle of ``omega`` for boundary-limit evaluation.

    ``half=UPPER`` is `principal_angle` (negative reals -> +pi, the limit
    from above); ``half=LOWER`` sends negative reals to -pi (the limit
    from below).  Off the negative real axis both agree.
    """
    theta = principal_angle(omega)
    if half == LOWER and theta == math.pi and omega.imag == 0.0:
        return -math.pi
    return theta


def wrap_principal(theta: float) -> float:
    """Reduce a finite angle by a multiple of 2*pi into (-pi, pi]."""
    if not math.isfinite(theta):
        raise DomainError(f"cannot wrap non-finite angle {theta!r}")
    r = math.remainder(theta, TWO_PI)
    if r == -math.pi:
        return math.pi
    return r


def branch_power(z: complex, x_i: float, k_i: float, half: int = UPPER) -> complex:
    """``(z - x_i) ** k_i`` with phase ``k_i * angle(z - x_i)``.

    The phase is the product of the exponent with the one-sided principal
    angle of ``z - x_i``; it is fed to exp unwrapped, so exponents with
    ``|k_i| > 1`` keep their additive angle bookkeeping.
    """
    d = complex(z.real - x_i, z.imag)
    if d.real == 0.0 and d.imag == 0.0:
        raise SingularPointError(f"power base vanishes at z = x_i = {x_i!r}")
    theta = signed_angle(d, half)
    return cmath.rect(abs(d) ** k_i, k_i * theta)


def branch_sqrt(z: complex, half: int = UPPER) -> complex:
    """Square root with phase ``angle(z)/2`` under the package convention."""
    return branch_power(z, 0.0, 0.5, half)
