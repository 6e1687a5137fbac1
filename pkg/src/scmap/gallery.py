"""The five named example maps, each carrying a spec, its published
constants, and an independent closed-form evaluator.

Closed forms are exact on the upper half-plane (types c and d only inside
the closed unit disk, where their hypergeometric series converges); on
the lower half-plane every entry is continued by the reflection that
glues the two boundary images along the shared final interval, which
keeps the closed forms consistent with the quadrature conventions in
`core`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import core, quadrature
from .errors import ArgumentError, DomainError
from .kernel import LOWER, UPPER, branch_sqrt, principal_angle
from .special import acosh_principal, ellip_e_incomplete, hyp2f1

ENTRY_NAMES = ("type-a", "type-b", "type-c", "type-d", "pillar")

_DISK_TOL = 1e-12


@dataclass(frozen=True)
class GalleryEntry:
    """A worked example: spec, closed form, and the anchor pair that ties
    quadrature to the closed form's integration constant."""

    name: str
    spec: core.SCSpec
    anchor: tuple[complex, complex]
    upper_form: Callable[[complex], complex]
    w_last: complex  # closed-form boundary value at the last prevertex

    def closed_form(self, z: complex, half: Optional[int] = None) -> complex:
        return closed_form_eval(self, z, half)


def _upper_input(z: complex) -> complex:
    """Normalize a signed-zero imaginary part so on-axis points evaluate
    as limits from above."""
    z = complex(z)
    if z.imag == 0.0:
        return complex(z.real, 0.0)
    return z


def _require_disk(z: complex):
    if abs(z) > 1.0 + _DISK_TOL:
        raise DomainError(f"|z| = {abs(z)!r} outside the closed-form disk")


def _form_a(z: complex) -> complex:
    if z == 0.0:
        return 0.0 + 0.0j
    return 2.0 * branch_sqrt(z)


def _form_b(z: complex) -> complex:
    return acosh_principal(z)


_ALPHA_C = hyp2f1(0.5, 2.0 / 3.0, 1.5, 1.0).real
_K_C = _ALPHA_C * cmath.exp(2j * math.pi / 3.0)
_K_D = 1j * math.sqrt(2.0) * hyp2f1(0.25, 0.75, 1.25, 1.0).real
_K_PILLAR = 1.3j


def _form_c(z: complex) -> complex:
    _require_disk(z)
    return -cmath.exp(1j * math.pi / 3.0) * z * hyp2f1(0.5, 2.0 / 3.0, 1.5, z * z) + _K_C


def _form_d(z: complex) -> complex:
    _require_disk(z)
    if z == 0.0:
        return _K_D
    root = branch_sqrt(z)
    return -2.0 * cmath.exp(1j * math.pi / 4.0) * root * hyp2f1(0.25, 0.75, 1.25, z * z) + _K_D


def _form_pillar(z: complex) -> complex:
    return ellip_e_incomplete(0.5 * z, 2.0, half=UPPER) + _K_PILLAR


def _build(name: str) -> GalleryEntry:
    if name == "type-a":
        spec = core.SCSpec(c=1.0, kay=0.0,
                           prevertices=(core.PreVertex(0.0, 0.5),))
        form, z0 = _form_a, 1j
    elif name == "type-b":
        spec = core.SCSpec(c=1.0, kay=0.0,
                           prevertices=(core.PreVertex(-1.0, 0.5),
                                        core.PreVertex(1.0, 0.5)))
        form, z0 = _form_b, 1j
    elif name == "type-c":
        spec = core.SCSpec(c=1.0, kay=_K_C,
                           prevertices=(core.PreVertex(-1.0, 2.0 / 3.0),
                                        core.PreVertex(1.0, 2.0 / 3.0)))
        form, z0 = _form_c, 0.5j
    elif name == "type-d":
        spec = core.SCSpec(c=1.0, kay=_K_D,
                           prevertices=(core.PreVertex(-1.0, 0.75),
                                        core.PreVertex(0.0, 0.5),
                                        core.PreVertex(1.0, 0.75)))
        form, z0 = _form_d, 0.5j
    elif name == "pillar":
        spec = core.SCSpec(c=1.0, kay=_K_PILLAR,
                           prevertices=(core.PreVertex(-2.0, 0.5),
                                        core.PreVertex(-1.0, -0.5),
                                        core.PreVertex(1.0, -0.5),
                                        core.PreVertex(2.0, 0.5)))
        form, z0 = _form_pillar, 1j
    else:
        raise ArgumentError(f"unknown example {name!r}; choose from {ENTRY_NAMES}")
    w_last = form(_upper_input(complex(spec.prevertices[-1].x, 0.0)))
    return GalleryEntry(name=name, spec=spec, anchor=(z0, form(z0)),
                        upper_form=form, w_last=w_last)


_CACHE: dict[str, GalleryEntry] = {}


def entry(name: str) -> GalleryEntry:
    if name not in _CACHE:
        _CACHE[name] = _build(name)
    return _CACHE[name]


def closed_form_eval(entry: GalleryEntry, z: complex,
                     half: Optional[int] = None) -> complex:
    """Closed-form map value; lower-half points are continued by the
    boundary-gluing reflection through the last vertex.

    Raises DomainError for points outside the form's domain (types c/d
    beyond the unit disk), signaling the caller to fall back to
    quadrature.
    """
    z = complex(z)
    sigma = half if half is not None else (LOWER if z.imag < 0.0 else UPPER)
    if sigma == UPPER:
        return entry.upper_form(_upper_input(z))
    w_n = entry.w_last
    rot = cmath.exp(2j * principal_angle(entry.spec.c))
    mirrored = entry.upper_form(_upper_input(z.conjugate()))
    return w_n + rot * (mirrored - w_n).conjugate()


def pillar_dimensions(*, tol: float = quadrature.DEFAULT_TOL) -> tuple[float, float]:
    """Height and width of the pillar obstacle: the lengths of its
    vertical side (image of (1, 2)) and top (image of (-1, 1))."""
    spec = entry("pillar").spec
    a = core.segment_length(spec, 3, tol=tol)
    b = core.segment_length(spec, 2, tol=tol)
    return a, b
