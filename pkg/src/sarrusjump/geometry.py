"""Kinematics of one leg plane of a three-dyad Sarrus jumping linkage.

Angles are radians, lengths metres.  The leg angle ``theta`` is the swing
angle of the lower leg segment: 0 at the fully folded (squat) configuration,
pi/2 at full extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Knee-to-knee chord factor for dyad planes spaced 120 degrees apart (band
# aperture 60 degrees).  A different plane spacing would change this constant.
SQRT3 = math.sqrt(3.0)

_EPS = 1e-9


@dataclass(frozen=True)
class LinkageGeometry:
    """Constant lengths of one leg plane plus the drive-band cross section.

    a   leg segment length [m]
    c   knee-to-knee anchor separation at full extension [m]
    p   knee anchor offset along the height axis [m]
    q   knee anchor offset across the height axis [m]
    l0  undistorted band length [m]
    A0  band cross-sectional area [m^2]
    """

    a: float
    c: float
    p: float
    q: float
    l0: float
    A0: float

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError(f"leg length a must be positive, got {self.a}")
        if self.l0 <= 0.0:
            raise ValueError(f"band rest length l0 must be positive, got {self.l0}")
        if self.A0 <= 0.0:
            raise ValueError(f"band cross-section A0 must be positive, got {self.A0}")
        for name in ("c", "p", "q"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")


@dataclass(frozen=True)
class LegAngleInterval:
    """Operating range of the leg angle, a subinterval of [0, pi/2]."""

    theta_min: float
    theta_max: float

    def __post_init__(self):
        if not (0.0 <= self.theta_min < self.theta_max <= math.pi / 2 + _EPS):
            raise ValueError(
                "need 0 <= theta_min < theta_max <= pi/2, got "
                f"[{self.theta_min}, {self.theta_max}]"
            )


def _check_theta(theta: float) -> None:
    if not (-_EPS <= theta <= math.pi / 2 + _EPS):
        raise ValueError(f"leg angle {theta} outside [0, pi/2]")


def height(geom: LinkageGeometry, theta: float) -> float:
    """Linkage height h = 2 a sin(theta) + 2 p.  Strictly increasing in theta."""
    _check_theta(theta)
    return 2.0 * geom.a * math.sin(theta) + 2.0 * geom.p


def effective_leg(geom: LinkageGeometry, theta: float) -> float:
    """Distance b from the leg root joint to the band anchor at the knee.

    b^2 = a^2 + p^2 + q^2 + 2 a (p sin(theta) + q cos(theta)).
    """
    _check_theta(theta)
    b2 = (
        geom.a * geom.a
        + geom.p * geom.p
        + geom.q * geom.q
        + 2.0 * geom.a * (geom.p * math.sin(theta) + geom.q * math.cos(theta))
    )
    return math.sqrt(b2)


def anchor_distance(geom: LinkageGeometry, theta: float) -> float:
    """Band anchor separation l between the knees of adjacent legs.

    l = c + sqrt(12 b^2 h^4 - 3 h^6) / (2 h^2), which simplifies to
    c + (sqrt(3)/2) sqrt(4 b^2 - h^2).  Raises when h <= 0 or when the
    radicand is negative (configuration not representable).
    """
    _check_theta(theta)
    h = height(geom, theta)
    if h <= 0.0:
        raise ValueError("anchor distance undefined at zero linkage height (h <= 0)")
    b = effective_leg(geom, theta)
    h2 = h * h
    radicand = 12.0 * b * b * h2 * h2 - 3.0 * h2 * h2 * h2
    if radicand < 0.0:
        raise ValueError(
            f"non-representable configuration at theta={theta}: 4 b^2 < h^2"
        )
    return geom.c + math.sqrt(radicand) / (2.0 * h2)


def stretch(geom: LinkageGeometry, theta: float) -> float:
    """Band stretch ratio lambda = l / l0."""
    return anchor_distance(geom, theta) / geom.l0
