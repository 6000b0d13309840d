"""Virtual-work thrust force of the linkage and thrust-profile generation.

The vertical thrust is the band tension scaled by the gradient of the anchor
separation with respect to linkage height, F_y = F_l |dl/dh|.  Reported
values are magnitudes; a slack band produces zero thrust.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elastic import ElasticModel, drive_force
from .geometry import (
    SQRT3,
    LegAngleInterval,
    LinkageGeometry,
    anchor_distance,
    effective_leg,
    height,
    stretch,
)


def dl_dh(geom: LinkageGeometry, theta: float, exact: bool = False) -> float:
    """Magnitude of the anchor-separation gradient |dl/dh| at theta.

    Default convention: the effective anchor arm b is treated as locally
    constant while differentiating l with respect to h, giving
    sqrt(3) h / (2 sqrt(4 b^2 - h^2)).  This is exact for a single-pin knee
    (p = q = 0) and approximate otherwise.

    With exact=True the full chain rule through theta is used,
    (dl/dtheta)/(dh/dtheta) = (sqrt(3)/2) tan(theta), which accounts for the
    knee anchor offsets as well.
    """
    if exact:
        co = math.cos(theta)
        if co <= 0.0:
            return math.inf
        return 0.5 * SQRT3 * math.sin(theta) / co
    h = height(geom, theta)
    b = effective_leg(geom, theta)
    radicand = 4.0 * b * b - h * h
    if radicand <= 0.0:
        return math.inf
    return SQRT3 * h / (2.0 * math.sqrt(radicand))


def thrust_force(
    geom: LinkageGeometry, model: ElasticModel, theta: float, exact: bool = False
) -> float:
    """Vertical thrust F_y = F_l |dl/dh| for the given drive law.

    Zero whenever the band is slack.  See dl_dh for the derivative
    convention selected by ``exact``.
    """
    lam = stretch(geom, theta)
    f_l = drive_force(model, lam)
    if f_l == 0.0:
        return 0.0
    return f_l * dl_dh(geom, theta, exact=exact)


def thrust_force_linear(geom: LinkageGeometry, k: float, theta: float) -> float:
    """Closed-form thrust for a constant-stiffness drive, F_l = k (l - l0).

    F_y = k h [2 sqrt(3) (c - l0) h^2 + 3 sqrt((4 b^2 - h^2) h^4)]
          / (4 sqrt((4 b^2 - h^2) h^4)),
    slack-clamped to zero when l < l0.
    """
    if k < 0.0:
        raise ValueError(f"stiffness must be non-negative, got {k}")
    if anchor_distance(geom, theta) < geom.l0:
        return 0.0
    h = height(geom, theta)
    b = effective_leg(geom, theta)
    radicand = (4.0 * b * b - h * h) * h**4
    if radicand <= 0.0:
        raise ValueError(f"configuration at full extension (4 b^2 <= h^2) at theta={theta}")
    root = math.sqrt(radicand)
    return k * h * (2.0 * SQRT3 * (geom.c - geom.l0) * h * h + 3.0 * root) / (4.0 * root)


def peak_height(a: float, c: float, l0: float) -> float:
    """Linkage height of maximum thrust for the single-pin, equal-arm,
    linear-spring case (p = q = 0, b = a).

    h = 2 sqrt(a^2 - [a^4 (c - l0)^2 / 3]^(1/3)).  Requires c <= l0 and
    a > sqrt((c - l0)^2 / 3); otherwise the thrust has no interior peak
    before full extension.
    """
    if c > l0:
        raise ValueError("no interior thrust peak when c > l0 (force-inversion regime)")
    d2 = (c - l0) ** 2
    if a * a <= d2 / 3.0:
        raise ValueError("no thrust peak before full extension: a <= sqrt((c - l0)^2 / 3)")
    return 2.0 * math.sqrt(a * a - (a**4 * d2 / 3.0) ** (1.0 / 3.0))


def distension_height(a: float, c: float, l0: float) -> float:
    """Linkage height at which the band reaches its rest length (F_l = 0),
    for the single-pin, equal-arm case.

    h = 2 sqrt((3 a^2 - (c - l0)^2) / 3).  Requires l0 >= c (otherwise the
    band is taut at every height) and 3 a^2 >= (c - l0)^2 (otherwise the
    band never slackens before full extension).
    """
    if l0 < c:
        raise ValueError("band taut at all heights when l0 < c: no distension point")
    d2 = (c - l0) ** 2
    if 3.0 * a * a < d2:
        raise ValueError("band never slackens before full extension: 3 a^2 < (c - l0)^2")
    return 2.0 * math.sqrt((3.0 * a * a - d2) / 3.0)


@dataclass(frozen=True)
class ThrustProfile:
    """Sampled thrust curve over a leg-angle interval.

    Columns are parallel arrays; h_norm and Fy_norm are normalised to the
    profile maxima for plotting.
    """

    geometry: LinkageGeometry
    model: ElasticModel
    exact: bool
    theta: np.ndarray
    h: np.ndarray
    lam: np.ndarray
    F_l: np.ndarray
    F_y: np.ndarray
    h_norm: np.ndarray
    Fy_norm: np.ndarray

    CSV_HEADER = ("theta", "h", "lambda", "F_l", "F_y", "h_norm", "Fy_norm")

    def __len__(self):
        return len(self.theta)

    def rows(self):
        return zip(self.theta, self.h, self.lam, self.F_l, self.F_y,
                   self.h_norm, self.Fy_norm)


def thrust_profile(
    geom: LinkageGeometry,
    model: ElasticModel,
    interval: LegAngleInterval,
    n_samples: int,
    exact: bool = False,
) -> ThrustProfile:
    """Uniform theta sampling of (h, lambda, F_l, F_y) over the interval."""
    if n_samples < 2:
        raise ValueError(f"need at least 2 samples, got {n_samples}")
    theta = np.linspace(interval.theta_min, interval.theta_max, n_samples)
    h = np.empty(n_samples)
    lam = np.empty(n_samples)
    f_l = np.empty(n_samples)
    f_y = np.empty(n_samples)
    for i, th in enumerate(theta):
        th = float(th)
        h[i] = height(geom, th)
        lam[i] = stretch(geom, th)
        f_l[i] = drive_force(model, lam[i])
        f_y[i] = 0.0 if f_l[i] == 0.0 else f_l[i] * dl_dh(geom, th, exact=exact)
    h_max = h.max()
    fy_max = f_y.max()
    return ThrustProfile(
        geometry=geom,
        model=model,
        exact=exact,
        theta=theta,
        h=h,
        lam=lam,
        F_l=f_l,
        F_y=f_y,
        h_norm=h / h_max if h_max > 0 else np.zeros_like(h),
        Fy_norm=f_y / fy_max if fy_max > 0 else np.zeros_like(f_y),
    )
