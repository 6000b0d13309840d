"""Drive-force laws for the elastic band, stored energy, and coefficient fits.

Three interchangeable force-stretch laws are supported: an ideal linear
spring, a Gaussian (statistical, temperature-proportional) rubber law, and a
two-coefficient Mooney-Rivlin law.  All of them are slack-clamped: the band
exerts no force below its rest length (stretch ratio lambda < 1).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

FORCE_STRETCH_HEADER = ("lambda", "force_N")


@dataclass(frozen=True)
class LinearSpring:
    """F = k (l - l0) for l > l0, else 0."""

    k: float   # stiffness [N/m]
    l0: float  # rest length [m]

    def __post_init__(self):
        _require_nonneg(k=self.k)
        _require_pos(l0=self.l0)


@dataclass(frozen=True)
class GaussianBand:
    """F = C0 T (lambda - lambda^-2) for lambda > 1, else 0.

    Isothermal: T is a fixed material temperature, never a state variable.
    A0 is carried for interface parity with the Mooney-Rivlin law; the
    Gaussian force is already per strip, not per unit area.
    """

    C0: float  # material constant [N/K]
    T: float   # temperature [K]
    l0: float  # rest length [m]
    A0: float  # cross-sectional area [m^2]

    def __post_init__(self):
        _require_nonneg(C0=self.C0, T=self.T)
        _require_pos(l0=self.l0, A0=self.A0)


@dataclass(frozen=True)
class MooneyRivlinBand:
    """F = A0 [2 C1 (lambda - lambda^-2) + 2 C2 (1 - lambda^-3)], slack-clamped."""

    C1: float  # [Pa]
    C2: float  # [Pa]
    l0: float  # rest length [m]
    A0: float  # cross-sectional area [m^2]

    def __post_init__(self):
        _require_nonneg(C1=self.C1, C2=self.C2)
        _require_pos(l0=self.l0, A0=self.A0)


ElasticModel = Union[LinearSpring, GaussianBand, MooneyRivlinBand]


def _require_pos(**fields):
    for name, value in fields.items():
        if value <= 0.0:
            raise ValueError(f"{name} must be positive, got {value}")


def _require_nonneg(**fields):
    for name, value in fields.items():
        if value < 0.0:
            raise ValueError(f"{name} must be non-negative, got {value}")


@dataclass(frozen=True)
class ForceStretchSample:
    """One measured point of the band's force-stretch curve."""

    stretch: float  # lambda, dimensionless, >= 1
    force: float    # [N], >= 0

    def __post_init__(self):
        if self.stretch < 1.0:
            raise ValueError(f"stretch must be >= 1, got {self.stretch}")
        if self.force < 0.0:
            raise ValueError(f"force must be >= 0, got {self.force}")


def drive_force(model: ElasticModel, lam: float) -> float:
    """Band tension at stretch ratio lam; exactly 0 when slack (lam < 1)."""
    if lam <= 0.0:
        raise ValueError(f"stretch ratio must be positive, got {lam}")
    if lam < 1.0:
        return 0.0
    if isinstance(model, LinearSpring):
        return model.k * model.l0 * (lam - 1.0)
    if isinstance(model, GaussianBand):
        return model.C0 * model.T * (lam - 1.0 / (lam * lam))
    if isinstance(model, MooneyRivlinBand):
        inv2 = 1.0 / (lam * lam)
        return model.A0 * (
            2.0 * model.C1 * (lam - inv2) + 2.0 * model.C2 * (1.0 - inv2 / lam)
        )
    raise TypeError(f"unknown elastic model {type(model).__name__}")


def stored_energy(model: ElasticModel, lam: float) -> float:
    """Elastic energy integral of drive_force from rest length to lam * l0.

    Zero for lam <= 1; continuous at lam = 1.
    """
    if lam <= 0.0:
        raise ValueError(f"stretch ratio must be positive, got {lam}")
    if lam <= 1.0:
        return 0.0
    if isinstance(model, LinearSpring):
        d = lam - 1.0
        return 0.5 * model.k * model.l0 * model.l0 * d * d
    if isinstance(model, GaussianBand):
        return model.C0 * model.T * model.l0 * (0.5 * lam * lam + 1.0 / lam - 1.5)
    if isinstance(model, MooneyRivlinBand):
        d = lam - 1.0
        bracket = model.C1 * lam * (lam + 2.0) + 2.0 * model.C2 * lam + model.C2
        return model.A0 * model.l0 / (lam * lam) * d * d * bracket
    raise TypeError(f"unknown elastic model {type(model).__name__}")


@dataclass(frozen=True)
class MooneyFit:
    C1: float
    C2: float
    rmse: float
    r_squared: float
    model: MooneyRivlinBand


@dataclass(frozen=True)
class GaussianFit:
    C0: float
    rmse: float
    r_squared: float


def fit_mooney(
    data: Sequence[ForceStretchSample], A0: float, l0: float
) -> MooneyFit:
    """Least-squares Mooney-Rivlin coefficients from force-stretch samples.

    The force law is linear in (C1, C2), so the fit is an ordinary linear
    least-squares solve.  Requires at least 3 samples with at least two
    distinct stretch values above 1 (otherwise the design is rank deficient).
    """
    _require_pos(A0=A0, l0=l0)
    if len(data) < 3:
        raise ValueError(f"need at least 3 samples, got {len(data)}")
    lam = np.array([s.stretch for s in data], dtype=float)
    force = np.array([s.force for s in data], dtype=float)
    design = np.column_stack(
        [
            2.0 * A0 * (lam - lam**-2),
            2.0 * A0 * (1.0 - lam**-3),
        ]
    )
    if np.linalg.matrix_rank(design) < 2:
        raise ValueError("rank-deficient design: need at least two distinct stretches > 1")
    coeffs, *_ = np.linalg.lstsq(design, force, rcond=None)
    c1, c2 = float(coeffs[0]), float(coeffs[1])
    predicted = design @ coeffs
    rmse, r2 = _fit_quality(force, predicted)
    return MooneyFit(c1, c2, rmse, r2, MooneyRivlinBand(c1, c2, l0, A0))


def fit_gaussian(data: Sequence[ForceStretchSample], T: float) -> GaussianFit:
    """One-parameter least-squares fit of C0 in F = C0 T (lambda - lambda^-2)."""
    _require_pos(T=T)
    if len(data) < 1:
        raise ValueError("need at least 1 sample")
    lam = np.array([s.stretch for s in data], dtype=float)
    force = np.array([s.force for s in data], dtype=float)
    x = T * (lam - lam**-2)
    denom = float(x @ x)
    if denom <= 0.0:
        raise ValueError("all samples slack (stretch <= 1): C0 unidentifiable")
    c0 = float(x @ force) / denom
    rmse, r2 = _fit_quality(force, c0 * x)
    return GaussianFit(c0, rmse, r2)


def _fit_quality(observed: np.ndarray, predicted: np.ndarray) -> tuple[float, float]:
    """(rmse, R^2); R^2 is measured against the mean-force null model."""
    residual = observed - predicted
    rmse = float(np.sqrt(np.mean(residual**2)))
    ss_res = float(residual @ residual)
    centred = observed - observed.mean()
    ss_tot = float(centred @ centred)
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-30 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return rmse, r2


def load_force_stretch_csv(path) -> list[ForceStretchSample]:
    """Read force-stretch samples from a two-column CSV (header lambda,force_N)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader, ()))
        if header != FORCE_STRETCH_HEADER:
            raise ValueError(
                f"expected header {','.join(FORCE_STRETCH_HEADER)!r}, got {','.join(header)!r}"
            )
        samples = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"line {line_no}: expected 2 columns, got {len(row)}")
            samples.append(ForceStretchSample(float(row[0]), float(row[1])))
    return samples


def save_force_stretch_csv(path, samples: Iterable[ForceStretchSample]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(FORCE_STRETCH_HEADER)
        for s in samples:
            writer.writerow([repr(s.stretch), repr(s.force)])
