"""Photoluminescence spectrum synthesis.

Each spectrum is a sum of two area-normalized Lorentzian branches whose
positions, widths and amplitudes come from the dressed-state model, plus a
flat background, convolved with a Gaussian instrument response on a
uniform energy grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coupling import CoupledSystem, dressed_states
from .tuning import TuningModel, system_at

# FWHM -> standard deviation for a Gaussian
_SIGMA_PER_FWHM = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))


class GridResolutionWarning(UserWarning):
    """Grid spacing is too coarse to resolve the narrowest feature."""


@dataclass(frozen=True)
class EmissionModel:
    """Detection efficiencies of the two emission channels.

    A branch with exciton fraction x is detected with amplitude
    eta_x*x + eta_c*(1-x); at resonance (x = 1/2) both branches therefore
    have exactly equal amplitude whatever the efficiencies are.
    """

    eta_x: float = 1.0
    eta_c: float = 1.0
    background: float = 0.0

    def __post_init__(self):
        if self.eta_x < 0 or self.eta_c < 0:
            raise ValueError("channel efficiencies must be >= 0")
        if self.eta_x + self.eta_c <= 0:
            raise ValueError("at least one channel efficiency must be > 0")
        if self.background < 0:
            raise ValueError("background must be >= 0")


@dataclass(frozen=True)
class Spectrum:
    """Sampled intensity vs photon energy at one temperature.

    energies is a strictly increasing, uniformly spaced grid in meV;
    intensities are non-negative counts; resolution_fwhm records the
    Gaussian instrument response the data carry (0 = none).
    """

    temperature: float
    energies: np.ndarray
    intensities: np.ndarray
    resolution_fwhm: float

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        y = np.asarray(self.intensities, dtype=float)
        if e.ndim != 1 or e.size < 2:
            raise ValueError("energy grid must be 1-D with >= 2 points")
        if y.shape != e.shape:
            raise ValueError("intensities must match the energy grid")
        d = np.diff(e)
        if not np.all(d > 0):
            raise ValueError("energy grid must be strictly increasing")
        spacing = d.mean()
        if np.max(np.abs(d - spacing)) > 1e-9 * spacing:
            raise ValueError("energy grid must be uniform within 1e-9 relative")
        if not np.all(np.isfinite(y)) or np.any(y < 0):
            raise ValueError("intensities must be finite and >= 0")
        if not self.resolution_fwhm >= 0:
            raise ValueError("resolution_fwhm must be >= 0")
        e.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "intensities", y)

    @property
    def spacing(self) -> float:
        return float(self.energies[1] - self.energies[0])


def energy_grid(center: float, halfwidth: float = 3.0,
                spacing: float = 0.01) -> np.ndarray:
    """Uniform grid center +- halfwidth (meV), symmetric about center."""
    if spacing <= 0 or halfwidth <= 0:
        raise ValueError("spacing and halfwidth must be positive")
    n = int(round(halfwidth / spacing))
    return center + spacing * np.arange(-n, n + 1)


def lorentzian(e, center: float, fwhm: float):
    """Area-normalized Lorentzian density (1/meV).

    (1/pi) * (fwhm/2) / ((e - center)^2 + (fwhm/2)^2); peak value is
    2/(pi*fwhm).
    """
    if fwhm <= 0:
        raise ValueError("fwhm must be positive")
    h = 0.5 * fwhm
    return (h / math.pi) / ((np.asarray(e, dtype=float) - center) ** 2 + h * h)


def resolution_kernel(spacing: float, resolution_fwhm: float) -> np.ndarray:
    """Discrete unit-sum Gaussian kernel sampled on the grid spacing."""
    sigma = resolution_fwhm * _SIGMA_PER_FWHM
    half = max(1, int(math.ceil(5.0 * sigma / spacing)))
    x = spacing * np.arange(-half, half + 1)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def convolve_resolution(values: np.ndarray, spacing: float,
                        resolution_fwhm: float) -> np.ndarray:
    """Convolve sampled intensities with the instrument Gaussian.

    Edge-padded so a flat signal passes through unchanged; the unit-sum
    kernel preserves the integrated area.  resolution_fwhm = 0 is a no-op.
    """
    if resolution_fwhm == 0:
        return np.asarray(values, dtype=float).copy()
    kernel = resolution_kernel(spacing, resolution_fwhm)
    half = (kernel.size - 1) // 2
    padded = np.pad(np.asarray(values, dtype=float), half, mode="edge")
    return np.convolve(padded, kernel, mode="valid")


def branch_amplitudes(exciton_fraction_upper: float,
                      em: EmissionModel) -> tuple[float, float]:
    """Detected amplitudes (upper, lower) from the branch exciton content."""
    x = exciton_fraction_upper
    a_upper = em.eta_x * x + em.eta_c * (1.0 - x)
    a_lower = em.eta_x * (1.0 - x) + em.eta_c * x
    return a_upper, a_lower


def doublet_spectrum(sys: CoupledSystem, em: EmissionModel,
                     energies: np.ndarray, resolution_fwhm: float,
                     temperature: float = 0.0) -> Spectrum:
    """Synthesize the two-branch spectrum of a coupled system.

    intensity(E) = background + sum_b A_b * L(E; e_b, gamma_b), convolved
    with the instrument Gaussian.  Warns (GridResolutionWarning) when the
    grid spacing exceeds a quarter of the narrowest feature.
    """
    energies = np.asarray(energies, dtype=float)
    ds = dressed_states(sys)
    spacing = float(energies[1] - energies[0])
    narrowest = min(ds.gamma_upper, ds.gamma_lower)
    if resolution_fwhm > 0:
        narrowest = min(narrowest, resolution_fwhm)
    if spacing > narrowest / 4.0:
        warnings.warn(
            f"grid spacing {spacing:.4g} meV > 1/4 of the narrowest feature "
            f"({narrowest:.4g} meV)", GridResolutionWarning, stacklevel=2)
    a_upper, a_lower = branch_amplitudes(ds.exciton_fraction_upper, em)
    y = em.background + a_upper * lorentzian(energies, ds.e_upper, ds.gamma_upper) \
        + a_lower * lorentzian(energies, ds.e_lower, ds.gamma_lower)
    y = convolve_resolution(y, spacing, resolution_fwhm)
    return Spectrum(temperature=temperature, energies=energies,
                    intensities=y, resolution_fwhm=resolution_fwhm)


def simulate_series(model: TuningModel, g: float, em: EmissionModel,
                    temps, energies: np.ndarray,
                    resolution_fwhm: float) -> list[Spectrum]:
    """One spectrum per temperature from the tuning model, shared grid."""
    temps = list(temps)
    if not temps:
        raise ValueError("need at least one temperature")
    if any(t < 0 for t in temps):
        raise ValueError("temperatures must be >= 0 K")
    return [doublet_spectrum(system_at(model, g, t), em, energies,
                             resolution_fwhm, temperature=t)
            for t in temps]


def add_noise(spec: Spectrum, sigma: float, seed: int) -> Spectrum:
    """Add Gaussian counting noise, clamped at zero; deterministic per seed."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0:
        return spec
    rng = np.random.default_rng(seed)
    noisy = spec.intensities + rng.normal(0.0, sigma, spec.intensities.shape)
    return Spectrum(temperature=spec.temperature, energies=spec.energies,
                    intensities=np.clip(noisy, 0.0, None),
                    resolution_fwhm=spec.resolution_fwhm)
