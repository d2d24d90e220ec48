"""Photonic quantities: coupling constant vs oscillator strength, mode
volume, quality factor, and the constants they need.

The coupling formula g = sqrt(e^2 f / (4 eps0 eps_r m V)) is an angular
frequency; it is multiplied by hbar and converted to meV so that g is the
half-splitting of the Rabi doublet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA values in SI, plus the eV-nm energy-wavelength product."""

    vacuum_permittivity: float = 8.8541878128e-12   # F/m
    electron_mass: float = 9.1093837015e-31          # kg
    elementary_charge: float = 1.602176634e-19       # C
    reduced_planck: float = 1.054571817e-34          # J s
    hc_ev_nm: float = 1239.841984                    # eV nm


CODATA = PhysicalConstants()


@dataclass(frozen=True)
class CavityOptics:
    """Optical parameters entering the coupling-constant formula.

    eps_r defaults to n_eff^2 when not given explicitly; the mode volume
    is mode_volume_factor * (lambda/n_eff)^3.
    """

    emission_energy: float          # meV
    n_eff: float = 3.2
    eps_r: float | None = None
    mode_volume_factor: float = 6.0

    def __post_init__(self):
        if self.emission_energy <= 0:
            raise ValueError("emission energy must be positive")
        if not 1.0 <= self.n_eff <= 4.0:
            raise ValueError("n_eff must lie in [1, 4]")
        if self.eps_r is None:
            object.__setattr__(self, "eps_r", self.n_eff ** 2)
        if self.eps_r <= 1.0:
            raise ValueError("eps_r must exceed 1")
        if self.mode_volume_factor <= 0:
            raise ValueError("mode_volume_factor must be positive")


def wavelength_from_energy(e_mev: float,
                           constants: PhysicalConstants = CODATA) -> float:
    """Vacuum wavelength in nm for a photon energy in meV."""
    if e_mev <= 0:
        raise ValueError("energy must be positive")
    return constants.hc_ev_nm / (e_mev * 1e-3)


def energy_from_wavelength(wavelength_nm: float,
                           constants: PhysicalConstants = CODATA) -> float:
    """Photon energy in meV for a vacuum wavelength in nm."""
    if wavelength_nm <= 0:
        raise ValueError("wavelength must be positive")
    return constants.hc_ev_nm / wavelength_nm * 1e3


def mode_volume(optics: CavityOptics,
                constants: PhysicalConstants = CODATA) -> float:
    """Effective mode volume in m^3: factor * (lambda/n_eff)^3."""
    lam_m = wavelength_from_energy(optics.emission_energy, constants) * 1e-9
    return optics.mode_volume_factor * (lam_m / optics.n_eff) ** 3


def coupling_from_f(f: float, optics: CavityOptics, eta_pos: float = 1.0,
                    constants: PhysicalConstants = CODATA) -> float:
    """Coupling constant g in meV for an exciton oscillator strength f.

    eta_pos in (0, 1] scales g down for a spatial mismatch between the
    emitter and the mode antinode (1 = emitter at the antinode).
    """
    if f <= 0:
        raise ValueError("oscillator strength must be positive")
    if not 0 < eta_pos <= 1:
        raise ValueError("eta_pos must lie in (0, 1]")
    v = mode_volume(optics, constants)
    omega = math.sqrt(constants.elementary_charge ** 2 * f
                      / (4.0 * constants.vacuum_permittivity * optics.eps_r
                         * constants.electron_mass * v))
    g_joule = constants.reduced_planck * omega
    return eta_pos * g_joule / constants.elementary_charge * 1e3


def f_from_coupling(g_mev: float, optics: CavityOptics, eta_pos: float = 1.0,
                    constants: PhysicalConstants = CODATA) -> float:
    """Oscillator strength deduced from a measured coupling constant.

    Exact inverse of coupling_from_f; with eta_pos < 1 the returned f is
    the larger value needed to reach the same g off the antinode.
    """
    if g_mev <= 0:
        raise ValueError("coupling constant must be positive")
    if not 0 < eta_pos <= 1:
        raise ValueError("eta_pos must lie in (0, 1]")
    v = mode_volume(optics, constants)
    omega = (g_mev / eta_pos) * 1e-3 * constants.elementary_charge \
        / constants.reduced_planck
    return (4.0 * constants.vacuum_permittivity * optics.eps_r
            * constants.electron_mass * v * omega ** 2
            / constants.elementary_charge ** 2)


def quality_factor(e_mev: float, gamma_mev: float) -> float:
    """Q = E / gamma for a resonance energy and FWHM in the same units."""
    if e_mev <= 0 or gamma_mev <= 0:
        raise ValueError("energy and linewidth must be positive")
    return e_mev / gamma_mev
