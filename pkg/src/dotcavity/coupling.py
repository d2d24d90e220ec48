"""Coupled exciton-photon two-state model.

A single quantum-dot exciton interacting with one cavity mode is described
by the 2x2 Hamiltonian [[E_QD, g], [g, E_C]] with phenomenological FWHM
linewidths attached to the bare states.  All energies and linewidths are
in meV.  Every function here is pure and safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DegenerateSystemError(ValueError):
    """g = 0 at zero detuning: the eigenvectors are undefined."""


@dataclass(frozen=True)
class CoupledSystem:
    """Bare parameters of the exciton-photon pair at one temperature.

    e_qd, e_c : bare exciton / cavity-mode energies (meV)
    g         : coupling constant, half the vacuum Rabi splitting (meV)
    gamma_qd, gamma_cm : bare FWHM linewidths (meV)
    """

    e_qd: float
    e_c: float
    g: float
    gamma_qd: float
    gamma_cm: float

    def __post_init__(self):
        values = (self.e_qd, self.e_c, self.g, self.gamma_qd, self.gamma_cm)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("CoupledSystem parameters must all be finite")
        if self.e_qd <= 0 or self.e_c <= 0:
            raise ValueError("bare energies must be positive")
        if self.g < 0:
            raise ValueError("coupling constant g must be >= 0")
        if self.gamma_qd <= 0 or self.gamma_cm <= 0:
            raise ValueError("linewidths must be positive")

    @property
    def detuning(self) -> float:
        """Bare detuning E_QD - E_C (meV)."""
        return self.e_qd - self.e_c


@dataclass(frozen=True)
class DressedStates:
    """Dressed-state energies, exciton content and mixed linewidths."""

    e_upper: float
    e_lower: float
    exciton_fraction_upper: float
    gamma_upper: float
    gamma_lower: float

    @property
    def splitting(self) -> float:
        return self.e_upper - self.e_lower


@dataclass(frozen=True)
class RegimeReport:
    """Coupling-regime classification of a system."""

    regime: str                   # "strong" or "weak"
    splitting_at_resonance: float  # 2 g (meV)
    resolvability_ratio: float     # 2 g over the mean bare linewidth


def dressed_energies(sys: CoupledSystem) -> tuple[float, float]:
    """Eigenenergies (upper, lower) of the coupled system in meV.

    E_pm = (E_C + E_QD)/2 +- sqrt((E_C - E_QD)^2 + 4 g^2)/2
    """
    mean = 0.5 * (sys.e_c + sys.e_qd)
    half = 0.5 * math.hypot(sys.detuning, 2.0 * sys.g)
    return mean + half, mean - half


def mixing_fractions(sys: CoupledSystem) -> float:
    """Exciton weight of the upper dressed state.

    Returns (1 + delta / sqrt(delta^2 + 4 g^2)) / 2, the squared exciton
    amplitude of the upper eigenvector.  The lower branch carries the
    complement 1 - x.  Exactly 1/2 at zero detuning.
    """
    delta = sys.detuning
    if sys.g == 0.0 and delta == 0.0:
        raise DegenerateSystemError(
            "g = 0 with zero detuning: mixing weights are undefined")
    return 0.5 * (1.0 + delta / math.hypot(delta, 2.0 * sys.g))


def branch_linewidths(sys: CoupledSystem) -> tuple[float, float]:
    """FWHM of the (upper, lower) dressed states in meV.

    Each branch linewidth is the bare linewidths weighted by the branch's
    exciton and photon content: x*gamma_QD + (1-x)*gamma_CM.
    """
    x = mixing_fractions(sys)
    upper = x * sys.gamma_qd + (1.0 - x) * sys.gamma_cm
    lower = (1.0 - x) * sys.gamma_qd + x * sys.gamma_cm
    return upper, lower


def dressed_states(sys: CoupledSystem) -> DressedStates:
    """Full dressed-state description (energies, mixing, linewidths)."""
    e_upper, e_lower = dressed_energies(sys)
    x = mixing_fractions(sys)
    gamma_upper, gamma_lower = branch_linewidths(sys)
    return DressedStates(e_upper, e_lower, x, gamma_upper, gamma_lower)


def classify_regime(sys: CoupledSystem) -> RegimeReport:
    """Strong vs weak coupling by the resolved-doublet criterion.

    The doublet is resolvable when the resonant splitting 2g exceeds the
    mean bare linewidth (gamma_QD + gamma_CM)/2; that ratio > 1 classifies
    the system as strongly coupled.
    """
    mean_width = 0.5 * (sys.gamma_qd + sys.gamma_cm)
    ratio = 2.0 * sys.g / mean_width
    regime = "strong" if ratio > 1.0 else "weak"
    return RegimeReport(regime=regime,
                        splitting_at_resonance=2.0 * sys.g,
                        resolvability_ratio=ratio)


def purcell_factor(q: float, mode_volume: float, n: float,
                   wavelength_nm: float) -> float:
    """Weak-coupling emission enhancement Fp = 3 Q lambda^3 / (4 pi^2 n^3 V).

    `mode_volume` is given in units of (lambda/n)^3, the same convention
    used by CavityOptics.  Provided for completeness when a dot-mode pair
    crosses instead of anticrossing; the spectral model itself never uses
    it.
    """
    if q <= 0 or mode_volume <= 0:
        raise ValueError("quality factor and mode volume must be positive")
    if n <= 0 or wavelength_nm <= 0:
        raise ValueError("index and wavelength must be positive")
    v_abs = mode_volume * (wavelength_nm / n) ** 3
    return 3.0 * q * wavelength_nm ** 3 / (4.0 * math.pi ** 2 * n ** 3 * v_abs)
