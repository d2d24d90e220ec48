"""Temperature dependence of the bare exciton and cavity-mode parameters.

The exciton follows a Varshni law (GaAs literature coefficients by
default), the mode redshifts quadratically through the thermo-optic index
change, and the exciton linewidth broadens linearly.  The dataclass
defaults are the calibrated scenario used throughout: crossing near 30 K
with a 0.4 meV minimum splitting at g = 0.2 meV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coupling import CoupledSystem


class BracketError(ValueError):
    """The detuning does not change sign on the requested bracket."""


@dataclass(frozen=True)
class TuningModel:
    """Parametric temperature model (energies meV, temperatures K).

    qd_e0 - qd_alpha*T^2/(T + qd_beta)   bare exciton energy
    cm_e0 - cm_c1*T - cm_c2*T^2          bare mode energy
    gamma_qd_0 + gamma_qd_slope*T        exciton FWHM
    gamma_cm                             mode FWHM, temperature independent
    """

    qd_e0: float = 1685.0
    qd_alpha: float = 0.5405   # meV/K, GaAs Varshni default
    qd_beta: float = 204.0     # K, GaAs Varshni default
    cm_e0: float = 1683.5
    cm_c1: float = 0.005       # meV/K
    cm_c2: float = 0.0005      # meV/K^2
    gamma_qd_0: float = 0.08
    gamma_qd_slope: float = 0.004  # meV/K
    gamma_cm: float = 0.2

    def __post_init__(self):
        if self.qd_e0 <= 0 or self.cm_e0 <= 0:
            raise ValueError("zero-temperature energies must be positive")
        if self.qd_beta <= 0:
            raise ValueError("qd_beta must be positive")
        if self.gamma_qd_0 <= 0 or self.gamma_cm <= 0:
            raise ValueError("linewidths must be positive")
        for name in ("qd_alpha", "cm_c1", "cm_c2", "gamma_qd_slope"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0 (both lines redshift, "
                                 "QD broadens with temperature)")


def qd_energy(model: TuningModel, t: float) -> float:
    """Bare exciton energy at temperature t (Varshni form), meV."""
    if t < 0:
        raise ValueError("temperature must be >= 0 K")
    return model.qd_e0 - model.qd_alpha * t * t / (t + model.qd_beta)


def cm_energy(model: TuningModel, t: float) -> float:
    """Bare cavity-mode energy at temperature t, meV."""
    if t < 0:
        raise ValueError("temperature must be >= 0 K")
    return model.cm_e0 - model.cm_c1 * t - model.cm_c2 * t * t


def gamma_qd(model: TuningModel, t: float) -> float:
    """Exciton FWHM at temperature t, meV (linear thermal broadening)."""
    if t < 0:
        raise ValueError("temperature must be >= 0 K")
    return model.gamma_qd_0 + model.gamma_qd_slope * t


def detuning(model: TuningModel, t: float) -> float:
    """Bare detuning E_QD(T) - E_C(T), meV."""
    return qd_energy(model, t) - cm_energy(model, t)


def system_at(model: TuningModel, g: float, t: float) -> CoupledSystem:
    """Coupled system snapshot at temperature t for coupling constant g."""
    return CoupledSystem(
        e_qd=qd_energy(model, t),
        e_c=cm_energy(model, t),
        g=g,
        gamma_qd=gamma_qd(model, t),
        gamma_cm=model.gamma_cm,
    )


def resonance_temperature(model: TuningModel, t_lo: float, t_hi: float,
                          tol: float = 1e-6) -> float:
    """Temperature where the exciton and mode cross, by bisection.

    Returns T* with |E_QD(T*) - E_C(T*)| < tol (meV).  Raises BracketError
    when the detuning does not change sign on [t_lo, t_hi].
    """
    if not t_lo < t_hi:
        raise ValueError("need t_lo < t_hi")
    d_lo = detuning(model, t_lo)
    d_hi = detuning(model, t_hi)
    if abs(d_lo) < tol:
        return t_lo
    if abs(d_hi) < tol:
        return t_hi
    if math.copysign(1.0, d_lo) == math.copysign(1.0, d_hi):
        raise BracketError(
            f"detuning does not change sign on [{t_lo}, {t_hi}] K "
            f"({d_lo:+.4g} -> {d_hi:+.4g} meV)")
    lo, hi = t_lo, t_hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        d_mid = detuning(model, mid)
        if abs(d_mid) < tol:
            return mid
        if math.copysign(1.0, d_lo) == math.copysign(1.0, d_mid):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    raise RuntimeError("bisection failed to reach the detuning tolerance")
