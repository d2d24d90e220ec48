"""Whispering-gallery mode estimator for a thin semiconductor microdisk.

The 3-D disk is reduced to 2-D with the effective-index approximation:
the vertical confinement is the fundamental mode of a symmetric air /
semiconductor / air slab, and in-plane resonances obey the closed-disk
condition j_{m,p} = n_eff(lambda) * k * R, where j_{m,p} is the p-th zero
of the Bessel function J_m.  The perfect-reflection boundary puts mode
positions within a fraction of a free spectral range of the open-resonator
values, which is adequate for counting modes in a window; radiative Q is
outside this model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import jn_zeros

from .photonics import CODATA, wavelength_from_energy

# x-units of slack around the window when pre-selecting Bessel zeros, and
# the matching energy padding of the root bracket (~25 meV for a 2 um disk)
_ZERO_SLACK = 0.25

POLARIZATIONS = ("TE", "TM")


class SlabCutoffError(ValueError):
    """No guided slab mode exists at the requested wavelength."""


class ModeFamilyNotFoundError(LookupError):
    """No (p, polarization) family resonance near the requested energy."""


@dataclass(frozen=True)
class DiskGeometry:
    """Microdisk geometry and material index model.

    The core index may carry a linear dispersion about a reference
    wavelength: n(lambda) = core_index + core_dndl*(lambda - reference).
    """

    diameter_um: float = 2.0
    thickness_nm: float = 250.0
    core_index: float = 3.5
    core_dndl: float = 0.0          # 1/nm
    core_index_ref_nm: float = 750.0
    clad_index: float = 1.0

    def __post_init__(self):
        if self.diameter_um <= 0 or self.thickness_nm <= 0:
            raise ValueError("diameter and thickness must be positive")
        if self.clad_index < 1.0:
            raise ValueError("cladding index must be >= 1")

    def n_core(self, wavelength_nm: float) -> float:
        return self.core_index + self.core_dndl * (wavelength_nm
                                                   - self.core_index_ref_nm)

    @property
    def radius_nm(self) -> float:
        return self.diameter_um * 500.0


@dataclass(frozen=True)
class WgmMode:
    """One resonance of the closed-disk model."""

    azimuthal_m: int
    radial_p: int
    polarization: str
    energy_mev: float
    n_eff: float


def slab_n_eff(geom: DiskGeometry, wavelength_nm: float, pol: str) -> float:
    """Effective index of the fundamental vertical slab mode.

    Solves the symmetric three-layer transcendental equation
        u tan u = w              (TE)
        u tan u = (n1/n2)^2 w    (TM)
    with u^2 + w^2 = (V/2)^2 by bracketed bisection.  Only the lowest-order
    vertical mode is returned; it exists for any positive film thickness,
    so SlabCutoffError signals a film too thin (or contrast too low) for
    the root to be numerically resolvable.
    """
    if pol not in POLARIZATIONS:
        raise ValueError(f"polarization must be one of {POLARIZATIONS}")
    n1 = geom.n_core(wavelength_nm)
    n2 = geom.clad_index
    if n1 <= n2:
        raise SlabCutoffError(
            f"core index {n1:.4g} does not exceed cladding {n2:.4g} "
            f"at {wavelength_nm:.6g} nm")
    half = 0.5 * geom.thickness_nm
    k0 = 2.0 * math.pi / wavelength_nm
    v_half = k0 * half * math.sqrt(n1 * n1 - n2 * n2)
    if v_half <= 1e-9:
        raise SlabCutoffError("slab too thin to resolve a guided mode")
    ratio = (n1 / n2) ** 2 if pol == "TM" else 1.0

    def equation(u):
        w = math.sqrt(max(v_half * v_half - u * u, 0.0))
        return u * math.tan(u) - ratio * w

    lo = 1e-12
    hi = min(0.5 * math.pi, v_half) - 1e-12
    f_lo = equation(lo)
    if f_lo * equation(hi) > 0:
        raise SlabCutoffError("failed to bracket the fundamental slab mode")
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        f_mid = equation(mid)
        if f_lo * f_mid <= 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    u = 0.5 * (lo + hi)
    kappa = u / half
    return math.sqrt(n1 * n1 - (kappa / k0) ** 2)


def _size_parameter(geom: DiskGeometry, e_mev: float,
                    pol: str) -> tuple[float, float]:
    """(n_eff * k * R, n_eff) at a photon energy; increases with energy."""
    lam = wavelength_from_energy(e_mev, CODATA)
    n_eff = slab_n_eff(geom, lam, pol)
    return n_eff * 2.0 * math.pi * geom.radius_nm / lam, n_eff


def _solve_resonance(geom: DiskGeometry, j: float, pol: str, e_lo: float,
                     e_hi: float) -> tuple[float, float] | None:
    """Energy where n_eff*k*R = j, or None when not bracketed."""
    g_lo = _size_parameter(geom, e_lo, pol)[0] - j
    g_hi = _size_parameter(geom, e_hi, pol)[0] - j
    if g_lo * g_hi > 0:
        return None
    lo, hi = e_lo, e_hi
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        g_mid = _size_parameter(geom, mid, pol)[0] - j
        if g_lo * g_mid <= 0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    e = 0.5 * (lo + hi)
    return e, _size_parameter(geom, e, pol)[1]


def _bracket_pad_mev(geom: DiskGeometry, e_mid: float, pol: str) -> float:
    # energy span matching the zero-selection slack, from dx/dE ~ x/E
    x_mid = _size_parameter(geom, e_mid, pol)[0]
    return 2.0 * _ZERO_SLACK * e_mid / x_mid


def find_modes(geom: DiskGeometry, window: tuple[float, float],
               max_p: int | None = None) -> list[WgmMode]:
    """All (m, p, TE/TM) resonances inside [e_min, e_max] (meV), sorted.

    Azimuthal and radial orders are enumerated adaptively up to the
    largest Bessel zero that can resonate in the window; max_p optionally
    caps the radial order.
    """
    e_min, e_max = window
    if not e_min < e_max:
        return []
    modes: list[WgmMode] = []
    for pol in POLARIZATIONS:
        x_lo = _size_parameter(geom, e_min, pol)[0]
        x_hi = _size_parameter(geom, e_max, pol)[0]
        pad = _bracket_pad_mev(geom, 0.5 * (e_min + e_max), pol)
        e_lo_b, e_hi_b = e_min - pad, e_max + pad
        m = 0
        while True:
            m += 1
            if m > x_hi + _ZERO_SLACK:  # j_{m,1} > m, so no zero can fit
                break
            # consecutive zeros of J_m are spaced by more than pi
            n_zeros = max(1, int((x_hi + _ZERO_SLACK - m) / math.pi) + 1)
            if max_p is not None:
                n_zeros = min(n_zeros, max_p)
            for p, j in enumerate(jn_zeros(m, n_zeros), start=1):
                if j < x_lo - _ZERO_SLACK or j > x_hi + _ZERO_SLACK:
                    continue
                solved = _solve_resonance(geom, j, pol, e_lo_b, e_hi_b)
                if solved is None:
                    continue
                e, n_eff = solved
                if e_min <= e <= e_max:
                    modes.append(WgmMode(m, p, pol, e, n_eff))
    modes.sort(key=lambda mode: mode.energy_mev)
    return modes


def free_spectral_range(geom: DiskGeometry, near_mev: float, pol: str,
                        p: int) -> float:
    """Energy spacing of consecutive-m resonances of one (p, pol) family.

    Uses the azimuthal pair straddling `near_mev` (the largest m whose
    resonance sits at or below it, and m+1).
    """
    if p < 1:
        raise ValueError("radial order p must be >= 1")
    x_near = _size_parameter(geom, near_mev, pol)[0]
    pad = _bracket_pad_mev(geom, near_mev, pol)
    # largest m with j_{m,p} <= x_near
    m = 0
    while jn_zeros(m + 1, p)[-1] <= x_near:
        m += 1
    if m == 0:
        raise ModeFamilyNotFoundError(
            f"no (p={p}, {pol}) resonance at or below {near_mev:.6g} meV")
    e_lo, e_hi = 0.5 * near_mev, 1.5 * near_mev
    first = _solve_resonance(geom, jn_zeros(m, p)[-1], pol, e_lo, e_hi + pad)
    second = _solve_resonance(geom, jn_zeros(m + 1, p)[-1], pol, e_lo, e_hi + pad)
    if first is None or second is None:
        raise ModeFamilyNotFoundError(
            f"(p={p}, {pol}) family not resolvable near {near_mev:.6g} meV")
    return second[0] - first[0]
