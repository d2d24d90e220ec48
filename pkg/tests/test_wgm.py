"""Tests for the slab effective index and the whispering-gallery solver."""

import dataclasses
import math

import numpy as np
import pytest
from scipy.special import jn_zeros

from dotcavity.photonics import wavelength_from_energy
from dotcavity.wgm import (DiskGeometry, ModeFamilyNotFoundError,
                           SlabCutoffError, find_modes, free_spectral_range,
                           slab_n_eff)

GEOM = DiskGeometry()  # 2 um diameter, 250 nm thick, n = 3.5
WINDOW = (1653.5, 1668.5)  # 15 meV about 1661 meV


def scan_oracle_n_eff(geom, wavelength_nm, pol, n_grid=200001):
    """Independent dense-scan sign-change solve of the slab dispersion."""
    n1, n2 = geom.n_core(wavelength_nm), geom.clad_index
    k0 = 2 * math.pi / wavelength_nm
    half = 0.5 * geom.thickness_nm
    ratio = (n1 / n2) ** 2 if pol == "TM" else 1.0

    def dispersion(n_eff):
        kappa = k0 * math.sqrt(n1 ** 2 - n_eff ** 2)
        gamma = k0 * math.sqrt(n_eff ** 2 - n2 ** 2)
        return kappa * math.tan(kappa * half) - ratio * gamma

    grid = np.linspace(n2 + 1e-9, n1 - 1e-9, n_grid)
    values = [dispersion(n) for n in grid]
    roots = []
    for i in range(n_grid - 1):
        a, b = values[i], values[i + 1]
        if a == 0.0:
            roots.append(grid[i])
        elif a * b < 0 and abs(a - b) < 1e3:  # skip tan asymptotes
            lo, hi = grid[i], grid[i + 1]
            f_lo = a
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                f_mid = dispersion(mid)
                if f_lo * f_mid <= 0:
                    hi = mid
                else:
                    lo, f_lo = mid, f_mid
            roots.append(0.5 * (lo + hi))
    return max(roots)  # fundamental = largest effective index


class TestSlabEffectiveIndex:
    def test_bulk_limit_thick_film(self):
        thick = dataclasses.replace(GEOM, thickness_nm=10000.0)
        assert slab_n_eff(thick, 750.0, "TE") == pytest.approx(3.5, abs=1e-3)

    def test_thin_film_approaches_cladding(self):
        thin_te = dataclasses.replace(GEOM, thickness_nm=2.0)
        assert slab_n_eff(thin_te, 750.0, "TE") == pytest.approx(1.0,
                                                                 abs=1e-2)
        thin_tm = dataclasses.replace(GEOM, thickness_nm=5.0)
        assert slab_n_eff(thin_tm, 750.0, "TM") == pytest.approx(1.0,
                                                                 abs=1e-2)
        # TE at 5 nm is still barely guided, just above the cladding
        assert 1.0 < slab_n_eff(dataclasses.replace(GEOM, thickness_nm=5.0),
                                750.0, "TE") < 1.05

    def test_value_against_dense_scan_oracle(self):
        lam = 746.0
        n_te = slab_n_eff(GEOM, lam, "TE")
        assert 1.0 < n_te < 3.5
        assert n_te == pytest.approx(scan_oracle_n_eff(GEOM, lam, "TE"),
                                     abs=1e-6)
        assert n_te == pytest.approx(3.3030, abs=1e-3)  # frozen root
        n_tm = slab_n_eff(GEOM, lam, "TM")
        assert n_tm == pytest.approx(scan_oracle_n_eff(GEOM, lam, "TM"),
                                     abs=1e-6)
        assert n_tm < n_te

    def test_cutoff_when_no_contrast(self):
        no_contrast = dataclasses.replace(GEOM, core_index=1.0)
        with pytest.raises(SlabCutoffError):
            slab_n_eff(no_contrast, 750.0, "TE")

    def test_cutoff_when_vanishing_film(self):
        vanishing = dataclasses.replace(GEOM, thickness_nm=1e-7)
        with pytest.raises(SlabCutoffError):
            slab_n_eff(vanishing, 750.0, "TE")

    def test_polarization_validated(self):
        with pytest.raises(ValueError):
            slab_n_eff(GEOM, 750.0, "TEM")

    def test_linear_dispersion_model(self):
        dispersive = dataclasses.replace(GEOM, core_dndl=-4e-4)
        assert dispersive.n_core(750.0) == 3.5
        assert dispersive.n_core(760.0) == pytest.approx(3.496, rel=1e-12)
        assert slab_n_eff(dispersive, 760.0, "TE") \
            < slab_n_eff(GEOM, 760.0, "TE")


class TestFindModes:
    def test_default_window_count(self):
        modes = find_modes(GEOM, WINDOW)
        assert 4 <= len(modes) <= 12
        assert len(modes) == 4  # frozen enumeration for the default disk

    def test_empty_window(self):
        assert find_modes(GEOM, (1661.0, 1661.0)) == []

    def test_doubling_diameter_increases_count(self):
        big = dataclasses.replace(GEOM, diameter_um=4.0)
        assert len(find_modes(big, WINDOW)) > len(find_modes(GEOM, WINDOW))

    def test_resonance_self_consistency(self):
        for mode in find_modes(GEOM, WINDOW):
            lam = wavelength_from_energy(mode.energy_mev)
            x = mode.n_eff * (2 * math.pi / lam) * GEOM.radius_nm
            j = jn_zeros(mode.azimuthal_m, mode.radial_p)[-1]
            assert abs(j - x) < 1e-8 * j

    def test_modes_sorted_and_inside_window(self):
        modes = find_modes(GEOM, WINDOW)
        energies = [m.energy_mev for m in modes]
        assert energies == sorted(energies)
        assert all(WINDOW[0] <= e <= WINDOW[1] for e in energies)
        assert all(m.polarization in ("TE", "TM") for m in modes)
        assert all(1.0 < m.n_eff < 3.5 for m in modes)

    def test_energy_ordering_in_m_and_p(self):
        # wide window so several (m, p) of each family appear
        wide = (1400.0, 1900.0)
        modes = find_modes(GEOM, wide, max_p=3)
        by_mp = {(m.polarization, m.azimuthal_m, m.radial_p): m.energy_mev
                 for m in modes}
        for (pol, m, p), e in by_mp.items():
            if (pol, m + 1, p) in by_mp:
                assert by_mp[(pol, m + 1, p)] > e
            if (pol, m, p + 1) in by_mp:
                assert by_mp[(pol, m, p + 1)] > e

    def test_completeness_against_brute_force(self):
        """Brute-force scan m in [1,100], p in [1,10] finds nothing extra."""
        found = {(m.polarization, m.azimuthal_m, m.radial_p)
                 for m in find_modes(GEOM, WINDOW)}
        brute = set()
        for pol in ("TE", "TM"):
            def size_parameter(e_mev):
                lam = wavelength_from_energy(e_mev)
                n_eff = slab_n_eff(GEOM, lam, pol)
                return n_eff * (2 * math.pi / lam) * GEOM.radius_nm

            x_lo, x_hi = size_parameter(WINDOW[0]), size_parameter(WINDOW[1])
            for m in range(1, 101):
                for p, j in enumerate(jn_zeros(m, 10), start=1):
                    if j < x_lo - 0.5 or j > x_hi + 0.5:
                        continue
                    lo, hi = WINDOW[0] - 30.0, WINDOW[1] + 30.0
                    g_lo = size_parameter(lo) - j
                    if g_lo * (size_parameter(hi) - j) > 0:
                        continue
                    for _ in range(80):
                        mid = 0.5 * (lo + hi)
                        g_mid = size_parameter(mid) - j
                        if g_lo * g_mid <= 0:
                            hi = mid
                        else:
                            lo, g_lo = mid, g_mid
                    e = 0.5 * (lo + hi)
                    if WINDOW[0] <= e <= WINDOW[1]:
                        brute.add((pol, m, p))
        assert brute <= found
        assert brute == {(m.polarization, m.azimuthal_m, m.radial_p)
                         for m in find_modes(GEOM, WINDOW, max_p=10)}


class TestFreeSpectralRange:
    def test_fundamental_family_scale(self):
        fsr = free_spectral_range(GEOM, 1661.0, "TE", 1)
        assert 10.0 < fsr < 200.0  # tens of meV for a 2 um disk
        assert fsr == pytest.approx(58.55, abs=0.5)  # frozen value

    def test_halves_when_diameter_doubles(self):
        fsr2 = free_spectral_range(GEOM, 1661.0, "TE", 1)
        fsr4 = free_spectral_range(
            dataclasses.replace(GEOM, diameter_um=4.0), 1661.0, "TE", 1)
        assert fsr2 / fsr4 == pytest.approx(2.0, rel=0.15)

    def test_positive_for_all_reachable_families(self):
        for pol in ("TE", "TM"):
            for p in (1, 2, 3):
                assert free_spectral_range(GEOM, 1661.0, pol, p) > 0

    def test_unreachable_family_raises(self):
        # j_{1,10} = 32.19 exceeds the size parameter of the default disk
        with pytest.raises(ModeFamilyNotFoundError):
            free_spectral_range(GEOM, 1661.0, "TE", 10)

    def test_invalid_radial_order(self):
        with pytest.raises(ValueError):
            free_spectral_range(GEOM, 1661.0, "TE", 0)


class TestGeometryValidation:
    @pytest.mark.parametrize("kwargs", [
        {"diameter_um": 0.0}, {"thickness_nm": -1.0}, {"clad_index": 0.5},
    ])
    def test_invalid_geometry_rejected(self, kwargs):
        with pytest.raises(ValueError):
            DiskGeometry(**kwargs)
