"""Run configuration: a flat key=value file with typed, documented keys.

Every key has a default; an empty (or absent) file reproduces the
calibrated scenario.  Unknown keys are hard errors so typos never pass
silently.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .lineshape import EmissionModel
from .photonics import CavityOptics
from .tuning import TuningModel
from .wgm import DiskGeometry

ENV_CONFIG_PATH = "DOTCAVITY_CONFIG"


class ConfigError(ValueError):
    """A configuration file did not parse or validate."""


@dataclass
class RunConfig:
    """All tunable parameters, energies in meV and temperatures in K."""

    # exciton and mode temperature tuning
    qd_e0: float = 1685.0
    qd_alpha: float = 0.5405
    qd_beta: float = 204.0
    cm_e0: float = 1683.5
    cm_c1: float = 0.005
    cm_c2: float = 0.0005
    gamma_qd_0: float = 0.08
    gamma_qd_slope: float = 0.004
    gamma_cm: float = 0.2
    # coupling constant (half the vacuum Rabi splitting)
    g: float = 0.2
    # detection model
    eta_x: float = 1.0
    eta_c: float = 1.0
    background: float = 0.0
    # energy grid and instrument response
    grid_spacing: float = 0.01
    grid_halfwidth: float = 3.0
    grid_center: float | None = None   # None: mean bare energy of the run
    resolution_fwhm: float = 0.08
    # noise
    noise_sigma: float = 0.0
    seed: int = 0
    # cavity optics for the oscillator-strength relations
    emission_energy: float = 1661.0
    n_eff: float = 3.2
    eps_r: float | None = None         # None: n_eff^2
    mode_volume_factor: float = 6.0
    eta_pos: float = 1.0
    # microdisk geometry for the WGM estimator
    disk_diameter_um: float = 2.0
    disk_thickness_nm: float = 250.0
    disk_core_index: float = 3.5
    disk_core_dndl: float = 0.0
    disk_clad_index: float = 1.0
    # solver tolerances
    lm_max_iter: int = 500
    detuning_tol: float = 1e-6

    def tuning_model(self) -> TuningModel:
        return TuningModel(
            qd_e0=self.qd_e0, qd_alpha=self.qd_alpha, qd_beta=self.qd_beta,
            cm_e0=self.cm_e0, cm_c1=self.cm_c1, cm_c2=self.cm_c2,
            gamma_qd_0=self.gamma_qd_0, gamma_qd_slope=self.gamma_qd_slope,
            gamma_cm=self.gamma_cm)

    def emission_model(self) -> EmissionModel:
        return EmissionModel(eta_x=self.eta_x, eta_c=self.eta_c,
                             background=self.background)

    def cavity_optics(self, emission_energy: float | None = None) -> CavityOptics:
        return CavityOptics(
            emission_energy=self.emission_energy if emission_energy is None
            else emission_energy,
            n_eff=self.n_eff, eps_r=self.eps_r,
            mode_volume_factor=self.mode_volume_factor)

    def disk_geometry(self) -> DiskGeometry:
        return DiskGeometry(
            diameter_um=self.disk_diameter_um,
            thickness_nm=self.disk_thickness_nm,
            core_index=self.disk_core_index,
            core_dndl=self.disk_core_dndl,
            clad_index=self.disk_clad_index)

    def validate(self) -> "RunConfig":
        """Build every sub-model once so bad values fail loudly here."""
        try:
            self.tuning_model()
            self.emission_model()
            self.cavity_optics()
            self.disk_geometry()
            if self.grid_spacing <= 0 or self.grid_halfwidth <= 0:
                raise ValueError("grid_spacing and grid_halfwidth must be > 0")
            if self.resolution_fwhm < 0:
                raise ValueError("resolution_fwhm must be >= 0")
            if self.noise_sigma < 0:
                raise ValueError("noise_sigma must be >= 0")
            if self.g < 0:
                raise ValueError("g must be >= 0")
            if not 0 < self.eta_pos <= 1:
                raise ValueError("eta_pos must lie in (0, 1]")
            if self.lm_max_iter < 1:
                raise ValueError("lm_max_iter must be >= 1")
            if self.detuning_tol <= 0:
                raise ValueError("detuning_tol must be > 0")
        except ValueError as err:
            raise ConfigError(str(err)) from err
        return self


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}
_INT_KEYS = {"seed", "lm_max_iter"}


def _convert(key: str, raw: str, line_no: int):
    try:
        return int(raw) if key in _INT_KEYS else float(raw)
    except ValueError as err:
        raise ConfigError(
            f"line {line_no}: key '{key}' expects a number, got {raw!r}"
        ) from err


def parse_config(text: str) -> RunConfig:
    """Parse `key = value` lines; '#' starts a comment."""
    values = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {line_no}: expected 'key = value', "
                              f"got {stripped!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {line_no}: unknown key '{key}'")
        if key in values:
            raise ConfigError(f"line {line_no}: duplicate key '{key}'")
        values[key] = _convert(key, raw, line_no)
    return RunConfig(**values).validate()


def load_config(path: str | None = None) -> RunConfig:
    """Load from `path`, the DOTCAVITY_CONFIG env var, or pure defaults."""
    if path is None:
        path = os.environ.get(ENV_CONFIG_PATH)
    if path is None:
        return RunConfig().validate()
    with open(path, encoding="utf-8") as handle:
        return parse_config(handle.read())
