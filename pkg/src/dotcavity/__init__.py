"""Quantum dot / microdisk strong-coupling toolkit.

Forward-models temperature-tuned photoluminescence spectra of a single
exciton coupled to one cavity mode (dressed states, Rabi doublet,
linewidth mixing), fits measured or synthetic spectra back to the coupling
constant and tuning coefficients, relates the coupling constant to the
exciton oscillator strength, and estimates whispering-gallery mode
positions of the host microdisk.
"""

__version__ = "0.1.0"

from .config import ConfigError, RunConfig, load_config, parse_config
from .coupling import (CoupledSystem, DegenerateSystemError, DressedStates,
                       RegimeReport, branch_linewidths, classify_regime,
                       dressed_energies, dressed_states, mixing_fractions,
                       purcell_factor)
from .fitting import (InitializationError, LinewidthComparison, PeakRow,
                      PeakTable, UnderdeterminedError, build_peak_table,
                      fit_anticrossing, fit_doublet, fitted_tuning_model,
                      linewidth_consistency, peak_row_from_fit)
from .lineshape import (EmissionModel, GridResolutionWarning, Spectrum,
                        add_noise, doublet_spectrum, energy_grid, lorentzian,
                        simulate_series)
from .optimize import FitResult, NonFiniteResidualError, lm_minimize
from .photonics import (CODATA, CavityOptics, PhysicalConstants,
                        coupling_from_f, energy_from_wavelength,
                        f_from_coupling, mode_volume, quality_factor,
                        wavelength_from_energy)
from .tuning import (BracketError, TuningModel, cm_energy, detuning,
                     gamma_qd, qd_energy, resonance_temperature, system_at)
from .wgm import (DiskGeometry, ModeFamilyNotFoundError, SlabCutoffError,
                  WgmMode, find_modes, free_spectral_range, slab_n_eff)
