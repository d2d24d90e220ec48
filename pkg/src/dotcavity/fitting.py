"""Inverse problems: per-spectrum Lorentzian doublet fits and the
anticrossing fit of branch energies vs temperature.

Both are built on the lm_minimize engine.  The doublet fit models the data
as background + sum of area-normalized Lorentzians convolved with the
spectrum's declared instrument response (forward-model fitting; no
deconvolution).  The anticrossing fit adjusts the coupling constant and
tuning-model coefficients jointly against both branches.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .coupling import branch_linewidths
from .lineshape import Spectrum, convolve_resolution, lorentzian
from .optimize import FitResult, lm_minimize
from .tuning import TuningModel, cm_energy, qd_energy, system_at

DEFAULT_FREE = ("g", "qd_e0", "cm_e0")

# TuningModel coefficients that shape the branch energies (gamma_* do not)
_ENERGY_COEFFS = ("qd_e0", "qd_alpha", "qd_beta", "cm_e0", "cm_c1", "cm_c2")


class InitializationError(ValueError):
    """Auto-initialization found fewer candidate maxima than peaks."""


class FitConvergenceError(RuntimeError):
    """A fit failed to converge."""


class UnderdeterminedError(ValueError):
    """Fewer data values than twice the number of free parameters."""


@dataclass(frozen=True)
class PeakRow:
    """Fitted doublet parameters at one temperature."""

    temperature: float
    e_upper: float
    e_lower: float
    fwhm_upper: float
    fwhm_lower: float
    amp_upper: float
    amp_lower: float
    sigmas: dict | None = None   # per-field 1-sigma estimates, when known

    def __post_init__(self):
        if self.e_upper < self.e_lower:
            raise ValueError("e_upper must be >= e_lower")
        if self.fwhm_upper <= 0 or self.fwhm_lower <= 0:
            raise ValueError("linewidths must be positive")

    @property
    def splitting(self) -> float:
        return self.e_upper - self.e_lower


@dataclass(frozen=True)
class PeakTable:
    """Per-temperature doublet fits, temperatures strictly increasing."""

    rows: tuple[PeakRow, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        temps = [r.temperature for r in rows]
        if any(b <= a for a, b in zip(temps, temps[1:])):
            raise ValueError("temperatures must be strictly increasing")
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def temperatures(self) -> np.ndarray:
        return np.array([r.temperature for r in self.rows])

    def branch_energies(self) -> tuple[np.ndarray, np.ndarray]:
        upper = np.array([r.e_upper for r in self.rows])
        lower = np.array([r.e_lower for r in self.rows])
        return upper, lower

    def min_splitting(self) -> float:
        return min(r.splitting for r in self.rows)


@dataclass(frozen=True)
class LinewidthComparison:
    """Predicted vs measured branch widths at one temperature."""

    temperature: float
    predicted_upper: float
    predicted_lower: float
    measured_upper: float
    measured_lower: float

    @property
    def residual_upper(self) -> float:
        return self.measured_upper - self.predicted_upper

    @property
    def residual_lower(self) -> float:
        return self.measured_lower - self.predicted_lower


def _local_maxima(values: np.ndarray) -> list[int]:
    idx = [i for i in range(1, values.size - 1)
           if values[i] > values[i - 1] and values[i] >= values[i + 1]]
    idx.sort(key=lambda i: values[i], reverse=True)
    return idx


def initial_doublet_guess(spec: Spectrum, n_peaks: int):
    """Starting point for the doublet fit from the spectrum itself.

    Smooths with a 5-sample moving average and takes the n_peaks highest
    local maxima; initial FWHM is 0.2 meV and the background starts at the
    5th intensity percentile.  Picked maxima must be separated by at least
    2 grid steps and by half the initial FWHM, otherwise counting noise on
    a fine grid routinely puts both starting centers on the same peak top.
    """
    y = spec.intensities
    smooth = np.convolve(y, np.full(5, 0.2), mode="same")
    fwhm0 = 0.2
    min_sep = max(2, int(round(0.5 * fwhm0 / spec.spacing)))
    picked: list[int] = []
    for i in _local_maxima(smooth):
        if all(abs(i - j) >= min_sep for j in picked):
            picked.append(i)
        if len(picked) == n_peaks:
            break
    if len(picked) < n_peaks:
        raise InitializationError(
            f"found {len(picked)} candidate maxima, need {n_peaks}")
    background = float(np.percentile(y, 5))
    peaks = []
    for i in sorted(picked):
        height = max(float(y[i]) - background, np.finfo(float).tiny)
        # peak of a unit-area Lorentzian is 2/(pi*fwhm)
        peaks.append((float(spec.energies[i]), fwhm0,
                      height * math.pi * fwhm0 / 2.0))
    return background, peaks


def _doublet_model(params: np.ndarray, energies: np.ndarray, spacing: float,
                   resolution_fwhm: float, n_peaks: int) -> np.ndarray:
    y = np.full_like(energies, params[0])
    for k in range(n_peaks):
        center, fwhm, amp = params[1 + 3 * k: 4 + 3 * k]
        y = y + amp * lorentzian(energies, center, fwhm)
    return convolve_resolution(y, spacing, resolution_fwhm)


def fit_doublet(spec: Spectrum, n_peaks: int = 2, init=None,
                max_iter: int = 500) -> FitResult:
    """Fit n_peaks Lorentzians (plus background) to one spectrum.

    The model is convolved with the spectrum's declared instrument
    response.  `init` may supply (background, [(center, fwhm, amp), ...])
    to skip the auto-initialization.  Peaks in the result are numbered by
    ascending center: center_1, fwhm_1, amp_1, center_2, ...
    """
    if n_peaks not in (1, 2):
        raise ValueError("n_peaks must be 1 or 2")
    background, peaks = init if init is not None else \
        initial_doublet_guess(spec, n_peaks)
    if len(peaks) != n_peaks:
        raise ValueError("init must carry one (center, fwhm, amp) per peak")

    energies = spec.energies
    spacing = spec.spacing
    y_obs = spec.intensities
    e_lo, e_hi = float(energies[0]), float(energies[-1])
    span = e_hi - e_lo

    p0 = [background]
    names = ["background"]
    lower = [0.0]
    upper = [max(float(y_obs.max()), background, 1e-30)]
    for k, (center, fwhm, amp) in enumerate(peaks, start=1):
        p0 += [center, fwhm, amp]
        names += [f"center_{k}", f"fwhm_{k}", f"amp_{k}"]
        lower += [e_lo, spacing / 2.0, 0.0]
        upper += [e_hi, span, np.inf]

    def residual(p):
        return _doublet_model(p, energies, spacing, spec.resolution_fwhm,
                              n_peaks) - y_obs

    result = lm_minimize(residual, p0, names=names, lower=lower, upper=upper,
                         max_iter=max_iter)
    return _order_peaks(result, n_peaks)


def _order_peaks(result: FitResult, n_peaks: int) -> FitResult:
    """Renumber peaks so center_1 <= center_2."""
    if n_peaks < 2:
        return result
    order = sorted(range(1, n_peaks + 1),
                   key=lambda k: result.params[f"center_{k}"])
    if order == list(range(1, n_peaks + 1)):
        return result
    params = {"background": result.params["background"]}
    sigmas = {"background": result.param_sigmas["background"]}
    for new_k, old_k in enumerate(order, start=1):
        for field in ("center", "fwhm", "amp"):
            params[f"{field}_{new_k}"] = result.params[f"{field}_{old_k}"]
            sigmas[f"{field}_{new_k}"] = result.param_sigmas[f"{field}_{old_k}"]
    return dataclasses.replace(result, params=params, param_sigmas=sigmas)


def peak_row_from_fit(fit: FitResult, temperature: float) -> PeakRow:
    """Assemble a PeakRow from a two-peak fit (upper = higher energy)."""
    p, s = fit.params, fit.param_sigmas
    # _order_peaks guarantees center_2 >= center_1
    return PeakRow(
        temperature=temperature,
        e_upper=p["center_2"], e_lower=p["center_1"],
        fwhm_upper=p["fwhm_2"], fwhm_lower=p["fwhm_1"],
        amp_upper=p["amp_2"], amp_lower=p["amp_1"],
        sigmas={
            "e_upper": s["center_2"], "e_lower": s["center_1"],
            "fwhm_upper": s["fwhm_2"], "fwhm_lower": s["fwhm_1"],
            "amp_upper": s["amp_2"], "amp_lower": s["amp_1"],
        },
    )


def build_peak_table(series: list[Spectrum], max_iter: int = 500) -> PeakTable:
    """Doublet-fit every spectrum of a temperature series into a table."""
    if len(series) < 3:
        raise ValueError("need at least 3 temperatures to build a table")
    rows = []
    for spec in sorted(series, key=lambda s: s.temperature):
        try:
            fit = fit_doublet(spec, n_peaks=2, max_iter=max_iter)
        except InitializationError as err:
            raise InitializationError(
                f"T={spec.temperature:g} K: {err}") from err
        if not fit.converged:
            raise FitConvergenceError(
                f"doublet fit did not converge at T={spec.temperature:g} K")
        rows.append(peak_row_from_fit(fit, spec.temperature))
    return PeakTable(rows=tuple(rows))


def _branch_model(table_temps: np.ndarray, model: TuningModel,
                  g: float) -> tuple[np.ndarray, np.ndarray]:
    e_qd = np.array([qd_energy(model, t) for t in table_temps])
    e_c = np.array([cm_energy(model, t) for t in table_temps])
    mean = 0.5 * (e_qd + e_c)
    half = 0.5 * np.hypot(e_qd - e_c, 2.0 * g)
    return mean + half, mean - half


def fit_anticrossing(table: PeakTable, free=DEFAULT_FREE,
                     base: TuningModel | None = None, g_init: float | None = None,
                     sigmas: np.ndarray | None = None,
                     max_iter: int = 500) -> FitResult:
    """Fit both branch energies vs temperature to the coupled-state model.

    free selects which of g and the tuning energy coefficients
    (qd_e0, qd_alpha, qd_beta, cm_e0, cm_c1, cm_c2) float; the rest stay
    at `base` (calibrated defaults when omitted).  Branches are weighted
    equally unless per-value `sigmas` (length 2*rows: upper then lower,
    row-major) are given.
    """
    free = tuple(free)
    allowed = ("g",) + _ENERGY_COEFFS
    for name in free:
        if name not in allowed:
            raise ValueError(f"unknown free parameter {name!r}; "
                             f"choose from {allowed}")
    n_data = 2 * len(table)
    if n_data < 2 * len(free):
        raise UnderdeterminedError(
            f"{n_data} data values cannot constrain {len(free)} parameters")
    base = base if base is not None else TuningModel()
    temps = table.temperatures()
    e_upper, e_lower = table.branch_energies()
    if sigmas is not None:
        sigmas = np.asarray(sigmas, dtype=float)
        if sigmas.shape != (n_data,) or np.any(sigmas <= 0):
            raise ValueError("sigmas must be positive with length 2*rows")

    if g_init is None:
        g_init = max(table.min_splitting() / 2.0, 1e-4)
    t0 = temps[0]
    start_full = {
        "g": g_init,
        "qd_e0": e_upper[0] + (base.qd_e0 - qd_energy(base, t0)),
        "cm_e0": e_lower[0] + (base.cm_e0 - cm_energy(base, t0)),
        "qd_alpha": base.qd_alpha, "qd_beta": base.qd_beta,
        "cm_c1": base.cm_c1, "cm_c2": base.cm_c2,
    }
    bounds = {
        "g": (0.0, 1e3),
        "qd_e0": (1.0, 1e6), "cm_e0": (1.0, 1e6),
        "qd_alpha": (0.0, 1e3), "qd_beta": (1e-6, 1e6),
        "cm_c1": (0.0, 1e3), "cm_c2": (0.0, 1e3),
    }
    p0 = [start_full[name] for name in free]
    lower = [bounds[name][0] for name in free]
    upper = [bounds[name][1] for name in free]
    fixed = {name: start_full[name] for name in allowed if name not in free}

    def residual(p):
        values = dict(zip(free, p))
        values.update(fixed)
        model = dataclasses.replace(
            base, **{k: values[k] for k in _ENERGY_COEFFS})
        pred_up, pred_lo = _branch_model(temps, model, values["g"])
        r = np.concatenate([pred_up - e_upper, pred_lo - e_lower])
        return r / sigmas if sigmas is not None else r

    return lm_minimize(residual, p0, names=list(free), lower=lower,
                       upper=upper, max_iter=max_iter)


def fitted_tuning_model(fit: FitResult, base: TuningModel | None = None
                        ) -> tuple[TuningModel, float]:
    """(TuningModel, g) with the fitted values substituted into `base`."""
    base = base if base is not None else TuningModel()
    coeffs = {k: v for k, v in fit.params.items() if k in _ENERGY_COEFFS}
    g = fit.params.get("g", 0.0)
    return dataclasses.replace(base, **coeffs), g


def linewidth_consistency(table: PeakTable, model: TuningModel,
                          g: float) -> list[LinewidthComparison]:
    """Predicted (mixing-weighted) vs measured branch widths per row."""
    out = []
    for row in table:
        sys = system_at(model, g, row.temperature)
        pred_up, pred_lo = branch_linewidths(sys)
        out.append(LinewidthComparison(
            temperature=row.temperature,
            predicted_upper=pred_up, predicted_lower=pred_lo,
            measured_upper=row.fwhm_upper, measured_lower=row.fwhm_lower))
    return out
