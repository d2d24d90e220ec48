"""Command-line interface.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
2 configuration/format error, 3 I/O error, 4 fit non-convergence,
5 under-determined fit, 6 slab cutoff.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .config import ConfigError, load_config
from .coupling import CoupledSystem, classify_regime
from .fileio import (FileFormatError, read_peak_table, read_single_spectrum,
                     write_fit_result, write_spectra)
from .fitting import (InitializationError, UnderdeterminedError,
                      fit_anticrossing, fit_doublet)
from .lineshape import add_noise, energy_grid, simulate_series
from .photonics import (CavityOptics, f_from_coupling, mode_volume,
                        wavelength_from_energy)
from .tuning import cm_energy, qd_energy
from .wgm import DiskGeometry, SlabCutoffError, find_modes

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NO_CONVERGENCE = 4
EXIT_UNDERDETERMINED = 5
EXIT_SLAB_CUTOFF = 6


def _parse_temps(text: str) -> list[float]:
    """'lo:hi:step' (inclusive) or a comma-separated list of kelvin."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"temperature range must be lo:hi:step, "
                              f"got {text!r}")
        try:
            lo, hi, step = (float(p) for p in parts)
        except ValueError as err:
            raise ConfigError(f"bad temperature range {text!r}") from err
        if step <= 0 or hi < lo:
            raise ConfigError("temperature range needs hi >= lo and step > 0")
        n = int(round((hi - lo) / step))
        temps = [lo + k * step for k in range(n + 1) if lo + k * step <= hi + 1e-9]
    else:
        try:
            temps = [float(p) for p in text.split(",") if p.strip()]
        except ValueError as err:
            raise ConfigError(f"bad temperature list {text!r}") from err
    if not temps or any(t < 0 for t in temps):
        raise ConfigError("temperatures must be non-negative and non-empty")
    return temps


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"window must be e_min:e_max in meV, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as err:
        raise ConfigError(f"bad window {text!r}") from err
    if lo > hi:
        raise ConfigError("window needs e_min <= e_max")
    return lo, hi


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    temps = _parse_temps(args.temps)
    noise = cfg.noise_sigma if args.noise is None else args.noise
    seed = cfg.seed if args.seed is None else args.seed
    if noise < 0:
        raise ConfigError("--noise must be >= 0")
    model = cfg.tuning_model()
    center = cfg.grid_center
    if center is None:
        center = float(np.mean([0.5 * (qd_energy(model, t) + cm_energy(model, t))
                                for t in temps]))
    grid = energy_grid(center, cfg.grid_halfwidth, cfg.grid_spacing)
    spectra = simulate_series(model, cfg.g, cfg.emission_model(), temps,
                              grid, cfg.resolution_fwhm)
    if noise > 0:
        spectra = [add_noise(s, noise, seed + i)
                   for i, s in enumerate(spectra)]
    write_spectra(args.out, spectra)
    return EXIT_OK


def cmd_fit_spectrum(args) -> int:
    if args.peaks not in (1, 2):
        raise ConfigError("--peaks must be 1 or 2")
    spec = read_single_spectrum(args.input)
    try:
        fit = fit_doublet(spec, n_peaks=args.peaks)
    except InitializationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    write_fit_result(args.out, fit)
    if args.peaks == 2:
        lo, hi = fit.params["center_1"], fit.params["center_2"]
        print(f"centers_meV={lo:.6f},{hi:.6f} "
              f"fwhms_meV={fit.params['fwhm_1']:.6f},{fit.params['fwhm_2']:.6f} "
              f"splitting_meV={hi - lo:.6f}")
    else:
        print(f"center_meV={fit.params['center_1']:.6f} "
              f"fwhm_meV={fit.params['fwhm_1']:.6f}")
    if not fit.converged:
        print("warning: fit did not converge", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_fit_anticrossing(args) -> int:
    cfg = load_config(args.config)
    table = read_peak_table(args.input)
    free = tuple(name.strip() for name in args.free.split(",") if name.strip())
    try:
        fit = fit_anticrossing(table, free=free, base=cfg.tuning_model(),
                               max_iter=cfg.lm_max_iter)
    except ValueError as err:
        if isinstance(err, UnderdeterminedError):
            raise
        raise ConfigError(str(err)) from err
    write_fit_result(args.out, fit)
    g = fit.params.get("g", 0.0)
    sigma_g = fit.param_sigmas.get("g", 0.0)
    print(f"g_meV={g:.6f} ± {sigma_g:.6f} "
          f"min_splitting_meV={2 * g:.6f}")
    if not fit.converged:
        print("warning: fit did not converge", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_extract_f(args) -> int:
    cfg = load_config(args.config)
    optics = CavityOptics(
        emission_energy=args.energy,
        n_eff=args.n_eff if args.n_eff is not None else cfg.n_eff,
        eps_r=args.eps_r if args.eps_r is not None else cfg.eps_r,
        mode_volume_factor=args.volume_factor
        if args.volume_factor is not None else cfg.mode_volume_factor)
    f = f_from_coupling(args.g, optics, eta_pos=cfg.eta_pos)
    print(f"f={f:.6g}")
    print(f"lambda_nm={wavelength_from_energy(args.energy):.6g}")
    print(f"mode_volume_m3={mode_volume(optics):.6g}")
    return EXIT_OK


def cmd_wgm(args) -> int:
    cfg = load_config(args.config)
    geom = DiskGeometry(
        diameter_um=args.diameter if args.diameter is not None
        else cfg.disk_diameter_um,
        thickness_nm=args.thickness if args.thickness is not None
        else cfg.disk_thickness_nm,
        core_index=args.index if args.index is not None
        else cfg.disk_core_index,
        core_dndl=cfg.disk_core_dndl,
        clad_index=cfg.disk_clad_index)
    window = _parse_window(args.window)
    modes = find_modes(geom, window)
    print("m,p,pol,energy_meV,n_eff")
    for mode in modes:
        print(f"{mode.azimuthal_m},{mode.radial_p},{mode.polarization},"
              f"{mode.energy_mev:.6f},{mode.n_eff:.6f}")
    print(f"count={len(modes)}")
    return EXIT_OK


def cmd_classify(args) -> int:
    sys_ = CoupledSystem(e_qd=1000.0, e_c=1000.0, g=args.g,
                         gamma_qd=args.gamma_qd, gamma_cm=args.gamma_cm)
    report = classify_regime(sys_)
    print(f"regime={report.regime} "
          f"resolvability_ratio={report.resolvability_ratio!r} "
          f"splitting_at_resonance_meV={report.splitting_at_resonance!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dotcavity",
        description="Quantum dot / microdisk strong-coupling toolkit")
    parser.add_argument("--version", action="version",
                        version=f"dotcavity {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate",
                       help="synthesize temperature-series spectra to CSV")
    p.add_argument("--config", default=None)
    p.add_argument("--temps", default="4:44:2",
                   help="lo:hi:step (inclusive) or comma list, K")
    p.add_argument("--out", required=True)
    p.add_argument("--noise", type=float, default=None,
                   help="Gaussian noise sigma in counts")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit-spectrum",
                       help="Lorentzian peak fit of one spectrum")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--peaks", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit_spectrum)

    p = sub.add_parser("fit-anticrossing",
                       help="fit branch energies vs temperature")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--free", default=",".join(("g", "qd_e0", "cm_e0")))
    p.add_argument("--out", required=True)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_fit_anticrossing)

    p = sub.add_parser("extract-f",
                       help="oscillator strength from a coupling constant")
    p.add_argument("--g", type=float, required=True, help="meV")
    p.add_argument("--energy", type=float, required=True, help="meV")
    p.add_argument("--n-eff", dest="n_eff", type=float, default=None)
    p.add_argument("--eps-r", dest="eps_r", type=float, default=None)
    p.add_argument("--volume-factor", dest="volume_factor", type=float,
                   default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_extract_f)

    p = sub.add_parser("wgm", help="enumerate whispering-gallery modes")
    p.add_argument("--diameter", type=float, default=None, help="um")
    p.add_argument("--thickness", type=float, default=None, help="nm")
    p.add_argument("--window", default="1653.5:1668.5", help="meV:meV")
    p.add_argument("--index", type=float, default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_wgm)

    p = sub.add_parser("classify", help="strong/weak coupling classification")
    p.add_argument("--g", type=float, required=True, help="meV")
    p.add_argument("--gamma-qd", dest="gamma_qd", type=float, required=True)
    p.add_argument("--gamma-cm", dest="gamma_cm", type=float, required=True)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileFormatError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except UnderdeterminedError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_UNDERDETERMINED
    except SlabCutoffError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SLAB_CUTOFF
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
