"""File formats: spectrum CSV, peak-table CSV, and fit-result documents.

All writers are atomic (temp file + rename) and all formats round-trip
losslessly: floats are written with Python's shortest round-trip repr, so
write(read(x)) is byte-identical for canonical files.
"""

from __future__ import annotations

import os
import re
import tempfile

import numpy as np

from .fitting import PeakRow, PeakTable
from .lineshape import Spectrum
from .optimize import FitResult

PEAK_TABLE_HEADER = ("temperature_K,e_upper_meV,e_lower_meV,"
                     "fwhm_upper_meV,fwhm_lower_meV,amp_upper,amp_lower")

_SPECTRUM_HEADER_RE = re.compile(
    r"#\s*temperature_K=(\S+)\s+resolution_meV=(\S+)\s*$")


class FileFormatError(ValueError):
    """A data file did not match its expected format."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


def _fmt(x: float) -> str:
    return repr(float(x))


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path via a temp file in the same directory + rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


# ---------------------------------------------------------------- spectra

def dump_spectra(spectra: list[Spectrum]) -> str:
    """Serialize spectra as blocks of `# header` + energy,intensity rows."""
    blocks = []
    for spec in spectra:
        lines = [f"# temperature_K={_fmt(spec.temperature)} "
                 f"resolution_meV={_fmt(spec.resolution_fwhm)}"]
        lines += [f"{_fmt(e)},{_fmt(y)}"
                  for e, y in zip(spec.energies, spec.intensities)]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def parse_spectra(text: str) -> list[Spectrum]:
    spectra = []
    header = None
    energies: list[float] = []
    intensities: list[float] = []
    header_line = 0

    def finish():
        if header is None:
            return
        if len(energies) < 2:
            raise FileFormatError("spectrum block has fewer than 2 samples",
                                  header_line)
        spectra.append(Spectrum(temperature=header[0],
                                energies=np.array(energies),
                                intensities=np.array(intensities),
                                resolution_fwhm=header[1]))

    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            match = _SPECTRUM_HEADER_RE.match(stripped)
            if not match:
                raise FileFormatError(
                    "expected '# temperature_K=<T> resolution_meV=<r>'",
                    line_no)
            finish()
            try:
                header = (float(match.group(1)), float(match.group(2)))
            except ValueError as err:
                raise FileFormatError(f"bad header number: {err}",
                                      line_no) from err
            header_line = line_no
            energies, intensities = [], []
            continue
        if header is None:
            raise FileFormatError("data before any spectrum header", line_no)
        parts = stripped.split(",")
        if len(parts) != 2:
            raise FileFormatError("expected 'energy_meV,intensity'", line_no)
        try:
            energies.append(float(parts[0]))
            intensities.append(float(parts[1]))
        except ValueError as err:
            raise FileFormatError(f"bad number: {err}", line_no) from err
    finish()
    if not spectra:
        raise FileFormatError("no spectra found", None)
    return spectra


def write_spectra(path: str, spectra: list[Spectrum]) -> None:
    atomic_write_text(path, dump_spectra(spectra))


def read_spectra(path: str) -> list[Spectrum]:
    with open(path, encoding="utf-8") as handle:
        return parse_spectra(handle.read())


def read_single_spectrum(path: str) -> Spectrum:
    spectra = read_spectra(path)
    if len(spectra) != 1:
        raise FileFormatError(
            f"expected exactly one spectrum, found {len(spectra)}", None)
    return spectra[0]


# ------------------------------------------------------------- peak table

def dump_peak_table(table: PeakTable, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {part}" for part in comment.splitlines()]
    lines.append(PEAK_TABLE_HEADER)
    for row in table:
        lines.append(",".join(_fmt(v) for v in (
            row.temperature, row.e_upper, row.e_lower,
            row.fwhm_upper, row.fwhm_lower, row.amp_upper, row.amp_lower)))
    return "\n".join(lines) + "\n"


def parse_peak_table(text: str) -> PeakTable:
    rows = []
    saw_header = False
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not saw_header:
            if stripped != PEAK_TABLE_HEADER:
                raise FileFormatError(
                    f"expected header '{PEAK_TABLE_HEADER}'", line_no)
            saw_header = True
            continue
        parts = stripped.split(",")
        if len(parts) != 7:
            raise FileFormatError("expected 7 comma-separated values", line_no)
        try:
            values = [float(p) for p in parts]
        except ValueError as err:
            raise FileFormatError(f"bad number: {err}", line_no) from err
        try:
            rows.append(PeakRow(*values))
        except ValueError as err:
            raise FileFormatError(str(err), line_no) from err
    if not saw_header:
        raise FileFormatError("missing peak-table header", None)
    if not rows:
        raise FileFormatError("peak table has no rows", None)
    try:
        return PeakTable(rows=tuple(rows))
    except ValueError as err:
        raise FileFormatError(str(err), None) from err


def write_peak_table(path: str, table: PeakTable,
                     comment: str | None = None) -> None:
    atomic_write_text(path, dump_peak_table(table, comment))


def read_peak_table(path: str) -> PeakTable:
    with open(path, encoding="utf-8") as handle:
        return parse_peak_table(handle.read())


# ------------------------------------------------------------- fit result

def dump_fit_result(result: FitResult) -> str:
    """Flat key=value document, `name=value ± sigma` per parameter."""
    lines = [f"{name}={_fmt(value)} ± {_fmt(result.param_sigmas[name])}"
             for name, value in result.params.items()]
    lines.append(f"residual_rms={_fmt(result.residual_rms)}")
    lines.append(f"iterations={result.n_iterations}")
    lines.append(f"converged={'true' if result.converged else 'false'}")
    return "\n".join(lines) + "\n"


def parse_fit_result(text: str) -> FitResult:
    params: dict[str, float] = {}
    sigmas: dict[str, float] = {}
    extras: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise FileFormatError("expected 'name=value'", line_no)
        name, raw = stripped.split("=", 1)
        name = name.strip()
        raw = raw.strip()
        if name in ("residual_rms", "iterations", "converged"):
            extras[name] = raw
            continue
        if "±" in raw:
            value_s, sigma_s = (p.strip() for p in raw.split("±", 1))
        else:
            value_s, sigma_s = raw, "0.0"
        try:
            params[name] = float(value_s)
            sigmas[name] = float(sigma_s)
        except ValueError as err:
            raise FileFormatError(f"bad number: {err}", line_no) from err
    missing = {"residual_rms", "iterations", "converged"} - set(extras)
    if missing:
        raise FileFormatError(f"missing keys: {sorted(missing)}", None)
    try:
        return FitResult(
            params=params, param_sigmas=sigmas,
            residual_rms=float(extras["residual_rms"]),
            n_iterations=int(extras["iterations"]),
            converged=extras["converged"] == "true")
    except ValueError as err:
        raise FileFormatError(str(err), None) from err


def write_fit_result(path: str, result: FitResult) -> None:
    atomic_write_text(path, dump_fit_result(result))


def read_fit_result(path: str) -> FitResult:
    with open(path, encoding="utf-8") as handle:
        return parse_fit_result(handle.read())
