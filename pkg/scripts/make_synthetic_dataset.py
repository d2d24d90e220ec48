#!/usr/bin/env python3
"""Regenerate data/synthetic_fig4a_peaks.csv.

The shipped anticrossing dataset is synthetic: branch energies, widths and
amplitudes come from the calibrated default model at g = 0.2 meV, with
10 ueV Gaussian noise (fixed seed) on the energies.  It stands in for a
digitized measured table, which no one publishes in tabular form.
"""

import argparse
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dotcavity.coupling import (branch_linewidths, dressed_energies,
                                mixing_fractions)
from dotcavity.fileio import write_peak_table
from dotcavity.fitting import PeakRow, PeakTable
from dotcavity.lineshape import EmissionModel, branch_amplitudes
from dotcavity.tuning import TuningModel, system_at

COMMENT = ("SYNTHETIC anticrossing dataset, not measured data: calibrated "
           "default model,\ng = 0.2 meV, 10 ueV Gaussian energy noise, "
           "seed 7.  Regenerate with\nscripts/make_synthetic_dataset.py")


def build_table(g=0.2, noise_mev=0.01, seed=7):
    model = TuningModel()
    em = EmissionModel(eta_x=0.8, eta_c=1.2)
    rng = np.random.default_rng(seed)
    rows = []
    for t in np.arange(4.0, 44.1, 2.0):
        sys_t = system_at(model, g, t)
        e_upper, e_lower = dressed_energies(sys_t)
        fwhm_upper, fwhm_lower = branch_linewidths(sys_t)
        amp_upper, amp_lower = branch_amplitudes(mixing_fractions(sys_t), em)
        e_upper += rng.normal(0.0, noise_mev)
        e_lower += rng.normal(0.0, noise_mev)
        if e_upper < e_lower:
            e_upper, e_lower = e_lower, e_upper
        rows.append(PeakRow(float(t), e_upper, e_lower,
                            fwhm_upper, fwhm_lower, amp_upper, amp_lower))
    return PeakTable(rows=tuple(rows))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=os.path.join(
        os.path.dirname(__file__), "..", "data", "synthetic_fig4a_peaks.csv"))
    args = parser.parse_args()
    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    write_peak_table(args.out, build_table(), comment=COMMENT)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
