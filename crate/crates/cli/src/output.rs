//! CSV and plot-script rendering. All numbers use `%.12e` so output is
//! byte-for-byte reproducible.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bmc_core::{SweepRow, SweptParam, ValidationReport};

/// C-style `%.12e`: twelve mantissa digits, signed exponent of at least two
/// digits.
pub fn fmt_sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

pub const SWEEP_HEADER: &str = "swept_value,t,chi_bits,avg_fidelity,theta";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(80 * (rows.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let p = &r.point;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_sci(r.swept_value),
            fmt_sci(p.t),
            fmt_sci(p.chi),
            fmt_sci(p.avg_fidelity),
            fmt_sci(p.theta)
        );
    }
    out
}

pub fn validation_csv(report: &ValidationReport) -> String {
    let mut out = String::from("eta_re,eta_im,t,trace_distance,entropy_bits,entropy_gap\n");
    for r in &report.results {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_sci(r.eta.re),
            fmt_sci(r.eta.im),
            fmt_sci(r.t),
            fmt_sci(r.trace_distance),
            fmt_sci(r.entropy),
            fmt_sci(r.entropy_gap)
        );
    }
    out
}

pub fn curve_csv(curve: &[(f64, f64)]) -> String {
    let mut out = String::from("n_bar,theta\n");
    for &(n, th) in curve {
        let _ = writeln!(out, "{},{}", fmt_sci(n), fmt_sci(th));
    }
    out
}

/// `fig1.csv` -> `fig1.plot.py`.
pub fn plot_path(csv: &Path) -> PathBuf {
    csv.with_extension("plot.py")
}

fn csv_name(csv: &Path) -> String {
    csv.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Standalone matplotlib script reading the sibling sweep CSV.
pub fn sweep_plot_script(csv: &Path, swept: SweptParam) -> String {
    let label = match swept {
        SweptParam::NBar => "mean photon number n̄",
        SweptParam::BetaRate => "noise rate β (1/s)",
        SweptParam::Gamma => "loss rate γ (1/s)",
        SweptParam::Time => "time t (s)",
    };
    format!(
        r#"#!/usr/bin/env python3
import csv
import os
from collections import defaultdict

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
series = defaultdict(list)
with open(os.path.join(here, "{csv}"), newline="") as fh:
    for row in csv.DictReader(fh):
        key = 0.0 if "{time}" == "t" else float(row["t"])
        series[key].append(row)

fig, axes = plt.subplots(1, 3, figsize=(13, 4))
for t, rows in sorted(series.items()):
    x = [float(r["swept_value"]) for r in rows]
    lbl = None if "{time}" == "t" else f"t = {{t:g}}"
    for ax, col in zip(axes, ("chi_bits", "avg_fidelity", "theta")):
        ax.plot(x, [float(r[col]) for r in rows], marker="o", label=lbl)
for ax, title in zip(axes, ("Holevo capacity χ (bits)", "average fidelity F̄", "Θ = F̄ χ")):
    ax.set_xlabel("{label}")
    ax.set_title(title)
    ax.grid(alpha=0.3)
if "{time}" != "t":
    axes[0].legend()
fig.tight_layout()
fig.savefig(os.path.join(here, "{stem}.png"), dpi=150)
"#,
        csv = csv_name(csv),
        time = swept.name(),
        label = label,
        stem = csv
            .file_stem()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
    )
}

pub fn curve_plot_script(csv: &Path, n_bar_opt: Option<f64>) -> String {
    let marker = match n_bar_opt {
        Some(n) => format!(
            "ax.axvline({}, color=\"k\", ls=\"--\", lw=0.8)\n",
            fmt_sci(n)
        ),
        None => String::new(),
    };
    format!(
        r#"#!/usr/bin/env python3
import csv
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "{csv}"), newline="") as fh:
    rows = list(csv.DictReader(fh))

fig, ax = plt.subplots(figsize=(6, 4))
ax.semilogx([float(r["n_bar"]) for r in rows], [float(r["theta"]) for r in rows])
{marker}ax.set_xlabel("mean photon number n̄")
ax.set_ylabel("Θ = F̄ χ")
ax.grid(alpha=0.3)
fig.tight_layout()
fig.savefig(os.path.join(here, "{stem}.png"), dpi=150)
"#,
        csv = csv_name(csv),
        marker = marker,
        stem = csv
            .file_stem()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
    )
}
