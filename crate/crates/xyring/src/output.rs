//! Reproducible text output: CSV tables and a JSON ground-state dump.
//!
//! Every float prints with 9 significant digits in scientific notation,
//! lines end with LF, and iteration orders are fixed, so identical inputs
//! produce identical bytes.

use crate::basis::{BasisState, Sector};
use crate::eigen::GroundState;
use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianMatrix, ModelParams};
use crate::observables::ReducedDensityMatrix;
use crate::sweep::{CrossingReport, LevelDiagram, SweepAxis, SweepRecord};
use serde::Deserialize;

/// Amplitudes below this are omitted from ground-state dumps.
const AMPLITUDE_CUTOFF: f64 = 1e-12;

/// 9 significant digits, scientific; negative zero normalizes to zero.
pub fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.8e}")
}

/// Sweep records as CSV with the fixed schema header.
pub fn sweep_csv(axis: SweepAxis, records: &[SweepRecord]) -> String {
    let mut out = String::from(
        "axis_name,axis_value,n,j,gamma,bz,ground_energy,sector,c12,concurrence,degenerate\n",
    );
    for r in records {
        let axis_value = match axis {
            SweepAxis::J => r.params.j(),
            SweepAxis::Bz => r.params.bz(),
            SweepAxis::Gamma => r.params.gamma(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            axis,
            fmt_float(axis_value),
            r.params.n(),
            fmt_float(r.params.j()),
            fmt_float(r.params.gamma()),
            fmt_float(r.params.bz()),
            fmt_float(r.ground_energy),
            r.sector,
            fmt_float(r.c12),
            fmt_float(r.concurrence),
            r.degenerate,
        ));
    }
    out
}

/// Crossing report as CSV.
pub fn crossings_csv(report: &CrossingReport) -> String {
    let mut out = String::from("index,critical_value,sector_before,sector_after,method\n");
    for (i, c) in report.crossings.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            i,
            fmt_float(c.value),
            c.sector_before,
            c.sector_after,
            report.method,
        ));
    }
    out
}

/// Level diagram as CSV: one column per sector.
pub fn levels_csv(diagram: &LevelDiagram) -> String {
    let mut out = String::from("bz");
    for sector in &diagram.sectors {
        out.push(',');
        out.push_str(&sector.to_string());
    }
    out.push('\n');
    for (bz, row) in diagram.bz.iter().zip(&diagram.energies) {
        out.push_str(&fmt_float(*bz));
        for e in row {
            out.push(',');
            out.push_str(&fmt_float(*e));
        }
        out.push('\n');
    }
    out
}

/// Eigenvalues of one block as CSV.
pub fn spectrum_csv(sector: Sector, eigenvalues: &[f64]) -> String {
    let mut out = String::from("sector,index,energy\n");
    for (i, e) in eigenvalues.iter().enumerate() {
        out.push_str(&format!("{sector},{i},{}\n", fmt_float(*e)));
    }
    out
}

/// Nonzero Hamiltonian entries as (row, col, value) triplets.
pub fn hamiltonian_csv(h: &HamiltonianMatrix) -> String {
    let mut out = String::from("row,col,value\n");
    for row in 0..h.dim() {
        for col in 0..h.dim() {
            let v = h.matrix().get(row, col);
            if v != 0.0 {
                out.push_str(&format!("{row},{col},{}\n", fmt_float(v)));
            }
        }
    }
    out
}

/// Reduced density matrix as a 4x4 CSV block with a basis-order header.
pub fn rho_csv(rho: &ReducedDensityMatrix) -> String {
    let labels = ["00", "01", "10", "11"];
    let mut out = String::from("basis,00,01,10,11\n");
    for (a, label) in labels.iter().enumerate() {
        out.push_str(label);
        for b in 0..4 {
            out.push(',');
            out.push_str(&fmt_float(rho.get(a, b)));
        }
        out.push('\n');
    }
    out
}

/// Observables of one parameter point as a one-row CSV table.
pub fn observables_csv(
    params: &ModelParams,
    sites: (usize, usize),
    c12: f64,
    con: f64,
    degenerate: bool,
) -> String {
    format!(
        "n,j,gamma,bz,site_i,site_j,c12,concurrence,degenerate\n{},{},{},{},{},{},{},{},{}\n",
        params.n(),
        fmt_float(params.j()),
        fmt_float(params.gamma()),
        fmt_float(params.bz()),
        sites.0,
        sites.1,
        fmt_float(c12),
        fmt_float(con),
        degenerate,
    )
}

/// Observables of one parameter point as JSON.
pub fn observables_json(
    params: &ModelParams,
    sites: (usize, usize),
    c12: f64,
    con: f64,
    degenerate: bool,
) -> String {
    format!(
        "{{\n  \"n\": {},\n  \"j\": {},\n  \"gamma\": {},\n  \"bz\": {},\n  \"site_i\": {},\n  \"site_j\": {},\n  \"c12\": {},\n  \"concurrence\": {},\n  \"degenerate\": {}\n}}\n",
        params.n(),
        fmt_float(params.j()),
        fmt_float(params.gamma()),
        fmt_float(params.bz()),
        sites.0,
        sites.1,
        fmt_float(c12),
        fmt_float(con),
        degenerate,
    )
}

/// Ground-state dump: parameter block, energy, sector, and all
/// amplitudes above the cutoff keyed by bitstring.
pub fn ground_json(params: &ModelParams, gs: &GroundState) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"n\": {},\n", params.n()));
    out.push_str(&format!("  \"j\": {},\n", fmt_float(params.j())));
    out.push_str(&format!("  \"gamma\": {},\n", fmt_float(params.gamma())));
    out.push_str(&format!("  \"bz\": {},\n", fmt_float(params.bz())));
    out.push_str(&format!("  \"energy\": {},\n", fmt_float(gs.energy())));
    out.push_str(&format!("  \"sector\": \"{}\",\n", gs.sector()));
    out.push_str(&format!("  \"degenerate\": {},\n", gs.degenerate()));
    out.push_str("  \"amplitudes\": [\n");
    let entries: Vec<String> = gs
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.abs() > AMPLITUDE_CUTOFF)
        .map(|(bits, a)| {
            format!(
                "    {{\"basis\": \"{}\", \"amplitude\": {}}}",
                BasisState(bits as u32).bitstring(params.n()),
                fmt_float(*a)
            )
        })
        .collect();
    out.push_str(&entries.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

/// Parsed form of a ground-state dump.
#[derive(Debug, Deserialize)]
pub struct GroundStateDoc {
    pub n: usize,
    pub j: f64,
    pub gamma: f64,
    pub bz: f64,
    pub energy: f64,
    pub sector: String,
    pub degenerate: bool,
    pub amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Deserialize)]
pub struct AmplitudeEntry {
    pub basis: String,
    pub amplitude: f64,
}

/// Re-ingest a ground-state dump written by [`ground_json`].
pub fn parse_ground_json(text: &str) -> Result<GroundStateDoc> {
    serde_json::from_str(text)
        .map_err(|e| Error::InvalidParams(format!("malformed ground-state JSON: {e}")))
}
