//! Parameter sweeps and level-crossing detection.
//!
//! Ground-state observables jump when the lowest levels of two symmetry
//! sectors cross. Two finders locate the critical parameters:
//!
//! - a closed-form method for gamma = 0, exploiting that every sector's
//!   lowest energy is affine in the swept parameter (the field term is a
//!   sector constant and the exchange part scales linearly with J), so
//!   crossings are intersections of straight lines;
//! - a bisection method that scans a coarse grid for ground-sector
//!   changes (or observable jumps when gamma != 0) and narrows each
//!   bracket to 1e-6.
//!
//! Grid points are independent work items; the sweep runner may fan them
//! out over threads and always merges results in parameter order.

use crate::basis::Sector;
use crate::eigen::{ground_state, sector_ground_energies};
use crate::error::{Error, Result};
use crate::hamiltonian::ModelParams;
use crate::observables::{concurrence, correlation, partial_trace};
use std::fmt;
use std::str::FromStr;

/// Which model parameter a sweep walks over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    J,
    Bz,
    Gamma,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepAxis::J => write!(f, "j"),
            SweepAxis::Bz => write!(f, "bz"),
            SweepAxis::Gamma => write!(f, "gamma"),
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "j" => Ok(SweepAxis::J),
            "bz" => Ok(SweepAxis::Bz),
            "gamma" => Ok(SweepAxis::Gamma),
            _ => Err(Error::InvalidParams(format!("unknown sweep axis {s:?}"))),
        }
    }
}

/// Axis of a crossing search; crossings are located in J or B_z only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingAxis {
    J,
    Bz,
}

impl From<CrossingAxis> for SweepAxis {
    fn from(axis: CrossingAxis) -> SweepAxis {
        match axis {
            CrossingAxis::J => SweepAxis::J,
            CrossingAxis::Bz => SweepAxis::Bz,
        }
    }
}

impl fmt::Display for CrossingAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SweepAxis::from(*self).fmt(f)
    }
}

impl FromStr for CrossingAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "j" => Ok(CrossingAxis::J),
            "bz" => Ok(CrossingAxis::Bz),
            _ => Err(Error::InvalidParams(format!("unknown crossing axis {s:?}"))),
        }
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub params: ModelParams,
    pub ground_energy: f64,
    pub sector: Sector,
    pub c12: f64,
    pub concurrence: f64,
    pub degenerate: bool,
}

/// How a crossing report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingMethod {
    ClosedForm,
    Bisection,
}

impl fmt::Display for CrossingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingMethod::ClosedForm => write!(f, "closed_form"),
            CrossingMethod::Bisection => write!(f, "bisection"),
        }
    }
}

/// One ground-sector change along the swept axis.
#[derive(Debug, Clone)]
pub struct Crossing {
    pub value: f64,
    pub sector_before: Sector,
    pub sector_after: Sector,
}

/// All detected crossings, ascending, with the sector sequence between
/// them.
#[derive(Debug, Clone)]
pub struct CrossingReport {
    pub axis: CrossingAxis,
    pub crossings: Vec<Crossing>,
    pub sector_sequence: Vec<Sector>,
    pub method: CrossingMethod,
}

impl CrossingReport {
    pub fn critical_values(&self) -> Vec<f64> {
        self.crossings.iter().map(|c| c.value).collect()
    }
}

/// Inclusive grid from `from` to `to`; the final point is forced onto
/// `to` so endpoints always appear.
fn grid_points(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() || !step.is_finite() {
        return Err(Error::InvalidRange(format!(
            "non-finite range [{from}, {to}] step {step}"
        )));
    }
    if step <= 0.0 {
        return Err(Error::InvalidRange(format!("step {step} must be positive")));
    }
    if from >= to {
        return Err(Error::InvalidRange(format!(
            "need from < to, got [{from}, {to}]"
        )));
    }
    let mut count = ((to - from) / step + 1e-9).floor() as usize;
    while from + count as f64 * step > to + 1e-9 * step {
        count -= 1;
    }
    let mut points: Vec<f64> = (0..=count).map(|i| from + i as f64 * step).collect();
    if *points.last().unwrap() < to - 1e-9 * step {
        points.push(to);
    } else {
        *points.last_mut().unwrap() = to;
    }
    Ok(points)
}

fn params_at(template: &ModelParams, axis: SweepAxis, value: f64) -> Result<ModelParams> {
    match axis {
        SweepAxis::J => template.with_j(value),
        SweepAxis::Bz => template.with_bz(value),
        SweepAxis::Gamma => template.with_gamma(value),
    }
}

fn evaluate_point(template: &ModelParams, axis: SweepAxis, value: f64) -> Result<SweepRecord> {
    let params = params_at(template, axis, value)?;
    let gs = ground_state(&params)?;
    let rho = partial_trace(&gs, (1, 2))?;
    Ok(SweepRecord {
        params,
        ground_energy: gs.energy(),
        sector: gs.sector(),
        c12: correlation(&rho),
        concurrence: concurrence(&rho)?,
        degenerate: gs.degenerate(),
    })
}

/// Sweep one parameter over an inclusive grid, single-threaded.
pub fn sweep(
    template: &ModelParams,
    axis: SweepAxis,
    from: f64,
    to: f64,
    step: f64,
) -> Result<Vec<SweepRecord>> {
    sweep_with_threads(template, axis, from, to, step, 1)
}

/// Sweep with `threads` workers; records come back in grid order no
/// matter how the points were scheduled.
pub fn sweep_with_threads(
    template: &ModelParams,
    axis: SweepAxis,
    from: f64,
    to: f64,
    step: f64,
    threads: usize,
) -> Result<Vec<SweepRecord>> {
    let grid = grid_points(from, to, step)?;
    let threads = threads.max(1).min(grid.len());
    if threads == 1 {
        return grid
            .iter()
            .map(|v| evaluate_point(template, axis, *v))
            .collect();
    }

    let mut indexed: Vec<(usize, Result<SweepRecord>)> = Vec::with_capacity(grid.len());
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(threads);
        for t in 0..threads {
            let grid = &grid;
            let template = &template;
            handles.push(scope.spawn(move || {
                grid.iter()
                    .enumerate()
                    .skip(t)
                    .step_by(threads)
                    .map(|(i, v)| (i, evaluate_point(template, axis, *v)))
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            indexed.extend(handle.join().expect("sweep worker panicked"));
        }
    });
    indexed.sort_by_key(|(i, _)| *i);
    indexed.into_iter().map(|(_, r)| r).collect()
}

/// The lowest energy of one sector as a line a·x + b over the swept
/// parameter.
#[derive(Debug, Clone, Copy)]
struct EnergyLine {
    sector: Sector,
    slope: f64,
    intercept: f64,
}

/// Per-sector energy lines for a gamma = 0 model along the given axis.
///
/// B_z axis: slope is the sector field constant (N − 2k), intercept the
/// exchange energy at the template's J. J axis: slope is the sector
/// exchange energy at J = 1 (valid for J >= 0), intercept the field term
/// at the template's B_z.
fn energy_lines(template: &ModelParams, axis: CrossingAxis) -> Result<Vec<EnergyLine>> {
    let n = template.n();
    match axis {
        CrossingAxis::Bz => {
            let at_zero_field = template.with_bz(0.0)?;
            Ok(sector_ground_energies(&at_zero_field)?
                .into_iter()
                .map(|(sector, e)| {
                    let Sector::Magnetization(k) = sector else {
                        unreachable!("gamma = 0 uses magnetization sectors")
                    };
                    EnergyLine {
                        sector,
                        slope: n as f64 - 2.0 * k as f64,
                        intercept: e,
                    }
                })
                .collect())
        }
        CrossingAxis::J => {
            let unit_coupling = template.with_j(1.0)?.with_bz(0.0)?;
            Ok(sector_ground_energies(&unit_coupling)?
                .into_iter()
                .map(|(sector, e)| {
                    let Sector::Magnetization(k) = sector else {
                        unreachable!("gamma = 0 uses magnetization sectors")
                    };
                    EnergyLine {
                        sector,
                        slope: e,
                        intercept: template.bz() * (n as f64 - 2.0 * k as f64),
                    }
                })
                .collect())
        }
    }
}

/// Breakpoints of the lower envelope of a set of lines over x in (0, ∞).
fn lower_envelope(lines: &[EnergyLine]) -> (Vec<Crossing>, Vec<Sector>) {
    // Winner at x -> 0+: smallest intercept, then smallest slope.
    // Intercepts from mirror-symmetric sectors agree only to solver
    // roundoff, so near-ties must resolve by slope or the envelope
    // would start on the wrong line.
    let mut current = lines[0];
    for line in &lines[1..] {
        let tie =
            (line.intercept - current.intercept).abs() <= 1e-9 * current.intercept.abs().max(1.0);
        let better = if tie {
            line.slope < current.slope
        } else {
            line.intercept < current.intercept
        };
        if better {
            current = *line;
        }
    }

    let mut crossings = Vec::new();
    let mut sequence = vec![current.sector];
    let mut x: f64 = 0.0;
    loop {
        let mut next: Option<(f64, EnergyLine)> = None;
        // Only a meaningfully smaller slope can take over; mirror sectors
        // produce slopes equal up to roundoff, and treating those as
        // distinct would fabricate a takeover at astronomical x.
        let slope_tol = 1e-9 * current.slope.abs().max(1.0);
        for line in lines {
            if line.slope >= current.slope - slope_tol {
                continue;
            }
            let cross = (line.intercept - current.intercept) / (current.slope - line.slope);
            if cross <= x + 1e-12 * x.abs().max(1.0) {
                continue;
            }
            let replace = match next {
                None => true,
                Some((best, held)) => {
                    let tie = (cross - best).abs() <= 1e-12 * best.abs().max(1.0);
                    cross < best && !tie || (tie && line.slope < held.slope)
                }
            };
            if replace {
                next = Some((cross, *line));
            }
        }
        let Some((cross, line)) = next else { break };
        crossings.push(Crossing {
            value: cross,
            sector_before: current.sector,
            sector_after: line.sector,
        });
        sequence.push(line.sector);
        current = line;
        x = cross;
    }
    (crossings, sequence)
}

/// Exact crossing positions for gamma = 0 from the per-sector energy
/// lines. Reports the positive-axis branch (x > 0); for the J axis the
/// line model assumes J >= 0.
pub fn find_crossings_closed_form(
    template: &ModelParams,
    axis: CrossingAxis,
) -> Result<CrossingReport> {
    if template.gamma() != 0.0 {
        return Err(Error::UnsupportedAnisotropy {
            gamma: template.gamma(),
        });
    }
    let lines = energy_lines(template, axis)?;
    let (crossings, sector_sequence) = lower_envelope(&lines);
    Ok(CrossingReport {
        axis,
        crossings,
        sector_sequence,
        method: CrossingMethod::ClosedForm,
    })
}

/// Width below which a bisection bracket counts as converged.
const BISECTION_RESOLUTION: f64 = 1e-6;
/// Default coarse-scan step for bracket detection.
const COARSE_STEP: f64 = 0.01;
/// Observable jumps larger than these between adjacent coarse points
/// flag a candidate discontinuity when the sector label cannot decide.
const C12_JUMP_THRESHOLD: f64 = 0.05;
const CON_JUMP_THRESHOLD: f64 = 0.02;

#[derive(Debug, Clone)]
struct ProbePoint {
    sector: Sector,
    c12: f64,
    con: f64,
    degenerate: bool,
}

fn probe(template: &ModelParams, axis: SweepAxis, value: f64) -> Result<ProbePoint> {
    let record = evaluate_point(template, axis, value)?;
    Ok(ProbePoint {
        sector: record.sector,
        c12: record.c12,
        con: record.concurrence,
        degenerate: record.degenerate,
    })
}

/// Observable jump between two probes in units of the thresholds.
/// Degenerate points carry an arbitrary representative of the ground
/// space, so jumps touching them carry no signal.
fn jump_score(a: &ProbePoint, b: &ProbePoint) -> f64 {
    if a.degenerate || b.degenerate {
        return 0.0;
    }
    let c = (a.c12 - b.c12).abs() / C12_JUMP_THRESHOLD;
    let k = (a.con - b.con).abs() / CON_JUMP_THRESHOLD;
    c.max(k)
}

/// Numerical crossing search over [from, to]: coarse scan for ground
/// sector changes (any gamma) or observable jumps (gamma != 0), then
/// bisection of each bracket down to 1e-6.
pub fn find_crossings_bisection(
    template: &ModelParams,
    axis: CrossingAxis,
    from: f64,
    to: f64,
) -> Result<CrossingReport> {
    let sweep_axis = SweepAxis::from(axis);
    let grid = grid_points(from, to, COARSE_STEP.min((to - from) / 8.0))?;
    let probes: Vec<ProbePoint> = grid
        .iter()
        .map(|v| probe(template, sweep_axis, *v))
        .collect::<Result<_>>()?;

    let mut crossings = Vec::new();
    let mut sector_sequence = vec![probes[0].sector];
    for w in 0..grid.len() - 1 {
        let label_change = probes[w].sector != probes[w + 1].sector;
        let jump = jump_score(&probes[w], &probes[w + 1]) > 1.0;
        if !label_change && !jump {
            continue;
        }
        let (mut lo, mut hi) = (grid[w], grid[w + 1]);
        let (mut plo, mut phi) = (probes[w].clone(), probes[w + 1].clone());
        while hi - lo > BISECTION_RESOLUTION {
            let mid = 0.5 * (lo + hi);
            let pmid = probe(template, sweep_axis, mid)?;
            if label_change {
                if pmid.sector != plo.sector {
                    hi = mid;
                    phi = pmid;
                } else {
                    lo = mid;
                    plo = pmid;
                }
            } else if jump_score(&plo, &pmid) >= jump_score(&pmid, &phi) {
                hi = mid;
                phi = pmid;
            } else {
                lo = mid;
                plo = pmid;
            }
        }
        // A jump that melts away under refinement was a steep but smooth
        // rise, not a level crossing.
        let confirmed = plo.sector != phi.sector || jump_score(&plo, &phi) > 1.0;
        if confirmed {
            crossings.push(Crossing {
                value: 0.5 * (lo + hi),
                sector_before: plo.sector,
                sector_after: phi.sector,
            });
            sector_sequence.push(phi.sector);
        }
    }
    Ok(CrossingReport {
        axis,
        crossings,
        sector_sequence,
        method: CrossingMethod::Bisection,
    })
}

/// Lowest energy of every magnetization sector on a B_z grid.
#[derive(Debug, Clone)]
pub struct LevelDiagram {
    pub bz: Vec<f64>,
    pub sectors: Vec<Sector>,
    /// energies[grid_index][sector_index]
    pub energies: Vec<Vec<f64>>,
}

/// Sector-resolved level diagram over a field range (gamma = 0 only).
pub fn level_diagram(
    template: &ModelParams,
    bz_from: f64,
    bz_to: f64,
    step: f64,
) -> Result<LevelDiagram> {
    if template.gamma() != 0.0 {
        return Err(Error::UnsupportedAnisotropy {
            gamma: template.gamma(),
        });
    }
    let bz = grid_points(bz_from, bz_to, step)?;
    let sectors: Vec<Sector> = (0..=template.n()).map(Sector::Magnetization).collect();
    let mut energies = Vec::with_capacity(bz.len());
    for &field in &bz {
        let params = template.with_bz(field)?;
        let row: Vec<f64> = sector_ground_energies(&params)?
            .into_iter()
            .map(|(_, e)| e)
            .collect();
        energies.push(row);
    }
    Ok(LevelDiagram {
        bz,
        sectors,
        energies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(report: &CrossingReport) -> Vec<f64> {
        report.critical_values()
    }

    #[test]
    fn grid_includes_endpoints_and_rejects_bad_ranges() {
        let g = grid_points(0.0, 3.0, 0.01).unwrap();
        assert_eq!(g.len(), 301);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 3.0);

        let g = grid_points(0.1, 0.25, 0.1).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(*g.last().unwrap(), 0.25);

        assert!(matches!(
            grid_points(1.0, 1.0, 0.1),
            Err(Error::InvalidRange(_))
        ));
        assert!(matches!(
            grid_points(2.0, 1.0, 0.1),
            Err(Error::InvalidRange(_))
        ));
        assert!(matches!(
            grid_points(0.0, 1.0, 0.0),
            Err(Error::InvalidRange(_))
        ));
        assert!(matches!(
            grid_points(0.0, 1.0, -0.5),
            Err(Error::InvalidRange(_))
        ));
    }

    #[test]
    fn closed_form_field_crossings_for_six_sites() {
        // J = 1, gamma = 0: the three crossings sit at 4 - 2*sqrt(3),
        // 2*sqrt(3) - 2, and exactly 2 (sector exchange energies 0, -4,
        // -4*sqrt(3), -8 imply these intersections).
        let template = ModelParams::new(6, 1.0, 0.0, 0.0).unwrap();
        let report = find_crossings_closed_form(&template, CrossingAxis::Bz).unwrap();
        let got = values(&report);
        let want = [4.0 - 2.0 * 3.0f64.sqrt(), 2.0 * 3.0f64.sqrt() - 2.0, 2.0];
        assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-9, "got {g}, want {w}");
        }
        let labels: Vec<Sector> = report.sector_sequence.clone();
        assert_eq!(
            labels,
            vec![
                Sector::Magnetization(3),
                Sector::Magnetization(4),
                Sector::Magnetization(5),
                Sector::Magnetization(6)
            ]
        );
    }

    #[test]
    fn closed_form_coupling_crossings_match_the_ladder() {
        let template = ModelParams::new(6, 1.0, 0.0, 1.30).unwrap();
        let report = find_crossings_closed_form(&template, CrossingAxis::J).unwrap();
        let got = values(&report);
        let r3 = 3.0f64.sqrt();
        let want = [0.65, 2.6 / (4.0 * r3 - 4.0), 2.6 / (8.0 - 4.0 * r3)];
        assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-9, "got {g}, want {w}");
        }
        // Hamming weight steps down by one per crossing, large field
        // sector first.
        let ks: Vec<usize> = report
            .sector_sequence
            .iter()
            .map(|s| match s {
                Sector::Magnetization(k) => *k,
                _ => panic!(),
            })
            .collect();
        assert_eq!(ks, vec![6, 5, 4, 3]);
    }

    #[test]
    fn odd_ring_closed_form_agrees_with_bisection() {
        // Odd N starts from a half-filling pair whose energies tie at
        // zero field; the envelope must still come out right.
        let template = ModelParams::new(5, 1.0, 0.0, 0.0).unwrap();
        let exact = find_crossings_closed_form(&template, CrossingAxis::Bz).unwrap();
        assert_eq!(exact.crossings.len(), 2);
        assert_eq!(exact.sector_sequence[0], Sector::Magnetization(3));
        let scanned = find_crossings_bisection(&template, CrossingAxis::Bz, 0.01, 3.0).unwrap();
        assert_eq!(scanned.crossings.len(), 2);
        for (e, s) in values(&exact).iter().zip(values(&scanned)) {
            assert!((e - s).abs() <= 1e-6, "closed {e} vs bisection {s}");
        }

        let template = ModelParams::new(5, 1.0, 0.0, 0.9).unwrap();
        let exact = find_crossings_closed_form(&template, CrossingAxis::J).unwrap();
        let scanned = find_crossings_bisection(&template, CrossingAxis::J, 0.05, 3.0).unwrap();
        assert_eq!(exact.crossings.len(), scanned.crossings.len());
        for (e, s) in values(&exact).iter().zip(values(&scanned)) {
            assert!((e - s).abs() <= 1e-6, "closed {e} vs bisection {s}");
        }
    }

    #[test]
    fn closed_form_rejects_anisotropy() {
        let template = ModelParams::new(6, 1.0, 0.5, 1.0).unwrap();
        assert!(matches!(
            find_crossings_closed_form(&template, CrossingAxis::J),
            Err(Error::UnsupportedAnisotropy { .. })
        ));
    }

    #[test]
    fn field_proportionality_is_exact_in_closed_form() {
        let base = ModelParams::new(6, 1.0, 0.0, 1.30).unwrap();
        let reference = values(&find_crossings_closed_form(&base, CrossingAxis::J).unwrap());
        for scale in [0.5, 2.0] {
            let scaled = base.with_bz(1.30 * scale).unwrap();
            let got = values(&find_crossings_closed_form(&scaled, CrossingAxis::J).unwrap());
            for (g, r) in got.iter().zip(&reference) {
                assert!((g / scale - r).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn bisection_agrees_with_closed_form() {
        let template = ModelParams::new(6, 1.0, 0.0, 1.30).unwrap();
        let exact = values(&find_crossings_closed_form(&template, CrossingAxis::J).unwrap());
        let report = find_crossings_bisection(&template, CrossingAxis::J, 0.1, 3.0).unwrap();
        assert_eq!(report.crossings.len(), exact.len());
        for (got, want) in values(&report).iter().zip(&exact) {
            assert!((got - want).abs() <= 1e-6, "got {got}, want {want}");
        }
    }

    #[test]
    fn bisection_scaled_field_row() {
        // Half the field halves every critical coupling: 0.325, 0.444,
        // 1.213 at Bz = 0.65.
        let template = ModelParams::new(6, 1.0, 0.0, 0.65).unwrap();
        let report = find_crossings_bisection(&template, CrossingAxis::J, 0.1, 1.5).unwrap();
        let got = values(&report);
        let want = [0.325, 0.444, 1.213];
        assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 2e-3, "got {g}, want {w}");
        }
    }

    #[test]
    fn ising_limit_has_no_crossings() {
        let template = ModelParams::new(6, 1.0, 1.0, 0.0).unwrap();
        let report = find_crossings_bisection(&template, CrossingAxis::Bz, 0.0, 3.0).unwrap();
        assert!(report.crossings.is_empty(), "found {:?}", report.crossings);
        assert_eq!(report.sector_sequence.len(), 1);
    }

    #[test]
    fn sweep_records_are_consistent_and_flag_degeneracy() {
        let template = ModelParams::new(6, 1.0, 0.0, 1.30).unwrap();
        let records = sweep(&template, SweepAxis::J, 0.1, 3.0, 0.05).unwrap();
        assert_eq!(records.len(), 59);
        for r in &records {
            assert!(r.c12 >= -3.0 - 1e-9 && r.c12 <= 1.0 + 1e-9);
            assert!(r.concurrence >= 0.0 && r.concurrence <= 1.0 + 1e-9);
            let min = sector_ground_energies(&r.params)
                .unwrap()
                .into_iter()
                .map(|(_, e)| e)
                .fold(f64::INFINITY, f64::min);
            assert!((r.ground_energy - min).abs() <= 1e-10);
        }
        // J = 0.65 sits exactly on the first crossing of the Bz = 1.30
        // ladder and must be flagged.
        let at_crossing = records
            .iter()
            .find(|r| (r.params.j() - 0.65).abs() < 1e-12)
            .unwrap();
        assert!(at_crossing.degenerate);
        assert_eq!(at_crossing.sector, Sector::Magnetization(5));
    }

    #[test]
    fn ladder_is_piecewise_constant_between_crossings() {
        let template = ModelParams::new(6, 1.0, 0.0, 1.30).unwrap();
        let records = sweep(&template, SweepAxis::J, 0.9, 2.4, 0.05).unwrap();
        // The whole window sits between the 0.888 and 2.426 crossings.
        let first = &records[0];
        for r in &records {
            assert_eq!(r.sector, first.sector);
            assert!((r.c12 - first.c12).abs() <= 1e-9);
        }
    }

    #[test]
    fn gamma_axis_sweep_crosses_the_isotropic_point() {
        // The grid hits gamma = 0 exactly, where blocking switches from
        // parity to magnetization sectors; observables stay continuous.
        let template = ModelParams::new(4, 1.0, 0.0, 0.7).unwrap();
        let records = sweep(&template, SweepAxis::Gamma, -0.2, 0.2, 0.1).unwrap();
        assert_eq!(records.len(), 5);
        let at_zero = &records[2];
        assert_eq!(at_zero.params.gamma(), 0.0);
        assert!(matches!(at_zero.sector, Sector::Magnetization(_)));
        assert!(matches!(records[1].sector, Sector::Parity(_)));
        for w in records.windows(2) {
            assert!((w[0].ground_energy - w[1].ground_energy).abs() < 0.5);
            assert!((w[0].c12 - w[1].c12).abs() < 0.1);
        }
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        let template = ModelParams::new(5, 1.0, 0.3, 0.0).unwrap();
        let seq = sweep(&template, SweepAxis::Bz, 0.0, 1.0, 0.05).unwrap();
        let par = sweep_with_threads(&template, SweepAxis::Bz, 0.0, 1.0, 0.05, 4).unwrap();
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.ground_energy.to_bits(), b.ground_energy.to_bits());
            assert_eq!(a.c12.to_bits(), b.c12.to_bits());
            assert_eq!(a.concurrence.to_bits(), b.concurrence.to_bits());
            assert_eq!(a.sector, b.sector);
        }
    }

    #[test]
    fn level_diagram_is_affine_and_switches_with_the_closed_form() {
        let template = ModelParams::new(6, 1.0, 0.0, 0.0).unwrap();
        let diagram = level_diagram(&template, 0.0, 3.0, 0.01).unwrap();
        assert_eq!(diagram.sectors.len(), 7);
        assert_eq!(diagram.bz.len(), 301);

        // Affinity: equal increments of Bz give equal increments of E.
        let idx0 = 0;
        let idx1 = 100;
        let idx2 = 200;
        for s in 0..7 {
            let d1 = diagram.energies[idx1][s] - diagram.energies[idx0][s];
            let d2 = diagram.energies[idx2][s] - diagram.energies[idx1][s];
            assert!((d1 - d2).abs() <= 1e-10);
        }

        // The lower envelope of the affine curves switches at the
        // closed-form crossings.
        let report = find_crossings_closed_form(&template, CrossingAxis::Bz).unwrap();
        let lines: Vec<EnergyLine> = diagram
            .sectors
            .iter()
            .enumerate()
            .map(|(s, sector)| {
                let slope = (diagram.energies[idx2][s] - diagram.energies[idx0][s])
                    / (diagram.bz[idx2] - diagram.bz[idx0]);
                EnergyLine {
                    sector: *sector,
                    slope,
                    intercept: diagram.energies[idx0][s] - slope * diagram.bz[idx0],
                }
            })
            .collect();
        let (crossings, _) = lower_envelope(&lines);
        assert_eq!(crossings.len(), report.crossings.len());
        for (got, want) in crossings.iter().zip(&report.crossings) {
            assert!((got.value - want.value).abs() <= 1e-9);
        }
    }

    #[test]
    fn level_diagram_rejects_anisotropy() {
        let template = ModelParams::new(6, 1.0, 0.2, 0.0).unwrap();
        assert!(matches!(
            level_diagram(&template, 0.0, 1.0, 0.1),
            Err(Error::UnsupportedAnisotropy { .. })
        ));
    }

    #[test]
    fn coupling_off_levels_cross_at_zero_field() {
        let template = ModelParams::new(4, 0.0, 0.0, 0.0).unwrap();
        let diagram = level_diagram(&template, 0.0, 1.0, 0.5).unwrap();
        for (gi, bz) in diagram.bz.iter().enumerate() {
            for (si, sector) in diagram.sectors.iter().enumerate() {
                let Sector::Magnetization(k) = sector else {
                    panic!()
                };
                let want = bz * (4.0 - 2.0 * *k as f64);
                assert!((diagram.energies[gi][si] - want).abs() <= 1e-12);
            }
        }
    }
}
