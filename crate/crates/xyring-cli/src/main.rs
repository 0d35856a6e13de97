//! Command-line front end: spectra, ground states, observables, sweeps,
//! crossing tables and level diagrams with reproducible file outputs.
//!
//! Artifacts go to `--out` (summary on stdout) or to stdout (summary on
//! stderr). Exit codes: 0 success, 2 usage or validation error, 3
//! numerical error, 4 I/O error.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use xyring::{
    apply_hamiltonian, build_hamiltonian, diagonalize, find_crossings_bisection,
    find_crossings_closed_form, ground_state, level_diagram, output, partial_trace,
    sweep_with_threads, BasisState, CrossingAxis, Error, ModelParams, Sector, SweepAxis,
};

#[derive(Parser)]
#[command(
    name = "xyring",
    about = "Exact diagonalization of the spin-1/2 XY ring in a transverse field",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Coupling flags shared by every model-evaluating subcommand. Either
/// (--j, --gamma) or (--jx, --jy); mixing the two pairs is an error.
#[derive(Args, Debug)]
struct ModelFlags {
    /// Number of spins on the ring (3..=14).
    #[arg(long)]
    n: usize,

    /// Mean coupling J.
    #[arg(long, conflicts_with_all = ["jx", "jy"])]
    j: Option<f64>,

    /// Anisotropy gamma.
    #[arg(long, conflicts_with_all = ["jx", "jy"])]
    gamma: Option<f64>,

    /// x-coupling J_x = (1+gamma) J; requires --jy.
    #[arg(long, requires = "jy")]
    jx: Option<f64>,

    /// y-coupling J_y = (1-gamma) J; requires --jx.
    #[arg(long, requires = "jx")]
    jy: Option<f64>,

    /// Transverse field B_z.
    #[arg(long, default_value_t = 0.0)]
    bz: f64,
}

impl ModelFlags {
    fn params(&self) -> Result<ModelParams, Error> {
        match (self.jx, self.jy) {
            (Some(jx), Some(jy)) => ModelParams::from_xy_couplings(self.n, jx, jy, self.bz),
            _ => ModelParams::new(
                self.n,
                self.j.unwrap_or(1.0),
                self.gamma.unwrap_or(0.0),
                self.bz,
            ),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Ground state of the ring as a JSON amplitude dump.
    Ground {
        #[command(flatten)]
        model: ModelFlags,
        /// Output format (json only).
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Eigenvalues of one symmetry block.
    Spectrum {
        #[command(flatten)]
        model: ModelFlags,
        /// Block to diagonalize: full, even, odd, or m<k>.
        #[arg(long, default_value = "full")]
        sector: String,
        /// Also dump the block matrix as (row, col, value) CSV.
        #[arg(long)]
        dump_hamiltonian: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Correlation and concurrence of a site pair of the ground state.
    Observables {
        #[command(flatten)]
        model: ModelFlags,
        /// First kept site (1-based).
        #[arg(long, default_value_t = 1)]
        site_i: usize,
        /// Second kept site (1-based).
        #[arg(long, default_value_t = 2)]
        site_j: usize,
        /// Also dump the reduced density matrix as CSV.
        #[arg(long)]
        dump_rho: Option<PathBuf>,
        /// Output format: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Sweep one parameter and record ground-state observables.
    Sweep {
        #[command(flatten)]
        model: ModelFlags,
        /// Swept axis: j, bz, or gamma.
        #[arg(long)]
        axis: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        /// Repeat a j/bz sweep for each gamma in this comma-separated
        /// list, concatenating the records.
        #[arg(long, conflicts_with = "gamma")]
        gamma_list: Option<String>,
        /// Worker threads for grid evaluation.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Locate ground-state level crossings along j or bz.
    Crossings {
        #[command(flatten)]
        model: ModelFlags,
        /// Crossing axis: j or bz.
        #[arg(long)]
        axis: String,
        /// closed-form (gamma = 0 only) or bisection.
        #[arg(long, default_value = "closed-form")]
        method: String,
        /// Scan start (bisection only).
        #[arg(long)]
        from: Option<f64>,
        /// Scan end (bisection only).
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Per-sector lowest energies on a field grid (gamma = 0).
    Levels {
        #[command(flatten)]
        model: ModelFlags,
        #[arg(long)]
        bz_from: f64,
        #[arg(long)]
        bz_to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Re-ingest a ground-state JSON dump and re-derive its energy
    /// through the matrix-free Hamiltonian product.
    Verify {
        /// Ground-state JSON file written by `ground`.
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_class(&e))
        }
    }
}

enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn exit_class(e: &CliError) -> u8 {
    match e {
        CliError::Io(_) => 4,
        CliError::Lib(Error::ConvergenceFailure { .. })
        | CliError::Lib(Error::NumericalFailure(_)) => 3,
        CliError::Lib(_) => 2,
    }
}

/// Write the artifact and the one-line summary: artifact to `out` with
/// the summary on stdout, or artifact to stdout with the summary on
/// stderr.
fn deliver(out: Option<&PathBuf>, artifact: &str, summary: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, artifact)?;
            println!("{summary} -> {}", path.display());
        }
        None => {
            print!("{artifact}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn describe(params: &ModelParams) -> String {
    format!(
        "n={} j={} gamma={} bz={}",
        params.n(),
        params.j(),
        params.gamma(),
        params.bz()
    )
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ground { model, format, out } => {
            if format != "json" {
                return Err(Error::InvalidParams(format!(
                    "ground supports only --format json, got {format:?}"
                ))
                .into());
            }
            let params = model.params()?;
            let gs = ground_state(&params)?;
            let artifact = output::ground_json(&params, &gs);
            let terms = gs.amplitudes().iter().filter(|a| a.abs() > 1e-12).count();
            let summary = format!(
                "ground {} energy={} sector={} terms={}",
                describe(&params),
                output::fmt_float(gs.energy()),
                gs.sector(),
                terms
            );
            deliver(out.as_ref(), &artifact, &summary)
        }

        Command::Spectrum {
            model,
            sector,
            dump_hamiltonian,
            out,
        } => {
            let params = model.params()?;
            let sector: Sector = sector.parse()?;
            if sector == Sector::Full && params.n() > 12 {
                return Err(Error::InvalidParams(format!(
                    "full-space spectra are limited to n <= 12 (got n = {})",
                    params.n()
                ))
                .into());
            }
            let h = build_hamiltonian(&params, sector)?;
            if let Some(path) = &dump_hamiltonian {
                std::fs::write(path, output::hamiltonian_csv(&h))?;
            }
            let spec = diagonalize(&h)?;
            let artifact = output::spectrum_csv(sector, spec.eigenvalues());
            let summary = format!(
                "spectrum {} sector={} levels={}",
                describe(&params),
                sector,
                spec.eigenvalues().len()
            );
            deliver(out.as_ref(), &artifact, &summary)
        }

        Command::Observables {
            model,
            site_i,
            site_j,
            dump_rho,
            format,
            out,
        } => {
            let params = model.params()?;
            let gs = ground_state(&params)?;
            let rho = partial_trace(&gs, (site_i, site_j))?;
            if let Some(path) = &dump_rho {
                std::fs::write(path, output::rho_csv(&rho))?;
            }
            let c12 = xyring::correlation(&rho);
            let con = xyring::concurrence(&rho)?;
            let artifact = match format.as_str() {
                "csv" => {
                    output::observables_csv(&params, (site_i, site_j), c12, con, gs.degenerate())
                }
                "json" => {
                    output::observables_json(&params, (site_i, site_j), c12, con, gs.degenerate())
                }
                other => {
                    return Err(Error::InvalidParams(format!(
                        "observables supports --format csv|json, got {other:?}"
                    ))
                    .into())
                }
            };
            let summary = format!(
                "observables {} sites=({site_i},{site_j}) c12={} concurrence={}",
                describe(&params),
                output::fmt_float(c12),
                output::fmt_float(con)
            );
            deliver(out.as_ref(), &artifact, &summary)
        }

        Command::Sweep {
            model,
            axis,
            from,
            to,
            step,
            gamma_list,
            threads,
            out,
        } => {
            let axis: SweepAxis = axis.parse()?;
            let template = model.params()?;
            let gammas: Vec<f64> = match &gamma_list {
                None => vec![template.gamma()],
                Some(list) => {
                    if axis == SweepAxis::Gamma {
                        return Err(Error::InvalidParams(
                            "--gamma-list cannot combine with --axis gamma".into(),
                        )
                        .into());
                    }
                    list.split(',')
                        .map(|s| {
                            s.trim()
                                .parse::<f64>()
                                .map_err(|_| Error::InvalidParams(format!("bad gamma value {s:?}")))
                        })
                        .collect::<Result<_, _>>()?
                }
            };
            let mut records = Vec::new();
            for gamma in &gammas {
                let template = template.with_gamma(*gamma)?;
                records.extend(sweep_with_threads(
                    &template, axis, from, to, step, threads,
                )?);
            }
            let artifact = output::sweep_csv(axis, &records);
            let summary = format!(
                "sweep {} axis={axis} range=[{from},{to}] step={step} records={}",
                describe(&template),
                records.len()
            );
            deliver(out.as_ref(), &artifact, &summary)
        }

        Command::Crossings {
            model,
            axis,
            method,
            from,
            to,
            out,
        } => {
            let axis: CrossingAxis = axis.parse()?;
            let template = model.params()?;
            let report = match method.as_str() {
                "closed-form" => find_crossings_closed_form(&template, axis)?,
                "bisection" => {
                    let (Some(from), Some(to)) = (from, to) else {
                        return Err(
                            Error::InvalidRange("bisection needs --from and --to".into()).into(),
                        );
                    };
                    find_crossings_bisection(&template, axis, from, to)?
                }
                other => {
                    return Err(Error::InvalidParams(format!(
                        "method must be closed-form or bisection, got {other:?}"
                    ))
                    .into())
                }
            };
            let artifact = output::crossings_csv(&report);
            let summary = format!(
                "crossings {} axis={axis} method={} found={}",
                describe(&template),
                report.method,
                report.crossings.len()
            );
            deliver(out.as_ref(), &artifact, &summary)
        }

        Command::Levels {
            model,
            bz_from,
            bz_to,
            step,
            out,
        } => {
            let template = model.params()?;
            let diagram = level_diagram(&template, bz_from, bz_to, step)?;
            let artifact = output::levels_csv(&diagram);
            let summary = format!(
                "levels {} range=[{bz_from},{bz_to}] step={step} points={} sectors={}",
                describe(&template),
                diagram.bz.len(),
                diagram.sectors.len()
            );
            deliver(out.as_ref(), &artifact, &summary)
        }

        Command::Verify { input } => {
            let text = std::fs::read_to_string(&input)?;
            let doc = output::parse_ground_json(&text)?;
            let params = ModelParams::new(doc.n, doc.j, doc.gamma, doc.bz)?;
            let sector: Sector = doc.sector.parse()?;
            let basis = xyring::enumerate_sector(doc.n, sector)?;

            let mut vector = vec![0.0; basis.dimension()];
            for entry in &doc.amplitudes {
                let (state, n) = BasisState::from_bitstring(&entry.basis)?;
                if n != doc.n {
                    return Err(Error::InvalidParams(format!(
                        "bitstring {} does not match n = {}",
                        entry.basis, doc.n
                    ))
                    .into());
                }
                let idx = basis.index_of(state).ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "state {} lies outside sector {sector}",
                        entry.basis
                    ))
                })?;
                vector[idx] = entry.amplitude;
            }
            let norm_sq: f64 = vector.iter().map(|a| a * a).sum();
            if norm_sq == 0.0 {
                return Err(Error::NotNormalized { norm_sq }.into());
            }

            // Rayleigh quotient through the matrix-free product; accurate
            // to second order in the dump's rounding. The stored energy
            // itself carries 9 significant digits, so the comparison must
            // admit one unit in its last printed place.
            let hv = apply_hamiltonian(&params, sector, &vector)?;
            let energy: f64 = vector.iter().zip(&hv).map(|(a, b)| a * b).sum::<f64>() / norm_sq;
            let deviation = (energy - doc.energy).abs();
            let tolerance = 1e-10 * doc.energy.abs().max(1.0) + 1e-8 * doc.energy.abs();
            println!(
                "verify {} energy={} recomputed={} deviation={}",
                input.display(),
                output::fmt_float(doc.energy),
                output::fmt_float(energy),
                output::fmt_float(deviation)
            );
            if deviation > tolerance {
                return Err(Error::NumericalFailure(format!(
                    "recomputed energy deviates by {deviation:e} (tolerance {tolerance:e})"
                ))
                .into());
            }
            Ok(())
        }
    }
}
