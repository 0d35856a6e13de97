//! Exact diagonalization of the spin-1/2 XY ring in a transverse field.
//!
//! The crate builds the ring Hamiltonian over magnetization or parity
//! blocks, diagonalizes each block with a deterministic dense symmetric
//! eigensolver, and derives ground-state observables: the nearest-
//! neighbor spatial correlation and the Wootters concurrence from the
//! two-site reduced density matrix. Sweeps over the coupling J, the
//! field B_z, or the anisotropy gamma expose the level crossings where
//! both observables jump, and two independent finders (closed-form for
//! gamma = 0, bisection in general) locate the critical parameters.
//!
//! Everything is deterministic: repeated runs on the same input produce
//! byte-identical output, including under parallel sweep evaluation.

pub mod basis;
pub mod eigen;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod observables;
pub mod output;
pub mod sweep;

pub use basis::{enumerate_sector, global_spin_flip, BasisState, Parity, Sector, SectorBasis};
pub use eigen::{
    applicable_sectors, diagonalize, ground_state, sector_ground_energies, GroundState,
    SectorSpectrum, DEGENERACY_TOL,
};
pub use error::{Error, Result};
pub use hamiltonian::{apply_hamiltonian, build_hamiltonian, HamiltonianMatrix, ModelParams};
pub use observables::{
    concurrence, correlation, partial_trace, pure_concurrence, spin_flipped, ReducedDensityMatrix,
    SpinFlippedState,
};
pub use sweep::{
    find_crossings_bisection, find_crossings_closed_form, level_diagram, sweep, sweep_with_threads,
    Crossing, CrossingAxis, CrossingMethod, CrossingReport, LevelDiagram, SweepAxis, SweepRecord,
};
