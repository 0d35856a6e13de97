//! The XY ring Hamiltonian with a transverse field, assembled as a real
//! symmetric matrix over the full product basis or one symmetry block.
//!
//! With σ± = (σ_x ± iσ_y)/2 the Hamiltonian reads
//!
//!   H = 2J Σ_i [(σ₋⁽ⁱ⁾σ₊⁽ⁱ⁺¹⁾ + σ₊⁽ⁱ⁾σ₋⁽ⁱ⁺¹⁾)
//!              + γ(σ₊⁽ⁱ⁾σ₊⁽ⁱ⁺¹⁾ + σ₋⁽ⁱ⁾σ₋⁽ⁱ⁺¹⁾)] + B_z Σ_i σ_z⁽ⁱ⁾
//!
//! with site N+1 identified with site 1. In the bit basis this is a
//! hopping amplitude 2J on nearest-neighbor 01 ↔ 10 exchanges, a pair
//! amplitude 2Jγ on 00 ↔ 11 flips, and a diagonal field B_z(N − 2w) for
//! a state with w set bits. The couplings J_x = (1+γ)J and J_y = (1−γ)J
//! give back the σ_xσ_x/σ_yσ_y form.

use crate::basis::{enumerate_sector, BasisState, Sector, SectorBasis, MAX_SITES, MIN_SITES};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// Model parameters: ring size, mean coupling J, anisotropy γ, field B_z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: usize,
    j: f64,
    gamma: f64,
    bz: f64,
}

impl ModelParams {
    pub fn new(n: usize, j: f64, gamma: f64, bz: f64) -> Result<Self> {
        if !(MIN_SITES..=MAX_SITES).contains(&n) {
            return Err(Error::InvalidSize(n));
        }
        for (name, v) in [("j", j), ("gamma", gamma), ("bz", bz)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
        }
        Ok(ModelParams { n, j, gamma, bz })
    }

    /// Construct from the (J_x, J_y) parameterization. J = (J_x + J_y)/2
    /// and γ = (J_x − J_y)/(J_x + J_y); the conversion is undefined for
    /// J_x = −J_y ≠ 0.
    pub fn from_xy_couplings(n: usize, jx: f64, jy: f64, bz: f64) -> Result<Self> {
        let sum = jx + jy;
        let gamma = if sum == 0.0 {
            if jx != 0.0 {
                return Err(Error::InvalidParams(format!(
                    "anisotropy undefined for jx = -jy = {jx}"
                )));
            }
            0.0
        } else {
            (jx - jy) / sum
        };
        ModelParams::new(n, 0.5 * sum, gamma, bz)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn bz(&self) -> f64 {
        self.bz
    }

    pub fn jx(&self) -> f64 {
        (1.0 + self.gamma) * self.j
    }

    pub fn jy(&self) -> f64 {
        (1.0 - self.gamma) * self.j
    }

    pub fn with_j(&self, j: f64) -> Result<Self> {
        ModelParams::new(self.n, j, self.gamma, self.bz)
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        ModelParams::new(self.n, self.j, gamma, self.bz)
    }

    pub fn with_bz(&self, bz: f64) -> Result<Self> {
        ModelParams::new(self.n, self.j, self.gamma, bz)
    }
}

/// A sector block of H as a dense symmetric matrix.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    basis: SectorBasis,
    entries: SymMatrix,
}

impl HamiltonianMatrix {
    pub fn basis(&self) -> &SectorBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }
}

/// Field term of one basis state: B_z·(N − 2·weight).
#[inline]
fn field_diagonal(params: &ModelParams, state: BasisState) -> f64 {
    params.bz * (params.n as f64 - 2.0 * state.hamming_weight() as f64)
}

/// Bit masks of the N nearest-neighbor bonds (i, i+1), wrapping around.
fn bond_masks(n: usize) -> Vec<u32> {
    (0..n)
        .map(|i| {
            let p1 = n - 1 - i;
            let p2 = n - 1 - ((i + 1) % n);
            (1u32 << p1) | (1u32 << p2)
        })
        .collect()
}

fn check_sector(params: &ModelParams, sector: Sector) -> Result<()> {
    if matches!(sector, Sector::Magnetization(_)) && params.gamma != 0.0 {
        return Err(Error::SectorMismatch {
            gamma: params.gamma,
        });
    }
    Ok(())
}

/// Assemble one symmetry block of H.
///
/// Each off-diagonal entry is written exactly once per direction from the
/// corresponding exchange or pair flip, so the matrix is symmetric by
/// construction rather than by symmetrization.
pub fn build_hamiltonian(params: &ModelParams, sector: Sector) -> Result<HamiltonianMatrix> {
    check_sector(params, sector)?;
    let basis = enumerate_sector(params.n, sector)?;
    let masks = bond_masks(params.n);
    let hop = 2.0 * params.j;
    let pair = 2.0 * params.j * params.gamma;

    let mut entries = SymMatrix::zeros(basis.dimension());
    for (col, &state) in basis.states().iter().enumerate() {
        entries.add(col, col, field_diagonal(params, state));
        for &mask in &masks {
            let flipped = BasisState(state.bits() ^ mask);
            let differ = (state.bits() & mask).count_ones() == 1;
            let coeff = if differ { hop } else { pair };
            if coeff == 0.0 {
                continue;
            }
            // The flipped state stays inside the sector: exchanges keep the
            // weight, pair flips keep its parity (and pair == 0 otherwise).
            let row = basis
                .index_of(flipped)
                .expect("bond image must stay inside the symmetry sector");
            entries.add(row, col, coeff);
        }
    }
    Ok(HamiltonianMatrix { basis, entries })
}

/// Matrix-free product H·v on one sector, for cross-checks and future
/// iterative solvers.
pub fn apply_hamiltonian(params: &ModelParams, sector: Sector, vector: &[f64]) -> Result<Vec<f64>> {
    check_sector(params, sector)?;
    let basis = enumerate_sector(params.n, sector)?;
    if vector.len() != basis.dimension() {
        return Err(Error::DimensionMismatch {
            expected: basis.dimension(),
            got: vector.len(),
        });
    }
    let masks = bond_masks(params.n);
    let hop = 2.0 * params.j;
    let pair = 2.0 * params.j * params.gamma;

    let mut out = vec![0.0; vector.len()];
    for (col, &state) in basis.states().iter().enumerate() {
        let x = vector[col];
        if x == 0.0 {
            continue;
        }
        out[col] += field_diagonal(params, state) * x;
        for &mask in &masks {
            let flipped = BasisState(state.bits() ^ mask);
            let differ = (state.bits() & mask).count_ones() == 1;
            let coeff = if differ { hop } else { pair };
            if coeff == 0.0 {
                continue;
            }
            let row = basis
                .index_of(flipped)
                .expect("bond image must stay inside the symmetry sector");
            out[row] += coeff * x;
        }
    }
    Ok(out)
}
