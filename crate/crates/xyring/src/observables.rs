//! Two-site observables of the ground state: the reduced density matrix,
//! the spatial correlation ⟨σ⁽ⁱ⁾·σ⁽ʲ⁾⟩, and the Wootters concurrence.
//!
//! The pair basis is {|00⟩, |01⟩, |10⟩, |11⟩} with the first kept site in
//! the more significant position. Ground states here are real, so ρ is a
//! real symmetric 4×4 matrix and the spin-flipped partner is
//! ρ̃ = (σ_y⊗σ_y) ρ (σ_y⊗σ_y).

use crate::eigen::GroundState;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, SymMatrix};

/// σ⁽¹⁾·σ⁽²⁾ = σ_xσ_x + σ_yσ_y + σ_zσ_z in the pair basis.
const PAIR_CORRELATION: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 2.0, 0.0],
    [0.0, 2.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

/// σ_y ⊗ σ_y, which is real in this basis.
const SIGMA_Y_PAIR: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

/// Eigenvalues below this signal an invalid density matrix rather than
/// roundoff.
const NEGATIVE_EIGENVALUE_LIMIT: f64 = -1e-8;

/// Eigenvalues within this band of zero are roundoff noise and snap to
/// exactly zero before a square root, which would otherwise amplify
/// 1e-16-scale noise to 1e-8.
const SPECTRUM_NOISE: f64 = 1e-12;

/// Noise policy for eigenvalues feeding a square root: error far below
/// zero, exact zero across the noise band, value otherwise.
fn clamp_spectrum(x: f64, stage: &str) -> Result<f64> {
    if x < NEGATIVE_EIGENVALUE_LIMIT {
        return Err(Error::NumericalFailure(format!(
            "{stage} eigenvalue {x} below {NEGATIVE_EIGENVALUE_LIMIT}"
        )));
    }
    if x <= SPECTRUM_NOISE {
        return Ok(0.0);
    }
    Ok(x)
}

/// Two-site reduced density matrix of an N-spin pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensityMatrix {
    rho: [[f64; 4]; 4],
    sites: (usize, usize),
}

impl ReducedDensityMatrix {
    /// Wrap an explicit 4×4 real density matrix (for states built outside
    /// a partial trace, e.g. closed-form two-qubit states).
    pub fn from_rows(rho: [[f64; 4]; 4]) -> Self {
        ReducedDensityMatrix { rho, sites: (1, 2) }
    }

    pub fn sites(&self) -> (usize, usize) {
        self.sites
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.rho[row][col]
    }

    pub fn rows(&self) -> &[[f64; 4]; 4] {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.rho[i][i]).sum()
    }
}

/// The spin-flipped partner ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y); ρ is real here,
/// so the conjugation is a no-op.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinFlippedState {
    rho_tilde: [[f64; 4]; 4],
}

impl SpinFlippedState {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.rho_tilde[row][col]
    }

    pub fn rows(&self) -> &[[f64; 4]; 4] {
        &self.rho_tilde
    }
}

pub fn spin_flipped(rho: &ReducedDensityMatrix) -> SpinFlippedState {
    let m = mat_mul(&mat_mul(&SIGMA_Y_PAIR, &rho.rho), &SIGMA_Y_PAIR);
    SpinFlippedState { rho_tilde: m }
}

/// Trace out every site except the ordered pair `keep` (1-based,
/// i < j) from a normalized pure state.
pub fn partial_trace(state: &GroundState, keep: (usize, usize)) -> Result<ReducedDensityMatrix> {
    let n = state.n();
    let (i, j) = keep;
    if i < 1 || j <= i || j > n {
        return Err(Error::BadSites { i, j, n });
    }

    // Group amplitudes by environment configuration; each group
    // contributes the outer product of its 4 pair amplitudes.
    let env_bits = n - 2;
    let mut rho = [[0.0; 4]; 4];
    let mut pair_amp = [0.0; 4];
    for env in 0..(1usize << env_bits) {
        for (p, amp) in pair_amp.iter_mut().enumerate() {
            *amp = state.amplitudes()[compose_index(env, p, i, j, n)];
        }
        for a in 0..4 {
            for b in 0..4 {
                rho[a][b] += pair_amp[a] * pair_amp[b];
            }
        }
    }
    Ok(ReducedDensityMatrix { rho, sites: (i, j) })
}

/// Full-space index of the state with pair bits `pair` at sites (i, j)
/// and the remaining sites set from `env` in site order.
fn compose_index(env: usize, pair: usize, i: usize, j: usize, n: usize) -> usize {
    let mut bits = 0usize;
    for site in 1..=n {
        bits <<= 1;
        if site == i {
            bits |= (pair >> 1) & 1;
        } else if site == j {
            bits |= pair & 1;
        } else {
            bits |= (env >> env_bits_remaining(site, i, j, n)) & 1;
        }
    }
    bits
}

/// How many environment bits come after `site` (sites ordered, i and j
/// excluded); the environment index uses the same most-significant-first
/// convention as the full basis.
fn env_bits_remaining(site: usize, i: usize, j: usize, n: usize) -> usize {
    ((site + 1)..=n).filter(|s| *s != i && *s != j).count()
}

/// Spatial correlation Tr(ρ · σ⁽¹⁾·σ⁽²⁾); ranges over [−3, 1] for
/// physical states.
pub fn correlation(rho: &ReducedDensityMatrix) -> f64 {
    let mut total = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            total += rho.rho[a][b] * PAIR_CORRELATION[b][a];
        }
    }
    total
}

/// Wootters concurrence max{λ₁−λ₂−λ₃−λ₄, 0}, where λ are the decreasing
/// square roots of the eigenvalues of ρρ̃.
///
/// ρρ̃ is not symmetric, so the computation runs on the similar symmetric
/// matrix √ρ·ρ̃·√ρ, which shares its eigenvalues and needs only the
/// symmetric eigensolver.
pub fn concurrence(rho: &ReducedDensityMatrix) -> Result<f64> {
    let eig = symmetric_eigen(&to_sym(&rho.rho))?;
    let mut sqrt_rho = [[0.0; 4]; 4];
    for (mu, v) in eig.values.iter().zip(&eig.vectors) {
        let root = clamp_spectrum(*mu, "density matrix")?.sqrt();
        if root == 0.0 {
            continue;
        }
        for a in 0..4 {
            for b in 0..4 {
                sqrt_rho[a][b] += root * v[a] * v[b];
            }
        }
    }

    let tilde = spin_flipped(rho);
    let mut product = mat_mul(&mat_mul(&sqrt_rho, &tilde.rho_tilde), &sqrt_rho);
    for a in 0..4 {
        for b in (a + 1)..4 {
            let avg = 0.5 * (product[a][b] + product[b][a]);
            product[a][b] = avg;
            product[b][a] = avg;
        }
    }

    let eig = symmetric_eigen(&to_sym(&product))?;
    let mut lambdas = [0.0; 4];
    for (slot, nu) in lambdas.iter_mut().zip(eig.values.iter()) {
        *slot = clamp_spectrum(*nu, "spin-flip product")?.sqrt();
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Concurrence of a pure two-qubit state a|00⟩+b|01⟩+c|10⟩+d|11⟩,
/// which reduces to 2|ad − bc|.
pub fn pure_concurrence(a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
    let norm_sq = a * a + b * b + c * c + d * d;
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(2.0 * (a * d - b * c).abs())
}

fn mat_mul(x: &[[f64; 4]; 4], y: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| x[a][k] * y[k][b]).sum();
        }
    }
    out
}

fn to_sym(m: &[[f64; 4]; 4]) -> SymMatrix {
    let mut s = SymMatrix::zeros(4);
    for a in 0..4 {
        for b in 0..4 {
            s.set(a, b, m[a][b]);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Sector;
    use crate::eigen::GroundState;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn state_from(n: usize, terms: &[(u32, f64)]) -> GroundState {
        let mut amps = vec![0.0; 1 << n];
        for (bits, a) in terms {
            amps[*bits as usize] = *a;
        }
        GroundState::from_amplitudes(n, 0.0, Sector::Full, amps, false).unwrap()
    }

    #[test]
    fn product_state_traces_to_a_corner() {
        let gs = state_from(6, &[(0b000000, 1.0)]);
        let rho = partial_trace(&gs, (1, 2)).unwrap();
        let mut expected = [[0.0; 4]; 4];
        expected[0][0] = 1.0;
        assert_eq!(rho.rows(), &expected);
        assert!((correlation(&rho) - 1.0).abs() <= 1e-12);
        assert!(concurrence(&rho).unwrap() <= 1e-12);
    }

    #[test]
    fn cat_state_traces_to_a_diagonal_mixture() {
        let s = 0.5f64.sqrt();
        let gs = state_from(6, &[(0b000000, s), (0b111111, s)]);
        let rho = partial_trace(&gs, (1, 2)).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let want = if a == b && (a == 0 || a == 3) {
                    0.5
                } else {
                    0.0
                };
                assert!((rho.get(a, b) - want).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn alternating_single_excitation_state_reduced_matrix() {
        // Six equal-magnitude single-excitation terms with alternating
        // signs: rho = [[2/3,0,0,0],[0,1/6,-1/6,0],[0,-1/6,1/6,0],[0,..0]]
        // and correlation -1/3.
        let amp = 1.0 / 6.0f64.sqrt();
        let terms: Vec<(u32, f64)> = (0..6)
            .map(|site| {
                let bits = 1u32 << (5 - site);
                let sign = if site % 2 == 0 { -1.0 } else { 1.0 };
                (bits, sign * amp)
            })
            .collect();
        let gs = state_from(6, &terms);
        let rho = partial_trace(&gs, (1, 2)).unwrap();

        let third = 1.0 / 3.0;
        let sixth = 1.0 / 6.0;
        for a in 0..4 {
            for b in 0..4 {
                let want = match (a, b) {
                    (0, 0) => 2.0 * third,
                    (1, 1) | (2, 2) => sixth,
                    (1, 2) | (2, 1) => -sixth,
                    _ => 0.0,
                };
                assert!(
                    (rho.get(a, b) - want).abs() <= 1e-12,
                    "rho[{a}][{b}] = {}, want {want}",
                    rho.get(a, b)
                );
            }
        }
        assert!((correlation(&rho) + third).abs() <= 1e-12);
    }

    #[test]
    fn singlet_correlation_and_concurrence() {
        let h = 0.5;
        let rho = ReducedDensityMatrix::from_rows([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, h, -h, 0.0],
            [0.0, -h, h, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert!((correlation(&rho) + 3.0).abs() <= 1e-12);
        assert!((concurrence(&rho).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn triplet_bell_state_is_maximally_entangled() {
        let h = 0.5;
        let rho = ReducedDensityMatrix::from_rows([
            [0.0, 0.0, 0.0, 0.0],
            [0.0, h, h, 0.0],
            [0.0, h, h, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert!((concurrence(&rho).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn werner_mixture_concurrence() {
        // p * singlet + (1-p) * I/4 at p = 0.8. The state is invariant
        // under the spin flip, so the lambdas are |eigenvalues of rho|:
        // (1+3p)/4 minus three times (1-p)/4, i.e. (3p-1)/2 = 0.7.
        let p = 0.8;
        let mut rho = [[0.0; 4]; 4];
        for (i, row) in rho.iter_mut().enumerate() {
            row[i] = (1.0 - p) / 4.0;
        }
        rho[1][1] += 0.5 * p;
        rho[2][2] += 0.5 * p;
        rho[1][2] -= 0.5 * p;
        rho[2][1] -= 0.5 * p;
        let rho = ReducedDensityMatrix::from_rows(rho);
        assert!((concurrence(&rho).unwrap() - 0.7).abs() <= 1e-12);
    }

    #[test]
    fn spin_flip_matches_the_element_pattern() {
        let mut rng = StdRng::seed_from_u64(9);
        let mut rho = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in a..4 {
                let v = rng.gen_range(-1.0..1.0);
                rho[a][b] = v;
                rho[b][a] = v;
            }
        }
        let tilde = spin_flipped(&ReducedDensityMatrix::from_rows(rho));
        // (sigma_y x sigma_y) rho (sigma_y x sigma_y) permutes 1<->4 and
        // 2<->3 with signs s_i = -1 for {1,4}, +1 for {2,3} (1-based).
        let perm = [3usize, 2, 1, 0];
        let sign = [-1.0, 1.0, 1.0, -1.0];
        for a in 0..4 {
            for b in 0..4 {
                let want = sign[a] * sign[b] * rho[perm[a]][perm[b]];
                assert!((tilde.get(a, b) - want).abs() <= 1e-15);
            }
        }
        assert!((tilde.get(0, 0) - rho[3][3]).abs() <= 1e-15);
        assert!((tilde.get(0, 1) + rho[2][3]).abs() <= 1e-15);
    }

    #[test]
    fn pure_state_shortcut_trivial_cases() {
        assert_eq!(pure_concurrence(1.0, 0.0, 0.0, 0.0).unwrap(), 0.0);
        let s = 0.5f64.sqrt();
        assert!((pure_concurrence(s, 0.0, 0.0, s).unwrap() - 1.0).abs() <= 1e-12);
        assert!(matches!(
            pure_concurrence(1.0, 1.0, 0.0, 0.0),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn pure_state_shortcut_matches_the_general_route() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..200 {
            let mut v = [0.0; 4];
            for x in v.iter_mut() {
                *x = rng.gen_range(-1.0..1.0);
            }
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in v.iter_mut() {
                *x /= norm;
            }
            let mut rho = [[0.0; 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    rho[a][b] = v[a] * v[b];
                }
            }
            let general = concurrence(&ReducedDensityMatrix::from_rows(rho)).unwrap();
            let shortcut = pure_concurrence(v[0], v[1], v[2], v[3]).unwrap();
            assert!((general - shortcut).abs() <= 1e-10);
        }
    }

    #[test]
    fn rejects_bad_site_pairs() {
        let gs = state_from(6, &[(0, 1.0)]);
        for (i, j) in [(0, 2), (3, 3), (4, 2), (1, 7)] {
            assert!(matches!(
                partial_trace(&gs, (i, j)),
                Err(Error::BadSites { .. })
            ));
        }
    }

    #[test]
    fn partial_trace_invariants_on_a_generic_ground_state() {
        let params = crate::hamiltonian::ModelParams::new(6, 1.0, 0.4, 0.9).unwrap();
        let gs = crate::eigen::ground_state(&params).unwrap();
        let rho = partial_trace(&gs, (2, 5)).unwrap();
        assert!((rho.trace() - 1.0).abs() <= 1e-12);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(rho.get(a, b), rho.get(b, a));
            }
        }
        let eig = symmetric_eigen(&to_sym(rho.rows())).unwrap();
        assert!(eig.values[0] >= -1e-12);
    }
}
