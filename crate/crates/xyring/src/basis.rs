//! Product basis of N spins-1/2 and the symmetry sectors used to block
//! the Hamiltonian.
//!
//! A basis state is an N-bit configuration |b₁b₂…b_N⟩ with site 1 stored
//! in the most significant bit, so the integer 0b000111 for N = 6 prints
//! as "000111". Bit value 0 is the σ_z = +1 basis vector, bit value 1 the
//! σ_z = −1 one.
//!
//! Two conservation laws matter here: the exchange terms conserve the
//! number of 1-bits (magnetization sectors), and the pair-creation terms
//! change it by ±2, conserving its parity (parity sectors).

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Smallest ring where every bond is a distinct nearest-neighbor pair.
pub const MIN_SITES: usize = 3;
/// Largest ring whose biggest magnetization block (3432 at N = 14) is
/// still comfortable for a dense solver.
pub const MAX_SITES: usize = 14;

/// One N-bit spin configuration. Site 1 is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState(pub u32);

impl BasisState {
    /// Raw bit pattern.
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Number of sites carrying label 1.
    pub fn hamming_weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Bit of site `site` (1-based, site 1 = most significant of `n`).
    pub fn bit(self, site: usize, n: usize) -> u32 {
        debug_assert!(site >= 1 && site <= n);
        (self.0 >> (n - site)) & 1
    }

    /// Fixed-width 0/1 text, site 1 leftmost (e.g. "000111" for N = 6).
    pub fn bitstring(self, n: usize) -> String {
        (1..=n)
            .map(|s| if self.bit(s, n) == 1 { '1' } else { '0' })
            .collect()
    }

    /// Parse a fixed-width 0/1 string back into a state.
    pub fn from_bitstring(text: &str) -> Result<(BasisState, usize)> {
        let n = text.len();
        if !(MIN_SITES..=MAX_SITES).contains(&n) {
            return Err(Error::InvalidSize(n));
        }
        let mut bits = 0u32;
        for c in text.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => {
                    return Err(Error::InvalidParams(format!(
                        "bitstring {text:?} contains a character other than 0/1"
                    )))
                }
            }
        }
        Ok((BasisState(bits), n))
    }
}

/// Evenness of the number of 1-bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A symmetry block of the full 2^N product space.
///
/// The ordering (magnetization by k, then even before odd, then full) is
/// the tie-break used when two blocks reach the same ground energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    /// Fixed number of 1-bits; conserved only when gamma = 0.
    Magnetization(usize),
    /// Fixed evenness of the 1-bit count; conserved for every gamma.
    Parity(Parity),
    /// No restriction.
    Full,
}

impl Sector {
    /// Number of basis states in the sector for an N-site ring.
    pub fn dimension(self, n: usize) -> usize {
        match self {
            Sector::Magnetization(k) => binomial(n, k),
            Sector::Parity(_) => 1 << (n - 1),
            Sector::Full => 1 << n,
        }
    }

    /// Whether `state` belongs to this sector.
    pub fn contains(self, state: BasisState) -> bool {
        match self {
            Sector::Magnetization(k) => state.hamming_weight() as usize == k,
            Sector::Parity(Parity::Even) => state.hamming_weight() % 2 == 0,
            Sector::Parity(Parity::Odd) => state.hamming_weight() % 2 == 1,
            Sector::Full => true,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Magnetization(k) => write!(f, "m{k}"),
            Sector::Parity(Parity::Even) => write!(f, "even"),
            Sector::Parity(Parity::Odd) => write!(f, "odd"),
            Sector::Full => write!(f, "full"),
        }
    }
}

impl FromStr for Sector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Sector::Parity(Parity::Even)),
            "odd" => Ok(Sector::Parity(Parity::Odd)),
            "full" => Ok(Sector::Full),
            _ => {
                let k = s
                    .strip_prefix('m')
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidSector(format!("unrecognized label {s:?}")))?;
                Ok(Sector::Magnetization(k))
            }
        }
    }
}

/// The ordered basis of one sector, with an O(1) inverse lookup.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    n: usize,
    sector: Sector,
    states: Vec<BasisState>,
    /// inverse[bits] = position in `states`, or u32::MAX outside the sector.
    inverse: Vec<u32>,
}

impl SectorBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    /// States in ascending integer order.
    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    /// Position of `state` in this basis, if it belongs to the sector.
    pub fn index_of(&self, state: BasisState) -> Option<usize> {
        match self.inverse.get(state.bits() as usize) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }
}

/// Enumerate all basis states of a sector in ascending integer order.
pub fn enumerate_sector(n: usize, sector: Sector) -> Result<SectorBasis> {
    if !(MIN_SITES..=MAX_SITES).contains(&n) {
        return Err(Error::InvalidSize(n));
    }
    if let Sector::Magnetization(k) = sector {
        if k > n {
            return Err(Error::InvalidSector(format!(
                "magnetization k = {k} out of range 0..={n}"
            )));
        }
    }
    let size = 1usize << n;
    let mut states = Vec::with_capacity(sector.dimension(n));
    let mut inverse = vec![u32::MAX; size];
    for bits in 0..size as u32 {
        let state = BasisState(bits);
        if sector.contains(state) {
            inverse[bits as usize] = states.len() as u32;
            states.push(state);
        }
    }
    debug_assert_eq!(states.len(), sector.dimension(n));
    Ok(SectorBasis {
        n,
        sector,
        states,
        inverse,
    })
}

/// Complement every bit: |b₁…b_N⟩ ↦ |b̄₁…b̄_N⟩.
pub fn global_spin_flip(state: BasisState, n: usize) -> BasisState {
    debug_assert!((state.bits() as usize) < (1usize << n));
    BasisState(!state.bits() & ((1u32 << n) - 1))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc as usize
}
