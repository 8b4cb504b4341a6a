//! Seeded random normal forms with `N` clauses of `M` random literals over
//! `n` variables.
//!
//! Two literal models are available. [`LiteralSampling::Uniform`] draws each
//! of the `M` literals independently (variable uniform in `1..=n`, sign
//! uniform), so a clause can repeat a literal (and end up shorter) or contain
//! a variable with both signs. [`LiteralSampling::DistinctVars`] draws `M`
//! distinct variables, the usual random k-SAT model, so every clause has
//! exactly `M` literals and is consistent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{Formula, Kind, Literal, LiteralSet};

/// Identifies the PRNG and seeding scheme in experiment output. Changing
/// either must change this string.
pub const PRNG_ID: &str = "chacha8(rand_chacha-0.3,seed_from_u64)/splitmix64-subseed";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LiteralSampling {
    /// Independent uniform literals, with replacement.
    #[default]
    Uniform,
    /// `M` distinct variables per clause (Floyd's algorithm), uniform signs.
    DistinctVars,
}

impl LiteralSampling {
    pub fn as_str(self) -> &'static str {
        match self {
            LiteralSampling::Uniform => "uniform-literals",
            LiteralSampling::DistinctVars => "distinct-vars",
        }
    }
}

/// Full generator identifier for a sampling model.
pub fn generator_id(sampling: LiteralSampling) -> String {
    format!("{PRNG_ID}/{}", sampling.as_str())
}

pub const DEFAULT_WIDTH: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("clause width {width} must be between 1 and the variable count {num_vars}")]
    InvalidWidth { width: u32, num_vars: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub num_vars: u32,
    pub num_clauses: usize,
    /// Literals per clause.
    pub width: u32,
    pub seed: u64,
    pub sampling: LiteralSampling,
}

impl GenSpec {
    pub fn new(num_vars: u32, num_clauses: usize, seed: u64) -> Self {
        Self {
            num_vars,
            num_clauses,
            width: DEFAULT_WIDTH,
            seed,
            sampling: LiteralSampling::default(),
        }
    }

    pub fn with_sampling(mut self, sampling: LiteralSampling) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn with_width(mut self, width: u32) -> Self {
        self.width = width;
        self
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.width == 0 || self.width > self.num_vars {
            return Err(GenError::InvalidWidth {
                width: self.width,
                num_vars: self.num_vars,
            });
        }
        Ok(())
    }
}

/// Sub-seed for trial `trial` of a batch seeded with `seed` (SplitMix64
/// finalizer over a Weyl step).
pub fn derive_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `amount` distinct values from `1..=n`, by Floyd's algorithm.
fn sample_distinct(rng: &mut ChaCha8Rng, n: u32, amount: u32) -> Vec<u32> {
    let mut chosen: Vec<u32> = Vec::with_capacity(amount as usize);
    for j in n - amount..n {
        let t = rng.gen_range(0..=j);
        let pick = if chosen.contains(&(t + 1)) { j + 1 } else { t + 1 };
        chosen.push(pick);
    }
    chosen.sort_unstable();
    chosen
}

fn signed(var: u32, positive: bool) -> Literal {
    let v = var as i32;
    Literal::new(if positive { v } else { -v }).expect("variables start at 1")
}

pub fn rand_nf(spec: &GenSpec, kind: Kind) -> Result<Formula, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let clauses = (0..spec.num_clauses)
        .map(|_| match spec.sampling {
            LiteralSampling::Uniform => LiteralSet::from_literals((0..spec.width).map(|_| {
                let v = rng.gen_range(1..=spec.num_vars);
                signed(v, rng.gen())
            })),
            LiteralSampling::DistinctVars => {
                let vars = sample_distinct(&mut rng, spec.num_vars, spec.width);
                LiteralSet::from_literals(vars.into_iter().map(|v| signed(v, rng.gen())))
            }
        })
        .collect();
    Ok(Formula::new(kind, spec.num_vars, clauses).expect("generated variables are in range"))
}

pub fn rand_dnf(spec: &GenSpec) -> Result<Formula, GenError> {
    rand_nf(spec, Kind::Dnf)
}

pub fn rand_cnf(spec: &GenSpec) -> Result<Formula, GenError> {
    rand_nf(spec, Kind::Cnf)
}
