//! Sequence-level model of algebras of type `n`.
//!
//! An algebra of type `n` is fixed by its sequence `(β_i)_{i>n}`, defined by
//! `[e_i, e_n] = β_i e_{i+n}` where `e_i = [e_{i-1}, z]`. Everything here works
//! on a finite prefix of that sequence; values past the known depth are
//! reported as unknown, never read as zero.

mod bracket;
mod constituents;
mod lcs;
mod search;
mod series;
mod type1;

pub use bracket::{bracket_coeff, eih_residual, jacobi_verify, GammaTable, JacobiReport, JacobiViolation};
pub use constituents::{
    constituents, fromlinrecur_bridge, BridgeReport, Constituent, ConstituentOutcome, ConstituentReport, LemmaFlag,
    PartialConstituent,
};
pub use lcs::{constituents_via_lcs, LcsLengths};
pub use search::{first_length_menu, search_sequences, FoundPrefix, MenuViolation, SearchConfig, SearchReport};
pub use series::{genfunc, subalgebra_transform, RationalSeries, RationalSeriesJson, TruncatedSeries};
pub use type1::{project_type1, AlphaSequence};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Fp, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("type must be at least 1, got {0}")]
    BadType(usize),
    #[error("index {index} outside the known window ({n}, {depth}]")]
    OutOfWindow { index: usize, n: usize, depth: usize },
    #[error("bracket indices must be at least n = {n}, got ({a}, {b})")]
    BadBracket { a: usize, b: usize, n: usize },
    #[error("need depth {needed}, sequence known to {depth}")]
    DepthShortfall { needed: usize, depth: usize },
    #[error("E({i}, {h}) needs i > n and h > 0")]
    BadEih { i: usize, h: usize },
    #[error("E(i, {h}) is a constraint only when beta_(n+{h}) = 0")]
    NotAConstraint { h: usize },
    #[error("needs beta_(n+1) = 0 ([L^2, L_n] inside L^(n+3)); the length formula fails otherwise")]
    LcsHypothesis,
    #[error("entries alpha_{index} and alpha_{next} are both nonzero", next = index + 1)]
    AdjacentNonzero { index: usize },
    #[error("projected constituent {index} is not ordinary")]
    ProjectionNotOrdinary { index: usize },
    #[error("residue {value} not reduced modulo {p}")]
    BadResidue { value: u64, p: u64 },
    #[error("recorded depth {recorded} disagrees with n + len(betas) = {actual}")]
    DepthMismatch { recorded: usize, actual: usize },
}

/// Finite prefix `β_{n+1}, ..., β_D` of the sequence of an algebra of type `n`.
///
/// `β_n` is deliberately absent. Type 1 is allowed so that the same
/// machinery handles the sequences `(α_i)_{i>1}` of type-1 algebras.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BetaSequence {
    field: PrimeField,
    n: usize,
    betas: Vec<Fp>,
}

impl BetaSequence {
    pub fn new(field: &PrimeField, n: usize, betas: Vec<Fp>) -> Result<Self, SeqError> {
        if n == 0 {
            return Err(SeqError::BadType(n));
        }
        for b in &betas {
            if b.modulus() != field.p() {
                return Err(SeqError::BadResidue { value: b.value() as u64, p: field.p() });
            }
        }
        Ok(BetaSequence { field: field.clone(), n, betas })
    }

    pub fn from_ints(field: &PrimeField, n: usize, betas: &[i64]) -> Result<Self, SeqError> {
        Self::new(field, n, betas.iter().map(|&b| field.elem(b)).collect())
    }

    /// All-zero sequence to `depth`: the algebra with an abelian maximal ideal.
    pub fn zeros(field: &PrimeField, n: usize, depth: usize) -> Result<Self, SeqError> {
        Self::new(field, n, vec![field.zero(); depth.saturating_sub(n)])
    }

    /// All-ones sequence to `depth`: the other metabelian algebra.
    pub fn ones(field: &PrimeField, n: usize, depth: usize) -> Result<Self, SeqError> {
        Self::new(field, n, vec![field.one(); depth.saturating_sub(n)])
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest index with a known entry.
    pub fn depth(&self) -> usize {
        self.n + self.betas.len()
    }

    /// Entries `β_{n+1}..=β_D` in order.
    pub fn entries(&self) -> &[Fp] {
        &self.betas
    }

    /// `β_i` if `n < i <= depth`.
    pub fn get(&self, i: usize) -> Option<Fp> {
        if i <= self.n {
            return None;
        }
        self.betas.get(i - self.n - 1).copied()
    }

    pub fn beta(&self, i: usize) -> Result<Fp, SeqError> {
        self.get(i).ok_or(SeqError::OutOfWindow { index: i, n: self.n, depth: self.depth() })
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.betas.iter().position(|b| !b.is_zero()).map(|i| i + self.n + 1)
    }

    pub fn is_normalized(&self) -> bool {
        self.first_nonzero().is_none_or(|i| self.betas[i - self.n - 1].is_one())
    }

    /// Rescales so that the first nonzero entry is 1.
    pub fn normalized(&self) -> Self {
        match self.first_nonzero() {
            None => self.clone(),
            Some(i) => {
                let inv = self.betas[i - self.n - 1].inv().expect("nonzero");
                BetaSequence {
                    field: self.field.clone(),
                    n: self.n,
                    betas: self.betas.iter().map(|&b| b * inv).collect(),
                }
            }
        }
    }

    pub fn truncated(&self, depth: usize) -> Self {
        let keep = depth.saturating_sub(self.n).min(self.betas.len());
        BetaSequence { field: self.field.clone(), n: self.n, betas: self.betas[..keep].to_vec() }
    }

    /// Copy with `β_i` replaced.
    pub fn with_beta(&self, i: usize, value: Fp) -> Result<Self, SeqError> {
        self.beta(i)?;
        let mut out = self.clone();
        out.betas[i - self.n - 1] = value;
        Ok(out)
    }

    pub fn to_record(&self) -> SequenceRecord {
        SequenceRecord {
            p: self.field.p(),
            n: self.n,
            depth: self.depth(),
            betas: self.betas.iter().map(|b| b.value() as u64).collect(),
        }
    }
}

/// On-disk form `{p, n, depth, betas}`; `betas` starts at index `n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub p: u64,
    pub n: usize,
    pub depth: usize,
    pub betas: Vec<u64>,
}

impl SequenceRecord {
    pub fn into_sequence(self) -> Result<BetaSequence, SeqError> {
        let field = PrimeField::new(self.p)?;
        if self.depth != self.n + self.betas.len() {
            return Err(SeqError::DepthMismatch { recorded: self.depth, actual: self.n + self.betas.len() });
        }
        let betas =
            self.betas
                .iter()
                .map(|&v| {
                    if v < self.p {
                        Ok(field.elem(v as i64))
                    } else {
                        Err(SeqError::BadResidue { value: v, p: self.p })
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
        BetaSequence::new(&field, self.n, betas)
    }
}
