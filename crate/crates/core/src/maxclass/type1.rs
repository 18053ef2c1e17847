use super::{constituents, BetaSequence, SeqError};
use crate::arith::{Fp, PrimeField};

/// Sequence `(α_i)_{i>1}` of an uncovered algebra of type 1, `[e_i, y] = α_i e_{i+1}`.
///
/// No two consecutive entries are both nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSequence {
    inner: BetaSequence,
}

impl AlphaSequence {
    /// `alphas[0]` is `α_2`.
    pub fn new(field: &PrimeField, alphas: Vec<Fp>) -> Result<Self, SeqError> {
        if let Some(w) = alphas.windows(2).position(|w| !w[0].is_zero() && !w[1].is_zero()) {
            return Err(SeqError::AdjacentNonzero { index: w + 2 });
        }
        Ok(AlphaSequence { inner: BetaSequence::new(field, 1, alphas)? })
    }

    pub fn from_ints(field: &PrimeField, alphas: &[i64]) -> Result<Self, SeqError> {
        Self::new(field, alphas.iter().map(|&a| field.elem(a)).collect())
    }

    /// The same data as a sequence of type 1, usable with the bracket and
    /// Jacobi machinery.
    pub fn as_type1(&self) -> &BetaSequence {
        &self.inner
    }

    pub fn depth(&self) -> usize {
        self.inner.depth()
    }

    pub fn get(&self, i: usize) -> Option<Fp> {
        self.inner.get(i)
    }

    fn nonzero_indices(&self) -> Vec<usize> {
        (2..=self.depth()).filter(|&i| !self.get(i).unwrap().is_zero()).collect()
    }
}

/// Sequence of the type-`n` subalgebra generated by `z` and `e_n`:
/// `β_i = Σ_{k<n} (-1)^k C(n-1, k) α_{i+k}`, known to `depth(α) - n + 1`.
///
/// When nonzero `α` entries are at least `n` apart (and the first sits at
/// index `>= 2n`), every complete constituent of the result must be ordinary;
/// that is checked.
pub fn project_type1(alpha: &AlphaSequence, n: usize) -> Result<BetaSequence, SeqError> {
    if n < 2 {
        return Err(SeqError::BadType(n));
    }
    let field = alpha.inner.field();
    let depth = (alpha.depth() + 1).saturating_sub(n);
    if depth <= n {
        return Err(SeqError::DepthShortfall { needed: 2 * n, depth });
    }
    let betas = ((n + 1)..=depth)
        .map(|i| {
            (0..n).fold(field.zero(), |acc, k| {
                acc + field.sign(k as u64) * field.binom((n - 1) as u64, k as u64) * alpha.get(i + k).unwrap()
            })
        })
        .collect();
    let beta = BetaSequence::new(field, n, betas)?;

    let nz = alpha.nonzero_indices();
    let spaced = nz.windows(2).all(|w| w[1] - w[0] >= n) && nz.first().is_none_or(|&f| f >= 2 * n);
    if spaced {
        if let Some(report) = constituents(&beta).report() {
            if let Some((idx, _)) = report.constituents.iter().enumerate().find(|(_, c)| !c.ordinary) {
                return Err(SeqError::ProjectionNotOrdinary { index: idx + 1 });
            }
        }
    }
    Ok(beta)
}
