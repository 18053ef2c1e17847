use serde::Serialize;

use super::bracket::GammaTable;
use super::{BetaSequence, SeqError};

/// Constituent lengths read off the powers `(L^2)^r` of the ideal `L^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcsLengths {
    pub degree_bound: usize,
    /// `dim(L^2/(L^2)^2) + n`; `None` when `(L^2)^2` has no component up to the bound.
    pub ell: Option<usize>,
    /// `dim((L^2)^r/(L^2)^{r+1})` for `r = 2, 3, ...`, as far as both powers start below the bound.
    pub later: Vec<usize>,
    /// Lowest degree of each computed power `(L^2)^r`, `r >= 1`.
    pub power_starts: Vec<usize>,
    /// Every computed power is `⊕_{i >= start} L_i` up to the bound.
    pub upward_closed: bool,
}

impl LcsLengths {
    pub fn lengths(&self) -> Vec<usize> {
        self.ell.into_iter().chain(self.later.iter().copied()).collect()
    }
}

/// Computes the homogeneous components of `(L^2)^r`, where
/// `(L^2)^{r+1} = [(L^2)^r, L^2]`, from the structure constants up to
/// `degree_bound <= depth + n`.
///
/// Requires `β_{n+1} = 0`; without it the dimension formula does not give
/// the constituent lengths.
pub fn constituents_via_lcs(seq: &BetaSequence, degree_bound: usize) -> Result<LcsLengths, SeqError> {
    let n = seq.n();
    match seq.get(n + 1) {
        None => return Err(SeqError::DepthShortfall { needed: n + 1, depth: seq.depth() }),
        Some(b) if !b.is_zero() => return Err(SeqError::LcsHypothesis),
        _ => {}
    }
    if degree_bound > seq.depth() + n {
        return Err(SeqError::DepthShortfall { needed: degree_bound - n, depth: seq.depth() });
    }
    let table = GammaTable::new(seq, degree_bound);
    // member[d] for degrees n+1..=bound
    let mut current: Vec<bool> = (0..=degree_bound).map(|d| d > n).collect();
    let mut starts = vec![n + 1];
    let mut upward_closed = true;
    loop {
        let mut next = vec![false; degree_bound + 1];
        for a in (n + 1)..=degree_bound {
            if !current[a] {
                continue;
            }
            for b in (n + 1)..=degree_bound.saturating_sub(a) {
                if !table.get(a, b).expect("known within bound").is_zero() {
                    next[a + b] = true;
                }
            }
        }
        let Some(start) = next.iter().position(|&m| m) else { break };
        upward_closed &= next[start..].iter().all(|&m| m);
        starts.push(start);
        current = next;
    }
    let ell = starts.get(1).map(|&s| s - 1);
    let later = starts.windows(2).skip(1).map(|w| w[1] - w[0]).collect();
    Ok(LcsLengths { degree_bound, ell, later, power_starts: starts, upward_closed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn zero_sequence_has_no_second_power() {
        let f = PrimeField::new(5).unwrap();
        let s = BetaSequence::zeros(&f, 2, 40).unwrap();
        let r = constituents_via_lcs(&s, 42).unwrap();
        assert_eq!(r.ell, None);
        assert!(r.later.is_empty());
    }

    #[test]
    fn all_ones_refused() {
        let f = PrimeField::new(5).unwrap();
        let s = BetaSequence::ones(&f, 3, 40).unwrap();
        assert_eq!(constituents_via_lcs(&s, 40), Err(SeqError::LcsHypothesis));
    }

    #[test]
    fn bound_checked() {
        let f = PrimeField::new(5).unwrap();
        let s = BetaSequence::zeros(&f, 2, 40).unwrap();
        assert!(matches!(constituents_via_lcs(&s, 43), Err(SeqError::DepthShortfall { .. })));
    }
}
