use serde::Serialize;

use super::BetaSequence;
use crate::arith::{Fp, XPoly};
use crate::polycheck;

/// A complete constituent `(β_start, ..., β_end)`.
///
/// For the first constituent `start = n+1` and `length = end` (it counts `n`
/// more than its entries); later ones have `length = end - start + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub start: usize,
    pub end: usize,
    pub length: usize,
    pub entries: Vec<Fp>,
    /// Index of the first nonzero entry; always `end - n + 1`.
    pub leading: usize,
    /// Index of the last nonzero entry.
    pub trailing: usize,
    /// `λ_{end-i} = (-1)^i C(n-1, i) λ_end` for every entry.
    pub ordinary: bool,
}

impl Constituent {
    pub fn last(&self) -> Fp {
        *self.entries.last().expect("constituents are nonempty")
    }
}

/// Tail of the sequence past the last complete constituent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialConstituent {
    pub start: usize,
    pub entries: Vec<Fp>,
    /// Leading term, when it already lies within the depth.
    pub leading: Option<usize>,
}

/// Structural facts that every genuine algebra satisfies, flagged when a
/// prefix breaks them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaFlag {
    /// `ℓ` is odd.
    OddFirstLength { ell: usize },
    /// More than `ℓ - n` consecutive zero entries.
    LongZeroRun { start: usize, length: usize },
    /// A later constituent shorter than `ℓ / 2`.
    ShortConstituent { index: usize, length: usize },
    /// A later constituent longer than `ℓ`.
    LongConstituent { index: usize, length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstituentReport {
    pub n: usize,
    pub depth: usize,
    pub ell: usize,
    pub constituents: Vec<Constituent>,
    pub incomplete: Option<PartialConstituent>,
    pub lemma_flags: Vec<LemmaFlag>,
}

impl ConstituentReport {
    /// Lengths of the complete constituents, first one included.
    pub fn lengths(&self) -> Vec<usize> {
        self.constituents.iter().map(|c| c.length).collect()
    }

    pub fn later(&self) -> &[Constituent] {
        self.constituents.get(1..).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ConstituentOutcome {
    /// Every known entry is zero.
    MetabelianWithinDepth {
        depth: usize,
    },
    Constituents(ConstituentReport),
}

impl ConstituentOutcome {
    pub fn report(&self) -> Option<&ConstituentReport> {
        match self {
            ConstituentOutcome::Constituents(r) => Some(r),
            ConstituentOutcome::MetabelianWithinDepth { .. } => None,
        }
    }

    pub fn ell(&self) -> Option<usize> {
        self.report().map(|r| r.ell)
    }
}

/// Partitions the known prefix into constituents.
pub fn constituents(seq: &BetaSequence) -> ConstituentOutcome {
    let n = seq.n();
    let depth = seq.depth();
    let Some(first) = seq.first_nonzero() else {
        return ConstituentOutcome::MetabelianWithinDepth { depth };
    };
    let ell = first + n - 1;
    let mut constituents = Vec::new();
    let mut incomplete = None;
    let (mut start, mut leading) = (n + 1, first);
    loop {
        let end = leading + n - 1;
        if end > depth {
            incomplete = Some(PartialConstituent {
                start,
                entries: (start..=depth).map(|i| seq.get(i).unwrap()).collect(),
                leading: Some(leading),
            });
            break;
        }
        constituents.push(build(seq, constituents.is_empty(), start, end, leading));
        start = end + 1;
        match (start..=depth).find(|&i| !seq.get(i).unwrap().is_zero()) {
            Some(next) => leading = next,
            None => {
                if start <= depth {
                    incomplete = Some(PartialConstituent {
                        start,
                        entries: (start..=depth).map(|i| seq.get(i).unwrap()).collect(),
                        leading: None,
                    });
                }
                break;
            }
        }
    }
    let lemma_flags = lemma_flags(seq, ell, &constituents);
    ConstituentOutcome::Constituents(ConstituentReport { n, depth, ell, constituents, incomplete, lemma_flags })
}

fn build(seq: &BetaSequence, is_first: bool, start: usize, end: usize, leading: usize) -> Constituent {
    let n = seq.n();
    let field = seq.field();
    let entries: Vec<Fp> = (start..=end).map(|i| seq.get(i).unwrap()).collect();
    let trailing = (start..=end).rev().find(|&i| !seq.get(i).unwrap().is_zero()).expect("leading term is nonzero");
    debug_assert_eq!(leading, end + 1 - n);
    let last = *entries.last().unwrap();
    let ordinary = entries
        .iter()
        .rev()
        .enumerate()
        .all(|(i, &v)| v == field.sign(i as u64) * field.binom_signed(n as i64 - 1, i as i64) * last);
    let length = if is_first { end } else { end - start + 1 };
    Constituent { start, end, length, entries, leading, trailing, ordinary }
}

fn lemma_flags(seq: &BetaSequence, ell: usize, constituents: &[Constituent]) -> Vec<LemmaFlag> {
    let n = seq.n();
    let mut flags = Vec::new();
    if ell % 2 == 1 {
        flags.push(LemmaFlag::OddFirstLength { ell });
    }
    let mut run_start = None;
    for i in (n + 1)..=seq.depth() + 1 {
        let zero = seq.get(i).is_some_and(Fp::is_zero);
        match (zero, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                if i - s > ell - n {
                    flags.push(LemmaFlag::LongZeroRun { start: s, length: i - s });
                }
                run_start = None;
            }
            _ => {}
        }
    }
    for (idx, c) in constituents.iter().enumerate().skip(1) {
        if 2 * c.length < ell {
            flags.push(LemmaFlag::ShortConstituent { index: idx + 1, length: c.length });
        }
        if c.length > ell {
            flags.push(LemmaFlag::LongConstituent { index: idx + 1, length: c.length });
        }
    }
    flags
}

/// Outcome of the first-constituent polynomial check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub ell: usize,
    pub ell2: usize,
    /// `g(x) = β_{ℓ-n+1} x^{n-1} + ... + β_ℓ`, low degree first.
    pub g: Vec<Fp>,
    /// Window `ℓ - ℓ_2 < j <= ℓ - n`.
    pub j_lo: usize,
    pub j_hi: usize,
    pub holds: bool,
}

/// `[x^j] (x-1)^{ℓ-n+1} g(x) = 0` for `ℓ - ℓ_2 < j <= ℓ - n`, where `g`
/// carries the last `n` entries of the first constituent. `None` until two
/// constituents are complete.
pub fn fromlinrecur_bridge(report: &ConstituentReport, seq: &BetaSequence) -> Option<BridgeReport> {
    let (first, second) = (report.constituents.first()?, report.constituents.get(1)?);
    let n = seq.n();
    let (ell, ell2) = (first.length, second.length);
    let g_coeffs: Vec<Fp> = (0..n).map(|d| seq.get(ell - d).unwrap()).collect();
    let g = XPoly::from_coeffs(seq.field(), g_coeffs.iter().copied());
    let prod = &polycheck::x_minus_one_pow(seq.field(), (ell - n + 1) as u64) * &g;
    let (j_lo, j_hi) = (ell.saturating_sub(ell2) + 1, ell - n);
    let holds = (j_lo..=j_hi).all(|j| polycheck::coeff(&prod, j as i64).is_zero());
    Some(BridgeReport { ell, ell2, g: g_coeffs, j_lo, j_hi, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn all_ones_has_minimal_first_length() {
        let f = PrimeField::new(5).unwrap();
        for n in 2..5 {
            let s = BetaSequence::ones(&f, n, 30).unwrap();
            let r = constituents(&s);
            assert_eq!(r.ell(), Some(2 * n));
        }
    }

    #[test]
    fn all_zero_is_metabelian_within_depth() {
        let f = PrimeField::new(3).unwrap();
        let s = BetaSequence::zeros(&f, 2, 30).unwrap();
        assert_eq!(constituents(&s), ConstituentOutcome::MetabelianWithinDepth { depth: 30 });
    }

    #[test]
    fn partition_and_ordinary_flags() {
        let f = PrimeField::new(5).unwrap();
        // n = 2: first nonzero beta_5 -> ell = 6, entries beta_3..beta_6.
        // Then ordinary constituents (0,0,-1,1) of length 4 ending at 10 and 14.
        let s = BetaSequence::from_ints(&f, 2, &[0, 0, 2, 1, 0, 0, -1, 1, 0, 0, -2, 2, 0, 0]).unwrap();
        let r = constituents(&s);
        let r = r.report().unwrap();
        assert_eq!(r.ell, 6);
        assert_eq!(r.lengths(), vec![6, 4, 4]);
        assert_eq!(r.constituents[0].leading, 5);
        assert!(!r.constituents[0].ordinary);
        assert!(r.constituents[1].ordinary && r.constituents[2].ordinary);
        assert_eq!(r.constituents[2].leading, 13);
        assert_eq!(r.constituents[2].trailing, 14);
        let tail = r.incomplete.as_ref().unwrap();
        assert_eq!((tail.start, tail.leading), (15, None));
        assert!(r.lemma_flags.is_empty());
    }

    #[test]
    fn incomplete_constituent_reported() {
        let f = PrimeField::new(3).unwrap();
        let s = BetaSequence::from_ints(&f, 3, &[0, 0, 1]).unwrap();
        let r = constituents(&s);
        let r = r.report().unwrap();
        assert_eq!(r.ell, 8);
        assert!(r.constituents.is_empty());
        assert_eq!(r.incomplete.as_ref().unwrap().leading, Some(6));
    }

    #[test]
    fn lemma_flags_fire() {
        let f = PrimeField::new(7).unwrap();
        // n = 2, ell = 5 (odd), then a 7-long zero run and a constituent of length 8 > ell.
        let s = BetaSequence::from_ints(&f, 2, &[0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1]).unwrap();
        let r = constituents(&s);
        let flags = &r.report().unwrap().lemma_flags;
        assert!(flags.contains(&LemmaFlag::OddFirstLength { ell: 5 }));
        assert!(flags.iter().any(|f| matches!(f, LemmaFlag::LongZeroRun { .. })));
        assert!(flags.iter().any(|f| matches!(f, LemmaFlag::LongConstituent { .. })));
    }
}
