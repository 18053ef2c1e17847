use serde::Serialize;

use super::{BetaSequence, SeqError};
use crate::arith::Fp;

/// `γ_{a,b}` with `[e_a, e_b] = γ_{a,b} e_{a+b}`:
/// `γ_{a,b} = Σ_i (-1)^i C(b-n, i) β_{a+i}`, with `β_n` read as `[e_n, e_n] = 0`.
///
/// Terms whose binomial vanishes mod `p` are skipped, so they may involve
/// unknown entries. `Ok(None)` means some needed entry lies past the depth.
pub fn bracket_coeff(seq: &BetaSequence, a: usize, b: usize) -> Result<Option<Fp>, SeqError> {
    let n = seq.n();
    if a < n || b < n {
        return Err(SeqError::BadBracket { a, b, n });
    }
    Ok(gamma(seq, a, b))
}

fn gamma(seq: &BetaSequence, a: usize, b: usize) -> Option<Fp> {
    let n = seq.n();
    let field = seq.field();
    let span = (b - n) as u64;
    let mut acc = field.zero();
    for i in 0..=span {
        let c = field.binom(span, i);
        if c.is_zero() {
            continue;
        }
        let idx = a + i as usize;
        if idx == n {
            continue;
        }
        let beta = seq.get(idx)?;
        acc += field.sign(i) * c * beta;
    }
    Some(acc)
}

/// All `γ_{a,b}` with `a, b >= n` and `a + b <= bound`.
#[derive(Clone, Debug)]
pub struct GammaTable {
    n: usize,
    bound: usize,
    width: usize,
    values: Vec<Option<Fp>>,
}

impl GammaTable {
    pub fn new(seq: &BetaSequence, bound: usize) -> Self {
        let n = seq.n();
        let width = bound.saturating_sub(2 * n) + 1;
        let mut values = vec![None; width * width];
        for a in n..=bound.saturating_sub(n) {
            for b in n..=bound - a {
                values[(a - n) * width + (b - n)] = gamma(seq, a, b);
            }
        }
        GammaTable { n, bound, width, values }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `None` when outside the table or depending on unknown entries.
    pub fn get(&self, a: usize, b: usize) -> Option<Fp> {
        if a < self.n || b < self.n || a + b > self.bound {
            return None;
        }
        self.values[(a - self.n) * self.width + (b - self.n)]
    }
}

/// First failing identity found by [`jacobi_verify`], lowest total degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JacobiViolation {
    /// `γ_{a,b} + γ_{b,a} != 0`.
    Antisymmetry { a: usize, b: usize, residual: Fp },
    /// `γ_{a,b+1} != γ_{a,b} - γ_{a+1,b}` (Jacobi with `z`).
    ZJacobi { a: usize, b: usize, residual: Fp },
    /// `γ_{b,c}γ_{a,b+c} - γ_{a,b}γ_{a+b,c} + γ_{a,c}γ_{a+c,b} != 0`.
    Jacobi { a: usize, b: usize, c: usize, residual: Fp },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub degree_bound: usize,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    pub violation: Option<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks antisymmetry, the `z`-Jacobi recurrence and the Jacobi identity on
/// all triples `n <= a <= b <= c` with total degree at most `degree_bound`.
///
/// Needs `degree_bound <= depth + n`, which makes every `γ` involved known.
pub fn jacobi_verify(seq: &BetaSequence, degree_bound: usize) -> Result<JacobiReport, SeqError> {
    let n = seq.n();
    if degree_bound > seq.depth() + n {
        return Err(SeqError::DepthShortfall { needed: degree_bound.saturating_sub(n), depth: seq.depth() });
    }
    let table = GammaTable::new(seq, degree_bound);
    let g = |a: usize, b: usize| table.get(a, b).expect("gamma known within bound");
    let mut report = JacobiReport { degree_bound, pairs_checked: 0, triples_checked: 0, violation: None };
    for s in (2 * n)..=degree_bound {
        if let Some(v) = violation_at_degree(n, s, &g, &mut report) {
            report.violation = Some(v);
            break;
        }
    }
    Ok(report)
}

/// Checks every identity whose highest degree is exactly `s`.
pub(super) fn violation_at_degree(
    n: usize,
    s: usize,
    g: &impl Fn(usize, usize) -> Fp,
    report: &mut JacobiReport,
) -> Option<JacobiViolation> {
    for a in n..=s / 2 {
        let b = s - a;
        report.pairs_checked += 1;
        let residual = g(a, b) + g(b, a);
        if !residual.is_zero() {
            return Some(JacobiViolation::Antisymmetry { a, b, residual });
        }
    }
    if s > 2 * n {
        for a in n..=s - 1 - n {
            let b = s - 1 - a;
            let residual = g(a, b + 1) - g(a, b) + g(a + 1, b);
            if !residual.is_zero() {
                return Some(JacobiViolation::ZJacobi { a, b, residual });
            }
        }
    }
    for a in n..=s / 3 {
        for b in a..=(s - a) / 2 {
            let c = s - a - b;
            if c < b {
                continue;
            }
            report.triples_checked += 1;
            let residual = g(b, c) * g(a, b + c) - g(a, b) * g(a + b, c) + g(a, c) * g(a + c, b);
            if !residual.is_zero() {
                return Some(JacobiViolation::Jacobi { a, b, c, residual });
            }
        }
    }
    None
}

/// Residual of the quadratic constraint `E(i, h)`:
/// `β_{i+h+n} Σ_g (-1)^g C(h,g) β_{i+g} - β_i Σ_g (-1)^g C(h,g) β_{i+n+g}`.
///
/// Valid only when `β_{n+h} = 0`; a known nonzero `β_{n+h}` is an error and
/// entries past the depth give `Ok(None)`.
pub fn eih_residual(seq: &BetaSequence, i: usize, h: usize) -> Result<Option<Fp>, SeqError> {
    let n = seq.n();
    if i <= n || h == 0 {
        return Err(SeqError::BadEih { i, h });
    }
    match seq.get(n + h) {
        Some(b) if !b.is_zero() => return Err(SeqError::NotAConstraint { h }),
        None => return Ok(None),
        _ => {}
    }
    Ok(eih_value(seq, i, h))
}

pub(super) fn eih_value(seq: &BetaSequence, i: usize, h: usize) -> Option<Fp> {
    let n = seq.n();
    let field = seq.field();
    let alt = |start: usize| -> Option<Fp> {
        let mut acc = field.zero();
        for gi in 0..=h as u64 {
            let c = field.binom(h as u64, gi);
            if !c.is_zero() {
                acc += field.sign(gi) * c * seq.get(start + gi as usize)?;
            }
        }
        Some(acc)
    };
    Some(seq.get(i + h + n)? * alt(i)? - seq.get(i)? * alt(i + n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Direct alternating sum with plain integer binomials.
    fn gamma_oracle(betas: &[i64], n: usize, a: usize, b: usize, p: i64) -> i64 {
        let mut acc: i128 = 0;
        let span = b - n;
        let mut c: i128 = 1;
        for i in 0..=span {
            let idx = a + i;
            let beta = if idx == n { 0 } else { betas[idx - n - 1] as i128 };
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc += sign * c * beta;
            c = c * (span - i) as i128 / (i + 1) as i128;
        }
        acc.rem_euclid(p as i128) as i64
    }

    #[test]
    fn bracket_with_e_n_is_beta() {
        let fld = f(5);
        let s = BetaSequence::from_ints(&fld, 3, &[1, 4, 2, 0, 3]).unwrap();
        for a in 4..=8 {
            assert_eq!(bracket_coeff(&s, a, 3).unwrap(), Some(s.beta(a).unwrap()));
        }
        assert_eq!(bracket_coeff(&s, 3, 3).unwrap(), Some(fld.zero()));
        assert!(bracket_coeff(&s, 2, 3).is_err());
    }

    #[test]
    fn matches_integer_oracle() {
        let fld = f(7);
        let betas = [3i64, 0, 5, 1, 6, 2, 2, 0, 4, 1, 1, 3];
        let n = 2;
        let s = BetaSequence::from_ints(&fld, n, &betas).unwrap();
        for a in n..=10 {
            for b in n..=(n + betas.len() + n - a) {
                let got = bracket_coeff(&s, a, b).unwrap().unwrap();
                assert_eq!(got.value() as i64, gamma_oracle(&betas, n, a, b, 7), "a = {a}, b = {b}");
            }
        }
    }

    #[test]
    fn unknown_is_not_zero() {
        let fld = f(3);
        let s = BetaSequence::zeros(&fld, 2, 6).unwrap();
        assert_eq!(bracket_coeff(&s, 5, 4).unwrap(), None);
        // C(3, i) mod 3 vanishes for i = 1, 2: only beta_5 and beta_8 needed.
        let s = BetaSequence::from_ints(&fld, 2, &[1, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(bracket_coeff(&s, 5, 5).unwrap(), Some(fld.elem(1 - 1)));
        let short = s.truncated(7);
        assert_eq!(bracket_coeff(&short, 5, 5).unwrap(), None);
    }

    #[test]
    fn metabelian_brackets() {
        let fld = f(5);
        let n = 3;
        let ones = BetaSequence::ones(&fld, n, 40).unwrap();
        for a in n + 1..=20 {
            for b in n + 1..=20 {
                assert_eq!(bracket_coeff(&ones, a, b).unwrap(), Some(fld.zero()), "a = {a}, b = {b}");
            }
            assert_eq!(bracket_coeff(&ones, a, n).unwrap(), Some(fld.one()));
        }
        let zeros = BetaSequence::zeros(&fld, n, 40).unwrap();
        assert_eq!(bracket_coeff(&zeros, 7, 9).unwrap(), Some(fld.zero()));
    }

    #[test]
    fn jacobi_on_metabelian_sequences() {
        for p in [3, 5, 7] {
            let fld = f(p);
            for n in 2..5 {
                assert!(jacobi_verify(&BetaSequence::zeros(&fld, n, 40).unwrap(), 40).unwrap().passed());
                assert!(jacobi_verify(&BetaSequence::ones(&fld, n, 40).unwrap(), 40 + n).unwrap().passed());
            }
        }
    }

    #[test]
    fn jacobi_depth_precondition() {
        let fld = f(3);
        let s = BetaSequence::zeros(&fld, 2, 10).unwrap();
        assert!(jacobi_verify(&s, 12).is_ok());
        assert!(matches!(jacobi_verify(&s, 13), Err(SeqError::DepthShortfall { .. })));
    }

    #[test]
    fn single_nonzero_entry_fails_antisymmetry() {
        let fld = f(5);
        let mut betas = vec![0i64; 20];
        betas[3] = 1;
        let s = BetaSequence::from_ints(&fld, 2, &betas).unwrap();
        let r = jacobi_verify(&s, 22).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn eih_examples() {
        let fld = f(5);
        let n = 2;
        let zeros = BetaSequence::zeros(&fld, n, 30).unwrap();
        assert_eq!(eih_residual(&zeros, 5, 3).unwrap(), Some(fld.zero()));

        // beta_M at M = 6, beta_m at m = M + (t-1) + n with t = 4, zeros between.
        let mut betas = vec![0i64; 12];
        betas[6 - n - 1] = 1;
        betas[11 - n - 1] = 1;
        let s = BetaSequence::from_ints(&fld, n, &betas).unwrap();
        assert_eq!(eih_residual(&s, 6, 3).unwrap(), Some(fld.elem(2)));

        let ones = BetaSequence::ones(&fld, n, 20).unwrap();
        assert_eq!(eih_residual(&ones, 5, 1), Err(SeqError::NotAConstraint { h: 1 }));
        assert!(matches!(eih_residual(&zeros, 2, 1), Err(SeqError::BadEih { .. })));
        assert_eq!(eih_residual(&zeros.truncated(10), 5, 4).unwrap(), None);
    }
}
