use serde::Serialize;

use super::{BetaSequence, SeqError};
use crate::arith::{Fp, PrimeField, XPoly};

/// Power series in `X` known exactly through `X^precision`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub poly: XPoly,
    pub precision: usize,
}

impl TruncatedSeries {
    pub fn coeff(&self, i: usize) -> Option<Fp> {
        (i <= self.precision).then(|| self.poly.coeff(i as i64))
    }

    /// Reads coefficients `n+1..=precision` as a sequence of type `n`.
    pub fn to_sequence(&self, field: &PrimeField, n: usize) -> Result<BetaSequence, SeqError> {
        let betas = ((n + 1)..=self.precision).map(|i| self.poly.coeff(i as i64)).collect();
        BetaSequence::new(field, n, betas)
    }
}

/// `Σ_{n<i<=D} β_i X^i`.
pub fn genfunc(seq: &BetaSequence) -> TruncatedSeries {
    let field = seq.field();
    let n = seq.n();
    let coeffs = (0..=seq.depth()).map(|i| if i > n { seq.get(i).unwrap() } else { field.zero() });
    TruncatedSeries { poly: XPoly::from_coeffs(field, coeffs), precision: seq.depth() }
}

/// `(1 - 1/X) S + s_{n+1} X^n`: the series of the type-`(n+1)` subalgebra
/// generated by `z` and `e_{n+1}`. Loses one degree of precision.
pub fn subalgebra_transform(series: &TruncatedSeries, n: usize) -> TruncatedSeries {
    let prec = series.precision.saturating_sub(1);
    let s = |i: usize| series.poly.coeff(i as i64);
    let mut coeffs: Vec<Fp> = (0..=prec).map(|i| s(i) - s(i + 1)).collect();
    if n <= prec {
        coeffs[n] += s(n + 1);
    }
    let field = PrimeField::new(series.poly.modulus()).expect("modulus of an existing polynomial");
    TruncatedSeries { poly: XPoly::from_coeffs(&field, coeffs), precision: prec }
}

/// Rational function `num / den` with `den(0) != 0`, read as a power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: XPoly,
    pub denominator: XPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalSeriesJson {
    pub num: Vec<u32>,
    pub den: Vec<u32>,
}

impl RationalSeries {
    /// `None` when the denominator has zero constant term.
    pub fn new(numerator: XPoly, denominator: XPoly) -> Option<Self> {
        if denominator.coeff(0).is_zero() {
            return None;
        }
        Some(RationalSeries { numerator, denominator })
    }

    /// Coefficients of `X^0..=X^depth`.
    pub fn expand(&self, depth: usize) -> Vec<Fp> {
        let den = &self.denominator;
        let inv0 = den.coeff(0).inv().expect("checked at construction");
        let dd = den.degree().unwrap_or(0);
        let mut out: Vec<Fp> = Vec::with_capacity(depth + 1);
        for i in 0..=depth {
            let mut acc = self.numerator.coeff(i as i64);
            for k in 1..=dd.min(i) {
                acc -= den.coeff(k as i64) * out[i - k];
            }
            out.push(acc * inv0);
        }
        out
    }

    pub fn truncated(&self, depth: usize) -> TruncatedSeries {
        let field = PrimeField::new(self.numerator.modulus()).expect("modulus of an existing polynomial");
        TruncatedSeries { poly: XPoly::from_coeffs(&field, self.expand(depth)), precision: depth }
    }

    pub fn to_json(&self) -> RationalSeriesJson {
        RationalSeriesJson {
            num: self.numerator.coeff_values().to_vec(),
            den: self.denominator.coeff_values().to_vec(),
        }
    }
}
