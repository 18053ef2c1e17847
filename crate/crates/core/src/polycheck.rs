//! Coefficient-vanishing conditions on `(X-1)^k g(X)` and brute-force
//! classification of the exponents `k` that admit a monic `g`.
//!
//! The window used throughout is `ceil((k+n)/2) <= j < k`. When `k+n` is odd,
//! which is the case for sequences coming from an algebra, the ceiling and
//! the real-valued bound `(k+n)/2 <= j` select the same integers.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, Fp, PrimeField, XPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("need 1 < n < p, got n = {n}, p = {p}")]
    BadType { n: u64, p: u64 },
    #[error("need k > n + 1, got k = {k}, n = {n}")]
    BadExponent { k: u64, n: u64 },
    #[error("g must be monic of degree {expected}, got {got}")]
    NotMonic { expected: u64, got: String },
    #[error("enumeration cost {cost} exceeds budget {budget}")]
    BudgetExceeded { cost: u64, budget: u64 },
    #[error("malformed fixture line {line}: {reason}")]
    Fixture { line: usize, reason: String },
}

/// `[x^j] f(x)`; zero outside the support.
pub fn coeff(f: &XPoly, j: i64) -> Fp {
    f.coeff(j)
}

/// `(X-1)^k`, by repeated squaring.
pub fn x_minus_one_pow(field: &PrimeField, k: u64) -> XPoly {
    XPoly::linear(field.one()).pow(k)
}

/// The hypothesis window `ceil((k+n)/2) <= j < k` for given `(p, n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeCondition {
    pub p: u64,
    pub n: u64,
    pub k: u64,
    pub j_lo: u64,
    pub j_hi: u64,
}

impl RangeCondition {
    pub fn new(field: &PrimeField, n: u64, k: u64) -> Result<Self, PolyError> {
        check_type(field, n)?;
        if k <= n + 1 {
            return Err(PolyError::BadExponent { k, n });
        }
        Ok(RangeCondition { p: field.p(), n, k, j_lo: (k + n).div_ceil(2), j_hi: k })
    }

    pub fn window(&self) -> std::ops::Range<u64> {
        self.j_lo..self.j_hi
    }
}

fn check_type(field: &PrimeField, n: u64) -> Result<(), PolyError> {
    if n <= 1 || n >= field.p() {
        return Err(PolyError::BadType { n, p: field.p() });
    }
    Ok(())
}

/// Whether `[x^j](x-1)^k g(x) = 0` on the whole window of `cond`.
pub fn range_condition_holds(field: &PrimeField, g: &XPoly, cond: &RangeCondition) -> Result<bool, PolyError> {
    if g.degree() != Some(cond.n as usize - 1) || !g.is_monic() {
        return Err(PolyError::NotMonic { expected: cond.n - 1, got: g.to_string() });
    }
    let row = BinomialRow::new(field, cond);
    Ok(row.vanishes_on_window(g.coeff_values()))
}

/// Coefficients of `(x-1)^k` needed to evaluate the window for every `g`
/// of degree `< n`.
struct BinomialRow {
    p: u32,
    lo: u64,
    hi: u64,
    base: u64,
    values: Vec<u32>,
}

impl BinomialRow {
    fn new(field: &PrimeField, cond: &RangeCondition) -> Self {
        let base = cond.j_lo.saturating_sub(cond.n - 1);
        let values = (base..cond.j_hi).map(|i| (field.sign(cond.k - i) * field.binom(cond.k, i)).value()).collect();
        BinomialRow { p: field.p() as u32, lo: cond.j_lo, hi: cond.j_hi, base, values }
    }

    fn vanishes_on_window(&self, g: &[u32]) -> bool {
        let p = self.p as u64;
        (self.lo..self.hi).all(|j| {
            let mut acc = 0u64;
            for (d, &gd) in g.iter().enumerate() {
                if gd == 0 || (d as u64) > j {
                    continue;
                }
                let i = j - d as u64;
                if i < self.base {
                    continue;
                }
                acc += gd as u64 * self.values[(i - self.base) as usize] as u64;
            }
            acc.is_multiple_of(p)
        })
    }
}

/// One admissible exponent and every monic `g` satisfying the window there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleK {
    pub k: u64,
    pub polys: Vec<XPoly>,
}

/// Which assertion a survivor broke.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Assertion {
    /// `k` lies outside the allowed menu of exponents.
    ExponentMenu,
    /// `k = 2q-n+1` but `g != (x-1)^(n-1)`.
    FullPower,
    /// `k = q-p+k0`, `p-n < k0 < p`, but `(x-1)^(p-k0)` does not divide `g`.
    OneMultiplicity,
    /// `k = q+k0`, `0 < k0 < n`, but `x^k0` does not divide `g`.
    ZeroMultiplicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub k: u64,
    pub assertion: Assertion,
    pub g: Vec<u32>,
}

/// A small-exponent interval from the `k < 4p` menu, with whether any
/// `g` was actually found in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallInterval {
    /// Open interval `(lo, hi)`; a single admissible value is `(v-1, v+1)`.
    pub lo: u64,
    pub hi: u64,
    pub realized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub p: u64,
    pub n: u64,
    pub k_max: u64,
    /// One entry per `n+1 < k <= k_max`, in increasing `k`, possibly empty.
    pub entries: Vec<AdmissibleK>,
    pub small_intervals: Vec<SmallInterval>,
    /// Broken assertions: the menu for `k >= 4p`, and the shape of `g`.
    pub violations: Vec<Violation>,
    /// Admissible `k < 4p` outside both the large-`q` menu and the small intervals.
    pub small_k_outside_menu: Vec<SmallKException>,
}

/// An admissible `k < 4p` that the small-exponent intervals do not list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallKException {
    pub k: u64,
    /// `p-n < k < p+n`, the large-`q` pattern with `q = p`.
    pub near_p: bool,
}

impl Classification {
    pub fn admissible(&self) -> impl Iterator<Item = &AdmissibleK> {
        self.entries.iter().filter(|e| !e.polys.is_empty())
    }

    pub fn admissible_ks(&self) -> Vec<u64> {
        self.admissible().map(|e| e.k).collect()
    }

    pub fn polys_at(&self, k: u64) -> &[XPoly] {
        self.entries.iter().find(|e| e.k == k).map(|e| e.polys.as_slice()).unwrap_or(&[])
    }

    /// No violation for `k >= 4p` or of the shape of `g`.
    pub fn verified(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every admissible `k < 4p` is in one of the small intervals.
    pub fn small_menu_holds(&self) -> bool {
        self.small_k_outside_menu.is_empty()
    }

    /// Regression-fixture rendering: one line `(p, n, k): [g1, g2, ...]` per
    /// admissible `k`, each `g` a coefficient vector low degree first.
    pub fn fixture_text(&self) -> String {
        let mut out = String::new();
        for e in self.admissible() {
            let gs: Vec<String> = e.polys.iter().map(|g| coeff_vector(g, self.n as usize)).collect();
            let _ = writeln!(out, "({}, {}, {}): [{}]", self.p, self.n, e.k, gs.join(", "));
        }
        out
    }
}

fn coeff_vector(g: &XPoly, len: usize) -> String {
    let parts: Vec<String> = (0..len).map(|i| g.coeff(i as i64).value().to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parsed fixture line: `((p, n, k), [g coefficient vectors])`.
pub type FixtureEntry = ((u64, u64, u64), Vec<Vec<u32>>);

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureEntry>, PolyError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: &str| PolyError::Fixture { line: idx + 1, reason: reason.to_string() };
        let (head, tail) = line.split_once("):").ok_or_else(|| err("missing `):`"))?;
        let head = head.trim().strip_prefix('(').ok_or_else(|| err("missing `(`"))?;
        let nums: Vec<u64> = head
            .split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| err("bad (p, n, k)"))?;
        if nums.len() != 3 {
            return Err(err("expected three header fields"));
        }
        let body = tail.trim();
        let body =
            body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(|| err("expected bracketed list"))?;
        let mut gs = Vec::new();
        for chunk in body.split(']') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let chunk = chunk.strip_prefix('[').ok_or_else(|| err("expected `[` before coefficients"))?;
            let coeffs = chunk
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err("bad coefficient"))?;
            gs.push(coeffs);
        }
        out.push(((nums[0], nums[1], nums[2]), gs));
    }
    Ok(out)
}

/// Exact cost of [`classify_admissible_k`]: candidates times exponents.
pub fn classification_cost(p: u64, n: u64, k_max: u64) -> u64 {
    let candidates = p.saturating_pow(n.saturating_sub(1) as u32);
    candidates.saturating_mul(k_max.saturating_sub(n + 1))
}

/// Enumerates, for each `n+1 < k <= k_max`, every monic `g` of degree `n-1`
/// passing the window condition, then checks the exponent menu and the
/// divisibility assertions on all survivors.
///
/// Candidates are visited in lexicographic order of `(g_0, ..., g_{n-2})`.
/// `budget` caps `p^(n-1) * (k_max - n - 1)`.
pub fn classify_admissible_k(field: &PrimeField, n: u64, k_max: u64, budget: u64) -> Result<Classification, PolyError> {
    check_type(field, n)?;
    let p = field.p();
    let cost = classification_cost(p, n, k_max);
    if cost > budget {
        return Err(PolyError::BudgetExceeded { cost, budget });
    }
    let candidates = p.pow(n as u32 - 1);
    let entries: Vec<AdmissibleK> = ((n + 2)..=k_max)
        .into_par_iter()
        .map(|k| {
            let cond = RangeCondition::new(field, n, k).expect("k > n+1 by range");
            let row = BinomialRow::new(field, &cond);
            let mut coeffs = vec![0u32; n as usize];
            coeffs[n as usize - 1] = 1;
            let mut polys = Vec::new();
            for idx in 0..candidates {
                let mut rest = idx;
                for d in (0..n as usize - 1).rev() {
                    coeffs[d] = (rest % p) as u32;
                    rest /= p;
                }
                if row.vanishes_on_window(&coeffs) {
                    polys.push(XPoly::from_raw(p as u32, coeffs.clone()));
                }
            }
            AdmissibleK { k, polys }
        })
        .collect();

    let mut violations = Vec::new();
    let mut small_k_outside_menu = Vec::new();
    for e in entries.iter().filter(|e| !e.polys.is_empty()) {
        if !exponent_in_menu(p, n, e.k) {
            if e.k >= 4 * p {
                violations.push(Violation { k: e.k, assertion: Assertion::ExponentMenu, g: Vec::new() });
            } else {
                small_k_outside_menu.push(SmallKException { k: e.k, near_p: e.k + n > p && e.k < p + n });
            }
        }
        for g in &e.polys {
            for assertion in survivor_assertions(field, n, e.k, g) {
                violations.push(Violation { k: e.k, assertion, g: g.coeff_values().to_vec() });
            }
        }
    }

    let small_intervals = small_k_intervals(p, n)
        .into_iter()
        .map(|(lo, hi)| {
            let realized = entries.iter().any(|e| e.k > lo && e.k < hi && !e.polys.is_empty());
            SmallInterval { lo, hi, realized }
        })
        .collect();

    Ok(Classification { p, n, k_max, entries, small_intervals, violations, small_k_outside_menu })
}

/// Open intervals listed for `k < 4p`: `(n+1, p)`, `(2p-n, 2p)`, `(3p-n, 3p)`
/// and the single value `4p-n+1`.
pub fn small_k_intervals(p: u64, n: u64) -> Vec<(u64, u64)> {
    vec![(n + 1, p), (2 * p - n, 2 * p), (3 * p - n, 3 * p), (4 * p - n, 4 * p - n + 2)]
}

/// Powers `q > p` of `p` relevant to exponents up to `k`.
fn large_powers(p: u64, k: u64) -> impl Iterator<Item = u64> {
    let mut q = p;
    std::iter::from_fn(move || {
        q = q.checked_mul(p)?;
        Some(q)
    })
    .take_while(move |&q| q <= 2 * k + 2 * p)
}

/// `k = 2q-n+1` or `q-n < k < q+n` for a power `q > p`; below `4p` the
/// small-exponent intervals are also accepted.
pub fn exponent_in_menu(p: u64, n: u64, k: u64) -> bool {
    let large = large_powers(p, k).any(|q| k + n == 2 * q + 1 || (k + n > q && k < q + n));
    if large {
        return true;
    }
    k < 4 * p && small_k_intervals(p, n).into_iter().any(|(lo, hi)| k > lo && k < hi)
}

fn survivor_assertions(field: &PrimeField, n: u64, k: u64, g: &XPoly) -> Vec<Assertion> {
    let p = field.p();
    let mut failed = Vec::new();
    for q in large_powers(p, k) {
        if k + n == 2 * q + 1 && *g != XPoly::linear(field.one()).pow(n - 1) {
            failed.push(Assertion::FullPower);
        }
        if k + p > q && k + p - q > p - n && k + p - q < p {
            let k0 = k + p - q;
            if g.root_multiplicity(field.one()).unwrap_or(0) < (p - k0) as usize {
                failed.push(Assertion::OneMultiplicity);
            }
        }
        if k > q && k - q < n {
            let k0 = (k - q) as i64;
            if (0..k0).any(|j| !g.coeff(j).is_zero()) {
                failed.push(Assertion::ZeroMultiplicity);
            }
        }
    }
    failed
}

/// Output of [`lemma_pairs_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaPairs {
    pub p: u64,
    pub k_max: u64,
    /// Pairs `(k, a)` with `[x^j](x-1)^k(x-a) = 0` for `k/2+1 <= j <= k`.
    pub pairs: Vec<(u64, Fp)>,
    /// Same, under the window `(k+1)/2 <= j <= k`.
    pub strengthened: Vec<(u64, Fp)>,
    /// Pairs outside `{(2,-2), (3,-3), (q-1,1), (q,0), (2q-1,1)}`.
    pub unexpected: Vec<(u64, Fp)>,
    /// Strengthened pairs outside `{(2,-2), (q-1,1), (q,0)}`.
    pub unexpected_strengthened: Vec<(u64, Fp)>,
}

impl LemmaPairs {
    pub fn verified(&self) -> bool {
        self.unexpected.is_empty() && self.unexpected_strengthened.is_empty()
    }
}

fn linear_window_vanishes(field: &PrimeField, k: u64, a: Fp, j_lo: u64) -> bool {
    (j_lo..=k).all(|j| {
        let from_x = if j >= 1 { field.sign(k + 1 - j) * field.binom(k, j - 1) } else { field.zero() };
        let from_a = field.sign(k - j) * field.binom(k, j) * a;
        (from_x - from_a).is_zero()
    })
}

fn pair_allowed(field: &PrimeField, k: u64, a: Fp, strengthened: bool) -> bool {
    let one = field.one();
    if k == 2 && a == field.elem(-2) {
        return true;
    }
    if !strengthened && k == 3 && a == field.elem(-3) {
        return true;
    }
    field
        .powers_up_to(k + 1)
        .into_iter()
        .any(|q| (k + 1 == q && a == one) || (k == q && a.is_zero()) || (!strengthened && k + 1 == 2 * q && a == one))
}

/// Enumerates every `1 < k <= k_max`, `a in F_p` satisfying the linear-factor
/// window, in increasing `(k, a)`.
pub fn lemma_pairs_check(field: &PrimeField, k_max: u64) -> LemmaPairs {
    let mut pairs = Vec::new();
    let mut strengthened = Vec::new();
    for k in 2..=k_max {
        for av in 0..field.p() {
            let a = field.elem(av as i64);
            // k/2 + 1 <= j and (k+1)/2 <= j over the rationals.
            if linear_window_vanishes(field, k, a, k.div_ceil(2) + 1) {
                pairs.push((k, a));
            }
            if linear_window_vanishes(field, k, a, (k + 1).div_ceil(2)) {
                strengthened.push((k, a));
            }
        }
    }
    let unexpected = pairs.iter().copied().filter(|&(k, a)| !pair_allowed(field, k, a, false)).collect();
    let unexpected_strengthened =
        strengthened.iter().copied().filter(|&(k, a)| !pair_allowed(field, k, a, true)).collect();
    LemmaPairs { p: field.p(), k_max, pairs, strengthened, unexpected, unexpected_strengthened }
}
