//! The exceptional algebras of type `n` built from divided powers.
//!
//! For `q = p^c` and `0 < m < n`, the algebra is generated inside
//! `K[x; c] ⋊ gl(K[x; c])` by `z = (0, Z)` and `e_n = (x^(q+m-n), t x^(q-n) I)`.
//! Its sequence is read off by bracketing, and compared with the closed
//! forms and the rational generating function.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, Fp, PrimeField, XPoly};
use crate::divided_powers::{
    graded_degree, make_generators, DividedPowerElement, DpContext, DpError, Endo, SemidirectElement,
};
use crate::maxclass::{
    constituents, fromlinrecur_bridge, genfunc, jacobi_verify, subalgebra_transform, BetaSequence, ConstituentOutcome,
    JacobiViolation, RationalSeries, RationalSeriesJson, SeqError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExcError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("depth {depth} too small, need at least {min}")]
    DepthTooSmall { depth: usize, min: usize },
    #[error("[e_{i}, e_n] is not a multiple of e_{target} (coordinate {key:#x})", target = i + n)]
    NotProportional { i: usize, n: usize, key: u64 },
    #[error("e_{j} differs from its closed form")]
    ElementMismatch { j: usize },
    #[error("generating function needs m < n <= (q+m)/2, got m = {m}, n = {n}, q = {q}")]
    GenfuncHypothesis { m: usize, n: usize, q: usize },
    #[error("abelian ideal check needs n = m + 1, got m = {m}, n = {n}")]
    NotParent { m: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `0 < m < p`, `m < n <= q`.
    Construction,
    /// Additionally `1 < n < p` and `q > p`.
    Theorem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalParams {
    pub p: u64,
    pub c: u32,
    pub q: usize,
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
}

impl ExceptionalParams {
    pub fn construction(p: u64, c: u32, m: usize, n: usize) -> Result<Self, ExcError> {
        let field = PrimeField::new(p)?;
        let ctx = DpContext::new(&field, c)?;
        let q = ctx.q();
        if m == 0 || m as u64 >= p {
            return Err(ExcError::BadParams(format!("need 0 < m < p, got m = {m}")));
        }
        if n <= m || n > q {
            return Err(ExcError::BadParams(format!("need m < n <= q, got m = {m}, n = {n}, q = {q}")));
        }
        Ok(ExceptionalParams { p, c, q, m, n, mode: Mode::Construction })
    }

    pub fn theorem(p: u64, c: u32, m: usize, n: usize) -> Result<Self, ExcError> {
        let mut params = Self::construction(p, c, m, n)?;
        if c < 2 {
            return Err(ExcError::BadParams(format!("need q > p, got c = {c}")));
        }
        if n < 2 || n as u64 >= p {
            return Err(ExcError::BadParams(format!("need 1 < n < p, got n = {n}")));
        }
        params.mode = Mode::Theorem;
        Ok(params)
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    /// `3q + 2n`: the first constituent plus two full periods.
    pub fn default_depth(&self) -> usize {
        3 * self.q + 2 * self.n
    }

    pub fn genfunc_hypothesis(&self) -> bool {
        self.m < self.n && 2 * self.n <= self.q + self.m
    }

    /// The value the theorem predicts for the first constituent length.
    pub fn expected_ell(&self) -> usize {
        if self.m % 2 == 1 {
            self.q + self.m
        } else {
            self.q + self.m + 1
        }
    }
}

/// Closed form of `e_j`: `(x^(q+m-j), t x^(q-j) I)` for `m < j <= q+m`, and
/// `(t^r x^(q-j'), 0)` for `j = rq + m + j'` with `r > 0`, `0 < j' <= q`.
pub fn element_closed_form(ctx: &DpContext, m: usize, j: usize) -> SemidirectElement {
    let q = ctx.q();
    let field = ctx.field();
    assert!(j > m, "closed form needs j > m");
    if j <= q + m {
        let module = DividedPowerElement::basis(ctx, (q + m - j) as i64);
        let endo = if j <= q {
            let f = DividedPowerElement::monomial(ctx, ctx.t_pow(field.one(), 1), (q - j) as i64);
            Endo::multiplication(ctx, &f)
        } else {
            Endo::zero(ctx)
        };
        SemidirectElement::new(module, endo)
    } else {
        let r = (j - m - 1) / q;
        let jp = j - m - r * q;
        let module = DividedPowerElement::monomial(ctx, ctx.t_pow(field.one(), r), (q - jp) as i64);
        SemidirectElement::new(module, Endo::zero(ctx))
    }
}

/// The algebra built to depth `D`: elements `e_n..=e_{D+n}` and `β_{n+1..=D}`.
#[derive(Debug, Clone)]
pub struct ConstructedAlgebra {
    pub params: ExceptionalParams,
    pub depth: usize,
    ctx: DpContext,
    z: SemidirectElement,
    elements: Vec<SemidirectElement>,
    sequence: BetaSequence,
    graded: bool,
}

impl ConstructedAlgebra {
    pub fn ctx(&self) -> &DpContext {
        &self.ctx
    }

    pub fn z(&self) -> &SemidirectElement {
        &self.z
    }

    /// `e_j` for `n <= j <= D + n`.
    pub fn element(&self, j: usize) -> Option<&SemidirectElement> {
        j.checked_sub(self.params.n).and_then(|k| self.elements.get(k))
    }

    pub fn sequence(&self) -> &BetaSequence {
        &self.sequence
    }

    /// Every `e_j` is homogeneous of degree `j`, so `z` and `e_n` shift degrees by 1 and `n`.
    pub fn graded(&self) -> bool {
        self.graded
    }

    /// Scalar `c` with `[e_i, e_h] = c e_{i+h}`, when `i + h <= D + n`.
    pub fn bracket_scalar(&self, i: usize, h: usize) -> Result<Option<Fp>, ExcError> {
        let (Some(a), Some(b), Some(target)) = (self.element(i), self.element(h), self.element(i + h)) else {
            return Ok(None);
        };
        proportional(&a.bracket(b), target).map(Some).map_err(|key| ExcError::NotProportional { i, n: h, key })
    }
}

/// `c` with `v = c w`, or the first coordinate where no such `c` exists.
fn proportional(v: &SemidirectElement, w: &SemidirectElement) -> Result<Fp, u64> {
    let field = PrimeField::new(w.module.coeff(0).modulus()).expect("modulus of an existing element");
    let Some((key, lead)) = w.first_nonzero() else {
        return match v.first_nonzero() {
            None => Ok(field.zero()),
            Some((key, _)) => Err(key),
        };
    };
    let c = v.coordinate(key) / lead;
    let diff = v.sub(&w.scale(c));
    match diff.first_nonzero() {
        None => Ok(c),
        Some((bad, _)) => Err(bad),
    }
}

/// Builds `e_j = [e_{j-1}, z]` up to `D + n`, checks each against its
/// closed form and extracts `β_i` from `[e_i, e_n] = β_i e_{i+n}`.
pub fn construct(params: &ExceptionalParams, depth: usize) -> Result<ConstructedAlgebra, ExcError> {
    let field = params.field();
    let ctx = DpContext::new(&field, params.c)?;
    let (m, n) = (params.m, params.n);
    if depth <= n {
        return Err(ExcError::DepthTooSmall { depth, min: n + 1 });
    }
    let (z, e_n) = make_generators(&ctx, m, n)?;
    let mut elements = vec![e_n];
    for j in n + 1..=depth + n {
        let next = elements.last().expect("nonempty").bracket(&z);
        if next != element_closed_form(&ctx, m, j) {
            return Err(ExcError::ElementMismatch { j });
        }
        elements.push(next);
    }
    let graded = elements.iter().enumerate().all(|(k, e)| graded_degree(&e.module, m).ok() == Some((n + k) as u64));

    let e_n = &elements[0];
    let mut betas = Vec::with_capacity(depth - n);
    for i in n + 1..=depth {
        let br = elements[i - n].bracket(e_n);
        let beta = proportional(&br, &elements[i]).map_err(|key| ExcError::NotProportional { i, n, key })?;
        betas.push(beta);
    }
    let sequence = BetaSequence::new(&field, n, betas)?;
    Ok(ConstructedAlgebra { params: params.clone(), depth, ctx, z, elements, sequence, graded })
}

/// `β_{q+m-j}` for `0 <= j < n`:
/// `(-1)^j ((-1)^m C(n-1-m, j-m) - C(n-1, j))`.
pub fn first_constituent_closed_form(params: &ExceptionalParams) -> Vec<Fp> {
    let f = params.field();
    let (m, n) = (params.m as i64, params.n as i64);
    (0..n)
        .map(|j| f.sign(j as u64) * (f.sign(m as u64) * f.binom_signed(n - 1 - m, j - m) - f.binom_signed(n - 1, j)))
        .collect()
}

/// The period `β_{rq+m+1}, ..., β_{rq+q+m}` for `r >= 1`, as `(index, value)`:
/// zero for `β_{rq+m+j'}`, `0 < j' <= q-n`, and `β_{rq+q+m-j} = (-1)^{j+1} C(n-1, j)`.
pub fn later_constituents_closed_form(params: &ExceptionalParams, r: usize) -> Vec<(usize, Fp)> {
    assert!(r >= 1, "later periods start at r = 1");
    let f = params.field();
    let (q, m, n) = (params.q, params.m, params.n);
    (1..=q)
        .map(|jp| {
            let idx = r * q + m + jp;
            let j = q - jp;
            let v = if j < n { -(f.sign(j as u64) * f.binom((n - 1) as u64, j as u64)) } else { f.zero() };
            (idx, v)
        })
        .collect()
}

/// `β_{n+1..=D}` assembled from the two closed forms, zero on `n < i <= q+m-n`.
pub fn closed_form_sequence(params: &ExceptionalParams, depth: usize) -> Result<BetaSequence, ExcError> {
    let f = params.field();
    let (q, m, n) = (params.q, params.m, params.n);
    let first = first_constituent_closed_form(params);
    let mut betas = vec![f.zero(); depth.saturating_sub(n)];
    let mut put = |i: usize, v: Fp| {
        if i > n && i <= depth {
            betas[i - n - 1] = v;
        }
    };
    for (j, &v) in first.iter().enumerate() {
        if j <= q + m {
            put(q + m - j, v);
        }
    }
    let mut r = 1;
    while r * q + m < depth {
        for (i, v) in later_constituents_closed_form(params, r) {
            put(i, v);
        }
        r += 1;
    }
    Ok(BetaSequence::new(&f, n, betas)?)
}

/// `X^{q+m+1-n}(X-1)^{n-m-1} - X^{q+m+1-n}(X-1)^{n-1} / (1 - X^q)` as one fraction.
pub fn genfunc_closed_form(params: &ExceptionalParams) -> Result<RationalSeries, ExcError> {
    let (q, m, n) = (params.q, params.m, params.n);
    if !params.genfunc_hypothesis() {
        return Err(ExcError::GenfuncHypothesis { m, n, q });
    }
    let f = params.field();
    let x_minus_1 = XPoly::linear(f.one());
    let shift = q + m + 1 - n;
    let a = x_minus_1.pow((n - m - 1) as u64).shift(shift);
    let b = x_minus_1.pow((n - 1) as u64).shift(shift);
    let den = &XPoly::one(&f) - &XPoly::monomial(f.one(), q);
    let num = &(&a * &den) - &b;
    Ok(RationalSeries::new(num, den).expect("1 - X^q has constant term 1"))
}

/// Whether the series expansion of [`genfunc_closed_form`] equals `seq` through its depth.
pub fn genfunc_matches(series: &RationalSeries, seq: &BetaSequence) -> bool {
    let coeffs = series.expand(seq.depth());
    coeffs.iter().enumerate().all(|(i, &c)| if i <= seq.n() { c.is_zero() } else { seq.get(i) == Some(c) })
}

/// `C(q-n+j, j-m) ≡ (-1)^{j-m} C(n-1-m, j-m) (mod p)` for all `0 <= j < n`.
pub fn binomial_rewrite_holds(params: &ExceptionalParams) -> bool {
    let f = params.field();
    let (q, m, n) = (params.q as i64, params.m as i64, params.n as i64);
    (0..n).all(|j| {
        let lhs = f.binom_signed(q - n + j, j - m);
        let rhs = if j >= m { f.sign((j - m) as u64) * f.binom_signed(n - 1 - m, j - m) } else { f.zero() };
        lhs == rhs
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    /// Scalars `c_i` with `[e_i, e_{q+1}] = c_i e_{i+q+1}`, for `q+1 < i <= D-q-1`.
    pub eq1_action: Vec<(usize, u32)>,
    /// `X^m (X-1)^{q-m} + X^m`, low degree first.
    pub eq1_polynomial: Vec<u32>,
    pub eq1_matches: bool,
    pub eq1_kills_above_q: bool,
    pub eq_acts_as_minus_one: bool,
    pub abelian_above_q: bool,
}

impl IdealReport {
    pub fn passed(&self) -> bool {
        self.eq1_matches && self.eq1_kills_above_q && self.eq_acts_as_minus_one && self.abelian_above_q
    }
}

/// Direct bracket checks on the type-`(m+1)` algebra: the adjoint action of
/// `e_{q+1}` is the polynomial `X^m (X-1)^{q-m} + X^m`, so it kills every
/// `e_i` with `i > q`; `[e_i, e_q] = -e_{i+q}` for `i > q`; and
/// `[e_i, e_j] = 0` for `q < i, j <= D - q`.
pub fn abelian_ideal_check(alg: &ConstructedAlgebra) -> Result<IdealReport, ExcError> {
    let params = &alg.params;
    let (q, m, n) = (params.q, params.m, params.n);
    if n != m + 1 {
        return Err(ExcError::NotParent { m, n });
    }
    let f = params.field();
    let d = alg.depth;
    let poly = &XPoly::linear(f.one()).pow((q - m) as u64).shift(m) + &XPoly::monomial(f.one(), m);

    let mut eq1_action = Vec::new();
    let mut eq1_matches = true;
    let mut eq1_kills = true;
    for i in q + 2..=d.saturating_sub(q + 1) {
        let c = alg.bracket_scalar(i, q + 1)?.expect("within construction depth");
        eq1_action.push((i, c.value()));
        eq1_matches &= c == poly.coeff(i as i64);
        eq1_kills &= c.is_zero();
    }
    let mut eq_minus_one = true;
    for i in q + 1..=d.saturating_sub(q) {
        let c = alg.bracket_scalar(i, q)?.expect("within construction depth");
        eq_minus_one &= c == f.elem(-1);
    }
    let mut abelian = true;
    for i in q + 1..=d.saturating_sub(q) {
        for j in i + 1..=d.saturating_sub(q) {
            let (a, b) = (alg.element(i).expect("in range"), alg.element(j).expect("in range"));
            abelian &= a.bracket(b).is_zero();
        }
    }
    Ok(IdealReport {
        eq1_action,
        eq1_polynomial: poly.coeff_values().to_vec(),
        eq1_matches,
        eq1_kills_above_q: eq1_kills,
        eq_acts_as_minus_one: eq_minus_one,
        abelian_above_q: abelian,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub two_path: bool,
    pub genfunc: Option<bool>,
    pub jacobi: bool,
    pub ideal: bool,
    pub graded: bool,
    pub binomial_rewrite: bool,
    pub bridge: Option<bool>,
    /// The `n = m+1` series, transformed `n-m-1` times, equals this sequence.
    pub parent_transform: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    pub params: ExceptionalParams,
    pub depth: usize,
    pub ell: Option<usize>,
    pub expected_ell: usize,
    pub constituent_lengths: Vec<usize>,
    pub later_ordinary: bool,
    pub later_end_in_minus_one: bool,
    pub genfunc: Option<RationalSeriesJson>,
    pub checks: Checks,
    pub jacobi_violation: Option<JacobiViolation>,
    pub betas: Vec<u32>,
    pub failures: Vec<Failure>,
}

impl ExceptionalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn fail(failures: &mut Vec<Failure>, check: &str, witness: String) {
    failures.push(Failure { check: check.into(), witness });
}

/// Constructs the algebra and checks every claim about it at depth `D`.
///
/// Failed claims are collected in `failures`, each with the first index or
/// coordinate that breaks it; errors are reserved for invalid input and for
/// brackets that are not proportional.
pub fn theorem_exceptional_report(params: &ExceptionalParams, depth: usize) -> Result<ExceptionalReport, ExcError> {
    let (q, m, n) = (params.q, params.m, params.n);
    let alg = construct(params, depth)?;
    let seq = alg.sequence();
    let f = params.field();
    let mut failures = Vec::new();

    let closed = closed_form_sequence(params, depth)?;
    let two_path = &closed == seq;
    if !two_path {
        let i = (n + 1..=depth).find(|&i| closed.get(i) != seq.get(i)).expect("sequences differ");
        fail(
            &mut failures,
            "two_path",
            format!("beta_{i}: constructed {:?}, closed form {:?}", seq.get(i), closed.get(i)),
        );
    }

    let (genfunc_json, genfunc_ok) = match genfunc_closed_form(params) {
        Ok(series) => {
            let ok = genfunc_matches(&series, seq);
            if !ok {
                let coeffs = series.expand(depth);
                let i = (n + 1..=depth).find(|&i| seq.get(i) != Some(coeffs[i])).unwrap_or(0);
                fail(&mut failures, "genfunc", format!("coefficient of X^{i}"));
            }
            (Some(series.to_json()), Some(ok))
        }
        Err(_) => (None, None),
    };

    let parent_transform = if params.genfunc_hypothesis() && n > m + 1 {
        let parent = ExceptionalParams { n: m + 1, mode: Mode::Construction, ..params.clone() };
        let base = construct(&parent, depth + (n - m - 1))?;
        let mut s = genfunc(base.sequence());
        for k in m + 1..n {
            s = subalgebra_transform(&s, k);
        }
        let ok = s.to_sequence(&f, n)?.truncated(depth) == *seq;
        if !ok {
            fail(&mut failures, "parent_transform", format!("type {} series transformed to type {n}", m + 1));
        }
        Some(ok)
    } else {
        None
    };

    let jac = jacobi_verify(seq, depth + n)?;
    if let Some(v) = &jac.violation {
        fail(&mut failures, "jacobi", format!("{v:?}"));
    }

    if !alg.graded() {
        fail(&mut failures, "graded", "some e_j not homogeneous of degree j".into());
    }
    let rewrite = binomial_rewrite_holds(params);
    if !rewrite {
        fail(&mut failures, "binomial_rewrite", format!("q = {q}, m = {m}, n = {n}"));
    }

    let ideal = if n == m + 1 {
        abelian_ideal_check(&alg)?.passed()
    } else {
        let parent = ExceptionalParams { n: m + 1, mode: Mode::Construction, ..params.clone() };
        abelian_ideal_check(&construct(&parent, depth)?)?.passed()
    };
    if !ideal {
        fail(&mut failures, "ideal", format!("type {} parent", m + 1));
    }

    let outcome = constituents(seq);
    let (ell, lengths, later_ordinary, later_minus_one, bridge) = match &outcome {
        ConstituentOutcome::MetabelianWithinDepth { .. } => (None, Vec::new(), false, false, None),
        ConstituentOutcome::Constituents(rep) => {
            let ordinary = rep.later().iter().all(|c| c.ordinary);
            let minus_one = rep.later().iter().all(|c| c.last() == f.elem(-1));
            let bridge = fromlinrecur_bridge(rep, seq).map(|b| b.holds);
            (Some(rep.ell), rep.lengths(), ordinary, minus_one, bridge)
        }
    };
    if bridge == Some(false) {
        fail(&mut failures, "bridge", "linear recurrence does not vanish on its window".into());
    }

    if params.mode == Mode::Theorem {
        let expected = params.expected_ell();
        if ell != Some(expected) {
            fail(&mut failures, "ell", format!("got {ell:?}, expected {expected}"));
        }
        for (k, &len) in lengths.iter().enumerate().skip(1) {
            let want = if k == 1 && m % 2 == 0 { q - 1 } else { q };
            if len != want {
                fail(
                    &mut failures,
                    "later_lengths",
                    format!("constituent {} has length {len}, expected {want}", k + 1),
                );
                break;
            }
        }
        if lengths.len() < 3 {
            fail(
                &mut failures,
                "later_lengths",
                format!("only {} complete constituents within depth {depth}", lengths.len()),
            );
        }
        if !later_ordinary {
            fail(&mut failures, "later_ordinary", "a later constituent is not ordinary".into());
        }
        if !later_minus_one {
            fail(&mut failures, "later_end", "a later constituent does not end in -1".into());
        }
    }

    Ok(ExceptionalReport {
        params: params.clone(),
        depth,
        ell,
        expected_ell: params.expected_ell(),
        constituent_lengths: lengths,
        later_ordinary,
        later_end_in_minus_one: later_minus_one,
        genfunc: genfunc_json,
        checks: Checks {
            two_path,
            genfunc: genfunc_ok,
            jacobi: jac.passed(),
            ideal,
            graded: alg.graded(),
            binomial_rewrite: rewrite,
            bridge,
            parent_transform,
        },
        jacobi_violation: jac.violation,
        betas: seq.entries().iter().map(|b| b.value()).collect(),
        failures,
    })
}

/// First lengths over `0 < m < n`, and whether they cover every even value in `(q, q+n]`.
pub fn ell_coverage(p: u64, c: u32, n: usize) -> Result<(Vec<usize>, bool), ExcError> {
    let mut ells = Vec::new();
    let mut q = 0;
    for m in 1..n {
        let params = ExceptionalParams::theorem(p, c, m, n)?;
        q = params.q;
        let alg = construct(&params, params.q + n + m + 2)?;
        if let Some(ell) = constituents(alg.sequence()).ell() {
            ells.push(ell);
        }
    }
    let covered = (q + 1..=q + n).filter(|v| v % 2 == 0).all(|v| ells.contains(&v));
    Ok((ells, covered))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, c: u32, m: usize, n: usize) -> ExceptionalParams {
        ExceptionalParams::theorem(p, c, m, n).unwrap()
    }

    #[test]
    fn parameter_ranges() {
        assert!(ExceptionalParams::construction(5, 2, 2, 2).is_err());
        assert!(ExceptionalParams::construction(5, 2, 5, 7).is_err());
        assert!(ExceptionalParams::construction(5, 2, 1, 26).is_err());
        assert!(ExceptionalParams::construction(5, 2, 1, 25).is_ok());
        assert!(ExceptionalParams::theorem(5, 1, 1, 2).is_err());
        assert!(ExceptionalParams::theorem(5, 2, 1, 5).is_err());
        assert!(ExceptionalParams::construction(4, 2, 1, 2).is_err());
    }

    #[test]
    fn named_elements() {
        let p = params(5, 2, 1, 2);
        let alg = construct(&p, 40).unwrap();
        let ctx = alg.ctx();
        let one = SemidirectElement::new(DividedPowerElement::basis(ctx, 0), Endo::zero(ctx));
        assert_eq!(alg.element(26), Some(&one));
        let t_top = DividedPowerElement::monomial(ctx, ctx.t_pow(ctx.field().one(), 1), 24);
        assert_eq!(alg.element(27), Some(&SemidirectElement::new(t_top, Endo::zero(ctx))));
    }

    #[test]
    fn zero_stretch_before_first_constituent() {
        let p = params(7, 2, 2, 4);
        let alg = construct(&p, 60).unwrap();
        for j in 5..=(49 - 4 + 2) {
            assert!(alg.sequence().beta(j).unwrap().is_zero(), "beta_{j}");
        }
    }

    #[test]
    fn first_constituent_tail_values() {
        let f = PrimeField::new(7).unwrap();
        let odd = first_constituent_closed_form(&params(7, 2, 3, 5));
        assert_eq!(odd[4], f.elem(-2));
        let even = first_constituent_closed_form(&params(7, 2, 2, 5));
        assert!(even[4].is_zero());
        assert_eq!(even[3], f.elem(2));
    }

    #[test]
    fn closed_forms_match_construction() {
        for (m, n) in [(1, 2), (2, 4), (3, 4)] {
            let p = params(5, 2, m, n);
            let alg = construct(&p, 3 * 25 + 2 * n).unwrap();
            assert_eq!(&closed_form_sequence(&p, alg.depth).unwrap(), alg.sequence());
            assert!(genfunc_matches(&genfunc_closed_form(&p).unwrap(), alg.sequence()));
        }
    }

    #[test]
    fn series_of_parent() {
        // (1 - X^q) X^q - X^q (X - 1)^m over 1 - X^q.
        let p = params(5, 2, 1, 2);
        let f = p.field();
        let g = genfunc_closed_form(&p).unwrap();
        let xq = XPoly::monomial(f.one(), 25);
        let num = &(&xq * &(&XPoly::one(&f) - &xq)) - &(&xq * &XPoly::linear(f.one()));
        assert_eq!(g.numerator, num);
    }

    #[test]
    fn genfunc_refuses_outside_hypothesis() {
        let p = ExceptionalParams::construction(3, 2, 1, 6).unwrap();
        assert!(matches!(genfunc_closed_form(&p), Err(ExcError::GenfuncHypothesis { .. })));
    }

    #[test]
    fn report_for_small_tuples() {
        for (m, ell, second) in [(1, 26, 25), (2, 28, 24), (3, 28, 25)] {
            let p = params(5, 2, m, 4);
            let r = theorem_exceptional_report(&p, p.default_depth()).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert_eq!(r.ell, Some(ell));
            assert_eq!(r.constituent_lengths[1], second);
        }
    }

    #[test]
    fn ideal_of_parent() {
        let p = params(5, 2, 2, 3);
        let alg = construct(&p, 80).unwrap();
        let rep = abelian_ideal_check(&alg).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(alg.bracket_scalar(27, 25).unwrap(), Some(p.field().elem(-1)));
        assert_eq!(alg.bracket_scalar(27, 26).unwrap(), Some(p.field().zero()));
    }

    #[test]
    fn ell_covers_even_values() {
        let (ells, covered) = ell_coverage(5, 2, 4).unwrap();
        assert_eq!(ells, vec![26, 28, 28]);
        assert!(covered);
    }
}
