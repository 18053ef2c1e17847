//! Truncated divided powers `K[x; c]` with `F_p[t]` coefficients, their
//! endomorphisms, and the semidirect sum `K[x; c] ⋊ gl(K[x; c])`.
//!
//! Basis monomials `x^(i)`, `0 <= i < q = p^c`, multiply as
//! `x^(i) x^(j) = C(i+j, i) x^(i+j)`; exponents outside `[0, q)` are zero.
//! An [`Endo`] is a dense `q × q` matrix whose column `j` is the image of
//! `x^(j)`, acting on the left.

use std::fmt;

use thiserror::Error;

use crate::arith::{ArithError, Fp, PrimeField, SparseVec, TPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("exponent {exp} out of range [0, {q})")]
    ExponentOutOfRange { exp: usize, q: usize },
    #[error("need 0 < m < n <= q, got m = {m}, n = {n}, q = {q}")]
    BadParameters { m: usize, n: usize, q: usize },
    #[error("c must be at least 1")]
    BadExponentC,
    #[error("q = p^c is too large for dense storage: {0}")]
    TooLarge(u64),
    #[error("element is not a single monomial t^r x^(i)")]
    NotMonomial,
}

/// Dense matrices are `q^2` polynomials; beyond this `q` they stop being desk scale.
pub const MAX_Q: u64 = 2187;

/// Shared `(p, q)` context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpContext {
    field: PrimeField,
    c: u32,
    q: usize,
}

impl DpContext {
    pub fn new(field: &PrimeField, c: u32) -> Result<Self, DpError> {
        if c == 0 {
            return Err(DpError::BadExponentC);
        }
        let q =
            field.p().checked_pow(c).filter(|&q| q <= MAX_Q).ok_or(DpError::TooLarge(field.p().saturating_pow(c)))?;
        Ok(DpContext { field: field.clone(), c, q: q as usize })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn q(&self) -> usize {
        self.q
    }

    fn tzero(&self) -> TPoly {
        TPoly::zero(&self.field)
    }

    /// `t^r` scaled by `c`.
    pub fn t_pow(&self, c: Fp, r: usize) -> TPoly {
        TPoly::monomial(c, r)
    }
}

/// Product of two basis monomials, `None` meaning zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpProduct {
    pub coeff: Fp,
    pub exponent: usize,
}

/// `x^(i) x^(j)`. When `i + j >= q` the binomial `C(i+j, i)` is itself zero
/// mod `p`; that is asserted before the product is read as zero.
pub fn dp_mul(ctx: &DpContext, i: usize, j: usize) -> Result<Option<DpProduct>, DpError> {
    for exp in [i, j] {
        if exp >= ctx.q {
            return Err(DpError::ExponentOutOfRange { exp, q: ctx.q });
        }
    }
    let coeff = ctx.field.binom((i + j) as u64, i as u64);
    if i + j >= ctx.q {
        assert!(coeff.is_zero(), "C({}, {i}) must vanish mod {}", i + j, ctx.field.p());
        return Ok(None);
    }
    Ok((!coeff.is_zero()).then_some(DpProduct { coeff, exponent: i + j }))
}

/// Element of `K[x; c]`: entry `i` is the coefficient of `x^(i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct DividedPowerElement {
    coeffs: Vec<TPoly>,
}

impl DividedPowerElement {
    pub fn zero(ctx: &DpContext) -> Self {
        DividedPowerElement { coeffs: vec![ctx.tzero(); ctx.q] }
    }

    /// `coeff · x^(i)`; a negative or too large `i` gives zero.
    pub fn monomial(ctx: &DpContext, coeff: TPoly, i: i64) -> Self {
        let mut el = Self::zero(ctx);
        if (0..ctx.q as i64).contains(&i) {
            el.coeffs[i as usize] = coeff;
        }
        el
    }

    /// `x^(i)` with unit coefficient.
    pub fn basis(ctx: &DpContext, i: i64) -> Self {
        Self::monomial(ctx, TPoly::one(&ctx.field), i)
    }

    pub fn q(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &TPoly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        DividedPowerElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        DividedPowerElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Fp) -> Self {
        DividedPowerElement { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Ring product in `K[x; c]`.
    pub fn mul(&self, other: &Self, ctx: &DpContext) -> Self {
        self.check(other);
        let mut out = Self::zero(ctx);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if let Some(prod) = dp_mul(ctx, i, j).expect("indices in range") {
                    let term = (a * b).scale(prod.coeff);
                    out.coeffs[prod.exponent] = &out.coeffs[prod.exponent] + &term;
                }
            }
        }
        out
    }

    /// The only nonzero term `(i, coefficient)` if there is exactly one.
    pub fn single_term(&self) -> Option<(usize, &TPoly)> {
        let mut it = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q(), other.q(), "divided-power context mismatch");
    }
}

impl fmt::Debug for DividedPowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})x^({i})"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Endomorphism of `K[x; c]` as a dense matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Endo {
    q: usize,
    entries: Vec<TPoly>,
}

impl Endo {
    pub fn zero(ctx: &DpContext) -> Self {
        Endo { q: ctx.q, entries: vec![ctx.tzero(); ctx.q * ctx.q] }
    }

    pub fn identity(ctx: &DpContext) -> Self {
        let mut e = Self::zero(ctx);
        for i in 0..ctx.q {
            e.entries[i * ctx.q + i] = TPoly::one(&ctx.field);
        }
        e
    }

    /// The standard derivation `∂ x^(i) = x^(i-1)`, `∂ 1 = 0`.
    pub fn derivation(ctx: &DpContext) -> Self {
        let mut e = Self::zero(ctx);
        for j in 1..ctx.q {
            e.entries[(j - 1) * ctx.q + j] = TPoly::one(&ctx.field);
        }
        e
    }

    /// Multiplication operator `u ↦ f u`, written `f I`.
    pub fn multiplication(ctx: &DpContext, f: &DividedPowerElement) -> Self {
        let mut e = Self::zero(ctx);
        for j in 0..ctx.q {
            let image = f.mul(&DividedPowerElement::basis(ctx, j as i64), ctx);
            for i in 0..ctx.q {
                e.entries[i * ctx.q + j] = image.coeffs[i].clone();
            }
        }
        e
    }

    /// `coeff` times the matrix unit sending `x^(col)` to `x^(row)`.
    pub fn unit(ctx: &DpContext, row: usize, col: usize, coeff: TPoly) -> Result<Self, DpError> {
        for exp in [row, col] {
            if exp >= ctx.q {
                return Err(DpError::ExponentOutOfRange { exp, q: ctx.q });
            }
        }
        let mut e = Self::zero(ctx);
        e.entries[row * ctx.q + col] = coeff;
        Ok(e)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Coefficient of `x^(row)` in the image of `x^(col)`.
    pub fn entry(&self, row: usize, col: usize) -> &TPoly {
        &self.entries[row * self.q + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TPoly::is_zero)
    }

    pub fn apply(&self, v: &DividedPowerElement) -> DividedPowerElement {
        assert_eq!(self.q, v.q(), "divided-power context mismatch");
        let mut out: Vec<TPoly> = Vec::with_capacity(self.q);
        for i in 0..self.q {
            let mut acc = v.coeffs[0].zero_like();
            for (j, vj) in v.coeffs.iter().enumerate() {
                let a = &self.entries[i * self.q + j];
                if !a.is_zero() && !vj.is_zero() {
                    acc = &acc + &(a * vj);
                }
            }
            out.push(acc);
        }
        DividedPowerElement { coeffs: out }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Endo {
        self.check(other);
        let q = self.q;
        let mut entries: Vec<TPoly> = self.entries.iter().map(TPoly::zero_like).collect();
        for i in 0..q {
            for k in 0..q {
                let a = &self.entries[i * q + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..q {
                    let b = &other.entries[k * q + j];
                    if !b.is_zero() {
                        entries[i * q + j] = &entries[i * q + j] + &(a * b);
                    }
                }
            }
        }
        Endo { q, entries }
    }

    /// Commutator `[A, B] = AB - BA`.
    pub fn bracket(&self, other: &Endo) -> Endo {
        if self.is_zero() || other.is_zero() {
            return Endo { q: self.q, entries: self.entries.iter().map(TPoly::zero_like).collect() };
        }
        self.compose(other).sub(&other.compose(self))
    }

    pub fn add(&self, other: &Endo) -> Endo {
        self.check(other);
        Endo { q: self.q, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Endo) -> Endo {
        self.check(other);
        Endo { q: self.q, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Fp) -> Endo {
        Endo { q: self.q, entries: self.entries.iter().map(|a| a.scale(c)).collect() }
    }

    fn check(&self, other: &Endo) {
        assert_eq!(self.q, other.q, "divided-power context mismatch");
    }
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| format!("[{},{}]={c}", idx / self.q, idx % self.q))
            .collect();
        write!(f, "Endo{{{}}}", terms.join(", "))
    }
}

/// Pair `(f, A)` in the semidirect sum, bracket `[(f,A),(f',A')] = (Af' - A'f, [A,A'])`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemidirectElement {
    pub module: DividedPowerElement,
    pub endo: Endo,
}

impl SemidirectElement {
    pub fn new(module: DividedPowerElement, endo: Endo) -> Self {
        assert_eq!(module.q(), endo.q(), "divided-power context mismatch");
        SemidirectElement { module, endo }
    }

    pub fn zero(ctx: &DpContext) -> Self {
        Self::new(DividedPowerElement::zero(ctx), Endo::zero(ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero() && self.endo.is_zero()
    }

    pub fn bracket(&self, other: &Self) -> Self {
        let module = self.endo.apply(&other.module).sub(&other.endo.apply(&self.module));
        SemidirectElement { module, endo: self.endo.bracket(&other.endo) }
    }

    pub fn add(&self, other: &Self) -> Self {
        SemidirectElement { module: self.module.add(&other.module), endo: self.endo.add(&other.endo) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SemidirectElement { module: self.module.sub(&other.module), endo: self.endo.sub(&other.endo) }
    }

    pub fn scale(&self, c: Fp) -> Self {
        SemidirectElement { module: self.module.scale(c), endo: self.endo.scale(c) }
    }

    /// Flattens into `F_p` coordinates keyed by (slot, t-degree); the module
    /// occupies slots `0..q`, the matrix slots `q..q+q^2`.
    pub fn coordinates(&self) -> SparseVec {
        let q = self.module.q();
        let mut v = SparseVec::new();
        let slots = self.module.coeffs.iter().chain(self.endo.entries.iter());
        for (slot, poly) in slots.enumerate() {
            for (r, &c) in poly.coeff_values().iter().enumerate() {
                if c != 0 {
                    v.insert(((slot as u64) << 32) | r as u64, c);
                }
            }
        }
        debug_assert!(v.keys().all(|k| (k >> 32) < (q + q * q) as u64));
        v
    }

    /// First nonzero coordinate in the order of [`Self::coordinates`].
    pub fn first_nonzero(&self) -> Option<(u64, Fp)> {
        let p = self.module.coeffs[0].modulus() as u32;
        self.coordinates().into_iter().next().map(|(k, c)| (k, Fp::raw(c, p)))
    }

    /// Coordinate at `key` (see [`Self::coordinates`]).
    pub fn coordinate(&self, key: u64) -> Fp {
        let q = self.module.q();
        let slot = (key >> 32) as usize;
        let r = (key & 0xffff_ffff) as i64;
        let poly = if slot < q { &self.module.coeffs[slot] } else { &self.endo.entries[slot - q] };
        poly.coeff(r)
    }
}

/// `Z = -∂ - t x^(q-1) I`, so `Z x^(i) = -x^(i-1)` for `i > 0` and `Z 1 = -t x^(q-1)`.
pub fn z_operator(ctx: &DpContext) -> Endo {
    let t_top = DividedPowerElement::monomial(ctx, ctx.t_pow(ctx.field.one(), 1), ctx.q as i64 - 1);
    Endo::derivation(ctx).add(&Endo::multiplication(ctx, &t_top)).scale(ctx.field.elem(-1))
}

/// `t x^(q-k) I`.
pub fn t_shift_operator(ctx: &DpContext, k: usize) -> Endo {
    let f = DividedPowerElement::monomial(ctx, ctx.t_pow(ctx.field.one(), 1), ctx.q as i64 - k as i64);
    Endo::multiplication(ctx, &f)
}

/// The generators `z = (0, Z)` and `e_n = (x^(q+m-n), t x^(q-n) I)` for `0 < m < n <= q`.
pub fn make_generators(ctx: &DpContext, m: usize, n: usize) -> Result<(SemidirectElement, SemidirectElement), DpError> {
    let q = ctx.q;
    if !(0 < m && m < n && n <= q) {
        return Err(DpError::BadParameters { m, n, q });
    }
    let z = SemidirectElement::new(DividedPowerElement::zero(ctx), z_operator(ctx));
    let e_n = SemidirectElement::new(DividedPowerElement::basis(ctx, (q + m - n) as i64), t_shift_operator(ctx, n));
    Ok((z, e_n))
}

/// Degree `r q + m + j` of `c · t^r x^(q-j)` for `0 < j <= q`.
pub fn graded_degree(el: &DividedPowerElement, m: usize) -> Result<u64, DpError> {
    let (i, coeff) = el.single_term().ok_or(DpError::NotMonomial)?;
    if coeff.term_count() != 1 {
        return Err(DpError::NotMonomial);
    }
    let r = coeff.degree().expect("nonzero coefficient") as u64;
    let q = el.q() as u64;
    let j = q - i as u64;
    Ok(r * q + m as u64 + j)
}

/// Basis of the `F_p`-Lie algebra generated by `gens`, by bracket closure.
///
/// Stops and returns `None` once more than `max_dim` independent elements
/// have been found.
pub fn generated_subalgebra(
    field: &PrimeField,
    gens: &[SemidirectElement],
    max_dim: usize,
) -> Option<Vec<SemidirectElement>> {
    let mut echelon = crate::arith::EchelonBasis::new(field);
    let mut basis: Vec<SemidirectElement> = Vec::new();
    let mut frontier: Vec<SemidirectElement> = Vec::new();
    for g in gens {
        if echelon.insert(g.coordinates()) {
            basis.push(g.clone());
            frontier.push(g.clone());
        }
    }
    while let Some(new) = frontier.pop() {
        let snapshot = basis.clone();
        for b in &snapshot {
            let br = new.bracket(b);
            if echelon.insert(br.coordinates()) {
                if basis.len() >= max_dim {
                    return None;
                }
                basis.push(br.clone());
                frontier.push(br);
            }
        }
    }
    Some(basis)
}

/// Spans of `[L, L]` and `[[L, L], [L, L]]` for a basis of `L`.
pub fn derived_series_dims(field: &PrimeField, basis: &[SemidirectElement]) -> (usize, usize) {
    let mut derived = crate::arith::EchelonBasis::new(field);
    let mut derived_elems = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let br = a.bracket(b);
            if derived.insert(br.coordinates()) {
                derived_elems.push(br);
            }
        }
    }
    let mut second = crate::arith::EchelonBasis::new(field);
    for (i, a) in derived_elems.iter().enumerate() {
        for b in &derived_elems[i + 1..] {
            second.insert(a.bracket(b).coordinates());
        }
    }
    (derived.dim(), second.dim())
}
