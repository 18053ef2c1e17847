use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{add_mod, mul_mod, sub_mod};
use super::{Fp, PrimeField};

/// Marker naming the indeterminate of a [`Poly`].
pub trait Indeterminate: Clone + fmt::Debug + PartialEq + Eq + Hash + Default {
    const SYMBOL: &'static str;
}

/// The indeterminate `t` of the divided-power coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct T;

/// The indeterminate `X` of generating functions and of the polynomial checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct X;

impl Indeterminate for T {
    const SYMBOL: &'static str = "t";
}

impl Indeterminate for X {
    const SYMBOL: &'static str = "X";
}

/// Dense univariate polynomial over `F_p`, low degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// an empty coefficient vector and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<V> {
    p: u32,
    coeffs: Vec<u32>,
    var: PhantomData<V>,
}

pub type TPoly = Poly<T>;
pub type XPoly = Poly<X>;

impl<V: Indeterminate> Poly<V> {
    pub fn zero(field: &PrimeField) -> Self {
        Poly { p: field.p() as u32, coeffs: Vec::new(), var: PhantomData }
    }

    pub fn one(field: &PrimeField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Fp) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * var^deg`.
    pub fn monomial(c: Fp, deg: usize) -> Self {
        let p = c.modulus() as u32;
        if c.is_zero() {
            return Poly { p, coeffs: Vec::new(), var: PhantomData };
        }
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c.value();
        Poly { p, coeffs, var: PhantomData }
    }

    /// Zero polynomial over the same field.
    pub fn zero_like(&self) -> Self {
        Poly { p: self.p, coeffs: Vec::new(), var: PhantomData }
    }

    /// Builds from coefficients listed low degree first.
    pub fn from_coeffs(field: &PrimeField, coeffs: impl IntoIterator<Item = Fp>) -> Self {
        let p = field.p() as u32;
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                assert_eq!(c.modulus() as u32, p, "modulus mismatch");
                c.value()
            })
            .collect();
        Self::from_raw(p, coeffs)
    }

    /// Builds from signed integer coefficients, low degree first.
    pub fn from_ints(field: &PrimeField, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.elem(c)))
    }

    pub(crate) fn from_raw(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs, var: PhantomData }
    }

    /// `var - a`.
    pub fn linear(a: Fp) -> Self {
        let p = a.modulus() as u32;
        Self::from_raw(p, vec![(-a).value(), 1])
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` standing for the degree of the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().map(|&c| Fp::raw(c, self.p))
    }

    /// Coefficient of `var^j`; zero outside the support, including negative `j`.
    pub fn coeff(&self, j: i64) -> Fp {
        let v = if j < 0 { 0 } else { self.coeffs.get(j as usize).copied().unwrap_or(0) };
        Fp::raw(v, self.p)
    }

    /// Coefficients low degree first, as residues in `[0, p)`.
    pub fn coeff_values(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = Fp> + ExactSizeIterator + '_ {
        self.coeffs.iter().map(move |&c| Fp::raw(c, self.p))
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn scale(&self, c: Fp) -> Self {
        self.check_fp(c);
        if c.is_zero() {
            return Self::from_raw(self.p, Vec::new());
        }
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c.value(), self.p)).collect();
        Self::from_raw(self.p, coeffs)
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { p: self.p, coeffs, var: PhantomData }
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::from_raw(self.p, vec![1]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: Fp) -> Fp {
        self.check_fp(x);
        self.coeffs().rev().fold(Fp::raw(0, self.p), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        self.check(divisor);
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "polynomial division by zero");
        if self.coeffs.len() < dlen {
            return (Self::from_raw(self.p, Vec::new()), self.clone());
        }
        let inv_lead = divisor.leading().and_then(Fp::inv).expect("nonzero leading coefficient").value();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dlen - 1], inv_lead, self.p);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (k, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + k] = sub_mod(rem[i + k], mul_mod(c, d, self.p), self.p);
            }
        }
        rem.truncate(dlen - 1);
        (Self::from_raw(self.p, quot), Self::from_raw(self.p, rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Multiplicity of `a` as a root; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, a: Fp) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = Self::linear(a);
        let mut cur = self.clone();
        let mut mult = 0;
        loop {
            let (q, r) = cur.div_rem(&lin);
            if !r.is_zero() {
                return Some(mult);
            }
            cur = q;
            mult += 1;
        }
    }

    #[inline]
    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "modulus mismatch: F_{} vs F_{}", self.p, other.p);
    }

    #[inline]
    fn check_fp(&self, c: Fp) {
        assert_eq!(self.p as u64, c.modulus(), "modulus mismatch: F_{} vs F_{}", self.p, c.modulus());
    }
}

impl<V: Indeterminate> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        self.check(rhs);
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = add_mod(*c, s, self.p);
        }
        Poly::from_raw(self.p, coeffs)
    }
}

impl<V: Indeterminate> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        self + &(-rhs)
    }
}

impl<V: Indeterminate> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        let coeffs = self.coeffs.iter().map(|&c| sub_mod(0, c, self.p)).collect();
        Poly::from_raw(self.p, coeffs)
    }
}

impl<V: Indeterminate> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::from_raw(self.p, Vec::new());
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::from_raw(self.p, acc.into_iter().map(|c| c as u32).collect())
    }
}

impl<V: Indeterminate> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Poly<V>) -> Poly<V> {
        &self + &rhs
    }
}

impl<V: Indeterminate> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        &self - &rhs
    }
}

impl<V: Indeterminate> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

impl<V: Indeterminate> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.value()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "{}", V::SYMBOL)?,
                (1, v) => write!(f, "{v}{}", V::SYMBOL)?,
                (_, 1) => write!(f, "{}^{i}", V::SYMBOL)?,
                (_, v) => write!(f, "{v}{}^{i}", V::SYMBOL)?,
            }
        }
        Ok(())
    }
}

impl<V: Indeterminate> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; F_{}]({:?})", V::SYMBOL, self.p, self.coeffs)
    }
}
