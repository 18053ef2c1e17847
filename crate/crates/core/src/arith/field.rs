use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use super::ArithError;

/// Largest prime accepted by [`PrimeField::new`]; the factorial tables are `O(p)`.
pub const MAX_PRIME: u64 = 1 << 20;

/// Arithmetic context for the prime field `F_p`, `p` odd.
///
/// Holds factorial tables used by the Lucas digit loop. Cloning is cheap and
/// every [`Fp`] created from it carries `p`, so values from different
/// contexts are rejected eagerly when combined.
#[derive(Clone)]
pub struct PrimeField {
    p: u32,
    fact: Arc<[u32]>,
    inv_fact: Arc<[u32]>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p > MAX_PRIME {
            return Err(ArithError::PrimeTooLarge(p));
        }
        if p < 3 || !is_prime(p) {
            return Err(ArithError::NotOddPrime(p));
        }
        let p32 = p as u32;
        let mut fact = vec![1u32; p32 as usize];
        for i in 1..p32 as usize {
            fact[i] = mul_mod(fact[i - 1], i as u32, p32);
        }
        let mut inv_fact = vec![1u32; p32 as usize];
        inv_fact[p32 as usize - 1] = pow_mod(fact[p32 as usize - 1], p - 2, p32);
        for i in (1..p32 as usize).rev() {
            inv_fact[i - 1] = mul_mod(inv_fact[i], i as u32, p32);
        }
        Ok(PrimeField { p: p32, fact: fact.into(), inv_fact: inv_fact.into() })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn zero(&self) -> Fp {
        Fp { value: 0, p: self.p }
    }

    #[inline]
    pub fn one(&self) -> Fp {
        Fp { value: 1, p: self.p }
    }

    /// Reduces a signed integer into `F_p`.
    pub fn elem(&self, v: i64) -> Fp {
        Fp { value: v.rem_euclid(self.p as i64) as u32, p: self.p }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: u64) -> Fp {
        if e.is_multiple_of(2) {
            self.one()
        } else {
            self.elem(-1)
        }
    }

    /// Binomial coefficient `C(a, b) mod p` by Lucas' theorem.
    ///
    /// Walks the base-`p` digits of `a` and `b` together; a digit pair with
    /// `b_i > a_i` makes the whole product vanish, which also covers `b > a`.
    pub fn binom(&self, mut a: u64, mut b: u64) -> Fp {
        let p = self.p as u64;
        let mut acc = 1u32;
        while b > 0 {
            let (ai, bi) = ((a % p) as usize, (b % p) as usize);
            if bi > ai {
                return self.zero();
            }
            acc = mul_mod(acc, self.small_binom(ai, bi), self.p);
            a /= p;
            b /= p;
        }
        Fp { value: acc, p: self.p }
    }

    /// `C(a, b) mod p` with the convention that it vanishes for `b < 0` or `b > a`.
    pub fn binom_signed(&self, a: i64, b: i64) -> Fp {
        if a < 0 || b < 0 || b > a {
            return self.zero();
        }
        self.binom(a as u64, b as u64)
    }

    #[inline]
    fn small_binom(&self, a: usize, b: usize) -> u32 {
        mul_mod(mul_mod(self.fact[a], self.inv_fact[b], self.p), self.inv_fact[a - b], self.p)
    }

    /// Returns `Some(c)` when `q = p^c` with `c >= 0`.
    pub fn log_p(&self, q: u64) -> Option<u32> {
        let p = self.p as u64;
        let (mut x, mut c) = (q, 0);
        if x == 0 {
            return None;
        }
        while x % p == 0 {
            x /= p;
            c += 1;
        }
        (x == 1).then_some(c)
    }

    /// Powers `p^c` with `c >= 1` up to and including `limit`.
    pub fn powers_up_to(&self, limit: u64) -> Vec<u64> {
        let p = self.p as u64;
        let mut out = Vec::new();
        let mut q = p;
        while q <= limit {
            out.push(q);
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
        out
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField(p = {})", self.p)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

/// Element of `F_p`. The residue is kept in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1
    }

    /// Representative in `(-p/2, p/2]`, handy for display.
    pub fn signed(self) -> i64 {
        let v = self.value as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp { value: pow_mod(self.value, e, self.p), p: self.p }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Fp> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p as u64 - 2))
        }
    }

    #[inline]
    pub(crate) fn raw(value: u32, p: u32) -> Fp {
        debug_assert!(value < p);
        Fp { value, p }
    }

    #[inline]
    fn check(self, other: Fp) {
        assert_eq!(self.p, other.p, "modulus mismatch: F_{} vs F_{}", self.p, other.p);
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl serde::Serialize for Fp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp { value: add_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp { value: sub_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp { value: mul_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self.check(rhs);
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { value: sub_mod(0, self.value, self.p), p: self.p }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn pow_mod(mut base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
