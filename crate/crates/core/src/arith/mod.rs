//! Exact arithmetic over `F_p`: field elements, Lucas binomials and
//! univariate polynomials.

mod field;
mod linalg;
mod poly;

pub use field::{is_prime, Fp, PrimeField, MAX_PRIME};
pub use linalg::{EchelonBasis, SparseVec};
pub use poly::{Indeterminate, Poly, TPoly, XPoly, T, X};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("{q} is not a power of {p}")]
    NotAPower { q: u64, p: u64 },
    #[error("{name} = {value} must be smaller than q = {q}")]
    OutOfRange { name: &'static str, value: u64, q: u64 },
}

/// `C(a, b) mod p` computed digit-wise from the base-`p` expansions.
pub fn binom_mod_p(a: u64, b: u64, field: &PrimeField) -> Fp {
    field.binom(a, b)
}

/// Checks `C(a, q-1-b) == (-1)^(a+b) C(b, q-1-a) (mod p)` for `0 <= a, b < q`.
pub fn lucas_symmetry_check(field: &PrimeField, a: u64, b: u64, q: u64) -> Result<bool, ArithError> {
    if q < field.p() || field.log_p(q).is_none() {
        return Err(ArithError::NotAPower { q, p: field.p() });
    }
    for (name, value) in [("a", a), ("b", b)] {
        if value >= q {
            return Err(ArithError::OutOfRange { name, value, q });
        }
    }
    let lhs = field.binom(a, q - 1 - b);
    let rhs = field.sign(a + b) * field.binom(b, q - 1 - a);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_symmetry_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert!(lucas_symmetry_check(&f3, 3, 5, 9).unwrap());
        assert_eq!(f3.binom(3, 3).value(), 1);
        assert!(lucas_symmetry_check(&f5, 0, 24, 25).unwrap());
        assert!(lucas_symmetry_check(&f3, 2, 2, 9).unwrap());
        assert_eq!(f3.binom(2, 6).value(), 0);
    }

    #[test]
    fn lucas_symmetry_rejects_bad_input() {
        let f3 = PrimeField::new(3).unwrap();
        assert!(matches!(lucas_symmetry_check(&f3, 0, 0, 10), Err(ArithError::NotAPower { .. })));
        assert!(matches!(lucas_symmetry_check(&f3, 9, 0, 9), Err(ArithError::OutOfRange { name: "a", .. })));
    }
}
