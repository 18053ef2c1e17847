use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use typen::arith::{lucas_symmetry_check, PrimeField, TPoly};
use typen::divided_powers::{dp_mul, DividedPowerElement, DpContext, Endo, SemidirectElement};
use typen::maxclass::{bracket_coeff, BetaSequence};

/// Rows `0..=max` of Pascal's triangle reduced mod `p`.
fn pascal(p: u64, max: usize) -> Vec<Vec<u8>> {
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(max + 1);
    rows.push(vec![1]);
    for a in 1..=max {
        let prev = &rows[a - 1];
        let mut row = vec![1u8; a + 1];
        for b in 1..a {
            row[b] = ((prev[b - 1] as u64 + prev[b] as u64) % p) as u8;
        }
        rows.push(row);
    }
    rows
}

#[test]
fn binomials_match_pascal_table() {
    for p in [3u64, 5, 7] {
        let f = PrimeField::new(p).unwrap();
        let table = pascal(p, 2000);
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                assert_eq!(f.binom(a as u64, b as u64).value() as u8, c, "C({a},{b}) mod {p}");
            }
            assert!(f.binom(a as u64, a as u64 + 1).is_zero());
        }
    }
}

#[test]
fn lucas_symmetry_exhaustive() {
    for (p, q) in [(3u64, 9u64), (5, 25), (3, 27), (7, 49)] {
        let f = PrimeField::new(p).unwrap();
        let table = pascal(p, q as usize);
        for a in 0..q {
            for b in 0..q {
                let lhs = if q - 1 - b <= a { table[a as usize][(q - 1 - b) as usize] } else { 0 };
                let rhs = if q - 1 - a <= b { table[b as usize][(q - 1 - a) as usize] } else { 0 };
                let sign_rhs = if (a + b) % 2 == 0 { rhs as u64 } else { (p - rhs as u64) % p };
                assert_eq!(lhs as u64, sign_rhs, "oracle: a={a} b={b} q={q}");
                assert!(lucas_symmetry_check(&f, a, b, q).unwrap(), "a={a} b={b} q={q}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn vandermonde(p in prop::sample::select(vec![3u64, 5, 7, 11]), m in 0u64..300, n in 0u64..300, r_frac in 0.0f64..=1.0) {
        let f = PrimeField::new(p).unwrap();
        let r = ((m + n) as f64 * r_frac) as u64;
        let lhs = (0..=r).fold(f.zero(), |acc, k| acc + f.binom(m, k) * f.binom(n, r - k));
        prop_assert_eq!(lhs, f.binom(m + n, r));
    }
}

fn tpoly_strategy(p: u64) -> impl Strategy<Value = TPoly> {
    prop::collection::vec(-20i64..20, 0..6).prop_map(move |c| TPoly::from_ints(&PrimeField::new(p).unwrap(), &c))
}

proptest! {
    #[test]
    fn tpoly_ring_axioms(a in tpoly_strategy(7), b in tpoly_strategy(7), c in tpoly_strategy(7)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
    }

    #[test]
    fn z_jacobi_is_pascal(betas in prop::collection::vec(0i64..5, 30), a in 2usize..12, b in 2usize..12) {
        let f = PrimeField::new(5).unwrap();
        let seq = BetaSequence::from_ints(&f, 2, &betas).unwrap();
        let g = |x, y| bracket_coeff(&seq, x, y).unwrap().unwrap();
        prop_assert_eq!(g(a, b + 1), g(a, b) - g(a + 1, b));
    }
}

#[test]
fn dp_mul_commutative_and_associative() {
    for (p, c) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
        let f = PrimeField::new(p).unwrap();
        let ctx = DpContext::new(&f, c).unwrap();
        let q = ctx.q();
        let mul = |i: usize, j: usize| dp_mul(&ctx, i, j).unwrap().map(|r| (r.coeff, r.exponent));
        for i in 0..q {
            for j in 0..q {
                assert_eq!(mul(i, j), mul(j, i));
                for k in 0..q {
                    let left = mul(i, j).and_then(|(c1, e)| mul(e, k).map(|(c2, e2)| (c1 * c2, e2)));
                    let right = mul(j, k).and_then(|(c1, e)| mul(i, e).map(|(c2, e2)| (c1 * c2, e2)));
                    let norm = |v: Option<(typen::arith::Fp, usize)>| v.filter(|(c, _)| !c.is_zero());
                    assert_eq!(norm(left), norm(right), "q={q} ({i},{j},{k})");
                }
            }
        }
    }
}

fn random_tpoly(rng: &mut StdRng, f: &PrimeField) -> TPoly {
    let coeffs: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..f.p() as i64)).collect();
    TPoly::from_ints(f, &coeffs)
}

fn random_element(rng: &mut StdRng, ctx: &DpContext) -> SemidirectElement {
    let f = ctx.field().clone();
    let q = ctx.q();
    let mut module = DividedPowerElement::zero(ctx);
    for _ in 0..rng.gen_range(0..4) {
        let t = DividedPowerElement::monomial(ctx, random_tpoly(rng, &f), rng.gen_range(0..q) as i64);
        module = module.add(&t);
    }
    let mut endo = Endo::zero(ctx);
    for _ in 0..rng.gen_range(0..5) {
        let u = Endo::unit(ctx, rng.gen_range(0..q), rng.gen_range(0..q), random_tpoly(rng, &f)).unwrap();
        endo = endo.add(&u);
    }
    SemidirectElement::new(module, endo)
}

#[test]
fn semidirect_jacobi_random_triples() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (p, c) in [(3u64, 2u32), (5, 1), (5, 2), (7, 1), (3, 3)] {
        let f = PrimeField::new(p).unwrap();
        let ctx = DpContext::new(&f, c).unwrap();
        for _ in 0..200 {
            let (u, v, w) =
                (random_element(&mut rng, &ctx), random_element(&mut rng, &ctx), random_element(&mut rng, &ctx));
            let jac = u.bracket(&v).bracket(&w).add(&v.bracket(&w).bracket(&u)).add(&w.bracket(&u).bracket(&v));
            assert!(jac.is_zero(), "p={p} c={c}");
            assert!(u.bracket(&v).add(&v.bracket(&u)).is_zero());
        }
    }
}
