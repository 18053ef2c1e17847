use typen::arith::{PrimeField, XPoly};
use typen::polycheck::{
    classify_admissible_k, lemma_pairs_check, parse_fixture, range_condition_holds, x_minus_one_pow, RangeCondition,
};

const BUDGET: u64 = 10_000_000;

fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Independent window check: expand `(x-1)^k g` by schoolbook multiplication
/// of integer binomials, then reduce.
fn window_oracle(p: i64, k: usize, g: &[i64], n: usize) -> bool {
    let mut row = vec![1i64];
    for _ in 0..k {
        let mut next = vec![0i64; row.len() + 1];
        for (i, &c) in row.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] - c).rem_euclid(p);
        }
        row = next;
    }
    let lo = (k + n).div_ceil(2);
    (lo..k).all(|j| {
        let s: i64 =
            g.iter().enumerate().filter(|(d, _)| *d <= j && j - d < row.len()).map(|(d, &c)| c * row[j - d]).sum();
        s.rem_euclid(p) == 0
    })
}

#[test]
fn regression_p5_n3() {
    let f = PrimeField::new(5).unwrap();
    let cls = classify_admissible_k(&f, 3, 130, BUDGET).unwrap();
    let expected = parse_fixture(&fixture_text("poly_p5_n3_k130.txt")).unwrap();
    assert_eq!(parse_fixture(&cls.fixture_text()).unwrap(), expected);
    assert!(cls.verified());
}

#[test]
fn fixture_matches_expansion_oracle() {
    let expected = parse_fixture(&fixture_text("poly_p5_n3_k130.txt")).unwrap();
    let listed: std::collections::BTreeMap<u64, Vec<Vec<u32>>> =
        expected.into_iter().map(|((_, _, k), gs)| (k, gs)).collect();
    for k in 5..=60usize {
        let mut found = Vec::new();
        for g0 in 0..5 {
            for g1 in 0..5 {
                if window_oracle(5, k, &[g0, g1, 1], 3) {
                    found.push(vec![g0 as u32, g1 as u32, 1]);
                }
            }
        }
        assert_eq!(listed.get(&(k as u64)).cloned().unwrap_or_default(), found, "k = {k}");
    }
}

#[test]
fn full_power_is_unique_at_two_q_minus_n_plus_one() {
    let f = PrimeField::new(5).unwrap();
    let cls = classify_admissible_k(&f, 3, 60, BUDGET).unwrap();
    assert_eq!(cls.polys_at(48), &[x_minus_one_pow(&f, 2)]);
    assert!(cls.polys_at(26).iter().all(|g| g.coeff(0).is_zero()));
}

#[test]
fn window_examples() {
    let f = PrimeField::new(5).unwrap();
    let cond = RangeCondition::new(&f, 3, 48).unwrap();
    assert!(range_condition_holds(&f, &x_minus_one_pow(&f, 2), &cond).unwrap());
    let cond = RangeCondition::new(&f, 3, 25).unwrap();
    assert!(range_condition_holds(&f, &XPoly::monomial(f.one(), 2), &cond).unwrap());
}

#[test]
fn theorem_menu_for_larger_exponents() {
    for (p, n, k_max) in [(5, 3, 130), (7, 3, 120), (7, 4, 120), (7, 5, 120)] {
        let f = PrimeField::new(p).unwrap();
        let cls = classify_admissible_k(&f, n, k_max, BUDGET).unwrap();
        assert!(cls.verified(), "p={p} n={n}: {:?}", cls.violations);
        // Small exponents outside the listed intervals all sit in (p-n, p+n).
        assert!(cls.small_k_outside_menu.iter().all(|e| e.near_p));
    }
}

#[test]
fn small_exponents_are_reported() {
    let f = PrimeField::new(5).unwrap();
    let cls = classify_admissible_k(&f, 3, 30, BUDGET).unwrap();
    let ks: Vec<u64> = cls.small_k_outside_menu.iter().map(|e| e.k).collect();
    assert_eq!(ks, vec![5, 6, 7]);
    assert!(!cls.small_menu_holds());
    let realized: Vec<bool> = cls.small_intervals.iter().map(|s| s.realized).collect();
    assert_eq!(realized, vec![false, true, false, false]);
}

#[test]
fn lemma_pairs_regression_p5() {
    let f = PrimeField::new(5).unwrap();
    let r = lemma_pairs_check(&f, 60);
    let pairs: Vec<(u64, i64)> = r.pairs.iter().map(|(k, a)| (*k, a.signed())).collect();
    let want: Vec<(u64, i64)> = vec![(2, -2), (3, 2), (4, 1), (5, 0), (9, 1), (24, 1), (25, 0), (49, 1)];
    assert_eq!(pairs, want);
    assert!(r.verified());
    assert!(!r.strengthened.iter().any(|(k, _)| *k == 3 || *k == 9 || *k == 49));
}

#[test]
fn lemma_pairs_small_primes() {
    for p in [3u64, 5, 7] {
        let f = PrimeField::new(p).unwrap();
        let r = lemma_pairs_check(&f, 2 * p * p);
        assert!(r.verified(), "p={p}: {:?} {:?}", r.unexpected, r.unexpected_strengthened);
    }
}
