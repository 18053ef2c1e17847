use std::collections::BTreeMap;

use super::field::{mul_mod, sub_mod};
use super::{Fp, PrimeField};

/// Sparse vector over `F_p`, keyed by coordinate, zero entries absent.
pub type SparseVec = BTreeMap<u64, u32>;

/// Incrementally maintained row-echelon basis of a subspace of `F_p^N`.
///
/// Each stored row has a distinct pivot (its smallest key) with value 1.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u32,
    rows: BTreeMap<u64, SparseVec>,
}

impl EchelonBasis {
    pub fn new(field: &PrimeField) -> Self {
        EchelonBasis { p: field.p() as u32, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let p = self.p;
        let mut cursor = 0u64;
        loop {
            let next = v.range(cursor..).next().map(|(&k, &c)| (k, c));
            let Some((key, c)) = next else { break };
            if let Some(row) = self.rows.get(&key) {
                for (&k, &r) in row {
                    let e = v.entry(k).or_insert(0);
                    *e = sub_mod(*e, mul_mod(c, r, p), p);
                    if *e == 0 {
                        v.remove(&k);
                    }
                }
            }
            cursor = key + 1;
        }
        v
    }

    /// Adds `v` if independent; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&pivot, &lead)) = v.iter().next() else { return false };
        let inv = Fp::raw(lead, self.p).inv().expect("nonzero pivot").value();
        let v: SparseVec = v.into_iter().map(|(k, c)| (k, mul_mod(c, inv, self.p))).collect();
        self.rows.insert(pivot, v);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}
