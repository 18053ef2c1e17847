use serde::Serialize;

use super::bracket::{violation_at_degree, JacobiReport};
use super::{constituents, BetaSequence, ConstituentOutcome, SeqError};
use crate::arith::{Fp, PrimeField};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    /// Highest index `D` of the prefixes to enumerate.
    pub depth: usize,
    /// Maximum number of candidate evaluations.
    pub budget: u64,
    /// Only explore prefixes whose first nonzero entry is 1.
    pub normalize: bool,
    /// Fixed initial entries `β_{n+1}, ...`; must be feasible themselves.
    pub seed: Vec<Fp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundPrefix {
    pub betas: Vec<Fp>,
    /// Reached the requested depth; otherwise no value extends it.
    pub complete: bool,
    pub constituents: ConstituentOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MenuViolation {
    pub prefix: usize,
    pub ell: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub p: u64,
    pub n: usize,
    pub depth: usize,
    pub normalize: bool,
    pub seed_len: usize,
    pub nodes: u64,
    /// Budget ran out: `prefixes` is only part of the tree.
    pub partial: bool,
    pub forced_steps: u64,
    pub branch_points: u64,
    pub prefixes: Vec<FoundPrefix>,
    /// Distinct first-constituent lengths among complete prefixes.
    pub ells: Vec<usize>,
    pub menu_violations: Vec<MenuViolation>,
}

impl SearchReport {
    pub fn complete_prefixes(&self) -> impl Iterator<Item = &FoundPrefix> {
        self.prefixes.iter().filter(|p| p.complete)
    }
}

/// Whether `ℓ` is `2q` or an even value in `(q, q+n]` for a power `q` of `p`.
pub fn first_length_menu(p: u64, n: usize, ell: usize) -> bool {
    let ell = ell as u64;
    let mut q = p;
    while q <= ell {
        if ell == 2 * q || (ell > q && ell <= q + n as u64 && ell.is_multiple_of(2)) {
            return true;
        }
        q *= p;
    }
    false
}

struct Searcher<'a> {
    field: &'a PrimeField,
    cfg: &'a SearchConfig,
    betas: Vec<Fp>,
    /// `gamma[a-n][b-n]`, filled for every `a + b <= n + betas.len() + n`.
    gamma: Vec<Vec<Fp>>,
    nodes: u64,
    partial: bool,
    forced: u64,
    branches: u64,
    found: Vec<FoundPrefix>,
}

impl Searcher<'_> {
    fn beta(&self, i: usize) -> Fp {
        let n = self.cfg.n;
        if i == n {
            self.field.zero()
        } else {
            self.betas[i - n - 1]
        }
    }

    fn g(&self, a: usize, b: usize) -> Fp {
        let n = self.cfg.n;
        self.gamma[a - n][b - n]
    }

    /// Pushes `v` as the next entry and extends the γ table by one degree.
    fn push(&mut self, v: Fp) {
        let n = self.cfg.n;
        self.betas.push(v);
        let s = n + self.betas.len() + n;
        for a in n..=s - n {
            let b = s - a;
            let span = (b - n) as u64;
            let mut acc = self.field.zero();
            for i in 0..=span {
                let c = self.field.binom(span, i);
                if !c.is_zero() {
                    acc += self.field.sign(i) * c * self.beta(a + i as usize);
                }
            }
            if self.gamma.len() <= a - n {
                self.gamma.push(Vec::new());
            }
            debug_assert_eq!(self.gamma[a - n].len(), b - n);
            self.gamma[a - n].push(acc);
        }
    }

    fn pop(&mut self) {
        let n = self.cfg.n;
        let s = n + self.betas.len() + n;
        for a in n..=s - n {
            self.gamma[a - n].pop();
        }
        while self.gamma.last().is_some_and(Vec::is_empty) {
            self.gamma.pop();
        }
        self.betas.pop();
    }

    /// All identities of top degree `n + d`, where `d` is the newest index.
    fn newest_consistent(&self) -> bool {
        let n = self.cfg.n;
        let d = n + self.betas.len();
        let mut scratch = JacobiReport { degree_bound: d + n, pairs_checked: 0, triples_checked: 0, violation: None };
        if violation_at_degree(n, d + n, &|a, b| self.g(a, b), &mut scratch).is_some() {
            return false;
        }
        // E(i, h) with i + h + n = d and β_{n+h} = 0.
        for h in 1..d.saturating_sub(2 * n) {
            let i = d - h - n;
            if i <= n || !self.beta(n + h).is_zero() {
                continue;
            }
            if !self.eih(i, h).is_zero() {
                return false;
            }
        }
        true
    }

    fn eih(&self, i: usize, h: usize) -> Fp {
        let n = self.cfg.n;
        let alt = |start: usize| {
            (0..=h as u64).fold(self.field.zero(), |acc, gi| {
                acc + self.field.sign(gi) * self.field.binom(h as u64, gi) * self.beta(start + gi as usize)
            })
        };
        self.beta(i + h + n) * alt(i) - self.beta(i) * alt(i + n)
    }

    fn candidates(&self) -> Vec<Fp> {
        let p = self.field.p();
        let all_zero = self.betas.iter().all(|b| b.is_zero());
        if self.cfg.normalize && all_zero {
            vec![self.field.zero(), self.field.one()]
        } else {
            (0..p).map(|v| self.field.elem(v as i64)).collect()
        }
    }

    fn record(&mut self, complete: bool) {
        let seq = BetaSequence::new(self.field, self.cfg.n, self.betas.clone()).expect("valid entries");
        self.found.push(FoundPrefix { betas: self.betas.clone(), complete, constituents: constituents(&seq) });
    }

    fn dfs(&mut self) {
        let n = self.cfg.n;
        if n + self.betas.len() >= self.cfg.depth {
            self.record(true);
            return;
        }
        let mut feasible = Vec::new();
        for v in self.candidates() {
            if self.nodes >= self.cfg.budget {
                self.partial = true;
                return;
            }
            self.nodes += 1;
            self.push(v);
            if self.newest_consistent() {
                feasible.push(v);
            }
            self.pop();
        }
        match feasible.len() {
            0 => {
                self.record(false);
                return;
            }
            1 => self.forced += 1,
            _ => self.branches += 1,
        }
        for v in feasible {
            self.push(v);
            self.dfs();
            self.pop();
            if self.partial {
                return;
            }
        }
    }
}

/// Depth-first enumeration of prefixes `β_{n+1..=D}` over `F_p` that pass
/// antisymmetry, the Jacobi identity and every applicable `E(i, h)` up to
/// degree `D + n`.
///
/// Values are tried in the order `0, 1, ..., p-1`; at each index all values
/// are screened first, so a lone survivor is taken without branching.
/// Every complete prefix is checked for an even first length, and, once its
/// second constituent is complete and `ℓ > 4p`, for `ℓ ∈ {2q} ∪ (q, q+n]`.
pub fn search_sequences(field: &PrimeField, cfg: &SearchConfig) -> Result<SearchReport, SeqError> {
    let n = cfg.n;
    if n == 0 {
        return Err(SeqError::BadType(n));
    }
    let mut s = Searcher {
        field,
        cfg,
        betas: Vec::new(),
        // γ_{n,n} = β_n = 0 seeds the table at degree 2n.
        gamma: vec![vec![field.zero()]],
        nodes: 0,
        partial: false,
        forced: 0,
        branches: 0,
        found: Vec::new(),
    };
    for (k, &v) in cfg.seed.iter().enumerate() {
        if v.modulus() != field.p() {
            return Err(SeqError::BadResidue { value: v.value() as u64, p: field.p() });
        }
        s.push(v);
        if !s.newest_consistent() {
            let bad = BetaSequence::new(field, n, cfg.seed.clone())?;
            let report = super::jacobi_verify(&bad, n + k + 1 + n)?;
            debug_assert!(!report.passed());
            return Err(SeqError::OutOfWindow { index: n + k + 1, n, depth: n + k });
        }
    }
    s.dfs();

    let mut menu_violations = Vec::new();
    let mut ells = Vec::new();
    for (idx, pre) in s.found.iter().enumerate().filter(|(_, p)| p.complete) {
        let Some(report) = pre.constituents.report() else { continue };
        let ell = report.ell;
        if !ells.contains(&ell) {
            ells.push(ell);
        }
        if cfg.depth >= ell + n && ell % 2 == 1 {
            menu_violations.push(MenuViolation { prefix: idx, ell, reason: "odd first length".into() });
        }
        if n >= 2
            && report.constituents.len() >= 2
            && ell as u64 > 4 * field.p()
            && !first_length_menu(field.p(), n, ell)
        {
            menu_violations.push(MenuViolation {
                prefix: idx,
                ell,
                reason: "first length outside {2q} ∪ (q, q+n]".into(),
            });
        }
    }
    ells.sort_unstable();

    Ok(SearchReport {
        p: field.p(),
        n,
        depth: cfg.depth,
        normalize: cfg.normalize,
        seed_len: cfg.seed.len(),
        nodes: s.nodes,
        partial: s.partial,
        forced_steps: s.forced,
        branch_points: s.branches,
        prefixes: s.found,
        ells,
        menu_violations,
    })
}
