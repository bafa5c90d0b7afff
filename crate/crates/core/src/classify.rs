//! Exhaustive classification of LCD and self-dual codes over `E_p` up to
//! monomial equivalence.
//!
//! Every `F_p` subspace is produced exactly once from its RREF pivot pattern.
//! Pivot patterns are spread across a worker pool, each worker reduces its
//! codes to canonical forms, and the partial results are merged by sorting
//! on the canonical key, so the output does not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::ep_code::{CodeFlags, EpCode, EpGenMatrix};
use crate::equiv::{canonical_form, equivalent_ep, Budget};
use crate::error::Result;
use crate::fp_linalg::{FpCode, MdsStatus, Prime};

/// Classification length limits.
pub const CLASSIFY_BUDGET: Budget = Budget {
    max_n_binary: 8,
    max_n_ternary: 6,
    max_n_other: 4,
};

/// All `k`-subsets of `0..n`, in lexicographic order.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Every subspace whose RREF has the given pivot columns.
pub fn subspaces_with_pivots(p: Prime, n: usize, pivots: &[usize]) -> impl Iterator<Item = FpCode> {
    let pivots = pivots.to_vec();
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &pc)| {
            let pivots = &pivots;
            (pc + 1..n)
                .filter(move |c| !pivots.contains(c))
                .map(move |c| (i, c))
        })
        .collect();
    let mut rows: Vec<Vec<u8>> = pivots
        .iter()
        .map(|&pc| {
            let mut r = vec![0u8; n];
            r[pc] = 1;
            r
        })
        .collect();
    let mut digits = vec![0u8; free.len()];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let code = FpCode::from_rref_unchecked(p, n, rows.clone());
        // odometer over the free entries
        let mut i = 0;
        loop {
            if i == free.len() {
                done = true;
                break;
            }
            let (r, c) = free[i];
            digits[i] += 1;
            if digits[i] < p.get() {
                rows[r][c] = digits[i];
                break;
            }
            digits[i] = 0;
            rows[r][c] = 0;
            i += 1;
        }
        Some(code)
    })
}

/// Every `k`-dimensional subspace of `F_p^n`, each exactly once.
pub fn enumerate_subspaces(p: Prime, n: usize, k: usize) -> impl Iterator<Item = FpCode> {
    pivot_patterns(n, k)
        .into_iter()
        .flat_map(move |pv| subspaces_with_pivots(p, n, &pv))
}

/// Every code over `E_p` of length `n`, as all pairs `R ⊆ T`.
pub fn enumerate_ep_codes(p: Prime, n: usize) -> Vec<EpCode> {
    let all: Vec<FpCode> = (0..=n).flat_map(|k| enumerate_subspaces(p, n, k)).collect();
    let mut out = Vec::new();
    for r in &all {
        for t in &all {
            if r.is_subcode_of(t) {
                out.push(EpCode::from_parts(r.clone(), t.clone()).unwrap());
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Lcd,
    MdsAmdsLcd,
    LeftSelfDual,
    SelfDual,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Lcd => "lcd",
            Kind::MdsAmdsLcd => "mds-amds-lcd",
            Kind::LeftSelfDual => "left-self-dual",
            Kind::SelfDual => "self-dual",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "lcd" => Kind::Lcd,
            "mds-amds-lcd" => Kind::MdsAmdsLcd,
            "left-self-dual" => Kind::LeftSelfDual,
            "self-dual" => Kind::SelfDual,
            _ => return Err(format!("unknown classification kind `{s}`")),
        })
    }
}

/// One equivalence class found by a classification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub p: Prime,
    pub n: usize,
    pub representative: EpGenMatrix,
    pub d: Option<usize>,
    pub m1: usize,
    pub m2: usize,
    pub flags: CodeFlags,
    pub mds_status: MdsStatus,
}

impl ClassRecord {
    pub fn from_code(code: &EpCode) -> Self {
        ClassRecord {
            p: code.modulus(),
            n: code.len(),
            representative: code.generator_matrix(),
            d: code.min_distance(),
            m1: code.m1(),
            m2: code.m2(),
            flags: code.flags(),
            mds_status: code.mds_status(),
        }
    }

    pub fn code(&self) -> EpCode {
        EpCode::from_generators(&self.representative)
    }

    /// Recomputes every field from the representative.
    pub fn is_consistent(&self) -> bool {
        ClassRecord::from_code(&self.code()) == *self
    }

    pub fn is_mds_or_amds(&self) -> bool {
        self.mds_status != MdsStatus::Neither
    }
}

/// Output of one classification run, ordered by canonical key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: Kind,
    pub p: Prime,
    pub n: usize,
    pub records: Vec<ClassRecord>,
    /// Classes per minimum distance; the zero code has none and is left out.
    pub per_distance: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Classification {
    pub fn total(&self) -> usize {
        self.records.len()
    }

    pub fn mds_amds(&self) -> Vec<&ClassRecord> {
        self.records.iter().filter(|r| r.is_mds_or_amds()).collect()
    }

    /// One JSON object per line, followed by a summary object.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        let summary = serde_json::json!({
            "summary": {
                "kind": self.kind,
                "p": self.p,
                "n": self.n,
                "classes": self.total(),
                "per_distance": self.per_distance,
                "zero_code_convention": "the zero code is one class in the total and has no distance",
                "note": self.note,
            }
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    /// Human-readable listing.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} codes over E_{}, n={}: {} classes\n",
            self.kind,
            self.p,
            self.n,
            self.total()
        );
        let dist: Vec<String> = self
            .per_distance
            .iter()
            .map(|(d, c)| format!("N{d}={c}"))
            .collect();
        out.push_str(&format!("per distance: {}\n", dist.join(" ")));
        if let Some(note) = &self.note {
            out.push_str(&format!("note: {note}\n"));
        }
        for (i, r) in self.records.iter().enumerate() {
            let d = r.d.map_or("-".to_string(), |d| d.to_string());
            out.push_str(&format!(
                "\n#{} d={} m1={} m2={} {}\n",
                i + 1,
                d,
                r.m1,
                r.m2,
                r.mds_status
            ));
            for row in r.representative.rows() {
                out.push_str(&format!("  {row}\n"));
            }
        }
        out
    }
}

/// Worker count and length limits for a classification run.
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// `0` uses the global rayon pool.
    pub workers: usize,
    /// Refuse lengths beyond this.
    pub budget: Budget,
    /// Above this length canonical forms are replaced by pairwise equivalence tests.
    pub canonical_budget: Budget,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            workers: 0,
            budget: CLASSIFY_BUDGET,
            canonical_budget: Budget::CANONICAL,
        }
    }
}

impl ClassifyOptions {
    pub fn with_workers(workers: usize) -> Self {
        ClassifyOptions {
            workers,
            ..Default::default()
        }
    }

    /// Lifts the refusal limit; the algorithms themselves take any `n`.
    pub fn forced(mut self) -> Self {
        self.budget = Budget::UNLIMITED;
        self
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        if self.workers == 0 {
            job()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .expect("thread pool")
                .install(job)
        }
    }
}

/// Collects the equivalence classes of the codes `build(R)` for subspaces `R`
/// of the given dimensions passing `keep`.
fn classify_by<F, B>(
    p: Prime,
    n: usize,
    dims: impl Iterator<Item = usize>,
    opts: &ClassifyOptions,
    keep: F,
    build: B,
) -> Vec<EpCode>
where
    F: Fn(&FpCode) -> bool + Sync,
    B: Fn(FpCode) -> EpCode + Sync,
{
    let patterns: Vec<Vec<usize>> = dims.flat_map(|k| pivot_patterns(n, k)).collect();
    let canonical = n <= opts.canonical_budget.max_n(p);
    opts.run(|| {
        if canonical {
            let merged = patterns
                .par_iter()
                .map(|pv| {
                    let mut local = BTreeMap::new();
                    for r in subspaces_with_pivots(p, n, pv).filter(|r| keep(r)) {
                        let code = build(r);
                        let cf = canonical_form(&[code.residue().clone(), code.torsion().clone()]);
                        local.entry(cf.key).or_insert_with(|| {
                            let mut it = cf.codes.into_iter();
                            let (res, tor) = (it.next().unwrap(), it.next().unwrap());
                            EpCode::from_parts(res, tor).unwrap()
                        });
                    }
                    local
                })
                .reduce(BTreeMap::new, |mut a, b| {
                    for (k, v) in b {
                        a.entry(k).or_insert(v);
                    }
                    a
                });
            merged.into_values().collect()
        } else {
            let codes: Vec<EpCode> = patterns
                .par_iter()
                .flat_map_iter(|pv| {
                    subspaces_with_pivots(p, n, pv)
                        .filter(|r| keep(r))
                        .map(&build)
                        .collect::<Vec<_>>()
                })
                .collect();
            dedup_pairwise(codes)
        }
    })
}

/// Equivalence classes by invariant bucketing and pairwise search; keeps the
/// first member of each class in input order.
fn dedup_pairwise(codes: Vec<EpCode>) -> Vec<EpCode> {
    type Invariants = (usize, usize, Vec<u64>, Vec<u64>);
    let mut buckets: BTreeMap<Invariants, Vec<EpCode>> = BTreeMap::new();
    for c in codes {
        let inv = (
            c.m1(),
            c.m2(),
            c.residue().weight_enumerator(),
            c.torsion().weight_enumerator(),
        );
        let bucket = buckets.entry(inv).or_default();
        if !bucket.iter().any(|rep| equivalent_ep(rep, &c).is_some()) {
            bucket.push(c);
        }
    }
    buckets.into_values().flatten().collect()
}

fn finish(kind: Kind, p: Prime, n: usize, codes: Vec<EpCode>, note: Option<String>) -> Classification {
    let records: Vec<ClassRecord> = codes.iter().map(ClassRecord::from_code).collect();
    let mut per_distance = BTreeMap::new();
    for r in &records {
        if let Some(d) = r.d {
            *per_distance.entry(d).or_insert(0) += 1;
        }
    }
    Classification {
        kind,
        p,
        n,
        records,
        per_distance,
        note,
    }
}

/// All LCD codes over `E_p` of length `n` up to monomial equivalence.
///
/// These are the codes `<r G>` with `G` generating an LCD code over `F_p`,
/// and two of them are equivalent exactly when their residues are.
pub fn classify_lcd(p: Prime, n: usize, opts: &ClassifyOptions) -> Result<Classification> {
    opts.budget.check("classification", p, n)?;
    let codes = classify_by(p, n, 0..=n, opts, FpCode::is_lcd, EpCode::free);
    Ok(finish(Kind::Lcd, p, n, codes, None))
}

/// The MDS and AMDS members of [`classify_lcd`].
pub fn classify_mds_amds_lcd(p: Prime, n: usize, opts: &ClassifyOptions) -> Result<Classification> {
    opts.budget.check("classification", p, n)?;
    let codes = classify_by(
        p,
        n,
        0..=n,
        opts,
        |r| r.is_lcd() && r.mds_status() != MdsStatus::Neither,
        EpCode::free,
    );
    Ok(finish(Kind::MdsAmdsLcd, p, n, codes, None))
}

/// All left self-dual codes: free codes with a self-dual residue.
pub fn classify_left_self_dual(p: Prime, n: usize, opts: &ClassifyOptions) -> Result<Classification> {
    opts.budget.check("classification", p, n)?;
    if n % 2 == 1 {
        return Ok(finish(
            Kind::LeftSelfDual,
            p,
            n,
            Vec::new(),
            Some("odd length: a self-dual residue needs k = n/2".into()),
        ));
    }
    let codes = classify_by(
        p,
        n,
        std::iter::once(n / 2),
        opts,
        FpCode::is_self_dual,
        EpCode::free,
    );
    Ok(finish(Kind::LeftSelfDual, p, n, codes, None))
}

/// All self-dual codes `(R, R^⊥)` with `R` self-orthogonal.
pub fn classify_self_dual(p: Prime, n: usize, opts: &ClassifyOptions) -> Result<Classification> {
    opts.budget.check("classification", p, n)?;
    let codes = classify_by(
        p,
        n,
        0..=n / 2,
        opts,
        FpCode::is_self_orthogonal,
        |r| {
            let t = r.dual();
            EpCode::from_parts(r, t).expect("self-orthogonal")
        },
    );
    Ok(finish(Kind::SelfDual, p, n, codes, None))
}

pub fn classify(kind: Kind, p: Prime, n: usize, opts: &ClassifyOptions) -> Result<Classification> {
    match kind {
        Kind::Lcd => classify_lcd(p, n, opts),
        Kind::MdsAmdsLcd => classify_mds_amds_lcd(p, n, opts),
        Kind::LeftSelfDual => classify_left_self_dual(p, n, opts),
        Kind::SelfDual => classify_self_dual(p, n, opts),
    }
}

/// Summary of the right self-dual code of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightSelfDualReport {
    pub record: ClassRecord,
    /// Set when every code of length `n` was checked and `t F_p^n` is the only right self-dual one.
    pub unique_verified: Option<bool>,
}

/// Reports on `t F_p^n`; for `n <= 2` also checks exhaustively that no other
/// code is right self-dual.
pub fn right_self_dual_report(p: Prime, n: usize) -> RightSelfDualReport {
    let code = EpCode::torsion_space(p, n);
    let unique_verified = (n <= 2).then(|| {
        enumerate_ep_codes(p, n)
            .iter()
            .filter(|c| c.is_right_self_dual_definitional())
            .eq(std::iter::once(&code))
    });
    RightSelfDualReport {
        record: ClassRecord::from_code(&code),
        unique_verified,
    }
}

/// Lower bound on the number of inequivalent LCD codes over `E_3`:
/// `sum_m ceil(phi(n, m) / (2^(n-1) n!))`, with `phi(n, m)` the number of
/// ternary LCD codes of dimension `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub n: usize,
    pub phi: Vec<u64>,
    pub denominator: u64,
    pub bound: u64,
}

pub fn ternary_lcd_lower_bound(n: usize) -> LowerBound {
    let p = Prime::THREE;
    let phi: Vec<u64> = (0..=n)
        .map(|m| enumerate_subspaces(p, n, m).filter(FpCode::is_lcd).count() as u64)
        .collect();
    let factorial: u64 = (1..=n as u64).product();
    let denominator = (1u64 << (n.max(1) - 1)) * factorial;
    let bound = phi.iter().map(|&f| f.div_ceil(denominator)).sum();
    LowerBound {
        n,
        phi,
        denominator,
        bound,
    }
}
