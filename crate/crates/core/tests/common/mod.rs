//! Brute-force oracles and random generators shared by the integration suites.
//!
//! The oracles work on explicit codeword sets and multiply ring elements by
//! expanding over the basis {r, s} with the defining relations, so they share
//! no code paths with the structural formulas under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use epcode::{EpCode, EpElem, EpGenMatrix, EpVec, FpCode, MonomialMapEp, MonomialMapFp, Prime};
use proptest::prelude::*;

pub type Words = BTreeSet<Vec<(u8, u8)>>;

pub fn primes() -> [Prime; 2] {
    [Prime::TWO, Prime::THREE]
}

/// `(i1 r + j1 s)(i2 r + j2 s)` expanded with `rr = r, rs = r, sr = s, ss = s`.
pub fn mul_expanded(p: Prime, x: (u8, u8), y: (u8, u8)) -> (u8, u8) {
    let (i1, j1) = (x.0 as u32, x.1 as u32);
    let (i2, j2) = (y.0 as u32, y.1 as u32);
    let q = p.get() as u32;
    let rr = i1 * i2;
    let rs = i1 * j2;
    let sr = j1 * i2;
    let ss = j1 * j2;
    (((rr + rs) % q) as u8, ((sr + ss) % q) as u8)
}

pub fn add_pair(p: Prime, x: (u8, u8), y: (u8, u8)) -> (u8, u8) {
    (p.add(x.0, y.0), p.add(x.1, y.1))
}

pub fn elements(p: Prime) -> Vec<(u8, u8)> {
    (0..p.get())
        .flat_map(|i| (0..p.get()).map(move |j| (i, j)))
        .collect()
}

pub fn word(v: &EpVec) -> Vec<(u8, u8)> {
    v.entries().iter().map(|e| (e.r_coeff(), e.s_coeff())).collect()
}

pub fn words(vs: &[EpVec]) -> Words {
    vs.iter().map(word).collect()
}

pub fn all_words(p: Prime, n: usize) -> Vec<Vec<(u8, u8)>> {
    let els = elements(p);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                els.iter().map(move |&e| {
                    let mut w = w.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Smallest set containing the generators and closed under addition and
/// left multiplication by every ring element.
pub fn closure(p: Prime, n: usize, gens: &[Vec<(u8, u8)>]) -> Words {
    let els = elements(p);
    let mut set: Words = BTreeSet::from([vec![(0, 0); n]]);
    let mut frontier: Vec<Vec<(u8, u8)>> = gens.to_vec();
    while let Some(w) = frontier.pop() {
        if !set.insert(w.clone()) {
            continue;
        }
        let mut new = Vec::new();
        for &e in &els {
            new.push(w.iter().map(|&x| mul_expanded(p, e, x)).collect::<Vec<_>>());
        }
        for other in &set {
            new.push(w.iter().zip(other).map(|(&a, &b)| add_pair(p, a, b)).collect());
        }
        frontier.extend(new.into_iter().filter(|v| !set.contains(v)));
    }
    set
}

/// The literal union of the E_p-span and the F_p-span of the generators.
pub fn union_of_spans(p: Prime, n: usize, gens: &[Vec<(u8, u8)>]) -> Words {
    let els = elements(p);
    let mut ep_span: Words = BTreeSet::from([vec![(0, 0); n]]);
    for g in gens {
        let multiples: Vec<Vec<(u8, u8)>> = els
            .iter()
            .map(|&e| g.iter().map(|&x| mul_expanded(p, e, x)).collect())
            .collect();
        ep_span = ep_span
            .iter()
            .flat_map(|w| {
                multiples
                    .iter()
                    .map(move |m| w.iter().zip(m).map(|(&a, &b)| add_pair(p, a, b)).collect())
            })
            .collect();
    }
    let mut fp_span: Words = BTreeSet::from([vec![(0, 0); n]]);
    for g in gens {
        fp_span = fp_span
            .iter()
            .flat_map(|w| {
                (0..p.get()).map(move |c| {
                    w.iter()
                        .zip(g)
                        .map(|(&a, &b)| add_pair(p, a, (p.mul(c, b.0), p.mul(c, b.1))))
                        .collect()
                })
            })
            .collect();
    }
    ep_span.union(&fp_span).cloned().collect()
}

pub fn inner(p: Prime, x: &[(u8, u8)], y: &[(u8, u8)]) -> (u8, u8) {
    x.iter()
        .zip(y)
        .fold((0, 0), |acc, (&a, &b)| add_pair(p, acc, mul_expanded(p, a, b)))
}

/// `{z : <z, w> = 0 for all w in C}`.
pub fn left_dual(p: Prime, n: usize, c: &Words) -> Words {
    all_words(p, n)
        .into_iter()
        .filter(|z| c.iter().all(|w| inner(p, z, w) == (0, 0)))
        .collect()
}

/// `{z : <w, z> = 0 for all w in C}`.
pub fn right_dual(p: Prime, n: usize, c: &Words) -> Words {
    all_words(p, n)
        .into_iter()
        .filter(|z| c.iter().all(|w| inner(p, w, z) == (0, 0)))
        .collect()
}

/// Image of every codeword under `x -> x M`, with `M` the monomial matrix of `m`.
pub fn transport(p: Prime, m: &MonomialMapEp, c: &Words) -> Words {
    let n = m.perm().len();
    c.iter()
        .map(|x| {
            let mut y = vec![(0, 0); n];
            for (i, &xi) in x.iter().enumerate() {
                let j = m.perm()[i];
                let e = m.scale()[j];
                y[j] = mul_expanded(p, xi, (e.r_coeff(), e.s_coeff()));
            }
            y
        })
        .collect()
}

pub fn min_weight(c: &Words) -> Option<usize> {
    c.iter()
        .map(|w| w.iter().filter(|&&e| e != (0, 0)).count())
        .filter(|&w| w > 0)
        .min()
}

pub fn to_matrix(p: Prime, n: usize, rows: &[Vec<(u8, u8)>]) -> EpGenMatrix {
    let rows = rows
        .iter()
        .map(|r| {
            EpVec::new(p, r.iter().map(|&(i, j)| EpElem::new(i as i64, j as i64, p)).collect())
                .unwrap()
        })
        .collect();
    EpGenMatrix::new(p, n, rows).unwrap()
}

pub fn fp(p: Prime, rows: &[&[u8]]) -> FpCode {
    let n = rows[0].len();
    FpCode::from_generators(p, n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn ep(text: &str) -> EpCode {
    EpCode::from_generators(&EpGenMatrix::parse(text).unwrap())
}

// ---- proptest strategies ----

pub fn prime_and_len(max2: usize, max3: usize) -> impl Strategy<Value = (Prime, usize)> {
    prop_oneof![
        (1..=max2).prop_map(|n| (Prime::TWO, n)),
        (1..=max3).prop_map(|n| (Prime::THREE, n)),
    ]
}

pub fn fp_rows(p: Prime, n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0..p.get(), n), 0..=max_rows)
}

pub fn arb_fp_code(p: Prime, n: usize) -> impl Strategy<Value = FpCode> {
    fp_rows(p, n, n).prop_map(move |rows| FpCode::from_generators(p, n, rows).unwrap())
}

/// A generator matrix with up to `max_rows` rows of arbitrary ring elements.
pub fn arb_matrix(p: Prime, n: usize, max_rows: usize) -> impl Strategy<Value = EpGenMatrix> {
    prop::collection::vec(prop::collection::vec((0..p.get(), 0..p.get()), n), 0..=max_rows)
        .prop_map(move |rows| to_matrix(p, n, &rows))
}

pub fn arb_code(p: Prime, n: usize) -> impl Strategy<Value = EpCode> {
    arb_matrix(p, n, n).prop_map(|g| EpCode::from_generators(&g))
}

pub fn arb_free_code(p: Prime, n: usize) -> impl Strategy<Value = EpCode> {
    arb_fp_code(p, n).prop_map(EpCode::free)
}

pub fn arb_map_fp(p: Prime, n: usize) -> impl Strategy<Value = MonomialMapFp> {
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(1..p.get(), n),
    )
        .prop_map(move |(perm, scale)| MonomialMapFp::new(p, perm, scale).unwrap())
}

pub fn arb_map_ep(p: Prime, n: usize) -> impl Strategy<Value = MonomialMapEp> {
    let units: Vec<EpElem> = EpElem::all(p).filter(|e| !e.in_max_ideal()).collect();
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(prop::sample::select(units), n),
    )
        .prop_map(|(perm, scale)| MonomialMapEp::new(perm, scale).unwrap())
}

/// Desk-scale sizes: `n <= 8` over `E_2`, `n <= 5` over `E_3`.
pub fn arb_sized_code() -> impl Strategy<Value = EpCode> {
    prime_and_len(8, 5).prop_flat_map(|(p, n)| arb_code(p, n))
}

pub fn arb_sized_free_code() -> impl Strategy<Value = EpCode> {
    prime_and_len(8, 5).prop_flat_map(|(p, n)| arb_free_code(p, n))
}
