//! Monomial equivalence and canonical forms.
//!
//! A monomial matrix over `E_p` with entries `e_j` outside the maximal ideal
//! acts on codewords by `x -> x M`, and `x e = alpha(e) x` reduces that to
//! the `F_p` monomial map with scales `alpha(e_j)` acting on both the residue
//! and the torsion code. All searches therefore run over tuples of `F_p`
//! codes transformed by one shared map.
//!
//! Both the equivalence search and the canonical form place image columns
//! one at a time while maintaining a partially reduced basis: after `j`
//! columns are placed, the first `j` columns of the RREF of the image code
//! are already fixed, so a candidate is pruned as soon as its column differs
//! from the target (search) or exceeds the best known column (canonical form).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::ep_code::{EpCode, EpVec};
use crate::ep_ring::EpElem;
use crate::error::{Error, Result};
use crate::fp_linalg::{FpCode, Prime};

/// Permutation plus per-coordinate scaling over `F_p`.
///
/// Source coordinate `i` is sent to `perm[i]` and multiplied by
/// `scale[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMapFp {
    p: Prime,
    perm: Vec<usize>,
    scale: Vec<u8>,
}

fn check_perm(perm: &[usize]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &j in perm {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::BadPermutation(n));
        }
    }
    Ok(())
}

impl MonomialMapFp {
    pub fn new(p: Prime, perm: Vec<usize>, scale: Vec<u8>) -> Result<Self> {
        check_perm(&perm)?;
        if scale.len() != perm.len() {
            return Err(Error::LengthMismatch {
                expected: perm.len(),
                found: scale.len(),
            });
        }
        p.check_entries(&scale)?;
        if let Some(j) = scale.iter().position(|&s| s == 0) {
            return Err(Error::ScaleInIdeal(j));
        }
        Ok(MonomialMapFp { p, perm, scale })
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        MonomialMapFp {
            p,
            perm: (0..n).collect(),
            scale: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &[u8] {
        &self.scale
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j) && self.scale.iter().all(|&s| s == 1)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &MonomialMapFp) -> MonomialMapFp {
        let p = self.p;
        let n = self.len();
        let mut perm = vec![0; n];
        let mut scale = vec![0; n];
        for i in 0..n {
            let mid = first.perm[i];
            let dst = self.perm[mid];
            perm[i] = dst;
            scale[dst] = p.mul(self.scale[dst], first.scale[mid]);
        }
        MonomialMapFp { p, perm, scale }
    }

    pub fn inverse(&self) -> MonomialMapFp {
        let p = self.p;
        let n = self.len();
        let mut perm = vec![0; n];
        let mut scale = vec![0; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            scale[i] = p.inv(self.scale[j]);
        }
        MonomialMapFp { p, perm, scale }
    }

    pub fn apply_vec(&self, x: &[u8]) -> Vec<u8> {
        let mut y = vec![0; x.len()];
        for (i, &xi) in x.iter().enumerate() {
            let j = self.perm[i];
            y[j] = self.p.mul(self.scale[j], xi);
        }
        y
    }

    pub fn apply(&self, c: &FpCode) -> Result<FpCode> {
        if c.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: c.len(),
            });
        }
        if c.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.p.get(), c.modulus().get()));
        }
        Ok(self.apply_unchecked(c))
    }

    fn apply_unchecked(&self, c: &FpCode) -> FpCode {
        let rows = c.basis().iter().map(|r| self.apply_vec(r)).collect();
        FpCode::from_rows_unchecked(self.p, c.len(), rows)
    }

    /// Every element of the monomial group of length `n`; `(p-1)^n n!` maps.
    pub fn all(p: Prime, n: usize) -> Vec<MonomialMapFp> {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        let units = (p.get() - 1) as usize;
        let mut out = Vec::new();
        for perm in perms {
            for code in 0..units.pow(n as u32) {
                let mut c = code;
                let scale = (0..n)
                    .map(|_| {
                        let s = (c % units) as u8 + 1;
                        c /= units;
                        s
                    })
                    .collect();
                out.push(MonomialMapFp {
                    p,
                    perm: perm.clone(),
                    scale,
                });
            }
        }
        out
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Monomial matrix over `E_p`; every scale lies outside the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMapEp {
    perm: Vec<usize>,
    scale: Vec<EpElem>,
}

impl MonomialMapEp {
    pub fn new(perm: Vec<usize>, scale: Vec<EpElem>) -> Result<Self> {
        check_perm(&perm)?;
        if scale.len() != perm.len() {
            return Err(Error::LengthMismatch {
                expected: perm.len(),
                found: scale.len(),
            });
        }
        if let Some(j) = scale.iter().position(|e| e.in_max_ideal()) {
            return Err(Error::ScaleInIdeal(j));
        }
        Ok(MonomialMapEp { perm, scale })
    }

    /// `M r` for an `F_p` monomial matrix `M`.
    pub fn lift(m: &MonomialMapFp) -> Self {
        MonomialMapEp {
            perm: m.perm.clone(),
            scale: m.scale.iter().map(|&u| EpElem::r(m.p).scaled(u)).collect(),
        }
    }

    /// The induced `F_p` map with scales `alpha(e_j)`.
    pub fn reduce(&self) -> MonomialMapFp {
        MonomialMapFp {
            p: self.scale.first().map_or(Prime::TWO, |e| e.modulus()),
            perm: self.perm.clone(),
            scale: self.scale.iter().map(|e| e.alpha_raw()).collect(),
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &[EpElem] {
        &self.scale
    }

    /// `x M`, computed entry by entry in the ring.
    pub fn apply_vec(&self, x: &EpVec) -> EpVec {
        let p = x.modulus();
        let mut y = vec![EpElem::zero(p); x.len()];
        for (i, &xi) in x.entries().iter().enumerate() {
            let j = self.perm[i];
            y[j] = xi * self.scale[j];
        }
        EpVec::new(p, y).expect("same modulus")
    }

    pub fn apply(&self, c: &EpCode) -> Result<EpCode> {
        if c.len() != self.perm.len() {
            return Err(Error::LengthMismatch {
                expected: self.perm.len(),
                found: c.len(),
            });
        }
        let mut m = self.reduce();
        m.p = c.modulus();
        EpCode::from_parts(m.apply(c.residue())?, m.apply(c.torsion())?)
    }
}

/// Canonicalization and classification limits on the length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_n_binary: usize,
    pub max_n_ternary: usize,
    pub max_n_other: usize,
}

impl Budget {
    pub const CANONICAL: Budget = Budget {
        max_n_binary: 10,
        max_n_ternary: 6,
        max_n_other: 4,
    };

    pub const UNLIMITED: Budget = Budget {
        max_n_binary: usize::MAX,
        max_n_ternary: usize::MAX,
        max_n_other: usize::MAX,
    };

    pub fn max_n(&self, p: Prime) -> usize {
        match p.get() {
            2 => self.max_n_binary,
            3 => self.max_n_ternary,
            _ => self.max_n_other,
        }
    }

    pub fn check(&self, what: &'static str, p: Prime, n: usize) -> Result<()> {
        let max = self.max_n(p);
        if n > max {
            Err(Error::BudgetExceeded {
                what,
                p: p.get(),
                n,
                max,
            })
        } else {
            Ok(())
        }
    }
}

/// Partial image: the columns placed so far plus the row-reduced state of
/// the columns still to be placed.
#[derive(Clone)]
struct Frame {
    /// `cols[code][coord]`: column `coord` of `code` after the row operations so far.
    cols: Vec<Vec<Vec<u8>>>,
    rank: Vec<usize>,
    remaining: Vec<usize>,
    placed: Vec<(usize, u8)>,
}

impl Frame {
    fn new(codes: &[FpCode]) -> Self {
        let n = codes[0].len();
        let cols = codes
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| c.basis().iter().map(|row| row[j]).collect())
                    .collect()
            })
            .collect();
        Frame {
            cols,
            rank: vec![0; codes.len()],
            remaining: (0..n).collect(),
            placed: Vec::new(),
        }
    }

    /// The next RREF column produced by placing `coord` scaled by `lambda`.
    fn peek(&self, p: Prime, coord: usize, lambda: u8, out: &mut Vec<u8>) {
        out.clear();
        for (cols, &rank) in self.cols.iter().zip(&self.rank) {
            let v = &cols[coord];
            if v[rank..].iter().any(|&x| x != 0) {
                out.extend((0..v.len()).map(|h| (h == rank) as u8));
            } else {
                out.extend(v.iter().map(|&x| p.mul(x, lambda)));
            }
        }
    }

    fn place(&self, p: Prime, coord: usize, lambda: u8) -> Frame {
        let mut f = self.clone();
        f.remaining.retain(|&c| c != coord);
        f.placed.push((coord, lambda));
        for (cols, rank) in f.cols.iter_mut().zip(f.rank.iter_mut()) {
            let mut v = std::mem::take(&mut cols[coord]);
            p.scale(&mut v, lambda);
            let Some(q) = (*rank..v.len()).find(|&h| v[h] != 0) else {
                continue;
            };
            let rk = *rank;
            let inv = p.inv(v[q]);
            for &c in &f.remaining {
                let w = &mut cols[c];
                w.swap(q, rk);
                w[rk] = p.mul(w[rk], inv);
            }
            v.swap(q, rk);
            v[rk] = 1;
            for (h, &f_h) in v.iter().enumerate() {
                if h == rk || f_h == 0 {
                    continue;
                }
                for &c in &f.remaining {
                    let w = &mut cols[c];
                    w[h] = p.sub(w[h], p.mul(f_h, w[rk]));
                }
            }
            *rank += 1;
        }
        f
    }

    /// The remaining columns of `coord`, jointly scaled so the first nonzero is 1.
    fn normalized(&self, p: Prime, coord: usize) -> Vec<u8> {
        let mut v: Vec<u8> = self.cols.iter().flat_map(|c| c[coord].iter().copied()).collect();
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            p.scale(&mut v, p.inv(lead));
        }
        v
    }

    /// Everything the rest of the search depends on: the multiset of
    /// remaining columns up to scaling.
    fn signature(&self, p: Prime) -> Vec<Vec<u8>> {
        let mut sig: Vec<Vec<u8>> = self.remaining.iter().map(|&c| self.normalized(p, c)).collect();
        sig.sort_unstable();
        sig
    }

    /// One coordinate per distinct remaining column class, with the scales
    /// worth trying for it.
    fn candidates(&self, p: Prime) -> Vec<(usize, bool)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &c in &self.remaining {
            let norm = self.normalized(p, c);
            let zero = norm.iter().all(|&x| x == 0);
            if seen.insert(norm) {
                out.push((c, zero));
            }
        }
        out
    }

    fn map(&self, p: Prime) -> MonomialMapFp {
        let n = self.placed.len();
        let mut perm = vec![0; n];
        let mut scale = vec![0; n];
        for (j, &(c, lambda)) in self.placed.iter().enumerate() {
            perm[c] = j;
            scale[j] = lambda;
        }
        MonomialMapFp { p, perm, scale }
    }
}

fn check_tuple(codes: &[FpCode]) -> (Prime, usize) {
    let p = codes[0].modulus();
    let n = codes[0].len();
    assert!(
        codes.iter().all(|c| c.modulus() == p && c.len() == n),
        "codes must share p and n"
    );
    (p, n)
}

/// A canonical representative of a tuple of codes under a shared monomial map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `p, n, #codes, dims...` followed by the image RREF columns, code by code within each column.
    pub key: Vec<u8>,
    /// Sends the input codes to `codes`.
    pub map: MonomialMapFp,
    pub codes: Vec<FpCode>,
}

/// Lexicographically least column-major RREF image over the monomial group.
///
/// Level by level, only the partial images whose column prefix equals the
/// smallest one seen survive, and partial images with the same multiset of
/// remaining columns are merged.
pub fn canonical_form(codes: &[FpCode]) -> CanonicalForm {
    let (p, n) = check_tuple(codes);
    let mut key = vec![p.get(), n as u8, codes.len() as u8];
    key.extend(codes.iter().map(|c| c.dim() as u8));

    let mut frames = vec![Frame::new(codes)];
    let mut column = Vec::new();
    let mut best = Vec::new();
    for _ in 0..n {
        let mut next: Vec<Frame> = Vec::new();
        let mut sigs = HashSet::new();
        let mut have_best = false;
        for frame in &frames {
            for (c, zero) in frame.candidates(p) {
                let scales = if zero { 1 } else { p.get() - 1 };
                for lambda in 1..=scales {
                    frame.peek(p, c, lambda, &mut column);
                    if have_best {
                        match column.cmp(&best) {
                            std::cmp::Ordering::Greater => continue,
                            std::cmp::Ordering::Less => {
                                next.clear();
                                sigs.clear();
                            }
                            std::cmp::Ordering::Equal => {}
                        }
                    }
                    have_best = true;
                    best.clone_from(&column);
                    let child = frame.place(p, c, lambda);
                    if sigs.insert(child.signature(p)) {
                        next.push(child);
                    }
                }
            }
        }
        key.extend_from_slice(&best);
        frames = next;
    }

    let frame = frames.swap_remove(0);
    let map = frame.map(p);
    let canon = codes.iter().map(|c| map.apply_unchecked(c)).collect();
    CanonicalForm {
        key,
        map,
        codes: canon,
    }
}

/// A monomial map sending each `src[i]` onto `dst[i]`, if one exists.
pub fn find_monomial_map(src: &[FpCode], dst: &[FpCode]) -> Option<MonomialMapFp> {
    let (p, n) = check_tuple(src);
    if src.len() != dst.len()
        || dst.iter().any(|c| c.modulus() != p || c.len() != n)
        || src.iter().zip(dst).any(|(a, b)| a.dim() != b.dim())
    {
        return None;
    }
    let targets: Vec<Vec<u8>> = (0..n)
        .map(|j| {
            dst.iter()
                .flat_map(|c| c.basis().iter().map(move |row| row[j]))
                .collect()
        })
        .collect();
    let mut dead = HashSet::new();
    search(p, &Frame::new(src), &targets, &mut dead)
}

fn search(
    p: Prime,
    frame: &Frame,
    targets: &[Vec<u8>],
    dead: &mut HashSet<Vec<Vec<u8>>>,
) -> Option<MonomialMapFp> {
    let depth = frame.placed.len();
    if depth == targets.len() {
        return Some(frame.map(p));
    }
    let sig = frame.signature(p);
    if dead.contains(&sig) {
        return None;
    }
    let mut column = Vec::new();
    for (c, zero) in frame.candidates(p) {
        let scales = if zero { 1 } else { p.get() - 1 };
        for lambda in 1..=scales {
            frame.peek(p, c, lambda, &mut column);
            if column != targets[depth] {
                continue;
            }
            let child = frame.place(p, c, lambda);
            if let Some(m) = search(p, &child, targets, dead) {
                return Some(m);
            }
        }
    }
    dead.insert(sig);
    None
}

/// Invariants that any equivalent pair must share.
fn fp_invariants(c: &FpCode) -> (usize, Vec<u64>, Vec<u64>) {
    (c.dim(), c.weight_enumerator(), c.dual().weight_enumerator())
}

/// A witness map `m` with `m(c1) = c2`, or `None` if the codes are inequivalent.
pub fn equivalent_fp(c1: &FpCode, c2: &FpCode) -> Option<MonomialMapFp> {
    if c1.modulus() != c2.modulus() || c1.len() != c2.len() {
        return None;
    }
    if fp_invariants(c1) != fp_invariants(c2) {
        return None;
    }
    find_monomial_map(std::slice::from_ref(c1), std::slice::from_ref(c2))
}

/// A witness monomial matrix over `E_p` sending `c1` onto `c2`.
///
/// Free codes reduce to their residues; otherwise the residue and torsion
/// codes are matched by one shared map.
pub fn equivalent_ep(c1: &EpCode, c2: &EpCode) -> Option<MonomialMapEp> {
    if c1.modulus() != c2.modulus() || c1.len() != c2.len() || c1.is_free() != c2.is_free() {
        return None;
    }
    if c1.is_free() {
        return equivalent_fp(c1.residue(), c2.residue()).map(|m| MonomialMapEp::lift(&m));
    }
    if fp_invariants(c1.residue()) != fp_invariants(c2.residue())
        || fp_invariants(c1.torsion()) != fp_invariants(c2.torsion())
    {
        return None;
    }
    find_monomial_map(
        &[c1.residue().clone(), c1.torsion().clone()],
        &[c2.residue().clone(), c2.torsion().clone()],
    )
    .map(|m| MonomialMapEp::lift(&m))
}

/// Canonical key of an `F_p` code: equal keys exactly for equivalent codes.
pub fn canonical_key_fp(c: &FpCode, budget: &Budget) -> Result<Vec<u8>> {
    budget.check("canonicalization", c.modulus(), c.len())?;
    Ok(canonical_form(std::slice::from_ref(c)).key)
}

/// Canonical key of an `E_p` code, built from its residue/torsion pair.
pub fn canonical_key(c: &EpCode, budget: &Budget) -> Result<Vec<u8>> {
    budget.check("canonicalization", c.modulus(), c.len())?;
    Ok(canonical_form(&[c.residue().clone(), c.torsion().clone()]).key)
}
