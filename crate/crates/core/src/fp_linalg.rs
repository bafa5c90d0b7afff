//! Exact linear algebra over a small prime field `F_p`.
//!
//! Vectors are plain byte slices holding residues in `0..p`; the field is
//! carried separately as a [`Prime`]. Subspaces are held as [`FpCode`]
//! values whose basis is always in reduced row-echelon form, so two codes
//! are equal exactly when their bases are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_PRIME: u32 = 13;

/// A validated prime modulus `p <= 13`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u8);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Prime(p as u8))
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0 && a < self.0, "no inverse of {a} mod {}", self.0);
        (1..self.0).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }

    /// Nonzero residues `1..p`.
    pub fn units(self) -> impl Iterator<Item = u8> {
        1..self.0
    }

    pub fn dot(self, a: &[u8], b: &[u8]) -> u8 {
        let s: u32 = a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum();
        (s % self.0 as u32) as u8
    }

    /// `dst += c * src`, elementwise.
    pub fn axpy(self, dst: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    pub fn scale(self, v: &mut [u8], c: u8) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub(crate) fn check_entries(self, v: &[u8]) -> Result<()> {
        match v.iter().find(|&&x| x >= self.0) {
            Some(&x) => Err(Error::EntryOutOfRange {
                value: x as u32,
                p: self.0,
            }),
            None => Ok(()),
        }
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0 as u32
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A single element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u8,
    p: Prime,
}

impl FpScalar {
    pub fn new(value: i64, p: Prime) -> Self {
        FpScalar {
            value: p.reduce(value),
            p,
        }
    }

    pub fn zero(p: Prime) -> Self {
        FpScalar { value: 0, p }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            value: self.p.inv(self.value),
            p: self.p,
        })
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        FpScalar {
            value: self.p.add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        FpScalar {
            value: self.p.sub(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        FpScalar {
            value: self.p.mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar {
            value: self.p.neg(self.value),
            p: self.p,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// A vector of `F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVec {
    p: Prime,
    entries: Vec<u8>,
}

impl FpVec {
    pub fn new(p: Prime, entries: Vec<u8>) -> Result<Self> {
        p.check_entries(&entries)?;
        Ok(FpVec { p, entries })
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        FpVec {
            p,
            entries: vec![0; n],
        }
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> FpScalar {
        FpScalar {
            value: self.entries[i],
            p: self.p,
        }
    }

    pub fn weight(&self) -> usize {
        weight(&self.entries)
    }

    pub fn dot(&self, other: &FpVec) -> Result<FpScalar> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(FpScalar {
            value: self.p.dot(&self.entries, &other.entries),
            p: self.p,
        })
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }
}

/// Hamming weight of a residue vector.
pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// A `k x n` matrix over `F_p`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMat {
    p: Prime,
    ncols: usize,
    rows: Vec<Vec<u8>>,
}

impl FpMat {
    pub fn new(p: Prime, ncols: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            p.check_entries(row)?;
        }
        Ok(FpMat { p, ncols, rows })
    }

    pub fn from_vecs(p: Prime, ncols: usize, vecs: &[FpVec]) -> Result<Self> {
        for v in vecs {
            if v.p != p {
                return Err(Error::ModulusMismatch(p.get(), v.p.get()));
            }
        }
        FpMat::new(p, ncols, vecs.iter().map(|v| v.entries.clone()).collect())
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        FpMat { p, ncols: n, rows }
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<u8>> {
        self.rows
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &FpMat) -> FpMat {
        let rows = self
            .rows
            .iter()
            .map(|a| other.rows.iter().map(|b| self.p.dot(a, b)).collect())
            .collect();
        FpMat {
            p: self.p,
            ncols: other.rows.len(),
            rows,
        }
    }
}

/// Result of Gaussian elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form with zero rows dropped.
pub fn rref(m: &FpMat) -> Rref {
    let (rows, pivots) = rref_rows(m.p, m.ncols, m.rows.clone());
    Rref {
        rank: rows.len(),
        matrix: FpMat {
            p: m.p,
            ncols: m.ncols,
            rows,
        },
        pivots,
    }
}

pub(crate) fn rref_rows(p: Prime, ncols: usize, mut rows: Vec<Vec<u8>>) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = p.inv(rows[rank][col]);
        p.scale(&mut rows[rank], inv);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = p.neg(row[col]);
                p.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Code parameters shared by the MDS/AMDS classification over both alphabets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MdsStatus {
    Mds,
    Amds,
    Neither,
}

impl fmt::Display for MdsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MdsStatus::Mds => "MDS",
            MdsStatus::Amds => "AMDS",
            MdsStatus::Neither => "NEITHER",
        })
    }
}

/// A linear code over `F_p`: a subspace of `F_p^n` held by its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpCode {
    p: Prime,
    n: usize,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl FpCode {
    /// Row space of the given generators.
    pub fn from_generators(p: Prime, n: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        let m = FpMat::new(p, n, rows)?;
        Ok(Self::from_mat(&m))
    }

    pub fn from_mat(m: &FpMat) -> Self {
        Self::from_rows_unchecked(m.p, m.ncols, m.rows.clone())
    }

    pub(crate) fn from_rows_unchecked(p: Prime, n: usize, rows: Vec<Vec<u8>>) -> Self {
        let (basis, pivots) = rref_rows(p, n, rows);
        FpCode {
            p,
            n,
            basis,
            pivots,
        }
    }

    /// Wraps rows already known to be in RREF.
    pub(crate) fn from_rref_unchecked(p: Prime, n: usize, basis: Vec<Vec<u8>>) -> Self {
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("zero row in RREF"))
            .collect();
        FpCode {
            p,
            n,
            basis,
            pivots,
        }
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        FpCode {
            p,
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: Prime, n: usize) -> Self {
        FpCode {
            p,
            n,
            basis: FpMat::identity(p, n).rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn generator_matrix(&self) -> FpMat {
        FpMat {
            p: self.p,
            ncols: self.n,
            rows: self.basis.clone(),
        }
    }

    fn check_compatible(&self, other: &FpCode) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &[u8]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if w[pc] != 0 {
                let c = self.p.neg(w[pc]);
                self.p.axpy(&mut w, c, row);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subcode_of(&self, other: &FpCode) -> bool {
        self.p == other.p && self.n == other.n && self.basis.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &FpCode) -> Result<FpCode> {
        self.check_compatible(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_rows_unchecked(self.p, self.n, rows))
    }

    pub fn intersect(&self, other: &FpCode) -> Result<FpCode> {
        self.check_compatible(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// The Euclidean dual `{x : x . c = 0 for all c}`.
    pub fn dual(&self) -> FpCode {
        let p = self.p;
        let free: Vec<usize> = (0..self.n).filter(|c| !self.pivots.contains(c)).collect();
        // For RREF [I | A] (up to column order) the dual is spanned by
        // e_f - sum_i A[i][f] e_{pivot_i} over the free columns f.
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u8; self.n];
                v[f] = 1;
                for (row, &pc) in self.basis.iter().zip(&self.pivots) {
                    v[pc] = p.neg(row[f]);
                }
                v
            })
            .collect();
        Self::from_rows_unchecked(p, self.n, rows)
    }

    /// Gram matrix `G G^T` of the RREF basis.
    pub fn gram(&self) -> FpMat {
        let g = self.generator_matrix();
        g.mul_transpose(&g)
    }

    pub fn hull(&self) -> FpCode {
        self.intersect(&self.dual()).expect("same parameters")
    }

    pub fn hull_dim(&self) -> usize {
        self.hull().dim()
    }

    /// LCD test through nonsingularity of the Gram matrix. The zero code is LCD.
    pub fn is_lcd(&self) -> bool {
        rref(&self.gram()).rank == self.dim()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let p = self.p;
        self.basis
            .iter()
            .enumerate()
            .all(|(i, a)| self.basis[i..].iter().all(|b| p.dot(a, b) == 0))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dim() == self.n && self.is_self_orthogonal()
    }

    /// Visits every codeword once, in message-space odometer order.
    pub fn for_each_codeword(&self, mut f: impl FnMut(&[u8])) {
        let p = self.p;
        let k = self.dim();
        let mut word = vec![0u8; self.n];
        let mut digits = vec![0u8; k];
        f(&word);
        loop {
            let mut i = 0;
            loop {
                if i == k {
                    return;
                }
                p.axpy(&mut word, 1, &self.basis[i]);
                digits[i] += 1;
                if digits[i] < p.get() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            f(&word);
        }
    }

    pub fn codewords(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        self.for_each_codeword(|w| out.push(w.to_vec()));
        out
    }

    /// `W[w]` = number of codewords of Hamming weight `w`, for `w = 0..=n`.
    pub fn weight_enumerator(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        if self.p == Prime::TWO && self.n <= 64 {
            // Gray-code walk over packed binary rows.
            let rows: Vec<u64> = self
                .basis
                .iter()
                .map(|r| r.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | ((x as u64) << i)))
                .collect();
            let mut word = 0u64;
            counts[0] += 1;
            for step in 1u64..(1u64 << rows.len()) {
                word ^= rows[step.trailing_zeros() as usize];
                counts[word.count_ones() as usize] += 1;
            }
        } else {
            self.for_each_codeword(|w| counts[weight(w)] += 1);
        }
        counts
    }

    /// Minimum nonzero weight; `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        self.weight_enumerator()
            .iter()
            .skip(1)
            .position(|&c| c > 0)
            .map(|i| i + 1)
    }

    pub fn mds_status(&self) -> MdsStatus {
        match self.min_distance() {
            None => MdsStatus::Neither,
            Some(d) => {
                let k = self.dim();
                if k + d == self.n + 1 {
                    MdsStatus::Mds
                } else if k + d == self.n {
                    MdsStatus::Amds
                } else {
                    MdsStatus::Neither
                }
            }
        }
    }
}

/// Gaussian binomial coefficient: number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}
