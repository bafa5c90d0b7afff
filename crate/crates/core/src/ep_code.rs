//! Linear codes over `E_p`.
//!
//! Every left submodule `C` of `E_p^n` decomposes as `C = r R + t T` with
//! `R = Res(C)` and `T = Tor(C)` subspaces of `F_p^n` and `R ⊆ T`. An
//! [`EpCode`] stores exactly that pair; all duals, intersections and
//! predicates are computed on it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ep_ring::EpElem;
use crate::error::{Error, Result};
use crate::fp_linalg::{FpCode, MdsStatus, Prime};

/// A vector of `E_p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpVec {
    p: Prime,
    entries: Vec<EpElem>,
}

impl EpVec {
    pub fn new(p: Prime, entries: Vec<EpElem>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.modulus() != p) {
            return Err(Error::ModulusMismatch(p.get(), e.modulus().get()));
        }
        Ok(EpVec { p, entries })
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        EpVec {
            p,
            entries: vec![EpElem::zero(p); n],
        }
    }

    /// `r a + t b`, coordinatewise.
    pub fn from_t_adic(p: Prime, a: &[u8], b: &[u8]) -> Self {
        debug_assert_eq!(a.len(), b.len());
        EpVec {
            p,
            entries: a
                .iter()
                .zip(b)
                .map(|(&u, &v)| EpElem::from_t_adic(u, v, p))
                .collect(),
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

    pub fn entries(&self) -> &[EpElem] {
        &self.entries
    }

    /// Residue part: the `u`-components of the t-adic decomposition.
    pub fn a(&self) -> Vec<u8> {
        self.entries.iter().map(|e| e.t_adic_raw().0).collect()
    }

    /// Torsion part: the `v`-components of the t-adic decomposition.
    pub fn b(&self) -> Vec<u8> {
        self.entries.iter().map(|e| e.t_adic_raw().1).collect()
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// `<x, y> = sum x_j y_j`; not symmetric.
    pub fn inner(&self, other: &EpVec) -> EpElem {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(EpElem::zero(self.p), |acc, (&x, &y)| acc + x * y)
    }

    pub fn add(&self, other: &EpVec) -> EpVec {
        EpVec {
            p: self.p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&x, &y)| x + y)
                .collect(),
        }
    }

    /// Left multiplication `e * x`.
    pub fn left_mul(&self, e: EpElem) -> EpVec {
        EpVec {
            p: self.p,
            entries: self.entries.iter().map(|&x| e * x).collect(),
        }
    }
}

impl fmt::Display for EpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A `k x n` generator matrix over `E_p`, the input/output format for codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpGenMatrix {
    p: Prime,
    n: usize,
    rows: Vec<EpVec>,
}

impl EpGenMatrix {
    pub fn new(p: Prime, n: usize, rows: Vec<EpVec>) -> Result<Self> {
        for row in &rows {
            if row.p != p {
                return Err(Error::ModulusMismatch(p.get(), row.p.get()));
            }
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(EpGenMatrix { p, n, rows })
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[EpVec] {
        &self.rows
    }

    /// Parses the text format: a `p=<prime> n=<length>` header followed by
    /// one whitespace-separated row per line. Blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let Some((hline, header)) = lines.next() else {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "missing `p=<prime> n=<length>` header".into(),
            });
        };
        let (p, n) = parse_header(hline, header)?;
        let mut rows = Vec::new();
        for (row_idx, (lineno, line)) in lines.enumerate() {
            let mut entries = Vec::new();
            for (col, tok) in tokens(line) {
                let e = EpElem::parse(tok, p).map_err(|message| Error::Parse {
                    line: lineno,
                    column: col,
                    message,
                })?;
                entries.push(e);
            }
            if entries.len() != n {
                return Err(Error::RaggedRow {
                    row: row_idx + 1,
                    expected: n,
                    found: entries.len(),
                });
            }
            rows.push(EpVec { p, entries });
        }
        Ok(EpGenMatrix { p, n, rows })
    }

    /// Serializes the matrix in the format accepted by [`EpGenMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("p={} n={}\n", self.p, self.n);
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }
}

/// Serialized as a list of row strings.
impl Serialize for EpGenMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows().len()))?;
        for row in self.rows() {
            seq.serialize_element(&row.to_string())?;
        }
        seq.end()
    }
}

/// Whitespace-separated tokens with their 1-based column.
pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let tok = &tail[..len];
        let col = offset + start + 1;
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

fn parse_header(lineno: usize, line: &str) -> Result<(Prime, usize)> {
    let mut p = None;
    let mut n = None;
    for (col, tok) in tokens(line) {
        let err = |message: String| Error::Parse {
            line: lineno,
            column: col,
            message,
        };
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key=value`, found `{tok}`")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| err(format!("`{value}` is not an integer")))?;
        match key {
            "p" => p = Some(Prime::new(value)?),
            "n" => n = Some(value as usize),
            _ => return Err(err(format!("unknown header key `{key}`"))),
        }
    }
    match (p, n) {
        (Some(p), Some(n)) => Ok((p, n)),
        _ => Err(Error::Parse {
            line: lineno,
            column: 1,
            message: "header must give both `p=` and `n=`".into(),
        }),
    }
}

/// A linear code over `E_p`, held as its residue/torsion pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpCode {
    residue: FpCode,
    torsion: FpCode,
}

impl EpCode {
    /// The code `r R + t T`. Fails unless `R ⊆ T`.
    pub fn from_parts(residue: FpCode, torsion: FpCode) -> Result<Self> {
        if residue.modulus() != torsion.modulus() {
            return Err(Error::ModulusMismatch(
                residue.modulus().get(),
                torsion.modulus().get(),
            ));
        }
        if residue.len() != torsion.len() {
            return Err(Error::LengthMismatch {
                expected: residue.len(),
                found: torsion.len(),
            });
        }
        if !residue.is_subcode_of(&torsion) {
            return Err(Error::ResidueNotInTorsion);
        }
        Ok(EpCode { residue, torsion })
    }

    /// The free code `<r G>` with residue `R`.
    pub fn free(residue: FpCode) -> Self {
        EpCode {
            torsion: residue.clone(),
            residue,
        }
    }

    /// Smallest left submodule containing the rows: with each row split as
    /// `r a + t b`, the residue is `span{a}` and the torsion is `span{a, b}`.
    pub fn from_generators(g: &EpGenMatrix) -> Self {
        let a: Vec<Vec<u8>> = g.rows.iter().map(EpVec::a).collect();
        let b = g.rows.iter().map(EpVec::b);
        let residue = FpCode::from_rows_unchecked(g.p, g.n, a.clone());
        let torsion = FpCode::from_rows_unchecked(g.p, g.n, a.into_iter().chain(b).collect());
        EpCode { residue, torsion }
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        Self::free(FpCode::zero(p, n))
    }

    /// `E_p^n`.
    pub fn full(p: Prime, n: usize) -> Self {
        Self::free(FpCode::full(p, n))
    }

    /// `t F_p^n`.
    pub fn torsion_space(p: Prime, n: usize) -> Self {
        EpCode {
            residue: FpCode::zero(p, n),
            torsion: FpCode::full(p, n),
        }
    }

    pub fn modulus(&self) -> Prime {
        self.residue.modulus()
    }

    pub fn len(&self) -> usize {
        self.residue.len()
    }

    pub fn residue(&self) -> &FpCode {
        &self.residue
    }

    pub fn torsion(&self) -> &FpCode {
        &self.torsion
    }

    pub fn m1(&self) -> usize {
        self.residue.dim()
    }

    pub fn m2(&self) -> usize {
        self.torsion.dim() - self.residue.dim()
    }

    pub fn is_free(&self) -> bool {
        self.m2() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.is_zero()
    }

    /// `log_p |C| = 2 m1 + m2`.
    pub fn cardinality_exp(&self) -> usize {
        self.residue.dim() + self.torsion.dim()
    }

    /// Rows `r * (basis of R)` followed by `t * (basis of a complement of R in T)`.
    pub fn generator_matrix(&self) -> EpGenMatrix {
        let p = self.modulus();
        let n = self.len();
        let zeros = vec![0u8; n];
        let mut rows: Vec<EpVec> = self
            .residue
            .basis()
            .iter()
            .map(|a| EpVec::from_t_adic(p, a, &zeros))
            .collect();
        let mut span = self.residue.clone();
        for b in self.torsion.basis() {
            if !span.contains(b) {
                rows.push(EpVec::from_t_adic(p, &zeros, b));
                span = FpCode::from_rows_unchecked(
                    p,
                    n,
                    span.basis().iter().cloned().chain([b.clone()]).collect(),
                );
            }
        }
        EpGenMatrix { p, n, rows }
    }

    pub fn contains(&self, x: &EpVec) -> bool {
        x.len() == self.len() && self.residue.contains(&x.a()) && self.torsion.contains(&x.b())
    }

    pub fn is_subcode_of(&self, other: &EpCode) -> bool {
        self.residue.is_subcode_of(&other.residue) && self.torsion.is_subcode_of(&other.torsion)
    }

    /// All `p^(2 m1 + m2)` codewords.
    pub fn codewords(&self) -> Vec<EpVec> {
        let p = self.modulus();
        let rs = self.residue.codewords();
        let ts = self.torsion.codewords();
        rs.iter()
            .flat_map(|a| ts.iter().map(move |b| EpVec::from_t_adic(p, a, b)))
            .collect()
    }

    /// `{z : <z, w> = 0 for all w in C}` = `(R^⊥, R^⊥)`.
    pub fn left_dual(&self) -> EpCode {
        Self::free(self.residue.dual())
    }

    /// `{z : <w, z> = 0 for all w in C}` = `(T^⊥, F_p^n)`.
    pub fn right_dual(&self) -> EpCode {
        EpCode {
            residue: self.torsion.dual(),
            torsion: FpCode::full(self.modulus(), self.len()),
        }
    }

    pub fn intersect(&self, other: &EpCode) -> Result<EpCode> {
        Ok(EpCode {
            residue: self.residue.intersect(&other.residue)?,
            torsion: self.torsion.intersect(&other.torsion)?,
        })
    }

    pub fn is_left_nice(&self) -> bool {
        self.cardinality_exp() + self.left_dual().cardinality_exp() == 2 * self.len()
    }

    pub fn is_right_nice(&self) -> bool {
        self.cardinality_exp() + self.right_dual().cardinality_exp() == 2 * self.len()
    }

    /// Left LCD: free with an LCD residue.
    pub fn is_lcd(&self) -> bool {
        self.is_free() && self.residue.is_lcd()
    }

    /// Left LCD straight from the definition: left nice and `C ∩ C^⊥L = 0`.
    pub fn is_lcd_definitional(&self) -> bool {
        self.is_left_nice() && self.intersect(&self.left_dual()).unwrap().is_zero()
    }

    /// Right LCD from the definition. Holds only for the zero code.
    pub fn is_right_lcd(&self) -> bool {
        self.is_right_nice() && self.intersect(&self.right_dual()).unwrap().is_zero()
    }

    /// Free with a self-dual residue.
    pub fn is_left_self_dual(&self) -> bool {
        self.is_free() && self.residue.is_self_dual()
    }

    pub fn is_left_self_dual_definitional(&self) -> bool {
        *self == self.left_dual()
    }

    /// Only `t F_p^n` is right self-dual.
    pub fn is_right_self_dual(&self) -> bool {
        self.residue.is_zero() && self.torsion.dim() == self.len()
    }

    pub fn is_right_self_dual_definitional(&self) -> bool {
        *self == self.right_dual()
    }

    fn both_duals(&self) -> EpCode {
        self.left_dual().intersect(&self.right_dual()).unwrap()
    }

    /// `C ⊆ C^⊥L ∩ C^⊥R` and `|C| = p^n`.
    pub fn is_qsd(&self) -> bool {
        self.cardinality_exp() == self.len() && self.is_subcode_of(&self.both_duals())
    }

    /// `Tor(C) = Res(C)^⊥` with a self-orthogonal residue.
    pub fn is_self_dual(&self) -> bool {
        self.residue.is_self_orthogonal() && self.torsion == self.residue.dual()
    }

    /// `C = C^⊥L ∩ C^⊥R`.
    pub fn is_self_dual_definitional(&self) -> bool {
        *self == self.both_duals()
    }

    /// Minimum Hamming weight over `E_p`. Equals `d(Tor(C))` because the
    /// support of `r a + t b` is `supp(a) ∪ supp(b)` and `R ⊆ T`.
    pub fn min_distance(&self) -> Option<usize> {
        self.torsion.min_distance()
    }

    pub fn mds_status(&self) -> MdsStatus {
        let Some(d) = self.min_distance() else {
            return MdsStatus::Neither;
        };
        let n = self.len();
        let e = self.cardinality_exp();
        if e == 2 * (n + 1 - d) {
            MdsStatus::Mds
        } else if e == 2 * (n - d) {
            MdsStatus::Amds
        } else {
            MdsStatus::Neither
        }
    }

    pub fn flags(&self) -> CodeFlags {
        CodeFlags {
            free: self.is_free(),
            lcd: self.is_lcd(),
            left_self_dual: self.is_left_self_dual(),
            right_self_dual: self.is_right_self_dual(),
            self_dual: self.is_self_dual(),
        }
    }
}

/// Predicate summary reported for every code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeFlags {
    pub free: bool,
    pub lcd: bool,
    pub left_self_dual: bool,
    pub right_self_dual: bool,
    pub self_dual: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: Prime = Prime::TWO;
    const P3: Prime = Prime::THREE;

    fn parse(text: &str) -> EpCode {
        EpCode::from_generators(&EpGenMatrix::parse(text).unwrap())
    }

    fn fp(p: Prime, rows: &[&[u8]]) -> FpCode {
        let n = rows[0].len();
        FpCode::from_generators(p, n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn table9_n4() -> EpCode {
        parse("p=2 n=4\nt 0 0 t\nr r r r\n0 t 0 t\n0 0 t t\n")
    }

    #[test]
    fn generators_to_pairs() {
        let c = parse("p=2 n=2\nr r\n");
        assert_eq!(c.residue(), &fp(P2, &[&[1, 1]]));
        assert!(c.is_free());
        assert_eq!((c.m1(), c.m2()), (1, 0));

        let c = table9_n4();
        assert_eq!(c.residue(), &fp(P2, &[&[1, 1, 1, 1]]));
        assert_eq!(c.torsion(), &fp(P2, &[&[1, 1, 1, 1]]).dual());
        assert_eq!((c.m1(), c.m2()), (1, 2));

        let c = parse("p=3 n=3\nt 0 0\n0 t 0\n0 0 t\n");
        assert_eq!(c, EpCode::torsion_space(P3, 3));
    }

    #[test]
    fn residue_torsion_cardinality() {
        let c = parse("p=2 n=3\nr r r\n");
        assert_eq!(c.residue(), c.torsion());
        assert_eq!(c.cardinality_exp(), 2);

        let c = table9_n4();
        assert!(!c.is_free());
        assert_eq!(c.cardinality_exp(), 4);

        let c = EpCode::torsion_space(P2, 2);
        assert!(c.residue().is_zero());
        assert_eq!(c.torsion().dim(), 2);
        assert_eq!(c.cardinality_exp(), 2);
    }

    #[test]
    fn from_parts_requires_containment() {
        let r = fp(P2, &[&[1, 1, 0]]);
        let t = fp(P2, &[&[1, 0, 0]]);
        assert_eq!(EpCode::from_parts(r, t), Err(Error::ResidueNotInTorsion));
    }

    #[test]
    fn left_duals() {
        let c = parse("p=2 n=2\nr r\n");
        assert_eq!(c.left_dual(), c);
        assert!(EpCode::full(P3, 3).left_dual().is_zero());
        assert_eq!(EpCode::torsion_space(P2, 2).left_dual(), EpCode::full(P2, 2));
    }

    #[test]
    fn right_duals() {
        for p in [P2, P3] {
            let tf = EpCode::torsion_space(p, 3);
            assert_eq!(tf.right_dual(), tf);
            assert_eq!(EpCode::full(p, 2).right_dual(), EpCode::torsion_space(p, 2));
            assert_eq!(EpCode::zero(p, 2).right_dual(), EpCode::full(p, 2));
        }
    }

    #[test]
    fn intersections() {
        let c = parse("p=2 n=2\nr r\n");
        assert_eq!(c.intersect(&c).unwrap(), c);
        let i = c.intersect(&EpCode::torsion_space(P2, 2)).unwrap();
        assert!(i.residue().is_zero());
        assert_eq!(i.torsion(), &fp(P2, &[&[1, 1]]));
        assert_eq!(i.cardinality_exp(), 1);

        let rep = parse("p=2 n=3\nr r r\n");
        assert!(rep.intersect(&rep.left_dual()).unwrap().is_zero());

        assert!(c.intersect(&EpCode::zero(P2, 3)).is_err());
    }

    #[test]
    fn niceness() {
        assert!(parse("p=3 n=3\nr 2r 0\n").is_left_nice());
        let tf = EpCode::torsion_space(P2, 3);
        assert!(tf.is_right_nice());
        assert!(!tf.is_left_nice());
    }

    #[test]
    fn lcd_examples() {
        let c = parse("p=2 n=3\nr r r\n");
        assert!(c.is_lcd() && c.is_lcd_definitional());
        let c = parse("p=2 n=2\nr r\n");
        assert!(!c.is_lcd() && !c.is_lcd_definitional());
        let c = table9_n4();
        assert!(!c.is_lcd() && !c.is_lcd_definitional());
        assert!(EpCode::zero(P2, 2).is_lcd());
    }

    #[test]
    fn self_duality_examples() {
        let tetra = parse("p=3 n=4\nr 0 r r\n0 r r 2r\n");
        assert!(tetra.is_left_self_dual() && tetra.is_left_self_dual_definitional());
        assert!(tetra.is_self_dual() && tetra.is_self_dual_definitional());
        assert!(tetra.is_qsd());

        let tf = EpCode::torsion_space(P3, 2);
        assert!(tf.is_right_self_dual() && tf.is_right_self_dual_definitional());
        assert!(tf.is_self_dual() && tf.is_self_dual_definitional());
        assert!(!tf.is_left_self_dual() && !tf.is_left_self_dual_definitional());

        let c = table9_n4();
        assert!(c.is_self_dual() && c.is_self_dual_definitional());
        assert!(!c.is_left_self_dual() && !c.is_left_self_dual_definitional());
    }

    #[test]
    fn distances() {
        assert_eq!(parse("p=2 n=5\nr r r r r\n").min_distance(), Some(5));
        assert_eq!(table9_n4().min_distance(), Some(2));
        assert_eq!(EpCode::torsion_space(P3, 4).min_distance(), Some(1));
        assert_eq!(EpCode::zero(P3, 4).min_distance(), None);

        // non-free code whose residue has larger distance than the code
        let c = EpCode::from_parts(fp(P2, &[&[1, 1, 0]]), fp(P2, &[&[1, 1, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(c.residue().min_distance(), Some(2));
        assert_eq!(c.min_distance(), Some(1));
    }

    #[test]
    fn mds_examples() {
        assert_eq!(parse("p=3 n=4\nr 2r 2r r\n").mds_status(), MdsStatus::Mds);
        assert_eq!(EpCode::torsion_space(P2, 2).mds_status(), MdsStatus::Amds);
        // (4,16,2) code: 2 m1 + m2 = 4 = 2(n - d), so AMDS by the formula, never MDS.
        assert_eq!(table9_n4().mds_status(), MdsStatus::Amds);
        assert_eq!(EpCode::zero(P2, 3).mds_status(), MdsStatus::Neither);
    }

    #[test]
    fn generator_matrix_regenerates_code() {
        let c = table9_n4();
        let g = c.generator_matrix();
        assert_eq!(g.rows().len(), 3);
        assert_eq!(EpCode::from_generators(&g), c);
        let again = EpGenMatrix::parse(&g.to_text()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            EpGenMatrix::parse("p=4 n=2\nr r\n"),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            EpGenMatrix::parse("p=2 n=3\nr r\n"),
            Err(Error::RaggedRow { row: 1, expected: 3, found: 2 })
        ));
        assert!(matches!(
            EpGenMatrix::parse("p=3 n=2\nr  5r\n"),
            Err(Error::Parse { line: 2, column: 4, .. })
        ));
        assert!(matches!(EpGenMatrix::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(EpGenMatrix::parse("p=3\n"), Err(Error::Parse { .. })));
        let z = EpGenMatrix::parse("# zero code\np=2 n=2\n0 0\n").unwrap();
        assert!(EpCode::from_generators(&z).is_zero());
    }
}
