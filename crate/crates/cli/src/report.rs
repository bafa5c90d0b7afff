use std::fmt;

use epcode::{CodeFlags, EpCode, EpGenMatrix, FpCode, MdsStatus, Prime};
use serde::Serialize;

/// Everything `analyze` reports about one code. Built from the code alone,
/// so analyzing `generator_matrix` again gives the same report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub p: Prime,
    pub n: usize,
    pub generator_matrix: EpGenMatrix,
    pub m1: usize,
    pub m2: usize,
    pub cardinality_exp: usize,
    pub free: bool,
    pub residue_basis: Vec<String>,
    pub torsion_basis: Vec<String>,
    pub left_dual: EpGenMatrix,
    pub right_dual: EpGenMatrix,
    pub flags: CodeFlags,
    /// Absent for the zero code.
    pub d: Option<usize>,
    pub mds_status: Option<MdsStatus>,
}

fn basis(c: &FpCode) -> Vec<String> {
    c.basis()
        .iter()
        .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
        .collect()
}

impl AnalysisReport {
    pub fn new(code: &EpCode) -> Self {
        let d = code.min_distance();
        AnalysisReport {
            p: code.modulus(),
            n: code.len(),
            generator_matrix: code.generator_matrix(),
            m1: code.m1(),
            m2: code.m2(),
            cardinality_exp: code.cardinality_exp(),
            free: code.is_free(),
            residue_basis: basis(code.residue()),
            torsion_basis: basis(code.torsion()),
            left_dual: code.left_dual().generator_matrix(),
            right_dual: code.right_dual().generator_matrix(),
            flags: code.flags(),
            d,
            mds_status: d.map(|_| code.mds_status()),
        }
    }
}

fn rows(f: &mut fmt::Formatter<'_>, title: &str, rows: &[String]) -> fmt::Result {
    writeln!(f, "{title}:")?;
    if rows.is_empty() {
        writeln!(f, "  (zero)")?;
    }
    for r in rows {
        writeln!(f, "  {r}")?;
    }
    Ok(())
}

fn matrix_rows(g: &EpGenMatrix) -> Vec<String> {
    g.rows().iter().map(|r| r.to_string()).collect()
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p={} n={}", self.p, self.n)?;
        writeln!(
            f,
            "m1={} m2={} |C|={}^{}",
            self.m1, self.m2, self.p, self.cardinality_exp
        )?;
        match (self.d, self.mds_status) {
            (Some(d), Some(s)) => writeln!(f, "d={d} {s}")?,
            _ => writeln!(f, "d=- (zero code)")?,
        }
        let fl = &self.flags;
        writeln!(
            f,
            "free={} lcd={} left_self_dual={} right_self_dual={} self_dual={}",
            fl.free, fl.lcd, fl.left_self_dual, fl.right_self_dual, fl.self_dual
        )?;
        rows(f, "generator matrix", &matrix_rows(&self.generator_matrix))?;
        rows(f, "residue basis", &self.residue_basis)?;
        rows(f, "torsion basis", &self.torsion_basis)?;
        rows(f, "left dual", &matrix_rows(&self.left_dual))?;
        rows(f, "right dual", &matrix_rows(&self.right_dual))
    }
}
