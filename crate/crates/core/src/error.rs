use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime")]
    NotPrime(u32),
    #[error("prime {0} exceeds the supported maximum of {max}", max = crate::fp_linalg::MAX_PRIME)]
    PrimeTooLarge(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("entry {value} is not a residue modulo {p}")]
    EntryOutOfRange { value: u32, p: u8 },
    #[error("residue code is not contained in the torsion code")]
    ResidueNotInTorsion,
    #[error("monomial scale at coordinate {0} lies in the maximal ideal")]
    ScaleInIdeal(usize),
    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("row {row} has {found} entries, header declares n={expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown table {0}")]
    UnknownTable(u32),
    #[error("length n={n} over F_{p} exceeds the {what} budget (largest allowed n={max})")]
    BudgetExceeded {
        what: &'static str,
        p: u8,
        n: usize,
        max: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
