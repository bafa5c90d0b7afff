//! Linear codes over the non-unital ring `E_p = <r, s | pr = ps = 0, r^2 = r, s^2 = s, rs = r, sr = s>`.
//!
//! Every code is stored as its residue/torsion pair of subspaces of `F_p^n`,
//! and every predicate, dual and equivalence test reduces to exact linear
//! algebra over `F_p`. On top of that sit canonical forms under monomial
//! maps and exhaustive classification of LCD and self-dual codes.
//!
//! ```
//! use epcode::{EpCode, EpGenMatrix, MdsStatus};
//!
//! let g = EpGenMatrix::parse("p=2 n=2\nr r\n").unwrap();
//! let c = EpCode::from_generators(&g);
//! assert!(c.is_free() && c.is_left_self_dual() && !c.is_lcd());
//! assert_eq!(c.min_distance(), Some(2));
//! assert_eq!(c.mds_status(), MdsStatus::Mds);
//! ```

pub mod classify;
pub mod ep_code;
pub mod ep_ring;
pub mod equiv;
pub mod error;
pub mod fp_linalg;
pub mod tables;

pub use classify::{ClassRecord, Classification, ClassifyOptions, Kind};
pub use ep_code::{CodeFlags, EpCode, EpGenMatrix, EpVec};
pub use ep_ring::EpElem;
pub use equiv::{Budget, CanonicalForm, MonomialMapEp, MonomialMapFp};
pub use error::{Error, Result};
pub use fp_linalg::{FpCode, FpMat, FpScalar, FpVec, MdsStatus, Prime, Rref};
pub use tables::{TableReport, Verdict};
