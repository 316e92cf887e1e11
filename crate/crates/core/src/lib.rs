//! Exact parallel discrimination of Grover phase oracles.
//!
//! A hidden oracle `f_k` flips the sign of basis state `|k>`. Given `t`
//! parallel copies of it, an input `|psi>` identifies `k` with certainty iff
//! the outputs `f_k^{⊗t}|psi>` are pairwise orthogonal. This crate builds,
//! verifies and searches for such inputs, with exact rational arithmetic
//! wherever the amplitudes allow it.
//!
//! ```
//! use grover_exact::schemes::{construct_product_scheme, verify};
//! use grover_exact::identifier::run_identification;
//! use grover_exact::oracle::GroverOracle;
//!
//! let scheme = construct_product_scheme(6).unwrap().into();
//! assert!(verify(&scheme).valid);
//! let run = run_identification(&scheme, &GroverOracle::new(6, 4).unwrap()).unwrap();
//! assert_eq!((run.identified, run.hidden_queries_used), (4, 4));
//! ```

pub mod cli;
pub mod discrimination;
pub mod error;
pub mod identifier;
pub mod json;
pub mod optimizer;
pub mod oracle;
pub mod rational;
pub mod schemes;

pub use error::{Error, Result};
