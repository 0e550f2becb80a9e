//! Non-binary LDPC convolutional codes of rate `(n-1)/n` built from
//! difference triangle sets, with exhaustive checks of their structure.
//!
//! ```
//! use std::sync::Arc;
//! use nbldpc::{CodeSpec, DifferenceTriangleSet, GaloisField};
//!
//! let dts = DifferenceTriangleSet::parse_inline("1,2,6;1,2,4").unwrap();
//! let field = Arc::new(GaloisField::new(2, 5).unwrap());
//! let code = CodeSpec::new(dts, field, 3).unwrap();
//! assert_eq!(code.degree(), 5);
//! assert_eq!(code.sliding_matrix(5).cols(), 18);
//! ```

pub mod analysis;
pub mod cli;
pub mod code;
pub mod dts;
pub mod formats;
pub mod gf;
pub mod matrix;

pub use code::{CodeError, CodeSpec, CodeWord, MessageWord};
pub use dts::{DifferenceTriangleSet, DtsError, Mode};
pub use gf::{FieldElement, GaloisField, GfError};
pub use matrix::ExponentMatrix;
