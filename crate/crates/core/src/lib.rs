//! Periods of linear recurrence sequences over finite fields and finite
//! products of finite fields.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod field;
pub mod order;
pub mod period_set;
pub mod poly;
pub mod product;
pub mod ring;
pub mod sequence;
pub mod text;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use poly::{Factorization, Poly};
