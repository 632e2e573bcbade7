//! Exact-arithmetic symbolic engine for the generalized affine Kac-Moody and
//! Virasoro Lie algebras living on the space of regular functions on the
//! intersection of the two big cells of the flag manifold of SL(3).
//!
//! Everything is computed over the rationals with exact equality as the only
//! test predicate: the function ring and its normal form (`funm`), the
//! modified sl3 action by first-order differential operators (`diffop`),
//! finite-dimensional sl3 with its trace form and Cartan involution (`sl3`),
//! the two-dimensionally centrally extended loop algebra (`gv`), the contact
//! bracket and its embedded sl3 (`vir`), truncated dual bases and generalized
//! delta functions (`delta`), and the classical one-variable theory used as an
//! oracle (`sl2`). The `checks` module packages every identity the engine
//! asserts as a seedable verification suite.

pub mod checks;
pub mod coeff;
pub mod delta;
pub mod diffop;
pub mod error;
pub mod funm;
pub mod gv;
pub mod linalg;
pub mod sl2;
pub mod sl3;
pub mod vir;

pub use coeff::Coeff;
pub use error::Error;
pub use funm::{BiDegree, FunM, Mono};
