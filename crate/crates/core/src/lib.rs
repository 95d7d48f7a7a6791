//! Finite preorders as a regular Ord-enriched category, the calculus of
//! ideals over them, Mal'tsev-type deciders, and small quantale-enriched
//! categories.

pub mod algebra;
pub mod error;
pub mod gen;
pub mod ideal;
pub mod json;
pub mod laws;
pub mod limits;
pub mod maltsev;
pub mod preorder;
pub mod quantale;
pub mod relation;
pub mod replay;
pub mod report;
pub mod vcat;

pub use error::{Error, Result};
pub use preorder::{FinPreorder, MonotoneMap};
pub use relation::{IdealRel, Rel};
