//! Exact q-calculus toolkit: Askey-Wilson calculus on symmetric Laurent
//! polynomials, q-Bernoulli and q-Euler families, two-point q-Lidstone
//! expansions, q-Bessel zeros and a p-difference Guichard solver.

pub mod error;
pub mod qcore;
pub mod symlaurent;
pub mod fps;
pub mod qpolys;
pub mod qspecial;
pub mod lidstone;
pub mod guichard;

pub use error::{Error, Result};
pub use qcore::{QContext, Scalar};
pub use symlaurent::{SpecialPoint, SymPoly};
