//! Exact verification of q-supercongruences modulo products of cyclotomic
//! polynomials, the creative-microscoping steps behind them, and their
//! classical p-adic specialisations.

pub mod arith;
pub mod congruence;
pub mod cyclotomic;
mod error;
pub mod harness;
pub mod microscope;
pub mod padic;
pub mod qseries;

pub use arith::{BiPoly, BiRationalFunction, LaurentPoly, RationalFunction, Substitution};
pub use congruence::{CongruenceVerdict, FactorMultiplicity};
pub use cyclotomic::Modulus;
pub use error::{Error, Hypothesis, Result};
pub use qseries::QCase;
