//! Exact truncated computations for the graded Goldman–Turaev Lie bialgebra of a
//! surface `Σ_{g,n+1}` and for the associated Kashiwara–Vergne problems.
//!
//! Coefficients are arbitrary-precision rationals; every series carries the degree
//! through which it is exact.

pub mod cyclic;
pub mod error;
pub mod expansions;
pub mod framing;
pub mod json;
pub mod kv;
pub mod lie;
pub mod linalg;
pub mod loops;
pub mod parse;
pub mod random;
pub mod rational;
pub mod series;
pub mod signature;
pub mod tangential;

pub use cyclic::{trace, BiCyclic, CyclicSeries, CyclicWord, TriCyclic};
pub use error::{GtError, Result};
pub use framing::FramingData;
pub use rational::Q;
pub use series::{Key, LinComb, Series, TensorSeries};
pub use signature::{Generator, Letter, Signature, Word};
pub use tangential::{TAut, TDer};
