//! Exact Cayley-Dickson algebras and octonionic Hilbert modules.
//!
//! * [`linalg`]: rational matrices, nullspaces, solving, Cayley transforms.
//! * [`cd`]: elements of `A_n`, doubling and table products, associators.
//! * [`omodule`]: left O-modules with O-valued inner products, nuclei and
//!   the decomposition into regular and conjugate-regular summands.
//! * [`anmodule`]: `A_n` (n >= 4) as a Hilbert left O-module.
//! * [`parseval`]: orthonormal systems, Bessel identity, Parseval expansion.
//!
//! All arithmetic is exact; nothing is ever rounded.

pub mod anmodule;
pub mod cd;
pub mod config;
pub mod error;
pub mod json;
pub mod linalg;
pub mod omodule;
pub mod parseval;
pub mod rational;
pub mod sample;

pub use cd::{cd_multiply, CDElement};
pub use error::{Error, Result};
pub use linalg::RatMatrix;
pub use omodule::{CanonicalModule, OModule, ScaledOctonion, ScaledVector};
pub use rational::Rational;
