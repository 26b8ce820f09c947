//! Peripheral spectra of generalized operator products on matrix algebras.
//!
//! The crate evaluates generalized and skew generalized products of square
//! complex matrices, computes peripheral spectra, decides rank-one-ness
//! through the peripheral spectrum of `B^r A B^s` with explicit rank-two
//! witnesses, and checks or recovers the canonical forms of linear maps that
//! preserve peripheral spectra of such products.
//!
//! Modules:
//!
//! - [`seqdesc`]: product descriptors and their semi-Jordan / quasi-semi-Jordan
//!   classification
//! - [`densela`]: dense complex matrices, eigenvalues, SVD, peripheral spectra
//! - [`products`]: product evaluation and the rank-one sandwich closed form
//! - [`rankoracle`]: the rank-one criterion and witness construction
//! - [`recovery`]: preservation checks and canonical-form recovery for maps
//! - [`cli`], [`io`], [`fuzz`], [`fixtures`]: command-line front end, codecs,
//!   the seeded property battery, and the fixture corpus

pub mod cli;
pub mod densela;
pub mod error;
pub mod fixtures;
pub mod fuzz;
pub mod io;
pub mod products;
pub mod rankoracle;
pub mod recovery;
pub mod seqdesc;

pub use error::{Error, Result};
