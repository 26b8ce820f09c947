//! Dense complex matrices, eigenvalues, singular values, and peripheral
//! spectra.

mod eigen;
mod matrix;
pub mod random;
mod spectrum;
pub mod svd;

pub use eigen::{eigenvalues, SWEEPS_PER_DIM};
pub use matrix::{inner, norm, pair, ComplexMatrix, MatrixJson};
pub use spectrum::{
    is_numerically_nilpotent, peripheral_spectrum, rank, spectra_equal, spectral_radius,
    PeripheralSpectrum, RankOneOperator, ABS_FLOOR, DEFAULT_TOL, NILPOTENT_TOL,
};
pub use svd::RectMatrix;

pub(crate) use matrix::{ONE, ZERO};
