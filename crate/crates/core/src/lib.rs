//! Finite discrete Gabor analysis.
//!
//! Signals live on a periodic grid of `L` samples. A [`Lattice`] fixes the
//! time step `a` and the channel count `M`; [`dgt`] and [`idgt`] map between
//! signals and the `M × N` coefficient grid. Dual analysis windows come from
//! the [`dual`] solvers, and [`wexler_raz_residual`] certifies a pair.
//! On top of that sit time-variant filtering ([`tvfilter`]), the discrete
//! chirp-Fourier transform ([`chirp`]) and Gabor-atom modulation
//! ([`waveform`]).

pub mod chirp;
pub mod dual;
mod error;
mod lattice;
pub mod noise;
mod qr;
mod rank;
mod signal;
mod transform;
pub mod tvfilter;
mod uncertainty;
pub mod waveform;
mod wexler_raz;

pub use error::{GaborError, Result};
pub use lattice::Lattice;
pub use rank::{analysis_matrix, analysis_matrix_rank, numerical_rank, RANK_EPS};
pub use signal::{ComplexSignal, TFCoefficients, Window, WindowRole};
pub use transform::{dgt, gabor_atom, idgt};
pub use uncertainty::uncertainty_product;
pub use wexler_raz::{wexler_raz_products, wexler_raz_residual};

pub use num_complex::Complex64;
