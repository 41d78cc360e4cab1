use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::lattice::Lattice;
use crate::signal::Window;
use crate::transform::twiddle;

/// Relative singular-value cutoff shared by every rank decision in the crate.
pub const RANK_EPS: f64 = 1e-10;

/// Dense `(M·N) × L` matrix of the map `s ↦ dgt(s, w, lat)`; row `m·N + n`
/// is the conjugated atom `(n, m)`.
pub fn analysis_matrix(w: &Window, lat: &Lattice) -> Result<DMatrix<Complex64>> {
    w.require_len(lat)?;
    let len = lat.len();
    let shifts = lat.shifts();
    let v = w.values();
    Ok(DMatrix::from_fn(lat.coefficient_count(), len, |row, l| {
        let (m, n) = (row / shifts, row % shifts);
        let shift = n * lat.a();
        (v[(l + len - shift) % len] * twiddle(m * l, lat.channels())).conj()
    }))
}

/// Numerical rank of a matrix: singular values above
/// `RANK_EPS · σ_max · max(rows, cols)`.
pub fn numerical_rank(matrix: DMatrix<Complex64>) -> usize {
    let dim = matrix.nrows().max(matrix.ncols()) as f64;
    let sv = matrix.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let cutoff = RANK_EPS * top * dim;
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Rank of the DGT analysis map. A value of `L` means the atoms span the
/// signal space and the transform is injective.
pub fn analysis_matrix_rank(w: &Window, lat: &Lattice) -> Result<usize> {
    Ok(numerical_rank(analysis_matrix(w, lat)?))
}
