//! Analysis windows dual to a given synthesis window.
//!
//! Every dual `γ` of `p` solves the linear Wexler-Raz system `R·γ = e₀`
//! (see [`WexlerRazSystem`]). At critical sampling the system is square and
//! the dual is unique; on oversampled lattices it has `L − a·L/M` free
//! directions and the solvers below pick particular members:
//!
//! * [`min_norm_dual`]: least Euclidean norm,
//! * [`most_orthogonal_like_dual`]: closest to `p`,
//! * [`generalized_dual`]: closest to `A·p` for a linear operator `A`.
//!
//! `p` itself lies in the row space of `R`, so the first two coincide, and
//! the third agrees with them whenever `A·p` has no null-space component
//! (for instance `A = 0` or any multiple of the identity).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{GaborError, Result};
use crate::lattice::Lattice;
use crate::qr::PivotedQr;
use crate::rank::analysis_matrix;
use crate::signal::{Window, WindowRole};
use crate::transform::twiddle;

/// Wexler-Raz constraints as a linear system in the analysis window.
///
/// Row `q·a + r` is the functional
/// `γ ↦ (M/a) Σ_l conj(p[(l − q·M) mod L]) e^{−2πi·r·l/a} γ[l]`;
/// the target is 1 at `(q, r) = (0, 0)` and 0 elsewhere.
#[derive(Debug, Clone)]
pub struct WexlerRazSystem {
    rows: DMatrix<Complex64>,
    target: DVector<Complex64>,
}

impl WexlerRazSystem {
    pub fn new(p: &Window, lat: &Lattice) -> Result<Self> {
        lat.require_reconstructing()?;
        p.require_len(lat)?;
        let len = lat.len();
        let a = lat.a();
        let step = lat.channels();
        let scale = step as f64 / a as f64;
        let count = lat.adjoint_constraint_count();
        let v = p.values();
        let rows = DMatrix::from_fn(count, len, |row, l| {
            let (q, r) = (row / a, row % a);
            v[(l + len - q * step) % len].conj() * twiddle(r * l, a).conj() * scale
        });
        let mut target = DVector::zeros(count);
        target[0] = Complex64::new(1.0, 0.0);
        Ok(Self { rows, target })
    }

    pub fn rows(&self) -> &DMatrix<Complex64> {
        &self.rows
    }

    pub fn target(&self) -> &DVector<Complex64> {
        &self.target
    }

    pub fn constraint_count(&self) -> usize {
        self.rows.nrows()
    }

    /// `max |R·γ − e₀|`.
    pub fn residual(&self, gamma: &Window) -> Result<f64> {
        if gamma.len() != self.rows.ncols() {
            return Err(GaborError::Dimension {
                what: "window length",
                expected: self.rows.ncols().to_string(),
                actual: gamma.len().to_string(),
            });
        }
        let g = DVector::from_column_slice(gamma.values());
        Ok((&self.rows * g - &self.target)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max))
    }

    fn factor(&self) -> Result<PivotedQr> {
        // Factor Rᴴ; its columns are the conjugated constraint rows.
        let columns = (0..self.rows.nrows())
            .map(|i| self.rows.row(i).iter().map(|z| z.conj()).collect())
            .collect();
        let qr = PivotedQr::new(columns);
        if qr.is_full_rank() {
            Ok(qr)
        } else {
            Err(GaborError::SingularSystem {
                rank: qr.rank(),
                rows: self.rows.nrows(),
            })
        }
    }
}

/// Dense `L × L` operator acting on windows.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator(DMatrix<Complex64>);

impl LinearOperator {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(GaborError::Dimension {
                what: "linear operator",
                expected: "square matrix".into(),
                actual: format!("{}x{}", matrix.nrows(), matrix.ncols()),
            });
        }
        if let Some(i) = matrix
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(GaborError::NonFinite(i));
        }
        Ok(Self(matrix))
    }

    /// Square operator from `dim·dim` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(GaborError::Dimension {
                what: "linear operator",
                expected: format!("{} entries", dim * dim),
                actual: entries.len().to_string(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn identity(len: usize) -> Self {
        Self(DMatrix::identity(len, len))
    }

    pub fn zero(len: usize) -> Self {
        Self(DMatrix::zeros(len, len))
    }

    pub fn scaled_identity(len: usize, factor: Complex64) -> Self {
        Self(DMatrix::identity(len, len) * factor)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (&self.0 * DVector::from_column_slice(x))
            .iter()
            .copied()
            .collect()
    }
}

/// Frame operator `S = Σ_{m,n} atom·atomᴴ` of the Gabor system of `p`.
pub fn frame_operator(p: &Window, lat: &Lattice) -> Result<DMatrix<Complex64>> {
    let a = analysis_matrix(p, lat)?;
    Ok(a.adjoint() * a)
}

/// The least-norm dual window, the pseudo-inverse solution of the
/// Wexler-Raz system. Fails when the constraint rows are rank deficient,
/// i.e. when the atoms of `p` do not span the signal space.
pub fn min_norm_dual(p: &Window, lat: &Lattice) -> Result<Window> {
    let system = WexlerRazSystem::new(p, lat)?;
    let qr = system.factor()?;
    let gamma = qr.min_norm_solve(system.target.as_slice());
    Window::new(gamma, WindowRole::Analysis)
}

/// Dual window closest to `p` in the Euclidean norm:
/// `γ_mn + Π_null(p)`.
pub fn most_orthogonal_like_dual(p: &Window, lat: &Lattice) -> Result<Window> {
    dual_nearest(p, lat, p.values())
}

/// Dual window closest to `A·p`: `γ_mn + Π_null(A·p)`.
///
/// No condition on `A` is enforced; the result equals the minimum-norm dual
/// exactly when `A·p` has no component in the null space of the constraints.
pub fn generalized_dual(p: &Window, lat: &Lattice, op: &LinearOperator) -> Result<Window> {
    if op.dim() != lat.len() {
        return Err(GaborError::Dimension {
            what: "linear operator",
            expected: format!("{0}x{0}", lat.len()),
            actual: format!("{0}x{0}", op.dim()),
        });
    }
    p.require_len(lat)?;
    dual_nearest(p, lat, &op.apply(p.values()))
}

fn dual_nearest(p: &Window, lat: &Lattice, anchor: &[Complex64]) -> Result<Window> {
    let system = WexlerRazSystem::new(p, lat)?;
    let qr = system.factor()?;
    let base = qr.min_norm_solve(system.target.as_slice());
    let free = qr.project_null(anchor);
    Window::new(
        base.iter().zip(&free).map(|(g, f)| g + f).collect(),
        WindowRole::Analysis,
    )
}
