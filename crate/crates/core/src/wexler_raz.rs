//! Biorthogonality test on the adjoint lattice.
//!
//! A synthesis window `p` and an analysis window `γ` reconstruct every
//! signal exactly iff, for `q = 0..L/M` and `r = 0..a`,
//!
//! ```text
//! (M/a) · Σ_l γ[l] · conj(p[(l − q·M) mod L]) · e^{−2πi·r·l/a} = δ(q)·δ(r)
//! ```
//!
//! The adjoint lattice has time step `M` and `a` frequency channels.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::Result;
use crate::lattice::Lattice;
use crate::signal::Window;

/// Left-hand side of every adjoint-lattice constraint, indexed `[q][r]`.
pub fn wexler_raz_products(
    p: &Window,
    gamma: &Window,
    lat: &Lattice,
) -> Result<Vec<Vec<Complex64>>> {
    lat.require_reconstructing()?;
    p.require_len(lat)?;
    gamma.require_len(lat)?;

    let len = lat.len();
    let a = lat.a();
    let step = lat.channels();
    let scale = step as f64 / a as f64;
    let fft = FftPlanner::new().plan_fft_forward(a);

    let pv = p.values();
    let gv = gamma.values();
    let mut out = Vec::with_capacity(len / step);
    for q in 0..len / step {
        let shift = q * step;
        let mut folded = vec![Complex64::new(0.0, 0.0); a];
        for l in 0..len {
            folded[l % a] += gv[l] * pv[(l + len - shift) % len].conj();
        }
        fft.process(&mut folded);
        out.push(folded.into_iter().map(|z| z * scale).collect());
    }
    Ok(out)
}

/// Largest deviation of the adjoint-lattice products from `δ(q)·δ(r)`.
///
/// Zero (to rounding) exactly when `(p, gamma)` is a synthesis/analysis
/// dual pair on `lat`. Fails on lattices with density above one.
pub fn wexler_raz_residual(p: &Window, gamma: &Window, lat: &Lattice) -> Result<f64> {
    let products = wexler_raz_products(p, gamma, lat)?;
    let mut worst: f64 = 0.0;
    for (q, row) in products.iter().enumerate() {
        for (r, z) in row.iter().enumerate() {
            let target = if q == 0 && r == 0 { 1.0 } else { 0.0 };
            worst = worst.max((z - Complex64::new(target, 0.0)).norm());
        }
    }
    Ok(worst)
}
