//! Discrete chirp-Fourier transform (DCFT).
//!
//! `X[k, l] = N^{-1/2} Σ_n s[n] · e^{−2πi·(l·n² + k·n)/N}` matches both the
//! frequency index `k` and the chirp-rate index `l`. For prime `N` a unit
//! chirp `(k₀, l₀)` maps to a single peak of height `√N` on the matched rate
//! row, zeros elsewhere on that row, and unit magnitude on every other row
//! (quadratic Gauss sums). Composite lengths lose the flat off-rate floor.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{GaborError, Result};
use crate::signal::{ComplexSignal, TFCoefficients};
use crate::transform::twiddle;

/// Frequency index, chirp-rate index and complex amplitude of a discrete
/// linear chirp of length `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpParams {
    pub k0: usize,
    pub l0: usize,
    pub amplitude: Complex64,
}

impl ChirpParams {
    pub fn unit(k0: usize, l0: usize) -> Self {
        Self {
            k0,
            l0,
            amplitude: Complex64::new(1.0, 0.0),
        }
    }
}

/// `N × N` DCFT grid; entry `(k, l)` is frequency `k`, chirp rate `l`.
pub type DcftGrid = TFCoefficients;

/// `(l·n² + k·n) mod len` without overflow for any realistic length.
fn chirp_phase_index(k: usize, l: usize, n: usize, len: usize) -> usize {
    let (k, l, n, len) = (k as u128, l as u128, n as u128, len as u128);
    ((l * (n * n % len) + k * n) % len) as usize
}

/// `s[n] = amplitude · e^{+2πi·(l₀·n² + k₀·n)/N}`.
pub fn make_chirp(len: usize, params: ChirpParams) -> Result<ComplexSignal> {
    if params.k0 >= len || params.l0 >= len {
        return Err(GaborError::Index {
            what: "chirp parameter",
            index: params.k0.max(params.l0),
            bound: len,
        });
    }
    ComplexSignal::new(
        (0..len)
            .map(|n| {
                params.amplitude * twiddle(chirp_phase_index(params.k0, params.l0, n, len), len)
            })
            .collect(),
    )
}

/// Full DCFT grid. Each rate column is the unitary DFT of the signal
/// dechirped by `e^{−2πi·l·n²/N}`.
pub fn dcft(s: &ComplexSignal) -> Result<DcftGrid> {
    let len = s.len();
    if len < 2 {
        return Err(GaborError::Dimension {
            what: "DCFT length",
            expected: "at least 2".into(),
            actual: len.to_string(),
        });
    }
    let fft = FftPlanner::new().plan_fft_forward(len);
    let norm = 1.0 / (len as f64).sqrt();
    let mut grid = DcftGrid::zeros(len, len);
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for rate in 0..len {
        for (n, z) in buf.iter_mut().enumerate() {
            *z = s[n] * twiddle(chirp_phase_index(0, rate, n, len), len).conj();
        }
        fft.process(&mut buf);
        for (k, z) in buf.iter().enumerate() {
            grid[(k, rate)] = z * norm;
        }
    }
    Ok(grid)
}

/// Position of the largest DCFT magnitude; ties go to the smallest rate,
/// then the smallest frequency.
pub fn dcft_peak(grid: &DcftGrid) -> (usize, usize) {
    let mut best = (0, 0);
    let mut best_mag = f64::NEG_INFINITY;
    for l in 0..grid.cols() {
        for k in 0..grid.rows() {
            let mag = grid[(k, l)].norm();
            if mag > best_mag {
                best_mag = mag;
                best = (k, l);
            }
        }
    }
    best
}

/// Brute-force chirp estimate from the DCFT peak. The amplitude is the peak
/// value divided by `√N`, exact for a noise-free chirp at prime `N`.
pub fn estimate_chirp_params(s: &ComplexSignal) -> Result<ChirpParams> {
    if s.is_zero() {
        return Err(GaborError::DegenerateInput(
            "cannot estimate a chirp from a zero signal",
        ));
    }
    let grid = dcft(s)?;
    let (k0, l0) = dcft_peak(&grid);
    Ok(ChirpParams {
        k0,
        l0,
        amplitude: grid[(k0, l0)] / (s.len() as f64).sqrt(),
    })
}
