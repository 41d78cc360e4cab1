//! Gabor-atom transmission: symbols on a lattice are carried by shifted,
//! modulated copies of a pulse and recovered with a dual analysis window.
//!
//! With a rectangular pulse of length `a` on a critical lattice (`M = a`)
//! the modulator reduces to block OFDM without a cyclic prefix; any other
//! pulse gives generalized (GFDM-style) multicarrier signals.

use num_complex::Complex64;

use crate::error::{GaborError, Result};
use crate::lattice::Lattice;
use crate::signal::{ComplexSignal, TFCoefficients, Window, WindowRole};
use crate::transform::{dgt, idgt, twiddle};

/// Transmit symbols, `M` channels by `N` time slots.
pub type SymbolGrid = TFCoefficients;

/// Shape of the pulse `amplitude · exp(−t² / (2σ²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    amplitude: f64,
    sigma: f64,
}

impl GaussianParams {
    pub fn new(amplitude: f64, sigma: f64) -> Result<Self> {
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(GaborError::NonPositive { name: "amplitude" });
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(GaborError::NonPositive { name: "sigma" });
        }
        Ok(Self { amplitude, sigma })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// The `b` of `a·exp(−b·t²)`.
    pub fn rate(&self) -> f64 {
        1.0 / (2.0 * self.sigma * self.sigma)
    }
}

const WRAP_FLOOR: f64 = 1e-17;

/// Sampled Gaussian centred at `L/2`, periodised over the signal length.
///
/// Wraps `±j` are added pairwise until the largest value a new wrap could
/// contribute drops below 1e-17, so `p[L/2 + k] == p[L/2 − k]` holds
/// bit-exactly for even `L`.
pub fn gaussian_pulse(lat: &Lattice, params: GaussianParams) -> Result<Window> {
    let len = lat.len();
    let lf = len as f64;
    let centre = lf / 2.0;
    let rate = params.rate();
    let term = |x: f64| (-x * x * rate).exp();

    let mut values: Vec<f64> = (0..len).map(|l| term(l as f64 - centre)).collect();
    for j in 1usize.. {
        let jf = j as f64 * lf;
        // Closest approach of wrap ±j to the grid is (j − 1/2)·L.
        if term(jf - centre) < WRAP_FLOOR {
            break;
        }
        for (l, v) in values.iter_mut().enumerate() {
            let x = l as f64 - centre;
            *v += term(x + jf) + term(x - jf);
        }
    }
    Window::new(
        values
            .into_iter()
            .map(|v| Complex64::new(params.amplitude * v, 0.0))
            .collect(),
        WindowRole::Synthesis,
    )
}

/// Synthesises `Σ_{m,n} S[m][n] · p[(l − n·a) mod L] · e^{+2πi·m·l/M}`.
pub fn modulate(symbols: &SymbolGrid, p: &Window, lat: &Lattice) -> Result<ComplexSignal> {
    lat.require_reconstructing()?;
    idgt(symbols, p, lat)
}

/// Recovers symbols with analysis window `gamma`; exact when `gamma` is dual
/// to the transmit pulse.
pub fn demodulate(s: &ComplexSignal, gamma: &Window, lat: &Lattice) -> Result<SymbolGrid> {
    dgt(s, gamma, lat)
}

/// Largest sample difference between the Gabor modulator with a
/// length-`a` rectangular pulse and block-wise unnormalised inverse DFTs of
/// the symbol columns. Only defined on critical lattices.
pub fn ofdm_equivalence_deviation(symbols: &SymbolGrid, lat: &Lattice) -> Result<f64> {
    if !lat.is_critical() {
        return Err(GaborError::Configuration(format!(
            "OFDM reduction needs a critical lattice, got a={} M={}",
            lat.a(),
            lat.channels()
        )));
    }
    symbols.require_shape(lat)?;
    let rect = Window::rectangular(lat.len(), lat.a(), WindowRole::Synthesis)?;
    let gabor = modulate(symbols, &rect, lat)?;

    let block = lat.channels();
    let mut worst: f64 = 0.0;
    for n in 0..lat.shifts() {
        for offset in 0..block {
            let oracle: Complex64 = (0..block)
                .map(|k| symbols[(k, n)] * twiddle(k * offset, block))
                .sum();
            worst = worst.max((gabor[n * block + offset] - oracle).norm());
        }
    }
    Ok(worst)
}
