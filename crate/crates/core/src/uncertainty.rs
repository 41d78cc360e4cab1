use std::f64::consts::{PI, TAU};

use rustfft::FftPlanner;

use crate::error::{GaborError, Result};
use crate::signal::ComplexSignal;

/// Energy-weighted mean and variance of `positions` under weights `w`.
fn moments(positions: impl Iterator<Item = f64> + Clone, w: &[f64]) -> (f64, f64) {
    let total: f64 = w.iter().sum();
    let mean = positions.clone().zip(w).map(|(x, e)| x * e).sum::<f64>() / total;
    let var = positions
        .zip(w)
        .map(|(x, e)| (x - mean).powi(2) * e)
        .sum::<f64>()
        / total;
    (mean, var)
}

/// Time-bandwidth product `Δt · Δω` of a sampled signal.
///
/// `Δt` is the RMS spread of `|s[l]|²` about its centroid in samples, `Δω`
/// the RMS spread of the DFT energy about its centroid in radians per
/// sample, with bins mapped to `(−π, π]`. Moments are taken on the grid as
/// given, without wrap-around, so the continuum bound of 1/2 is only
/// approached by well-contained, well-sampled pulses; an impulse scores 0.
pub fn uncertainty_product(s: &ComplexSignal) -> Result<f64> {
    if s.is_zero() {
        return Err(GaborError::DegenerateInput(
            "uncertainty product of a zero signal",
        ));
    }
    let len = s.len();

    let time_energy: Vec<f64> = s.samples().iter().map(|z| z.norm_sqr()).collect();
    let (_, time_var) = moments((0..len).map(|l| l as f64), &time_energy);

    let mut spectrum = s.samples().to_vec();
    FftPlanner::new()
        .plan_fft_forward(len)
        .process(&mut spectrum);
    let freq_energy: Vec<f64> = spectrum.iter().map(|z| z.norm_sqr()).collect();
    let omega = (0..len).map(move |k| {
        let w = TAU * k as f64 / len as f64;
        if w > PI {
            w - TAU
        } else {
            w
        }
    });
    let (_, freq_var) = moments(omega, &freq_energy);

    Ok(time_var.sqrt() * freq_var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn gaussian(len: usize, sigma: f64) -> Vec<Complex64> {
        let c = len as f64 / 2.0;
        (0..len)
            .map(|l| Complex64::new((-(l as f64 - c).powi(2) / (2.0 * sigma * sigma)).exp(), 0.0))
            .collect()
    }

    #[test]
    fn gaussian_reaches_half() {
        let s = ComplexSignal::new(gaussian(1024, 64.0)).unwrap();
        let u = uncertainty_product(&s).unwrap();
        assert!((u - 0.5).abs() < 0.01, "{u}");
    }

    #[test]
    fn modulation_does_not_change_product() {
        let base = gaussian(1024, 64.0);
        let shifted: Vec<_> = base
            .iter()
            .enumerate()
            .map(|(l, z)| z * crate::transform::twiddle(16 * l, 1024))
            .collect();
        let u0 = uncertainty_product(&ComplexSignal::new(base).unwrap()).unwrap();
        let u1 = uncertainty_product(&ComplexSignal::new(shifted).unwrap()).unwrap();
        assert!((u0 - u1).abs() < 1e-9 * u0);
    }

    #[test]
    fn rectangle_is_wider() {
        let s = ComplexSignal::from_real(
            &(0..1024)
                .map(|l| if (480..544).contains(&l) { 1.0 } else { 0.0 })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(uncertainty_product(&s).unwrap() > 0.5);
    }

    #[test]
    fn impulse_scores_zero_and_zero_signal_fails() {
        let mut v = vec![0.0; 16];
        v[3] = 1.0;
        let u = uncertainty_product(&ComplexSignal::from_real(&v).unwrap()).unwrap();
        assert_eq!(u, 0.0);
        assert!(uncertainty_product(&ComplexSignal::zeros(16).unwrap()).is_err());
    }
}
