//! Forward and inverse discrete Gabor transform on a finite periodic grid.
//!
//! Analysis:  `c[m][n] = Σ_l s[l] · conj(γ[(l − n·a) mod L]) · e^{−2πi·m·l/M}`
//!
//! Synthesis: `s[l] = Σ_{m,n} c[m][n] · p[(l − n·a) mod L] · e^{+2πi·m·l/M}`
//!
//! Neither direction carries a normalisation factor; all scaling lives in
//! the dual window. The sums over `l` are folded modulo `M` and evaluated
//! with one length-`M` FFT per time shift.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{GaborError, Result};
use crate::lattice::Lattice;
use crate::signal::{ComplexSignal, TFCoefficients, Window};

/// `exp(2πi · num / den)` with the numerator reduced first, so large index
/// products do not lose phase accuracy.
pub(crate) fn twiddle(num: usize, den: usize) -> Complex64 {
    let r = num % den;
    Complex64::from_polar(1.0, TAU * r as f64 / den as f64)
}

/// Time-shifted, modulated copy of `w`:
/// `atom[l] = w[(l − n·a) mod L] · e^{+2πi·m·l/M}`.
pub fn gabor_atom(w: &Window, lat: &Lattice, n: usize, m: usize) -> Result<ComplexSignal> {
    w.require_len(lat)?;
    if n >= lat.shifts() {
        return Err(GaborError::Index {
            what: "time",
            index: n,
            bound: lat.shifts(),
        });
    }
    if m >= lat.channels() {
        return Err(GaborError::Index {
            what: "channel",
            index: m,
            bound: lat.channels(),
        });
    }
    let len = lat.len();
    let shift = n * lat.a();
    let v = w.values();
    let atom = (0..len)
        .map(|l| v[(l + len - shift) % len] * twiddle(m * l, lat.channels()))
        .collect();
    ComplexSignal::new(atom)
}

/// Discrete Gabor transform of `s` with analysis window `gamma`.
pub fn dgt(s: &ComplexSignal, gamma: &Window, lat: &Lattice) -> Result<TFCoefficients> {
    s.require_len(lat, "signal length")?;
    gamma.require_len(lat)?;

    let len = lat.len();
    let channels = lat.channels();
    let shifts = lat.shifts();
    let fft = FftPlanner::new().plan_fft_forward(channels);

    let x = s.samples();
    let g = gamma.values();
    let mut out = TFCoefficients::zeros(channels, shifts);
    let mut folded = vec![Complex64::new(0.0, 0.0); channels];
    for n in 0..shifts {
        let shift = n * lat.a();
        folded
            .iter_mut()
            .for_each(|z| *z = Complex64::new(0.0, 0.0));
        for l in 0..len {
            folded[l % channels] += x[l] * g[(l + len - shift) % len].conj();
        }
        fft.process(&mut folded);
        for (m, z) in folded.iter().enumerate() {
            out[(m, n)] = *z;
        }
    }
    Ok(out)
}

/// Inverse discrete Gabor transform (Gabor expansion) of `c` with synthesis
/// window `p`.
pub fn idgt(c: &TFCoefficients, p: &Window, lat: &Lattice) -> Result<ComplexSignal> {
    c.require_shape(lat)?;
    p.require_len(lat)?;

    let len = lat.len();
    let channels = lat.channels();
    let ifft = FftPlanner::new().plan_fft_inverse(channels);

    let w = p.values();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    let mut column = vec![Complex64::new(0.0, 0.0); channels];
    for n in 0..lat.shifts() {
        let shift = n * lat.a();
        for (m, z) in column.iter_mut().enumerate() {
            *z = c[(m, n)];
        }
        ifft.process(&mut column);
        for (l, y) in out.iter_mut().enumerate() {
            *y += w[(l + len - shift) % len] * column[l % channels];
        }
    }
    ComplexSignal::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::WindowRole;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lat422() -> Lattice {
        Lattice::new(4, 2, 2).unwrap()
    }

    #[test]
    fn atom_shift_and_modulation() {
        let w = Window::from_real(&[1.0, 1.0, 0.0, 0.0], WindowRole::Synthesis).unwrap();
        let atom = gabor_atom(&w, &lat422(), 1, 1).unwrap();
        let expected = [0.0, 0.0, 1.0, -1.0];
        for (z, e) in atom.samples().iter().zip(expected) {
            assert!((z - c(e, 0.0)).norm() < 1e-15);
        }
        let same = gabor_atom(&w, &lat422(), 0, 0).unwrap();
        assert_eq!(same.samples(), w.values());
    }

    #[test]
    fn atom_pure_shift_of_impulse() {
        let lat = Lattice::new(4, 1, 4).unwrap();
        let w = Window::delta(4, WindowRole::Synthesis).unwrap();
        let atom = gabor_atom(&w, &lat, 2, 0).unwrap();
        assert_eq!(atom.samples()[2], c(1.0, 0.0));
        assert_eq!(atom.energy(), 1.0);
    }

    #[test]
    fn atom_index_errors() {
        let w = Window::delta(4, WindowRole::Synthesis).unwrap();
        assert!(matches!(
            gabor_atom(&w, &lat422(), 2, 0),
            Err(GaborError::Index { what: "time", .. })
        ));
        assert!(matches!(
            gabor_atom(&w, &lat422(), 0, 2),
            Err(GaborError::Index {
                what: "channel",
                ..
            })
        ));
    }

    #[test]
    fn dgt_hand_example() {
        let s = ComplexSignal::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let gamma = Window::from_real(&[0.5, 0.5, 0.0, 0.0], WindowRole::Analysis).unwrap();
        let coef = dgt(&s, &gamma, &lat422()).unwrap();
        let expected = [[1.5, 3.5], [-0.5, -0.5]];
        for m in 0..2 {
            for n in 0..2 {
                assert!((coef[(m, n)] - c(expected[m][n], 0.0)).norm() < 1e-15);
            }
        }

        let p = Window::from_real(&[1.0, 1.0, 0.0, 0.0], WindowRole::Synthesis).unwrap();
        let back = idgt(&coef, &p, &lat422()).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn zero_signal_and_zero_grid() {
        let lat = lat422();
        let gamma = Window::from_real(&[0.5, 0.5, 0.0, 0.0], WindowRole::Analysis).unwrap();
        let coef = dgt(&ComplexSignal::zeros(4).unwrap(), &gamma, &lat).unwrap();
        assert!(coef.as_slice().iter().all(|z| z.norm() == 0.0));
        let back = idgt(&TFCoefficients::zeros(2, 2), &gamma, &lat).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn single_coefficient_yields_window() {
        let lat = Lattice::new(8, 2, 4).unwrap();
        let p = Window::from_real(
            &[1.0, 2.0, 3.0, 0.0, 0.0, 0.0, 0.0, -1.0],
            WindowRole::Synthesis,
        )
        .unwrap();
        let mut grid = TFCoefficients::zeros(4, 4);
        grid[(0, 0)] = c(1.0, 0.0);
        let s = idgt(&grid, &p, &lat).unwrap();
        assert!(s.max_abs_diff(p.as_signal()) < 1e-15);
    }

    #[test]
    fn stft_limit_with_impulse_window() {
        let len = 6;
        let lat = Lattice::new(len, 1, len).unwrap();
        let s =
            ComplexSignal::new((0..len).map(|l| c(l as f64 + 1.0, -(l as f64))).collect()).unwrap();
        let gamma = Window::delta(len, WindowRole::Analysis).unwrap();
        let coef = dgt(&s, &gamma, &lat).unwrap();
        for m in 0..len {
            for n in 0..len {
                let expected = s[n] * twiddle(m * n, len).conj();
                assert!((coef[(m, n)] - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let s = ComplexSignal::zeros(6).unwrap();
        let gamma = Window::delta(4, WindowRole::Analysis).unwrap();
        assert!(matches!(
            dgt(&s, &gamma, &lat422()),
            Err(GaborError::Dimension { .. })
        ));
        let grid = TFCoefficients::zeros(3, 2);
        assert!(matches!(
            idgt(&grid, &gamma, &lat422()),
            Err(GaborError::Dimension { .. })
        ));
    }
}
