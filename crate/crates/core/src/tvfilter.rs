//! Time-variant filtering by masking Gabor coefficients.
//!
//! One filter step is `T(s) = idgt(mask ⊙ dgt(s, γ), p)`. Because the DGT
//! is not onto, masked coefficients generally are not the transform of any
//! signal, so the step is iterated and the trajectory reported.
//!
//! The module also measures how much a Gabor representation concentrates a
//! signal relative to noise ([`tf_peak_snr`]) and how that gain scales with
//! the sampling rate ([`snr_growth_experiment`]).

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{GaborError, Result};
use crate::lattice::Lattice;
use crate::noise::NoiseGenerator;
use crate::signal::{ComplexSignal, TFCoefficients, Window};
use crate::transform::{dgt, idgt};
use crate::waveform::{gaussian_pulse, GaussianParams};
use crate::wexler_raz::wexler_raz_residual;

/// Largest Wexler-Raz residual accepted for a filtering pair.
pub const PAIR_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 100;
pub const DEFAULT_MASK_FRACTION: f64 = 0.05;
const CHANGE_FLOOR: f64 = 1e-300;

/// Real weights in `[0, 1]` on the `M × N` coefficient grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TFMask {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl TFMask {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(GaborError::Dimension {
                what: "mask",
                expected: format!("{rows}x{cols}"),
                actual: format!("{} values", values.len()),
            });
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(GaborError::MaskRange { index, value });
        }
        Ok(Self { rows, cols, values })
    }

    pub fn ones(lat: &Lattice) -> Self {
        Self::filled(lat, 1.0)
    }

    pub fn zeros(lat: &Lattice) -> Self {
        Self::filled(lat, 0.0)
    }

    fn filled(lat: &Lattice, v: f64) -> Self {
        Self {
            rows: lat.channels(),
            cols: lat.shifts(),
            values: vec![v; lat.coefficient_count()],
        }
    }

    /// Binary mask keeping the `ceil(fraction · M·N)` largest-magnitude cells
    /// of `reference` (at least one). Equal magnitudes keep grid order.
    pub fn top_fraction(reference: &TFCoefficients, fraction: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(GaborError::Configuration(format!(
                "mask fraction {fraction} must lie in (0, 1]"
            )));
        }
        let mags = reference.magnitudes();
        let keep = ((fraction * mags.len() as f64).ceil() as usize).clamp(1, mags.len());
        let mut order: Vec<usize> = (0..mags.len()).collect();
        order.sort_by(|&x, &y| mags[y].total_cmp(&mags[x]));
        let mut values = vec![0.0; mags.len()];
        for &i in &order[..keep] {
            values[i] = 1.0;
        }
        Self::new(reference.rows(), reference.cols(), values)
    }

    /// Reads a mask from a coefficient grid whose imaginary parts are zero.
    pub fn from_grid(grid: &TFCoefficients) -> Result<Self> {
        if let Some(i) = grid.as_slice().iter().position(|z| z.im != 0.0) {
            return Err(GaborError::Configuration(format!(
                "mask cell {i} has a non-zero imaginary part"
            )));
        }
        Self::new(
            grid.rows(),
            grid.cols(),
            grid.as_slice().iter().map(|z| z.re).collect(),
        )
    }

    pub fn to_grid(&self) -> TFCoefficients {
        TFCoefficients::from_vec(
            self.rows,
            self.cols,
            self.values
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect(),
        )
        .expect("mask dimensions are consistent")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of cells with weight 1.
    pub fn support(&self) -> usize {
        self.values.iter().filter(|&&v| v == 1.0).count()
    }

    fn require_shape(&self, lat: &Lattice) -> Result<()> {
        if self.rows == lat.channels() && self.cols == lat.shifts() {
            Ok(())
        } else {
            Err(GaborError::Dimension {
                what: "mask",
                expected: format!("{}x{}", lat.channels(), lat.shifts()),
                actual: format!("{}x{}", self.rows, self.cols),
            })
        }
    }

    fn apply(&self, c: &mut TFCoefficients) {
        for (z, w) in c.as_mut_slice().iter_mut().zip(&self.values) {
            *z *= *w;
        }
    }

    /// Energy of `c` in the cells this mask does not fully keep, weighted by `1 − mask`.
    pub fn rejected_energy(&self, c: &TFCoefficients) -> f64 {
        c.as_slice()
            .iter()
            .zip(&self.values)
            .map(|(z, w)| z.norm_sqr() * (1.0 - w))
            .sum()
    }
}

/// A validated mask filter `s ↦ idgt(mask ⊙ dgt(s, γ), p)`.
#[derive(Debug, Clone)]
pub struct MaskFilter<'a> {
    mask: &'a TFMask,
    p: &'a Window,
    gamma: &'a Window,
    lat: &'a Lattice,
}

impl<'a> MaskFilter<'a> {
    /// Checks shapes and that `(p, gamma)` is a dual pair.
    pub fn new(
        mask: &'a TFMask,
        p: &'a Window,
        gamma: &'a Window,
        lat: &'a Lattice,
    ) -> Result<Self> {
        mask.require_shape(lat)?;
        let residual = wexler_raz_residual(p, gamma, lat)?;
        if residual.is_nan() || residual >= PAIR_TOLERANCE {
            return Err(GaborError::InvalidPair { residual });
        }
        Ok(Self {
            mask,
            p,
            gamma,
            lat,
        })
    }

    pub fn step(&self, s: &ComplexSignal) -> Result<ComplexSignal> {
        let mut c = dgt(s, self.gamma, self.lat)?;
        self.mask.apply(&mut c);
        idgt(&c, self.p, self.lat)
    }

    /// Coefficient energy of `s` rejected by the mask.
    pub fn rejected_energy(&self, s: &ComplexSignal) -> Result<f64> {
        Ok(self.mask.rejected_energy(&dgt(s, self.gamma, self.lat)?))
    }
}

/// One masking step.
pub fn apply_mask_step(
    s: &ComplexSignal,
    mask: &TFMask,
    p: &Window,
    gamma: &Window,
    lat: &Lattice,
) -> Result<ComplexSignal> {
    MaskFilter::new(mask, p, gamma, lat)?.step(s)
}

/// Outcome of [`iterative_tv_filter`].
#[derive(Debug, Clone, PartialEq)]
pub struct FilterReport {
    pub signal: ComplexSignal,
    pub iterations: usize,
    /// Relative change `‖s_{k+1} − s_k‖ / max(‖s_k‖, 1e-300)` per iteration.
    pub residuals: Vec<f64>,
    /// False when `max_iter` was reached before the tolerance.
    pub converged: bool,
}

/// Iterates the mask step until the relative change drops below `tol` or
/// `max_iter` steps have run. An iterate that is exactly zero is a fixed
/// point of every linear step and also ends the iteration as converged.
pub fn iterative_tv_filter(
    s: &ComplexSignal,
    mask: &TFMask,
    p: &Window,
    gamma: &Window,
    lat: &Lattice,
    tol: f64,
    max_iter: usize,
) -> Result<FilterReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(GaborError::NonPositive { name: "tol" });
    }
    if max_iter == 0 {
        return Err(GaborError::NonPositive { name: "max_iter" });
    }
    let filter = MaskFilter::new(mask, p, gamma, lat)?;
    let mut current = s.clone();
    let mut residuals = Vec::new();
    let mut converged = false;
    while residuals.len() < max_iter {
        let next = filter.step(&current)?;
        let change = next
            .samples()
            .iter()
            .zip(current.samples())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
            / current.norm().max(CHANGE_FLOOR);
        residuals.push(change);
        let fixed = change < tol || next.is_zero();
        current = next;
        if fixed {
            converged = true;
            break;
        }
    }
    Ok(FilterReport {
        signal: current,
        iterations: residuals.len(),
        residuals,
        converged,
    })
}

/// Peak-to-mean power ratios of a clean signal against noise in the time
/// domain and in the Gabor domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakSnr {
    /// `max |dgt(clean)|² / mean |dgt(noise)|²`.
    pub tf: f64,
    /// `max |clean|² / mean |noise|²`.
    pub time: f64,
}

impl PeakSnr {
    /// Improvement of the Gabor domain over the time domain.
    pub fn gain(&self) -> f64 {
        self.tf / self.time
    }
}

fn mean_power(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>() / values.len() as f64
}

fn peak_power(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
}

pub fn tf_peak_snr(
    s_clean: &ComplexSignal,
    noise: &ComplexSignal,
    gamma: &Window,
    lat: &Lattice,
) -> Result<PeakSnr> {
    if noise.is_zero() {
        return Err(GaborError::DegenerateInput("noise is identically zero"));
    }
    let clean_tf = dgt(s_clean, gamma, lat)?;
    let noise_tf = dgt(noise, gamma, lat)?;
    let noise_tf_power = mean_power(noise_tf.as_slice());
    if noise_tf_power == 0.0 {
        return Err(GaborError::DegenerateInput(
            "noise vanishes in the Gabor domain",
        ));
    }
    Ok(PeakSnr {
        tf: peak_power(clean_tf.as_slice()) / noise_tf_power,
        time: peak_power(s_clean.samples()) / mean_power(noise.samples()),
    })
}

/// Physical set-up of [`snr_growth_experiment`]: a unit-amplitude linear
/// chirp observed for a fixed duration, in arbitrary time units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrExperimentConfig {
    pub duration: f64,
    /// Instantaneous frequency at t = 0, cycles per time unit.
    pub start_frequency: f64,
    /// Frequency sweep, cycles per time unit squared.
    pub sweep_rate: f64,
    /// Per-sample complex noise variance.
    pub noise_variance: f64,
    /// Gaussian analysis window width, time units.
    pub window_sigma: f64,
}

impl Default for SnrExperimentConfig {
    fn default() -> Self {
        Self {
            duration: 4.0,
            start_frequency: 2.0,
            sweep_rate: 3.0,
            noise_variance: 1.0,
            window_sigma: 0.25,
        }
    }
}

/// Mean time-to-Gabor SNR gain at one sampling rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateGain {
    pub rate: usize,
    pub mean_gain: f64,
}

/// Lattice used at sampling rate `rate`: `L = rate · duration`, time step
/// the largest divisor of `L` not above `rate / 32` (at least 1), `M = L/4`.
pub fn snr_lattice(rate: usize, config: &SnrExperimentConfig) -> Result<Lattice> {
    let samples = rate as f64 * config.duration;
    if samples.fract() != 0.0 || samples < 4.0 {
        return Err(GaborError::Configuration(format!(
            "rate {rate} gives a non-integer or too short signal over duration {}",
            config.duration
        )));
    }
    let len = samples as usize;
    if !len.is_multiple_of(4) {
        return Err(GaborError::Configuration(format!(
            "signal length {len} at rate {rate} is not a multiple of 4"
        )));
    }
    let target = ((rate as f64 / 32.0).round() as usize).max(1);
    let a = (1..=target)
        .rev()
        .find(|d| len.is_multiple_of(*d))
        .unwrap_or(1);
    Lattice::new(len, a, len / 4)
}

/// Averages the Gabor-domain SNR gain of a fixed-duration chirp over
/// `trials` noise draws at each sampling rate. Trial `i` draws its noise
/// from seed `seed + i`.
pub fn snr_growth_experiment(rates: &[usize], trials: usize, seed: u64) -> Result<Vec<RateGain>> {
    snr_growth_experiment_with(rates, trials, seed, &SnrExperimentConfig::default())
}

pub fn snr_growth_experiment_with(
    rates: &[usize],
    trials: usize,
    seed: u64,
    config: &SnrExperimentConfig,
) -> Result<Vec<RateGain>> {
    if trials == 0 {
        return Err(GaborError::Configuration("trials must be positive".into()));
    }
    if rates.is_empty() {
        return Err(GaborError::Configuration("no sampling rates given".into()));
    }
    if rates.windows(2).any(|w| w[0] >= w[1]) || rates[0] == 0 {
        return Err(GaborError::Configuration(
            "rates must be positive and strictly increasing".into(),
        ));
    }

    let mut out = Vec::with_capacity(rates.len());
    for &rate in rates {
        let lat = snr_lattice(rate, config)?;
        let r = rate as f64;
        let clean = ComplexSignal::new(
            (0..lat.len())
                .map(|l| {
                    let t = l as f64 / r;
                    let cycles = config.start_frequency * t + 0.5 * config.sweep_rate * t * t;
                    Complex64::from_polar(1.0, TAU * cycles.fract())
                })
                .collect(),
        )?;
        let gamma = gaussian_pulse(&lat, GaussianParams::new(1.0, config.window_sigma * r)?)?
            .with_role(crate::signal::WindowRole::Analysis);

        let mut total = 0.0;
        for trial in 0..trials {
            let mut rng = NoiseGenerator::new(seed.wrapping_add(trial as u64));
            let noise = rng.white_noise(lat.len(), config.noise_variance)?;
            total += tf_peak_snr(&clean, &noise, &gamma, &lat)?.gain();
        }
        out.push(RateGain {
            rate,
            mean_gain: total / trials as f64,
        });
    }
    Ok(out)
}

/// Chirp-denoising scenario for the iterative filter: a unit linear chirp
/// plus white noise, a Gaussian synthesis pulse with its most-orthogonal-like
/// dual, and a binary mask on the top cells of the clean chirp's transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpDenoiseConfig {
    pub len: usize,
    pub a: usize,
    pub channels: usize,
    /// Pulse width in samples.
    pub sigma: f64,
    /// Instantaneous frequency at the first and last sample, cycles per sample.
    pub start_frequency: f64,
    pub end_frequency: f64,
    pub noise_variance: f64,
    pub mask_fraction: f64,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ChirpDenoiseConfig {
    fn default() -> Self {
        Self {
            len: 256,
            a: 8,
            channels: 32,
            sigma: 12.0,
            start_frequency: 0.1,
            end_frequency: 0.2,
            noise_variance: 1.0,
            mask_fraction: DEFAULT_MASK_FRACTION,
            seed: 1,
            tol: DEFAULT_TOLERANCE,
            max_iter: 50,
        }
    }
}

/// Result of [`chirp_denoise_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenoiseOutcome {
    pub clean: ComplexSignal,
    pub noisy: ComplexSignal,
    pub report: FilterReport,
    /// Coefficient energy outside the mask for the input and each iterate.
    pub rejected_energy: Vec<f64>,
    pub input_mse: f64,
    pub output_mse: f64,
}

fn mse(x: &ComplexSignal, reference: &ComplexSignal) -> f64 {
    x.samples()
        .iter()
        .zip(reference.samples())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        / x.len() as f64
}

/// Linear chirp `exp(2πi·(f₀·l + (f₁ − f₀)·l²/(2L)))` of unit amplitude.
pub fn linear_chirp(len: usize, start_frequency: f64, end_frequency: f64) -> Result<ComplexSignal> {
    let sweep = (end_frequency - start_frequency) / len as f64;
    ComplexSignal::new(
        (0..len)
            .map(|l| {
                let l = l as f64;
                let cycles = start_frequency * l + 0.5 * sweep * l * l;
                Complex64::from_polar(1.0, TAU * cycles.fract())
            })
            .collect(),
    )
}

pub fn chirp_denoise_experiment(config: &ChirpDenoiseConfig) -> Result<DenoiseOutcome> {
    let lat = Lattice::new(config.len, config.a, config.channels)?;
    let p = gaussian_pulse(&lat, GaussianParams::new(1.0, config.sigma)?)?;
    let gamma = crate::dual::most_orthogonal_like_dual(&p, &lat)?;

    let clean = linear_chirp(config.len, config.start_frequency, config.end_frequency)?;
    let noise = NoiseGenerator::new(config.seed).white_noise(config.len, config.noise_variance)?;
    let noisy = clean.add(&noise)?;
    let mask = TFMask::top_fraction(&dgt(&clean, &gamma, &lat)?, config.mask_fraction)?;

    let report = iterative_tv_filter(&noisy, &mask, &p, &gamma, &lat, config.tol, config.max_iter)?;

    let filter = MaskFilter::new(&mask, &p, &gamma, &lat)?;
    let mut rejected_energy = vec![filter.rejected_energy(&noisy)?];
    let mut current = noisy.clone();
    for _ in 0..report.iterations {
        current = filter.step(&current)?;
        rejected_energy.push(filter.rejected_energy(&current)?);
    }

    Ok(DenoiseOutcome {
        input_mse: mse(&noisy, &clean),
        output_mse: mse(&report.signal, &clean),
        clean,
        noisy,
        report,
        rejected_energy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::WindowRole;

    fn box_pair() -> (Lattice, Window, Window) {
        (
            Lattice::new(4, 2, 2).unwrap(),
            Window::from_real(&[1.0, 1.0, 0.0, 0.0], WindowRole::Synthesis).unwrap(),
            Window::from_real(&[0.5, 0.5, 0.0, 0.0], WindowRole::Analysis).unwrap(),
        )
    }

    #[test]
    fn single_cell_mask() {
        let (lat, p, gamma) = box_pair();
        let mask = TFMask::new(2, 2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let s = ComplexSignal::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let out = apply_mask_step(&s, &mask, &p, &gamma, &lat).unwrap();
        let want = ComplexSignal::from_real(&[1.5, 1.5, 0.0, 0.0]).unwrap();
        assert!(out.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn ones_and_zeros_masks() {
        let (lat, p, gamma) = box_pair();
        let s = ComplexSignal::from_real(&[1.0, -2.0, 0.5, 4.0]).unwrap();
        let same = apply_mask_step(&s, &TFMask::ones(&lat), &p, &gamma, &lat).unwrap();
        assert!(same.max_abs_diff(&s) < 1e-12);
        let gone = apply_mask_step(&s, &TFMask::zeros(&lat), &p, &gamma, &lat).unwrap();
        assert!(gone.is_zero());

        let rep = iterative_tv_filter(&s, &TFMask::ones(&lat), &p, &gamma, &lat, 1e-6, 10).unwrap();
        assert_eq!(rep.iterations, 1);
        assert!(rep.converged);
        assert!(rep.signal.max_abs_diff(&s) < 1e-12);

        let rep =
            iterative_tv_filter(&s, &TFMask::zeros(&lat), &p, &gamma, &lat, 1e-6, 10).unwrap();
        assert_eq!(rep.iterations, 1);
        assert!(rep.converged);
        assert!(rep.signal.is_zero());
        assert_eq!(rep.residuals.len(), rep.iterations);
    }

    #[test]
    fn rejects_non_dual_pair() {
        let (lat, p, _) = box_pair();
        let s = ComplexSignal::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(matches!(
            apply_mask_step(&s, &TFMask::ones(&lat), &p, &p, &lat),
            Err(GaborError::InvalidPair { .. })
        ));
        let bad_mask = TFMask::new(1, 4, vec![1.0; 4]).unwrap();
        let (_, p, gamma) = box_pair();
        assert!(matches!(
            apply_mask_step(&s, &bad_mask, &p, &gamma, &lat),
            Err(GaborError::Dimension { .. })
        ));
    }

    #[test]
    fn mask_validation_and_quantile() {
        assert!(matches!(
            TFMask::new(1, 2, vec![0.5, 1.5]),
            Err(GaborError::MaskRange { index: 1, .. })
        ));
        let grid = TFCoefficients::from_vec(
            2,
            5,
            (0..10).map(|i| Complex64::new(i as f64, 0.0)).collect(),
        )
        .unwrap();
        let mask = TFMask::top_fraction(&grid, 0.2).unwrap();
        assert_eq!(
            mask.values(),
            &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0]
        );
        assert_eq!(TFMask::top_fraction(&grid, 0.01).unwrap().support(), 1);
        assert!(TFMask::top_fraction(&grid, 0.0).is_err());
    }

    #[test]
    fn mask_grid_round_trip() {
        let mask = TFMask::new(2, 2, vec![0.0, 0.25, 1.0, 0.5]).unwrap();
        assert_eq!(TFMask::from_grid(&mask.to_grid()).unwrap(), mask);
        let mut g = mask.to_grid();
        g[(0, 0)] = Complex64::new(0.0, 1.0);
        assert!(TFMask::from_grid(&g).is_err());
    }

    #[test]
    fn zero_noise_is_degenerate() {
        let (lat, _, gamma) = box_pair();
        let s = ComplexSignal::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(matches!(
            tf_peak_snr(&s, &ComplexSignal::zeros(4).unwrap(), &gamma, &lat),
            Err(GaborError::DegenerateInput(_))
        ));
    }

    #[test]
    fn experiment_configuration_errors() {
        assert!(snr_growth_experiment(&[64], 0, 0).is_err());
        assert!(snr_growth_experiment(&[128, 64], 1, 0).is_err());
        assert!(snr_growth_experiment(&[], 1, 0).is_err());
        let odd = SnrExperimentConfig {
            duration: 0.5,
            ..Default::default()
        };
        assert!(snr_growth_experiment_with(&[3], 1, 0, &odd).is_err());
    }

    #[test]
    fn experiment_lattices() {
        let cfg = SnrExperimentConfig::default();
        let lat = snr_lattice(64, &cfg).unwrap();
        assert_eq!((lat.len(), lat.a(), lat.channels()), (256, 2, 64));
        let lat = snr_lattice(512, &cfg).unwrap();
        assert_eq!((lat.len(), lat.a(), lat.channels()), (2048, 16, 512));
        let lat = snr_lattice(10, &cfg).unwrap();
        assert_eq!(lat.a(), 1);
    }

    #[test]
    fn single_rate_gain_exceeds_one() {
        let gains = snr_growth_experiment(&[64], 1, 0).unwrap();
        assert_eq!(gains.len(), 1);
        assert!(gains[0].mean_gain > 1.0);
    }

    #[test]
    fn chirp_denoising_trajectory() {
        let out = chirp_denoise_experiment(&ChirpDenoiseConfig::default()).unwrap();
        let r = &out.report.residuals;
        assert_eq!(r.len(), out.report.iterations);
        assert!(r.windows(2).skip(2).all(|w| w[1] < w[0]), "{r:?}");
        assert!(out.output_mse < out.input_mse);
        let e = &out.rejected_energy;
        assert!(e.windows(2).skip(1).all(|w| w[1] <= w[0]), "{e:?}");

        let again = chirp_denoise_experiment(&ChirpDenoiseConfig::default()).unwrap();
        assert_eq!(again.report.residuals, out.report.residuals);
    }
}
