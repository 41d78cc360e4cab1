#![allow(dead_code)]

use std::f64::consts::TAU;

use gabor_core::noise::NoiseGenerator;
use gabor_core::{Complex64, ComplexSignal, Lattice, TFCoefficients, Window, WindowRole};

pub const LATTICES: [(usize, usize, usize); 3] = [(4, 2, 2), (16, 4, 8), (48, 4, 8)];

pub fn lattice((len, a, m): (usize, usize, usize)) -> Lattice {
    Lattice::new(len, a, m).unwrap()
}

pub fn random_signal(rng: &mut NoiseGenerator, len: usize) -> ComplexSignal {
    rng.white_noise(len, 1.0).unwrap()
}

pub fn random_grid(rng: &mut NoiseGenerator, rows: usize, cols: usize) -> TFCoefficients {
    TFCoefficients::from_vec(
        rows,
        cols,
        (0..rows * cols).map(|_| rng.complex_normal(1.0)).collect(),
    )
    .unwrap()
}

/// Periodised Gaussian centred half a sample left of `L/2`. A window
/// symmetric about an integer has a Zak zero at critical sampling, so the
/// half-sample centre keeps the Gaussian usable on every test lattice.
pub fn offset_gaussian(len: usize, sigma: f64) -> Window {
    let centre = len as f64 / 2.0 - 0.5;
    let values: Vec<f64> = (0..len)
        .map(|l| {
            (-10i64..=10)
                .map(|j| {
                    let x = l as f64 + (j * len as i64) as f64 - centre;
                    (-x * x / (2.0 * sigma * sigma)).exp()
                })
                .sum()
        })
        .collect();
    Window::from_real(&values, WindowRole::Synthesis).unwrap()
}

/// Rectangular, Gaussian and random complex synthesis windows for `lat`.
pub fn test_windows(lat: &Lattice, seed: u64) -> Vec<(&'static str, Window)> {
    let len = lat.len();
    let rect = Window::rectangular(len, lat.channels(), WindowRole::Synthesis).unwrap();
    let sigma = (len as f64 / 8.0).max(1.0);
    let gauss = offset_gaussian(len, sigma);
    let mut rng = NoiseGenerator::new(seed);
    let random = Window::from_signal(random_signal(&mut rng, len), WindowRole::Synthesis);
    vec![("rect", rect), ("gauss", gauss), ("random", random)]
}

fn kernel(sign: f64, m: usize, l: usize, channels: usize) -> Complex64 {
    Complex64::from_polar(
        1.0,
        sign * TAU * ((m * l) % channels) as f64 / channels as f64,
    )
}

/// Direct triple-sum analysis.
pub fn brute_dgt(s: &ComplexSignal, gamma: &Window, lat: &Lattice) -> TFCoefficients {
    let len = lat.len();
    let mut out = TFCoefficients::zeros(lat.channels(), lat.shifts());
    for m in 0..lat.channels() {
        for n in 0..lat.shifts() {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..len {
                acc += s[l]
                    * gamma[(l + len - n * lat.a()) % len].conj()
                    * kernel(-1.0, m, l, lat.channels());
            }
            out[(m, n)] = acc;
        }
    }
    out
}

/// Direct triple-sum synthesis.
pub fn brute_idgt(c: &TFCoefficients, p: &Window, lat: &Lattice) -> ComplexSignal {
    let len = lat.len();
    let out = (0..len)
        .map(|l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..lat.channels() {
                for n in 0..lat.shifts() {
                    acc += c[(m, n)]
                        * p[(l + len - n * lat.a()) % len]
                        * kernel(1.0, m, l, lat.channels());
                }
            }
            acc
        })
        .collect();
    ComplexSignal::new(out).unwrap()
}

pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}
