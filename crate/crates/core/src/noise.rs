//! Reproducible noise source.
//!
//! A 64-bit linear congruential generator
//! `x ← 6364136223846793005·x + 1442695040888963407 (mod 2⁶⁴)`, seeded with
//! `x₀ = seed`. Uniform variates take the top 53 bits of each new state,
//! `u = ((x >> 11) + 0.5) / 2⁵³ ∈ (0, 1)`. A Box-Muller step turns two
//! consecutive uniforms `(u₁, u₂)` into the pair
//! `√(−2 ln u₁)·(cos 2πu₂, sin 2πu₂)`. A complex noise sample of variance
//! `v` is `√(v/2)·(z₁ + i·z₂)` built from one such pair.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::Result;
use crate::signal::ComplexSignal;

const LCG_MUL: u64 = 6364136223846793005;
const LCG_INC: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct NoiseGenerator {
    state: u64,
}

impl NoiseGenerator {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_INC);
        self.state
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    }

    /// Two independent standard normals.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        (r * c, r * s)
    }

    /// Circular complex Gaussian sample with `E|z|² = variance`.
    pub fn complex_normal(&mut self, variance: f64) -> Complex64 {
        let (x, y) = self.normal_pair();
        Complex64::new(x, y) * (variance / 2.0).sqrt()
    }

    /// `len` samples of circular complex white noise.
    pub fn white_noise(&mut self, len: usize, variance: f64) -> Result<ComplexSignal> {
        ComplexSignal::new((0..len).map(|_| self.complex_normal(variance)).collect())
    }

    /// Uniform pick from the unit-energy 4-QAM alphabet `(±1 ± i)/√2`.
    pub fn qpsk(&mut self) -> Complex64 {
        let bits = self.next_u64() >> 62;
        let re = if bits & 1 == 0 { 1.0 } else { -1.0 };
        let im = if bits & 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}
