//! Value types shared by every transform: time-domain signals, windows and
//! coefficient grids.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{GaborError, Result};
use crate::lattice::Lattice;

fn check_finite(values: &[Complex64]) -> Result<()> {
    match values
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(i) => Err(GaborError::NonFinite(i)),
        None => Ok(()),
    }
}

/// Finite-length sequence of finite complex samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal {
    samples: Vec<Complex64>,
}

impl ComplexSignal {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(GaborError::DegenerateInput(
                "signal must have at least one sample",
            ));
        }
        check_finite(&samples)?;
        Ok(Self { samples })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.samples
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Largest absolute sample difference.
    pub fn max_abs_diff(&self, other: &ComplexSignal) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Sample-wise sum; lengths must agree.
    pub fn add(&self, other: &ComplexSignal) -> Result<ComplexSignal> {
        if self.len() != other.len() {
            return Err(GaborError::Dimension {
                what: "signal sum",
                expected: self.len().to_string(),
                actual: other.len().to_string(),
            });
        }
        Ok(ComplexSignal {
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> ComplexSignal {
        ComplexSignal {
            samples: self.samples.iter().map(|z| z * factor).collect(),
        }
    }

    pub(crate) fn require_len(&self, lat: &Lattice, what: &'static str) -> Result<()> {
        if self.len() == lat.len() {
            Ok(())
        } else {
            Err(GaborError::Dimension {
                what,
                expected: lat.len().to_string(),
                actual: self.len().to_string(),
            })
        }
    }
}

impl Index<usize> for ComplexSignal {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.samples[i]
    }
}

/// Whether a window builds signals from coefficients or extracts them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowRole {
    Synthesis,
    Analysis,
}

/// Length-L window used either as a synthesis pulse or as an analysis window.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    signal: ComplexSignal,
    role: WindowRole,
}

impl Window {
    pub fn new(values: Vec<Complex64>, role: WindowRole) -> Result<Self> {
        Ok(Self {
            signal: ComplexSignal::new(values)?,
            role,
        })
    }

    pub fn synthesis(values: Vec<Complex64>) -> Result<Self> {
        Self::new(values, WindowRole::Synthesis)
    }

    pub fn analysis(values: Vec<Complex64>) -> Result<Self> {
        Self::new(values, WindowRole::Analysis)
    }

    pub fn from_real(values: &[f64], role: WindowRole) -> Result<Self> {
        Ok(Self {
            signal: ComplexSignal::from_real(values)?,
            role,
        })
    }

    pub fn from_signal(signal: ComplexSignal, role: WindowRole) -> Self {
        Self { signal, role }
    }

    /// Unit impulse at position 0.
    pub fn delta(len: usize, role: WindowRole) -> Result<Self> {
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        if let Some(first) = v.first_mut() {
            *first = Complex64::new(1.0, 0.0);
        }
        Self::new(v, role)
    }

    /// `width` ones starting at position 0, zeros elsewhere.
    pub fn rectangular(len: usize, width: usize, role: WindowRole) -> Result<Self> {
        if width == 0 || width > len {
            return Err(GaborError::Configuration(format!(
                "rectangular width {width} must lie in 1..={len}"
            )));
        }
        let v = (0..len)
            .map(|l| Complex64::new(if l < width { 1.0 } else { 0.0 }, 0.0))
            .collect();
        Self::new(v, role)
    }

    pub fn role(&self) -> WindowRole {
        self.role
    }

    pub fn with_role(mut self, role: WindowRole) -> Self {
        self.role = role;
        self
    }

    pub fn len(&self) -> usize {
        self.signal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signal.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        self.signal.samples()
    }

    pub fn as_signal(&self) -> &ComplexSignal {
        &self.signal
    }

    pub fn into_signal(self) -> ComplexSignal {
        self.signal
    }

    pub fn norm(&self) -> f64 {
        self.signal.norm()
    }

    pub fn max_abs_diff(&self, other: &Window) -> f64 {
        self.signal.max_abs_diff(&other.signal)
    }

    pub(crate) fn require_len(&self, lat: &Lattice) -> Result<()> {
        self.signal.require_len(lat, "window length")
    }
}

impl Index<usize> for Window {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.signal[i]
    }
}

/// Dense complex grid stored frequency-major: entry `(m, n)` is channel `m`,
/// time shift `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TFCoefficients {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl TFCoefficients {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(GaborError::Dimension {
                what: "coefficient grid",
                expected: format!("{rows}x{cols}"),
                actual: format!("{} values", data.len()),
            });
        }
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GaborError::Dimension {
                what: "coefficient grid rows",
                expected: cols.to_string(),
                actual: "ragged rows".into(),
            });
        }
        Self::from_vec(rows.len(), cols, rows.concat())
    }

    /// Number of frequency channels (rows).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of time shifts (columns).
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, m: usize) -> &[Complex64] {
        &self.data[m * self.cols..(m + 1) * self.cols]
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.norm()).collect()
    }

    pub fn energy(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &TFCoefficients) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn require_shape(&self, lat: &Lattice) -> Result<()> {
        if self.rows == lat.channels() && self.cols == lat.shifts() {
            Ok(())
        } else {
            Err(GaborError::Dimension {
                what: "coefficient grid",
                expected: format!("{}x{}", lat.channels(), lat.shifts()),
                actual: format!("{}x{}", self.rows, self.cols),
            })
        }
    }
}

impl Index<(usize, usize)> for TFCoefficients {
    type Output = Complex64;

    fn index(&self, (m, n): (usize, usize)) -> &Complex64 {
        assert!(m < self.rows && n < self.cols, "grid index out of range");
        &self.data[m * self.cols + n]
    }
}

impl IndexMut<(usize, usize)> for TFCoefficients {
    fn index_mut(&mut self, (m, n): (usize, usize)) -> &mut Complex64 {
        assert!(m < self.rows && n < self.cols, "grid index out of range");
        &mut self.data[m * self.cols + n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_samples() {
        let err = ComplexSignal::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(f64::NAN, 0.0),
        ]);
        assert_eq!(err, Err(GaborError::NonFinite(1)));
        assert!(ComplexSignal::new(vec![]).is_err());
    }

    #[test]
    fn grid_indexing_is_frequency_major() {
        let mut g = TFCoefficients::zeros(2, 3);
        g[(1, 2)] = Complex64::new(5.0, 0.0);
        assert_eq!(g.as_slice()[5], Complex64::new(5.0, 0.0));
        assert_eq!(g.row(1)[2].re, 5.0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![
            vec![Complex64::new(0.0, 0.0); 2],
            vec![Complex64::new(0.0, 0.0); 3],
        ];
        assert!(TFCoefficients::from_rows(&rows).is_err());
    }
}
