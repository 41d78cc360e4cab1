use crate::error::{GaborError, Result};

/// Separable time-frequency lattice for signals of length `len`.
///
/// Atoms sit at time shifts `n * a` (`n < N = len / a`) and at the
/// `channels` modulation frequencies `m / channels` cycles per sample.
/// The product `a / channels` is the discrete time-bandwidth density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lattice {
    len: usize,
    a: usize,
    channels: usize,
}

impl Lattice {
    /// Builds a lattice, rejecting zero parameters and steps that do not divide `len`.
    ///
    /// Lattices with density above one are accepted for analysis-only use;
    /// check [`Lattice::is_reconstructing`] before asking for a dual window.
    pub fn new(len: usize, a: usize, channels: usize) -> Result<Self> {
        for (name, v) in [("L", len), ("a", a), ("M", channels)] {
            if v == 0 {
                return Err(GaborError::NonPositive { name });
            }
        }
        if !len.is_multiple_of(a) {
            return Err(GaborError::Divisibility {
                what: "time step a",
                divisor: a,
                len,
            });
        }
        if !len.is_multiple_of(channels) {
            return Err(GaborError::Divisibility {
                what: "channel count M",
                divisor: channels,
                len,
            });
        }
        Ok(Self { len, a, channels })
    }

    /// Signal length L.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Time step a in samples.
    pub fn a(&self) -> usize {
        self.a
    }

    /// Number of frequency channels M.
    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Number of time shifts N = L / a.
    pub fn shifts(&self) -> usize {
        self.len / self.a
    }

    /// Number of coefficients M·N.
    pub fn coefficient_count(&self) -> usize {
        self.channels * self.shifts()
    }

    /// Density a / M.
    pub fn density(&self) -> f64 {
        self.a as f64 / self.channels as f64
    }

    pub fn is_reconstructing(&self) -> bool {
        self.a <= self.channels
    }

    pub fn is_critical(&self) -> bool {
        self.a == self.channels
    }

    pub fn is_oversampled(&self) -> bool {
        self.a < self.channels
    }

    /// Number of Wexler-Raz constraints, a·L/M.
    pub fn adjoint_constraint_count(&self) -> usize {
        self.a * (self.len / self.channels)
    }

    pub(crate) fn require_reconstructing(&self) -> Result<()> {
        if self.is_reconstructing() {
            Ok(())
        } else {
            Err(GaborError::UnsupportedLattice {
                a: self.a,
                m: self.channels,
            })
        }
    }
}
