use std::path::PathBuf;
use std::str::FromStr;

use gabor_core::waveform::{gaussian_pulse, GaussianParams};
use gabor_core::{Lattice, Window, WindowRole};

use crate::error::{CliError, Result};
use crate::io::read_signal;

/// Command-line window description: `rect:<len>`, `gauss:<sigma>`,
/// `file:<path>` or `delta`.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowSpec {
    Rect(usize),
    Gauss(f64),
    File(PathBuf),
    Delta,
}

impl FromStr for WindowSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "delta" {
            return Ok(Self::Delta);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(|| {
            format!("unknown window {s:?}; use rect:<len>, gauss:<sigma>, file:<path> or delta")
        })?;
        match kind {
            "rect" => match arg.parse::<usize>() {
                Ok(n) if n > 0 => Ok(Self::Rect(n)),
                _ => Err(format!(
                    "rect length must be a positive integer, got {arg:?}"
                )),
            },
            "gauss" => match arg.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => Ok(Self::Gauss(v)),
                _ => Err(format!(
                    "gauss sigma must be a positive number, got {arg:?}"
                )),
            },
            "file" if !arg.is_empty() => Ok(Self::File(PathBuf::from(arg))),
            _ => Err(format!(
                "unknown window {s:?}; use rect:<len>, gauss:<sigma>, file:<path> or delta"
            )),
        }
    }
}

impl WindowSpec {
    /// Materialises the window on `lat`. Rectangles start at sample 0,
    /// Gaussians are centred at `L/2`.
    pub fn build(&self, lat: &Lattice, role: WindowRole) -> Result<Window> {
        let len = lat.len();
        let w = match self {
            Self::Rect(width) => Window::rectangular(len, *width, role)?,
            Self::Gauss(sigma) => {
                gaussian_pulse(lat, GaussianParams::new(1.0, *sigma)?)?.with_role(role)
            }
            Self::Delta => Window::delta(len, role)?,
            Self::File(path) => {
                let s = read_signal(path)?;
                if s.len() != len {
                    return Err(CliError::Usage(format!(
                        "window file {} has {} samples, signal length is {len}",
                        path.display(),
                        s.len()
                    )));
                }
                Window::from_signal(s, role)
            }
        };
        Ok(w)
    }
}
