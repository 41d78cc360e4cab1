use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::window_spec::WindowSpec;

fn positive_int(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        Ok(_) => Err("must be positive".into()),
        Err(_) => Err(format!("{s:?} is not a non-negative integer")),
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be positive and finite".into()),
        Err(_) => Err(format!("{s:?} is not a number")),
    }
}

fn finite_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("{s:?} is not a finite number")),
    }
}

fn fraction(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v <= 1.0 => Ok(v),
        _ => Err(format!("{s:?} is not in (0, 1]")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gabor",
    version,
    about = "Finite discrete Gabor analysis tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Time step and channel count.
#[derive(Debug, Clone, Copy, PartialEq, Args)]
pub struct LatticeArgs {
    /// Time step in samples.
    #[arg(long, value_parser = positive_int)]
    pub a: usize,
    /// Number of frequency channels.
    #[arg(long = "M", value_parser = positive_int)]
    pub m: usize,
}

/// Time step, channel count and signal length.
#[derive(Debug, Clone, Copy, PartialEq, Args)]
pub struct SizedLatticeArgs {
    /// Signal length.
    #[arg(long = "L", value_parser = positive_int)]
    pub len: usize,
    #[command(flatten)]
    pub lattice: LatticeArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DualKind {
    MinNorm,
    MostOrthogonal,
    Generalized,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Gabor coefficients of a signal.
    Dgt {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Analysis window.
        #[arg(long)]
        window: WindowSpec,
        #[arg(long)]
        out: PathBuf,
        /// Also write |coefficients| as a plain graymap.
        #[arg(long)]
        image: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0, value_parser = positive_real)]
        gamma: f64,
    },
    /// Signal synthesised from a coefficient grid.
    Idgt {
        #[arg(long = "in")]
        input: PathBuf,
        /// Time step; the channel count comes from the grid.
        #[arg(long, value_parser = positive_int)]
        a: usize,
        /// Synthesis window.
        #[arg(long)]
        window: WindowSpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dual analysis window of a synthesis window.
    Dual {
        #[command(flatten)]
        lattice: SizedLatticeArgs,
        #[arg(long)]
        window: WindowSpec,
        #[arg(long, value_enum, default_value_t = DualKind::MinNorm)]
        kind: DualKind,
        /// L x L operator grid for the generalized dual.
        #[arg(long, required_if_eq("kind", "generalized"))]
        operator: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Wexler-Raz residual of a window pair.
    Wrcheck {
        #[command(flatten)]
        lattice: SizedLatticeArgs,
        #[arg(long)]
        synthesis: WindowSpec,
        #[arg(long)]
        analysis: WindowSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical rank of the analysis matrix.
    Rank {
        #[command(flatten)]
        lattice: SizedLatticeArgs,
        #[arg(long)]
        window: WindowSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time-bandwidth product of a signal.
    Uncertainty {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterative time-variant filtering with a coefficient mask.
    Filter {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        mask: PathBuf,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Synthesis window.
        #[arg(long)]
        window: WindowSpec,
        /// Analysis window; defaults to the most-orthogonal-like dual.
        #[arg(long)]
        dual: Option<WindowSpec>,
        #[arg(long, default_value_t = 1e-6, value_parser = positive_real)]
        tol: f64,
        #[arg(long, default_value_t = 100, value_parser = positive_int)]
        max_iter: usize,
        #[arg(long)]
        out: PathBuf,
        /// Iteration summary; stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Mean Gabor-domain SNR gain of a noisy chirp per sampling rate.
    SnrExperiment {
        #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256, 512], value_parser = positive_int)]
        rates: Vec<usize>,
        #[arg(long, default_value_t = 20, value_parser = positive_int)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discrete chirp-Fourier transform.
    Dcft {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        image: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0, value_parser = positive_real)]
        gamma: f64,
    },
    /// Frequency, rate and amplitude of the strongest chirp.
    ChirpEstimate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gabor-atom transmit signal from a symbol grid.
    Modulate {
        #[arg(long)]
        symbols: PathBuf,
        #[arg(long, value_parser = positive_int)]
        a: usize,
        #[arg(long)]
        window: WindowSpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Symbol grid recovered with an analysis window.
    Demodulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        window: WindowSpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Deviation of rectangular-pulse modulation from block inverse DFTs.
    OfdmCheck {
        #[arg(long)]
        symbols: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate test signals, windows, symbol grids and masks.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum GenCommand {
    /// Discrete chirp exp(2πi(l0 n² + k0 n)/L).
    Chirp {
        #[arg(long = "L", value_parser = positive_int)]
        len: usize,
        #[arg(long)]
        k0: usize,
        #[arg(long)]
        l0: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Linear frequency sweep from f0 to f1 cycles per sample.
    Lfm {
        #[arg(long = "L", value_parser = positive_int)]
        len: usize,
        #[arg(long, value_parser = finite_real)]
        f0: f64,
        #[arg(long, value_parser = finite_real)]
        f1: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Periodised Gaussian centred at L/2.
    Gauss {
        #[arg(long = "L", value_parser = positive_int)]
        len: usize,
        #[arg(long, value_parser = positive_real)]
        sigma: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Ones on the first `width` samples.
    Rect {
        #[arg(long = "L", value_parser = positive_int)]
        len: usize,
        #[arg(long, value_parser = positive_int)]
        width: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Unit impulse at sample 0.
    Delta {
        #[arg(long = "L", value_parser = positive_int)]
        len: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Complex white Gaussian noise.
    Noise {
        #[arg(long = "L", value_parser = positive_int)]
        len: usize,
        #[arg(long, default_value_t = 1.0, value_parser = positive_real)]
        variance: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random 4-QAM symbol grid.
    Symbols {
        #[arg(long = "M", value_parser = positive_int)]
        m: usize,
        #[arg(long = "N", value_parser = positive_int)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Binary mask on the largest cells of a reference grid.
    Mask {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long, default_value_t = 0.05, value_parser = fraction)]
        fraction: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses arguments that follow the program name.
pub fn parse_command<I, T>(args: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv =
        std::iter::once(std::ffi::OsString::from("gabor")).chain(args.into_iter().map(Into::into));
    Cli::try_parse_from(argv).map(|cli| cli.command)
}
