use std::io::Write;
use std::path::{Path, PathBuf};

use gabor_core::chirp::{dcft, estimate_chirp_params, make_chirp, ChirpParams};
use gabor_core::dual::{
    generalized_dual, min_norm_dual, most_orthogonal_like_dual, LinearOperator,
};
use gabor_core::noise::NoiseGenerator;
use gabor_core::tvfilter::{iterative_tv_filter, linear_chirp, snr_growth_experiment, TFMask};
use gabor_core::waveform::{
    demodulate, gaussian_pulse, modulate, ofdm_equivalence_deviation, GaussianParams,
};
use gabor_core::{
    analysis_matrix_rank, dgt, idgt, uncertainty_product, wexler_raz_residual, Lattice,
    TFCoefficients, Window, WindowRole,
};

use crate::command::{Command, DualKind, GenCommand, LatticeArgs, SizedLatticeArgs};
use crate::error::{CliError, Result};
use crate::io::{read_grid, read_signal, write_grid, write_grid_image, write_signal, write_text};

fn lattice_for(len: usize, args: LatticeArgs) -> Result<Lattice> {
    Ok(Lattice::new(len, args.a, args.m)?)
}

fn sized(args: SizedLatticeArgs) -> Result<Lattice> {
    lattice_for(args.len, args.lattice)
}

/// Scalar reports go to `out` when given, otherwise to `stdout`.
fn report(text: String, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_text(path, &text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn write_window(path: &Path, w: Window) -> Result<()> {
    write_signal(path, &w.into_signal())
}

/// Executes a parsed command.
pub fn run(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Dgt {
            input,
            lattice,
            window,
            out,
            image,
            gamma,
        } => {
            let s = read_signal(&input)?;
            let lat = lattice_for(s.len(), lattice)?;
            let c = dgt(&s, &window.build(&lat, WindowRole::Analysis)?, &lat)?;
            write_grid(&out, &c)?;
            if let Some(path) = image {
                write_grid_image(&path, &c, gamma)?;
            }
            Ok(())
        }
        Command::Idgt {
            input,
            a,
            window,
            out,
        } => {
            let c = read_grid(&input)?;
            let lat = Lattice::new(c.cols() * a, a, c.rows())?;
            write_signal(
                &out,
                &idgt(&c, &window.build(&lat, WindowRole::Synthesis)?, &lat)?,
            )
        }
        Command::Dual {
            lattice,
            window,
            kind,
            operator,
            out,
        } => {
            let lat = sized(lattice)?;
            let p = window.build(&lat, WindowRole::Synthesis)?;
            let gamma = match kind {
                DualKind::MinNorm => min_norm_dual(&p, &lat)?,
                DualKind::MostOrthogonal => most_orthogonal_like_dual(&p, &lat)?,
                DualKind::Generalized => {
                    let path =
                        operator.ok_or_else(|| CliError::Usage("--operator is required".into()))?;
                    let grid = read_grid(&path)?;
                    if grid.rows() != grid.cols() {
                        return Err(CliError::Usage(format!(
                            "operator grid must be square, got {}x{}",
                            grid.rows(),
                            grid.cols()
                        )));
                    }
                    let op = LinearOperator::from_row_major(grid.rows(), grid.as_slice())?;
                    generalized_dual(&p, &lat, &op)?
                }
            };
            write_window(&out, gamma)
        }
        Command::Wrcheck {
            lattice,
            synthesis,
            analysis,
            out,
        } => {
            let lat = sized(lattice)?;
            let p = synthesis.build(&lat, WindowRole::Synthesis)?;
            let gamma = analysis.build(&lat, WindowRole::Analysis)?;
            let r = wexler_raz_residual(&p, &gamma, &lat)?;
            report(format!("{r:e}\n"), out.as_deref(), stdout)
        }
        Command::Rank {
            lattice,
            window,
            out,
        } => {
            let lat = sized(lattice)?;
            let rank = analysis_matrix_rank(&window.build(&lat, WindowRole::Analysis)?, &lat)?;
            report(format!("{rank}\n"), out.as_deref(), stdout)
        }
        Command::Uncertainty { input, out } => {
            let u = uncertainty_product(&read_signal(&input)?)?;
            report(format!("{u:e}\n"), out.as_deref(), stdout)
        }
        Command::Filter {
            input,
            mask,
            lattice,
            window,
            dual,
            tol,
            max_iter,
            out,
            report: report_path,
        } => {
            let s = read_signal(&input)?;
            let lat = lattice_for(s.len(), lattice)?;
            let mask = TFMask::from_grid(&read_grid(&mask)?)?;
            let p = window.build(&lat, WindowRole::Synthesis)?;
            let gamma = match dual {
                Some(spec) => spec.build(&lat, WindowRole::Analysis)?,
                None => most_orthogonal_like_dual(&p, &lat)?,
            };
            let result = iterative_tv_filter(&s, &mask, &p, &gamma, &lat, tol, max_iter)?;
            write_signal(&out, &result.signal)?;
            let mut text = format!(
                "iterations {}\nconverged {}\n",
                result.iterations, result.converged
            );
            for (k, r) in result.residuals.iter().enumerate() {
                text.push_str(&format!("change {} {r:e}\n", k + 1));
            }
            report(text, report_path.as_deref(), stdout)
        }
        Command::SnrExperiment {
            rates,
            trials,
            seed,
            out,
        } => {
            let gains = snr_growth_experiment(&rates, trials, seed)?;
            let text: String = gains
                .iter()
                .map(|g| format!("{} {:e}\n", g.rate, g.mean_gain))
                .collect();
            report(text, out.as_deref(), stdout)
        }
        Command::Dcft {
            input,
            out,
            image,
            gamma,
        } => {
            let grid = dcft(&read_signal(&input)?)?;
            write_grid(&out, &grid)?;
            if let Some(path) = image {
                write_grid_image(&path, &grid, gamma)?;
            }
            Ok(())
        }
        Command::ChirpEstimate { input, out } => {
            let est = estimate_chirp_params(&read_signal(&input)?)?;
            let text = format!(
                "k0 {}\nl0 {}\namplitude {:e},{:e}\n",
                est.k0, est.l0, est.amplitude.re, est.amplitude.im
            );
            report(text, out.as_deref(), stdout)
        }
        Command::Modulate {
            symbols,
            a,
            window,
            out,
        } => {
            let c = read_grid(&symbols)?;
            let lat = Lattice::new(c.cols() * a, a, c.rows())?;
            write_signal(
                &out,
                &modulate(&c, &window.build(&lat, WindowRole::Synthesis)?, &lat)?,
            )
        }
        Command::Demodulate {
            input,
            lattice,
            window,
            out,
        } => {
            let s = read_signal(&input)?;
            let lat = lattice_for(s.len(), lattice)?;
            write_grid(
                &out,
                &demodulate(&s, &window.build(&lat, WindowRole::Analysis)?, &lat)?,
            )
        }
        Command::OfdmCheck { symbols, out } => {
            let c = read_grid(&symbols)?;
            let lat = Lattice::new(c.cols() * c.rows(), c.rows(), c.rows())?;
            let d = ofdm_equivalence_deviation(&c, &lat)?;
            report(format!("{d:e}\n"), out.as_deref(), stdout)
        }
        Command::Gen(gen) => run_gen(gen),
    }
}

fn run_gen(gen: GenCommand) -> Result<()> {
    match gen {
        GenCommand::Chirp { len, k0, l0, out } => {
            write_signal(&out, &make_chirp(len, ChirpParams::unit(k0, l0))?)
        }
        GenCommand::Lfm { len, f0, f1, out } => write_signal(&out, &linear_chirp(len, f0, f1)?),
        GenCommand::Gauss { len, sigma, out } => {
            let lat = Lattice::new(len, 1, 1)?;
            write_window(
                &out,
                gaussian_pulse(&lat, GaussianParams::new(1.0, sigma)?)?,
            )
        }
        GenCommand::Rect { len, width, out } => write_window(
            &out,
            Window::rectangular(len, width, WindowRole::Synthesis)?,
        ),
        GenCommand::Delta { len, out } => {
            write_window(&out, Window::delta(len, WindowRole::Synthesis)?)
        }
        GenCommand::Noise {
            len,
            variance,
            seed,
            out,
        } => write_signal(&out, &NoiseGenerator::new(seed).white_noise(len, variance)?),
        GenCommand::Symbols { m, n, seed, out } => {
            let mut rng = NoiseGenerator::new(seed);
            let cells = (0..m * n).map(|_| rng.qpsk()).collect();
            write_grid(&out, &TFCoefficients::from_vec(m, n, cells)?)
        }
        GenCommand::Mask {
            reference,
            fraction,
            out,
        } => {
            let mask = TFMask::top_fraction(&read_grid(&reference)?, fraction)?;
            write_grid(&out, &mask.to_grid())
        }
    }
}
