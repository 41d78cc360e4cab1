//! Text containers for signals and coefficient grids, plus the plain
//! graymap writer.
//!
//! Signal files hold an optional `# signal L=<n>` header and one `re,im`
//! pair per line. Grid files start with `# grid M=<m> N=<n>` followed by `M`
//! lines of `N` comma-separated `re:im` cells. Numbers are written with 17
//! significant digits, so a write/read cycle is bit-exact.

use std::fs;
use std::path::Path;

use gabor_core::{Complex64, ComplexSignal, TFCoefficients};

use crate::error::{CliError, Result};

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_number(path: &Path, line: usize, field: &str) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| CliError::input(path, line, format!("malformed number {:?}", field.trim())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::input(path, line, "non-finite value"))
    }
}

fn parse_pair(path: &Path, line: usize, text: &str, sep: char) -> Result<Complex64> {
    let (re, im) = text.split_once(sep).ok_or_else(|| {
        CliError::input(
            path,
            line,
            format!("expected re{sep}im, got {:?}", text.trim()),
        )
    })?;
    Ok(Complex64::new(
        parse_number(path, line, re)?,
        parse_number(path, line, im)?,
    ))
}

/// Value of `key=<n>` in a header line.
fn header_field(path: &Path, header: &str, key: &str) -> Result<usize> {
    header
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .ok_or_else(|| CliError::input(path, 1, format!("header lacks {key}=<n>")))?
        .parse()
        .map_err(|_| CliError::input(path, 1, format!("malformed {key} in header")))
}

pub fn parse_signal(path: &Path, text: &str) -> Result<ComplexSignal> {
    let lines: Vec<&str> = text.lines().collect();
    let mut expected = None;
    let mut samples = Vec::new();
    for (i, raw) in lines.iter().enumerate() {
        let line = raw.trim();
        if i == 0 && line.starts_with('#') {
            if !line
                .trim_start_matches('#')
                .trim_start()
                .starts_with("signal")
            {
                return Err(CliError::input(path, 1, "expected '# signal L=<n>' header"));
            }
            expected = Some(header_field(path, line, "L")?);
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if expected.is_some_and(|n| samples.len() == n) {
            return Err(CliError::input(
                path,
                i + 1,
                "more samples than the header declares",
            ));
        }
        samples.push(parse_pair(path, i + 1, line, ',')?);
    }
    let last_line = lines.len().max(1);
    if let Some(n) = expected {
        if samples.len() != n {
            return Err(CliError::input(
                path,
                last_line,
                format!(
                    "header declares L={n} but the file ends after {} samples",
                    samples.len()
                ),
            ));
        }
    }
    if samples.is_empty() {
        return Err(CliError::input(path, last_line, "no samples"));
    }
    Ok(ComplexSignal::new(samples)?)
}

pub fn read_signal(path: &Path) -> Result<ComplexSignal> {
    parse_signal(path, &read_text(path)?)
}

pub fn format_signal(s: &ComplexSignal) -> String {
    let mut out = format!("# signal L={}\n", s.len());
    for z in s.samples() {
        out.push_str(&format!("{:.16e},{:.16e}\n", z.re, z.im));
    }
    out
}

pub fn write_signal(path: &Path, s: &ComplexSignal) -> Result<()> {
    write_text(path, &format_signal(s))
}

pub fn parse_grid(path: &Path, text: &str) -> Result<TFCoefficients> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::input(path, 1, "empty grid file"))?;
    if !header.trim_start().starts_with('#') || !header.contains("grid") {
        return Err(CliError::input(
            path,
            1,
            "expected '# grid M=<m> N=<n>' header",
        ));
    }
    let rows = header_field(path, header, "M")?;
    let cols = header_field(path, header, "N")?;
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (i, line) in lines {
        if seen == rows {
            return Err(CliError::input(
                path,
                i + 1,
                format!("more than M={rows} rows"),
            ));
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols {
            return Err(CliError::input(
                path,
                i + 1,
                format!("expected N={cols} cells, found {}", cells.len()),
            ));
        }
        for cell in cells {
            data.push(parse_pair(path, i + 1, cell, ':')?);
        }
        seen += 1;
    }
    if seen != rows {
        return Err(CliError::input(
            path,
            text.lines().count().max(1),
            format!("header declares M={rows} rows but the file has {seen}"),
        ));
    }
    Ok(TFCoefficients::from_vec(rows, cols, data)?)
}

pub fn read_grid(path: &Path) -> Result<TFCoefficients> {
    parse_grid(path, &read_text(path)?)
}

pub fn format_grid(c: &TFCoefficients) -> String {
    let mut out = format!("# grid M={} N={}\n", c.rows(), c.cols());
    for m in 0..c.rows() {
        let row: Vec<String> = c
            .row(m)
            .iter()
            .map(|z| format!("{:.16e}:{:.16e}", z.re, z.im))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_grid(path: &Path, c: &TFCoefficients) -> Result<()> {
    write_text(path, &format_grid(c))
}

/// Plain (`P2`) graymap of `|c|`: width `N`, height `M`, row `m` of the grid
/// is image row `m`. Pixels are `round(255·(|v|/max)^gamma)`; an all-zero
/// grid gives an all-zero image.
pub fn format_grid_image(c: &TFCoefficients, gamma: f64) -> Result<String> {
    if c.rows() == 0 || c.cols() == 0 {
        return Err(CliError::Usage("cannot draw an empty grid".into()));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(CliError::Usage("gamma correction must be positive".into()));
    }
    let mags = c.magnitudes();
    let peak = mags.iter().copied().fold(0.0, f64::max);
    let mut out = format!("P2\n{} {}\n255\n", c.cols(), c.rows());
    for m in 0..c.rows() {
        let row: Vec<String> = (0..c.cols())
            .map(|n| {
                let v = mags[m * c.cols() + n];
                let level = if peak > 0.0 {
                    255.0 * (v / peak).powf(gamma)
                } else {
                    0.0
                };
                (level.round() as u8).to_string()
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn write_grid_image(path: &Path, c: &TFCoefficients, gamma: f64) -> Result<()> {
    write_text(path, &format_grid_image(c, gamma)?)
}
