use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use hyperwave_core::classical::{box_path, free_path, free_paths_from, oscillator_curve, Heading};
use hyperwave_core::{
    boxpacket, freepacket, report, validate, BoxPacketParams, BoxReflectedPath, Field2D, FreePacketParams, Grid2D,
    OscillatorOrbit, PhysicalConstants, QuadratureSpec,
};
use thiserror::Error;

use crate::args::*;
use crate::output;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parameter(#[from] hyperwave_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parameter(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

/// Outcome of a command that completed without error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    ValidationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::ValidationFailed => 1,
        }
    }
}

fn with_output<F>(path: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)?;
        }
    }
    Ok(())
}

fn emit_field(field: &Field2D, out: &OutputArgs) -> Result<(), CliError> {
    match out.format {
        Format::Csv => with_output(out.out.as_deref(), |w| output::write_csv(field, out.quantity, w)),
        Format::Pgm => with_output(out.out.as_deref(), |w| output::write_pgm(field, out.quantity, w)),
    }
}

fn grid_from(args: &GridArgs, lo: f64, hi: f64) -> Result<Grid2D, CliError> {
    Ok(Grid2D::new(
        args.umin.unwrap_or(lo),
        args.umax.unwrap_or(hi),
        args.vmin.unwrap_or(lo),
        args.vmax.unwrap_or(hi),
        args.nu,
        args.nv,
    )?)
}

fn linspace(lo: f64, hi: f64, n: usize, name: &str) -> Result<Vec<f64>, CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!(
            "invalid parameter: {name}min < {name}max (got [{lo}, {hi}])"
        )));
    }
    if n < 2 {
        return Err(CliError::Usage(format!("invalid parameter: n{name} >= 2 (got {n})")));
    }
    let h = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|k| lo + k as f64 * h).collect())
}

fn check_format(out: &OutputArgs) -> Result<(), CliError> {
    if out.format == Format::Pgm && !out.quantity.is_nonnegative() {
        return Err(CliError::Usage(format!(
            "invalid parameter: pgm output needs a non-negative quantity (abs2, re2 or im2), got {:?}",
            out.quantity
        )));
    }
    Ok(())
}

fn free(args: &FreeArgs) -> Result<(), CliError> {
    check_format(&args.output)?;
    let p = FreePacketParams::new(args.alpha, args.d)?;
    let grid = grid_from(&args.grid, -6.0, 6.0)?;
    let field = match args.method {
        Method::Closed => Field2D::sample_par(grid, |u, v| freepacket::packet_closed(u, v, &p))?,
        Method::Spectral => {
            let quad = QuadratureSpec::for_gaussian_spectrum(p.alpha, 1e-11, 1e-11)?;
            Field2D::try_sample_par(grid, |u, v| freepacket::packet_spectral(u, v, &p, &quad))?
        }
    };
    emit_field(&field, &args.output)
}

fn boxed(args: &BoxArgs) -> Result<(), CliError> {
    check_format(&args.output)?;
    let p = BoxPacketParams::new(args.width, args.alpha, args.d, args.nmax)?;
    let half = p.half_width();
    let grid = grid_from(&args.grid, -half, half)?;
    let coeffs = boxpacket::coefficients(&p, &boxpacket::default_quadrature())?;
    let field = boxpacket::series_field(grid, &p, &coeffs)?;
    emit_field(&field, &args.output)
}

fn slope(args: &SlopeArgs) -> Result<(), CliError> {
    let p = FreePacketParams::new(args.alpha, args.d)?;
    let rows: Vec<Vec<f64>> = linspace(args.umin, args.umax, args.nu, "u")?
        .into_iter()
        .map(|u| {
            vec![
                u,
                freepacket::initial_condition(u, &p),
                freepacket::initial_slope(u, &p).im,
            ]
        })
        .collect();
    with_output(args.out.as_deref(), |w| {
        output::write_csv_1d(&["u", "value", "slope"], &rows, w)
    })
}

fn validate_all(args: &ValidateArgs) -> Result<Status, CliError> {
    let checks = report::run_checks()?;
    let findings = report::erratum_findings()?;
    let text = report::render(&checks, &findings);
    with_output(args.out.as_deref(), |w| w.write_all(text.as_bytes()))?;
    if checks.iter().all(|c| c.passed) {
        Ok(Status::Success)
    } else {
        Ok(Status::ValidationFailed)
    }
}

fn moments(args: &MomentArgs) -> Result<(), CliError> {
    let p = FreePacketParams::new(args.alpha, args.d)?;
    let c = PhysicalConstants::new(args.hbar, 1.0)?;
    let m = validate::halfline_moments(&p, &c, &QuadratureSpec::default())?;
    let rows = [
        ("mean_u", m.mean_u),
        ("var_u", m.var_u),
        ("var_p", m.var_p),
        ("product", m.product),
        ("hbar2_over_4", m.hbar * m.hbar / 4.0),
    ];
    with_output(args.out.as_deref(), |w| {
        writeln!(w, "quantity,value")?;
        for (name, value) in rows {
            writeln!(w, "{name},{value}")?;
        }
        Ok(())
    })
}

fn classical(args: &ClassicalArgs) -> Result<(), CliError> {
    let (lo, hi) = match args.orbit {
        Orbit::Free => (-6.0, 6.0),
        Orbit::Box => (-args.width / 2.0, args.width / 2.0),
        Orbit::Oscillator => (-args.amplitude, args.amplitude),
    };
    let vs = linspace(args.vmin.unwrap_or(lo), args.vmax.unwrap_or(hi), args.nv, "v")?;
    let (header, rows): (Vec<&str>, Vec<Vec<f64>>) = match args.orbit {
        Orbit::Free => {
            let paths = free_paths_from(args.d);
            let rows = vs
                .iter()
                .map(|&v| {
                    std::iter::once(v)
                        .chain(paths.iter().map(|p| free_path(p, v)))
                        .collect()
                })
                .collect();
            (vec!["v", "u1", "u2", "u3", "u4"], rows)
        }
        Orbit::Box => {
            let mut paths = Vec::new();
            for u0 in [args.d, -args.d] {
                for heading in Heading::BOTH {
                    paths.push(BoxReflectedPath::new(args.width, u0, heading)?);
                }
            }
            let rows = vs
                .iter()
                .map(|&v| std::iter::once(v).chain(paths.iter().map(|p| box_path(p, v))).collect())
                .collect();
            (vec!["v", "u1", "u2", "u3", "u4"], rows)
        }
        Orbit::Oscillator => {
            let orbit = OscillatorOrbit::new(args.amplitude, args.delta1, args.delta2, args.omega)?;
            let rows = vs
                .iter()
                .map(|&v| oscillator_curve(&orbit, v).map(|(a, b)| vec![v, a, b]))
                .collect::<hyperwave_core::Result<_>>()?;
            (vec!["v", "u_plus", "u_minus"], rows)
        }
    };
    with_output(args.out.as_deref(), |w| output::write_csv_1d(&header, &rows, w))
}

pub fn run(cli: &Cli) -> Result<Status, CliError> {
    match &cli.command {
        Command::Free(a) => free(a)?,
        Command::Box(a) => boxed(a)?,
        Command::Slope(a) => slope(a)?,
        Command::Validate(a) => return validate_all(a),
        Command::Moments(a) => moments(a)?,
        Command::Classical(a) => classical(a)?,
    }
    Ok(Status::Success)
}
