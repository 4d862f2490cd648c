//! Subcommand bodies. Each returns the records to print.

use std::fmt;

use rayon::prelude::*;
use truncexp::inversion::{s_series_coeffs, to_f64, u_series_coeffs, MAX_ORDER};
use truncexp::{
    bound_me, bound_mg, max_e_with, max_g_with, min_me, min_mg, s_bounds, s_prime, solve_s_with, solve_u_with,
    u_bounds, u_prime, ECaseParams, ExtremumSummary, RootReport, SolveOptions, UCaseParams,
};

use crate::args::{Family, Spacing, TableArgs};
use crate::render::{Cell, Record};

/// Largest table a single request may ask for.
pub const MAX_ROWS: usize = 100_000;

#[derive(Debug)]
pub enum CliError {
    /// Bad request or out-of-domain parameters.
    Usage(String),
    /// An iterative solve failed.
    Solver(String),
    /// A check over computed output failed.
    Check(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Solver(m) | CliError::Check(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<truncexp::Error> for CliError {
    fn from(e: truncexp::Error) -> Self {
        if e.is_solver_failure() {
            CliError::Solver(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn key(k: &str) -> String {
    k.to_string()
}

/// Either family's validated parameters.
#[derive(Debug, Clone, Copy)]
pub enum Params {
    E(ECaseParams),
    U(UCaseParams),
}

impl Params {
    pub fn new(family: Family, n: u32, delta: f64) -> CliResult<Self> {
        Ok(match family {
            Family::E => Params::E(ECaseParams::new(n, delta)?),
            Family::U => Params::U(UCaseParams::new(n, delta)?),
        })
    }

    fn solve(&self, opts: &SolveOptions) -> CliResult<RootReport> {
        Ok(match self {
            Params::E(p) => solve_s_with(p, opts)?,
            Params::U(p) => solve_u_with(p, opts)?,
        })
    }
}

pub fn solve(family: Family, n: u32, delta: f64, opts: &SolveOptions) -> CliResult<Vec<Record>> {
    let r = Params::new(family, n, delta)?.solve(opts)?;
    Ok(vec![vec![
        (key("family"), Cell::Text(family.as_str().into())),
        (key("n"), Cell::Int(n.into())),
        (key("delta"), Cell::Num(delta)),
        (key("root"), Cell::Num(r.root)),
        (key("residual"), Cell::Num(r.residual)),
        (key("bracket_low"), Cell::Num(r.bracket.0)),
        (key("bracket_high"), Cell::Num(r.bracket.1)),
        (key("method"), Cell::Text(r.method.as_str().into())),
        (key("iterands"), Cell::Nums(r.iterands)),
    ]])
}

fn summary_record(family: Family, n: u32, m: &ExtremumSummary) -> Record {
    vec![
        (key("family"), Cell::Text(family.as_str().into())),
        (key("n"), Cell::Int(n.into())),
        (key("delta_star"), Cell::Num(m.delta_star)),
        (key("value_star"), Cell::Num(m.value_star)),
        (key("delta_low"), Cell::Num(m.delta_bounds.0)),
        (key("delta_high"), Cell::Num(m.delta_bounds.1)),
        (key("value_low"), Cell::Num(m.value_bounds.0)),
        (key("value_high"), Cell::Num(m.value_bounds.1)),
    ]
}

pub fn min(family: Family, n: u32) -> CliResult<Vec<Record>> {
    let m = match family {
        Family::E => min_me(n),
        Family::U => min_mg(n)?,
    };
    Ok(vec![summary_record(family, n, &m)])
}

/// Coefficient rows plus the argument scale.
pub fn series(family: Family, n: u32, order: i64) -> CliResult<(String, Vec<Record>)> {
    if order < 1 || order > MAX_ORDER as i64 {
        return Err(CliError::Usage(format!("order {order} must lie in 1..={MAX_ORDER}")));
    }
    let coeffs = match family {
        Family::E => s_series_coeffs(n, order as usize)?,
        Family::U => u_series_coeffs(n, order as usize)?,
    };
    let scale = coeffs.argument_scale.to_string();
    let rows = coeffs
        .coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| {
            vec![
                (key("m"), Cell::Int(m as i64 + 1)),
                (key("coefficient"), Cell::Text(c.to_string())),
                (key("decimal"), Cell::Num(to_f64(c))),
                (key("argument_scale"), Cell::Text(scale.clone())),
            ]
        })
        .collect();
    Ok((scale, rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Root,
    Lower,
    Upper,
    MaxValue,
    MaxLower,
    MaxUpperF2,
    MaxUpperF1,
    MaxUpperH,
    Derivative,
}

impl Column {
    pub fn parse(s: &str) -> CliResult<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "root" => Column::Root,
            "lower" => Column::Lower,
            "upper" => Column::Upper,
            "max_value" => Column::MaxValue,
            "max_lower" => Column::MaxLower,
            "max_upper_f2" => Column::MaxUpperF2,
            "max_upper_f1" => Column::MaxUpperF1,
            "max_upper_h" => Column::MaxUpperH,
            "derivative" => Column::Derivative,
            other => return Err(CliError::Usage(format!("unknown column `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Column::Root => "root",
            Column::Lower => "lower",
            Column::Upper => "upper",
            Column::MaxValue => "max_value",
            Column::MaxLower => "max_lower",
            Column::MaxUpperF2 => "max_upper_f2",
            Column::MaxUpperF1 => "max_upper_f1",
            Column::MaxUpperH => "max_upper_h",
            Column::Derivative => "derivative",
        }
    }

    fn check_family(&self, family: Family) -> CliResult<()> {
        let ok = match self {
            Column::MaxUpperF2 | Column::MaxUpperF1 => family == Family::E,
            Column::MaxUpperH => family == Family::U,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "column {} does not apply to the {} family",
                self.name(),
                family.as_str()
            )))
        }
    }
}

/// A validated table request.
#[derive(Debug, Clone)]
pub struct TableRequest {
    pub family: Family,
    pub n: u32,
    pub deltas: Vec<f64>,
    pub columns: Vec<Column>,
}

impl TableRequest {
    pub fn from_args(a: &TableArgs) -> CliResult<Self> {
        let deltas = if !a.deltas.is_empty() {
            a.deltas.clone()
        } else {
            let (Some(start), Some(stop), Some(count)) = (a.start, a.stop, a.count) else {
                return Err(CliError::Usage(
                    "give --deltas or all of --start, --stop, --count".into(),
                ));
            };
            grid(start, stop, count, a.grid)?
        };
        if deltas.len() > MAX_ROWS {
            return Err(CliError::Usage(format!(
                "{} rows exceed the limit of {MAX_ROWS}",
                deltas.len()
            )));
        }
        for &d in &deltas {
            Params::new(a.family, a.n, d)?;
        }
        let columns = a
            .columns
            .iter()
            .map(|c| Column::parse(c))
            .collect::<CliResult<Vec<_>>>()?;
        if columns.is_empty() {
            return Err(CliError::Usage("no columns requested".into()));
        }
        for c in &columns {
            c.check_family(a.family)?;
        }
        Ok(Self {
            family: a.family,
            n: a.n,
            deltas,
            columns,
        })
    }
}

pub fn grid(start: f64, stop: f64, count: usize, spacing: Spacing) -> CliResult<Vec<f64>> {
    if count == 0 || count > MAX_ROWS {
        return Err(CliError::Usage(format!("count {count} must lie in 1..={MAX_ROWS}")));
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err(CliError::Usage("grid ends must be finite".into()));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = |i: usize| i as f64 / (count - 1) as f64;
    Ok(match spacing {
        Spacing::Lin => (0..count).map(|i| start + (stop - start) * step(i)).collect(),
        Spacing::Log => {
            if !(start > 0.0 && stop > 0.0) {
                return Err(CliError::Usage("log grid needs positive ends".into()));
            }
            let (a, b) = (start.ln(), stop.ln());
            (0..count)
                .map(|i| match i {
                    0 => start,
                    i if i == count - 1 => stop,
                    i => (a + (b - a) * step(i)).exp(),
                })
                .collect()
        }
    })
}

struct Row {
    delta: f64,
    root: f64,
    cells: Vec<f64>,
}

fn table_row(req: &TableRequest, delta: f64, opts: &SolveOptions) -> CliResult<Row> {
    let params = Params::new(req.family, req.n, delta)?;
    let (report, bounds, max_value, sandwich, derivative) = match params {
        Params::E(p) => {
            let m = max_e_with(&p, opts)?;
            let b = s_bounds(&p);
            let me = bound_me(&p);
            let d = s_prime(&p, m.root.root)?;
            (
                m.root,
                (b.lower, b.upper),
                m.value,
                [me.lower, me.upper_f2, me.upper_f1, f64::NAN],
                d,
            )
        }
        Params::U(p) => {
            let m = max_g_with(&p, opts)?;
            let b = u_bounds(&p);
            let mg = bound_mg(&p);
            let d = u_prime(&p, m.root.root)?;
            (
                m.root,
                (b.lower, b.upper),
                m.value,
                [mg.lower, f64::NAN, f64::NAN, mg.upper],
                d,
            )
        }
    };
    let cells = req
        .columns
        .iter()
        .map(|c| match c {
            Column::Root => report.root,
            Column::Lower => bounds.0,
            Column::Upper => bounds.1,
            Column::MaxValue => max_value,
            Column::MaxLower => sandwich[0],
            Column::MaxUpperF2 => sandwich[1],
            Column::MaxUpperF1 => sandwich[2],
            Column::MaxUpperH => sandwich[3],
            Column::Derivative => derivative,
        })
        .collect();
    Ok(Row {
        delta,
        root: report.root,
        cells,
    })
}

/// Rows in request order. Fails the post-pass if the roots are not
/// strictly decreasing in delta.
pub fn table(req: &TableRequest, opts: &SolveOptions, jobs: usize) -> CliResult<Vec<Record>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let rows: Vec<Row> = pool.install(|| {
        req.deltas
            .par_iter()
            .map(|&d| table_row(req, d, opts))
            .collect::<CliResult<Vec<_>>>()
    })?;
    check_decreasing(&rows)?;
    Ok(rows
        .iter()
        .map(|r| {
            std::iter::once((key("delta"), Cell::Num(r.delta)))
                .chain(
                    req.columns
                        .iter()
                        .zip(&r.cells)
                        .map(|(c, v)| (key(c.name()), Cell::Num(*v))),
                )
                .collect()
        })
        .collect())
}

fn check_decreasing(rows: &[Row]) -> CliResult<()> {
    let mut sorted: Vec<(f64, f64)> = rows.iter().map(|r| (r.delta, r.root)).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in sorted.windows(2) {
        if w[1].0 > w[0].0 && !(w[1].1 < w[0].1) {
            return Err(CliError::Check(format!(
                "roots not strictly decreasing: {} at delta = {} then {} at delta = {}",
                w[0].1, w[0].0, w[1].1, w[1].0
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(grid(1.0, 2.0, 3, Spacing::Lin).unwrap(), vec![1.0, 1.5, 2.0]);
        let g = grid(0.01, 1.0, 3, Spacing::Log).unwrap();
        assert!((g[1] - 0.1).abs() < 1e-15 && g[2] == 1.0);
        assert!(grid(0.0, 1.0, 3, Spacing::Log).is_err());
        assert!(grid(0.0, 1.0, 0, Spacing::Lin).is_err());
        assert!(grid(0.0, 1.0, MAX_ROWS + 1, Spacing::Lin).is_err());
    }

    #[test]
    fn columns_check_family() {
        assert!(Column::parse("max_upper_F1").unwrap().check_family(Family::U).is_err());
        assert!(Column::parse("MAX_UPPER_H").unwrap().check_family(Family::U).is_ok());
        assert!(Column::parse("bogus").is_err());
    }

    #[test]
    fn decreasing_post_pass() {
        let row = |delta, root| Row {
            delta,
            root,
            cells: vec![],
        };
        assert!(check_decreasing(&[row(2.0, 1.0), row(1.0, 2.0)]).is_ok());
        assert!(check_decreasing(&[row(1.0, 2.0), row(2.0, 2.0)]).is_err());
    }
}
