//! Interaction-time sweeps written as CSV.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::MefMode;
use crate::error::{Error, Result};
use crate::model::{evaluate_point_with, ModelParams, ModelPoint, FIGURE_THETAS};

/// Fixed CSV header; every sweep emits exactly these columns.
pub const CSV_HEADER: &str =
    "lambda_t,theta,phi,concurrence,entropy_exchange,coherent_information,mef,fano_lhs,fano_slack";

pub const DEFAULT_STEPS: usize = 201;
pub const DEFAULT_LT_MAX: f64 = 2.0 * PI;

/// Where a sweep writes its rows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Output {
    #[default]
    Stdout,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub theta: f64,
    pub phi: f64,
    pub lt_min: f64,
    pub lt_max: f64,
    pub steps: usize,
    pub mef: MefMode,
    pub output: Output,
}

impl SweepConfig {
    pub fn new(theta: f64) -> Self {
        Self {
            theta,
            phi: 0.0,
            lt_min: 0.0,
            lt_max: DEFAULT_LT_MAX,
            steps: DEFAULT_STEPS,
            mef: MefMode::Optimize,
            output: Output::Stdout,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::OutOfRange {
                name: "steps",
                value: self.steps as f64,
            });
        }
        if !self.lt_min.is_finite() || !self.lt_max.is_finite() || self.lt_min >= self.lt_max {
            return Err(Error::OutOfRange {
                name: "lt_max",
                value: self.lt_max,
            });
        }
        ModelParams::new(self.theta, self.phi, self.lt_min)?;
        Ok(())
    }

    /// Uniform grid including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.lt_max - self.lt_min;
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.lt_max
                } else {
                    self.lt_min + span * i as f64 / last as f64
                }
            })
            .collect()
    }
}

/// Evaluates every grid point. Points run in parallel; the result is in grid
/// order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ModelPoint>> {
    cfg.validate()?;
    let base = ModelParams::new(cfg.theta, cfg.phi, cfg.lt_min)?;
    cfg.grid()
        .into_par_iter()
        .map(|lt| evaluate_point_with(&base.with_lambda_t(lt)?, cfg.mef))
        .collect()
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation outside `[1e-4, 1e12)`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        strip_zeros(&fixed).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One CSV row. The state columns carry the simulated values; the channel
/// route and the closed forms are checked against them at evaluation time.
pub fn csv_row(point: &ModelPoint) -> String {
    let p = &point.params;
    [
        p.lambda_t(),
        p.theta(),
        p.phi(),
        point.concurrence_numeric,
        point.se_numeric,
        point.ie_numeric,
        point.mef_numeric,
        point.fano_lhs,
        point.fano_slack,
    ]
    .iter()
    .map(|&x| format_sig(x))
    .collect::<Vec<_>>()
    .join(",")
}

pub fn write_csv<W: Write>(points: &[ModelPoint], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for point in points {
        writeln!(out, "{}", csv_row(point))?;
    }
    out.flush()
}

/// Panel of the two published evolution plots: family 1 pairs entropy
/// exchange with concurrence, family 2 coherent information with
/// concurrence. Panels `a..d` select the entanglement angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureId {
    family: u8,
    panel: char,
}

impl FigureId {
    pub fn all() -> impl Iterator<Item = FigureId> {
        [1u8, 2].into_iter().flat_map(|family| {
            ['a', 'b', 'c', 'd']
                .into_iter()
                .map(move |panel| FigureId { family, panel })
        })
    }

    pub fn family(&self) -> u8 {
        self.family
    }

    pub fn theta(&self) -> f64 {
        FIGURE_THETAS[(self.panel as u8 - b'a') as usize]
    }

    pub fn file_name(&self) -> String {
        format!("fig{self}.csv")
    }

    /// Default grid at this panel's angle.
    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig::new(self.theta())
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.panel)
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(f @ ('1' | '2')), Some(panel @ 'a'..='d'), None) => Ok(FigureId {
                family: f as u8 - b'0',
                panel,
            }),
            _ => Err(Error::InvalidState(format!(
                "unknown figure id {s:?}; expected one of 1a..1d, 2a..2d"
            ))),
        }
    }
}
