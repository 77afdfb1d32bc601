use std::path::PathBuf;

use crate::elements::ElementKind;
use crate::error::{Error, Result};
use crate::problems::{Benchmark, ControlProblem};
use crate::solver::{Method, SolverConfig};

/// Run settings as given on the command line or in a `key=value` file.
/// Unset fields fall back to the problem's defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunSettings {
    pub problem: Option<String>,
    pub method: Option<String>,
    pub dt: Option<f64>,
    pub dx: Option<f64>,
    pub horizon: Option<f64>,
    pub c: Option<f64>,
    /// Test function slope (or parameter, for quadratic test functions).
    pub a_test: Option<f64>,
    /// Truncation half-width for `lq`, Lipschitz bound otherwise.
    pub l: Option<f64>,
    /// LQ coefficient `a`.
    pub lq_a: Option<f64>,
    pub fine_factor: Option<usize>,
    pub test_kind: Option<String>,
    pub levels: Option<usize>,
    pub out: Option<PathBuf>,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad value `{value}` for `{key}`")))
}

impl RunSettings {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped;
    /// `-` and `_` are interchangeable in keys.
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut s = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {line_no}: expected key=value")))?;
            let (key, value) = (key.trim().replace('_', "-"), value.trim());
            match key.as_str() {
                "problem" => s.problem = Some(value.to_owned()),
                "method" => s.method = Some(value.to_owned()),
                "test-kind" => s.test_kind = Some(value.to_owned()),
                "out" => s.out = Some(PathBuf::from(value)),
                "dt" => s.dt = Some(parse_num(&key, value, line_no)?),
                "dx" => s.dx = Some(parse_num(&key, value, line_no)?),
                "T" => s.horizon = Some(parse_num(&key, value, line_no)?),
                "c" => s.c = Some(parse_num(&key, value, line_no)?),
                "A" => s.a_test = Some(parse_num(&key, value, line_no)?),
                "L" => s.l = Some(parse_num(&key, value, line_no)?),
                "a" => s.lq_a = Some(parse_num(&key, value, line_no)?),
                "fine-factor" => s.fine_factor = Some(parse_num(&key, value, line_no)?),
                "levels" => s.levels = Some(parse_num(&key, value, line_no)?),
                other => {
                    return Err(Error::Parse(format!(
                        "line {line_no}: unknown key `{other}`"
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: RunSettings) -> RunSettings {
        RunSettings {
            problem: over.problem.or(self.problem),
            method: over.method.or(self.method),
            dt: over.dt.or(self.dt),
            dx: over.dx.or(self.dx),
            horizon: over.horizon.or(self.horizon),
            c: over.c.or(self.c),
            a_test: over.a_test.or(self.a_test),
            l: over.l.or(self.l),
            lq_a: over.lq_a.or(self.lq_a),
            fine_factor: over.fine_factor.or(self.fine_factor),
            test_kind: over.test_kind.or(self.test_kind),
            levels: over.levels.or(self.levels),
            out: over.out.or(self.out),
        }
    }

    pub fn benchmark(&self) -> Result<Benchmark> {
        self.problem
            .as_deref()
            .ok_or(Error::MissingSetting("problem"))?
            .parse()
    }

    /// Builds the problem and solver configuration. `problem` and `dt` are
    /// required.
    pub fn resolve(&self) -> Result<(ControlProblem, SolverConfig)> {
        let bench = self.benchmark()?;
        let dt = self.dt.ok_or(Error::MissingSetting("dt"))?;
        let lq = bench == Benchmark::Lq;
        let problem = bench.problem(self.lq_a, if lq { self.l } else { None })?;
        let mut cfg = SolverConfig::for_problem(&problem);
        cfg.dt = dt;
        if let Some(m) = &self.method {
            cfg.method = m.parse::<Method>()?;
        }
        if let Some(v) = self.dx {
            cfg.dx = v;
        }
        if let Some(v) = self.horizon {
            cfg.horizon = v;
        }
        if let Some(v) = self.c {
            cfg.c = v;
        }
        if let Some(v) = self.fine_factor {
            cfg.fine_factor = v;
        }
        if let Some(k) = &self.test_kind {
            let kind = k.parse::<ElementKind>()?;
            if kind != cfg.test_kind && self.a_test.is_none() && kind == ElementKind::Quadratic {
                cfg.test_shape = cfg.c;
            }
            cfg.test_kind = kind;
        }
        if let Some(v) = self.a_test {
            cfg.test_shape = v;
        }
        if !lq {
            if let Some(v) = self.l {
                cfg.lipschitz = v;
            }
        }
        cfg.steps()?;
        Ok((problem, cfg))
    }
}
