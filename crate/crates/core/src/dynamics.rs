//! Iterated negation `P, NOT(P), NOT²(P), ...`.
//!
//! For a linear negator every coordinate follows `N^k(p) = 1/n + A^k (p - 1/n)`
//! with contraction factor `A = 1 - n·N(0) = -(1 - alpha)/(n - 1)`. The closed
//! forms here do not go through [`negate`], so they can check the iterator.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::negators::{negate, NegatorSpec};
use crate::simplex::{entropy, linf_to_uniform, Dist, Tolerance};

/// One step of an orbit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitStep {
    pub k: usize,
    pub dist: Dist,
    pub entropy: f64,
    pub linf: f64,
}

impl OrbitStep {
    fn new(k: usize, dist: Dist) -> Self {
        Self {
            k,
            entropy: entropy(&dist),
            linf: linf_to_uniform(&dist),
            dist,
        }
    }
}

/// The orbit of a distribution under repeated negation, starting at `k = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitTrace {
    pub spec: NegatorSpec,
    pub steps: Vec<OrbitStep>,
}

impl OrbitTrace {
    pub fn last(&self) -> &Dist {
        &self.steps.last().expect("orbit holds the start point").dist
    }

    /// Writes `k,p_1,...,p_n,entropy,linf` with one row per step. Floats use
    /// 17 significant digits with trailing zeros dropped (C's `%.17g`).
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let n = self.steps[0].dist.n();
        let mut header = String::from("k");
        for i in 1..=n {
            header.push_str(&format!(",p_{i}"));
        }
        header.push_str(",entropy,linf");
        writeln!(w, "{header}")?;
        for step in &self.steps {
            let mut row = step.k.to_string();
            for &v in step.dist.values() {
                row.push(',');
                row.push_str(&format_g17(v));
            }
            row.push(',');
            row.push_str(&format_g17(step.entropy));
            row.push(',');
            row.push_str(&format_g17(step.linf));
            writeln!(w, "{row}")?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is ascii")
    }
}

/// Formats like C's `printf("%.17g", x)`.
pub fn format_g17(x: f64) -> String {
    const PREC: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (PREC - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PREC).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let fixed = format!("{:.*}", (PREC - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Applies `spec` `k` times, recording every intermediate distribution.
pub fn iterate(spec: &NegatorSpec, p: &Dist, k: usize) -> Result<OrbitTrace> {
    let mut steps = Vec::with_capacity(k + 1);
    steps.push(OrbitStep::new(0, p.clone()));
    for step in 1..=k {
        let next = negate(spec, &steps[step - 1].dist)?;
        steps.push(OrbitStep::new(step, next));
    }
    Ok(OrbitTrace { spec: *spec, steps })
}

/// Contraction factor of a linear negator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionFactor {
    pub a: f64,
    pub n: usize,
    pub alpha: f64,
}

impl ContractionFactor {
    /// `|A| = 1`: the orbit never approaches the uniform distribution.
    /// Happens only for Yager's negator at `n = 2`, where `N(p) = 1 - p`.
    pub fn is_non_convergent(&self) -> bool {
        self.a.abs() >= 1.0
    }

    pub fn rate(&self) -> f64 {
        self.a.abs()
    }
}

pub fn contraction_factor(n: usize, alpha: f64) -> Result<ContractionFactor> {
    if n < 2 {
        return Err(Error::Length(n));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(ContractionFactor {
        a: -(1.0 - alpha) / (n as f64 - 1.0),
        n,
        alpha,
    })
}

/// `N^k(p)` for the linear negator with weight `alpha`.
pub fn linear_power_point(p: f64, n: usize, alpha: f64, k: u32) -> Result<f64> {
    let cf = contraction_factor(n, alpha)?;
    let u = 1.0 / n as f64;
    Ok(u + cf.a.powi(k as i32) * (p - u))
}

/// `N_Y^k(p) = 1/n + (-1)^k (p - 1/n) / (n - 1)^k`.
pub fn yager_power_point(p: f64, n: usize, k: u32) -> f64 {
    let u = 1.0 / n as f64;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    u + sign * (p - u) / (n as f64 - 1.0).powi(k as i32)
}

/// Result of [`converge`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ConvergenceOutcome {
    /// `linf_to_uniform` dropped below `eps` after `k` negations.
    Converged { k: usize, limit: Dist },
    /// The orbit returned to `witness` after `period` further negations.
    Oscillating { period: usize, witness: Dist },
    MaxIterReached { last: Dist },
}

/// Which earlier steps oscillation detection compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum History {
    /// Steps 0 and 1 only. Enough for every shipped family, whose only
    /// oscillations are period-2 orbits starting at step 0.
    #[default]
    Initial,
    /// Every earlier step.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergeOptions {
    pub eps: f64,
    pub max_iter: usize,
    pub history: History,
    pub tol: Tolerance,
}

impl Default for ConvergeOptions {
    fn default() -> Self {
        Self {
            eps: 1e-9,
            max_iter: 1000,
            history: History::Initial,
            tol: Tolerance::default(),
        }
    }
}

pub fn converge(
    spec: &NegatorSpec,
    p: &Dist,
    eps: f64,
    max_iter: usize,
) -> Result<ConvergenceOutcome> {
    converge_with(
        spec,
        p,
        &ConvergeOptions {
            eps,
            max_iter,
            ..ConvergeOptions::default()
        },
    )
}

pub fn converge_with(
    spec: &NegatorSpec,
    p: &Dist,
    opts: &ConvergeOptions,
) -> Result<ConvergenceOutcome> {
    if opts.eps.is_nan() || opts.eps <= 0.0 {
        return Err(Error::domain(format!("eps must be positive, got {}", opts.eps)));
    }
    if opts.max_iter == 0 {
        return Err(Error::domain("max_iter must be at least 1"));
    }
    let tol = opts.tol.tol_eq;
    let mut history: Vec<Dist> = Vec::new();
    let mut current = p.clone();
    for k in 0..=opts.max_iter {
        if linf_to_uniform(&current) < opts.eps {
            return Ok(ConvergenceOutcome::Converged { k, limit: current });
        }
        let candidates: &[Dist] = match opts.history {
            History::Initial => &history[..history.len().min(2)],
            History::Full => &history,
        };
        // j = k - 1 would be a period-1 stall, not an oscillation
        if let Some(j) = candidates
            .iter()
            .enumerate()
            .take(k.saturating_sub(1))
            .find(|(_, d)| d.approx_eq(&current, tol))
            .map(|(j, _)| j)
        {
            return Ok(ConvergenceOutcome::Oscillating {
                period: k - j,
                witness: current,
            });
        }
        if k == opts.max_iter {
            break;
        }
        let next = negate(spec, &current)?;
        if opts.history == History::Full || history.len() < 2 {
            history.push(current);
        }
        current = next;
    }
    Ok(ConvergenceOutcome::MaxIterReached { last: current })
}
