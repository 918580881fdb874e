//! Negator families and single-step negation `P -> NOT(P)`.
//!
//! Yager, Uniform and Linear are pd-independent: `N(p_i)` depends on `p_i`
//! and `n` only. Tsallis and Involutive are pd-dependent and need statistics
//! of the whole distribution.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{stats, Dist, DistStats, Tolerance};

/// One negator family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NegatorSpec {
    Yager,
    Uniform,
    /// Convex combination `alpha * Uniform + (1 - alpha) * Yager`.
    Linear { alpha: f64 },
    Tsallis { k: f64 },
    Involutive,
}

impl NegatorSpec {
    pub fn linear(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(NegatorSpec::Linear { alpha })
    }

    pub fn tsallis(k: f64) -> Result<Self> {
        check_tsallis_k(k)?;
        Ok(NegatorSpec::Tsallis { k })
    }

    /// Checks the parameter domain of the family.
    pub fn validate(&self) -> Result<()> {
        match *self {
            NegatorSpec::Linear { alpha } => check_alpha(alpha),
            NegatorSpec::Tsallis { k } => check_tsallis_k(k),
            _ => Ok(()),
        }
    }

    pub fn is_pd_independent(&self) -> bool {
        matches!(
            self,
            NegatorSpec::Yager | NegatorSpec::Uniform | NegatorSpec::Linear { .. }
        )
    }

    /// The equivalent linear weight for pd-independent families
    /// (Yager is `alpha = 0`, Uniform is `alpha = 1`).
    pub fn linear_alpha(&self) -> Option<f64> {
        match *self {
            NegatorSpec::Yager => Some(0.0),
            NegatorSpec::Uniform => Some(1.0),
            NegatorSpec::Linear { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// Pointwise value of a pd-independent negator at `p` for length `n`.
    pub fn independent_point(&self, p: f64, n: usize) -> Result<f64> {
        match *self {
            NegatorSpec::Yager => Ok(yager_point(p, n)),
            NegatorSpec::Uniform => Ok(uniform_point(n)),
            NegatorSpec::Linear { alpha } => linear_point(p, n, alpha),
            _ => Err(Error::domain(format!(
                "{self} is pd-dependent and has no context-free pointwise value"
            ))),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must lie in [0, 1], got {alpha}")))
    }
}

fn check_tsallis_k(k: f64) -> Result<()> {
    if k == 0.0 || !k.is_finite() {
        Err(Error::domain(format!(
            "tsallis k must be finite and nonzero, got {k}"
        )))
    } else {
        Ok(())
    }
}

impl fmt::Display for NegatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegatorSpec::Yager => f.write_str("yager"),
            NegatorSpec::Uniform => f.write_str("uniform"),
            NegatorSpec::Linear { alpha } => write!(f, "linear:alpha={alpha}"),
            NegatorSpec::Tsallis { k } => write!(f, "tsallis:k={k}"),
            NegatorSpec::Involutive => f.write_str("involutive"),
        }
    }
}

/// Parses `yager`, `uniform`, `linear:alpha=<f>`, `tsallis:k=<f>` or
/// `involutive`. Malformed text is a [`Error::Parse`]; a well-formed value
/// outside the family's domain is a [`Error::Domain`].
impl FromStr for NegatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, param) = match s.split_once(':') {
            Some((fam, rest)) => (fam, Some(rest)),
            None => (s, None),
        };
        let value = |name: &str| -> Result<f64> {
            let rest = param.ok_or_else(|| Error::Parse(format!("{family} needs {name}=<float>")))?;
            let raw = rest
                .strip_prefix(name)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| Error::Parse(format!("expected {name}=<float>, got {rest:?}")))?;
            raw.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {raw:?}")))
        };
        let spec = match family.to_ascii_lowercase().as_str() {
            "yager" | "uniform" | "involutive" if param.is_some() => {
                return Err(Error::Parse(format!("{family} takes no parameters")))
            }
            "yager" => NegatorSpec::Yager,
            "uniform" => NegatorSpec::Uniform,
            "involutive" => NegatorSpec::Involutive,
            "linear" => NegatorSpec::linear(value("alpha")?)?,
            "tsallis" => NegatorSpec::tsallis(value("k")?)?,
            other => return Err(Error::Parse(format!("unknown negator {other:?}"))),
        };
        Ok(spec)
    }
}

impl Serialize for NegatorSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NegatorSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Applies the negator point-by-point. The result is validated as a
/// distribution, never renormalized.
pub fn negate(spec: &NegatorSpec, p: &Dist) -> Result<Dist> {
    spec.validate()?;
    let n = p.n();
    let values: Vec<f64> = match *spec {
        NegatorSpec::Yager => p.values().iter().map(|&x| yager_point(x, n)).collect(),
        NegatorSpec::Uniform => vec![uniform_point(n); n],
        NegatorSpec::Linear { alpha } => {
            let coeffs = LinearCoeffs::new(n, alpha);
            p.values().iter().map(|&x| coeffs.eval(x)).collect()
        }
        NegatorSpec::Tsallis { k } => {
            if k < 0.0 {
                if let Some(i) = p.values().iter().position(|&x| x == 0.0) {
                    return Err(Error::domain(format!(
                        "tsallis k={k} < 0 is undefined at zero entry p[{i}]"
                    )));
                }
            }
            let power_sum = tsallis_power_sum(p, k);
            p.values()
                .iter()
                .map(|&x| tsallis_point(x, k, n, power_sum))
                .collect()
        }
        NegatorSpec::Involutive => {
            let s = stats(p);
            check_stats(&s)?;
            p.values()
                .iter()
                .map(|&x| (s.mp - x) / s.denominator())
                .collect()
        }
    };
    let tol = Tolerance::default();
    let values = values
        .into_iter()
        .map(|v| snap_to_unit(v, tol.tol_simplex))
        .collect();
    Dist::new(values, &tol)
}

// Rounding can push an exact 0 or 1 just outside the unit interval
// (e.g. 1/(n-1) divided by its own rounded multiple). Only excursions within
// `slack` are snapped; anything larger is left for validation to reject.
fn snap_to_unit(v: f64, slack: f64) -> f64 {
    if v > 1.0 && v <= 1.0 + slack {
        1.0
    } else if v < 0.0 && v >= -slack {
        0.0
    } else {
        v
    }
}

/// Yager's negator `(1 - p) / (n - 1)`.
pub fn yager_point(p: f64, n: usize) -> f64 {
    (1.0 - p) / (n as f64 - 1.0)
}

/// The constant negator `1 / n`.
pub fn uniform_point(n: usize) -> f64 {
    1.0 / n as f64
}

/// Linear negator `alpha/n + (1 - alpha)(1 - p)/(n - 1)`.
pub fn linear_point(p: f64, n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(LinearCoeffs::new(n, alpha).eval(p))
}

#[derive(Clone, Copy)]
struct LinearCoeffs {
    uniform: f64,
    yager: f64,
    n: usize,
}

impl LinearCoeffs {
    fn new(n: usize, alpha: f64) -> Self {
        Self {
            uniform: alpha / n as f64,
            yager: 1.0 - alpha,
            n,
        }
    }

    fn eval(&self, p: f64) -> f64 {
        self.uniform + self.yager * yager_point(p, self.n)
    }
}

/// `Σ_j p_j^k` for the Tsallis negator.
pub fn tsallis_power_sum(p: &Dist, k: f64) -> f64 {
    p.values().iter().map(|&x| x.powf(k)).sum()
}

/// Tsallis negator `(1 - p^k) / (n - Σ_j p_j^k)`, given the power sum of the
/// distribution `p` belongs to.
pub fn tsallis_point(p: f64, k: f64, n: usize, power_sum: f64) -> f64 {
    (1.0 - p.powf(k)) / (n as f64 - power_sum)
}

fn check_stats(s: &DistStats) -> Result<()> {
    let denom = s.denominator();
    if denom > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateStats(denom))
    }
}

/// Involutive negator `(MP - p) / (n·MP - 1)` evaluated with the statistics
/// of the distribution `p` belongs to.
pub fn involutive_point(p: f64, s: &DistStats) -> Result<f64> {
    check_stats(s)?;
    Ok((s.mp - p) / s.denominator())
}

/// Statistics of `NOT(P)` under the involutive negator: max and min swap
/// roles and both are scaled by `1 / (n·MP - 1)`.
pub fn involutive_negated_stats(s: &DistStats) -> Result<DistStats> {
    check_stats(s)?;
    let d = s.denominator();
    Ok(DistStats {
        max_p: s.max_p / d,
        min_p: s.min_p / d,
        mp: s.mp / d,
        n: s.n,
    })
}

/// The three equivalent parameterizations of a linear negator of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearParams {
    pub alpha: f64,
    /// `N(1)`, in `[0, 1/n]`.
    pub n1: f64,
    /// `N(0)`, in `[1/n, 1/(n-1)]`.
    pub n0: f64,
    pub n: usize,
}

/// The parameter a linear negator is specified by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinearGiven {
    Alpha(f64),
    N1(f64),
    N0(f64),
}

// Absorbs rounding in range endpoints like 1/(n-1) computed elsewhere.
const RANGE_SLACK: f64 = 4.0 * f64::EPSILON;

fn check_range(name: &str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if v >= lo - RANGE_SLACK && v <= hi + RANGE_SLACK {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} = {v} outside [{lo}, {hi}]"
        )))
    }
}

pub fn linear_params(n: usize, given: LinearGiven) -> Result<LinearParams> {
    if n < 2 {
        return Err(Error::Length(n));
    }
    let nf = n as f64;
    let alpha = match given {
        LinearGiven::Alpha(a) => {
            check_alpha(a)?;
            a
        }
        LinearGiven::N1(n1) => {
            check_range("N(1)", n1, 0.0, 1.0 / nf)?;
            (nf * n1).clamp(0.0, 1.0)
        }
        LinearGiven::N0(n0) => {
            check_range("N(0)", n0, 1.0 / nf, 1.0 / (nf - 1.0))?;
            (nf * (1.0 - (nf - 1.0) * n0)).clamp(0.0, 1.0)
        }
    };
    let (n1, n0) = match given {
        LinearGiven::Alpha(_) => (alpha / nf, alpha / nf + (1.0 - alpha) / (nf - 1.0)),
        LinearGiven::N1(n1) => (n1, (1.0 - n1) / (nf - 1.0)),
        LinearGiven::N0(n0) => (1.0 - (nf - 1.0) * n0, n0),
    };
    Ok(LinearParams { alpha, n1, n0, n })
}

impl LinearParams {
    /// `N(p) = N(1) + (1 - n·N(1)) · N_Y(p)`.
    pub fn eval_via_n1(&self, p: f64) -> f64 {
        self.n1 + (1.0 - self.n as f64 * self.n1) * yager_point(p, self.n)
    }

    /// `N(p) = N(0) + (1 - n·N(0)) · p`.
    pub fn eval_via_n0(&self, p: f64) -> f64 {
        self.n0 + (1.0 - self.n as f64 * self.n0) * p
    }
}

/// A pointwise negator together with the context it is evaluated in.
///
/// For pd-dependent negators the context of the second application is that
/// of the negated distribution, which [`Pointwise::negated`] supplies.
pub trait Pointwise {
    fn n(&self) -> usize;
    fn eval(&self, p: f64) -> f64;
    /// Evaluator valid on the image of `self`.
    fn negated(&self) -> Self
    where
        Self: Sized;
}

/// A pd-independent negator at a fixed length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Independent {
    alpha: f64,
    n: usize,
}

impl Independent {
    pub fn new(spec: &NegatorSpec, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Length(n));
        }
        spec.validate()?;
        let alpha = spec
            .linear_alpha()
            .ok_or_else(|| Error::domain(format!("{spec} is not pd-independent")))?;
        Ok(Self { alpha, n })
    }
}

impl Pointwise for Independent {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, p: f64) -> f64 {
        LinearCoeffs::new(self.n, self.alpha).eval(p)
    }

    fn negated(&self) -> Self {
        *self
    }
}

/// The involutive negator bound to the statistics of one distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvolutiveAt {
    stats: DistStats,
}

impl InvolutiveAt {
    pub fn new(stats: DistStats) -> Result<Self> {
        check_stats(&stats)?;
        Ok(Self { stats })
    }

    pub fn of(p: &Dist) -> Result<Self> {
        Self::new(stats(p))
    }

    pub fn stats(&self) -> &DistStats {
        &self.stats
    }
}

impl Pointwise for InvolutiveAt {
    fn n(&self) -> usize {
        self.stats.n
    }

    fn eval(&self, p: f64) -> f64 {
        (self.stats.mp - p) / self.stats.denominator()
    }

    fn negated(&self) -> Self {
        // the denominator stays positive under the rewrite: n·MQ - 1 = 1/(n·MP - 1)
        let stats = involutive_negated_stats(&self.stats).expect("checked at construction");
        Self { stats }
    }
}
