//! Validated points on the probability simplex, plus the summary statistics,
//! entropy and distance used throughout the crate.
//!
//! Constructors reject invalid input instead of repairing it: nothing in this
//! crate renormalizes a distribution.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tolerance accepted by [`Tolerance::new`].
pub const MAX_TOL: f64 = 1e-6;

/// Slack used for validation and for equality checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Allowed deviation of the sum of a distribution from 1.
    pub tol_simplex: f64,
    /// Allowed componentwise deviation when comparing values.
    pub tol_eq: f64,
}

impl Tolerance {
    pub fn new(tol_simplex: f64, tol_eq: f64) -> Result<Self> {
        for (name, t) in [("tol_simplex", tol_simplex), ("tol_eq", tol_eq)] {
            if !(t > 0.0 && t <= MAX_TOL) {
                return Err(Error::domain(format!(
                    "{name} must lie in (0, {MAX_TOL:e}], got {t}"
                )));
            }
        }
        Ok(Self {
            tol_simplex,
            tol_eq,
        })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            tol_simplex: 1e-9,
            tol_eq: 1e-9,
        }
    }
}

/// A finite discrete probability distribution of length `n >= 2`.
///
/// Values are kept in input order; outcome ordering is significant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Dist {
    values: Vec<f64>,
}

impl Dist {
    /// Validates `values` against `tol` without modifying them.
    pub fn new(values: Vec<f64>, tol: &Tolerance) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Length(values.len()));
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::Range { index, value });
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol.tol_simplex {
            return Err(Error::Sum {
                sum,
                tol: tol.tol_simplex,
            });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Componentwise equality within `tol`. Distributions of different
    /// length are never equal.
    pub fn approx_eq(&self, other: &Dist, tol: f64) -> bool {
        self.n() == other.n() && self.max_abs_diff(other) <= tol
    }

    /// `max_i |p_i - q_i|`; `f64::INFINITY` on length mismatch.
    pub fn max_abs_diff(&self, other: &Dist) -> f64 {
        if self.n() != other.n() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Parses the shared text format: comma-separated decimals
    /// (`0.1,0.2,0.7`), a JSON array (`[0.1,0.2,0.7]`), or `@path` naming a
    /// file that holds a JSON array.
    pub fn parse(text: &str, tol: &Tolerance) -> Result<Self> {
        Self::new(parse_values(text)?, tol)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(d)?;
        Dist::new(values, &Tolerance::default()).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<f64>> for Dist {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Dist::new(values, &Tolerance::default())
    }
}

fn parse_values(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if let Some(path) = text.strip_prefix('@') {
        return read_json_values(Path::new(path));
    }
    if text.starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {tok:?}")))
        })
        .collect()
}

fn read_json_values(path: &Path) -> Result<Vec<f64>> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Summary statistics of a distribution; `mp = max_p + min_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistStats {
    pub max_p: f64,
    pub min_p: f64,
    pub mp: f64,
    pub n: usize,
}

impl DistStats {
    /// `n * mp - 1`, the denominator of the involutive negator.
    pub fn denominator(&self) -> f64 {
        self.n as f64 * self.mp - 1.0
    }
}

pub fn make_dist(values: &[f64], tol: &Tolerance) -> Result<Dist> {
    Dist::new(values.to_vec(), tol)
}

pub fn uniform_dist(n: usize) -> Result<Dist> {
    if n < 2 {
        return Err(Error::Length(n));
    }
    Ok(Dist {
        values: vec![1.0 / n as f64; n],
    })
}

/// Point distribution with unit mass at the 1-based index `i`.
pub fn point_dist(n: usize, i: usize) -> Result<Dist> {
    if n < 2 {
        return Err(Error::Length(n));
    }
    if i == 0 || i > n {
        return Err(Error::Index { index: i, n });
    }
    let mut values = vec![0.0; n];
    values[i - 1] = 1.0;
    Ok(Dist { values })
}

/// Gini-form entropy `H(P) = Σ (1 - p_i) p_i`, in `[0, (n-1)/n]`.
pub fn entropy(p: &Dist) -> f64 {
    p.values.iter().map(|&x| (1.0 - x) * x).sum()
}

/// `max_i |p_i - 1/n|`.
pub fn linf_to_uniform(p: &Dist) -> f64 {
    let u = 1.0 / p.n() as f64;
    p.values.iter().map(|&x| (x - u).abs()).fold(0.0, f64::max)
}

pub fn stats(p: &Dist) -> DistStats {
    let (min_p, max_p) = p
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    DistStats {
        max_p,
        min_p,
        mp: max_p + min_p,
        n: p.n(),
    }
}

/// Maximal entropy for length `n`, attained only at the uniform distribution.
pub fn max_entropy(n: usize) -> f64 {
    (n as f64 - 1.0) / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: [f64; 5] = [0.1, 0.2, 0.15, 0.3, 0.25];

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn make_dist_keeps_values_verbatim() {
        let p = make_dist(&EX1, &tol()).unwrap();
        assert_eq!(p.values(), &EX1);
        assert_eq!(p.n(), 5);
        assert!(make_dist(&[1.0, 0.0, 0.0], &tol()).is_ok());
    }

    #[test]
    fn make_dist_errors() {
        assert!(matches!(
            make_dist(&[0.5, 0.6], &tol()),
            Err(Error::Sum { .. })
        ));
        assert_eq!(make_dist(&[1.0], &tol()), Err(Error::Length(1)));
        assert!(matches!(
            make_dist(&[1.2, -0.2], &tol()),
            Err(Error::Range { index: 0, .. })
        ));
        assert!(matches!(
            make_dist(&[f64::NAN, 1.0], &tol()),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::new(1e-9, 1e-12).is_ok());
        assert!(Tolerance::new(0.0, 1e-9).is_err());
        assert!(Tolerance::new(1e-9, 1e-3).is_err());
    }

    #[test]
    fn uniform_and_point() {
        assert_eq!(uniform_dist(2).unwrap().values(), &[0.5, 0.5]);
        assert_eq!(uniform_dist(5).unwrap().values(), &[0.2; 5]);
        assert_eq!(uniform_dist(1), Err(Error::Length(1)));
        assert_eq!(point_dist(3, 1).unwrap().values(), &[1.0, 0.0, 0.0]);
        assert_eq!(point_dist(3, 3).unwrap().values(), &[0.0, 0.0, 1.0]);
        assert_eq!(point_dist(3, 4), Err(Error::Index { index: 4, n: 3 }));
        assert_eq!(point_dist(3, 0), Err(Error::Index { index: 0, n: 3 }));
    }

    #[test]
    fn entropy_values() {
        for n in 2..6 {
            for i in 1..=n {
                assert_eq!(entropy(&point_dist(n, i).unwrap()), 0.0);
            }
        }
        assert_eq!(entropy(&uniform_dist(2).unwrap()), 0.5);
        // 1 - (0.01 + 0.04 + 0.0225 + 0.09 + 0.0625)
        let p = make_dist(&EX1, &tol()).unwrap();
        assert!((entropy(&p) - 0.775).abs() < 1e-12);
    }

    #[test]
    fn linf_values() {
        assert_eq!(linf_to_uniform(&uniform_dist(4).unwrap()), 0.0);
        assert!((linf_to_uniform(&point_dist(5, 1).unwrap()) - 0.8).abs() < 1e-15);
        let p = make_dist(&EX1, &tol()).unwrap();
        assert!((linf_to_uniform(&p) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn stats_values() {
        let s = stats(&make_dist(&EX1, &tol()).unwrap());
        assert_eq!((s.max_p, s.min_p, s.n), (0.3, 0.1, 5));
        assert!((s.mp - 0.4).abs() < 1e-15);
        for n in 2..8 {
            let s = stats(&uniform_dist(n).unwrap());
            assert!((s.mp - 2.0 / n as f64).abs() < 1e-15);
        }
        let s = stats(&point_dist(3, 2).unwrap());
        assert_eq!((s.max_p, s.min_p, s.mp), (1.0, 0.0, 1.0));
    }

    #[test]
    fn parse_formats() {
        let p = Dist::parse("0.1, 0.2,0.15,0.3,0.25", &tol()).unwrap();
        assert_eq!(p.values(), &EX1);
        let q = Dist::parse("[0.1,0.2,0.15,0.3,0.25]", &tol()).unwrap();
        assert_eq!(p, q);
        assert!(matches!(
            Dist::parse("0.1,abc", &tol()),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            Dist::parse("@/nonexistent/file.json", &tol()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn parse_json_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        std::fs::write(&path, "[0.25, 0.75]").unwrap();
        let p = Dist::parse(&format!("@{}", path.display()), &tol()).unwrap();
        assert_eq!(p.values(), &[0.25, 0.75]);
    }

    #[test]
    fn serde_validates() {
        let p: Dist = serde_json::from_str("[0.5,0.5]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[0.5,0.5]");
        assert!(serde_json::from_str::<Dist>("[0.5,0.6]").is_err());
    }
}
