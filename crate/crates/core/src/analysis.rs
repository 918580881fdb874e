//! Contracting / expanding / involutive classification of negators, fixed
//! points, involution checks and the negation-axiom oracle.
//!
//! A negator is *contracting* at `p` when `N(N(p))` lies between `p` and
//! `N(p)`, *expanding* when `p` lies between `N(p)` and `N(N(p))`, and
//! *involutive* when `N(N(p)) = p`. Every negator is contracting or expanding
//! at every point, and both exactly when it is involutive there.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::batch::Exec;
use crate::error::{Error, Result};
use crate::negators::{
    involutive_point, negate, tsallis_point, tsallis_power_sum, Independent, NegatorSpec,
    Pointwise,
};
use crate::simplex::{stats, uniform_dist, Dist, Tolerance};

/// Number of evenly spaced points on `[0, 1]` in the classification grid.
pub const GRID_POINTS: usize = 101;

const SCAN_POINTS: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointFlags {
    pub contracting: bool,
    pub strictly_contracting: bool,
    pub expanding: bool,
    pub involutive: bool,
}

/// Classification of a negator at one probability value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointVerdict {
    pub p: f64,
    pub np: f64,
    pub nnp: f64,
    pub flags: PointFlags,
}

impl PointVerdict {
    /// Classifies the triple `(p, N(p), N(N(p)))` for length `n`.
    pub fn from_triple(p: f64, np: f64, nnp: f64, n: usize, tol: &Tolerance) -> Self {
        let t = tol.tol_eq;
        let within = |x: f64, a: f64, b: f64| x >= a.min(b) - t && x <= a.max(b) + t;
        let involutive = (nnp - p).abs() <= t;
        let bracket_c = within(nnp, p, np);
        let bracket_e = within(p, np, nnp);
        // Outside the involution test both slack brackets can only hold within
        // 2·tol of the fixed point; that sliver is reported as contracting.
        let contracting = involutive || bracket_c;
        let expanding = involutive || (bracket_e && !bracket_c);
        let off_fixed = (p - 1.0 / n as f64).abs() > t;
        let strictly_contracting =
            off_fixed && nnp > p.min(np) + t && nnp < p.max(np) - t;
        Self {
            p,
            np,
            nnp,
            flags: PointFlags {
                contracting,
                strictly_contracting,
                expanding,
                involutive,
            },
        }
    }

    fn fixed_distance(&self, n: usize) -> f64 {
        (self.p - 1.0 / n as f64).abs()
    }
}

/// Classifies `negator` at `p`. The second application uses
/// [`Pointwise::negated`], so pd-dependent negators see the context of the
/// negated distribution.
pub fn classify_point<N: Pointwise>(negator: &N, p: f64, tol: &Tolerance) -> Result<PointVerdict> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("p = {p} outside [0, 1]")));
    }
    let np = negator.eval(p);
    let nnp = negator.negated().eval(np);
    Ok(PointVerdict::from_triple(p, np, nnp, negator.n(), tol))
}

/// Per-coordinate verdicts of the orbit `P, NOT(P), NOT²(P)`.
pub fn classify_dist(spec: &NegatorSpec, p: &Dist, tol: &Tolerance) -> Result<Vec<PointVerdict>> {
    let q = negate(spec, p)?;
    let r = negate(spec, &q)?;
    let n = p.n();
    Ok(p.values()
        .iter()
        .zip(q.values())
        .zip(r.values())
        .map(|((&a, &b), &c)| PointVerdict::from_triple(a, b, c, n, tol))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Contracting,
    StrictlyContracting,
    Expanding,
    Involutive,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub spec: NegatorSpec,
    pub n: usize,
    #[serde(rename = "samples")]
    pub sample_count: usize,
    pub verdict: Verdict,
    pub witnesses: Vec<PointVerdict>,
}

/// Classifies a negator family at length `n`.
///
/// pd-independent families are evaluated on the 101-point grid plus
/// `samples` seeded uniform points. pd-dependent families are evaluated
/// coordinate by coordinate on the orbits of `samples` seeded random
/// distributions.
pub fn classify(spec: &NegatorSpec, n: usize, samples: usize, seed: u64) -> Result<ClassificationReport> {
    classify_with(spec, n, samples, seed, Exec::default())
}

pub fn classify_with(
    spec: &NegatorSpec,
    n: usize,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<ClassificationReport> {
    if n < 2 {
        return Err(Error::Length(n));
    }
    if samples == 0 {
        return Err(Error::domain("samples must be at least 1"));
    }
    spec.validate()?;
    let tol = Tolerance::default();
    let verdicts: Vec<PointVerdict> = if spec.is_pd_independent() {
        let negator = Independent::new(spec, n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<f64> = (0..GRID_POINTS)
            .map(|i| i as f64 / (GRID_POINTS - 1) as f64)
            .chain((0..samples).map(|_| rng.random::<f64>()))
            .collect();
        exec.map(&points, |&p| classify_point(&negator, p, &tol))
            .into_iter()
            .collect::<Result<_>>()?
    } else {
        let per_dist = exec.try_map_range(0..samples as u64, |i| {
            let p = random_dist(n, seed.wrapping_add(i))?;
            classify_dist(spec, &p, &tol)
        })?;
        per_dist.into_iter().flatten().collect()
    };
    let (verdict, witnesses) = aggregate(&verdicts, n);
    Ok(ClassificationReport {
        spec: *spec,
        n,
        sample_count: samples,
        verdict,
        witnesses,
    })
}

fn aggregate(verdicts: &[PointVerdict], n: usize) -> (Verdict, Vec<PointVerdict>) {
    let all = |f: fn(&PointFlags) -> bool| verdicts.iter().all(|v| f(&v.flags));
    let off_fixed = |v: &PointVerdict| v.fixed_distance(n) > Tolerance::default().tol_eq;

    let (verdict, mut picks): (Verdict, Vec<PointVerdict>) = if all(|f| f.involutive) {
        (Verdict::Involutive, verdicts.to_vec())
    } else if all(|f| f.contracting) {
        let non_strict: Vec<PointVerdict> = verdicts
            .iter()
            .filter(|v| off_fixed(v) && !v.flags.strictly_contracting)
            .copied()
            .collect();
        if non_strict.is_empty() {
            (Verdict::StrictlyContracting, verdicts.to_vec())
        } else {
            (Verdict::Contracting, non_strict)
        }
    } else if all(|f| f.expanding) {
        let only: Vec<PointVerdict> = verdicts
            .iter()
            .filter(|v| !v.flags.involutive)
            .copied()
            .collect();
        (Verdict::Expanding, only)
    } else {
        let contracting = verdicts.iter().find(|v| v.flags.contracting && !v.flags.involutive);
        let expanding = verdicts.iter().find(|v| v.flags.expanding && !v.flags.involutive);
        let neither = verdicts.iter().find(|v| !v.flags.contracting && !v.flags.expanding);
        let picks = [contracting, expanding, neither].into_iter().flatten().copied().collect();
        return (Verdict::Mixed, picks);
    };
    picks.sort_by(|a, b| b.fixed_distance(n).total_cmp(&a.fixed_distance(n)));
    picks.truncate(3);
    (verdict, picks)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvolutionCheck {
    pub holds: bool,
    /// `max_i |NOT(NOT(P))_i - p_i|`.
    pub max_error: f64,
}

pub fn check_involution(spec: &NegatorSpec, p: &Dist, tol: &Tolerance) -> Result<InvolutionCheck> {
    let back = negate(spec, &negate(spec, p)?)?;
    let max_error = back.max_abs_diff(p);
    Ok(InvolutionCheck {
        holds: max_error <= tol.tol_eq,
        max_error,
    })
}

/// Worst double-negation error over a batch of seeded random distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvolutionSweep {
    pub count: usize,
    pub max_error: f64,
    pub worst_seed: u64,
}

pub fn involution_sweep(
    spec: &NegatorSpec,
    n: usize,
    seeds: std::ops::Range<u64>,
    exec: Exec,
) -> Result<InvolutionSweep> {
    let tol = Tolerance::default();
    let errors = exec.try_map_range(seeds.clone(), |s| {
        let p = random_dist(n, s)?;
        Ok::<_, Error>((s, check_involution(spec, &p, &tol)?.max_error))
    })?;
    let (worst_seed, max_error) = errors
        .iter()
        .copied()
        .fold((seeds.start, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    Ok(InvolutionSweep {
        count: errors.len(),
        max_error,
        worst_seed,
    })
}

/// The fixed point `1/n` of a negator together with the evidence for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPoint {
    pub value: f64,
    /// `|N(1/n) - 1/n|`.
    pub residual: f64,
    /// Every sign change of `N(p) - p` found on a grid over `[0, 1]`,
    /// refined by bisection.
    pub crossings: Vec<f64>,
}

impl FixedPoint {
    /// True when `1/n` is a fixed point and the scan finds no other.
    pub fn is_unique(&self, tol: f64) -> bool {
        self.residual <= tol
            && self.crossings.len() == 1
            && (self.crossings[0] - self.value).abs() <= tol
    }
}

/// Fixed point of `spec` at length `n`. pd-dependent families are evaluated
/// in the context of the uniform distribution.
pub fn fixed_point(spec: &NegatorSpec, n: usize) -> Result<FixedPoint> {
    fixed_point_in(spec, &uniform_dist(n)?)
}

/// Fixed point of `spec` evaluated in the context of `context`.
pub fn fixed_point_in(spec: &NegatorSpec, context: &Dist) -> Result<FixedPoint> {
    spec.validate()?;
    let n = context.n();
    let eval: Box<dyn Fn(f64) -> f64> = match *spec {
        NegatorSpec::Tsallis { k } => {
            let sum = tsallis_power_sum(context, k);
            Box::new(move |p| tsallis_point(p, k, n, sum))
        }
        NegatorSpec::Involutive => {
            let s = stats(context);
            involutive_point(0.0, &s)?;
            Box::new(move |p| involutive_point(p, &s).expect("stats checked"))
        }
        _ => {
            let negator = Independent::new(spec, n)?;
            Box::new(move |p| negator.eval(p))
        }
    };
    let value = 1.0 / n as f64;
    let residual = (eval(value) - value).abs();
    let crossings = scan_crossings(&|p| eval(p) - p, Tolerance::default().tol_eq);
    Ok(FixedPoint {
        value,
        residual,
        crossings,
    })
}

fn scan_crossings(g: &dyn Fn(f64) -> f64, tol: f64) -> Vec<f64> {
    let sign = |x: f64| {
        if x.abs() <= tol {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    };
    let mut out = Vec::new();
    let mut last: Option<(f64, i32)> = None;
    for i in 0..SCAN_POINTS {
        let p = i as f64 / (SCAN_POINTS - 1) as f64;
        let s = sign(g(p));
        if s == 0 {
            continue;
        }
        if let Some((lp, ls)) = last {
            if ls != s {
                out.push(bisect(g, lp, p, ls));
            }
        }
        last = Some((p, s));
    }
    out
}

fn bisect(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, lo_sign: i32) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = g(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == (lo_sign > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub violation: Option<String>,
}

impl AxiomCheck {
    fn violated(msg: String) -> Self {
        Self {
            holds: false,
            violation: Some(msg),
        }
    }
}

/// Checks that `q` is a negation of `p`: a valid distribution reversing the
/// order of `p`, with equal values of `p` mapped to equal values of `q`.
pub fn negation_axioms_check(p: &Dist, q: &[f64], tol: &Tolerance) -> Result<AxiomCheck> {
    if p.n() != q.len() {
        return Err(Error::LengthMismatch(p.n(), q.len()));
    }
    if let Err(e) = Dist::new(q.to_vec(), tol) {
        return Ok(AxiomCheck::violated(format!("not a distribution: {e}")));
    }
    let pv = p.values();
    let t = tol.tol_eq;
    for i in 0..pv.len() {
        for j in 0..pv.len() {
            if i == j {
                continue;
            }
            if pv[i] == pv[j] && (q[i] - q[j]).abs() > t {
                return Ok(AxiomCheck::violated(format!(
                    "p[{i}] = p[{j}] but q[{i}] = {} != q[{j}] = {}",
                    q[i], q[j]
                )));
            }
            if pv[i] < pv[j] && q[i] < q[j] - t {
                return Ok(AxiomCheck::violated(format!(
                    "p[{i}] < p[{j}] but q[{i}] = {} < q[{j}] = {}",
                    q[i], q[j]
                )));
            }
        }
    }
    Ok(AxiomCheck {
        holds: true,
        violation: None,
    })
}

/// Deterministic flat-Dirichlet sample of length `n`; every entry is
/// strictly positive.
pub fn random_dist(n: usize, seed: u64) -> Result<Dist> {
    if n < 2 {
        return Err(Error::Length(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<f64> = (0..n)
        .map(|_| loop {
            let x: f64 = rng.sample(Exp1);
            if x > 0.0 {
                break x;
            }
        })
        .collect();
    let total: f64 = draws.iter().sum();
    Dist::new(
        draws.into_iter().map(|x| x / total).collect(),
        &Tolerance::default(),
    )
}
