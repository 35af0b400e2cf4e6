//! Numerical continuation along a plane curve `A(a, b) = 0` and the line
//! integral of `eta = ln|a| d arg b - ln|b| d arg a`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentPoly2, Var};
use crate::roots::{poly_roots, RootError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrackError {
    #[error("start point is off the curve (relative residual {0:e})")]
    OffCurve(f64),
    #[error("path must be nonempty and begin at the start point's first coordinate")]
    BadPath,
    #[error("bad option: {0}")]
    BadOption(String),
    #[error("leading coefficient vanishes at a = {0}")]
    LeadingVanishes(Complex64),
    #[error("two roots collide near a = {0}; step halving could not separate them")]
    DiscriminantCollision(Complex64),
    #[error("root finder: {0}")]
    Roots(#[from] RootError),
    #[error("tracked root left the curve at a = {at} (relative residual {residual:e})")]
    Residual { at: Complex64, residual: f64 },
    #[error("coordinate vanishes at sample {0}")]
    ZeroCoordinate(usize),
    #[error("arg jump of {jump:.3} rad between samples {index} and {next}; refine the path", next = index + 1)]
    ArgJump { index: usize, jump: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackOptions {
    /// Largest step in the first coordinate.
    pub step: f64,
    /// Relative residual `|A| / sum |c a^i b^j|` allowed at every sample.
    pub residual_tol: f64,
    pub max_halvings: u32,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { step: 1e-3, residual_tol: 1e-10, max_halvings: 30 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub a: Complex64,
    pub b: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePath {
    pub poly: String,
    pub samples: Vec<CurveSample>,
    pub options: TrackOptions,
    /// Number of times a step had to be halved.
    pub halvings: u32,
}

impl CurvePath {
    pub fn start(&self) -> (Complex64, Complex64) {
        let s = &self.samples[0];
        (s.a, s.b)
    }

    pub fn end(&self) -> (Complex64, Complex64) {
        let s = self.samples.last().expect("nonempty");
        (s.a, s.b)
    }

    pub fn reversed(&self) -> CurvePath {
        let mut out = self.clone();
        out.samples.reverse();
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.residual).fold(0.0, f64::max)
    }
}

fn relative_residual(poly: &LaurentPoly2, a: Complex64, b: Complex64) -> f64 {
    let scale = poly.abs_scale(a, b);
    match poly.eval_complex(a, b) {
        Ok(v) if scale > 0.0 => v.norm() / scale,
        _ => f64::INFINITY,
    }
}

/// Roots in the second variable at `a`, excluding zero.
fn fibre(poly: &LaurentPoly2, a: Complex64) -> Result<Vec<Complex64>, TrackError> {
    let c = poly.specialize_complex(Var::Second, a);
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if c.last().is_none_or(|z| z.norm() <= 1e-12 * scale) {
        return Err(TrackError::LeadingVanishes(a));
    }
    Ok(poly_roots(&c)?.into_iter().filter(|z| z.norm() > 1e-12).collect())
}

/// Picks the root nearest `prev`; `None` if the choice is ambiguous.
fn nearest(roots: &[Complex64], prev: Complex64) -> Option<Complex64> {
    let (k, d1) = roots
        .iter()
        .enumerate()
        .map(|(k, z)| (k, (z - prev).norm()))
        .min_by(|x, y| x.1.total_cmp(&y.1))?;
    let gap = roots
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, z)| (z - roots[k]).norm())
        .fold(f64::INFINITY, f64::min);
    (d1 < 0.5 * gap).then_some(roots[k])
}

/// Follows the branch through `start` while the first coordinate moves along
/// the polyline `a_path`.
pub fn track_curve(
    poly: &LaurentPoly2,
    start: (Complex64, Complex64),
    a_path: &[Complex64],
    opts: &TrackOptions,
) -> Result<CurvePath, TrackError> {
    if !(opts.step > 0.0) || !(opts.residual_tol > 0.0) {
        return Err(TrackError::BadOption(format!("step {} and residual_tol {} must be positive", opts.step, opts.residual_tol)));
    }
    let (a0, b0) = start;
    if a_path.is_empty() || (a_path[0] - a0).norm() > 1e-12 * a0.norm().max(1.0) {
        return Err(TrackError::BadPath);
    }
    let r0 = relative_residual(poly, a0, b0);
    if !(r0 <= opts.residual_tol) {
        return Err(TrackError::OffCurve(r0));
    }
    let mut samples = vec![CurveSample { a: a0, b: b0, residual: r0 }];
    let mut halvings = 0;
    let (mut a, mut b) = (a0, b0);
    let min_step = opts.step * 0.5f64.powi(opts.max_halvings as i32);
    for &target in &a_path[1..] {
        let mut h = opts.step;
        while (target - a).norm() > 0.0 {
            let dist = (target - a).norm();
            let next_a = if dist <= h { target } else { a + (target - a) * (h / dist) };
            let roots = fibre(poly, next_a)?;
            let Some(next_b) = nearest(&roots, b) else {
                h *= 0.5;
                halvings += 1;
                if h < min_step {
                    return Err(TrackError::DiscriminantCollision(next_a));
                }
                continue;
            };
            let residual = relative_residual(poly, next_a, next_b);
            if !(residual <= opts.residual_tol) {
                return Err(TrackError::Residual { at: next_a, residual });
            }
            samples.push(CurveSample { a: next_a, b: next_b, residual });
            a = next_a;
            b = next_b;
            h = (2.0 * h).min(opts.step);
        }
    }
    Ok(CurvePath { poly: poly.to_string(), samples, options: opts.clone(), halvings })
}

/// Closed polygonal loop of `n` segments around `center` with the given radius,
/// starting and ending at `center + radius`.
pub fn loop_path(center: Complex64, radius: f64, n: usize) -> Vec<Complex64> {
    let n = n.max(3);
    (0..=n)
        .map(|k| {
            let th = std::f64::consts::TAU * (k % n) as f64 / n as f64;
            center + Complex64::from_polar(radius, th)
        })
        .collect()
}

/// Trapezoidal integral of `eta` along the samples.
pub fn integrate_eta(path: &CurvePath) -> Result<f64, TrackError> {
    let s = &path.samples;
    if let Some(k) = s.iter().position(|p| p.a.norm() == 0.0 || p.b.norm() == 0.0) {
        return Err(TrackError::ZeroCoordinate(k));
    }
    let mut total = 0.0;
    for (k, w) in s.windows(2).enumerate() {
        let da = (w[1].a / w[0].a).arg();
        let db = (w[1].b / w[0].b).arg();
        for jump in [da, db] {
            if jump.abs() > std::f64::consts::FRAC_PI_2 {
                return Err(TrackError::ArgJump { index: k, jump });
            }
        }
        let la = 0.5 * (w[0].a.norm().ln() + w[1].a.norm().ln());
        let lb = 0.5 * (w[0].b.norm().ln() + w[1].b.norm().ln());
        total += la * db - lb * da;
    }
    Ok(total)
}
