//! Culler-Shalen seminorm reconstructed from Newton polygon edges, its norm
//! ball, and related slope arithmetic.
//!
//! Classes `a*mu + b*beta` are written `(a, b)`. An edge with slope class
//! direction `(dm, dl)` contributes the functional `(a, b) -> dl*a - dm*b`,
//! weighted by the edge's lattice length.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::rational::{format_rational, int, rat};
use crate::laurent::Rational;
use crate::newton::{boundary_slopes, EdgeSlope, NewtonError, NewtonPolygon};

/// Flagged in reports: the ideal-point multiplicity is not determined by the
/// polygon, so edge weights are taken to be lattice lengths.
pub const WEIGHT_CONVENTION: &str = "convention: d_e = lattice length";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error("functionals are all parallel; the seminorm is not a norm")]
    NotANorm,
    #[error("slope set is empty")]
    EmptySlopeSet,
    #[error("pole order of f_mu is zero; the slope is undefined at this ideal point")]
    ZeroMuPole,
    #[error("t = {0} is outside the open interval (0, 1)")]
    OutOfRange(String),
    #[error("norm ball has {0} vertices, not 4")]
    NotParallelogram(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeripheralClass {
    pub a: i64,
    pub b: i64,
}

impl PeripheralClass {
    pub const MU: PeripheralClass = PeripheralClass { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        PeripheralClass { a, b }
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b) == 1
    }

    /// `a / b`; `None` for the zero class.
    pub fn slope(&self) -> Option<EdgeSlope> {
        ((self.a, self.b) != (0, 0)).then(|| EdgeSlope::from_direction(self.a, self.b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functional {
    pub q: i64,
    pub p: i64,
    pub weight: u64,
}

impl Functional {
    fn apply(&self, a: &Rational, b: &Rational) -> Rational {
        (int(self.q) * a + int(self.p) * b).abs() * int(self.weight as i64)
    }

    /// A nonzero vector in the kernel.
    fn kernel(&self) -> (i64, i64) {
        (-self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seminorm {
    pub functionals: Vec<Functional>,
}

pub fn seminorm_from_polygon(n: &NewtonPolygon) -> Result<Seminorm, NormError> {
    let slopes = boundary_slopes(n)?;
    let mut weights: BTreeMap<EdgeSlope, u64> = slopes.iter().map(|s| (*s, 0)).collect();
    for e in &n.edges {
        let w = weights.get_mut(&e.slope()).expect("slope of an edge");
        // Opposite parallel edges share one functional.
        *w = (*w).max(e.length);
    }
    let functionals = weights
        .into_iter()
        .map(|(s, weight)| {
            let (dm, dl) = if s.is_infinite() { (1, 0) } else { (s.num(), s.den()) };
            let (mut q, mut p) = (dl, -dm);
            if q < 0 || (q == 0 && p < 0) {
                q = -q;
                p = -p;
            }
            Functional { q, p, weight }
        })
        .collect();
    Ok(Seminorm { functionals })
}

/// Value of the seminorm at a rational point of the class plane.
pub fn norm_at(s: &Seminorm, a: &Rational, b: &Rational) -> Rational {
    s.functionals.iter().map(|f| f.apply(a, b)).sum()
}

pub fn eval_norm(s: &Seminorm, c: PeripheralClass) -> Rational {
    norm_at(s, &int(c.a), &int(c.b))
}

pub type Point = (Rational, Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormBall {
    /// Counterclockwise, starting at the vertex of smallest nonnegative angle.
    pub vertices: Vec<Point>,
    pub radius: Rational,
}

impl NormBall {
    pub fn area(&self) -> Rational {
        shoelace(&self.vertices)
    }
}

fn shoelace(v: &[Point]) -> Rational {
    let n = v.len();
    let twice: Rational = (0..n)
        .map(|i| {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            &a.0 * &b.1 - &a.1 * &b.0
        })
        .sum();
    (twice / int(2)).abs()
}

/// Angular order, starting from the positive first axis.
fn angle_cmp(u: &(i64, i64), v: &(i64, i64)) -> Ordering {
    let half = |w: &(i64, i64)| if w.1 > 0 || (w.1 == 0 && w.0 > 0) { 0 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| (v.0 as i128 * u.1 as i128).cmp(&(u.0 as i128 * v.1 as i128)))
}

/// Norm of the smallest nonzero lattice class.
pub fn min_lattice_norm(s: &Seminorm) -> Result<Rational, NormError> {
    let unit = unit_ball_vertices(s)?;
    let probe = [(1, 0), (0, 1), (1, 1), (1, -1)];
    let mut best = probe.iter().map(|&(a, b)| eval_norm(s, PeripheralClass::new(a, b))).min().expect("nonempty");
    // Every class of norm <= best lies in best * (unit ball).
    let reach = unit.iter().flat_map(|(x, y)| [x.abs(), y.abs()]).max().expect("nonempty") * &best;
    let bound = reach.floor().to_integer();
    let bound: i64 = num_traits::ToPrimitive::to_i64(&bound).expect("box bound fits i64");
    for a in 0..=bound {
        for b in -bound..=bound {
            if (a, b) == (0, 0) || (a == 0 && b < 0) {
                continue;
            }
            let v = eval_norm(s, PeripheralClass::new(a, b));
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

fn unit_ball_vertices(s: &Seminorm) -> Result<Vec<Point>, NormError> {
    let mut dirs: Vec<(i64, i64)> = Vec::new();
    for f in &s.functionals {
        let k = f.kernel();
        for d in [k, (-k.0, -k.1)] {
            if !dirs.contains(&d) {
                dirs.push(d);
            }
        }
    }
    if dirs.len() < 4 {
        return Err(NormError::NotANorm);
    }
    dirs.sort_by(angle_cmp);
    dirs.iter()
        .map(|&(a, b)| {
            let n = eval_norm(s, PeripheralClass::new(a, b));
            if n.is_zero() {
                return Err(NormError::NotANorm);
            }
            Ok((int(a) / &n, int(b) / &n))
        })
        .collect()
}

/// The ball of radius `r` (the minimal nonzero lattice norm). Its vertices
/// lie on the kernel lines of the functionals, i.e. on rays through
/// boundary-slope classes.
pub fn ball_polygon(s: &Seminorm) -> Result<NormBall, NormError> {
    let unit = unit_ball_vertices(s)?;
    let radius = min_lattice_norm(s)?;
    let vertices = unit.into_iter().map(|(a, b)| (a * &radius, b * &radius)).collect();
    Ok(NormBall { vertices, radius })
}

/// An element of `Q ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extended {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(q) => write!(f, "{}", format_rational(q)),
            Extended::Infinity => write!(f, "inf"),
        }
    }
}

pub fn slope_set_diameter<'a, I>(slopes: I) -> Result<Extended, NormError>
where
    I: IntoIterator<Item = &'a EdgeSlope>,
{
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut any = false;
    for s in slopes {
        any = true;
        let Some(q) = s.to_rational() else {
            return Ok(Extended::Infinity);
        };
        if lo.as_ref().is_none_or(|l| &q < l) {
            lo = Some(q.clone());
        }
        if hi.as_ref().is_none_or(|h| &q > h) {
            hi = Some(q);
        }
    }
    if !any {
        return Err(NormError::EmptySlopeSet);
    }
    Ok(Extended::Finite(hi.expect("nonempty") - lo.expect("nonempty")))
}

/// `|s| = (pole order of f_beta) / (pole order of f_mu)` at an ideal point.
pub fn ideal_point_slope(pole_beta: u64, pole_mu: u64) -> Result<Rational, NormError> {
    if pole_mu == 0 {
        return Err(NormError::ZeroMuPole);
    }
    Ok(rat(pole_beta as i64, pole_mu as i64))
}

/// `1 / (2 t (1 - t))` for `0 < t < 1`.
pub fn cs_bound(t: &Rational) -> Result<Rational, NormError> {
    if !t.is_positive() || t >= &int(1) {
        return Err(NormError::OutOfRange(format_rational(t)));
    }
    Ok(int(1) / (int(2) * t * (int(1) - t)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalPolygonReport {
    pub area: Rational,
    pub area_is_four: bool,
    /// Endpoints of the edge whose midpoint is `mu`, if any.
    pub mu_edge: Option<(Point, Point)>,
    /// Slopes `a/b` of the two vertex classes, ascending.
    pub vertex_slopes: (EdgeSlope, EdgeSlope),
    pub pq: Option<(i64, i64)>,
    pub failures: Vec<String>,
}

impl FundamentalPolygonReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `ball` is the fundamental parallelogram: area 4, `mu` at the
/// midpoint of an edge, and vertex slopes `-p/q` and `2 - p/q` with
/// `0 <= p <= q` coprime.
pub fn fundamental_polygon_check(ball: &NormBall, mu: PeripheralClass) -> Result<FundamentalPolygonReport, NormError> {
    let v = &ball.vertices;
    if v.len() != 4 {
        return Err(NormError::NotParallelogram(v.len()));
    }
    let mut failures = Vec::new();
    let area = ball.area();
    let area_is_four = area == int(4);
    if !area_is_four {
        failures.push(format!("area is {}, not 4", format_rational(&area)));
    }
    let mu_pt = (int(mu.a), int(mu.b));
    let mu_edge = (0..4).map(|i| (v[i].clone(), v[(i + 1) % 4].clone())).find(|(a, b)| {
        let mid = ((&a.0 + &b.0) / int(2), (&a.1 + &b.1) / int(2));
        mid == mu_pt
    });
    if mu_edge.is_none() {
        failures.push(format!("mu = ({}, {}) is not the midpoint of an edge", mu.a, mu.b));
    }
    let slope_of = |p: &Point| -> EdgeSlope {
        // a/b of a rational point: scale to integers first.
        let l = p.0.denom().lcm(p.1.denom());
        let a = (&p.0 * Rational::from_integer(l.clone())).to_integer();
        let b = (&p.1 * Rational::from_integer(l)).to_integer();
        use num_traits::ToPrimitive;
        EdgeSlope::from_direction(a.to_i64().expect("fits"), b.to_i64().expect("fits"))
    };
    let (s0, s1) = {
        let (x, y) = (slope_of(&v[0]), slope_of(&v[1]));
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let pq = match (s0.to_rational(), s1.to_rational()) {
        (Some(lo), Some(hi)) if &hi - &lo == int(2) && !lo.is_positive() && lo >= int(-1) => {
            let r = -lo;
            use num_traits::ToPrimitive;
            Some((r.numer().to_i64().expect("fits"), r.denom().to_i64().expect("fits")))
        }
        _ => None,
    };
    if pq.is_none() {
        failures.push(format!("vertex slopes {s0}, {s1} are not of the form -p/q, 2-p/q with 0 <= p <= q"));
    }
    Ok(FundamentalPolygonReport { area, area_is_four, mu_edge, vertex_slopes: (s0, s1), pq, failures })
}
