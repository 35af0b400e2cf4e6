//! Newton polygons of bivariate Laurent polynomials.
//!
//! Slopes use the convention Δ(first exponent) / Δ(second exponent), so for a
//! curve in `(m, l)` an edge of direction `(3, 2)` has slope `3/2`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::rational::{format_rational, int, rat};
use crate::laurent::{irreducibility_check, Exponent, LaurentPoly2, PolyError, Rational, UniPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("polygon is degenerate ({0:?})")]
    Degenerate(Degeneracy),
    #[error("edge is not an edge of this polynomial's Newton polygon")]
    EdgeNotOnHull,
    #[error("expected slopes {expected} but the polygon has {found}")]
    SlopeMismatch { expected: String, found: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A boundary slope in `Q ∪ {∞}`, stored as a reduced pair `(num, den)` with
/// `den >= 0`; `∞` is `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSlope {
    num: i64,
    den: i64,
}

impl EdgeSlope {
    pub const INFINITY: EdgeSlope = EdgeSlope { num: 1, den: 0 };

    /// Slope of an edge with direction `(d_first, d_second)`.
    pub fn from_direction(d_first: i64, d_second: i64) -> Self {
        assert!((d_first, d_second) != (0, 0), "zero direction");
        if d_second == 0 {
            return Self::INFINITY;
        }
        let g = d_first.gcd(&d_second);
        let s = d_second.signum();
        EdgeSlope { num: s * d_first / g, den: s * d_second / g }
    }

    pub fn new(num: i64, den: i64) -> Self {
        Self::from_direction(num, den)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// `None` for `∞`.
    pub fn to_rational(&self) -> Option<Rational> {
        (!self.is_infinite()).then(|| rat(self.num, self.den))
    }

    pub fn from_rational(q: &Rational) -> Self {
        use num_traits::ToPrimitive;
        let n = q.numer().to_i64().expect("slope numerator fits i64");
        let d = q.denom().to_i64().expect("slope denominator fits i64");
        Self::from_direction(n, d)
    }
}

impl Ord for EdgeSlope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128)),
        }
    }
}

impl PartialOrd for EdgeSlope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.num),
            d => write!(f, "{}/{}", self.num, d),
        }
    }
}

pub fn format_slopes(slopes: &BTreeSet<EdgeSlope>) -> String {
    let parts: Vec<String> = slopes.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub start: Exponent,
    /// Primitive direction vector.
    pub direction: (i64, i64),
    /// Lattice length `k >= 1`: the edge ends at `start + k * direction`.
    pub length: u64,
}

impl Edge {
    pub fn end(&self) -> Exponent {
        let k = self.length as i64;
        (self.start.0 + k * self.direction.0, self.start.1 + k * self.direction.1)
    }

    pub fn slope(&self) -> EdgeSlope {
        EdgeSlope::from_direction(self.direction.0, self.direction.1)
    }

    /// Lattice points on the edge, from `start` to `end`.
    pub fn lattice_points(&self) -> impl Iterator<Item = Exponent> + '_ {
        (0..=self.length as i64).map(move |k| (self.start.0 + k * self.direction.0, self.start.1 + k * self.direction.1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    None,
    Point,
    Segment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    /// Counterclockwise, starting at the vertex with the smallest second
    /// exponent (then smallest first exponent).
    pub vertices: Vec<Exponent>,
    pub edges: Vec<Edge>,
    pub axis_diameters: (u64, u64),
    pub degeneracy: Degeneracy,
}

impl NewtonPolygon {
    pub fn is_degenerate(&self) -> bool {
        self.degeneracy != Degeneracy::None
    }

    /// Whether `pt` lies inside or on the polygon.
    pub fn contains(&self, pt: Exponent) -> bool {
        match self.degeneracy {
            Degeneracy::Point => pt == self.vertices[0],
            Degeneracy::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, pt) == 0
                    && pt.0 >= a.0.min(b.0)
                    && pt.0 <= a.0.max(b.0)
                    && pt.1 >= a.1.min(b.1)
                    && pt.1 <= a.1.max(b.1)
            }
            Degeneracy::None => self.edges.iter().all(|e| cross(e.start, e.end(), pt) >= 0),
        }
    }

    /// Twice the Euclidean area.
    pub fn double_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum()
    }

    /// Minkowski sum of two polygons.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push((a.0 + b.0, a.1 + b.1));
            }
        }
        hull_of(pts)
    }
}

fn cross(o: Exponent, a: Exponent, b: Exponent) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull of lattice points (Andrew's monotone chain), strictly convex.
pub fn hull_of(mut pts: Vec<Exponent>) -> NewtonPolygon {
    assert!(!pts.is_empty());
    pts.sort();
    pts.dedup();
    let hull: Vec<Exponent> = if pts.len() < 3 {
        pts.clone()
    } else {
        let mut lower: Vec<Exponent> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Exponent> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    };
    let mut vertices = hull;
    let degeneracy = match vertices.len() {
        1 => Degeneracy::Point,
        2 => Degeneracy::Segment,
        _ => Degeneracy::None,
    };
    if let Some(start) = (0..vertices.len()).min_by_key(|&i| (vertices[i].1, vertices[i].0)) {
        vertices.rotate_left(start);
    }
    let n = vertices.len();
    let edges = if n < 2 {
        Vec::new()
    } else {
        (0..n)
            .map(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (dx, dy) = (b.0 - a.0, b.1 - a.1);
                let g = dx.gcd(&dy);
                Edge { start: a, direction: (dx / g, dy / g), length: g as u64 }
            })
            .collect()
    };
    let span = |f: fn(&Exponent) -> i64| {
        let lo = vertices.iter().map(f).min().unwrap_or(0);
        let hi = vertices.iter().map(f).max().unwrap_or(0);
        (hi - lo) as u64
    };
    let axis_diameters = (span(|v| v.0), span(|v| v.1));
    NewtonPolygon { vertices, edges, axis_diameters, degeneracy }
}

pub fn compute_polygon(p: &LaurentPoly2) -> Result<NewtonPolygon, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    Ok(hull_of(p.support()))
}

/// One slope per parallel edge class.
pub fn boundary_slopes(n: &NewtonPolygon) -> Result<BTreeSet<EdgeSlope>, NewtonError> {
    if n.is_degenerate() {
        return Err(NewtonError::Degenerate(n.degeneracy));
    }
    Ok(n.edges.iter().map(Edge::slope).collect())
}

pub fn axis_diameter(n: &NewtonPolygon, axis: Var) -> u64 {
    match axis {
        Var::First => n.axis_diameters.0,
        Var::Second => n.axis_diameters.1,
    }
}

/// Coefficients of `p` along `edge`, indexed by lattice position from the
/// edge's start.
pub fn edge_polynomial(p: &LaurentPoly2, edge: &Edge) -> Result<UniPoly, NewtonError> {
    let n = compute_polygon(p)?;
    if !n.edges.contains(edge) {
        return Err(NewtonError::EdgeNotOnHull);
    }
    Ok(UniPoly::new(edge.lattice_points().map(|e| p.coeff(e)).collect()))
}

/// A factor of the input whose roots are all primitive `order`-th roots of
/// unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnityFactor {
    pub order: u64,
    pub factor: UniPoly,
}

/// Roots of unity of order at most `bound` among the roots of `p`, found by
/// exact gcd with `x^n - 1`. Empty means none detected.
pub fn unity_order(p: &UniPoly, bound: u64) -> Vec<UnityFactor> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    if rest.is_zero() {
        return out;
    }
    for n in 1..=bound {
        let g = rest.gcd(&UniPoly::x_pow_minus_one(n as usize));
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        // Strip every copy so each root is reported once, at its minimal order.
        loop {
            let h = rest.gcd(&g);
            if h.degree().unwrap_or(0) == 0 {
                break;
            }
            rest = rest.exact_div(&h).expect("gcd divides");
        }
        out.push(UnityFactor { order: n, factor: g });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalityVerdict {
    Minimal,
    PossiblyFactorable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimality {
    pub verdict: MinimalityVerdict,
    /// Lower bounds on `(diam_first, diam_second)` for any factor whose
    /// polygon has exactly the expected slopes.
    pub lower_bounds: (Rational, Rational),
    pub diameters: (u64, u64),
    pub certificate: Vec<String>,
    pub factor_witness: Option<Vec<LaurentPoly2>>,
}

/// Lattice-width argument: a polygon whose edges use exactly the given slope
/// classes has projection width at least the sum below, so a factor with
/// those slopes whose bound already reaches the diameters of `p` must have the
/// whole polygon of `p`.
pub fn minimality_check(p: &LaurentPoly2, expected: &BTreeSet<EdgeSlope>) -> Result<Minimality, NewtonError> {
    let n = compute_polygon(p)?;
    let found = boundary_slopes(&n)?;
    if &found != expected {
        return Err(NewtonError::SlopeMismatch { expected: format_slopes(expected), found: format_slopes(&found) });
    }
    let var_names = p.vars();
    // Primitive direction of each slope class.
    let dirs: Vec<(i64, i64)> = found.iter().map(|s| if s.is_infinite() { (1, 0) } else { (s.num, s.den) }).collect();
    // With two classes both orientations of each must occur to close the
    // polygon; with more classes each occurs at least once.
    let factor = if dirs.len() == 2 { int(1) } else { rat(1, 2) };
    let mut certificate = Vec::new();
    let mut bounds = [int(0), int(0)];
    for (axis, label) in [(0usize, var_names.first.as_str()), (1, var_names.second.as_str())] {
        let mut terms = Vec::new();
        for (s, d) in found.iter().zip(&dirs) {
            let c = if axis == 0 { d.0.abs() } else { d.1.abs() };
            bounds[axis] += int(c) * &factor;
            terms.push(format!("{c} (slope {s})"));
        }
        certificate.push(format!(
            "diam_{label}(S) >= {}{} = {}",
            if dirs.len() == 2 { "" } else { "1/2*(" },
            terms.join(" + ") + if dirs.len() == 2 { "" } else { ")" },
            format_rational(&bounds[axis])
        ));
    }
    let diameters = n.axis_diameters;
    let tight = bounds[0] == int(diameters.0 as i64) && bounds[1] == int(diameters.1 as i64);
    certificate.push(format!(
        "diam_{}(P) = {}, diam_{}(P) = {}: {}",
        var_names.first,
        diameters.0,
        var_names.second,
        diameters.1,
        if tight { "bounds are attained" } else { "bounds are not attained" }
    ));
    let witness = match irreducibility_check(p) {
        Ok(r) => r.factors().map(|f| f.to_vec()),
        Err(PolyError::Constant) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(fs) = &witness {
        let shown: Vec<String> = fs.iter().map(|f| format!("({f})")).collect();
        certificate.push(format!("explicit factorization {}", shown.join("*")));
    }
    let verdict = if tight && witness.is_none() { MinimalityVerdict::Minimal } else { MinimalityVerdict::PossiblyFactorable };
    let [b0, b1] = bounds;
    Ok(Minimality { verdict, lower_bounds: (b0, b1), diameters, certificate, factor_witness: witness })
}
