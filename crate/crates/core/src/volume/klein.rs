//! Tetrahedra in the Klein model and their hyperbolic volumes.
//!
//! The volume density is `(1 - |x|^2)^-2`. Writing it as the divergence of
//! the radial field `y F(|y|) / |y|^3` with
//! `F(R) = R / (2 (1 - R^2)) - artanh(R) / 2` turns the volume into a sum of
//! face integrals `h_f * int_f F(|y|) / |y|^3 dA`, where `h_f` is the signed
//! distance from the origin to the face plane. Each face is split into four
//! midpoint triangles and integrated in Duffy coordinates around a corner, so
//! the `1/(1 - |y|^2)` blow-up at an ideal vertex is cancelled by the
//! Jacobian.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::quadrature::integrate;
use super::VolumeError;
use crate::par;

pub type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// A geodesic tetrahedron in the Klein model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KleinTetrahedron {
    pub vertices: [Vec3; 4],
    /// `1 - |v|^2` for each vertex, kept separately so that nearly ideal
    /// vertices do not lose precision; zero for ideal vertices.
    pub defects: [f64; 4],
}

impl KleinTetrahedron {
    pub fn new(vertices: [Vec3; 4]) -> Result<Self, VolumeError> {
        let mut defects = [0.0; 4];
        for (d, v) in defects.iter_mut().zip(&vertices) {
            let r2 = dot(*v, *v);
            if r2 > 1.0 + 1e-12 {
                return Err(VolumeError::Degenerate(format!("vertex {v:?} lies outside the ball")));
            }
            *d = (1.0 - r2).max(0.0);
        }
        Self::with_defects(vertices, defects)
    }

    pub fn with_defects(vertices: [Vec3; 4], defects: [f64; 4]) -> Result<Self, VolumeError> {
        if defects.iter().any(|d| !(*d >= 0.0)) {
            return Err(VolumeError::Degenerate("negative defect".into()));
        }
        let t = KleinTetrahedron { vertices, defects };
        let ev = t.euclidean_volume();
        if !(ev > 1e-14 * t.scale().powi(3)) {
            return Err(VolumeError::Degenerate(format!("Euclidean volume {ev:e}")));
        }
        Ok(t)
    }

    /// Vertices at hyperbolic distances `dist[k]` from the origin along unit
    /// directions `dirs[k]`; `f64::INFINITY` gives an ideal vertex.
    pub fn from_polar(dirs: [Vec3; 4], dist: [f64; 4]) -> Result<Self, VolumeError> {
        let mut vertices = [[0.0; 3]; 4];
        let mut defects = [0.0; 4];
        for k in 0..4 {
            let u = scale(dirs[k], 1.0 / norm(dirs[k]));
            if dist[k].is_infinite() {
                vertices[k] = u;
            } else {
                vertices[k] = scale(u, dist[k].tanh());
                let c = dist[k].cosh();
                defects[k] = 1.0 / (c * c);
            }
        }
        Self::with_defects(vertices, defects)
    }

    fn scale(&self) -> f64 {
        let mut s: f64 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                s = s.max(norm(sub(self.vertices[i], self.vertices[j])));
            }
        }
        s
    }

    pub fn euclidean_volume(&self) -> f64 {
        let [a, b, c, d] = self.vertices;
        dot(sub(b, a), cross(sub(c, a), sub(d, a))).abs() / 6.0
    }

    pub fn is_ideal(&self, k: usize) -> bool {
        self.defects[k] == 0.0
    }

    /// Applies a linear map (an isometry when orthogonal).
    pub fn transformed(&self, m: [[f64; 3]; 3]) -> Result<Self, VolumeError> {
        let apply = |v: Vec3| [dot(m[0], v), dot(m[1], v), dot(m[2], v)];
        let vertices = [apply(self.vertices[0]), apply(self.vertices[1]), apply(self.vertices[2]), apply(self.vertices[3])];
        Self::with_defects(vertices, self.defects)
    }

    /// Hyperbolic distance between vertices `i` and `j` (infinite if either
    /// is ideal).
    pub fn edge_length(&self, i: usize, j: usize) -> f64 {
        if self.is_ideal(i) || self.is_ideal(j) {
            return f64::INFINITY;
        }
        klein_distance_with(self.vertices[i], self.defects[i], self.vertices[j], self.defects[j])
    }

    /// Interior angle at vertex `a` of the face triangle `(a, b, c)`.
    pub fn face_angle(&self, a: usize, b: usize, c: usize) -> f64 {
        if self.is_ideal(a) {
            return 0.0;
        }
        if self.is_ideal(b) || self.is_ideal(c) {
            return hyperboloid_angle(self, a, b, c);
        }
        let (ab, ac, bc) = (self.edge_length(a, b), self.edge_length(a, c), self.edge_length(b, c));
        triangle_angle(bc, ab, ac)
    }

    /// All twelve face angles.
    pub fn face_angles(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(12);
        for skip in 0..4 {
            let f: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
            out.push(self.face_angle(f[0], f[1], f[2]));
            out.push(self.face_angle(f[1], f[0], f[2]));
            out.push(self.face_angle(f[2], f[0], f[1]));
        }
        out
    }
}

/// Hyperbolic distance between two points of the open ball.
pub fn klein_distance(x: Vec3, y: Vec3) -> f64 {
    klein_distance_with(x, 1.0 - dot(x, x), y, 1.0 - dot(y, y))
}

fn klein_distance_with(x: Vec3, dx: f64, y: Vec3, dy: f64) -> f64 {
    // sinh^2 d = (|x - y|^2 - |x × y|^2) / ((1 - |x|^2)(1 - |y|^2)), accurate for
    // short and long distances alike.
    let diff = sub(x, y);
    let num = (dot(diff, diff) - dot(cross(x, y), cross(x, y))).max(0.0);
    (num / (dx * dy)).sqrt().asinh()
}

/// Angle opposite side `a` in a hyperbolic triangle with sides `a, b, c`,
/// via `sin^2(A/2) = sinh(s-b) sinh(s-c) / (sinh b sinh c)`.
pub fn triangle_angle(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let v = ((s - b).sinh() * (s - c).sinh() / (b.sinh() * c.sinh())).clamp(0.0, 1.0);
    2.0 * v.sqrt().asin()
}

/// Angle at finite vertex `a` via the hyperboloid model; `b` or `c` may be
/// ideal.
fn hyperboloid_angle(t: &KleinTetrahedron, a: usize, b: usize, c: usize) -> f64 {
    let lift = |k: usize| -> [f64; 4] {
        let v = t.vertices[k];
        let s = if t.is_ideal(k) { 1.0 } else { 1.0 / t.defects[k].sqrt() };
        [s, s * v[0], s * v[1], s * v[2]]
    };
    let mink = |u: [f64; 4], v: [f64; 4]| -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
    let (pa, pb, pc) = (lift(a), lift(b), lift(c));
    let tangent = |q: [f64; 4]| {
        let k = mink(pa, q);
        [q[0] + k * pa[0], q[1] + k * pa[1], q[2] + k * pa[2], q[3] + k * pa[3]]
    };
    let (u, v) = (tangent(pb), tangent(pc));
    let cos = mink(u, v) / (mink(u, u) * mink(v, v)).sqrt();
    cos.clamp(-1.0, 1.0).acos()
}

/// A volume with its quadrature error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub error: f64,
}

const MAX_INTERVALS: usize = 400;

/// `F(R) / R^3`.
fn radial(r2: f64, defect: f64) -> f64 {
    if r2 < 0.25 {
        // sum_k (k+1) R^(2k) / (2k+3)
        let mut sum = 0.0;
        let mut p = 1.0;
        for k in 0..60 {
            let term = (k + 1) as f64 * p / (2 * k + 3) as f64;
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
            p *= r2;
        }
        return sum;
    }
    let r = r2.sqrt();
    // artanh R = ln(1 + R) - ln(1 - R^2) / 2
    let f = r / (2.0 * defect) - 0.5 * (r.ln_1p() - 0.5 * defect.ln());
    f / (r2 * r)
}

/// One Duffy-mapped triangle with a corner at `c`.
struct Piece {
    c: Vec3,
    defect_c: f64,
    e1: Vec3,
    e2: Vec3,
    /// `h_f * |e1 × e2|`.
    weight: f64,
}

impl Piece {
    fn integrand(&self, t: f64, s: f64) -> f64 {
        let w = add(scale(self.e1, 1.0 - s), scale(self.e2, s));
        let y = add(self.c, scale(w, t));
        let r2 = dot(y, y);
        let defect = self.defect_c - t * (2.0 * dot(self.c, w) + t * dot(w, w));
        if !(defect > 0.0) {
            return 0.0;
        }
        t * radial(r2, defect)
    }

    fn integrate(&self, tol: f64) -> (f64, f64, bool) {
        if self.weight == 0.0 {
            return (0.0, 0.0, true);
        }
        let local_tol = tol / self.weight.abs();
        let inner_ok = Cell::new(true);
        let inner_err = Cell::new(0.0f64);
        let outer = integrate(
            |t| {
                let q = integrate(|s| self.integrand(t, s), 0.0, 1.0, 1e-3 * local_tol, MAX_INTERVALS);
                if !q.converged {
                    inner_ok.set(false);
                }
                inner_err.set(inner_err.get().max(q.error));
                q.value
            },
            0.0,
            1.0,
            local_tol,
            MAX_INTERVALS,
        );
        let err = (outer.error + inner_err.get()) * self.weight.abs();
        (outer.value * self.weight, err, outer.converged && inner_ok.get())
    }
}

fn pieces(t: &KleinTetrahedron) -> Vec<Piece> {
    let v = t.vertices;
    let mut out = Vec::with_capacity(16);
    for skip in 0..4 {
        let f: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
        let (a, b, c) = (f[0], f[1], f[2]);
        let mut n = cross(sub(v[b], v[a]), sub(v[c], v[a]));
        if dot(n, sub(v[skip], v[a])) > 0.0 {
            n = scale(n, -1.0);
        }
        let n_hat = scale(n, 1.0 / norm(n));
        let h = dot(v[a], n_hat);
        let mid = |i: usize, j: usize| scale(add(v[i], v[j]), 0.5);
        let (mab, mbc, mca) = (mid(a, b), mid(b, c), mid(c, a));
        let mut push = |corner: Vec3, defect: f64, p: Vec3, q: Vec3| {
            let (e1, e2) = (sub(p, corner), sub(q, corner));
            out.push(Piece { c: corner, defect_c: defect, e1, e2, weight: h * norm(cross(e1, e2)) });
        };
        push(v[a], t.defects[a], mab, mca);
        push(v[b], t.defects[b], mbc, mab);
        push(v[c], t.defects[c], mca, mbc);
        push(mab, 1.0 - dot(mab, mab), mbc, mca);
    }
    out
}

/// Hyperbolic volume to absolute error `tol`.
pub fn klein_volume(t: &KleinTetrahedron, tol: f64) -> Result<VolumeEstimate, VolumeError> {
    if !(tol > 0.0) {
        return Err(VolumeError::BadInput(format!("tolerance must be positive, got {tol}")));
    }
    let ps = pieces(t);
    let share = tol / ps.len() as f64;
    let results = par::map(&ps, |p| p.integrate(share));
    let value: f64 = results.iter().map(|r| r.0).sum();
    let error: f64 = results.iter().map(|r| r.1).sum();
    if results.iter().any(|r| !r.2) || !value.is_finite() {
        return Err(VolumeError::NotConverged { achieved: error });
    }
    Ok(VolumeEstimate { value, error })
}

/// The four unit directions of a regular tetrahedron centred at the origin.
pub fn regular_directions() -> [Vec3; 4] {
    let s = 1.0 / 3f64.sqrt();
    [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]]
}

/// Distance `t` from the centre to the vertices of the regular tetrahedron
/// with edge length `side`: `sinh t = sqrt(3/2) sinh(side/2)`.
pub fn regular_radius(side: f64) -> f64 {
    (1.5f64.sqrt() * (0.5 * side).sinh()).asinh()
}

/// Regular tetrahedron with all edges of length `side`, centred at the origin.
pub fn regular_tet(side: f64) -> Result<KleinTetrahedron, VolumeError> {
    if !(side > 0.0) {
        return Err(VolumeError::BadInput(format!("side must be positive, got {side}")));
    }
    let t = regular_radius(side);
    KleinTetrahedron::from_polar(regular_directions(), [t; 4])
}

pub fn regular_ideal_tet() -> KleinTetrahedron {
    KleinTetrahedron::from_polar(regular_directions(), [f64::INFINITY; 4]).expect("nondegenerate")
}

/// Right triangle `O, q = (tanh a, 0, 0), r = (tanh a, y, 0)`: returns
/// `(sin θ, sinh d / sinh t)` with `θ` the angle at `O`, `d = |qr|`, `t = |Or|`.
pub fn law_of_sines_sides(a: f64, y: f64) -> (f64, f64) {
    let q = [a.tanh(), 0.0, 0.0];
    let r = [a.tanh(), y, 0.0];
    let theta = y.atan2(a.tanh());
    let d = klein_distance(q, r);
    let t = klein_distance([0.0; 3], r);
    (theta.sin(), d.sinh() / t.sinh())
}
