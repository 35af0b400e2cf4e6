//! Numerical studies of large tetrahedra: the volume deficit of regular
//! tetrahedra as the side grows, and the deficit against the largest face
//! angle for perturbed near-ideal tetrahedra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::klein::{klein_volume, law_of_sines_sides, regular_directions, regular_radius, KleinTetrahedron, Vec3};
use super::lobachevsky::v3;
use super::quadrature::integrate;
use super::VolumeError;
use crate::par;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub side: f64,
    /// Distance from the centre to each vertex.
    pub radius: f64,
    pub volume: f64,
    pub epsilon: f64,
    pub side_sq_epsilon: f64,
    /// `epsilon` of the next row over this one.
    pub ratio: Option<f64>,
    /// Integrated bound `int_t^inf 4 pi sinh d / sinh t dt`.
    pub tail_bound: f64,
    pub quad_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub rows: Vec<DecayRow>,
    /// Least-squares slope of `ln epsilon` against side.
    pub fitted_rate: f64,
}

impl DecayReport {
    pub fn to_table(&self) -> String {
        let mut out = String::from("i\tt\tvol\teps\ti^2*eps\tratio\ttail_bound\tquad_err\n");
        for r in &self.rows {
            let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.6}"));
            out.push_str(&format!(
                "{}\t{:.10}\t{:.12}\t{:.6e}\t{:.6e}\t{}\t{:.6e}\t{:.1e}\n",
                r.side, r.radius, r.volume, r.epsilon, r.side_sq_epsilon, ratio, r.tail_bound, r.quad_error
            ));
        }
        out.push_str(&format!("# fitted rate d(ln eps)/di = {:.6}\n", self.fitted_rate));
        out
    }
}

/// Distance from the centre to a face of the regular tetrahedron whose
/// vertices sit at distance `t`: the face plane is at Euclidean distance
/// `tanh(t) / 3` in the Klein model.
fn face_distance(t: f64) -> f64 {
    (t.tanh() / 3.0).atanh()
}

/// Upper bound for `v3 - vol` from `dvol/dt < 4 pi sinh d / sinh t`.
pub fn tail_bound(t: f64) -> f64 {
    let f = |tau: f64| 4.0 * std::f64::consts::PI * face_distance(tau).sinh() / tau.sinh();
    // Past the cut the integrand is below 4 pi sinh(artanh(1/3)) * 2 e^-tau * 1.01.
    let cut = t.max(40.0);
    let q = integrate(f, t, cut, 1e-14, 200);
    let far = 4.0 * std::f64::consts::PI * (1.0f64 / 3.0).atanh().sinh() * 2.0 * (-cut).exp() * 1.01;
    q.value + far
}

/// Volume deficit of the regular tetrahedron for each side in `sides`.
pub fn epsilon_decay_report(sides: &[f64], tol: f64) -> Result<DecayReport, VolumeError> {
    if sides.is_empty() {
        return Err(VolumeError::BadInput("no sides given".into()));
    }
    if sides.iter().any(|s| !(*s > 0.0)) || sides.windows(2).any(|w| w[1] <= w[0]) {
        return Err(VolumeError::BadInput("sides must be positive and strictly increasing".into()));
    }
    let vols = par::map(sides, |&s| {
        let t = super::klein::regular_tet(s)?;
        klein_volume(&t, tol)
    });
    let mut rows = Vec::with_capacity(sides.len());
    for (&side, v) in sides.iter().zip(vols) {
        let v = v?;
        let radius = regular_radius(side);
        let epsilon = v3() - v.value;
        rows.push(DecayRow {
            side,
            radius,
            volume: v.value,
            epsilon,
            side_sq_epsilon: side * side * epsilon,
            ratio: None,
            tail_bound: tail_bound(radius),
            quad_error: v.error,
        });
    }
    for k in 0..rows.len().saturating_sub(1) {
        rows[k].ratio = Some(rows[k + 1].epsilon / rows[k].epsilon);
    }
    let fitted_rate = if rows.len() >= 2 && rows.iter().all(|r| r.epsilon > 0.0) {
        let n = rows.len() as f64;
        let mx = rows.iter().map(|r| r.side).sum::<f64>() / n;
        let my = rows.iter().map(|r| r.epsilon.ln()).sum::<f64>() / n;
        let sxy: f64 = rows.iter().map(|r| (r.side - mx) * (r.epsilon.ln() - my)).sum();
        let sxx: f64 = rows.iter().map(|r| (r.side - mx).powi(2)).sum();
        sxy / sxx
    } else {
        f64::NAN
    };
    Ok(DecayReport { rows, fitted_rate })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleSample {
    pub volume: f64,
    pub deficit: f64,
    /// Largest face angle.
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceAngleReport {
    pub seed: u64,
    pub vol_threshold: f64,
    /// Tetrahedra drawn, including those below the threshold.
    pub drawn: usize,
    pub samples: Vec<AngleSample>,
    pub fitted_c: f64,
    /// Indices into `samples` with `deficit <= fitted_c * beta^2`.
    pub violations: Vec<usize>,
}

impl FaceAngleReport {
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "# seed {} threshold {:.8} drawn {} kept {}\n# fitted C = {:.8e}, violations {}\nvol\tdeficit\tbeta\tdeficit/beta^2\n",
            self.seed,
            self.vol_threshold,
            self.drawn,
            self.samples.len(),
            self.fitted_c,
            self.violations.len()
        );
        for s in &self.samples {
            out.push_str(&format!("{:.12}\t{:.6e}\t{:.6e}\t{:.6e}\n", s.volume, s.deficit, s.beta, s.deficit / (s.beta * s.beta)));
        }
        out
    }
}

fn perturbed(rng: &mut ChaCha8Rng) -> ([Vec3; 4], [f64; 4]) {
    let side = rng.random_range(7.0..13.0);
    let t0 = regular_radius(side);
    let mut dirs = regular_directions();
    let mut dist = [0.0; 4];
    for k in 0..4 {
        for c in dirs[k].iter_mut() {
            *c += rng.random_range(-0.08..0.08);
        }
        dist[k] = t0 + rng.random_range(-1.5..1.5);
    }
    (dirs, dist)
}

/// Samples perturbed large regular tetrahedra until `n_samples` have volume at
/// least `vol_threshold`, then fits the largest `C` with
/// `v3 - vol > C beta^2` on all of them.
pub fn face_angle_check(n_samples: usize, vol_threshold: f64, seed: u64, tol: f64) -> Result<FaceAngleReport, VolumeError> {
    if n_samples == 0 {
        return Err(VolumeError::BadInput("need at least one sample".into()));
    }
    if !(vol_threshold < v3()) {
        return Err(VolumeError::BadInput(format!("threshold {vol_threshold} is not below v3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    let mut drawn = 0;
    let max_draws = 50 * n_samples;
    while samples.len() < n_samples && drawn < max_draws {
        let batch: Vec<_> = (0..2 * (n_samples - samples.len())).map(|_| perturbed(&mut rng)).collect();
        let results = par::map(&batch, |(dirs, dist)| -> Result<Option<AngleSample>, VolumeError> {
            let t = KleinTetrahedron::from_polar(*dirs, *dist)?;
            let v = klein_volume(&t, tol)?;
            if v.value < vol_threshold {
                return Ok(None);
            }
            let beta = t.face_angles().into_iter().fold(0.0, f64::max);
            Ok(Some(AngleSample { volume: v.value, deficit: v3() - v.value, beta }))
        });
        for r in results {
            drawn += 1;
            if let Some(s) = r? {
                if samples.len() < n_samples {
                    samples.push(s);
                }
            }
        }
    }
    if samples.is_empty() {
        return Err(VolumeError::NoSamples);
    }
    let min_ratio = samples.iter().map(|s| s.deficit / (s.beta * s.beta)).fold(f64::INFINITY, f64::min);
    let fitted_c = min_ratio * (1.0 - 1e-6);
    let violations = samples
        .iter()
        .enumerate()
        .filter(|(_, s)| !(s.deficit > fitted_c * s.beta * s.beta))
        .map(|(k, _)| k)
        .collect();
    Ok(FaceAngleReport { seed, vol_threshold, drawn, samples, fitted_c, violations })
}

/// Largest `|sin θ - sinh d / sinh t|` over `n` random right triangles.
pub fn law_of_sines_check(n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let a: f64 = rng.random_range(0.05..4.0);
            let y = rng.random_range(0.01..0.99) * (1.0 - a.tanh().powi(2)).sqrt();
            let (l, r) = law_of_sines_sides(a, y);
            (l - r).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bound_dominates() {
        let rep = epsilon_decay_report(&[3.0, 5.0], 1e-10).unwrap();
        for r in &rep.rows {
            assert!(r.epsilon > 0.0);
            assert!(r.epsilon < r.tail_bound, "{r:?}");
        }
        assert!(rep.fitted_rate < 0.0);
    }

    #[test]
    fn rejects_unsorted() {
        assert!(epsilon_decay_report(&[4.0, 4.0], 1e-8).is_err());
        assert!(epsilon_decay_report(&[], 1e-8).is_err());
    }

    #[test]
    fn small_face_angle_run() {
        let rep = face_angle_check(12, v3() - 0.05, 7, 1e-10).unwrap();
        assert_eq!(rep.samples.len(), 12);
        assert!(rep.fitted_c > 0.0);
        assert!(rep.violations.is_empty());
        let again = face_angle_check(12, v3() - 0.05, 7, 1e-10).unwrap();
        assert_eq!(rep, again);
    }

    #[test]
    fn sines() {
        assert!(law_of_sines_check(100, 1) < 1e-12);
    }
}
