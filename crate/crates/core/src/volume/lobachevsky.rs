//! The Lobachevsky function and ideal tetrahedron volumes.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::VolumeError;

const TERMS: usize = 40;

/// `zeta(2n) / (n (2n + 1) (2 pi)^(2n))` for `n = 1..=TERMS`.
fn series_coeffs() -> &'static [f64; TERMS] {
    static COEFFS: OnceLock<[f64; TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [0.0; TERMS];
        let two_pi_sq = (2.0 * PI) * (2.0 * PI);
        let mut scale = 1.0;
        for (k, c) in out.iter_mut().enumerate() {
            let n = (k + 1) as i32;
            scale /= two_pi_sq;
            let zeta = match n {
                1 => PI.powi(2) / 6.0,
                2 => PI.powi(4) / 90.0,
                3 => PI.powi(6) / 945.0,
                4 => PI.powi(8) / 9450.0,
                // Direct sum; the tail beyond 2000 is below 2000^-9.
                _ => (1..=2000).rev().map(|j| (j as f64).powi(-2 * n)).sum(),
            };
            *c = zeta / (n as f64 * (2 * n + 1) as f64) * scale;
        }
        out
    })
}

/// Clausen function `Cl2(x) = -int_0^x ln|2 sin(t/2)| dt` for `x` in `[-pi, pi]`.
fn clausen_reduced(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut power = x;
    let mut sum = 0.0;
    for c in series_coeffs() {
        power *= x2;
        let term = c * power;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    x - x * x.abs().ln() + sum
}

/// `Λ(θ) = -int_0^θ ln|2 sin t| dt`; odd and π-periodic.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    // Reduce 2θ to (-π, π].
    let mut x = (2.0 * theta).rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    0.5 * clausen_reduced(x)
}

/// Volume of the regular ideal tetrahedron, `3 Λ(π/3)`.
pub fn v3() -> f64 {
    3.0 * lobachevsky(PI / 3.0)
}

/// Volume of the ideal tetrahedron with dihedral angles `α, β, γ`.
pub fn ideal_tet_volume(alpha: f64, beta: f64, gamma: f64) -> Result<f64, VolumeError> {
    if !(alpha > 0.0 && beta > 0.0 && gamma > 0.0) {
        return Err(VolumeError::BadAngles(format!("angles must be positive: {alpha}, {beta}, {gamma}")));
    }
    let sum = alpha + beta + gamma;
    if (sum - PI).abs() > 1e-12 {
        return Err(VolumeError::BadAngles(format!("angle sum {sum} differs from pi by {:e}", sum - PI)));
    }
    Ok(lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct Fourier sum with an Euler-Maclaurin style tail bound.
    fn fourier(theta: f64, n: usize) -> f64 {
        0.5 * (1..=n).map(|k| (2.0 * k as f64 * theta).sin() / (k * k) as f64).sum::<f64>()
    }

    #[test]
    fn special_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(PI).abs() < 1e-15);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-15);
        assert!((v3() - 1.014_941_606_409_653_6).abs() < 1e-14);
        // Λ(π/4) = G/2
        assert!((2.0 * lobachevsky(PI / 4.0) - 0.915_965_594_177_219).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_fourier_series() {
        for k in 1..20 {
            let th = 0.157 * k as f64;
            // The truncated sine series has error at most 1/(2N).
            assert!((lobachevsky(th) - fourier(th, 200_000)).abs() < 1e-5);
        }
    }

    #[test]
    fn ideal_volumes() {
        let v = ideal_tet_volume(PI / 3.0, PI / 3.0, PI / 3.0).unwrap();
        assert!((v - 1.014_941_606_4).abs() < 1e-9);
        let w = ideal_tet_volume(PI / 2.0, PI / 4.0, PI / 4.0).unwrap();
        assert!((w - 0.915_965_594_2).abs() < 1e-9);
        let flat = ideal_tet_volume(PI - 2e-9, 1e-9, 1e-9).unwrap();
        assert!(flat.abs() < 1e-7);
        assert!(ideal_tet_volume(1.0, 1.0, 1.0).is_err());
        assert!(ideal_tet_volume(PI, 0.0, 0.0).is_err());
    }
}
