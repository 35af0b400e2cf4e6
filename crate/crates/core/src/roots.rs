//! Simultaneous root finding for univariate complex polynomials
//! (Aberth-Ehrlich iteration with a Newton polish).

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial is constant")]
    Constant,
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("root iteration did not converge (max correction {0:e})")]
    NotConverged(f64),
}

const MAX_ITER: usize = 500;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    // Value and derivative, coefficients low degree first.
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots (with multiplicity) of `sum c[k] z^k`. Trailing zero
/// coefficients of the top degree are dropped first.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(RootError::NonFinite);
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| a.norm() <= 1e-300 + 1e-15 * scale) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(RootError::Constant);
    }
    // Roots at zero.
    let zeros = c.iter().take_while(|a| a.norm() == 0.0).count();
    let c = c.split_off(zeros);
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    if n == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }
    // Start on a circle of the geometric-mean root modulus, with an offset
    // angle to avoid symmetric stalls.
    let radius = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();
    let mut worst = f64::INFINITY;
    for _ in 0..MAX_ITER {
        worst = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 =
                (0..n).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                worst = worst.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    if !(worst < 1e-9) {
        return Err(RootError::NotConverged(worst));
    }
    for r in z.iter_mut() {
        *r = polish(&monic, *r);
    }
    roots.extend(z);
    Ok(roots)
}

/// A couple of Newton steps, kept only if they lower the residual.
pub fn polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (p, dp) = horner(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if horner(c, next).0.norm() < p.norm() {
            z = next;
        } else {
            break;
        }
    }
    z
}
