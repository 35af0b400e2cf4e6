mod common;

use std::f64::consts::PI;

use common::config;
use num_complex::Complex64;
use proptest::prelude::*;
use slopesmith::laurent::Var;
use slopesmith::roots::poly_roots;
use slopesmith::volume::{
    integrate_eta, klein_volume, lobachevsky, loop_path, regular_tet, track_curve, v3, KleinTetrahedron,
    TrackOptions,
};
use slopesmith::{parse_poly, Vars};

const FIG8: &str = "m^4*l^2 + m^4 + 2*m^4*l - m^8*l - l + m^6*l + m^2*l";

/// Points of the first coordinate where the fibre of the figure-8 curve
/// degenerates: zeros of the discriminant and of the leading coefficient.
fn special_points() -> Vec<Complex64> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for r in [phi, 1.0 / phi] {
        out.push(Complex64::new(r, 0.0));
        out.push(Complex64::new(-r, 0.0));
    }
    out.push(Complex64::new(0.0, 1.0));
    out.push(Complex64::new(0.0, -1.0));
    // Sixth roots of unity, including the nodes at a = 1 and a = -1.
    for k in 0..6 {
        out.push(Complex64::from_polar(1.0, PI * k as f64 / 3.0));
    }
    out
}

/// Random rotation from a unit quaternion.
fn rotation(q: [f64; 4]) -> [[f64; 3]; 3] {
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|c| c / n);
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

fn ball_point() -> impl Strategy<Value = [f64; 3]> {
    (0.0f64..0.95, -1.0f64..1.0, 0.0f64..(2.0 * PI)).prop_map(|(r, z, phi)| {
        let s = (1.0 - z * z).sqrt();
        [r * s * phi.cos(), r * s * phi.sin(), r * z]
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn lobachevsky_odd_and_periodic(theta in -10.0f64..10.0) {
        prop_assert!((lobachevsky(-theta) + lobachevsky(theta)).abs() < 1e-12);
        prop_assert!((lobachevsky(theta + PI) - lobachevsky(theta)).abs() < 1e-12);
    }

    #[test]
    fn lobachevsky_derivative(theta in 0.05f64..(PI - 0.05)) {
        let h = 1e-5;
        let fd = (lobachevsky(theta + h) - lobachevsky(theta - h)) / (2.0 * h);
        let exact = -(2.0 * theta.sin()).abs().ln();
        prop_assume!(exact.abs() > 1e-3);
        prop_assert!(((fd - exact) / exact).abs() <= 1e-6, "{} vs {}", fd, exact);
    }

    #[test]
    fn volume_is_rotation_invariant(
        v in prop::array::uniform4(ball_point()),
        q in prop::array::uniform4(-1.0f64..1.0),
    ) {
        let Ok(t) = KleinTetrahedron::new(v) else { return Ok(()) };
        prop_assume!(t.euclidean_volume() > 1e-4);
        prop_assume!(q.iter().map(|x| x * x).sum::<f64>() > 1e-2);
        let tol = 1e-9;
        let a = klein_volume(&t, tol).unwrap().value;
        let b = klein_volume(&t.transformed(rotation(q)).unwrap(), tol).unwrap().value;
        prop_assert!((a - b).abs() <= 2.0 * tol, "{} vs {}", a, b);
        prop_assert!(a > 0.0 && a < v3());
    }

    #[test]
    fn regular_deficit_is_positive(side in 0.2f64..16.0) {
        let v = klein_volume(&regular_tet(side).unwrap(), 1e-12).unwrap();
        prop_assert!(v3() - v.value > 0.0);
    }

    #[test]
    fn contractible_loops_have_zero_eta(
        re in 0.3f64..2.5,
        im in 0.05f64..1.5,
        radius in 0.02f64..0.15,
        branch in 0usize..2,
    ) {
        let centre = Complex64::new(re, im);
        prop_assume!(special_points().iter().all(|s| (s - centre).norm() > radius + 0.05));
        let p = parse_poly(FIG8, &Vars::ml()).unwrap();
        let start = centre + radius;
        let mut roots = poly_roots(&p.specialize_complex(Var::Second, start)).unwrap();
        roots.sort_by(|x, y| x.re.total_cmp(&y.re));
        let path = track_curve(&p, (start, roots[branch]), &loop_path(centre, radius, 48), &TrackOptions { step: 2e-3, ..TrackOptions::default() }).unwrap();
        prop_assert!((path.end().1 - roots[branch]).norm() < 1e-8);
        let eta = integrate_eta(&path).unwrap();
        prop_assert!(eta.abs() <= 1e-6, "eta = {}", eta);
    }
}
