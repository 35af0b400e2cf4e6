//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slopesmith::laurent::rational::{height, int, rat};
use slopesmith::laurent::{irreducibility_check, parse_poly_file};
use slopesmith::newton::{axis_diameter, boundary_slopes, compute_polygon, EdgeSlope};
use slopesmith::norm::{
    ball_polygon, cs_bound, eval_norm, fundamental_polygon_check, seminorm_from_polygon, slope_set_diameter, Extended,
    PeripheralClass,
};
use slopesmith::obstruction::{build_new_p, build_p, cyclic_verdict, detect_symmetries, Symmetry, Verdict};
use slopesmith::roots::poly_roots;
use slopesmith::volume::{
    epsilon_decay_report, face_angle_check, ideal_tet_volume, integrate_eta, klein_volume, lobachevsky, loop_path,
    regular_ideal_tet, track_curve, v3, TrackOptions,
};
use slopesmith::{parse_poly, LaurentPoly2, Var, Vars};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:.0?}"))?;
    Ok(took)
}

fn factorization_identity() -> Outcome {
    let start = Instant::now();
    let v = Vars::mb();
    for c in [1i64, -1] {
        let lhs = build_p(&int(c)).map_err(|e| e.to_string())?;
        let rhs = parse_poly(&format!("(b*m + ({c})) * (m - ({c})*b)"), &v).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("C = {c}: {lhs} != {rhs}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut seen = BTreeSet::new();
    while seen.len() < 50 {
        let c = rat(rng.random_range(-10..=10), rng.random_range(1..=10));
        if c == int(0) || c == int(1) || c == int(-1) || height(&c) > 10.into() {
            continue;
        }
        seen.insert(c);
    }
    for c in &seen {
        let p = build_p(c).map_err(|e| e.to_string())?;
        let check = irreducibility_check(&p).map_err(|e| e.to_string())?;
        ensure(check.is_irreducible(), || format!("C = {c}: {check:?}"))?;
        ensure(!common::brute_force_reducible(&p), || format!("C = {c}: factor-support search found a split"))?;
    }
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("C = +-1 factor exactly; {} random C irreducible, oracle agrees ({took:.2?})", seen.len()))
}

fn coprime_pairs(max_q: i64) -> Vec<(i64, i64)> {
    (1..=max_q).flat_map(|q| (0..=q).filter(move |p| p.gcd(&q) == 1).map(move |p| (p, q))).collect()
}

fn newton_parallelograms() -> Outcome {
    let start = Instant::now();
    let pairs = coprime_pairs(7);
    for &(p, q) in &pairs {
        let poly = build_new_p(p, q, &int(1)).map_err(|e| e.to_string())?;
        let n = compute_polygon(&poly).map_err(|e| e.to_string())?;
        let ctx = || format!("(p, q) = ({p}, {q})");
        ensure(n.vertices.len() == 4 && n.edges.len() == 4, || format!("{}: {} vertices", ctx(), n.vertices.len()))?;
        for k in 0..2 {
            let (e, f) = (&n.edges[k], &n.edges[k + 2]);
            ensure(e.slope() == f.slope() && e.length == f.length, || format!("{}: opposite edges differ", ctx()))?;
        }
        let want: BTreeSet<EdgeSlope> = [EdgeSlope::new(-p, q), EdgeSlope::new(2 * q - p, q)].into();
        let got = boundary_slopes(&n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{}: slopes {got:?}", ctx()))?;
        for v in [Var::First, Var::Second] {
            let d = axis_diameter(&n, v);
            ensure(d == 2 * q as u64, || format!("{}: {v:?} diameter {d}", ctx()))?;
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{} coprime pairs with q <= 7 ({took:.2?})", pairs.len()))
}

fn symmetry_table() -> Outcome {
    let pairs = coprime_pairs(9);
    for &(p, q) in &pairs {
        for c in [int(1), rat(3, 2)] {
            let s = detect_symmetries(&build_new_p(p, q, &c).map_err(|e| e.to_string())?);
            let ctx = || format!("(p, q) = ({p}, {q}), C = {c}: {s:?}");
            ensure(s.contains(&Symmetry::NegateSecond) == (q % 2 == 0), ctx)?;
            ensure(s.contains(&Symmetry::NegateBoth) == (p % 2 == 1 && q % 2 == 1), ctx)?;
        }
    }
    Ok(format!("{} coprime pairs with q <= 9", pairs.len()))
}

fn sister_ball() -> Outcome {
    let poly = build_new_p(1, 2, &int(1)).map_err(|e| e.to_string())?;
    let n = compute_polygon(&poly).map_err(|e| e.to_string())?;
    let s = seminorm_from_polygon(&n).map_err(|e| e.to_string())?;
    let ball = ball_polygon(&s).map_err(|e| e.to_string())?;
    ensure(ball.radius == int(4), || format!("r = {}", ball.radius))?;
    let got: BTreeSet<_> = ball.vertices.iter().cloned().collect();
    let want: BTreeSet<_> = [(rat(3, 2), int(1)), (rat(-3, 2), int(-1)), (rat(-1, 2), int(1)), (rat(1, 2), int(-1))].into();
    ensure(got == want, || format!("vertices {:?}", ball.vertices))?;
    ensure(ball.area() == int(4), || format!("area {}", ball.area()))?;
    let mu = PeripheralClass::new(1, 0);
    ensure(eval_norm(&s, mu) == ball.radius, || "mu is not on the ball boundary".into())?;
    let fp = fundamental_polygon_check(&ball, mu).map_err(|e| e.to_string())?;
    ensure(fp.passed(), || format!("{:?}", fp.failures))?;
    let (a, b) = fp.mu_edge.clone().ok_or("mu is not an edge midpoint")?;
    ensure((&a.0 + &b.0) / int(2) == int(1) && (&a.1 + &b.1) / int(2) == int(0), || "midpoint mismatch".into())?;
    ensure(fp.pq == Some((1, 2)), || format!("(p, q) = {:?}", fp.pq))?;
    let slopes = boundary_slopes(&n).map_err(|e| e.to_string())?;
    let d = slope_set_diameter(&slopes).map_err(|e| e.to_string())?;
    ensure(d == Extended::Finite(int(2)), || format!("slope diameter {d}"))?;
    Ok("r = 4, vertices +-(3/2,1), +-(-1/2,1), area 4, mu at a midpoint, (p,q) = (1,2), diameter 2".into())
}

fn cs_minimum() -> Outcome {
    let mut min = None;
    let mut argmins = BTreeSet::new();
    let mut count = 0;
    for d in 2..=240i64 {
        for k in 1..d {
            let t = rat(k, d);
            let b = cs_bound(&t).map_err(|e| e.to_string())?;
            count += 1;
            match &min {
                Some(m) if b > *m => {}
                Some(m) if b == *m => {
                    argmins.insert(t);
                }
                _ => {
                    min = Some(b);
                    argmins = [t].into();
                }
            }
        }
    }
    ensure(min == Some(int(2)), || format!("minimum {min:?}"))?;
    ensure(argmins == [rat(1, 2)].into(), || format!("attained at {argmins:?}"))?;
    Ok(format!("min 2 over {count} grid points, attained only at t = 1/2"))
}

fn cyclic_chain() -> Outcome {
    let a = cyclic_verdict(&int(2), 24).map_err(|e| e.to_string())?;
    let b = cyclic_verdict(&int(2), 24).map_err(|e| e.to_string())?;
    ensure(a == b && a.to_text() == b.to_text(), || "nondeterministic report".into())?;
    ensure(a.verdict == Verdict::ContradictionEstablished, || format!("verdict {}", a.verdict))?;
    let get = |anchor: &str| a.evidence_for(anchor).map(|e| e.value.clone()).ok_or(format!("missing {anchor}"));
    let tangent = get("cyclic/tangent-at-origin")?;
    ensure(tangent.starts_with("2*m - b"), || format!("tangent {tangent}"))?;
    let orders = get("cyclic/branch-orders")?;
    ensure(orders.contains("ord(tr_mu) = 1, ord(tr_beta) = 1"), || format!("orders {orders}"))?;
    let comps = get("cyclic/boundary-components")?;
    ensure(comps.contains("has 2 boundary components"), || format!("components {comps}"))?;
    let unity = get("cyclic/unity-order")?;
    ensure(unity.contains("no root of unity"), || format!("unity {unity}"))?;
    let end = get("cyclic/conclusion")?;
    ensure(end.contains("C is not a root of unity") && end.contains("at least three"), || format!("conclusion {end}"))?;
    let order: Vec<_> = a.evidence.iter().map(|e| e.anchor.as_str()).collect();
    let pos = |k: &str| order.iter().position(|x| *x == k).unwrap_or(usize::MAX);
    ensure(
        pos("cyclic/tangent-at-origin") < pos("cyclic/branch-orders")
            && pos("cyclic/branch-orders") < pos("cyclic/boundary-components")
            && pos("cyclic/boundary-components") < pos("cyclic/unity-order")
            && pos("cyclic/unity-order") < pos("cyclic/conclusion"),
        || format!("evidence out of order: {order:?}"),
    )?;
    Ok(format!("contradiction-established via {} evidence steps", a.evidence.len()))
}

fn volume_duality() -> Outcome {
    let start = Instant::now();
    let klein = klein_volume(&regular_ideal_tet(), 1e-10).map_err(|e| e.to_string())?;
    let series = 3.0 * lobachevsky(PI / 3.0);
    let diff = (series - klein.value).abs();
    ensure(diff <= 1e-6, || format!("|3L(pi/3) - klein| = {diff:.3e}"))?;
    let dihedral = ideal_tet_volume(PI / 3.0, PI / 3.0, PI / 3.0).map_err(|e| e.to_string())?;
    ensure((dihedral - v3()).abs() < 1e-12, || format!("ideal_tet_volume {dihedral}"))?;
    for (name, x) in [("Lobachevsky", 2.0 * series), ("Klein quadrature", 2.0 * klein.value)] {
        ensure((x - 2.0298832).abs() < 5e-8, || format!("{name}: 2 v3 = {x:.10}"))?;
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("|3L(pi/3) - klein| = {diff:.1e}; 2 v3 = {:.7} both ways ({took:.2?})", 2.0 * klein.value))
}

fn decay() -> Outcome {
    let rep = epsilon_decay_report(&[4.0, 6.0, 8.0, 10.0], 1e-10).map_err(|e| e.to_string())?;
    for r in &rep.rows {
        ensure(r.quad_error <= 1e-8, || format!("i = {}: quadrature error {:.2e}", r.side, r.quad_error))?;
    }
    let mut ratios = Vec::new();
    for w in rep.rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let ratio = b.epsilon / a.epsilon;
        ensure(b.epsilon < a.epsilon, || format!("eps({}) >= eps({})", b.side, a.side))?;
        ensure(ratio < 0.2, || format!("eps({}) / eps({}) = {ratio:.4}", b.side, a.side))?;
        let (sa, sb) = (a.side * a.side * a.epsilon, b.side * b.side * b.epsilon);
        ensure(sb < sa, || format!("i^2 eps not decreasing at i = {}", b.side))?;
        ratios.push(format!("{ratio:.3}"));
    }
    Ok(format!("ratios [{}], fitted rate {:.3}", ratios.join(", "), rep.fitted_rate))
}

fn face_angles() -> Outcome {
    let threshold = v3() - 0.05;
    let rep = face_angle_check(500, threshold, 1, 1e-10).map_err(|e| e.to_string())?;
    ensure(rep.samples.len() >= 500, || format!("only {} samples", rep.samples.len()))?;
    ensure(rep.fitted_c > 0.0, || format!("fitted C = {}", rep.fitted_c))?;
    ensure(rep.samples.iter().all(|s| s.volume >= threshold), || "sample below threshold".into())?;
    let bad = rep.samples.iter().filter(|s| !(v3() - s.volume > rep.fitted_c * s.beta * s.beta)).count();
    ensure(bad == 0 && rep.violations.is_empty(), || format!("{bad} violations"))?;
    Ok(format!("C = {:.4} over {} samples, 0 violations", rep.fitted_c, rep.samples.len()))
}

fn eta_exactness() -> Outcome {
    let start = Instant::now();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/corpus/fig8-knot.poly"))
        .map_err(|e| e.to_string())?;
    let curve = parse_poly_file(&text).map_err(|e| e.to_string())?.poly;
    let m0 = Complex64::new(1.3, 0.2);
    let mut roots = poly_roots(&curve.specialize_complex(Var::Second, m0)).map_err(|e| e.to_string())?;
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let b0 = roots[0];
    let opts = TrackOptions::default();
    let track = |wp: &[Complex64]| track_curve(&curve, (m0, b0), wp, &opts).map_err(|e| e.to_string());
    let eta = |p| integrate_eta(p).map_err(|e| e.to_string());

    let m1 = m0 + Complex64::new(0.3, 0.3);
    let p1 = track(&[m0, m1])?;
    let p2 = track(&[m0, m0 + Complex64::new(0.15, 0.6), m1])?;
    let gap = (p1.end().1 - p2.end().1).norm();
    ensure(gap < 1e-8, || format!("homotopic paths end apart by {gap:.2e}"))?;
    let homotopy = (eta(&p1)? - eta(&p2)?).abs();
    ensure(homotopy <= 1e-6, || format!("homotopic integrals differ by {homotopy:.3e}"))?;

    let lp = track(&loop_path(m0 - 0.1, 0.1, 64))?;
    ensure((lp.end().1 - b0).norm() < 1e-8, || "loop does not close".into())?;
    let around = eta(&lp)?.abs();
    ensure(around <= 1e-6, || format!("loop integral {around:.3e}"))?;
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("homotopic paths differ by {homotopy:.1e}, loop integral {around:.1e} ({took:.2?})"))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config { cases: common::CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))?;
    Ok(common::CASES)
}

fn property_suites() -> Outcome {
    use common::{laurent_poly, nonzero_poly, polygonal_poly};
    let mut counts = Vec::new();
    let one = LaurentPoly2::one(Vars::mb());
    counts.push(run_property("ring axioms", (laurent_poly(), laurent_poly(), laurent_poly()), |(p, q, r)| {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p + &(-&p)).is_zero());
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &one, p.clone());
        Ok(())
    })?);
    counts.push(run_property("Minkowski additivity", (nonzero_poly(), nonzero_poly()), |(p, q)| {
        let npq = compute_polygon(&(&p * &q)).unwrap();
        prop_assert_eq!(npq, compute_polygon(&p).unwrap().minkowski_sum(&compute_polygon(&q).unwrap()));
        Ok(())
    })?);
    let class = || (-30i64..=30, -30i64..=30).prop_map(|(a, b)| PeripheralClass::new(a, b));
    counts.push(run_property("norm axioms", (polygonal_poly(), class(), class(), -7i64..=7), |(p, g, d, k)| {
        let s = seminorm_from_polygon(&compute_polygon(&p).unwrap()).unwrap();
        let ng = eval_norm(&s, g);
        prop_assert_eq!(eval_norm(&s, PeripheralClass::new(k * g.a, k * g.b)), &ng * int(k.abs()));
        prop_assert!(eval_norm(&s, PeripheralClass::new(g.a + d.a, g.b + d.b)) <= &ng + eval_norm(&s, d));
        prop_assert_eq!(eval_norm(&s, PeripheralClass::new(-g.a, -g.b)), ng);
        Ok(())
    })?);
    counts.push(run_property("parse-print round trip", laurent_poly(), |p| {
        let text = p.to_string();
        let back = parse_poly(&text, &Vars::mb()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
        Ok(())
    })?);
    Ok(format!(
        "ring axioms, Minkowski additivity, norm axioms, parse-print: {} cases each, 0 failures",
        counts.iter().min().copied().unwrap_or(0)
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("factorization identity and irreducibility", factorization_identity),
        ("Newton parallelograms for q <= 7", newton_parallelograms),
        ("symmetry parity table for q <= 9", symmetry_table),
        ("figure-8 sister norm ball", sister_ball),
        ("cs_bound minimum", cs_minimum),
        ("cyclic pipeline for C = 2", cyclic_chain),
        ("ideal tetrahedron volume duality", volume_duality),
        ("regular tetrahedron deficit decay", decay),
        ("face-angle bound", face_angles),
        ("eta exactness on the figure-8 curve", eta_exactness),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
