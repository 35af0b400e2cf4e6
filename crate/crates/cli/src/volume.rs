use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::Serialize;
use slopesmith::laurent::Var;
use slopesmith::roots::poly_roots;
use slopesmith::volume::{
    epsilon_decay_report, face_angle_check, integrate_eta, klein_volume, lobachevsky, loop_path, regular_ideal_tet,
    regular_tet, track_curve, v3, CurvePath, KleinTetrahedron, TrackOptions,
};

use crate::corpus;
use crate::report::Report;
use crate::Globals;

const DEFAULT_QUAD_TOL: f64 = 1e-10;
const DEFAULT_ETA_TOL: f64 = 1e-6;

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopKind {
    /// A small circle in the first coordinate, starting and ending at the base point.
    Small,
    /// Two different paths between the same endpoints.
    Homotopy,
}

#[derive(clap::Subcommand, Debug)]
pub enum Args {
    /// Lobachevsky function values.
    Lobachevsky {
        /// Angles in radians; defaults to pi/6, pi/4, pi/3, pi/2.
        #[arg(long, allow_hyphen_values = true)]
        theta: Vec<f64>,
    },
    /// Volume of one tetrahedron in the Klein model.
    Tet {
        /// The regular ideal tetrahedron, cross-checked against 3 Λ(π/3).
        #[arg(long, conflicts_with_all = ["side", "vertices"])]
        ideal_regular: bool,
        /// Regular tetrahedron with this edge length.
        #[arg(long, conflicts_with = "vertices")]
        side: Option<f64>,
        /// Four points as `x,y,z;x,y,z;x,y,z;x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        vertices: Option<String>,
    },
    /// Volume deficit of regular tetrahedra as the side grows.
    Decay {
        #[arg(long, default_value_t = 4.0)]
        from: f64,
        #[arg(long, default_value_t = 10.0)]
        to: f64,
        #[arg(long, default_value_t = 2.0)]
        step: f64,
    },
    /// Fit of v3 - vol > C beta^2 over sampled near-ideal tetrahedra.
    Angles {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Volume threshold; defaults to v3 - 0.05.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Integral of eta along tracked paths on a curve.
    Eta {
        /// Polynomial file, or the name of a corpus entry.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long = "loop", value_enum, default_value_t = LoopKind::Small)]
        kind: LoopKind,
        /// Base value of the first coordinate, as `re,im`.
        #[arg(long, default_value = "1.3,0.2", allow_hyphen_values = true)]
        at: String,
        /// Loop radius (small) or path scale (homotopy); defaults to 0.1 and 0.3.
        #[arg(long)]
        radius: Option<f64>,
        /// Which root over the base point to start on, in (re, im) order.
        #[arg(long, default_value_t = 0)]
        branch: usize,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
}

pub fn run(args: &Args, g: &Globals) -> Result<Report> {
    match args {
        Args::Lobachevsky { theta } => run_lobachevsky(theta),
        Args::Tet { ideal_regular, side, vertices } => run_tet(*ideal_regular, *side, vertices.as_deref(), g),
        Args::Decay { from, to, step } => run_decay(*from, *to, *step, g),
        Args::Angles { samples, threshold } => run_angles(*samples, *threshold, g),
        Args::Eta { poly, vars, kind, at, radius, branch, step } => {
            run_eta(poly, vars.as_deref(), *kind, at, *radius, *branch, *step, g)
        }
    }
}

fn run_lobachevsky(theta: &[f64]) -> Result<Report> {
    let thetas = if theta.is_empty() { vec![PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0] } else { theta.to_vec() };
    #[derive(Serialize)]
    struct Out {
        values: Vec<(f64, f64)>,
        v3: f64,
    }
    let out = Out { values: thetas.iter().map(|&t| (t, lobachevsky(t))).collect(), v3: v3() };
    let mut t = String::from("theta\tlobachevsky\n");
    for (th, l) in &out.values {
        writeln!(t, "{th:.15}\t{l:.15}")?;
    }
    writeln!(t, "v3 = 3 L(pi/3) = {:.15}", out.v3)?;
    Report::new("volume lobachevsky", t, out, 0)
}

fn parse_vertices(text: &str) -> Result<[[f64; 3]; 4]> {
    let pts: Vec<&str> = text.split(';').collect();
    if pts.len() != 4 {
        bail!("--vertices needs four points separated by ';', got {}", pts.len());
    }
    let mut out = [[0.0; 3]; 4];
    for (k, p) in pts.iter().enumerate() {
        let coords: Vec<f64> =
            p.split(',').map(|c| c.trim().parse::<f64>()).collect::<Result<_, _>>().with_context(|| format!("point {p:?}"))?;
        if coords.len() != 3 {
            bail!("point {p:?} needs three coordinates");
        }
        out[k] = [coords[0], coords[1], coords[2]];
    }
    Ok(out)
}

fn run_tet(ideal: bool, side: Option<f64>, vertices: Option<&str>, g: &Globals) -> Result<Report> {
    let tol = g.tol.unwrap_or(DEFAULT_QUAD_TOL);
    let (label, tet) = match (ideal, side, vertices) {
        (true, _, _) => ("regular ideal".to_string(), regular_ideal_tet()),
        (_, Some(s), _) => (format!("regular, side {s}"), regular_tet(s)?),
        (_, _, Some(v)) => ("vertices".to_string(), KleinTetrahedron::new(parse_vertices(v)?)?),
        _ => bail!("give one of --ideal-regular, --side or --vertices"),
    };
    let vol = klein_volume(&tet, tol)?;
    let beta = tet.face_angles().into_iter().fold(0.0, f64::max);
    #[derive(Serialize)]
    struct Out {
        tetrahedron: String,
        vertices: [[f64; 3]; 4],
        volume: f64,
        quad_error: f64,
        tol: f64,
        max_face_angle: f64,
        deficit: f64,
        reference: Option<f64>,
    }
    let reference = ideal.then(|| 3.0 * lobachevsky(PI / 3.0));
    let out = Out {
        tetrahedron: label,
        vertices: tet.vertices,
        volume: vol.value,
        quad_error: vol.error,
        tol,
        max_face_angle: beta,
        deficit: v3() - vol.value,
        reference,
    };
    let mut t = format!("tetrahedron: {}\n", out.tetrahedron);
    writeln!(t, "volume: {:.12} (error estimate {:.1e}, tol {:.1e})", out.volume, out.quad_error, out.tol)?;
    writeln!(t, "v3 - volume: {:.6e}", out.deficit)?;
    writeln!(t, "largest face angle: {:.6e}", out.max_face_angle)?;
    if let Some(r) = reference {
        writeln!(t, "3 L(pi/3): {:.12}, difference {:.1e}", r, (r - out.volume).abs())?;
    }
    Report::new("volume tet", t, out, 0)
}

fn run_decay(from: f64, to: f64, step: f64, g: &Globals) -> Result<Report> {
    if !(step > 0.0) || !(to >= from) {
        bail!("need --step > 0 and --to >= --from");
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    let sides: Vec<f64> = (0..=n).map(|k| from + k as f64 * step).collect();
    let rep = epsilon_decay_report(&sides, g.tol.unwrap_or(DEFAULT_QUAD_TOL))?;
    let mut t = rep.to_table();
    let eps_dec = rep.rows.windows(2).all(|w| w[1].epsilon < w[0].epsilon);
    let sq_dec = rep.rows.windows(2).all(|w| w[1].side_sq_epsilon < w[0].side_sq_epsilon);
    writeln!(t, "# eps strictly decreasing: {eps_dec}; i^2*eps strictly decreasing: {sq_dec}")?;
    Report::new("volume decay", t, &rep, 0)
}

fn run_angles(samples: usize, threshold: Option<f64>, g: &Globals) -> Result<Report> {
    let threshold = threshold.unwrap_or(v3() - 0.05);
    let rep = face_angle_check(samples, threshold, g.seed, g.tol.unwrap_or(DEFAULT_QUAD_TOL))?;
    let code = if rep.violations.is_empty() && rep.fitted_c > 0.0 { 0 } else { 2 };
    Report::new("volume angles", rep.to_table(), &rep, code)
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = s.split_once(',').ok_or_else(|| anyhow!("expected re,im, got {s:?}"))?;
    Ok(Complex64::new(re.trim().parse()?, im.trim().parse()?))
}

#[derive(Serialize)]
struct PathOut {
    waypoints: Vec<(f64, f64)>,
    samples: usize,
    halvings: u32,
    max_residual: f64,
    end: ((f64, f64), (f64, f64)),
    eta: f64,
}

fn summarize(waypoints: &[Complex64], path: &CurvePath, eta: f64) -> PathOut {
    let (a, b) = path.end();
    PathOut {
        waypoints: waypoints.iter().map(|z| (z.re, z.im)).collect(),
        samples: path.samples.len(),
        halvings: path.halvings,
        max_residual: path.max_residual(),
        end: ((a.re, a.im), (b.re, b.im)),
        eta,
    }
}

#[allow(clippy::too_many_arguments)]
fn run_eta(
    poly: &str,
    vars: Option<&str>,
    kind: LoopKind,
    at: &str,
    radius: Option<f64>,
    branch: usize,
    step: f64,
    g: &Globals,
) -> Result<Report> {
    let vars = vars.map(corpus::parse_vars).transpose()?;
    let entry = corpus::resolve(poly, vars.as_ref())?;
    let a_poly = &entry.file.poly;
    let tol = g.tol.unwrap_or(DEFAULT_ETA_TOL);
    let m0 = parse_complex(at)?;
    let mut roots = poly_roots(&a_poly.specialize_complex(Var::Second, m0))?;
    roots.retain(|z| z.norm() > 1e-12);
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let b0 = *roots.get(branch).ok_or_else(|| anyhow!("--branch {branch}: only {} roots over {m0}", roots.len()))?;
    let opts = TrackOptions { step, ..TrackOptions::default() };

    let mut paths = Vec::new();
    let (measured, label) = match kind {
        LoopKind::Small => {
            let r = radius.unwrap_or(0.1);
            let wp = loop_path(m0 - r, r, 64);
            let p = track_curve(a_poly, (m0, b0), &wp, &opts)?;
            let close = (p.end().1 - b0).norm();
            if close > 1e-8 {
                bail!("loop does not close on the curve (branch moved by {close:.3e}); it encircles a branch point");
            }
            let eta = integrate_eta(&p)?;
            paths.push(summarize(&wp, &p, eta));
            (eta.abs(), "|integral of eta around the loop|")
        }
        LoopKind::Homotopy => {
            let r = radius.unwrap_or(0.3);
            let m1 = m0 + Complex64::new(r, r);
            let first = vec![m0, m1];
            let second = vec![m0, m0 + Complex64::new(0.5 * r, 2.0 * r), m1];
            let p1 = track_curve(a_poly, (m0, b0), &first, &opts)?;
            let p2 = track_curve(a_poly, (m0, b0), &second, &opts)?;
            let gap = (p1.end().1 - p2.end().1).norm();
            if gap > 1e-8 {
                bail!("paths end on different branches (gap {gap:.3e}); the region between them contains a branch point");
            }
            let (e1, e2) = (integrate_eta(&p1)?, integrate_eta(&p2)?);
            paths.push(summarize(&first, &p1, e1));
            paths.push(summarize(&second, &p2, e2));
            ((e1 - e2).abs(), "|difference of eta integrals|")
        }
    };
    let passed = measured <= tol;
    #[derive(Serialize)]
    struct Out {
        source: String,
        kind: LoopKind,
        start: ((f64, f64), (f64, f64)),
        paths: Vec<PathOut>,
        measured: f64,
        tol: f64,
        passed: bool,
        volume_change: Vec<f64>,
    }
    let out = Out {
        source: entry.name.clone(),
        kind,
        start: ((m0.re, m0.im), (b0.re, b0.im)),
        volume_change: paths.iter().map(|p| -0.5 * p.eta + 0.0).collect(),
        paths,
        measured,
        tol,
        passed,
    };
    let mut t = format!("curve: {} ({})\n", out.source, a_poly);
    writeln!(t, "start: a = {m0}, b = {b0}")?;
    for (k, p) in out.paths.iter().enumerate() {
        writeln!(
            t,
            "path {}: {} samples, {} halvings, max residual {:.1e}, eta = {:.12}, volume change -eta/2 = {:.12}",
            k + 1,
            p.samples,
            p.halvings,
            p.max_residual,
            p.eta,
            -0.5 * p.eta + 0.0
        )?;
    }
    let verdict = if passed { "ok" } else { "FAILED" };
    writeln!(t, "{label}: {:.3e} (tol {:.1e}) {verdict}", out.measured, out.tol)?;
    Report::new("volume eta", t, out, if passed { 0 } else { 2 })
}
