use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;
use slopesmith::laurent::rational::format_rational;
use slopesmith::newton::{axis_diameter, boundary_slopes, compute_polygon, format_slopes, Degeneracy};
use slopesmith::norm::{
    ball_polygon, fundamental_polygon_check, seminorm_from_polygon, slope_set_diameter, PeripheralClass, Point,
    WEIGHT_CONVENTION,
};
use slopesmith::obstruction::detect_symmetries;
use slopesmith::Var;

use crate::corpus;
use crate::report::Report;
use crate::Globals;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Polynomial file, or the name of a corpus entry.
    #[arg(long)]
    poly: String,
    /// Variable labels, overriding the file header.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Serialize)]
struct EdgeOut {
    start: (i64, i64),
    end: (i64, i64),
    slope: String,
    length: u64,
}

#[derive(Serialize)]
struct FunctionalOut {
    q: i64,
    p: i64,
    weight: u64,
}

#[derive(Serialize)]
struct BallOut {
    radius: String,
    vertices: Vec<(String, String)>,
    area: String,
}

#[derive(Serialize)]
struct FundamentalOut {
    passed: bool,
    pq: Option<(i64, i64)>,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeOut {
    source: String,
    provenance: Vec<String>,
    vars: (String, String),
    polynomial: String,
    degeneracy: Degeneracy,
    vertices: Vec<(i64, i64)>,
    edges: Vec<EdgeOut>,
    axis_diameters: (u64, u64),
    boundary_slopes: Vec<String>,
    slope_diameter: Option<String>,
    weight_convention: &'static str,
    seminorm: Vec<FunctionalOut>,
    norm_ball: Option<BallOut>,
    fundamental_polygon: Option<FundamentalOut>,
    symmetries: Vec<String>,
    notes: Vec<String>,
}

fn point(p: &Point) -> (String, String) {
    (format_rational(&p.0), format_rational(&p.1))
}

/// `w*|q*a + p*b|`, dropping unit coefficients and zero terms.
fn functional_text(w: u64, q: i64, p: i64) -> String {
    let term = |c: i64, v: &str| match c {
        1 => v.to_string(),
        -1 => format!("-{v}"),
        c => format!("{c}*{v}"),
    };
    let inner = match (q, p) {
        (0, p) => term(p, "b"),
        (q, 0) => term(q, "a"),
        (q, p) if p < 0 => format!("{} - {}", term(q, "a"), term(-p, "b")),
        (q, p) => format!("{} + {}", term(q, "a"), term(p, "b")),
    };
    if w == 1 {
        format!("|{inner}|")
    } else {
        format!("{w}*|{inner}|")
    }
}

pub fn run(args: &Args, _g: &Globals) -> Result<Report> {
    let vars = args.vars.as_deref().map(corpus::parse_vars).transpose()?;
    let entry = corpus::resolve(&args.poly, vars.as_ref())?;
    let poly = &entry.file.poly;
    let v = poly.vars().clone();
    let n = compute_polygon(poly)?;
    let mut notes = Vec::new();

    let slopes = match boundary_slopes(&n) {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("boundary slopes: {e}"));
            None
        }
    };
    let diameter = slopes.as_ref().and_then(|s| match slope_set_diameter(s) {
        Ok(d) => Some(d.to_string()),
        Err(e) => {
            notes.push(format!("slope diameter: {e}"));
            None
        }
    });
    let seminorm = if slopes.is_some() { seminorm_from_polygon(&n).ok() } else { None };
    let ball = seminorm.as_ref().and_then(|s| match ball_polygon(s) {
        Ok(b) => Some(b),
        Err(e) => {
            notes.push(format!("norm ball: {e}"));
            None
        }
    });
    let fundamental = ball.as_ref().and_then(|b| match fundamental_polygon_check(b, PeripheralClass::MU) {
        Ok(r) => Some(FundamentalOut { passed: r.passed(), pq: r.pq, failures: r.failures }),
        Err(e) => {
            notes.push(format!("fundamental polygon check: {e}"));
            None
        }
    });
    let symmetries: Vec<String> = detect_symmetries(poly).into_iter().map(|s| s.label(&v)).collect();

    let out = AnalyzeOut {
        source: entry.name.clone(),
        provenance: entry.provenance().to_vec(),
        vars: (v.first.clone(), v.second.clone()),
        polynomial: poly.to_string(),
        degeneracy: n.degeneracy,
        vertices: n.vertices.clone(),
        edges: n
            .edges
            .iter()
            .map(|e| EdgeOut { start: e.start, end: e.end(), slope: e.slope().to_string(), length: e.length })
            .collect(),
        axis_diameters: (axis_diameter(&n, Var::First), axis_diameter(&n, Var::Second)),
        boundary_slopes: slopes.iter().flatten().map(|s| s.to_string()).collect(),
        slope_diameter: diameter,
        weight_convention: WEIGHT_CONVENTION,
        seminorm: seminorm
            .iter()
            .flat_map(|s| &s.functionals)
            .map(|f| FunctionalOut { q: f.q, p: f.p, weight: f.weight })
            .collect(),
        norm_ball: ball.as_ref().map(|b| BallOut {
            radius: format_rational(&b.radius),
            vertices: b.vertices.iter().map(point).collect(),
            area: format_rational(&b.area()),
        }),
        fundamental_polygon: fundamental,
        symmetries,
        notes,
    };

    let mut t = String::new();
    writeln!(t, "source: {}", out.source)?;
    for p in &out.provenance {
        writeln!(t, "# {p}")?;
    }
    writeln!(t, "polynomial ({}, {}): {}", out.vars.0, out.vars.1, out.polynomial)?;
    let verts: Vec<String> = out.vertices.iter().map(|(a, b)| format!("({a},{b})")).collect();
    let shape = match out.degeneracy {
        Degeneracy::None => "polygon",
        Degeneracy::Segment => "segment",
        Degeneracy::Point => "point",
    };
    writeln!(t, "newton polygon ({shape}): {}", verts.join(" "))?;
    for e in &out.edges {
        writeln!(t, "  edge ({},{})->({},{}) slope {} length {}", e.start.0, e.start.1, e.end.0, e.end.1, e.slope, e.length)?;
    }
    writeln!(t, "axis diameters: {} {}, {} {}", out.vars.0, out.axis_diameters.0, out.vars.1, out.axis_diameters.1)?;
    if let Some(s) = &slopes {
        writeln!(t, "boundary slopes: {}", format_slopes(s))?;
    }
    if let Some(d) = &out.slope_diameter {
        writeln!(t, "slope diameter: {d}")?;
    }
    if !out.seminorm.is_empty() {
        let terms: Vec<String> = out.seminorm.iter().map(|f| functional_text(f.weight, f.q, f.p)).collect();
        writeln!(t, "seminorm ({}): {}", out.weight_convention, terms.join(" + "))?;
    }
    if let Some(b) = &out.norm_ball {
        let vs: Vec<String> = b.vertices.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        writeln!(t, "norm ball: radius {}, area {}, vertices {}", b.radius, b.area, vs.join(" "))?;
    }
    if let Some(f) = &out.fundamental_polygon {
        match (f.passed, f.pq) {
            (true, Some((p, q))) => writeln!(t, "fundamental polygon check: pass, (p,q) = ({p},{q})")?,
            _ => writeln!(t, "fundamental polygon check: fail ({})", f.failures.join("; "))?,
        }
    }
    let sym = if out.symmetries.is_empty() { "none".to_string() } else { out.symmetries.join(" ") };
    writeln!(t, "symmetries: {sym}")?;
    for note in &out.notes {
        writeln!(t, "note: {note}")?;
    }
    Report::new("analyze", t, out, 0)
}
