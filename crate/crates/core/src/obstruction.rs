//! The cyclic-surgery and slope-diameter obstruction pipelines.
//!
//! Both pipelines produce an [`ObstructionReport`]: an ordered evidence trail
//! whose entries carry opaque step anchors and the exact values used, plus a
//! verdict derived from that trail.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::rational::{format_rational, int, rat};
use crate::laurent::{
    irreducibility_check, Irreducibility, LaurentPoly2, PolyError, Rational, Substitution, UniPoly, Var, Vars,
};
use crate::newton::{boundary_slopes, compute_polygon, format_slopes, minimality_check, unity_order, NewtonError};
use crate::roots::poly_roots;

/// Default bound on root-of-unity orders.
pub const DEFAULT_UNITY_BOUND: u64 = 120;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("C must be nonzero")]
    ZeroC,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("the origin is not on the curve")]
    OriginNotOnCurve,
    #[error("origin singular: the linear part vanishes")]
    OriginSingular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is singular: the gradient vanishes")]
    SingularPoint,
    #[error("tangent is the coordinate line {0} = 0; a Puiseux expansion would be needed")]
    NonTransverse(String),
    #[error("pole order must be positive")]
    ZeroPoleOrder,
    #[error("operation needs a polynomial with nonnegative exponents")]
    NeedsPolynomial,
    #[error("polynomial must involve both variables")]
    NeedsBothVariables,
    #[error("no sampled curve point determines the ratio constant")]
    Undetermined,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

/// `b m^2 - b - C b^2 m + C m` in `(m, b)`.
pub fn build_p(c: &Rational) -> Result<LaurentPoly2, ObstructionError> {
    if c.is_zero() {
        return Err(ObstructionError::ZeroC);
    }
    Ok(LaurentPoly2::from_terms(
        [((2, 1), int(1)), ((0, 1), int(-1)), ((1, 2), -c.clone()), ((1, 0), c.clone())],
        Vars::mb(),
    ))
}

fn check_pq(p: i64, q: i64) -> Result<(), ObstructionError> {
    if q < 1 || p < 0 || p > q || p.gcd(&q) != 1 {
        return Err(ObstructionError::InvalidParams(format!(
            "need 0 <= p <= q, q >= 1, gcd(p, q) = 1; got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// `m^p (l^2 - 1)^p (l^2 m^2 - 1)^(q-p) - C l^q (m^2 - 1)^q` in `(m, l)`.
pub fn build_new_p(p: i64, q: i64, c: &Rational) -> Result<LaurentPoly2, ObstructionError> {
    check_pq(p, q)?;
    if c.is_zero() {
        return Err(ObstructionError::ZeroC);
    }
    let v = Vars::ml();
    let m = LaurentPoly2::first_var(v.clone());
    let l = LaurentPoly2::second_var(v.clone());
    let one = LaurentPoly2::one(v);
    let l2m1 = &l.pow(2)? - &one;
    let lm = &(&l.pow(2)? * &m.pow(2)?) - &one;
    let m2m1 = &m.pow(2)? - &one;
    let left = &(&m.pow(p)? * &l2m1.pow(p)?) * &lm.pow(q - p)?;
    let right = (&l.pow(q)? * &m2m1.pow(q)?).scale(c);
    Ok(&left - &right)
}

/// `first * x + second * y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    pub first: Rational,
    pub second: Rational,
    pub vars: Vars,
}

impl LinearForm {
    pub fn to_poly(&self) -> LaurentPoly2 {
        LaurentPoly2::from_terms([((1, 0), self.first.clone()), ((0, 1), self.second.clone())], self.vars.clone())
    }

    /// Scaled to coprime integer coefficients, first nonzero entry positive.
    pub fn primitive(&self) -> (i64, i64) {
        let l = self.first.denom().lcm(self.second.denom());
        let a = (&self.first * Rational::from_integer(l.clone())).to_integer();
        let b = (&self.second * Rational::from_integer(l)).to_integer();
        let g = a.gcd(&b);
        let (mut a, mut b) = ((a / &g).to_i64().expect("fits"), (b / &g).to_i64().expect("fits"));
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
        }
        (a, b)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// The linear part of `p` at the origin, exactly as it appears in `p`.
pub fn tangent_at_origin(p: &LaurentPoly2) -> Result<LinearForm, ObstructionError> {
    if p.min_exponents().is_some_and(|(i, j)| i < 0 || j < 0) {
        return Err(ObstructionError::NeedsPolynomial);
    }
    if !p.coeff((0, 0)).is_zero() {
        return Err(ObstructionError::OriginNotOnCurve);
    }
    let form = LinearForm { first: p.coeff((1, 0)), second: p.coeff((0, 1)), vars: p.vars().clone() };
    if form.first.is_zero() && form.second.is_zero() {
        return Err(ObstructionError::OriginSingular);
    }
    Ok(form)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchData {
    pub point: (Rational, Rational),
    /// Primitive integer tangent `alpha * (x - x0) + beta * (y - y0) = 0`.
    pub tangent: (i64, i64),
    /// Orders of vanishing of the two coordinates along the branch (0 where
    /// the coordinate is a unit).
    pub ord_first: u32,
    pub ord_second: u32,
}

impl BranchData {
    /// Pole orders of the trace functions `x + 1/x` and `y + 1/y`.
    pub fn trace_pole_orders(&self) -> (u32, u32) {
        (self.ord_first, self.ord_second)
    }
}

pub fn branch_orders(p: &LaurentPoly2, at: (&Rational, &Rational)) -> Result<BranchData, ObstructionError> {
    let (x0, y0) = at;
    if !p.eval_rational(x0, y0)?.is_zero() {
        return Err(ObstructionError::NotOnCurve);
    }
    let gx = p.derivative(Var::First).eval_rational(x0, y0)?;
    let gy = p.derivative(Var::Second).eval_rational(x0, y0)?;
    if gx.is_zero() && gy.is_zero() {
        return Err(ObstructionError::SingularPoint);
    }
    let tangent = LinearForm { first: gx.clone(), second: gy.clone(), vars: p.vars().clone() }.primitive();
    // A coordinate vanishing at the point has a simple zero along the branch
    // exactly when its zero line is transverse to the tangent.
    let order = |value: &Rational, other_grad: &Rational, label: &str| -> Result<u32, ObstructionError> {
        if !value.is_zero() {
            return Ok(0);
        }
        if other_grad.is_zero() {
            return Err(ObstructionError::NonTransverse(label.to_string()));
        }
        Ok(1)
    };
    let ord_first = order(x0, &gy, &p.vars().first)?;
    let ord_second = order(y0, &gx, &p.vars().second)?;
    Ok(BranchData { point: (x0.clone(), y0.clone()), tangent, ord_first, ord_second })
}

/// `(translation length, boundary components)` from the pole order of a
/// trace function at an ideal point: both are twice the pole order.
pub fn tree_lengths(pole_order: u64) -> Result<(u64, u64), ObstructionError> {
    if pole_order == 0 {
        return Err(ObstructionError::ZeroPoleOrder);
    }
    Ok((2 * pole_order, 2 * pole_order))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    NegateFirst,
    NegateSecond,
    NegateBoth,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::NegateFirst, Symmetry::NegateSecond, Symmetry::NegateBoth];

    fn substitution(self) -> Substitution {
        match self {
            Symmetry::NegateFirst => Substitution::NegateFirst,
            Symmetry::NegateSecond => Substitution::NegateSecond,
            Symmetry::NegateBoth => Substitution::NegateBoth,
        }
    }

    /// E.g. `(m,l)->(m,-l)`.
    pub fn label(self, v: &Vars) -> String {
        let (a, b) = (&v.first, &v.second);
        match self {
            Symmetry::NegateFirst => format!("({a},{b})->(-{a},{b})"),
            Symmetry::NegateSecond => format!("({a},{b})->({a},-{b})"),
            Symmetry::NegateBoth => format!("({a},{b})->(-{a},-{b})"),
        }
    }
}

/// Sign changes fixing `p` up to a nonzero rational scalar.
pub fn detect_symmetries(p: &LaurentPoly2) -> BTreeSet<Symmetry> {
    let Some((e, c)) = p.leading_term() else {
        return Symmetry::ALL.into_iter().collect();
    };
    Symmetry::ALL
        .into_iter()
        .filter(|s| {
            let q = p.substitute(&s.substitution()).expect("sign changes always apply");
            let ratio = q.coeff(e) / &c;
            q == p.scale(&ratio)
        })
        .collect()
}

/// Which constancy statement to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RatioKind {
    /// `f_mu / f_beta = (x - 1/x)^2 / (y - 1/y)^2`.
    Cyclic,
    /// `f_lambda^p f_gamma^(q-p) / f_mu^q` with `gamma = mu + lambda`.
    Diameter { p: i64, q: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub point: String,
    pub ratio: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RatioOutcome {
    Constant { value: Rational, witnesses: Vec<SamplePoint> },
    NonConstant { witnesses: Vec<SamplePoint>, reason: String },
}

/// Numerator and denominator of the ratio with denominators cleared.
fn ratio_parts(vars: &Vars, kind: RatioKind) -> Result<(LaurentPoly2, LaurentPoly2), ObstructionError> {
    let x = LaurentPoly2::first_var(vars.clone());
    let y = LaurentPoly2::second_var(vars.clone());
    let one = LaurentPoly2::one(vars.clone());
    let x2m1 = &x.pow(2)? - &one;
    let y2m1 = &y.pow(2)? - &one;
    Ok(match kind {
        RatioKind::Cyclic => (&y.pow(2)? * &x2m1.pow(2)?, &x.pow(2)? * &y2m1.pow(2)?),
        RatioKind::Diameter { p, q } => {
            check_pq(p, q)?;
            let xy2m1 = &(&x.pow(2)? * &y.pow(2)?) - &one;
            (
                &(&x.pow(2 * p)? * &y2m1.pow(2 * p)?) * &xy2m1.pow(2 * (q - p))?,
                &y.pow(2 * q)? * &x2m1.pow(2 * q)?,
            )
        }
    })
}

/// Candidate rational values for the first coordinate of sampled points.
fn sample_values() -> Vec<Rational> {
    let mut out = vec![int(2), int(3), rat(5, 2)];
    'outer: for d in 1..=6i64 {
        for n in -12..=12i64 {
            if n == 0 || n.gcd(&d) != 1 {
                continue;
            }
            let v = rat(n, d);
            if !out.contains(&v) {
                out.push(v);
            }
            if out.len() >= 50 {
                break 'outer;
            }
        }
    }
    out
}

fn fmt_point(x: &Rational, y: &Rational) -> String {
    format!("({}, {})", format_rational(x), format_rational(y))
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.10}{:+.10}i", z.re, z.im)
}

/// Whether the ratio is constant on `{a = 0}`. The decision is exact: with
/// `N1 / N2` the ratio, it is constant `C'` iff `N1 - C' N2` is divisible by
/// `a`, i.e. iff the normal forms modulo `a` satisfy `NF(N1) = C' NF(N2)`.
/// Sampled points supply `C'` and witnesses.
pub fn ratio_constant_check(a: &LaurentPoly2, kind: RatioKind) -> Result<RatioOutcome, ObstructionError> {
    let (a, _) = a.normalize();
    if a.degree_in(Var::First) == 0 || a.degree_in(Var::Second) == 0 {
        return Err(ObstructionError::NeedsBothVariables);
    }
    let (n1, n2) = ratio_parts(a.vars(), kind)?;

    // Rational curve points.
    let mut samples: Vec<(SamplePoint, Rational)> = Vec::new();
    let ax = a.derivative(Var::First);
    let ay = a.derivative(Var::Second);
    for x0 in sample_values() {
        let (u, _) = a.specialize(Var::First, &x0)?;
        if u.is_zero() {
            continue;
        }
        for y0 in u.rational_roots() {
            if y0.is_zero() {
                continue;
            }
            let smooth = !ax.eval_rational(&x0, &y0)?.is_zero() || !ay.eval_rational(&x0, &y0)?.is_zero();
            let d = n2.eval_rational(&x0, &y0)?;
            if !smooth || d.is_zero() {
                continue;
            }
            let r = n1.eval_rational(&x0, &y0)? / d;
            samples.push((SamplePoint { point: fmt_point(&x0, &y0), ratio: format_rational(&r) }, r));
        }
        if samples.len() >= 3 {
            break;
        }
    }

    let (_, r1) = n1.div_rem(&a)?;
    let (_, r2) = n2.div_rem(&a)?;
    if let Some((first, value)) = samples.first() {
        if let Some((other, _)) = samples.iter().find(|(_, v)| v != value) {
            return Ok(RatioOutcome::NonConstant {
                witnesses: vec![first.clone(), other.clone()],
                reason: "sampled curve points give different ratios".into(),
            });
        }
        if r1 == r2.scale(value) {
            return Ok(RatioOutcome::Constant {
                value: value.clone(),
                witnesses: samples.into_iter().map(|(s, _)| s).collect(),
            });
        }
        return Ok(RatioOutcome::NonConstant {
            witnesses: vec![first.clone()],
            reason: format!("numerator minus {} times denominator is not divisible by the curve", first.ratio),
        });
    }

    // No usable rational point: compare leading coefficients of the normal forms.
    if r2.is_zero() {
        if r1.is_zero() {
            return Err(ObstructionError::Undetermined);
        }
        return Ok(RatioOutcome::NonConstant {
            witnesses: Vec::new(),
            reason: "denominator vanishes identically on the curve".into(),
        });
    }
    let (e, c2) = r2.leading_term().expect("nonzero");
    let value = r1.coeff(e) / c2;
    if !value.is_zero() && r1 == r2.scale(&value) {
        return Ok(RatioOutcome::Constant { value, witnesses: Vec::new() });
    }
    Ok(RatioOutcome::NonConstant {
        witnesses: numeric_witnesses(&a, &n1, &n2),
        reason: "normal forms modulo the curve are not proportional".into(),
    })
}

/// Two complex curve points with visibly different ratios, when found.
fn numeric_witnesses(a: &LaurentPoly2, n1: &LaurentPoly2, n2: &LaurentPoly2) -> Vec<SamplePoint> {
    let mut out: Vec<(SamplePoint, Complex64)> = Vec::new();
    for x0 in [2.0, 3.0, 2.5, 4.0, 1.5, 5.0] {
        let x0 = Complex64::new(x0, 0.0);
        let Ok(roots) = poly_roots(&a.specialize_complex(Var::Second, x0)) else {
            continue;
        };
        for y0 in roots {
            let (Ok(u), Ok(d)) = (n1.eval_complex(x0, y0), n2.eval_complex(x0, y0)) else {
                continue;
            };
            if d.norm() < 1e-8 || y0.norm() < 1e-8 {
                continue;
            }
            let r = u / d;
            let point = format!("({}, {})", fmt_complex(x0), fmt_complex(y0));
            let fresh = out.iter().all(|(_, v)| (v - r).norm() > 1e-6 * r.norm().max(1.0));
            if out.is_empty() || fresh {
                out.push((SamplePoint { point, ratio: fmt_complex(r) }, r));
            }
            if out.len() == 2 {
                return out.into_iter().map(|(s, _)| s).collect();
            }
        }
    }
    out.into_iter().map(|(s, _)| s).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    Cyclic,
    Diameter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ContradictionEstablished,
    Consistent,
    Inconclusive,
}

impl Verdict {
    /// CLI exit code.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Consistent => 0,
            Verdict::ContradictionEstablished => 3,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ContradictionEstablished => "contradiction-established",
            Verdict::Consistent => "consistent",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub step: String,
    pub anchor: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub pipeline: Pipeline,
    pub inputs: Vec<(String, String)>,
    pub evidence: Vec<Evidence>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl ObstructionReport {
    fn new(pipeline: Pipeline, inputs: Vec<(String, String)>) -> Self {
        ObstructionReport { pipeline, inputs, evidence: Vec::new(), verdict: Verdict::Inconclusive, reasons: Vec::new() }
    }

    fn push(&mut self, step: &str, anchor: &str, value: impl Into<String>) {
        self.evidence.push(Evidence { step: step.into(), anchor: anchor.into(), value: value.into() });
    }

    fn finish(mut self, verdict: Verdict, reason: impl Into<String>) -> Self {
        self.verdict = verdict;
        self.reasons.push(reason.into());
        self
    }

    pub fn evidence_for(&self, anchor: &str) -> Option<&Evidence> {
        self.evidence.iter().find(|e| e.anchor == anchor)
    }

    /// Plain-text rendering; stable for identical inputs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = match self.pipeline {
            Pipeline::Cyclic => "cyclic",
            Pipeline::Diameter => "diameter",
        };
        out.push_str(&format!("pipeline: {name}\n"));
        for (k, v) in &self.inputs {
            out.push_str(&format!("input {k} = {v}\n"));
        }
        for (i, e) in self.evidence.iter().enumerate() {
            out.push_str(&format!("[{}] {} <{}>: {}\n", i + 1, e.step, e.anchor, e.value));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        for r in &self.reasons {
            out.push_str(&format!("reason: {r}\n"));
        }
        out
    }
}

/// Runs the cyclic-surgery argument on `P = b m^2 - b - C b^2 m + C m`.
pub fn cyclic_verdict(c: &Rational, unity_bound: u64) -> Result<ObstructionReport, ObstructionError> {
    let p = build_p(c)?;
    let cs = format_rational(c);
    let mut report = ObstructionReport::new(
        Pipeline::Cyclic,
        vec![("C".into(), cs.clone()), ("unity_bound".into(), unity_bound.to_string())],
    );
    report.push("defining polynomial", "cyclic/defining-polynomial", p.to_string());

    match irreducibility_check(&p)? {
        Irreducibility::Irreducible { method } => {
            report.push("irreducibility", "cyclic/irreducible", format!("irreducible ({method})"));
        }
        Irreducibility::Factors { factors, .. } => {
            let shown: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
            report.push("irreducibility", "cyclic/irreducible", format!("reducible: P = {}", shown.join("*")));
            return Ok(report.finish(
                Verdict::Consistent,
                format!("C = {cs}: P is reducible, so it cannot be the curve of an irreducible component and the argument does not apply"),
            ));
        }
        Irreducibility::Inconclusive { reason } => {
            report.push("irreducibility", "cyclic/irreducible", format!("undecided: {reason}"));
            return Ok(report.finish(Verdict::Inconclusive, "irreducibility of P could not be decided"));
        }
    }

    match ratio_constant_check(&p, RatioKind::Cyclic)? {
        RatioOutcome::Constant { value, .. } => report.push(
            "ratio constant",
            "cyclic/ratio-constant",
            format!("f_mu/f_beta = {} on P = 0", format_rational(&value)),
        ),
        RatioOutcome::NonConstant { reason, .. } => {
            report.push("ratio constant", "cyclic/ratio-constant", format!("not constant: {reason}"));
            return Ok(report.finish(Verdict::Inconclusive, "f_mu/f_beta is not constant on P = 0"));
        }
    }

    let tangent = tangent_at_origin(&p)?;
    report.push("tangent at origin", "cyclic/tangent-at-origin", format!("{tangent} = 0"));

    let zero = Rational::zero();
    let branch = branch_orders(&p, (&zero, &zero))?;
    let (pm, pb) = branch.trace_pole_orders();
    report.push(
        "branch orders",
        "cyclic/branch-orders",
        format!(
            "ord_m = {}, ord_b = {}; pole orders ord(tr_mu) = {pm}, ord(tr_beta) = {pb}",
            branch.ord_first, branch.ord_second
        ),
    );

    let (length, components) = tree_lengths(pb as u64)?;
    report.push(
        "tree lengths",
        "cyclic/boundary-components",
        format!("translation length of beta = {length}; associated surface has {components} boundary components (length = 2 x pole order)"),
    );

    // Along the branch b ~ C m, so m/b -> 1/C; order is inversion-invariant.
    let inv = int(1) / c;
    report.push(
        "eigenvalue of mu - beta",
        "cyclic/eigenvalue",
        format!("m/b -> {} along the branch; reported together with its inverse {cs}", format_rational(&inv)),
    );

    let x_minus_c = UniPoly::new(vec![-c.clone(), Rational::one()]);
    let orders = unity_order(&x_minus_c, unity_bound);
    let order_text = if orders.is_empty() {
        format!("x - ({cs}): no root of unity of order <= {unity_bound}")
    } else {
        let o: Vec<String> = orders.iter().map(|u| u.order.to_string()).collect();
        format!("x - ({cs}): root of unity of order {}", o.join(", "))
    };
    report.push("root-of-unity order", "cyclic/unity-order", order_text);

    let divides = !orders.is_empty() && orders.iter().all(|u| components % u.order == 0);
    if divides {
        report.push(
            "conclusion",
            "cyclic/conclusion",
            format!("eigenvalue order divides {components}; no contradiction"),
        );
        return Ok(report.finish(Verdict::Consistent, "eigenvalue is a root of unity of order dividing the boundary count"));
    }
    let why = if orders.is_empty() { "C is not a root of unity" } else { "the order of C does not divide 2" };
    report.push(
        "conclusion",
        "cyclic/conclusion",
        format!("{why}, so any associated surface needs at least three boundary components, but the surface at this ideal point has {components}"),
    );
    Ok(report.finish(Verdict::ContradictionEstablished, format!("{why} while the associated surface has {components} boundary components")))
}

/// Parity analysis of `(p, q)` for a diameter-2 slope set `{-p/q, 2 - p/q}`.
pub fn diameter_verdict(p: i64, q: i64) -> Result<ObstructionReport, ObstructionError> {
    check_pq(p, q)?;
    let poly = build_new_p(p, q, &int(1))?;
    let vars = poly.vars().clone();
    let mut report =
        ObstructionReport::new(Pipeline::Diameter, vec![("p".into(), p.to_string()), ("q".into(), q.to_string())]);
    report.push("defining polynomial (C = 1)", "diameter/defining-polynomial", poly.to_string());

    let polygon = compute_polygon(&poly)?;
    let slopes = boundary_slopes(&polygon)?;
    let vs: Vec<String> = polygon.vertices.iter().map(|(i, j)| format!("({i},{j})")).collect();
    report.push(
        "Newton polygon",
        "diameter/newton-polygon",
        format!(
            "vertices {}; slopes {}; diam_m = {}, diam_l = {}",
            vs.join(" "),
            format_slopes(&slopes),
            polygon.axis_diameters.0,
            polygon.axis_diameters.1
        ),
    );
    let minimal = minimality_check(&poly, &slopes)?;
    report.push(
        "minimal parallelogram",
        "diameter/minimal-parallelogram",
        format!("{:?}: {}", minimal.verdict, minimal.certificate.join("; ")),
    );

    let found = detect_symmetries(&poly);
    let shown: Vec<String> = found.iter().map(|s| s.label(&vars)).collect();
    report.push("symmetries", "diameter/symmetries", if shown.is_empty() { "none".into() } else { shown.join(", ") });

    let mut reasons = Vec::new();
    let mut mismatch = false;
    let q_even = q % 2 == 0;
    if q_even != found.contains(&Symmetry::NegateSecond) {
        mismatch = true;
    }
    report.push(
        "parity of q",
        "diameter/q-parity",
        if q_even {
            format!("q = {q} is even: P is fixed by {}, an extra symmetry that cannot occur", Symmetry::NegateSecond.label(&vars))
        } else {
            format!("q = {q} is odd: no (m,-l) symmetry")
        },
    );
    if q_even {
        reasons.push(format!("q even: symmetry {} present", Symmetry::NegateSecond.label(&vars)));
    }
    let both_odd = p % 2 == 1 && q % 2 == 1;
    if both_odd != found.contains(&Symmetry::NegateBoth) {
        mismatch = true;
    }
    report.push(
        "parity of p and q",
        "diameter/pq-parity",
        if both_odd {
            format!("p = {p}, q = {q} both odd: P is fixed up to sign by {}, which cannot occur", Symmetry::NegateBoth.label(&vars))
        } else {
            "p and q are not both odd".to_string()
        },
    );
    if both_odd {
        reasons.push(format!("p,q both odd: symmetry {} present", Symmetry::NegateBoth.label(&vars)));
    }
    report.push(
        "q > 1",
        "diameter/q-bound",
        if q > 1 { format!("q = {q} > 1") } else { "q = 1 is excluded".to_string() },
    );
    if q == 1 {
        reasons.push("q = 1 excluded".into());
    }

    if mismatch {
        return Ok(report.finish(Verdict::Inconclusive, "detected symmetries disagree with the parity prediction"));
    }
    if reasons.is_empty() {
        return Ok(report.finish(Verdict::Consistent, format!("p = {p} even, q = {q} odd, q > 1")));
    }
    report.verdict = Verdict::ContradictionEstablished;
    report.reasons = reasons;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    #[test]
    fn defining_polynomials() {
        assert_eq!(build_p(&int(3)).unwrap(), parse_poly("b*m^2 - b - 3*b^2*m + 3*m", &Vars::mb()).unwrap());
        for c in [1, -1] {
            let f = parse_poly(&format!("(b*m + ({c}))*(m - ({c})*b)"), &Vars::mb()).unwrap();
            assert_eq!(build_p(&int(c)).unwrap(), f);
        }
        assert_eq!(build_p(&int(0)), Err(ObstructionError::ZeroC));
        let sister = build_new_p(1, 2, &int(1)).unwrap();
        assert_eq!(sister.len(), 7);
        let n = compute_polygon(&sister).unwrap();
        assert_eq!(n.vertices, vec![(1, 0), (4, 2), (3, 4), (0, 2)]);
        assert_eq!(
            build_new_p(0, 1, &int(5)).unwrap(),
            parse_poly("(l^2*m^2 - 1) - 5*l*(m^2 - 1)", &Vars::ml()).unwrap()
        );
        assert!(build_new_p(2, 4, &int(1)).is_err());
        assert!(build_new_p(3, 2, &int(1)).is_err());
    }

    #[test]
    fn tangent_cases() {
        let t = tangent_at_origin(&build_p(&int(5)).unwrap()).unwrap();
        assert_eq!(t.to_string(), "5*m - b");
        assert_eq!(t.primitive(), (5, -1));
        let q = parse_poly("m + b + m^2*b^3", &Vars::mb()).unwrap();
        assert_eq!(tangent_at_origin(&q).unwrap().to_string(), "m + b");
        let s = parse_poly("m^2 + b^2", &Vars::mb()).unwrap();
        assert_eq!(tangent_at_origin(&s), Err(ObstructionError::OriginSingular));
        let off = parse_poly("m + 1", &Vars::mb()).unwrap();
        assert_eq!(tangent_at_origin(&off), Err(ObstructionError::OriginNotOnCurve));
    }

    #[test]
    fn branch_order_cases() {
        let z = Rational::zero();
        let b = branch_orders(&build_p(&int(2)).unwrap(), (&z, &z)).unwrap();
        assert_eq!((b.ord_first, b.ord_second), (1, 1));
        assert_eq!(b.tangent, (2, -1));
        let cusp = parse_poly("m - b^2", &Vars::mb()).unwrap();
        assert_eq!(branch_orders(&cusp, (&z, &z)), Err(ObstructionError::NonTransverse("m".into())));
        let line = parse_poly("m + b", &Vars::mb()).unwrap();
        assert_eq!(branch_orders(&line, (&z, &z)).unwrap().trace_pole_orders(), (1, 1));
        assert_eq!(branch_orders(&line, (&int(1), &int(1))), Err(ObstructionError::NotOnCurve));
        let node = parse_poly("m*b", &Vars::mb()).unwrap();
        assert_eq!(branch_orders(&node, (&z, &z)), Err(ObstructionError::SingularPoint));
    }

    #[test]
    fn tree_length_cases() {
        assert_eq!(tree_lengths(1).unwrap(), (2, 2));
        assert_eq!(tree_lengths(3).unwrap(), (6, 6));
        assert_eq!(tree_lengths(0), Err(ObstructionError::ZeroPoleOrder));
    }

    #[test]
    fn symmetry_cases() {
        let s = detect_symmetries(&build_new_p(1, 2, &int(1)).unwrap());
        assert!(s.contains(&Symmetry::NegateSecond));
        let s = detect_symmetries(&build_new_p(1, 3, &int(1)).unwrap());
        assert!(s.contains(&Symmetry::NegateBoth));
        assert!(!s.contains(&Symmetry::NegateSecond));
        let all = detect_symmetries(&parse_poly("m^2 + l^2", &Vars::ml()).unwrap());
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn ratio_constants() {
        match ratio_constant_check(&build_p(&int(2)).unwrap(), RatioKind::Cyclic).unwrap() {
            RatioOutcome::Constant { value, .. } => assert_eq!(value, int(4)),
            other => panic!("{other:?}"),
        }
        let line = parse_poly("m - b", &Vars::mb()).unwrap();
        match ratio_constant_check(&line, RatioKind::Cyclic).unwrap() {
            RatioOutcome::Constant { value, .. } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
        let sister = build_new_p(1, 2, &int(3)).unwrap();
        match ratio_constant_check(&sister, RatioKind::Diameter { p: 1, q: 2 }).unwrap() {
            RatioOutcome::Constant { value, .. } => assert_eq!(value, int(9)),
            other => panic!("{other:?}"),
        }
        let fig8 = parse_poly("m^4*l^2 + m^4 + 2*m^4*l - m^8*l - l + m^6*l + m^2*l", &Vars::ml()).unwrap();
        assert!(matches!(
            ratio_constant_check(&fig8, RatioKind::Cyclic).unwrap(),
            RatioOutcome::NonConstant { .. }
        ));
    }

    #[test]
    fn cyclic_pipeline() {
        let r = cyclic_verdict(&int(2), DEFAULT_UNITY_BOUND).unwrap();
        assert_eq!(r.verdict, Verdict::ContradictionEstablished, "{}", r.to_text());
        assert_eq!(r.evidence_for("cyclic/tangent-at-origin").unwrap().value, "2*m - b = 0");
        for c in [1, -1] {
            assert_eq!(cyclic_verdict(&int(c), DEFAULT_UNITY_BOUND).unwrap().verdict, Verdict::Consistent);
        }
        assert_eq!(cyclic_verdict(&int(2), 120).unwrap(), cyclic_verdict(&int(2), 120).unwrap());
    }

    #[test]
    fn diameter_pipeline() {
        assert_eq!(diameter_verdict(2, 3).unwrap().verdict, Verdict::Consistent);
        let r = diameter_verdict(1, 2).unwrap();
        assert_eq!(r.verdict, Verdict::ContradictionEstablished);
        assert!(r.reasons[0].starts_with("q even"));
        let r = diameter_verdict(1, 3).unwrap();
        assert!(r.reasons[0].starts_with("p,q both odd"));
        assert!(diameter_verdict(0, 1).unwrap().reasons.iter().any(|s| s.contains("q = 1")));
        assert!(diameter_verdict(2, 4).is_err());
    }
}
