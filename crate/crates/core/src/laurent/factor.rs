//! Irreducibility tests over the rationals.
//!
//! Bivariate polynomials of degree at most two in some variable are decided
//! exactly: a primitive quadratic in `y` over `Q[x]` splits iff its
//! discriminant is a square in `Q[x]`. Higher degrees fall back to a
//! specialization argument, which can only ever prove irreducibility.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::modp::{possible_factor_degrees, small_primes};
use super::poly::{LaurentPoly2, Var};
use super::rational::{int, rat, Rational};
use super::univariate::UniPoly;
use super::PolyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Irreducibility {
    Irreducible { method: String },
    /// A nontrivial factorization; the product of `factors` equals the
    /// normalized input exactly.
    Factors { factors: Vec<LaurentPoly2>, method: String },
    Inconclusive { reason: String },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }

    pub fn factors(&self) -> Option<&[LaurentPoly2]> {
        match self {
            Irreducibility::Factors { factors, .. } => Some(factors),
            _ => None,
        }
    }
}

/// Irreducibility of a univariate polynomial over `Q`: `Some(true)` proven
/// irreducible, `Some(false)` proven reducible, `None` undecided.
pub fn univariate_irreducible(f: &UniPoly) -> Option<bool> {
    let n = f.degree()?;
    match n {
        0 => return Some(false),
        1 => return Some(true),
        _ => {}
    }
    if f.gcd(&f.derivative()).degree().unwrap_or(0) > 0 {
        return Some(false);
    }
    if !f.rational_roots().is_empty() {
        return Some(false);
    }
    if n <= 3 {
        return Some(true);
    }
    // Intersect the factor degrees allowed by factorizations mod p.
    let mut allowed = vec![true; n + 1];
    let mut used = 0;
    for p in small_primes(400) {
        let Some(mask) = possible_factor_degrees(f, p) else {
            continue;
        };
        used += 1;
        for (a, m) in allowed.iter_mut().zip(mask) {
            *a &= m;
        }
        if allowed[1..n].iter().all(|a| !a) {
            return Some(true);
        }
        if used >= 40 {
            break;
        }
    }
    None
}

/// Factors a univariate polynomial in `var` as far as the rational-root and
/// squarefree tests allow.
fn univariate_witness(f: &UniPoly) -> Option<UniPoly> {
    let g = f.gcd(&f.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Some(g);
    }
    f.rational_roots().first().map(|r| UniPoly::new(vec![-r.clone(), Rational::one()]))
}

fn content(coeffs: &[UniPoly]) -> UniPoly {
    coeffs.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
}

/// Values tried when specializing one variable.
fn specialization_points() -> Vec<Rational> {
    let mut pts = Vec::new();
    for k in 2..12 {
        pts.push(int(k));
        pts.push(int(-k));
        pts.push(rat(2 * k + 1, 2));
        pts.push(rat(1, k));
    }
    pts
}

/// Decides (when possible) whether `p` is irreducible in `Q[x^±1, y^±1]`.
pub fn irreducibility_check(p: &LaurentPoly2) -> Result<Irreducibility, PolyError> {
    let (p, _) = p.normalize();
    if p.is_constant() {
        return Err(PolyError::Constant);
    }
    let vars = p.vars().clone();
    let deg1 = p.degree_in(Var::First);
    let deg2 = p.degree_in(Var::Second);

    // Univariate after normalization.
    if deg1 == 0 || deg2 == 0 {
        let var = if deg1 == 0 { Var::Second } else { Var::First };
        let coeffs = p.coefficients_in(var);
        let f = UniPoly::new(coeffs.iter().map(|c| c.coeff(0)).collect());
        return Ok(match univariate_irreducible(&f) {
            Some(true) => Irreducibility::Irreducible { method: "univariate".into() },
            Some(false) => match univariate_witness(&f) {
                Some(g) => {
                    let left = LaurentPoly2::from_univariate(var, &g, vars.clone());
                    let right = p.exact_div(&left)?.expect("witness divides");
                    Irreducibility::Factors { factors: vec![left, right], method: "univariate".into() }
                }
                None => Irreducibility::Inconclusive { reason: "univariate factor not located".into() },
            },
            None => Irreducibility::Inconclusive { reason: "univariate degree too high for the mod-p test".into() },
        });
    }

    // Content with respect to each variable.
    for var in [Var::Second, Var::First] {
        let coeffs = p.coefficients_in(var);
        let g = content(&coeffs);
        if g.degree().unwrap_or(0) > 0 {
            let left = LaurentPoly2::from_univariate(var.other(), &g, vars.clone());
            let right = p.exact_div(&left)?.expect("content divides");
            return Ok(Irreducibility::Factors { factors: vec![left, right], method: "content".into() });
        }
    }

    let low = if deg2 <= deg1 { Var::Second } else { Var::First };
    match p.degree_in(low) {
        1 => return Ok(Irreducibility::Irreducible { method: "primitive of degree one".into() }),
        2 => return quadratic_case(&p, low),
        _ => {}
    }

    // Both degrees >= 3: specialize, preserving the degree in the free variable.
    for free in [low, low.other()] {
        let coeffs = p.coefficients_in(free);
        let lead = coeffs.last().expect("nonconstant");
        for x0 in specialization_points() {
            if lead.eval(&x0).is_zero() {
                continue;
            }
            let (u, _) = p.specialize(free.other(), &x0)?;
            if u.degree() != Some(coeffs.len() - 1) {
                continue;
            }
            if univariate_irreducible(&u) == Some(true) {
                return Ok(Irreducibility::Irreducible {
                    method: format!(
                        "specialization {}={} stays irreducible",
                        vars.label(free.other()),
                        super::rational::format_rational(&x0)
                    ),
                });
            }
        }
    }
    Ok(Irreducibility::Inconclusive { reason: "no irreducible specialization found".into() })
}

/// Primitive quadratic in `y = var` over `Q[x]`.
fn quadratic_case(p: &LaurentPoly2, var: Var) -> Result<Irreducibility, PolyError> {
    let vars = p.vars().clone();
    let c = p.coefficients_in(var);
    let (a0, a1, a2) = (&c[0], &c[1], &c[2]);
    let disc = a1.mul(a1).sub(&a2.mul(a0).scale(&int(4)));
    let Some(root) = disc.sqrt() else {
        return Ok(Irreducibility::Irreducible { method: "discriminant is not a square".into() });
    };
    // 4 a2 P = (2 a2 y + a1 - S)(2 a2 y + a1 + S); take the primitive part of one factor.
    let lin = [a1.sub(&root), a2.scale(&int(2))];
    let g = content(&lin);
    let lin: Vec<UniPoly> = lin.iter().map(|u| u.div_rem(&g).0).collect();
    let left = LaurentPoly2::from_coefficients_in(var, &lin, vars);
    let right = p
        .exact_div(&left)?
        .expect("primitive linear factor divides a primitive quadratic with square discriminant");
    Ok(Irreducibility::Factors { factors: vec![left, right], method: "square discriminant".into() })
}
