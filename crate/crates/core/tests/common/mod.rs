#![allow(dead_code)]

use proptest::prelude::*;
use slopesmith::laurent::rational::{int, rat};
use slopesmith::laurent::Var;
use slopesmith::{LaurentPoly2, Rational, Vars};

pub const CASES: u32 = 256;

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, ..ProptestConfig::default() }
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| *q != int(0))
}

pub fn laurent_poly_in(vars: Vars, lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec(((lo..=hi, lo..=hi), small_rational()), 0..=max_terms)
        .prop_map(move |terms| LaurentPoly2::from_terms(terms, vars.clone()))
}

pub fn laurent_poly() -> impl Strategy<Value = LaurentPoly2> {
    laurent_poly_in(Vars::mb(), -3, 3, 6)
}

pub fn nonzero_poly() -> impl Strategy<Value = LaurentPoly2> {
    laurent_poly_in(Vars::ml(), 0, 4, 6).prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials whose Newton polygon has positive area.
pub fn polygonal_poly() -> impl Strategy<Value = LaurentPoly2> {
    nonzero_poly().prop_filter("two-dimensional polygon", |p| {
        slopesmith::newton::compute_polygon(p).is_ok_and(|n| !n.is_degenerate())
    })
}

/// Rational C with numerator and denominator of absolute value at most 10,
/// excluding 0 and ±1.
pub fn interesting_c() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(n, d)| rat(n, d)).prop_filter("C not in {0, 1, -1}", |c| {
        *c != int(0) && *c != int(1) && *c != int(-1)
    })
}

/// Independent factor-support search for `P = A(m) b^2 + B(m) b + D(m)` with
/// `A` and `D` monomials in `m`: returns true if some split of the supports
/// admits rational coefficients.
///
/// A factor of `b`-degree zero divides `A`, so is a power of `m` up to a
/// scalar; it must also divide `B`. Otherwise both factors are linear in `b`,
/// `(α b + β)(γ b + δ)`, and since `αγ = A` and `βδ = D` are monomials, all
/// four are monomials: `α = a m^i`, `γ = g m^(eA - i)`, `β = x m^j`,
/// `δ = d m^(eD - j)`. Matching `αδ + βγ = B` then fixes `ad` and `xg`, and
/// the split is realizable exactly when `(ad)(xg) = (ag)(xd) = A0 D0`.
pub fn brute_force_reducible(p: &LaurentPoly2) -> bool {
    let coeffs = p.coefficients_in(Var::Second);
    assert_eq!(coeffs.len(), 3, "expected b-degree 2");
    let (d_poly, b_poly, a_poly) = (&coeffs[0], &coeffs[1], &coeffs[2]);
    let monomial = |u: &slopesmith::UniPoly| -> (usize, Rational) {
        let nz: Vec<usize> = (0..u.coeffs().len()).filter(|&k| u.coeff(k) != int(0)).collect();
        assert_eq!(nz.len(), 1, "expected a monomial, got {u}");
        (nz[0], u.coeff(nz[0]))
    };
    let (ea, a0) = monomial(a_poly);
    let (ed, d0) = monomial(d_poly);
    // A power of m dividing all three coefficients.
    if ea > 0 && ed > 0 && b_poly.coeff(0) == int(0) {
        return true;
    }
    let b_support: Vec<usize> = (0..b_poly.coeffs().len()).filter(|&k| b_poly.coeff(k) != int(0)).collect();
    for i in 0..=ea {
        for j in 0..=ed {
            // αδ = ad m^(i + eD - j), xg m^(j + eA - i)
            let e1 = i + ed - j;
            let e2 = j + ea - i;
            let ok = if e1 == e2 {
                b_support == vec![e1]
            } else {
                let mut want = vec![e1, e2];
                want.sort();
                let mut have = b_support.clone();
                have.sort();
                // Both products are nonzero, so B needs exactly these two terms.
                have == want && b_poly.coeff(e1) * b_poly.coeff(e2) == &a0 * &d0
            };
            if ok {
                return true;
            }
        }
    }
    false
}
