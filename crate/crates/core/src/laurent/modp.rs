//! Polynomials over a prime field `F_p`, used to bound factor degrees of
//! rational polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::univariate::UniPoly;

/// Dense polynomial mod `p`, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    /// Reduces a rational polynomial mod `p`; `None` if a denominator or the
    /// leading coefficient vanishes mod `p`.
    pub fn reduce(f: &UniPoly, p: u64) -> Option<Self> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(f.coeffs().len());
        for c in f.coeffs() {
            let den = c.denom().mod_floor(&pb).to_u64()?;
            if den == 0 {
                return None;
            }
            let num = c.numer().mod_floor(&pb).to_u64()?;
            out.push(mul_mod(num, inv_mod(den, p), p));
        }
        let g = ModPoly::new(p, out);
        (g.degree() == f.degree()).then_some(g)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        ModPoly::new(self.p, self.c.iter().map(|&x| mul_mod(x, inv, self.p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let p = self.p;
        ModPoly::new(
            p,
            (0..n)
                .map(|k| {
                    let a = self.c.get(k).copied().unwrap_or(0);
                    let b = other.c.get(k).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::new(self.p, Vec::new());
        }
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        ModPoly::new(self.p, out)
    }

    pub fn rem(&self, m: &Self) -> Self {
        self.div_rem(m).1
    }

    pub fn div_rem(&self, m: &Self) -> (Self, Self) {
        assert!(!m.is_zero());
        let p = self.p;
        let dm = m.c.len() - 1;
        let inv = inv_mod(m.lead(), p);
        let mut r = self.c.clone();
        if r.len() <= dm {
            return (ModPoly::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - dm];
        for k in (dm..r.len()).rev() {
            let f = mul_mod(r[k], inv, p);
            if f == 0 {
                continue;
            }
            q[k - dm] = f;
            for (j, &mc) in m.c.iter().enumerate() {
                let idx = k - dm + j;
                r[idx] = (r[idx] + p - mul_mod(f, mc, p)) % p;
            }
        }
        r.truncate(dm);
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        ModPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &x)| mul_mod(x, k as u64 % p, p))
                .collect(),
        )
    }

    fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    /// `base^e mod m`.
    fn pow_mod(base: &Self, mut e: u64, m: &Self) -> Self {
        let mut acc = ModPoly::new(base.p, vec![1]).rem(m);
        let mut b = base.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, k)` meaning `k` irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(usize, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while let Some(deg) = f.degree() {
            if deg == 0 {
                break;
            }
            d += 1;
            if 2 * d > deg {
                out.push((deg, 1));
                break;
            }
            h = Self::pow_mod(&h, p, &f);
            let g = f.gcd(&h.sub(&x));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                out.push((d, gd / d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        out
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_u64(a, p - 2, p)
}

/// Odd primes below `limit`.
pub fn small_primes(limit: u64) -> Vec<u64> {
    (3..limit).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// Degrees a factor of `f` could have, judging by its factorization mod `p`
/// (bitmask over `0..=deg`). `None` if `p` is unusable for `f`.
pub fn possible_factor_degrees(f: &UniPoly, p: u64) -> Option<Vec<bool>> {
    let g = ModPoly::reduce(f, p)?;
    if !g.is_squarefree() {
        return None;
    }
    let n = g.degree()?;
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for (d, k) in g.distinct_degree() {
        for _ in 0..k {
            for s in (d..=n).rev() {
                if reach[s - d] {
                    reach[s] = true;
                }
            }
        }
    }
    Some(reach)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ddf_of_known_factorization() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1) mod 7: x^2+1 is irreducible mod 7
        let f = ModPoly::new(7, vec![6, 0, 0, 0, 1]);
        assert_eq!(f.distinct_degree(), vec![(1, 2), (2, 1)]);
        // mod 5: x^2 + 1 = (x-2)(x-3)
        let g = ModPoly::new(5, vec![4, 0, 0, 0, 1]);
        assert_eq!(g.distinct_degree(), vec![(1, 4)]);
    }

    #[test]
    fn factor_degrees_mask() {
        let f = UniPoly::from_i64(&[-1, 0, 0, 0, 1]);
        let mask = possible_factor_degrees(&f, 7).unwrap();
        assert_eq!(mask, vec![true, true, true, true, true]);
        // x^4 + 1 over F_3 splits into two quadratics
        let h = UniPoly::from_i64(&[1, 0, 0, 0, 1]);
        assert_eq!(possible_factor_degrees(&h, 3).unwrap(), vec![true, false, true, false, true]);
    }
}
