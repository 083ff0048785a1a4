//! Heuristic gcd of integer polynomials by evaluation at a large integer
//! and ξ-adic reconstruction. A reconstructed candidate is accepted only
//! after trial division, so a `Some` result is always the exact gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MAX_VARS};
use super::poly::Poly;
use super::Rat;

const ATTEMPTS: usize = 6;
const MAX_IMAGE_BITS: u64 = 1 << 20;

/// Rough bit size of the integer image after evaluating every variable.
fn image_bits(p: &Poly) -> u64 {
    let xi_bits = max_norm(p).bits() + 2;
    let mut bits = xi_bits;
    for v in 0..MAX_VARS {
        if let Some(d) = p.degree(v) {
            bits = bits.saturating_mul(d as u64 + 1);
        }
    }
    bits
}

/// Primitive gcd of two nonzero polynomials with integer coefficients, or
/// `None` when every evaluation point was unlucky.
pub(crate) fn heu_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    debug_assert!(a.is_integral() && b.is_integral());
    if image_bits(a).min(image_bits(b)) > MAX_IMAGE_BITS {
        return None;
    }
    let g = heu(a, b)?;
    Some(g.normalized())
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

fn int_content(p: &Poly) -> BigInt {
    p.terms().iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

fn heu(a: &Poly, b: &Poly) -> Option<Poly> {
    let support = a.support() | b.support();
    if support == 0 {
        let g = a.terms()[0].1.numer().gcd(b.terms()[0].1.numer());
        return Some(Poly::constant(Rat::from_integer(g)));
    }
    let v = (0..MAX_VARS).rev().find(|v| support >> v & 1 == 1).unwrap();
    let (ca, cb) = (int_content(a), int_content(b));
    let content = ca.gcd(&cb);
    let a = a.scale(&Rat::from_integer(ca).recip());
    let b = b.scale(&Rat::from_integer(cb).recip());
    let norm = max_norm(&a).min(max_norm(&b));
    let mut xi: BigInt = norm * 2 + 29;
    for _ in 0..ATTEMPTS {
        let xr = Rat::from_integer(xi.clone());
        let (ea, eb) = (a.eval_var(v, &xr), b.eval_var(v, &xr));
        if !ea.is_zero() && !eb.is_zero() {
            let image = heu(&ea, &eb)?;
            let g = reconstruct(&image, v, &xi);
            if !g.is_zero() {
                let g = g.scale(&Rat::from_integer(int_content(&g)).recip());
                if g.divides(&a) && g.divides(&b) {
                    return Some(g.scale(&Rat::from_integer(content)));
                }
            }
        }
        xi = &xi * BigInt::from(73794) / BigInt::from(27011) + BigInt::one();
    }
    None
}

/// Reads off the coefficients of `v^i` as the balanced ξ-adic digits of
/// the image.
fn reconstruct(image: &Poly, v: usize, xi: &BigInt) -> Poly {
    let half = xi / 2;
    let mut rest = image.clone();
    let mut terms: Vec<(Monomial, Rat)> = Vec::new();
    let mut i = 0u32;
    while !rest.is_zero() {
        let mut digit: Vec<(Monomial, Rat)> = Vec::new();
        for (m, c) in rest.terms() {
            let mut d = c.numer().mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                digit.push((*m, Rat::from_integer(d)));
            }
        }
        let digit = Poly::from_terms(digit);
        rest = (&rest - &digit).scale(&Rat::from_integer(xi.clone()).recip());
        for (m, c) in digit.terms() {
            terms.push((m.with_exp(v, i), c.clone()));
        }
        i += 1;
        if i > 4096 {
            return Poly::zero();
        }
    }
    Poly::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{X, Y};

    #[test]
    fn recovers_common_factor() {
        let x = Poly::var(X);
        let y = Poly::var(Y);
        let f = &(&(&x * &y) - &Poly::from_int(3)) + &x.pow(2);
        let a = &f * &(&y + &Poly::from_int(7));
        let b = &f * &(&(&x * &x) - &y);
        assert_eq!(heu_gcd(&a, &b), Some(f.normalized()));
        assert_eq!(heu_gcd(&x, &(&y + &Poly::one())), Some(Poly::one()));
    }
}
