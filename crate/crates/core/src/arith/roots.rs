use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::Var;
use super::poly::Poly;
use super::Rat;

/// Divisors above this size are not enumerated; such roots are missed.
const MAX_TRIAL: u64 = 1 << 40;

/// Distinct rational roots of a univariate polynomial in `v` with rational
/// coefficients, in increasing order.
pub fn rational_roots(p: &Poly, v: Var) -> Vec<Rat> {
    assert!(
        p.support() & !(1u32 << v) == 0,
        "rational_roots expects a univariate polynomial"
    );
    let p = p.normalized();
    let coeffs: Vec<BigInt> = {
        let cs = p.coeffs_in(v);
        cs.iter()
            .map(|c| c.constant_value().map(|r| r.to_integer()).unwrap_or_else(BigInt::zero))
            .collect()
    };
    let mut roots = Vec::new();
    let low = match coeffs.iter().position(|c| !c.is_zero()) {
        Some(k) => k,
        None => return roots,
    };
    if low > 0 {
        roots.push(Rat::zero());
    }
    let trimmed = &coeffs[low..];
    if trimmed.len() <= 1 {
        return roots;
    }
    let (a0, an) = (trimmed[0].abs(), trimmed[trimmed.len() - 1].abs());
    let (Some(nums), Some(dens)) = (divisors(&a0), divisors(&an)) else {
        return roots;
    };
    for n in &nums {
        for d in &dens {
            if !n.gcd(d).is_one() {
                continue;
            }
            for sign in [1i32, -1] {
                let cand = Rat::new(n * BigInt::from(sign), d.clone());
                if eval(trimmed, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn eval(coeffs: &[BigInt], t: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * t + Rat::from_integer(c.clone()))
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let m = n.to_u64()?;
    if m > MAX_TRIAL {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(BigInt::from(d));
            if d * d != m {
                large.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}
