//! Rising factorial powers, greatest factorial factorization and borders.
//!
//! Everything here is parameterized by the variable `v` and uses the
//! automorphism `σv` of the given [`OreSpec`]; polynomials are treated as
//! elements of `K(other variables)[v]`.

use crate::arith::{
    prim_gcd_in, split_content_in, squarefree_decomposition, ArithError, Monomial, Poly, RatFunc,
    Var,
};
use crate::ore::OreSpec;

/// `fac(a, i, v) = a·σv(a)···σv^{i−1}(a)`.
pub fn rising_factorial(a: &RatFunc, i: u32, v: Var, spec: &OreSpec) -> RatFunc {
    let mut acc = RatFunc::one();
    let mut cur = a.clone();
    for k in 0..i {
        if k > 0 {
            cur = spec.sigma(&cur, v);
        }
        acc = &acc * &cur;
    }
    acc
}

pub fn rising_factorial_poly(a: &Poly, i: u32, v: Var, spec: &OreSpec) -> Poly {
    let mut acc = Poly::one();
    let mut cur = a.clone();
    for k in 0..i {
        if k > 0 {
            cur = spec.sigma_poly(&cur, v);
        }
        acc = &acc * &cur;
    }
    acc
}

/// `p = content · ∏ fac(p_i, i)`; factors sorted by index, one per index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GffDecomposition {
    pub content: RatFunc,
    pub factors: Vec<(Poly, u32)>,
}

impl GffDecomposition {
    pub fn expand(&self, v: Var, spec: &OreSpec) -> RatFunc {
        self.factors.iter().fold(self.content.clone(), |acc, (p, i)| {
            &acc * &RatFunc::from_poly(rising_factorial_poly(p, *i, v, spec))
        })
    }

    /// `⌊p⌋ = ∏ p_i`.
    pub fn left_border(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (p, _)| &acc * p)
    }

    /// `⌈p⌉ = ∏ σ^{i−1}(p_i)`.
    pub fn right_border(&self, v: Var, spec: &OreSpec) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (p, i)| &acc * &spec.sigma_pow_poly(p, v, i - 1))
    }

    pub fn top_index(&self) -> u32 {
        self.factors.last().map(|f| f.1).unwrap_or(0)
    }
}

/// Greatest factorial factorization of `p` with respect to `σv`.
pub fn gff(p: &Poly, v: Var, spec: &OreSpec) -> Result<GffDecomposition, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let mut factors: Vec<(Poly, u32)> = if spec.kind(v).sigma_is_id() {
        squarefree_decomposition(p, v)?.factors
    } else {
        shift_gff(p, v, spec)?
    };
    factors.sort_by_key(|f| f.1);
    let mut product = Poly::one();
    for (f, i) in &factors {
        product = &product * &rising_factorial_poly(f, *i, v, spec);
    }
    let content = RatFunc::new(p.clone(), product)?;
    assert!(!content.contains_var(v), "gff content depends on the main variable");
    Ok(GffDecomposition { content, factors })
}

fn shift_gff(p: &Poly, v: Var, spec: &OreSpec) -> Result<Vec<(Poly, u32)>, ArithError> {
    let (_, mut rem) = split_content_in(p, v);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    // Under q-shifts `v` is fixed up to a unit, so its powers form a factorial
    // power of any length; they are set aside and placed at their exponent.
    let mut v_power = 0;
    if spec.kind(v).is_q() {
        v_power = rem.terms().iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0);
        if v_power > 0 {
            rem = rem.div_exact(&Poly::term(Monomial::var(v, v_power), crate::arith::rat(1)))?;
        }
    }
    while rem.degree(v).unwrap_or(0) > 0 {
        let deg = rem.degree(v).unwrap();
        let mut g = rem.clone();
        let mut m = 1;
        while m < deg {
            let next = prim_gcd_in(&g, &spec.sigma_inv_assoc(&rem, v, m), v);
            if next.degree(v).unwrap_or(0) == 0 {
                break;
            }
            g = next;
            m += 1;
        }
        let g = g.normalized();
        let f = rising_factorial_poly(&g, m, v, spec);
        let (_, f) = split_content_in(&f, v);
        rem = rem
            .div_exact(&f)
            .map_err(|_| ArithError::Field("gff: maximal factorial power does not divide".into()))?;
        let (_, r) = split_content_in(&rem, v);
        rem = r;
        push_factor(&mut factors, g, m);
    }
    if v_power > 0 {
        push_factor(&mut factors, Poly::var(v), v_power);
    }
    Ok(factors)
}

fn push_factor(factors: &mut Vec<(Poly, u32)>, f: Poly, i: u32) {
    if let Some(slot) = factors.iter_mut().find(|s| s.1 == i) {
        slot.0 = (&slot.0 * &f).normalized();
    } else {
        factors.push((f, i));
    }
}

pub fn left_border(p: &Poly, v: Var, spec: &OreSpec) -> Result<Poly, ArithError> {
    Ok(gff(p, v, spec)?.left_border())
}

pub fn right_border(p: &Poly, v: Var, spec: &OreSpec) -> Result<Poly, ArithError> {
    Ok(gff(p, v, spec)?.right_border(v, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, X, Y};
    use crate::ore::OreKind;

    fn y() -> Poly {
        Poly::var(Y)
    }
    fn yk(k: i64) -> Poly {
        &y() + &Poly::from_int(k)
    }
    fn shift() -> OreSpec {
        OreSpec::with_kinds(OreKind::Shift, OreKind::Shift).unwrap()
    }

    #[test]
    fn rising_factorials() {
        let s = shift();
        assert_eq!(rising_factorial_poly(&y(), 3, Y, &s), &(&y() * &yk(1)) * &yk(2));
        let d = OreSpec::with_kinds(OreKind::Derivation, OreKind::Derivation).unwrap();
        assert_eq!(rising_factorial_poly(&yk(1), 4, Y, &d), yk(1).pow(4));
        let q = OreSpec::with_kinds_q(OreKind::QShift, OreKind::QShift, 2).unwrap();
        let expect = &y().pow(2) * &Poly::var(2);
        assert_eq!(rising_factorial_poly(&y(), 2, Y, &q), expect);
        let r = rising_factorial(&RatFunc::from_poly(y()), 0, Y, &s);
        assert_eq!(r, RatFunc::one());
    }

    #[test]
    fn shift_gff_example() {
        let p = &(&(&y() * &yk(1).pow(2)) * &yk(2)) * &Poly::one();
        let d = gff(&p, Y, &shift()).unwrap();
        assert_eq!(d.factors, vec![(yk(1), 1), (y(), 3)]);
        assert_eq!(d.content, RatFunc::one());
        assert_eq!(d.left_border(), &y() * &yk(1));
        assert_eq!(d.right_border(Y, &shift()), &yk(1) * &yk(2));
    }

    #[test]
    fn constant_and_identity_cases() {
        let d = gff(&Poly::from_int(5), Y, &shift()).unwrap();
        assert!(d.factors.is_empty());
        assert_eq!(d.content, RatFunc::from_int(5));
        let id = OreSpec::with_kinds(OreKind::Derivation, OreKind::Derivation).unwrap();
        let p = &y().pow(2) * &yk(1);
        let d = gff(&p, Y, &id).unwrap();
        assert_eq!(d.factors, vec![(yk(1), 1), (y(), 2)]);
        assert_eq!(d.left_border(), d.right_border(Y, &id));
        assert!(gff(&Poly::zero(), Y, &id).is_err());
    }

    #[test]
    fn q_gff_sets_aside_powers_of_v() {
        let s = OreSpec::with_kinds_q(OreKind::QShift, OreKind::QShift, 2).unwrap();
        let qy1 = &(&Poly::var(2) * &y()) + &Poly::one();
        let p = &(&y().pow(2) * &yk(1)) * &qy1;
        let d = gff(&p, Y, &s).unwrap();
        assert_eq!(d.factors, vec![((&y() * &yk(1)).normalized(), 2)]);
        assert_eq!(d.expand(Y, &s), RatFunc::from_poly(p));
    }

    #[test]
    fn mixed_variables_and_content() {
        let x = Poly::var(X);
        let p = (&(&(&x + &y()) * &(&(&x + &y()) + &Poly::one())) * &x).scale(&rat(3));
        let d = gff(&p, Y, &shift()).unwrap();
        assert_eq!(d.factors, vec![(&x + &y(), 2)]);
        assert_eq!(d.content, RatFunc::from_poly(x.scale(&rat(3))));
    }
}
