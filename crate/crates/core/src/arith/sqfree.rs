use super::gcd::{prim_gcd_in, split_content_in};
use super::monomial::Var;
use super::poly::Poly;
use super::ArithError;

/// `p = content * prod factors[k].0 ^ factors[k].1`, factors sorted by
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub content: Poly,
    pub factors: Vec<(Poly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(self.content.clone(), |acc, (f, i)| &acc * &f.pow(*i))
    }

    /// Product of the distinct factors.
    pub fn squarefree_part(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (f, _)| &acc * f)
    }
}

/// Yun's algorithm in `K(other variables)[var]`. Factors are primitive in
/// `var`, pairwise coprime and squarefree; the content is free of `var`.
pub fn squarefree_decomposition(p: &Poly, var: Var) -> Result<SquarefreeDecomposition, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let (_, f) = split_content_in(p, var);
    let mut factors = Vec::new();
    if f.degree(var).unwrap_or(0) > 0 {
        let df = f.derivative(var);
        let a0 = prim_gcd_in(&f, &df, var);
        let mut b = f.div_exact(&a0)?;
        let c = df.div_exact(&a0)?;
        let mut d = &c - &b.derivative(var);
        let mut i = 1u32;
        while b.degree(var).unwrap_or(0) > 0 {
            let a = prim_gcd_in(&b, &d, var);
            b = b.div_exact(&a)?;
            let c = d.div_exact(&a)?;
            d = &c - &b.derivative(var);
            if a.degree(var).unwrap_or(0) > 0 {
                factors.push((a, i));
            }
            i += 1;
        }
    }
    let mut rest = p.clone();
    for (g, i) in &factors {
        rest = rest.div_exact(&g.pow(*i))?;
    }
    Ok(SquarefreeDecomposition { content: rest, factors })
}

/// Squarefree part of `p` in `var`, primitive in `var`.
pub fn squarefree_part(p: &Poly, var: Var) -> Result<Poly, ArithError> {
    Ok(squarefree_decomposition(p, var)?.squarefree_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{X, Y};

    fn y() -> Poly {
        Poly::var(Y)
    }

    #[test]
    fn simple_cases() {
        let p = &y().pow(2) * &(&y() + &Poly::one());
        let d = squarefree_decomposition(&p, Y).unwrap();
        assert_eq!(d.factors, vec![(&y() + &Poly::one(), 1), (y(), 2)]);
        let q = &y() + &Poly::from_int(3);
        assert_eq!(squarefree_decomposition(&q, Y).unwrap().factors, vec![(q.clone(), 1)]);
    }

    #[test]
    fn parametric_factor() {
        let f = &y().pow(2) - &Poly::var(X);
        let p = &f.pow(3) * &(&y() + &Poly::one());
        let d = squarefree_decomposition(&p, Y).unwrap();
        assert_eq!(d.factors, vec![(&y() + &Poly::one(), 1), (f, 3)]);
        assert_eq!(d.expand(), p);
    }

    #[test]
    fn content_is_kept_apart() {
        let p = (&Poly::var(X).scale(&crate::arith::rat(2)) * &y().pow(2)).scale(&crate::arith::rat(-1));
        let d = squarefree_decomposition(&p, Y).unwrap();
        assert_eq!(d.factors, vec![(y(), 2)]);
        assert_eq!(d.expand(), p);
        assert!(squarefree_decomposition(&Poly::zero(), Y).is_err());
    }
}
