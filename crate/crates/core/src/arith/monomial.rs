use std::cmp::Ordering;

/// Index of a variable: `X`, `Y`, then declared parameters from index 2 on.
pub type Var = usize;

pub const X: Var = 0;
pub const Y: Var = 1;

/// Number of exponent slots. Two are taken by `x` and `y`.
pub const MAX_VARS: usize = 8;

/// Exponent vector over `(x, y, params...)`.
///
/// Ordered graded-lexicographically with `x > y > params`, so the greatest
/// monomial of a polynomial is its leading monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Monomial::one();
        m.0[v] = exp_u16(e);
        m
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u32 {
        self.0[v] as u32
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Self {
        self.0[v] = exp_u16(e);
        self
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = exp_u16(self.0[i] as u32 + other.0[i] as u32);
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].min(other.0[i]);
        }
        Monomial(out)
    }

    /// Bitmask of variables with a nonzero exponent.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

fn exp_u16(e: u32) -> u16 {
    u16::try_from(e).expect("exponent overflow")
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var(X, 1);
        let y = Monomial::var(Y, 1);
        let y2 = Monomial::var(Y, 2);
        assert!(x > y);
        assert!(y2 > x);
        assert!(x.mul(&y) > y2.with_exp(Y, 1).with_exp(2, 0));
        assert!(Monomial::one() < y);
    }

    #[test]
    fn division() {
        let a = Monomial::var(X, 2).with_exp(Y, 1);
        let b = Monomial::var(X, 1);
        assert_eq!(a.checked_div(&b), Some(Monomial::var(X, 1).with_exp(Y, 1)));
        assert_eq!(b.checked_div(&a), None);
    }
}
