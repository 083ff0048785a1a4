use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{gcd, monomial_content};
use super::monomial::Var;
use super::poly::Poly;
use super::{ArithError, Rat};

/// Reduced quotient of polynomials.
///
/// The denominator is primitive with integer coefficients and a positive
/// leading coefficient, and shares no nonconstant factor with the numerator.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Poly::from_int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// Reduces `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(c) = den.constant_value() {
            return Ok(Self::from_poly(num.scale(&c.recip())));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        Ok(Self::normalize_unit(num, den))
    }

    /// Reduces `num / den` when every common factor is known to divide
    /// `candidates`.
    pub fn new_cancelling(num: Poly, den: Poly, candidates: &Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (mut num, mut den) = (num, den);
        let mut common = candidates.clone();
        while !common.is_constant() {
            let h = gcd(&num, &common);
            if h.is_one() {
                break;
            }
            num = num.div_exact(&h)?;
            den = den.div_exact(&h)?;
            common = gcd(&h, &den);
        }
        Ok(Self::normalize_unit(num, den))
    }

    /// Like [`RatFunc::new`] for operands already known to be coprime.
    fn normalize_unit(num: Poly, den: Poly) -> Self {
        let (unit, den) = den.primitive_split();
        RatFunc { num: num.scale(&unit.recip()), den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_poly() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn support(&self) -> u32 {
        self.num.support() | self.den.support()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// True when the denominator is free of `v`, i.e. this is a polynomial
    /// in `v` over the field of the other variables.
    pub fn is_poly_in(&self, v: Var) -> bool {
        !self.den.contains_var(v)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Applies a ring map to numerator and denominator and re-reduces.
    pub fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> RatFunc {
        RatFunc::new(f(&self.num), f(&self.den)).expect("ring map keeps denominators nonzero")
    }

    /// Same as [`RatFunc::map`] for automorphisms, which preserve coprimality.
    pub fn map_automorphism<F: Fn(&Poly) -> Poly>(&self, f: F) -> RatFunc {
        let den = f(&self.den);
        assert!(!den.is_zero(), "automorphism sent a denominator to zero");
        Self::normalize_unit(f(&self.num), den)
    }

    /// Same as [`RatFunc::map`] for automorphisms that may introduce a
    /// common monomial factor, such as `v -> q·v`.
    pub fn map_automorphism_monomial<F: Fn(&Poly) -> Poly>(&self, f: F) -> RatFunc {
        let (num, den) = (f(&self.num), f(&self.den));
        assert!(!den.is_zero(), "automorphism sent a denominator to zero");
        let m = monomial_content(&num).gcd(&monomial_content(&den));
        if m.is_one() {
            return Self::normalize_unit(num, den);
        }
        let strip = |p: &Poly| {
            Poly::from_terms(p.terms().iter().map(|(t, c)| (t.checked_div(&m).unwrap(), c.clone())))
        };
        Self::normalize_unit(strip(&num), strip(&den))
    }

    /// Degree in `v` of the numerator minus the denominator degree.
    pub fn degree_in(&self, v: Var) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.num.deg(v) - self.den.deg(v)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            return RatFunc::normalize_unit(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RatFunc::normalize_unit(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &(&a * &b) * &g;
        // Only factors of `g` can cancel.
        RatFunc::new_cancelling(num, den, &g).unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross cancellation keeps both products reduced.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFunc::normalize_unit(&n1 * &n2, &d1 * &d2)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                (&self).$f(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        (&self).neg()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}
