use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var, MAX_VARS};
use super::{ArithError, Rat};

/// Sparse multivariate polynomial over the rationals in `x`, `y` and the
/// declared parameters.
///
/// Terms are kept sorted by decreasing monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rat)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, Rat> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rat>) -> Self {
        let mut terms: Vec<(Monomial, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rat)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rat::zero)
    }

    /// Degree in `v`; `None` for the zero polynomial (degree −∞).
    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    /// Degree in `v` as a signed integer with `i64::MIN` standing in for −∞.
    pub fn deg(&self, v: Var) -> i64 {
        self.degree(v).map(i64::from).unwrap_or(i64::MIN)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.total_degree())
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.support() & (1 << v) != 0
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`; fails with `InexactDivision` if `d` does
    /// not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, ArithError> {
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let (lm, lc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = m.checked_div(&lm).ok_or(ArithError::InexactDivision)?;
            let qc = c / &lc;
            rem = rem.sub_scaled_term(d, &qm, &qc);
            quot.push((qm, qc));
        }
        Ok(Poly { terms: quot })
    }

    /// `self - c*m*d`, merging sorted term lists.
    fn sub_scaled_term(&self, d: &Poly, m: &Monomial, c: &Rat) -> Poly {
        let shifted = d.terms.iter().map(|(n, a)| (n.mul(m), -(a * c)));
        merge_add(self.terms.iter().cloned(), shifted)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_exact(self).is_ok()
    }

    /// Coefficients of `self` viewed as a polynomial in `v`, indexed by power.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let deg = match self.degree(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.with_exp(v, 0), c.clone()));
        }
        // Removing one variable keeps the relative order within a bucket.
        buckets.into_iter().map(|terms| Poly { terms }).collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().flat_map(|(k, c)| {
            c.terms
                .iter()
                .map(move |(m, a)| (m.with_exp(v, k as u32 + m.exp(v)), a.clone()))
        }))
    }

    /// Leading coefficient with respect to `v`, a polynomial in the other variables.
    pub fn lc_in(&self, v: Var) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_else(Poly::zero)
    }

    pub fn derivative(&self, v: Var) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.exp(v) > 0).map(|(m, c)| {
            let e = m.exp(v);
            (m.with_exp(v, e - 1), c * Rat::from_integer(BigInt::from(e)))
        }))
    }

    /// Substitutes `v -> v + k`.
    pub fn shift_var(&self, v: Var, k: i64) -> Poly {
        if k == 0 || !self.contains_var(v) {
            return self.clone();
        }
        // Taylor shift on the coefficient list in `v`.
        let mut coeffs = self.coeffs_in(v);
        let kk = Rat::from_integer(BigInt::from(k));
        let n = coeffs.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let add = coeffs[j + 1].scale(&kk);
                coeffs[j] = &coeffs[j] + &add;
            }
        }
        Poly::from_coeffs_in(v, &coeffs)
    }

    /// Substitutes `v -> q^j * v` for the parameter `q`, `j >= 0`.
    pub fn q_scale_var(&self, v: Var, q: Var, j: u32) -> Poly {
        if j == 0 {
            return self.clone();
        }
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(v) * j;
            (m.with_exp(q, m.exp(q) + e), c.clone())
        }))
    }

    /// Substitutes `v -> c` for a rational constant.
    pub fn eval_var(&self, v: Var, c: &Rat) -> Poly {
        let coeffs = self.coeffs_in(v);
        let mut acc = Poly::zero();
        for coeff in coeffs.iter().rev() {
            acc = &acc.scale(c) + coeff;
        }
        acc
    }

    /// Substitutes polynomial values for every variable slot that is `Some`.
    pub fn substitute(&self, values: &[Option<Poly>; MAX_VARS]) -> Poly {
        let mut acc = Poly::zero();
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut rest = Monomial::one();
            for (v, val) in values.iter().enumerate() {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                match val {
                    Some(p) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                        t = &t * &pw;
                    }
                    None => rest = rest.with_exp(v, e),
                }
            }
            acc = &acc + &t.mul_term(&rest, &Rat::one());
        }
        acc
    }

    /// Splits off the rational content: `self = c * p` with `p` having
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn primitive_split(&self) -> (Rat, Poly) {
        if self.is_zero() {
            return (Rat::zero(), Poly::zero());
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        if self.terms[0].1.is_negative() {
            num = -num;
        }
        let content = Rat::new(num, den);
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        self.primitive_split().1
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Evaluates at rational points; `values[v]` is used for each variable.
    pub fn eval_all(&self, values: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, val) in values.iter().enumerate().take(MAX_VARS) {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow::pow(val.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }
}

impl Poly {
    /// Writes the polynomial with explicit `*` between factors, using
    /// `name` for variable names. The output re-parses to the same value.
    pub fn write_with(&self, out: &mut String, name: &dyn Fn(Var) -> String) {
        if self.terms.is_empty() {
            out.push('0');
            return;
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for v in 0..MAX_VARS {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(name(v)),
                    e => factors.push(format!("{}^{}", name(v), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
    }

    pub fn to_string_with(&self, name: &dyn Fn(Var) -> String) -> String {
        let mut s = String::new();
        self.write_with(&mut s, name);
        s
    }
}

/// Default variable names used by `Debug`.
pub fn default_var_name(v: Var) -> String {
    match v {
        0 => "x".to_string(),
        1 => "y".to_string(),
        k => format!("t{}", k - 2),
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_name))
    }
}

fn merge_add<A, B>(a: A, b: B) -> Poly
where
    A: Iterator<Item = (Monomial, Rat)>,
    B: Iterator<Item = (Monomial, Rat)>,
{
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out = Vec::new();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => std::cmp::Ordering::Greater,
            (None, Some(_)) => std::cmp::Ordering::Less,
            (Some(x), Some(y)) => x.0.cmp(&y.0),
        };
        match ord {
            std::cmp::Ordering::Greater => out.push(a.next().unwrap()),
            std::cmp::Ordering::Less => out.push(b.next().unwrap()),
            std::cmp::Ordering::Equal => {
                let (m, c1) = a.next().unwrap();
                let (_, c2) = b.next().unwrap();
                let c = c1 + c2;
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    Poly { terms: out }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge_add(self.terms.iter().cloned(), rhs.terms.iter().cloned())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge_add(
            self.terms.iter().cloned(),
            rhs.terms.iter().map(|(m, c)| (*m, -c)),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(Rat::zero);
                *e += c1 * c2;
            }
        }
        Poly::from_map(acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        (&self).neg()
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::from_int(c)
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}
