//! Ore algebras `K(x,y)[∂x,∂y]` with `∂v·a = σv(a)·∂v + δv(a)`, and
//! operators with rational-function coefficients written on the left.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::arith::{rat, Monomial, Poly, Rat, RatFunc, Var, X, Y};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OreKind {
    /// `σ = id`, `δ = d/dv`.
    Derivation,
    /// `σ(v) = v + 1`, `δ = 0`.
    Shift,
    /// `σ(v) = v + 1`, `δ = σ − id`.
    ForwardDifference,
    /// `σ(v) = q·v`, `δ = 0`.
    QShift,
    /// `σ(v) = q·v`, `δ = σ − id`.
    QDifference,
}

impl OreKind {
    pub const ALL: [OreKind; 5] = [
        OreKind::Derivation,
        OreKind::Shift,
        OreKind::ForwardDifference,
        OreKind::QShift,
        OreKind::QDifference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OreKind::Derivation => "derivation",
            OreKind::Shift => "shift",
            OreKind::ForwardDifference => "forward_difference",
            OreKind::QShift => "q_shift",
            OreKind::QDifference => "q_difference",
        }
    }

    pub fn parse(s: &str) -> Option<OreKind> {
        OreKind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn sigma_is_id(self) -> bool {
        self == OreKind::Derivation
    }

    pub fn delta_is_zero(self) -> bool {
        matches!(self, OreKind::Shift | OreKind::QShift)
    }

    pub fn is_q(self) -> bool {
        matches!(self, OreKind::QShift | OreKind::QDifference)
    }

    /// `δ = σ − id`.
    pub fn is_difference(self) -> bool {
        matches!(self, OreKind::ForwardDifference | OreKind::QDifference)
    }

    pub fn default_action(self) -> Action {
        match self {
            OreKind::Shift | OreKind::QShift => Action::Sigma,
            _ => Action::Delta,
        }
    }
}

/// How `∂v` acts on rational functions: through `δv` or through `σv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Delta,
    Sigma,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Delta => "delta",
            Action::Sigma => "sigma",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarAlgebra {
    pub kind: OreKind,
    pub action: Action,
}

impl VarAlgebra {
    pub fn new(kind: OreKind) -> Self {
        VarAlgebra { kind, action: kind.default_action() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OreError {
    #[error("q-kinds need a parameter q declared in the field")]
    MissingQ,
    #[error("the sigma action is only a module action when delta is zero ({0} has nonzero delta)")]
    InvalidAction(&'static str),
    #[error("unknown Ore kind `{0}`")]
    UnknownKind(String),
}

/// The pair of commuting actions `(σx, δx)`, `(σy, δy)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OreSpec {
    pub x: VarAlgebra,
    pub y: VarAlgebra,
    /// Variable slot of the parameter `q` for q-kinds.
    pub q: Option<Var>,
}

impl OreSpec {
    pub fn new(x: VarAlgebra, y: VarAlgebra, q: Option<Var>) -> Result<Self, OreError> {
        for a in [x, y] {
            if a.kind.is_q() && q.is_none() {
                return Err(OreError::MissingQ);
            }
            if a.action == Action::Sigma && !a.kind.delta_is_zero() {
                return Err(OreError::InvalidAction(a.kind.name()));
            }
        }
        Ok(OreSpec { x, y, q })
    }

    /// Spec with default actions and no q parameter.
    pub fn with_kinds(x: OreKind, y: OreKind) -> Result<Self, OreError> {
        Self::new(VarAlgebra::new(x), VarAlgebra::new(y), None)
    }

    pub fn with_kinds_q(x: OreKind, y: OreKind, q: Var) -> Result<Self, OreError> {
        Self::new(VarAlgebra::new(x), VarAlgebra::new(y), Some(q))
    }

    pub fn alg(&self, v: Var) -> &VarAlgebra {
        match v {
            X => &self.x,
            Y => &self.y,
            _ => panic!("no Ore structure on variable {v}"),
        }
    }

    pub fn kind(&self, v: Var) -> OreKind {
        self.alg(v).kind
    }

    fn q_var(&self) -> Var {
        self.q.expect("q declared")
    }

    /// `σv^j(p)` for `j ≥ 0`.
    pub fn sigma_pow_poly(&self, p: &Poly, v: Var, j: u32) -> Poly {
        match self.kind(v) {
            OreKind::Derivation => p.clone(),
            OreKind::Shift | OreKind::ForwardDifference => p.shift_var(v, j as i64),
            OreKind::QShift | OreKind::QDifference => p.q_scale_var(v, self.q_var(), j),
        }
    }

    pub fn sigma_poly(&self, p: &Poly, v: Var) -> Poly {
        self.sigma_pow_poly(p, v, 1)
    }

    /// A polynomial associate of `σv^{-j}(p)`: equal to it up to a factor
    /// in `K` (a power of `q` in the q-case, one otherwise).
    pub fn sigma_inv_assoc(&self, p: &Poly, v: Var, j: u32) -> Poly {
        match self.kind(v) {
            OreKind::Derivation => p.clone(),
            OreKind::Shift | OreKind::ForwardDifference => p.shift_var(v, -(j as i64)),
            OreKind::QShift | OreKind::QDifference => {
                let q = self.q_var();
                let d = p.degree(v).unwrap_or(0);
                Poly::from_terms(p.terms().iter().map(|(m, c)| {
                    let extra = j * (d - m.exp(v));
                    (m.with_exp(q, m.exp(q) + extra), c.clone())
                }))
            }
        }
    }

    /// `σv^{-j}(p)` exactly.
    pub fn sigma_inv_poly(&self, p: &Poly, v: Var, j: u32) -> RatFunc {
        let assoc = self.sigma_inv_assoc(p, v, j);
        if self.kind(v).is_q() {
            let d = p.degree(v).unwrap_or(0);
            let qpow = Poly::term(Monomial::var(self.q_var(), j * d), rat(1));
            RatFunc::new(assoc, qpow).expect("q is nonzero")
        } else {
            RatFunc::from_poly(assoc)
        }
    }

    /// `σv^j(f)` for any integer `j`.
    pub fn sigma_pow(&self, f: &RatFunc, v: Var, j: i64) -> RatFunc {
        if j == 0 || self.kind(v).sigma_is_id() || !f.contains_var(v) {
            return f.clone();
        }
        if j > 0 {
            let step = |p: &Poly| self.sigma_pow_poly(p, v, j as u32);
            // q-scaling can create common powers of q, which are units in K.
            return if self.kind(v).is_q() {
                f.map_automorphism_monomial(step)
            } else {
                f.map_automorphism(step)
            };
        }
        let j = (-j) as u32;
        let num = self.sigma_inv_poly(f.num(), v, j);
        let den = self.sigma_inv_poly(f.den(), v, j);
        num.div(&den).expect("automorphism keeps denominators nonzero")
    }

    pub fn sigma(&self, f: &RatFunc, v: Var) -> RatFunc {
        self.sigma_pow(f, v, 1)
    }

    pub fn sigma_inv(&self, f: &RatFunc, v: Var) -> RatFunc {
        self.sigma_pow(f, v, -1)
    }

    pub fn delta_poly(&self, p: &Poly, v: Var) -> Poly {
        match self.kind(v) {
            OreKind::Derivation => p.derivative(v),
            OreKind::Shift | OreKind::QShift => Poly::zero(),
            OreKind::ForwardDifference | OreKind::QDifference => &self.sigma_poly(p, v) - p,
        }
    }

    pub fn delta(&self, f: &RatFunc, v: Var) -> RatFunc {
        if !f.contains_var(v) {
            return RatFunc::zero();
        }
        match self.kind(v) {
            OreKind::Derivation => {
                if let Some(p) = f.as_poly() {
                    return RatFunc::from_poly(p.derivative(v));
                }
                let (a, b) = (f.num(), f.den());
                let num = &(&a.derivative(v) * b) - &(a * &b.derivative(v));
                RatFunc::new_cancelling(num, b * b, b).expect("nonzero denominator")
            }
            OreKind::Shift | OreKind::QShift => RatFunc::zero(),
            OreKind::ForwardDifference | OreKind::QDifference => &self.sigma(f, v) - f,
        }
    }

    /// The action of `∂v` on the rational-function module.
    pub fn act(&self, f: &RatFunc, v: Var) -> RatFunc {
        match self.alg(v).action {
            Action::Delta => self.delta(f, v),
            Action::Sigma => self.sigma(f, v),
        }
    }

    /// The degree assumptions `deg_v(σv p) = deg_v p`, `deg_w(σv p) = deg_w p`,
    /// `deg_v(δv p) ≤ deg_v p − 1`, `deg_w(δv p) ≤ deg_w p`, checked on `p`.
    pub fn degree_assumptions_hold_on(&self, p: &Poly) -> bool {
        [(X, Y), (Y, X)].into_iter().all(|(v, w)| {
            let s = self.sigma_poly(p, v);
            let d = self.delta_poly(p, v);
            s.deg(v) == p.deg(v)
                && s.deg(w) == p.deg(w)
                && (d.is_zero() || d.deg(v) < p.deg(v))
                && (d.is_zero() || d.deg(w) <= p.deg(w))
        })
    }
}

/// `Σ c_{i,j} ∂x^i ∂y^j` with coefficients on the left.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OreOperator {
    terms: BTreeMap<(u32, u32), RatFunc>,
}

impl OreOperator {
    pub fn zero() -> Self {
        OreOperator::default()
    }

    pub fn one() -> Self {
        Self::from_coeff(RatFunc::one())
    }

    pub fn from_coeff(c: RatFunc) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        OreOperator { terms }
    }

    pub fn dx() -> Self {
        Self::monomial(1, 0, RatFunc::one())
    }

    pub fn dy() -> Self {
        Self::monomial(0, 1, RatFunc::one())
    }

    /// Operator in `∂x` only from coefficients `t_0, t_1, ...`.
    pub fn from_dx_coeffs(coeffs: &[RatFunc]) -> Self {
        let mut op = OreOperator::zero();
        for (i, c) in coeffs.iter().enumerate() {
            op.add_term(i as u32, 0, c.clone());
        }
        op
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> RatFunc {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ord_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn ord_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// True when no `∂y` occurs.
    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    /// Coefficients of `∂x^0 .. ∂x^ord` for an operator free of `∂y`.
    pub fn dx_coeffs(&self) -> Vec<RatFunc> {
        let ord = self.ord_x().unwrap_or(0);
        (0..=ord).map(|i| self.coeff(i, 0)).collect()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(RatFunc::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// `c·self` for a coefficient `c`.
    pub fn scale_left(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return OreOperator::zero();
        }
        OreOperator {
            terms: self.terms.iter().map(|(k, a)| (*k, c * a)).collect(),
        }
    }

    /// `∂v·self`.
    fn d_times(&self, v: Var, spec: &OreSpec) -> Self {
        let mut out = OreOperator::zero();
        for (&(i, j), c) in &self.terms {
            let (ni, nj) = if v == X { (i + 1, j) } else { (i, j + 1) };
            out.add_term(ni, nj, spec.sigma(c, v));
            out.add_term(i, j, spec.delta(c, v));
        }
        out
    }

    pub fn mul(&self, rhs: &OreOperator, spec: &OreSpec) -> OreOperator {
        op_multiply(self, rhs, spec)
    }

    pub fn apply_rat(&self, f: &RatFunc, spec: &OreSpec) -> RatFunc {
        op_apply_rat(self, f, spec)
    }
}

/// Product in the Ore algebra, by repeated use of `∂v·a = σv(a)∂v + δv(a)`.
pub fn op_multiply(a: &OreOperator, b: &OreOperator, spec: &OreSpec) -> OreOperator {
    let max_i = a.ord_x().unwrap_or(0);
    let max_j = a.ord_y().unwrap_or(0);
    // ∂x^i ∂y^j · b, computed row by row.
    let mut dy_pows = vec![b.clone()];
    for j in 1..=max_j {
        let next = dy_pows[j as usize - 1].d_times(Y, spec);
        dy_pows.push(next);
    }
    let mut out = OreOperator::zero();
    for (j, base) in dy_pows.iter().enumerate() {
        let mut cur = base.clone();
        for i in 0..=max_i {
            if i > 0 {
                cur = cur.d_times(X, spec);
            }
            if let Some(c) = a.terms.get(&(i, j as u32)) {
                for (&k, t) in &cur.terms {
                    out.add_term(k.0, k.1, c * t);
                }
            }
        }
    }
    out
}

/// Applies the operator to a rational function using the configured actions.
pub fn op_apply_rat(a: &OreOperator, f: &RatFunc, spec: &OreSpec) -> RatFunc {
    let max_i = a.ord_x().unwrap_or(0);
    let max_j = a.ord_y().unwrap_or(0);
    let mut acc = RatFunc::zero();
    let mut col = f.clone();
    for j in 0..=max_j {
        if j > 0 {
            col = spec.act(&col, Y);
        }
        let mut cur = col.clone();
        for i in 0..=max_i {
            if i > 0 {
                cur = spec.act(&cur, X);
            }
            if let Some(c) = a.terms.get(&(i, j)) {
                acc = &acc + &(c * &cur);
            }
        }
    }
    acc
}

impl Add for &OreOperator {
    type Output = OreOperator;
    fn add(self, rhs: &OreOperator) -> OreOperator {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Neg for &OreOperator {
    type Output = OreOperator;
    fn neg(self) -> OreOperator {
        OreOperator {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &OreOperator {
    type Output = OreOperator;
    fn sub(self, rhs: &OreOperator) -> OreOperator {
        self + &(-rhs)
    }
}

impl fmt::Debug for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| format!("({c:?})*Dx^{i}*Dy^{j}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ_{k≤i} binom(i, k)·d^k`, i.e. `(d + 1)^i` for an operator `d` commuting
/// with the constant 1. Used to rewrite operators between `σ` and `σ − id`.
pub fn binomial_row(i: u32) -> Vec<Rat> {
    let mut row = vec![rat(1)];
    for _ in 0..i {
        let mut next = vec![rat(1); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    row
}
