//! ∂-finite systems given by multiplication matrices.
//!
//! Elements of the quotient module are row vectors `w` over `K(x,y)` with
//! `∂x·w = σx(w)·M + δx(w)` and `∂y·w = σy(w)·N + δy(w)`, where
//! `M = U/u` and `N = V/v`.

use crate::arith::{rat, squarefree_part, FieldSpec, Poly, RatFunc, Var, X, Y};
use crate::gff::rising_factorial_poly;
use crate::ore::{OreKind, OreOperator, OreSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("{0}")]
    Shape(String),
    #[error("validation failed ({check}): {detail}")]
    Validation { check: &'static str, detail: String },
}

/// Outcome of one named validation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub type Vector = Vec<RatFunc>;

#[derive(Clone, Debug)]
pub struct DFiniteSystem {
    pub field: FieldSpec,
    pub spec: OreSpec,
    pub n: usize,
    pub u: Poly,
    pub big_u: Vec<Vec<Poly>>,
    pub v: Poly,
    pub big_v: Vec<Vec<Poly>>,
    pub e: Vec<Poly>,
    pub lifts: Option<Vec<OreOperator>>,
    m: Vec<Vec<RatFunc>>,
    nmat: Vec<Vec<RatFunc>>,
}

impl DFiniteSystem {
    /// Builds and validates a system. `e` is taken as rational functions so
    /// that a non-polynomial `e` is reported as an admissibility failure.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: FieldSpec,
        spec: OreSpec,
        u: Poly,
        big_u: Vec<Vec<Poly>>,
        v: Poly,
        big_v: Vec<Vec<Poly>>,
        e: Vec<RatFunc>,
        lifts: Option<Vec<OreOperator>>,
    ) -> Result<Self, SystemError> {
        let n = e.len();
        if n == 0 {
            return Err(SystemError::Shape("dimension must be at least 1".into()));
        }
        for (name, mat) in [("U", &big_u), ("V", &big_v)] {
            if mat.len() != n || mat.iter().any(|r| r.len() != n) {
                return Err(SystemError::Shape(format!("{name} must be {n}x{n}")));
            }
        }
        if lifts.as_ref().is_some_and(|l| l.len() != n) {
            return Err(SystemError::Shape(format!("expected {n} lifts")));
        }
        if u.is_zero() || v.is_zero() {
            return Err(SystemError::Validation {
                check: "denominators",
                detail: "u and v must be nonzero".into(),
            });
        }
        if let Some(bad) = e.iter().position(|c| !c.is_poly()) {
            return Err(SystemError::Validation {
                check: "admissibility",
                detail: format!("coordinate {} of e is not a polynomial", bad + 1),
            });
        }
        let e: Vec<Poly> = e.into_iter().map(|c| c.into_parts().0).collect();
        let (u, big_u) = strip_content(u, big_u);
        let (v, big_v) = strip_content(v, big_v);
        let m = ratmat(&big_u, &u);
        let nmat = ratmat(&big_v, &v);
        let sys = DFiniteSystem { field, spec, n, u, big_u, v, big_v, e, lifts, m, nmat };
        let report = sys.validate();
        if let Some(f) = report.first_failure() {
            return Err(SystemError::Validation { check: f.name, detail: f.detail.clone() });
        }
        Ok(sys)
    }

    /// `M` (for `x`) or `N` (for `y`) as rational functions.
    pub fn matrix(&self, var: Var) -> &Vec<Vec<RatFunc>> {
        if var == X {
            &self.m
        } else {
            &self.nmat
        }
    }

    pub fn e_vector(&self) -> Vector {
        self.e.iter().cloned().map(RatFunc::from_poly).collect()
    }

    pub fn unit(&self, i: usize) -> Vector {
        (0..self.n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()
    }

    /// `∂var·w = σ(w)·M + δ(w)`.
    pub fn vector_apply(&self, w: &[RatFunc], var: Var) -> Vector {
        assert_eq!(w.len(), self.n, "vector length must match the dimension");
        let mat = self.matrix(var);
        let sw: Vec<RatFunc> = w.iter().map(|c| self.spec.sigma(c, var)).collect();
        (0..self.n)
            .map(|j| {
                let mut acc = self.spec.delta(&w[j], var);
                for (i, s) in sw.iter().enumerate() {
                    if !s.is_zero() && !mat[i][j].is_zero() {
                        acc = &acc + &(s * &mat[i][j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn vector_apply_dx(&self, w: &[RatFunc]) -> Vector {
        self.vector_apply(w, X)
    }

    pub fn vector_apply_dy(&self, w: &[RatFunc]) -> Vector {
        self.vector_apply(w, Y)
    }

    /// `P·w` for an operator `P = Σ c_{i,j} ∂x^i ∂y^j`.
    pub fn apply_operator(&self, op: &OreOperator, w: &[RatFunc]) -> Vector {
        let max_i = op.ord_x().unwrap_or(0);
        let max_j = op.ord_y().unwrap_or(0);
        let mut acc = vec![RatFunc::zero(); self.n];
        let mut col = w.to_vec();
        for j in 0..=max_j {
            if j > 0 {
                col = self.vector_apply_dy(&col);
            }
            let mut cur = col.clone();
            for i in 0..=max_i {
                if i > 0 {
                    cur = self.vector_apply_dx(&cur);
                }
                if let Some(c) = op.terms().get(&(i, j)) {
                    for (a, b) in acc.iter_mut().zip(&cur) {
                        *a = &*a + &(c * b);
                    }
                }
            }
        }
        acc
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let e_zero = self.e.iter().all(Poly::is_zero);
        checks.push(CheckResult {
            name: "admissibility",
            passed: !e_zero,
            detail: if e_zero { "e is the zero vector".into() } else { String::new() },
        });
        let mut bad = None;
        for j in 0..self.n {
            let unit = self.unit(j);
            let xy = self.vector_apply_dx(&self.vector_apply_dy(&unit));
            let yx = self.vector_apply_dy(&self.vector_apply_dx(&unit));
            if xy != yx {
                bad = Some(j);
                break;
            }
        }
        checks.push(CheckResult {
            name: "compatibility",
            passed: bad.is_none(),
            detail: bad
                .map(|j| format!("DxDy - DyDx does not vanish on basis vector {}", j + 1))
                .unwrap_or_default(),
        });
        if let Some(lifts) = &self.lifts {
            let e = self.e_vector();
            let bad = (0..self.n).find(|&i| self.apply_operator(&lifts[i], &e) != self.unit(i));
            checks.push(CheckResult {
                name: "lifts",
                passed: bad.is_none(),
                detail: bad
                    .map(|i| format!("lift {} applied to 1 is not basis vector {}", i + 1, i + 1))
                    .unwrap_or_default(),
            });
        }
        if self.spec.kind(X) == OreKind::Derivation && self.spec.kind(Y) == OreKind::Derivation {
            let ok = self.differential_denominators_consistent();
            checks.push(CheckResult {
                name: "differential_denominators",
                passed: ok,
                detail: if ok {
                    String::new()
                } else {
                    "squarefree part of u does not divide that of v".into()
                },
            });
        }
        ValidationReport { checks }
    }

    /// In the purely differential case the squarefree part (in `y`) of the
    /// reduced denominator of `M` divides that of `N`.
    fn differential_denominators_consistent(&self) -> bool {
        let du = effective_denominator(&self.m);
        let dv = effective_denominator(&self.nmat);
        let su = squarefree_part(&du, Y).expect("nonzero");
        let sv = squarefree_part(&dv, Y).expect("nonzero");
        su.divides(&sv)
    }

    pub fn deg_y_e(&self) -> i64 {
        self.e.iter().map(|p| p.deg(Y)).max().unwrap_or(i64::MIN)
    }

    /// `γ = max{deg_y(u), deg_y(U)}`.
    pub fn gamma(&self) -> i64 {
        let du = self.big_u.iter().flatten().map(|p| p.deg(Y)).max().unwrap_or(i64::MIN);
        self.u.deg(Y).max(du)
    }

    /// `max{deg_y(v) − 1, deg_y(V)}` with `deg 0 = −∞`.
    pub fn v_excess(&self) -> i64 {
        let dv = self.big_v.iter().flatten().map(|p| p.deg(Y)).max().unwrap_or(i64::MIN);
        (self.v.deg(Y) - 1).max(dv)
    }

    /// Ore spec and `V` rewritten so that a `q_difference` in `y` becomes a
    /// `q_shift`: with `∂' = ∂y + 1` the matrix becomes `N + I`.
    pub fn with_y_shift_form(&self) -> DFiniteSystem {
        if self.spec.kind(Y) != OreKind::QDifference {
            return self.clone();
        }
        let mut spec = self.spec;
        spec.y = crate::ore::VarAlgebra::new(OreKind::QShift);
        let mut big_v = self.big_v.clone();
        for (i, row) in big_v.iter_mut().enumerate() {
            row[i] = &row[i] + &self.v;
        }
        let nmat = ratmat(&big_v, &self.v);
        DFiniteSystem { spec, big_v, nmat, lifts: None, ..self.clone() }
    }
}

fn strip_content(d: Poly, mat: Vec<Vec<Poly>>) -> (Poly, Vec<Vec<Poly>>) {
    let (c, _) = d.primitive_split();
    let inv = c.recip();
    let mat = mat.into_iter().map(|r| r.into_iter().map(|p| p.scale(&inv)).collect()).collect();
    (d.scale(&inv), mat)
}

fn ratmat(num: &[Vec<Poly>], den: &Poly) -> Vec<Vec<RatFunc>> {
    num.iter()
        .map(|r| {
            r.iter()
                .map(|p| RatFunc::new(p.clone(), den.clone()).expect("nonzero denominator"))
                .collect()
        })
        .collect()
}

fn effective_denominator(m: &[Vec<RatFunc>]) -> Poly {
    m.iter()
        .flatten()
        .fold(Poly::one(), |acc, c| crate::arith::lcm(&acc, c.den()))
}

/// `∂x^i·e = w_i / fac(u, i, x)` with polynomial `w_i`.
#[derive(Clone, Debug)]
pub struct IterateTable {
    pub rows: Vec<Vec<Poly>>,
}

impl IterateTable {
    /// Numerators `fac(σx^i(u), r−i, x)·w_i` over the common denominator
    /// `fac(u, r, x)`, for `i = 0..=r`.
    pub fn rescaled(&self, sys: &DFiniteSystem, r: usize) -> Vec<Vec<Poly>> {
        (0..=r)
            .map(|i| {
                let su = sys.spec.sigma_pow_poly(&sys.u, X, i as u32);
                let f = rising_factorial_poly(&su, (r - i) as u32, X, &sys.spec);
                self.rows[i].iter().map(|p| &f * p).collect()
            })
            .collect()
    }
}

/// Runs the recursion
/// `w_{i+1} = σx(w_i)·U + σx^i(u)·δx(w_i) − ũ_i·σx(w_i)` with
/// `ũ_i = Σ_{k<i} δx(σx^k(u))`, asserting the degree bound on every row.
pub fn iterate_dx_e(sys: &DFiniteSystem, r: usize) -> IterateTable {
    let spec = &sys.spec;
    let gamma = sys.gamma();
    let de = sys.deg_y_e();
    let mut rows = vec![sys.e.clone()];
    let mut u_tilde = Poly::zero();
    let mut su = sys.u.clone();
    for i in 0..r {
        let w = &rows[i];
        let sw: Vec<Poly> = w.iter().map(|p| spec.sigma_poly(p, X)).collect();
        let next: Vec<Poly> = (0..sys.n)
            .map(|j| {
                let mut acc = &su * &spec.delta_poly(&w[j], X);
                acc = &acc - &(&u_tilde * &sw[j]);
                for (k, s) in sw.iter().enumerate() {
                    if !s.is_zero() {
                        acc = &acc + &(s * &sys.big_u[k][j]);
                    }
                }
                acc
            })
            .collect();
        let bound = de.saturating_add((i as i64 + 1).saturating_mul(gamma.max(0)));
        for p in &next {
            assert!(
                p.is_zero() || p.deg(Y) <= bound,
                "iterate {} exceeds the y-degree bound {}",
                i + 1,
                bound
            );
        }
        rows.push(next);
        u_tilde = &u_tilde + &spec.delta_poly(&su, X);
        su = spec.sigma_poly(&su, X);
    }
    IterateTable { rows }
}

/// `(u, U, e)` of a companion system.
pub type Companion = (Poly, Vec<Vec<Poly>>, Vec<Poly>);

/// Companion data for `L = Σ a_i ∂x^i` on the basis `1, ∂x, …, ∂x^{n−1}`:
/// returns `(u, U, e)`.
pub fn companion_from_scalar(l: &OreOperator) -> Result<Companion, SystemError> {
    if !l.is_x_only() {
        return Err(SystemError::Shape("operator must not involve Dy".into()));
    }
    let n = match l.ord_x() {
        Some(n) if n > 0 => n as usize,
        _ => return Err(SystemError::Shape("operator must have positive order in Dx".into())),
    };
    let lead = l.coeff(n as u32, 0);
    let last: Vec<RatFunc> = (0..n)
        .map(|i| -&l.coeff(i as u32, 0).div(&lead).expect("leading coefficient is nonzero"))
        .collect();
    let u = last
        .iter()
        .fold(Poly::one(), |acc, c| crate::arith::lcm(&acc, c.den()));
    let mut big_u = vec![vec![Poly::zero(); n]; n];
    for (i, row) in big_u.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = u.clone();
    }
    for (j, c) in last.iter().enumerate() {
        big_u[n - 1][j] = c.num() * &u.div_exact(c.den()).expect("lcm");
    }
    let mut e = vec![Poly::zero(); n];
    e[0] = Poly::constant(rat(1));
    Ok((u, big_u, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_operator, parse_poly};

    fn bessel(k: u32, negate: bool) -> Result<DFiniteSystem, SystemError> {
        let f = FieldSpec::rational();
        let spec = OreSpec::with_kinds(OreKind::Derivation, OreKind::ForwardDifference).unwrap();
        let p = |s: &str| parse_poly(s, &f).unwrap();
        let k1 = format!("(y+1)^{k}");
        let k2 = format!("(y+2)^{k}");
        let mut big_v = vec![
            vec![p(&format!("x*y*{k1} - x^2*{k2}")), p(&format!("-x^2*{k1}"))],
            vec![p(&format!("{k1}*(x^2-y^2-y)")), p(&format!("x*(y+1)^{}-x^2*{k2}", k + 1))],
        ];
        if negate {
            big_v[0][1] = -&big_v[0][1];
        }
        DFiniteSystem::new(
            f.clone(),
            spec,
            p("x^2"),
            vec![vec![p("0"), p("x^2")], vec![p("y^2-x^2"), p("-x")]],
            p(&format!("x^2*{k2}")),
            big_v,
            vec![RatFunc::one(), RatFunc::zero()],
            Some(vec![OreOperator::one(), OreOperator::dx()]),
        )
    }

    fn gamma_xy() -> DFiniteSystem {
        let f = FieldSpec::rational();
        let spec = OreSpec::with_kinds(OreKind::Shift, OreKind::Shift).unwrap();
        let p = |s: &str| parse_poly(s, &f).unwrap();
        DFiniteSystem::new(
            f.clone(),
            spec,
            p("x+y"),
            vec![vec![p("1")]],
            p("x+y"),
            vec![vec![p("1")]],
            vec![RatFunc::one()],
            None,
        )
        .unwrap()
    }

    #[test]
    fn bessel_validates_and_perturbation_fails() {
        for k in 0..3 {
            assert!(bessel(k, false).is_ok(), "k = {k}");
        }
        match bessel(1, true) {
            Err(SystemError::Validation { check, .. }) => assert_eq!(check, "compatibility"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_polynomial_e_is_rejected() {
        let f = FieldSpec::rational();
        let spec = OreSpec::with_kinds(OreKind::Shift, OreKind::Shift).unwrap();
        let one = Poly::one();
        let r = DFiniteSystem::new(
            f,
            spec,
            one.clone(),
            vec![vec![one.clone(), Poly::zero()], vec![Poly::zero(), one.clone()]],
            one.clone(),
            vec![vec![one.clone(), Poly::zero()], vec![Poly::zero(), one.clone()]],
            vec![RatFunc::var(X).inv().unwrap(), RatFunc::zero()],
            None,
        );
        assert!(matches!(r, Err(SystemError::Validation { check: "admissibility", .. })));
    }

    #[test]
    fn vector_actions_on_gamma_system() {
        let sys = gamma_xy();
        assert_eq!(sys.vector_apply_dx(&[RatFunc::zero()]), vec![RatFunc::zero()]);
        let r = sys.vector_apply_dx(&[RatFunc::one()]);
        assert_eq!(r, vec![RatFunc::new(Poly::one(), parse_poly("x+y", &sys.field).unwrap()).unwrap()]);
    }

    #[test]
    fn iterates_match_repeated_action() {
        let sys = gamma_xy();
        let table = iterate_dx_e(&sys, 2);
        assert_eq!(table.rows[2], vec![Poly::one()]);
        for sys in [gamma_xy(), bessel(1, false).unwrap()] {
            let table = iterate_dx_e(&sys, 4);
            let mut w = sys.e_vector();
            for i in 0..=4 {
                let fac = rising_factorial_poly(&sys.u, i as u32, X, &sys.spec);
                let expect: Vector = table.rows[i]
                    .iter()
                    .map(|p| RatFunc::new(p.clone(), fac.clone()).unwrap())
                    .collect();
                assert_eq!(w, expect, "i = {i}");
                w = sys.vector_apply_dx(&w);
            }
        }
    }

    #[test]
    fn companion_examples() {
        let f = FieldSpec::rational();
        let spec = OreSpec::with_kinds(OreKind::Derivation, OreKind::ForwardDifference).unwrap();
        let l = parse_operator("x^2*Dx^2 + x*Dx + x^2 - y^2", &f, &spec).unwrap();
        let (u, big_u, e) = companion_from_scalar(&l).unwrap();
        let p = |s: &str| parse_poly(s, &f).unwrap();
        assert_eq!(u, p("x^2"));
        assert_eq!(big_u, vec![vec![p("0"), p("x^2")], vec![p("y^2-x^2"), p("-x")]]);
        assert_eq!(e, vec![p("1"), p("0")]);
        let l = parse_operator("Dx^2 - y", &f, &spec).unwrap();
        let (u, big_u, _) = companion_from_scalar(&l).unwrap();
        assert_eq!(u, p("1"));
        assert_eq!(big_u, vec![vec![p("0"), p("1")], vec![p("y"), p("0")]]);
        let l = parse_operator("Dx - x*y", &f, &spec).unwrap();
        assert_eq!(companion_from_scalar(&l).unwrap().1, vec![vec![p("x*y")]]);
        assert!(companion_from_scalar(&OreOperator::one()).is_err());
    }
}
