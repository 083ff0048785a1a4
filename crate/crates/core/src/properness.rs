//! y-properness of the denominator `u`, factor classification, and the
//! quantities `η`, `ϱ`, `γ` and `φ` that enter the order bound.
//!
//! A system is y-proper when, for every order `r`, the factorial
//! `d = fac(u, r, x)` splits as `g·∏ fac(f_i, p_i, y)` against
//! `v = σy(h)·∏ fac(f_i, q_i, y)` with `deg_y ⌊g⌋_y ≤ η` for a fixed `η`.
//! [`witness`] produces that splitting for one `r` and checks it by
//! reassembly; [`compute_eta`] takes the maximum over the orders the
//! telescoper may visit.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{
    content_in, gcd_all, monomial_content, prim_gcd_in, primitive_part_in, rat,
    rational_roots, split_content_in, squarefree_decomposition, ArithError, Monomial, Poly,
    RatFunc, MAX_VARS, X, Y,
};
use crate::gff::{gff, rising_factorial_poly};
use crate::ore::{OreKind, OreSpec};
use crate::system::DFiniteSystem;

/// Orders beyond this are never sampled when stabilizing `η`.
const MAX_SAMPLED_ORDER: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PropernessError {
    #[error("system is not y-proper: {0}")]
    NotProper(String),
    #[error("phi override {phi} exceeds the dimension {n}")]
    PhiOverride { phi: u32, n: usize },
    #[error("eta did not stabilize below order {0}")]
    Unstable(u32),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorClass {
    XOnly,
    YOnly,
    /// `a·x + b·y + c` with `gcd(a, b) = 1`, `a ≥ 0`.
    IntegerLinear { a: i64, b: i64, c: RatFunc },
    /// A polynomial in `a·x + b·y` without linear factors over `K`.
    IntegerLinearFamily { a: i64, b: i64 },
    /// Quasi-homogeneous: every monomial `x^i y^j` has the same `s·i + w·j`.
    QBinomial { s: i64, w: i64 },
    SplitBlocking,
}

impl FactorClass {
    pub fn describe(&self, field: &crate::arith::FieldSpec) -> String {
        match self {
            FactorClass::XOnly => "x-only".into(),
            FactorClass::YOnly => "y-only".into(),
            FactorClass::IntegerLinear { a, b, c } => {
                format!("integer-linear({a},{b},{})", crate::expr::format_ratfunc(c, field))
            }
            FactorClass::IntegerLinearFamily { a, b } => format!("integer-linear-family({a},{b})"),
            FactorClass::QBinomial { s, w } => format!("q-binomial({s},{w})"),
            FactorClass::SplitBlocking => "split-blocking".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedFactor {
    pub factor: Poly,
    pub multiplicity: u32,
    pub class: FactorClass,
}

#[derive(Debug, Clone)]
pub struct ProperCertificate {
    pub proper: bool,
    pub reason: Option<String>,
    pub classification: Vec<ClassifiedFactor>,
}

/// One matched factor: `fac(f, p, y)` divides `d`, `fac(f, q, y)` divides `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFactor {
    pub f: Poly,
    pub p: u32,
    pub q: u32,
}

/// `d = g·∏ fac(f_i, p_i, y)`, `v = σy(h)·∏ fac(f_i, q_i, y)` and
/// `z = σy^{-1}(∏ fac(f_i, p_i) / ∏ fac(f_i, q_i))·g/⌈g⌉_y`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub r: u32,
    pub d: Poly,
    pub factors: Vec<WitnessFactor>,
    pub g: RatFunc,
    pub g_left: Poly,
    pub g_right: Poly,
    pub h: RatFunc,
    pub z: RatFunc,
}

impl Witness {
    pub fn eta(&self) -> u32 {
        self.g_left.degree(Y).unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct PropernessReport {
    pub proper: bool,
    pub reason: Option<String>,
    pub classification: Vec<ClassifiedFactor>,
    pub eta: Option<u32>,
    /// Set when `η > 0`: the value is the largest border met on the sampled
    /// orders, which bounds the minimal `η` only from above.
    pub eta_upper_bound_only: bool,
    pub gamma: u32,
    pub height: Option<u32>,
    pub phi_bound: u32,
    pub witnesses: Vec<Witness>,
}

/// Linear factors `((a, b, c), multiplicity)` of `p` and the cofactor.
pub type LinearFactors = (Vec<((i64, i64, RatFunc), u32)>, Poly);

/// Extracts all factors `a·x + b·y + c` with `a, b ∈ ℤ` coprime, `a ≥ 0`
/// (`b > 0` when `a = 0`) and `c ∈ K`.
pub fn integer_linear_decompose(p: &Poly) -> LinearFactors {
    let mut out = Vec::new();
    if p.is_zero() {
        return (out, Poly::zero());
    }
    let mut cofactor = p.clone();
    let (families, _) = direction_families(p, true);
    for ((a, b), family) in families {
        let (linear, _) = split_linear(&family);
        for (c, m) in linear {
            let lin = linear_poly(a, b, &c);
            cofactor = cofactor.div_exact(&lin.pow(m)).expect("linear factor divides");
            out.push(((a, b, c), m));
        }
    }
    out.sort_by(|x, y| {
        let ((a1, b1, c1), _) = x;
        let ((a2, b2, c2), _) = y;
        (-a1, -b1).cmp(&(-a2, -b2)).then_with(|| cmp_coeff(c1, c2))
    });
    (out, cofactor)
}

fn cmp_coeff(a: &RatFunc, b: &RatFunc) -> Ordering {
    match (a.constant_value(), b.constant_value()) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => format!("{a:?}").cmp(&format!("{b:?}")),
    }
}

/// `den(c)·(a·x + b·y) + num(c)`.
fn linear_poly(a: i64, b: i64, c: &RatFunc) -> Poly {
    let ax_by = &Poly::var(X).scale(&rat(a)) + &Poly::var(Y).scale(&rat(b));
    &(&ax_by * c.den()) + c.num()
}

/// The part of `p` depending on `a·x + b·y` only, as a polynomial in `t`
/// (stored in the `x` slot), primitive in `t`.
fn family_in_direction(p: &Poly, a: i64, b: i64) -> Poly {
    let c = if a == 0 {
        let c = content_in(p, X);
        rename(&c, Y, X)
    } else if b == 0 {
        content_in(p, Y)
    } else {
        // x -> (t − b·y)/a with t in the x slot.
        let mut vals: [Option<Poly>; MAX_VARS] = Default::default();
        let t = &Poly::var(X) - &Poly::var(Y).scale(&rat(b));
        vals[X] = Some(t.scale(&crate::arith::Rat::new(1.into(), a.into())));
        content_in(&p.substitute(&vals), Y)
    };
    if c.degree(X).unwrap_or(0) == 0 {
        return Poly::one();
    }
    split_content_in(&c, X).1
}

/// Substitutes `t -> a·x + b·y` into a polynomial in `t` (the `x` slot).
fn embed_direction(c: &Poly, a: i64, b: i64) -> Poly {
    let mut vals: [Option<Poly>; MAX_VARS] = Default::default();
    vals[X] = Some(&Poly::var(X).scale(&rat(a)) + &Poly::var(Y).scale(&rat(b)));
    c.substitute(&vals)
}

fn rename(p: &Poly, from: usize, to: usize) -> Poly {
    Poly::from_terms(p.terms().iter().map(|(m, c)| {
        let e = m.exp(from);
        (m.with_exp(from, 0).with_exp(to, e), c.clone())
    }))
}

/// Candidate directions `(a, b)` read off the top homogeneous component of
/// `p` in `x, y`.
fn directions(p: &Poly) -> Vec<(i64, i64)> {
    let top = match p.terms().iter().map(|(m, _)| m.exp(X) + m.exp(Y)).max() {
        Some(d) if d > 0 => d,
        _ => return Vec::new(),
    };
    let h = Poly::from_terms(
        p.terms().iter().filter(|(m, _)| m.exp(X) + m.exp(Y) == top).cloned(),
    );
    let mut out = Vec::new();
    if h.degree(X).unwrap_or(0) < top {
        out.push((0, 1));
    }
    // H(t, 1) sliced by parameter monomials; common rational roots.
    let ht = h.eval_var(Y, &rat(1));
    let mut slices: BTreeMap<Monomial, Vec<(Monomial, crate::arith::Rat)>> = BTreeMap::new();
    for (m, c) in ht.terms() {
        let key = m.with_exp(X, 0);
        slices.entry(key).or_default().push((Monomial::var(X, m.exp(X)), c.clone()));
    }
    let slices: Vec<Poly> = slices.into_values().map(Poly::from_terms).collect();
    let g = gcd_all(slices.iter());
    if g.degree(X).unwrap_or(0) == 0 {
        return out;
    }
    for r in rational_roots(&g, X) {
        // ax + by vanishes at x/y = r, so r = −b/a.
        let a = r.denom().to_i64();
        let b = (-r.numer()).to_i64();
        if let (Some(a), Some(b)) = (a, b) {
            out.push((a, b));
        }
    }
    out
}

/// Families `((a, b), C)` and the remaining cofactor.
type Families = (Vec<((i64, i64), Poly)>, Poly);

/// Splits `p` into products along integer directions. Returns the families
/// `((a, b), C(t))` and what is left. With `axis = false` the directions
/// `(1, 0)` and `(0, 1)` are skipped.
fn direction_families(p: &Poly, axis: bool) -> Families {
    let mut rem = p.clone();
    let mut fams: Vec<((i64, i64), Poly)> = Vec::new();
    loop {
        let mut progress = false;
        for (a, b) in directions(&rem) {
            if !axis && (a == 0 || b == 0) {
                continue;
            }
            let c = family_in_direction(&rem, a, b);
            if c.is_one() {
                continue;
            }
            rem = rem.div_exact(&embed_direction(&c, a, b)).expect("direction family divides");
            match fams.iter_mut().find(|f| f.0 == (a, b)) {
                Some(slot) => slot.1 = &slot.1 * &c,
                None => fams.push(((a, b), c)),
            }
            progress = true;
        }
        if !progress {
            break;
        }
    }
    (fams, rem)
}

/// Linear factors `t + c` of a polynomial in `t` (the `x` slot) and the
/// nonlinear cofactor.
fn split_linear(c: &Poly) -> (Vec<(RatFunc, u32)>, Poly) {
    let mut linear = Vec::new();
    let mut rest = Poly::one();
    let sq = squarefree_decomposition(c, X).expect("nonzero family");
    for (s, m) in &sq.factors {
        let mut s = s.clone();
        if s.degree(X) == Some(1) {
            let cs = s.coeffs_in(X);
            linear.push((RatFunc::new(cs[0].clone(), cs[1].clone()).expect("nonzero"), *m));
            continue;
        }
        if s.support() & !(1u32 << X) == 0 {
            for root in rational_roots(&s, X) {
                let lin = &Poly::var(X) - &Poly::constant(root.clone());
                s = s.div_exact(&lin).expect("root divides");
                linear.push((RatFunc::from_rat(-root), *m));
            }
        }
        if s.degree(X).unwrap_or(0) > 0 {
            rest = &rest * &s.pow(*m);
        }
    }
    (linear, rest)
}

/// Quasi-homogeneous families for commuting q-shifts: for each candidate
/// weight `(s, w)`, the gcd of the weighted components of `p` collects all
/// factors homogeneous for that weight.
fn weight_families(p: &Poly) -> Families {
    let mut rem = p.clone();
    let mut fams = Vec::new();
    loop {
        let points: Vec<(i64, i64)> = {
            let mut v: Vec<(i64, i64)> =
                rem.terms().iter().map(|(m, _)| (m.exp(X) as i64, m.exp(Y) as i64)).collect();
            v.sort();
            v.dedup();
            v
        };
        let mut weights = Vec::new();
        for (k, p1) in points.iter().enumerate() {
            for p2 in &points[k + 1..] {
                let (di, dj) = (p1.0 - p2.0, p1.1 - p2.1);
                let (mut s, mut w) = (dj, -di);
                if s == 0 || w == 0 {
                    continue;
                }
                let g = s.gcd(&w);
                s /= g;
                w /= g;
                if s < 0 {
                    s = -s;
                    w = -w;
                }
                if !weights.contains(&(s, w)) {
                    weights.push((s, w));
                }
            }
        }
        let mut progress = false;
        for (s, w) in weights {
            let mut comps: BTreeMap<i64, Vec<(Monomial, crate::arith::Rat)>> = BTreeMap::new();
            for (m, c) in rem.terms() {
                let key = s * m.exp(X) as i64 + w * m.exp(Y) as i64;
                comps.entry(key).or_default().push((*m, c.clone()));
            }
            let comps: Vec<Poly> = comps.into_values().map(Poly::from_terms).collect();
            let g = gcd_all(comps.iter());
            let g = strip_monomial(&g);
            if g.contains_var(X) && g.contains_var(Y) {
                rem = rem.div_exact(&g).expect("component gcd divides");
                fams.push(((s, w), g));
                progress = true;
                break;
            }
        }
        if !progress {
            break;
        }
    }
    (fams, rem)
}

fn strip_monomial(p: &Poly) -> Poly {
    let m = monomial_content(p);
    if m.is_one() {
        return p.clone();
    }
    p.div_exact(&Poly::term(m, rat(1))).expect("monomial content divides")
}

fn is_y_monomial(p: &Poly) -> bool {
    split_content_in(p, Y).1.num_terms() == 1
}

fn shift_type(k: OreKind) -> bool {
    matches!(k, OreKind::Shift | OreKind::ForwardDifference)
}

/// Decides y-properness of `u` from its factor structure.
pub fn is_y_proper(u: &Poly, spec: &OreSpec) -> ProperCertificate {
    assert!(!u.is_zero(), "u must be nonzero");
    let (kx, ky) = (spec.kind(X), spec.kind(Y));
    let mut classification = Vec::new();
    let x_part = content_in(u, Y);
    let r1 = u.div_exact(&x_part).expect("content divides");
    let y_part = content_in(&r1, X);
    let mixed = r1.div_exact(&y_part).expect("content divides").normalized();
    if x_part.contains_var(X) {
        classification.push(ClassifiedFactor {
            factor: split_content_in(&x_part, X).1,
            multiplicity: 1,
            class: FactorClass::XOnly,
        });
    }
    if y_part.contains_var(Y) {
        classification.push(ClassifiedFactor {
            factor: split_content_in(&y_part, Y).1,
            multiplicity: 1,
            class: FactorClass::YOnly,
        });
    }
    let mut remainder = mixed.clone();
    if !mixed.is_constant() {
        if shift_type(kx) && shift_type(ky) {
            let (fams, rest) = direction_families(&mixed, false);
            for ((a, b), fam) in fams {
                let (linear, nonlinear) = split_linear(&fam);
                for (c, m) in linear {
                    classification.push(ClassifiedFactor {
                        factor: linear_poly(a, b, &c),
                        multiplicity: m,
                        class: FactorClass::IntegerLinear { a, b, c },
                    });
                }
                if !nonlinear.is_constant() {
                    classification.push(ClassifiedFactor {
                        factor: embed_direction(&nonlinear, a, b),
                        multiplicity: 1,
                        class: FactorClass::IntegerLinearFamily { a, b },
                    });
                }
            }
            remainder = rest;
        } else if kx.is_q() && ky.is_q() {
            let (fams, rest) = weight_families(&mixed);
            for ((s, w), fam) in fams {
                classification.push(ClassifiedFactor {
                    factor: fam,
                    multiplicity: 1,
                    class: FactorClass::QBinomial { s, w },
                });
            }
            remainder = rest;
        }
        if !remainder.is_constant() {
            classification.push(ClassifiedFactor {
                factor: remainder.normalized(),
                multiplicity: 1,
                class: FactorClass::SplitBlocking,
            });
        }
    }
    let reason = if kx.sigma_is_id() && ky.sigma_is_id() {
        None
    } else if y_part.contains_var(Y) && !ky.sigma_is_id() && !(ky.is_q() && is_y_monomial(&y_part)) {
        Some(format!(
            "the y-only factor {:?} has unbounded factorial powers under the y-shift",
            split_content_in(&y_part, Y).1
        ))
    } else if mixed.is_constant() {
        None
    } else if kx.sigma_is_id() || ky.sigma_is_id() {
        Some(format!("u does not split into x- and y-parts (mixed factor {:?})", mixed))
    } else if !remainder.is_constant() {
        Some(format!("the factor {:?} is not integer-linear", remainder.normalized()))
    } else {
        None
    };
    ProperCertificate { proper: reason.is_none(), reason, classification }
}

/// Splits `fac(u, r, x)` against `v` and checks
/// `d·σy(h) = σy(z)·v·⌊g⌋_y`.
pub fn witness(sys: &DFiniteSystem, r: u32) -> Result<Witness, PropernessError> {
    let spec = &sys.spec;
    let d = rising_factorial_poly(&sys.u, r, X, spec);
    let decomposition = gff(&d, Y, spec)?;
    let mut v_rem = primitive_part_in(&sys.v, Y);
    let mut factors = Vec::new();
    for (dj, j) in &decomposition.factors {
        let mut dj_rem = dj.clone();
        let mut k = *j;
        while k >= 1 && dj_rem.degree(Y).unwrap_or(0) > 0 {
            // f | σy^{-i}(v_rem) for i < k  <=>  fac(f, k) | v_rem.
            // With σy = id the condition is f^k | v_rem instead.
            let sigma_id = spec.kind(Y).sigma_is_id();
            let mut common = dj_rem.clone();
            let mut w = v_rem.clone();
            for i in 0..k {
                let target = if sigma_id { w.clone() } else { spec.sigma_inv_assoc(&v_rem, Y, i) };
                common = prim_gcd_in(&common, &target, Y);
                if common.degree(Y).unwrap_or(0) == 0 {
                    break;
                }
                if sigma_id {
                    w = w.div_exact(&common)?;
                }
            }
            if common.degree(Y).unwrap_or(0) == 0 {
                k -= 1;
                continue;
            }
            let f = common.normalized();
            dj_rem = primitive_part_in(&dj_rem.div_exact(&f)?, Y);
            let fq = primitive_part_in(&rising_factorial_poly(&f, k, Y, spec), Y);
            v_rem = primitive_part_in(&v_rem.div_exact(&fq)?, Y);
            factors.push(WitnessFactor { f, p: *j, q: k });
        }
    }
    let fac_rat = |f: &Poly, i: u32| RatFunc::from_poly(rising_factorial_poly(f, i, Y, spec));
    let mut d_fac = RatFunc::one();
    let mut v_fac = RatFunc::one();
    let mut z = RatFunc::one();
    for wf in &factors {
        d_fac = &d_fac * &fac_rat(&wf.f, wf.p);
        v_fac = &v_fac * &fac_rat(&wf.f, wf.q);
        let shifted = spec.sigma_pow_poly(&wf.f, Y, wf.q - 1);
        z = &z * &fac_rat(&shifted, wf.p - wf.q);
    }
    let d_rat = RatFunc::from_poly(d.clone());
    let g = d_rat.div(&d_fac)?;
    let h = spec.sigma_inv(&RatFunc::from_poly(sys.v.clone()).div(&v_fac)?, Y);
    let gg = gff(g.num(), Y, spec)?;
    let g_left = gg.left_border();
    let g_right = gg.right_border(Y, spec);
    z = &z * &g.div(&RatFunc::from_poly(g_right.clone()))?;
    for (name, f) in [("g", &g), ("h", &h), ("z", &z)] {
        assert!(!f.den().contains_var(Y), "witness {name} is not polynomial in y");
    }
    let lhs = &d_rat * &spec.sigma(&h, Y);
    let rhs = &(&spec.sigma(&z, Y) * &RatFunc::from_poly(sys.v.clone()))
        * &RatFunc::from_poly(g_left.clone());
    assert_eq!(lhs, rhs, "witness reassembly failed at r = {r}");
    Ok(Witness { r, d, factors, g, g_left, g_right, h, z })
}

/// `max{deg_y(v) − 1, deg_y(V)}` clamped at 0. A q-difference in `y` is
/// measured through `∂y + 1`, which is a q-shift.
pub(crate) fn excess(sys: &DFiniteSystem) -> u32 {
    sys.with_y_shift_form().v_excess().max(0) as u32
}

/// `η` over the orders `1..=R` with `R = n·(η + excess) + n`, extended
/// until `R` stops growing.
pub fn compute_eta(sys: &DFiniteSystem) -> Result<u32, PropernessError> {
    Ok(eta_with_witnesses(sys, sys.n as u32)?.0)
}

/// Samples orders up to `n·(η + excess) + max(φ, 1)` and keeps the
/// witnesses for `r = 1, 2` and the last order.
pub(crate) fn eta_with_witnesses(
    sys: &DFiniteSystem,
    phi: u32,
) -> Result<(u32, Vec<Witness>), PropernessError> {
    let cert = is_y_proper(&sys.u, &sys.spec);
    if let Some(reason) = cert.reason {
        return Err(PropernessError::NotProper(reason));
    }
    let n = sys.n as u32;
    let mut eta = 0;
    let mut done = 0;
    let mut kept = Vec::new();
    loop {
        let reach = n * (eta + excess(sys)) + phi.max(1);
        if reach > MAX_SAMPLED_ORDER {
            return Err(PropernessError::Unstable(MAX_SAMPLED_ORDER));
        }
        if reach <= done {
            break;
        }
        for r in done + 1..=reach {
            let w = witness(sys, r)?;
            eta = eta.max(w.eta());
            if r <= 2 || r == reach {
                kept.push(w);
            }
        }
        done = reach;
    }
    kept.dedup_by_key(|w| w.r);
    kept.retain(|w| w.r <= 2 || w.r == done);
    Ok((eta, kept))
}

/// `γ = max{deg_y(u), deg_y(U)}`.
pub fn compute_gamma(sys: &DFiniteSystem) -> u32 {
    sys.gamma().max(0) as u32
}

/// `ϱ = η + max{deg_y(v) − 1, deg_y(V)}`, at least 0.
pub fn compute_height(sys: &DFiniteSystem) -> Result<u32, PropernessError> {
    Ok(compute_eta(sys)? + excess(sys))
}

pub fn phi_bound(sys: &DFiniteSystem, phi_override: Option<u32>) -> Result<u32, PropernessError> {
    match phi_override {
        Some(phi) if phi as usize > sys.n => Err(PropernessError::PhiOverride { phi, n: sys.n }),
        Some(phi) => Ok(phi),
        None => Ok(sys.n as u32),
    }
}

pub fn properness_report(
    sys: &DFiniteSystem,
    phi_override: Option<u32>,
) -> Result<PropernessReport, PropernessError> {
    let phi = phi_bound(sys, phi_override)?;
    let cert = is_y_proper(&sys.u, &sys.spec);
    let gamma = compute_gamma(sys);
    let mut report = PropernessReport {
        proper: cert.proper,
        reason: cert.reason,
        classification: cert.classification,
        eta: None,
        eta_upper_bound_only: false,
        gamma,
        height: None,
        phi_bound: phi,
        witnesses: Vec::new(),
    };
    if report.proper {
        let (eta, witnesses) = eta_with_witnesses(sys, phi)?;
        report.eta = Some(eta);
        report.eta_upper_bound_only = eta > 0;
        report.height = Some(eta + excess(sys));
        report.witnesses = witnesses;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::expr::parse_poly;
    use crate::gff::left_border;

    fn p(s: &str) -> Poly {
        parse_poly(s, &FieldSpec::rational()).unwrap()
    }
    fn spec(a: OreKind, b: OreKind) -> OreSpec {
        OreSpec::with_kinds(a, b).unwrap()
    }

    #[test]
    fn properness_examples() {
        let ss = spec(OreKind::Shift, OreKind::Shift);
        assert!(!is_y_proper(&p("(x+1)^2+y^2"), &ss).proper);
        assert!(is_y_proper(&p("(x+y)*(x+2*y+1)*(2*x-y)^2*(x+3)"), &ss).proper);
        assert!(is_y_proper(&p("(x+y)^2+1"), &ss).proper);
        assert!(!is_y_proper(&p("(x+y)*y"), &ss).proper);
        let mixed = spec(OreKind::Derivation, OreKind::Shift);
        assert!(is_y_proper(&p("x^2"), &mixed).proper);
        assert!(!is_y_proper(&p("x+y"), &mixed).proper);
        let diff = spec(OreKind::Derivation, OreKind::Derivation);
        assert!(is_y_proper(&p("(x+1)^2+y^2"), &diff).proper);
        let other = spec(OreKind::Shift, OreKind::Derivation);
        assert!(is_y_proper(&p("x*(y^2+1)"), &other).proper);
        assert!(!is_y_proper(&p("x+y"), &other).proper);
    }

    #[test]
    fn q_properness() {
        let f = FieldSpec::new(["q"]).unwrap();
        let q = f.lookup("q").unwrap();
        let qq = OreSpec::with_kinds_q(OreKind::QShift, OreKind::QShift, q).unwrap();
        let pp = |s: &str| parse_poly(s, &f).unwrap();
        assert!(is_y_proper(&pp("(x*y-q)*(x+y)*y^2"), &qq).proper);
        assert!(!is_y_proper(&pp("x+y+1"), &qq).proper);
        assert!(!is_y_proper(&pp("y+1"), &qq).proper);
    }

    #[test]
    fn linear_decomposition_examples() {
        let (fs, rem) = integer_linear_decompose(&p("(x+3*y+1)*(x+3*y+2)"));
        assert_eq!(fs, vec![((1, 3, RatFunc::from_int(1)), 1), ((1, 3, RatFunc::from_int(2)), 1)]);
        assert_eq!(rem, Poly::one());
        let (fs, rem) = integer_linear_decompose(&p("x^2+y^2"));
        assert!(fs.is_empty());
        assert_eq!(rem, p("x^2+y^2"));
        let (fs, rem) = integer_linear_decompose(&p("(2*x-y)^2*(x+5)"));
        assert_eq!(fs, vec![((2, -1, RatFunc::zero()), 2), ((1, 0, RatFunc::from_int(5)), 1)]);
        assert_eq!(rem, Poly::one());
        let (fs, _) = integer_linear_decompose(&p("(y+2)*(2*x+2*y+1)"));
        let half = RatFunc::from_rat(crate::arith::Rat::new(1.into(), 2.into()));
        assert_eq!(fs, vec![((1, 1, half), 1), ((0, 1, RatFunc::from_int(2)), 1)]);
    }

    #[test]
    fn basis_change_left_border() {
        let ss = spec(OreKind::Shift, OreKind::Shift);
        let u = p("(x+y+1)*(x-y+1)");
        for r in 1..=5 {
            let d = rising_factorial_poly(&u, r, X, &ss);
            let expect = (&p("x+y+1") * &p(&format!("x-y+{r}"))).normalized();
            assert_eq!(left_border(&d, Y, &ss).unwrap().normalized(), expect, "r = {r}");
        }
    }
}
