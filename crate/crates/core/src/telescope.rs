//! Telescopers by an ansatz of bounded order.
//!
//! For an order `r` the telescoper part `Σ t_i ∂x^i·e` is written over the
//! denominator `d = fac(u, r, x)`, and the certificate is sought as
//! `c = (h/z)·W` with `W` a polynomial vector in `y` of degree at most `s`.
//! Comparing coefficients of `y` gives a homogeneous linear system over
//! `K(x)`; any nullspace vector with a nonzero telescoper part is a
//! solution. Orders are tried from `r_start` up to the bound `n·ϱ + φ`.

use rayon::prelude::*;

use crate::arith::{gcd_all, lcm, Poly, RatFunc, X, Y};
use crate::linalg::{nullspace, with_threads};
use crate::ore::{OreKind, OreOperator};
use crate::properness::{compute_gamma, eta_with_witnesses, excess, phi_bound, witness, Witness};
use crate::system::{iterate_dx_e, DFiniteSystem, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TelescopeError {
    #[error(transparent)]
    Properness(#[from] crate::properness::PropernessError),
    #[error("invalid options: {0}")]
    Options(String),
    #[error("no telescoper of order {r_start}..={r_max} ({diagnostics})")]
    NotFound { r_start: u32, r_max: u32, diagnostics: String },
    #[error("certificate available as vector only")]
    NoLifts,
}

#[derive(Debug, Clone)]
pub struct TelescopeOptions {
    pub phi_override: Option<u32>,
    pub r_start: u32,
    pub r_max: Option<u32>,
    pub incremental: bool,
    /// Worker threads; `Some(0)` runs sequentially.
    pub threads: Option<usize>,
}

impl Default for TelescopeOptions {
    fn default() -> Self {
        TelescopeOptions { phi_override: None, r_start: 1, r_max: None, incremental: true, threads: None }
    }
}

/// The quantities entering the bound `n·ϱ + φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub n: u32,
    pub eta: u32,
    pub eta_upper_bound_only: bool,
    pub gamma: u32,
    pub height: u32,
    pub phi: u32,
    pub order_bound: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub r: u32,
    pub s: u32,
    pub s_clamped: bool,
    pub gamma: u32,
    pub height: u32,
    pub eta: u32,
    pub phi: u32,
    pub order_bound: u32,
    pub equations: usize,
    pub unknowns: usize,
    pub nullity: usize,
}

impl std::fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "r={} s={} gamma={} rho={} eta={} phi={} bound={} equations={} unknowns={} nullity={}",
            self.r,
            self.s,
            self.gamma,
            self.height,
            self.eta,
            self.phi,
            self.order_bound,
            self.equations,
            self.unknowns,
            self.nullity
        )
    }
}

#[derive(Debug, Clone)]
pub struct TelescopePair {
    pub telescoper: OreOperator,
    pub certificate: Vector,
    pub certificate_operator: Option<OreOperator>,
    pub diagnostics: Diagnostics,
}

/// Data for the ansatz at one order.
#[derive(Debug, Clone)]
pub struct AnsatzPlan {
    pub r: u32,
    pub s: u32,
    pub s_clamped: bool,
    pub witness: Witness,
}

impl AnsatzPlan {
    pub fn d(&self) -> &Poly {
        &self.witness.d
    }
    pub fn z(&self) -> &RatFunc {
        &self.witness.z
    }
    pub fn h(&self) -> &RatFunc {
        &self.witness.h
    }
}

/// `η`, `γ`, `ϱ`, `φ` and `n·ϱ + φ`.
pub fn bounds(sys: &DFiniteSystem, phi_override: Option<u32>) -> Result<Bounds, TelescopeError> {
    let phi = phi_bound(sys, phi_override)?;
    let n = sys.n as u32;
    let (eta, _) = eta_with_witnesses(sys, phi)?;
    let height = eta + excess(sys);
    Ok(Bounds {
        n,
        eta,
        eta_upper_bound_only: eta > 0,
        gamma: compute_gamma(sys),
        height,
        phi,
        order_bound: n * height + phi,
    })
}

/// `n·ϱ + φ`.
pub fn order_bound(sys: &DFiniteSystem, phi_override: Option<u32>) -> Result<u32, TelescopeError> {
    Ok(bounds(sys, phi_override)?.order_bound)
}

/// `s = deg_y(e) + r·γ − ϱ`, clamped at 0; the flag reports clamping.
pub fn degree_bound_s(deg_e: u32, r: u32, gamma: u32, rho: u32) -> (u32, bool) {
    let s = deg_e as i64 + r as i64 * gamma as i64 - rho as i64;
    if s < 0 {
        (0, true)
    } else {
        (s as u32, false)
    }
}

fn deg_e(sys: &DFiniteSystem) -> u32 {
    sys.deg_y_e().max(0) as u32
}

pub fn build_z(sys: &DFiniteSystem, r: u32) -> Result<AnsatzPlan, TelescopeError> {
    let w = witness(sys, r)?;
    let rho = w.eta() + excess(sys);
    let (s, s_clamped) = degree_bound_s(deg_e(sys), r, compute_gamma(sys), rho);
    Ok(AnsatzPlan { r, s, s_clamped, witness: w })
}

/// Multiplies a vector of rational functions with `y`-free denominators by
/// the lcm of those denominators.
fn clear_column(col: &[RatFunc]) -> (Vec<Poly>, Poly) {
    let den = col.iter().fold(Poly::one(), |acc, c| lcm(&acc, c.den()));
    assert!(!den.contains_var(Y), "ansatz column has a y-dependent denominator");
    let polys = col.iter().map(|c| c.num() * &den.div_exact(c.den()).expect("lcm")).collect();
    (polys, den)
}

struct Solved {
    t: Vec<Poly>,
    c: Vector,
    equations: usize,
    unknowns: usize,
    nullity: usize,
}

fn solve_at(sys: &DFiniteSystem, plan: &AnsatzPlan) -> Option<Solved> {
    let n = sys.n;
    let r = plan.r as usize;
    let s = plan.s as usize;
    let d = RatFunc::from_poly(plan.d().clone());
    let table = iterate_dx_e(sys, r);
    let t_cols = table.rescaled(sys, r);
    let hz = plan.h().div(plan.z()).expect("z is nonzero");
    let ymono = |j: usize| RatFunc::from_poly(Poly::var(Y).pow(j as u32));
    let nmat = sys.matrix(Y);
    let specs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..=s).map(move |j| (i, j))).collect();
    let cleared: Vec<(Vec<Poly>, Poly)> = specs
        .par_iter()
        .map(|&(i, j)| {
            let f = &hz * &ymono(j);
            let sf = sys.spec.sigma(&f, Y);
            let df = sys.spec.delta(&f, Y);
            let image: Vec<RatFunc> = (0..n)
                .map(|k| {
                    let mut acc = &sf * &nmat[i][k];
                    if k == i {
                        acc = &acc + &df;
                    }
                    -&(&acc * &d)
                })
                .collect();
            clear_column(&image)
        })
        .collect();
    let columns: Vec<&Vec<Poly>> = t_cols.iter().chain(cleared.iter().map(|c| &c.0)).collect();
    let cols = columns.len();
    let top = columns.iter().flat_map(|c| c.iter()).map(|p| p.deg(Y)).max().unwrap_or(0).max(0) as usize;
    let bound = (deg_e(sys) + plan.r * compute_gamma(sys)) as usize;
    if !plan.s_clamped && sys.spec.kind(Y) != OreKind::QDifference {
        assert!(top <= bound, "ansatz exceeds the y-degree bound: {top} > {bound}");
    }
    let rows_per = top.max(bound) + 1;
    let mut rows: Vec<Vec<Poly>> = vec![vec![Poly::zero(); cols]; n * rows_per];
    for (ci, col) in columns.iter().enumerate() {
        for (k, p) in col.iter().enumerate() {
            for (m, coeff) in p.coeffs_in(Y).into_iter().enumerate() {
                rows[k * rows_per + m][ci] = coeff;
            }
        }
    }
    rows.retain(|row| row.iter().any(|p| !p.is_zero()));
    let equations = n * (bound + 1);
    let basis = nullspace(&rows, cols);
    let nullity = basis.len();
    let w = select_minimal(&basis, r + 1)?;
    let t: Vec<Poly> = w[..=r].to_vec();
    let c: Vector = (0..n)
        .map(|i| {
            let poly = (0..=s).fold(Poly::zero(), |acc, j| {
                let k = i * (s + 1) + j;
                let coeff = &w[r + 1 + k] * &cleared[k].1;
                &acc + &(&coeff * &Poly::var(Y).pow(j as u32))
            });
            &hz * &RatFunc::from_poly(poly)
        })
        .collect();
    Some(Solved { t, c, equations, unknowns: cols, nullity })
}

/// A vector of the span whose telescoper part (the first `nt` entries) is
/// nonzero of minimal order, primitive with positive leading coefficient.
fn select_minimal(basis: &[Vec<Poly>], nt: usize) -> Option<Vec<Poly>> {
    if !basis.iter().any(|b| b[..nt].iter().any(|p| !p.is_zero())) {
        return None;
    }
    for m in 0..nt {
        // Combinations with t_{m+1} = … = t_{nt−1} = 0.
        let rows: Vec<Vec<Poly>> = (m + 1..nt).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
        let lambdas = if rows.is_empty() {
            (0..basis.len())
                .map(|k| (0..basis.len()).map(|l| if k == l { Poly::one() } else { Poly::zero() }).collect())
                .collect()
        } else {
            nullspace(&rows, basis.len())
        };
        for lam in lambdas {
            let len = basis[0].len();
            let mut w = vec![Poly::zero(); len];
            for (b, l) in basis.iter().zip(&lam) {
                if l.is_zero() {
                    continue;
                }
                for (slot, p) in w.iter_mut().zip(b) {
                    *slot = &*slot + &(l * p);
                }
            }
            if !w[m].is_zero() {
                let g = gcd_all(w.iter().filter(|p| !p.is_zero()));
                let mut w: Vec<Poly> = w.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
                if w[m].lc_in(X).leading_coeff() < crate::arith::rat(0) {
                    w = w.iter().map(|p| -p).collect();
                }
                return Some(w);
            }
        }
    }
    None
}

/// Searches orders `r_start..=r_max` for a telescoper.
pub fn telescope(sys: &DFiniteSystem, opts: &TelescopeOptions) -> Result<TelescopePair, TelescopeError> {
    with_threads(opts.threads, || telescope_inner(sys, opts))
}

fn telescope_inner(sys: &DFiniteSystem, opts: &TelescopeOptions) -> Result<TelescopePair, TelescopeError> {
    if opts.r_start == 0 {
        return Err(TelescopeError::Options("r_start must be at least 1".into()));
    }
    let b = bounds(sys, opts.phi_override)?;
    let r_max = opts.r_max.unwrap_or(b.order_bound);
    if r_max < opts.r_start {
        return Err(TelescopeError::Options(format!("r_max {r_max} is below r_start {}", opts.r_start)));
    }
    let orders: Vec<u32> = if opts.incremental { (opts.r_start..=r_max).collect() } else { vec![r_max] };
    let mut last = None;
    for r in orders {
        let plan = build_z(sys, r)?;
        let solved = solve_at(sys, &plan);
        let diag = |eq, unk, nul| Diagnostics {
            r,
            s: plan.s,
            s_clamped: plan.s_clamped,
            gamma: b.gamma,
            height: b.height,
            eta: b.eta,
            phi: b.phi,
            order_bound: b.order_bound,
            equations: eq,
            unknowns: unk,
            nullity: nul,
        };
        let Some(sol) = solved else {
            last = Some(diag(0, 0, 0));
            continue;
        };
        let telescoper = OreOperator::from_dx_coeffs(&sol.t.into_iter().map(RatFunc::from_poly).collect::<Vec<_>>());
        let certificate_operator = sys.lifts.as_ref().map(|_| certificate_as_operator(sys, &sol.c).expect("lifts present"));
        let pair = TelescopePair {
            telescoper,
            certificate: sol.c,
            certificate_operator,
            diagnostics: diag(sol.equations, sol.unknowns, sol.nullity),
        };
        assert!(verify_pair(sys, &pair.telescoper, &pair.certificate), "telescoper failed verification");
        return Ok(pair);
    }
    Err(TelescopeError::NotFound {
        r_start: opts.r_start,
        r_max,
        diagnostics: last.map(|d| d.to_string()).unwrap_or_default(),
    })
}

/// Checks `T ≠ 0` and `T·e = ∂y·c` by applying `∂x` repeatedly to `e`.
pub fn verify_pair(sys: &DFiniteSystem, t: &OreOperator, c: &[RatFunc]) -> bool {
    if t.is_zero() || !t.is_x_only() || c.len() != sys.n {
        return false;
    }
    let mut acc = vec![RatFunc::zero(); sys.n];
    let mut cur = sys.e_vector();
    for (i, ti) in t.dx_coeffs().iter().enumerate() {
        if i > 0 {
            cur = sys.vector_apply_dx(&cur);
        }
        if !ti.is_zero() {
            for (a, b) in acc.iter_mut().zip(&cur) {
                *a = &*a + &(ti * b);
            }
        }
    }
    let dc = sys.vector_apply_dy(c);
    acc.iter().zip(&dc).all(|(a, b)| a == b)
}

/// `C = Σ c_i·B_i` for the lifts `B_i` of the basis.
pub fn certificate_as_operator(sys: &DFiniteSystem, c: &[RatFunc]) -> Result<OreOperator, TelescopeError> {
    let lifts = sys.lifts.as_ref().ok_or(TelescopeError::NoLifts)?;
    Ok(lifts
        .iter()
        .zip(c)
        .fold(OreOperator::zero(), |acc, (b, ci)| &acc + &b.scale_left(ci)))
}
