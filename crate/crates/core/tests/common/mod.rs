//! Random generators and independent oracles shared by the integration
//! tests and the acceptance harness.

#![allow(dead_code)]

use std::path::PathBuf;

use oretel_core::arith::{rat, FieldSpec, Poly, RatFunc, Var, X, Y};
use oretel_core::gff::{gff, rising_factorial, rising_factorial_poly};
use oretel_core::linalg::{mat_vec, nullspace, rank};
use oretel_core::ore::{OreKind, OreOperator, OreSpec};
use oretel_core::sysfile::read_system;
use oretel_core::system::DFiniteSystem;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const SYSTEM_FILES: [&str; 11] = [
    "diff_example.sys",
    "bessel_k0.sys",
    "bessel_k1.sys",
    "bessel_k2.sys",
    "gamma_xy.sys",
    "gamma_2x_y.sys",
    "gamma_sum_n1_r2.sys",
    "gamma_sum_n2_r1.sys",
    "nonproper.sys",
    "basis_change.sys",
    "q_example.sys",
];

pub fn load(name: &str) -> DFiniteSystem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems").join(name);
    read_system(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Field with one parameter `q`, used for the q-kinds.
pub fn q_field() -> (FieldSpec, Var) {
    let field = FieldSpec::new(["q"]).unwrap();
    let q = field.lookup("q").unwrap();
    (field, q)
}

pub fn spec_for(x: OreKind, y: OreKind) -> OreSpec {
    if x.is_q() || y.is_q() {
        OreSpec::with_kinds_q(x, y, q_field().1).unwrap()
    } else {
        OreSpec::with_kinds(x, y).unwrap()
    }
}

pub fn random_kind(rng: &mut TestRng) -> OreKind {
    *OreKind::ALL.choose(rng).unwrap()
}

pub fn random_delta_kind(rng: &mut TestRng) -> OreKind {
    *[OreKind::Derivation, OreKind::ForwardDifference, OreKind::QDifference]
        .choose(rng)
        .unwrap()
}

/// Dense polynomial in `x, y` with small integer coefficients.
pub fn random_poly(rng: &mut TestRng, deg_x: u32, deg_y: u32) -> Poly {
    let mut terms = Vec::new();
    for i in 0..=deg_x {
        for j in 0..=deg_y {
            if rng.gen_bool(0.6) {
                let c: i64 = rng.gen_range(-4..=4);
                terms.push(&(&Poly::var(X).pow(i) * &Poly::var(Y).pow(j)) * &Poly::from_int(c));
            }
        }
    }
    terms.iter().fold(Poly::zero(), |acc, t| &acc + t)
}

pub fn random_nonzero_poly(rng: &mut TestRng, deg_x: u32, deg_y: u32) -> Poly {
    loop {
        let p = random_poly(rng, deg_x, deg_y);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_small_ratfunc(rng: &mut TestRng) -> RatFunc {
    let den = if rng.gen_bool(0.5) { random_nonzero_poly(rng, 1, 1) } else { Poly::one() };
    RatFunc::new(random_poly(rng, 1, 1), den).unwrap()
}

pub fn random_ratfunc(rng: &mut TestRng) -> RatFunc {
    let num = random_poly(rng, 2, 2);
    let den = random_nonzero_poly(rng, 1, 1);
    RatFunc::new(num, den).unwrap()
}

pub fn random_nonzero_ratfunc(rng: &mut TestRng) -> RatFunc {
    loop {
        let f = random_ratfunc(rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Product of `σy`-shifted copies of a few random factors, so that the
/// factorization in `y` has nontrivial factorial structure.
pub fn random_shifted_product(rng: &mut TestRng, spec: &OreSpec) -> Poly {
    let mut p = Poly::from_int(rng.gen_range(1..=3));
    for _ in 0..rng.gen_range(1..=3) {
        let f = loop {
            let f = random_poly(rng, 1, 1);
            if f.degree(Y).unwrap_or(0) > 0 {
                break f;
            }
        };
        for _ in 0..rng.gen_range(1..=2) {
            p = &p * &spec.sigma_pow_poly(&f, Y, rng.gen_range(0..=3));
        }
    }
    p
}

/// Operator of order at most one in each of `∂x, ∂y` with coefficients
/// `p/d`, `p` of degree at most one in each variable and `d` linear or one.
pub fn random_operator(rng: &mut TestRng) -> OreOperator {
    let mut op = OreOperator::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = random_small_ratfunc(rng);
        op.add_term(rng.gen_range(0..=1), rng.gen_range(0..=1), c);
    }
    op
}

// ---- identity checks ----

/// `p·σy(⌈p⌉) = ⌊p⌋·σy(p)`.
pub fn border_identity(p: &Poly, spec: &OreSpec) -> Result<(), String> {
    let g = gff(p, Y, spec).map_err(|e| e.to_string())?;
    let lhs = p * &spec.sigma_poly(&g.right_border(Y, spec), Y);
    let rhs = &g.left_border() * &spec.sigma_poly(p, Y);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("border identity fails for {p:?}"))
    }
}

/// `p | ⌊p⌋·δy(p)`.
pub fn border_divisibility(p: &Poly, spec: &OreSpec) -> Result<(), String> {
    let g = gff(p, Y, spec).map_err(|e| e.to_string())?;
    let target = &g.left_border() * &spec.delta_poly(p, Y);
    if p.divides(&target) {
        Ok(())
    } else {
        Err(format!("{p:?} does not divide its left border times its delta"))
    }
}

/// `δ(fac(a, n)) = fac(a, n)/a · Σ_{i<n} δ(σ^i(a))`.
pub fn delta_of_rising_factorial(a: &RatFunc, n: u32, spec: &OreSpec) -> Result<(), String> {
    let fac = rising_factorial(a, n, Y, spec);
    let lhs = spec.delta(&fac, Y);
    let mut sum = RatFunc::zero();
    for i in 0..n {
        sum = &sum + &spec.delta(&spec.sigma_pow(a, Y, i as i64), Y);
    }
    let rhs = &fac.div(a).map_err(|e| e.to_string())? * &sum;
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("delta of fac({a:?}, {n}) disagrees"))
    }
}

/// `δ(∏ a_i) = Σ_i (∏_{j<i} σ(a_j)) δ(a_i) (∏_{j>i} a_j)`.
pub fn product_rule(factors: &[RatFunc], spec: &OreSpec) -> Result<(), String> {
    let prod = factors.iter().fold(RatFunc::one(), |acc, a| &acc * a);
    let lhs = spec.delta(&prod, Y);
    let mut rhs = RatFunc::zero();
    for i in 0..factors.len() {
        let mut term = spec.delta(&factors[i], Y);
        for (j, a) in factors.iter().enumerate() {
            if j < i {
                term = &term * &spec.sigma(a, Y);
            } else if j > i {
                term = &term * a;
            }
        }
        rhs = &rhs + &term;
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err("product rule disagrees".into())
    }
}

/// Associativity of the product, `∂x∂y = ∂y∂x`, and agreement of the
/// product with composition of actions.
pub fn operator_laws(
    a: &OreOperator,
    b: &OreOperator,
    c: &OreOperator,
    f: &RatFunc,
    spec: &OreSpec,
) -> Result<(), String> {
    let ab_c = a.mul(b, spec).mul(c, spec);
    let a_bc = a.mul(&b.mul(c, spec), spec);
    if ab_c != a_bc {
        return Err("product is not associative".into());
    }
    if OreOperator::dx().mul(&OreOperator::dy(), spec) != OreOperator::dy().mul(&OreOperator::dx(), spec) {
        return Err("dx and dy do not commute".into());
    }
    let lhs = a.mul(b, spec).apply_rat(f, spec);
    let rhs = a.apply_rat(&b.apply_rat(f, spec), spec);
    if lhs != rhs {
        return Err("action does not respect the product".into());
    }
    Ok(())
}

/// `∂x∂y·w = ∂y∂x·w`.
pub fn compatibility(sys: &DFiniteSystem, w: &[RatFunc]) -> Result<(), String> {
    let xy = sys.vector_apply_dx(&sys.vector_apply_dy(w));
    let yx = sys.vector_apply_dy(&sys.vector_apply_dx(w));
    if xy == yx {
        Ok(())
    } else {
        Err("dx and dy actions do not commute".into())
    }
}

/// Random polynomial matrix over `K[x]` with planted dependencies.
pub fn random_matrix(rng: &mut TestRng) -> (Vec<Vec<Poly>>, usize) {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=5);
    let mut a: Vec<Vec<Poly>> =
        (0..rows).map(|_| (0..cols).map(|_| random_poly(rng, 2, 0)).collect()).collect();
    if rows > 1 && rng.gen_bool(0.5) {
        let k = random_poly(rng, 1, 0);
        let combined: Vec<Poly> = a[0].iter().zip(&a[1]).map(|(p, q)| &(&k * p) + q).collect();
        a[rows - 1] = combined;
    }
    (a, cols)
}

/// Every basis vector is annihilated, the basis is independent and
/// `rank + nullity = cols`.
pub fn nullspace_postcheck(a: &[Vec<Poly>], cols: usize) -> Result<(), String> {
    let basis = nullspace(a, cols);
    for w in &basis {
        if w.iter().all(Poly::is_zero) {
            return Err("zero vector in the nullspace basis".into());
        }
        if mat_vec(a, w).iter().any(|e| !e.is_zero()) {
            return Err("A·w ≠ 0".into());
        }
    }
    if rank(a, cols) + basis.len() != cols {
        return Err("rank + nullity ≠ cols".into());
    }
    if !basis.is_empty() && rank(&basis, cols) != basis.len() {
        return Err("nullspace basis is dependent".into());
    }
    Ok(())
}

// ---- gff oracle ----

/// Monic irreducible factors in `y`: linear `y + c` or quadratic
/// `y² + by + c` with negative discriminant.
pub fn random_atom(rng: &mut TestRng) -> Poly {
    let y = Poly::var(Y);
    if rng.gen_bool(0.6) {
        &y + &Poly::from_int(rng.gen_range(-3..=3))
    } else {
        loop {
            let b: i64 = rng.gen_range(-3..=3);
            let c: i64 = rng.gen_range(1..=6);
            if b * b < 4 * c {
                break &(&y.pow(2) + &y.scale(&rat(b))) + &Poly::from_int(c);
            }
        }
    }
}

/// Up to four shifted atoms with total degree at most six.
pub fn random_atom_product(rng: &mut TestRng, spec: &OreSpec) -> Vec<Poly> {
    let base: Vec<Poly> = (0..rng.gen_range(1..=2)).map(|_| random_atom(rng)).collect();
    let mut atoms: Vec<Poly> = Vec::new();
    let mut deg = 0;
    for _ in 0..rng.gen_range(1..=4) {
        let b = base.choose(rng).unwrap();
        let a = spec.sigma_pow_poly(b, Y, rng.gen_range(0..=3));
        let d = a.degree(Y).unwrap();
        if deg + d > 6 {
            break;
        }
        deg += d;
        atoms.push(a);
    }
    atoms
}

fn remove_atoms(pool: &mut Vec<Poly>, take: &[Poly]) -> bool {
    for t in take {
        match pool.iter().position(|a| a == t) {
            Some(i) => {
                pool.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

/// Greedy GFF by exhaustive search over sub-multisets of irreducible
/// factors: repeatedly take the longest factorial chain, and among those
/// the divisor of largest degree.
pub fn gff_oracle(atoms: &[Poly], spec: &OreSpec) -> Vec<(Poly, u32)> {
    let mut pool: Vec<Poly> = atoms.iter().map(Poly::normalized).collect();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    while !pool.is_empty() {
        let mut best: Option<(u32, u32, Vec<Poly>)> = None;
        for mask in 1u32..(1 << pool.len()) {
            let subset: Vec<Poly> =
                (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i].clone()).collect();
            let deg: u32 = subset.iter().map(|a| a.degree(Y).unwrap()).sum();
            let mut k = 0;
            loop {
                let mut trial = pool.clone();
                let chain: Vec<Poly> = (0..=k)
                    .flat_map(|i| subset.iter().map(move |a| (a, i)))
                    .map(|(a, i)| spec.sigma_pow_poly(a, Y, i).normalized())
                    .collect();
                if !remove_atoms(&mut trial, &chain) {
                    break;
                }
                k += 1;
            }
            let better = match &best {
                None => true,
                Some((bk, bd, _)) => k > *bk || (k == *bk && deg > *bd),
            };
            if k > 0 && better {
                best = Some((k, deg, subset));
            }
        }
        let (k, _, subset) = best.expect("some atom always forms a chain of length one");
        let chain: Vec<Poly> = (0..k)
            .flat_map(|i| subset.iter().map(move |a| (a, i)))
            .map(|(a, i)| spec.sigma_pow_poly(a, Y, i).normalized())
            .collect();
        assert!(remove_atoms(&mut pool, &chain));
        let f = subset.iter().fold(Poly::one(), |acc, a| &acc * a).normalized();
        match out.iter_mut().find(|e| e.1 == k) {
            Some(e) => e.0 = (&e.0 * &f).normalized(),
            None => out.push((f, k)),
        }
    }
    out.sort_by_key(|e| e.1);
    out
}

pub fn normalized_factors(factors: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = factors.iter().map(|(f, i)| (f.normalized(), *i)).collect();
    out.sort_by_key(|e| e.1);
    out
}

/// Multiplicity oracle for `σ = id`: factor `i` collects the atoms that
/// occur exactly `i` times.
pub fn multiplicity_oracle(atoms: &[Poly]) -> Vec<(Poly, u32)> {
    let mut distinct: Vec<(Poly, u32)> = Vec::new();
    for a in atoms.iter().map(Poly::normalized) {
        match distinct.iter_mut().find(|e| e.0 == a) {
            Some(e) => e.1 += 1,
            None => distinct.push((a, 1)),
        }
    }
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (a, m) in distinct {
        match out.iter_mut().find(|e| e.1 == m) {
            Some(e) => e.0 = (&e.0 * &a).normalized(),
            None => out.push((a, m)),
        }
    }
    out.sort_by_key(|e| e.1);
    out
}

/// `fac(P, r, x)` with `P = fac(p, a)` and `σx(p) = p + a`, against the
/// regrouping into `σy`-chains with `σy(p) = p + b`: writing
/// `a·r = s·b + t`, the first `t` residues get chains of length `s + 1`
/// and the remaining `b − t` residues chains of length `s`.
pub fn integer_linear_regrouping(a: u32, b: u32, c: i64, r: u32) -> Result<(), String> {
    let spec = OreSpec::with_kinds(OreKind::Shift, OreKind::Shift).unwrap();
    let p = &(&Poly::var(X).scale(&rat(a as i64)) + &Poly::var(Y).scale(&rat(b as i64)))
        + &Poly::from_int(c);
    let plus = |j: u32| &p + &Poly::from_int(j as i64);
    let block = (0..a).fold(Poly::one(), |acc, j| &acc * &plus(j));
    let lhs = rising_factorial_poly(&block, r, X, &spec);
    let (s, t) = ((a * r) / b, (a * r) % b);
    let mut rhs = Poly::one();
    for j in 0..b {
        let len = if j < t { s + 1 } else { s };
        rhs = &rhs * &rising_factorial_poly(&plus(j), len, Y, &spec);
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("regrouping fails for a={a} b={b} r={r}"))
    }
}
