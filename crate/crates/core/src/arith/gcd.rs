//! Multivariate gcd by recursive primitive remainder sequences.
//!
//! Every polynomial result is normalized: coprime integer coefficients and a
//! positive leading coefficient under the graded-lex order.

use super::monomial::{Monomial, Var, MAX_VARS};
use super::heugcd::heu_gcd;
use super::poly::Poly;

/// Greatest common divisor over `Q[x, y, params]`; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.normalized();
    }
    if a.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(b, a);
    }
    let (sa, sb) = (a.support(), b.support());
    // A variable present in only one operand can only live in its content.
    for v in 0..MAX_VARS {
        let bit = 1u32 << v;
        if sa & bit != 0 && sb & bit == 0 {
            return gcd(&content_in(a, v), b);
        }
        if sb & bit != 0 && sa & bit == 0 {
            return gcd(a, &content_in(b, v));
        }
    }
    if let Some(g) = heu_gcd(&a.normalized(), &b.normalized()) {
        return g;
    }
    let v = (0..MAX_VARS)
        .filter(|&v| sa & (1 << v) != 0)
        .min_by_key(|&v| a.degree(v).max(b.degree(v)))
        .expect("nonconstant operands");
    let (ca, pa) = split_content_in(a, v);
    let (cb, pb) = split_content_in(b, v);
    let c = gcd(&ca, &cb);
    let g = match image_degree_bound(&pa, &pb, v) {
        Some(0) => Poly::one(),
        Some(d) if Some(d) == pb.degree(v) && pb.divides(&pa) => pb,
        Some(d) if Some(d) == pa.degree(v) && pa.divides(&pb) => pa,
        _ if (pa.support() | pb.support()) == 1 << v => primitive_prs(pa, pb, v),
        _ => subresultant_prs(pa, pb, v),
    };
    (&c * &g).normalized()
}

/// Degree in `v` of the gcd of images under an evaluation of the other
/// variables that keeps both leading coefficients nonzero. This bounds the
/// degree of the true gcd from above.
fn image_degree_bound(a: &Poly, b: &Poly, v: Var) -> Option<u32> {
    const POINTS: [i64; 12] = [3, 5, -2, 7, 11, -4, 13, 2, -3, 17, 6, -5];
    let others = (a.support() | b.support()) & !(1u32 << v);
    if others == 0 {
        return None;
    }
    for attempt in 0..3 {
        let eval = |p: &Poly| {
            let mut p = p.clone();
            for w in (0..MAX_VARS).filter(|w| others >> w & 1 == 1) {
                let c = POINTS[(w * 5 + attempt * 7) % POINTS.len()];
                p = p.eval_var(w, &super::rat(c));
            }
            p
        };
        let (ia, ib) = (eval(a), eval(b));
        if ia.degree(v) != a.degree(v) || ib.degree(v) != b.degree(v) {
            continue;
        }
        return Some(primitive_prs(ia, ib, v).degree(v).unwrap_or(0));
    }
    None
}

/// Gcd of a list of polynomials, stopping early once it reaches one.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Poly {
    let mut g = Poly::zero();
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).normalized()
}

fn monomial_gcd(m: &Poly, b: &Poly) -> Poly {
    let mut common = m.terms()[0].0;
    for (t, _) in b.terms() {
        common = common.gcd(t);
        if common.is_one() {
            break;
        }
    }
    Poly::term(common, super::rat(1))
}

fn primitive_prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut f, mut g) = if a.degree(v) >= b.degree(v) { (a, b) } else { (b, a) };
    loop {
        let r = sparse_prem(&f, &g, v);
        if r.is_zero() {
            return g.normalized();
        }
        if r.degree(v) == Some(0) {
            return Poly::one();
        }
        f = g;
        g = primitive_part_in(&r, v);
    }
}

/// Subresultant remainder sequence; intermediate remainders are reduced by
/// exact divisions instead of content computations.
fn subresultant_prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut f, mut g) = if a.degree(v) >= b.degree(v) { (a, b) } else { (b, a) };
    let mut lc_g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = f.degree(v).unwrap() - g.degree(v).unwrap();
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return primitive_part_in(&g, v);
        }
        if r.degree(v) == Some(0) {
            return Poly::one();
        }
        let divisor = &lc_g * &h.pow(delta);
        f = g;
        g = r.div_exact(&divisor).expect("subresultant division is exact");
        lc_g = f.lc_in(v);
        h = if delta == 0 {
            h
        } else {
            lc_g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

/// Content with respect to `v`: the normalized gcd of the coefficients of
/// `p` as a polynomial in `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let coeffs = p.coeffs_in(v);
    let mut nonzero: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.num_terms());
    gcd_all(nonzero)
}

/// Splits `p = c * q` with `c` free of `v` and `q` primitive in `v` with a
/// positive leading coefficient.
pub fn split_content_in(p: &Poly, v: Var) -> (Poly, Poly) {
    if p.is_zero() {
        return (Poly::zero(), Poly::zero());
    }
    let c = content_in(p, v);
    let q = p.div_exact(&c).expect("content divides");
    let (unit, q) = q.primitive_split();
    (c.scale(&unit), q)
}

pub fn primitive_part_in(p: &Poly, v: Var) -> Poly {
    split_content_in(p, v).1
}

/// Gcd in `K(other variables)[v]`, i.e. the gcd with every factor free of
/// `v` removed.
pub fn prim_gcd_in(a: &Poly, b: &Poly, v: Var) -> Poly {
    primitive_part_in(&gcd(a, b), v)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` with respect to `v`.
pub fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (da, db) = match (a.degree(v), b.degree(v)) {
        (Some(da), Some(db)) => (da, db),
        (_, None) => panic!("pseudo-remainder by zero"),
        (None, _) => return Poly::zero(),
    };
    if da < db {
        return a.clone();
    }
    let (r, steps) = prem_loop(a, b, v);
    let lc = b.lc_in(v);
    &r * &lc.pow(da - db + 1 - steps)
}

fn sparse_prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    prem_loop(a, b, v).0
}

fn prem_loop(a: &Poly, b: &Poly, v: Var) -> (Poly, u32) {
    let mut r = a.coeffs_in(v);
    let bc = b.coeffs_in(v);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut steps = 0;
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let k = top - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bj) in bc.iter().enumerate().take(db) {
            r[k + j] = &r[k + j] - &(&lr * bj);
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps += 1;
    }
    (Poly::from_coeffs_in(v, &r), steps)
}

/// The common monomial factor of all terms.
pub fn monomial_content(p: &Poly) -> Monomial {
    let mut it = p.terms().iter();
    let first = match it.next() {
        Some((m, _)) => *m,
        None => return Monomial::one(),
    };
    it.fold(first, |acc, (m, _)| acc.gcd(m))
}
