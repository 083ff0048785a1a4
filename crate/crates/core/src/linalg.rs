//! Exact nullspaces over `K[x]` by fraction-free Gauss–Jordan elimination.
//!
//! Rows are first cleared of rational denominators. Matrices whose entries
//! involve only `x` run on dense integer polynomials; anything with
//! parameters falls back to the sparse [`Poly`]. Every returned vector is
//! checked against the input before it is handed out.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{gcd_all, lcm, Monomial, Poly, Rat, RatFunc, X, Y};

/// Exact arithmetic needed by the elimination.
pub trait Ring: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other`, which must be exact.
    fn div_exact(&self, other: &Self) -> Self;
    /// Pivot preference, smaller is better.
    fn size_key(&self) -> (i64, usize);
}

impl Ring for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        Poly::div_exact(self, other).expect("fraction-free step is exact")
    }
    fn size_key(&self) -> (i64, usize) {
        (self.total_degree().unwrap_or(0) as i64, self.num_terms())
    }
}

/// Dense polynomial in `x` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZxPoly(Vec<BigInt>);

impl ZxPoly {
    fn trimmed(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        ZxPoly(c)
    }

    fn from_poly(p: &Poly) -> Self {
        let mut c = vec![BigInt::zero(); p.degree(X).map(|d| d as usize + 1).unwrap_or(0)];
        for (m, a) in p.terms() {
            assert!(a.is_integer(), "dense path expects integer coefficients");
            c[m.exp(X) as usize] = a.to_integer();
        }
        ZxPoly::trimmed(c)
    }

    fn to_poly(&self) -> Poly {
        Poly::from_terms(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| (Monomial::var(X, i as u32), Rat::from_integer(a.clone()))),
        )
    }
}

impl Ring for ZxPoly {
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return ZxPoly(Vec::new());
        }
        let mut c = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZxPoly::trimmed(c)
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_default();
            let b = other.0.get(i);
            c.push(match b {
                Some(b) => a - b,
                None => a,
            });
        }
        ZxPoly::trimmed(c)
    }
    fn neg(&self) -> Self {
        ZxPoly(self.0.iter().map(|a| -a).collect())
    }
    fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.0.is_empty(), "division by zero");
        if self.0.is_empty() {
            return ZxPoly(Vec::new());
        }
        let db = other.0.len() - 1;
        let lead = &other.0[db];
        let mut rem = self.0.clone();
        assert!(rem.len() > db, "fraction-free step is exact");
        let mut q = vec![BigInt::zero(); rem.len() - db];
        for k in (0..q.len()).rev() {
            let (quo, r) = rem[k + db].div_rem(lead);
            assert!(r.is_zero(), "fraction-free step is exact");
            if !quo.is_zero() {
                for (j, b) in other.0.iter().enumerate() {
                    rem[k + j] -= &quo * b;
                }
            }
            q[k] = quo;
        }
        assert!(rem.iter().all(|a| a.is_zero()), "fraction-free step is exact");
        ZxPoly::trimmed(q)
    }
    fn size_key(&self) -> (i64, usize) {
        let bits = self.0.iter().map(|a| a.bits() as usize).sum();
        (self.0.len() as i64 - 1, bits)
    }
}

/// Runs `f` with at most `threads` worker threads; `Some(0)` and `Some(1)`
/// mean sequential, `None` uses the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        None => f(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
    }
}

/// Row updates are spread over threads only for matrices with at least
/// this many entries.
const PARALLEL_CUTOFF: usize = 256;

struct Reduced<R> {
    rows: Vec<Vec<R>>,
    pivots: Vec<usize>,
}

/// Fraction-free Gauss–Jordan: afterwards every pivot row has the common
/// pivot value in its pivot column and zeros in all other pivot columns.
fn gauss_jordan<R: Ring>(mut rows: Vec<Vec<R>>, cols: usize) -> Reduced<R> {
    let parallel = rows.len() * cols >= PARALLEL_CUTOFF;
    let mut pivots = Vec::new();
    let mut prev: Option<R> = None;
    let mut rank = 0;
    for c in 0..cols {
        let best = (rank..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| (rows[i][c].size_key(), i));
        let Some(k) = best else {
            continue;
        };
        rows.swap(rank, k);
        let pivot_row = rows[rank].clone();
        let p = pivot_row[c].clone();
        let update = |i: usize, row: &mut Vec<R>| {
            if i == rank {
                return;
            }
            let a = row[c].clone();
            for j in 0..cols {
                let mut v = row[j].mul(&p);
                if !a.is_zero() && !pivot_row[j].is_zero() {
                    v = v.sub(&a.mul(&pivot_row[j]));
                }
                if let Some(d) = &prev {
                    v = v.div_exact(d);
                }
                row[j] = v;
            }
        };
        if parallel {
            rows.par_iter_mut().enumerate().for_each(|(i, row)| update(i, row));
        } else {
            rows.iter_mut().enumerate().for_each(|(i, row)| update(i, row));
        }
        prev = Some(p);
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    Reduced { rows, pivots }
}

fn basis_from<R: Ring>(red: &Reduced<R>, cols: usize, zero: R) -> Vec<Vec<R>> {
    let last = red.rows.len().checked_sub(1).expect("nonzero matrix has a pivot");
    let d = red.rows[last][red.pivots[last]].clone();
    (0..cols)
        .filter(|c| !red.pivots.contains(c))
        .map(|f| {
            let mut w = vec![zero.clone(); cols];
            w[f] = d.clone();
            for (i, &pc) in red.pivots.iter().enumerate() {
                w[pc] = red.rows[i][f].neg();
            }
            w
        })
        .collect()
}

/// Clears rational denominators row by row.
fn integral_rows(a: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    a.iter()
        .map(|row| {
            let mut den = BigInt::one();
            for p in row {
                for (_, c) in p.terms() {
                    den = den.lcm(c.denom());
                }
            }
            let s = Rat::from_integer(den);
            row.iter().map(|p| p.scale(&s)).collect()
        })
        .collect()
}

fn normalize(w: Vec<Poly>) -> Vec<Poly> {
    let g = gcd_all(w.iter().filter(|p| !p.is_zero()));
    let mut w: Vec<Poly> = w.into_iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
    if let Some(first) = w.iter().find(|p| !p.is_zero()) {
        if first.leading_coeff().is_negative() {
            w = w.into_iter().map(|p| -&p).collect();
        }
    }
    w
}

/// `A·w` for a polynomial matrix.
pub fn mat_vec(a: &[Vec<Poly>], w: &[Poly]) -> Vec<Poly> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(w)
                .filter(|(p, q)| !p.is_zero() && !q.is_zero())
                .fold(Poly::zero(), |acc, (p, q)| &acc + &(p * q))
        })
        .collect()
}

/// A basis of `{w : A·w = 0}` for a matrix over `K[x]`, one vector per
/// non-pivot column in increasing order. Vectors are primitive with a
/// positive leading coefficient in their first nonzero entry.
pub fn nullspace(a: &[Vec<Poly>], cols: usize) -> Vec<Vec<Poly>> {
    for row in a {
        assert_eq!(row.len(), cols, "ragged matrix");
        assert!(row.iter().all(|p| !p.contains_var(Y)), "matrix entries must not involve y");
    }
    let rows: Vec<Vec<Poly>> = integral_rows(a)
        .into_iter()
        .filter(|r| r.iter().any(|p| !p.is_zero()))
        .collect();
    if rows.is_empty() {
        return (0..cols)
            .map(|f| {
                let mut w = vec![Poly::zero(); cols];
                w[f] = Poly::one();
                w
            })
            .collect();
    }
    let dense = rows.iter().flatten().all(|p| p.support() & !(1u32 << X) == 0);
    let raw: Vec<Vec<Poly>> = if dense {
        let zrows = rows.iter().map(|r| r.iter().map(ZxPoly::from_poly).collect()).collect();
        let red = gauss_jordan(zrows, cols);
        basis_from(&red, cols, ZxPoly(Vec::new()))
            .into_iter()
            .map(|w| w.iter().map(ZxPoly::to_poly).collect())
            .collect()
    } else {
        let red = gauss_jordan(rows, cols);
        basis_from(&red, cols, Poly::zero())
    };
    raw.into_iter()
        .map(|w| {
            let w = normalize(w);
            assert!(mat_vec(a, &w).iter().all(Poly::is_zero), "nullspace vector fails A·w = 0");
            w
        })
        .collect()
}

/// Rank by the same elimination.
pub fn rank(a: &[Vec<Poly>], cols: usize) -> usize {
    cols - nullspace(a, cols).len()
}

/// Nullspace of a matrix over `K(x)`: each row is multiplied by the lcm of
/// its denominators first.
pub fn nullspace_ratfunc(a: &[Vec<RatFunc>], cols: usize) -> Vec<Vec<Poly>> {
    let rows: Vec<Vec<Poly>> = a
        .iter()
        .map(|row| {
            let den = row.iter().fold(Poly::one(), |acc, c| lcm(&acc, c.den()));
            row.iter()
                .map(|c| c.num() * &den.div_exact(c.den()).expect("lcm"))
                .collect()
        })
        .collect();
    nullspace(&rows, cols)
}
