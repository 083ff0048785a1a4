//! Creative telescoping for ∂-finite systems over Ore algebras.
//!
//! A system is given by multiplication matrices `M = U/u` and `N = V/v`
//! describing how `∂x` and `∂y` act on a basis of a finite-dimensional
//! quotient module, together with the coordinate vector `e` of `1`. The
//! [`telescope`](telescope::telescope) entry point finds `T ∈ K(x)[∂x]` and a
//! certificate `c` with `T·e = ∂y·c`, searching orders up to the bound
//! `n·ϱ + φ` derived from the height of the system.

pub mod arith;
pub mod expr;
pub mod gff;
pub mod linalg;
pub mod ore;
pub mod properness;
pub mod sysfile;
pub mod system;
pub mod telescope;
