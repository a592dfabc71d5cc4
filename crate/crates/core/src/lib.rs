//! Exact computational algebra over prime fields.
//!
//! The crate builds finite group algebras `F_p[G]` and related
//! finite-dimensional algebras, then decides three structural properties by
//! direct computation:
//!
//! - **centrally essential**: every nonzero element `r` admits nonzero
//!   central `c`, `d` with `r c = d` ([`central`]);
//! - **polynomial identities**: which standard identities `St_d` the algebra
//!   satisfies, with witnesses when it does not ([`pi`]);
//! - **algebraic degree over the center**: the least degree of a relation
//!   `c_n r^n + ... + c_0 = 0` with central coefficients and invertible
//!   leading coefficient ([`algdeg`]).
//!
//! The group side ([`group`]) centers on the family `G(n)`: `p`-groups of
//! order `p^{3n}` and nilpotence class 2 whose group algebras are centrally
//! essential yet satisfy no identity of bounded degree as `n` grows.
//! Everything reduces to exact linear algebra over `F_p` ([`linalg`]),
//! bit-packed for `p = 2`.
//!
//! All types are immutable after construction and safe to share across
//! threads; operations are pure functions. Randomized strategies take
//! explicit seeds and reproduce byte-identical reports.

pub mod algdeg;
pub mod algebra;
pub mod central;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod group;
pub mod linalg;
pub mod pi;
pub mod rng;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use linalg::{FpMatrix, Subspace};
