//! Ruling polynomials of graded Legendrian tangles, a Hall-type category of
//! flagged complexes over finite fields, and the functor comparing them.
//!
//! Modules, bottom up:
//! - [`ring`]: exact scalars in `Z[q, q^-1, (q-1)^-1]` and rationals.
//! - [`gfq`]: the fields `F_q` for small prime powers and linear algebra.
//! - [`flags`]: graded ordered sets, partial rulings, normal forms.
//! - [`hcat`]: morphisms as formal sums of triples, composition and tensor.
//! - [`tangle`]: slice words, ruling sweeps and the ruling polynomial.
//! - [`functor`]: images of tangles in the category and consistency reports.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod flags;
pub mod functor;
pub mod gfq;
pub mod hcat;
pub mod ring;
pub mod tangle;
