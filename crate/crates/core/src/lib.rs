//! Exact arithmetic for quadratic twists of elliptic curves over the rationals.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organised bottom-up:
//!
//! - [`arith`]: factorization, p-adic valuations, Kronecker symbols and
//!   fundamental discriminants;
//! - [`curves`]: Weierstrass models, isomorphisms, quadratic twists and
//!   global minimal models;
//! - [`localred`]: Tate's algorithm at every prime, including 2 and 3;
//! - [`twistlaws`]: the twist Tamagawa identities, the power-of-two
//!   quantities and the residue enumeration at 2.
//!
//! Every integer is a [`num_bigint::BigInt`]; nothing is computed in floating
//! point.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod curves;
mod error;
pub mod localred;
pub mod twistlaws;

pub use error::{Error, Result, SetupViolation};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
