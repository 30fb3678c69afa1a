//! Exact divisor sums `sum_{n <= N} tau(n^2 + 2bn + c)` and explicit upper
//! bounds for them.
//!
//! The crate is `no_std` and needs only `alloc`. It provides:
//!
//! * [`arith`]: the Kronecker symbol, factor tables, `tau`, squarefree
//!   counting, and the root counts `rho(d)` computed by direct search and by
//!   the convolution `rho = mu^2 * chi`;
//! * [`character`]: the character `(4 delta / .)`, its partial sums, explicit
//!   Pólya–Vinogradov constants, and certified values of `L(1, chi)`;
//! * [`bounds`]: the explicit right-hand sides with directed rounding;
//! * [`divsum`]: exact divisor sums by factorization and by a hyperbola
//!   sieve.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod bounds;
pub mod character;
pub mod divsum;
mod error;
mod float;

pub use arith::{PrimeFactorTable, QuadraticPoly};
pub use bounds::BoundBreakdown;
pub use character::{CertifiedValue, Parity, QuadraticCharacter};
pub use divsum::{Method, SievePlan, SumResult};
pub use error::Error;
