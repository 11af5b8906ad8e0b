//! Exact D'Arcais polynomials for integer-valued arithmetic functions,
//! their factorization modulo primes, and non-root certificates for
//! arguments `a*zeta_m + b` and `a*omega_D + b`.
//!
//! The crate is organized bottom-up:
//!
//! - [`arith`]: elementary number theory and the arithmetic function `g`.
//! - [`poly`]: dense polynomials over `Z` and `Q`.
//! - [`darcais`]: `A_n^g`, `P_n^g`, the independent oracles, exact
//!   evaluators and the Routh-Hurwitz test.
//! - [`polymod`]: polynomials over `F_p`, complete factorization,
//!   cyclotomic polynomials and `A_n^g mod p`.
//! - [`numfield`]: minimal polynomials, indices and prime splitting for the
//!   shifted generators.
//! - [`certify`]: theorem predicates, the local-obstruction search and the
//!   strategy chain that produces certificates.

pub mod arith;
pub mod certify;
pub mod darcais;
pub mod error;
pub mod numfield;
pub mod poly;
pub mod polymod;

pub use arith::ArithmeticFunction;
pub use error::{Error, Result};
pub use poly::{IntPoly, RatPoly};
