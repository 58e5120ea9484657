//! Divisibility of `h(-qp)` by 2, 4, 8 and 16 for `q` in {3, 7, 11, 19, 43, 67, 163}
//! and primes `p = 1 mod 4`.
//!
//! Two independent routes are provided. The rational route ([`sixteen::e_p`]) uses
//! Legendre and rational quartic symbols together with a solution of `p = u^2 - q v^2`.
//! The ring route ([`sixteen::a_ideal`]) evaluates quartic residue symbols in
//! `O_{M_q}`, `M_q = Q(i, sqrt(q))`, at a generator of a prime above `p`. Both are
//! checked against reduced-form counting in [`classgroup`].

pub mod classgroup;
pub mod error;
pub mod harness;
pub mod ideals;
pub mod lattice;
pub mod modular;
pub mod ring;
pub mod sixteen;
pub mod symbols;

pub use error::{Error, Result};
pub use ring::{GaloisElement, MqElement, QContext, QuadElement, Subfield, UnitBase, SUPPORTED_Q};
pub use symbols::SymbolValue;
