//! Exact arithmetic for second-order linear recurrences.

#![allow(clippy::result_large_err)]

pub mod arith;
pub mod error;
pub mod group;
pub mod lab;
pub mod laxton;
pub mod modp;
pub mod primes;
pub mod rational;
pub mod ring;
mod serde_int;
pub mod transforms;

pub use error::{Error, Result};
pub use group::GroupElement;
pub use rational::Rational;
pub use lab::{Convention, DensityReport, DivisorLab, PrimeWindow};
pub use laxton::{laxton_eq, laxton_torsion, LaxtonElement, TorsionTable};
pub use modp::{is_divisor, modp_context, ModpContext, Trichotomy};
pub use ring::{ParamPair, RingElement};
pub use transforms::{classify_cyclotomic, CyclotomicClass};
