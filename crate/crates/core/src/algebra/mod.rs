//! Exact sparse polynomial arithmetic over Q, single-relation quotients and Jacobians.

mod jacobian;
mod mono;
mod parse;
mod poly;
mod ring;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use jacobian::{adjugate, determinant, jacobian_det, jacobian_matrix};
pub use mono::{Mono, MonomialOrder};
pub use parse::{parse_poly, parse_rat};
pub use poly::Poly;
pub use ring::RingSpec;

pub(crate) use ring::is_identifier;

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `p` or `p/q`, the form the polynomial grammar reads back.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
