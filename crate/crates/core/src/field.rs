//! The exact-field abstraction shared by the polynomial and linear-algebra
//! kernels.

use std::fmt::{Debug, Display};
use std::ops::{Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// An exact field of characteristic zero.
///
/// `Zero` and `One` come from num-traits; inversion is partial because it is
/// the only operation that can fail on a valid element.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: Rational) -> Self;

    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Field for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Writes `c_1*m_1 + c_2*m_2 ...` with unit coefficients elided, negative
/// single-term coefficients pulled into the sign and compound ones
/// parenthesised. An empty monomial stands for `1`.
pub(crate) fn write_terms(
    f: &mut std::fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, String)>,
) -> std::fmt::Result {
    let mut first = true;
    for (cs, mono) in terms {
        let tail = cs.strip_prefix('-').unwrap_or(&cs);
        let multi = tail.contains(" + ") || tail.contains(" - ");
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) if !multi => (true, rest.to_string()),
            _ => (false, cs.clone()),
        };
        let mag = if multi { format!("({mag})") } else { mag };
        let body = if mono.is_empty() {
            mag
        } else if mag == "1" {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        match (first, neg) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
