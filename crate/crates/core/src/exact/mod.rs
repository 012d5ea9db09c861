//! Exact arithmetic: rationals, Gaussian rationals and the ordered Q-vector
//! space of rational linear combinations of logarithms of positive rationals.

mod form;
mod gaussian;
mod interval;
mod ln;
mod rational;

pub use form::LogLinearForm;
pub use gaussian::GaussianRational;
pub(crate) use interval::rational_to_f64_nearest;
pub use interval::DyadicInterval;
pub use ln::ln_interval;
pub use rational::{parse_rational, rational_size, Rational};

/// Sign of an exact real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        self as i8
    }

    pub fn of_rational(r: &Rational) -> Sign {
        use num_traits::{Signed, Zero};
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl core::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}
