//! The exact ground field: complex numbers with rational real and
//! imaginary parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact complex scalar `re + im*i` over the rationals.
///
/// `BigRational` keeps every component in lowest terms with a positive
/// denominator, so equality of values is plain structural equality and no
/// tolerance appears anywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse. Panics on zero; callers guard with the
    /// genericity checks that make the relevant minors nonzero.
    pub fn inv(&self) -> GaussianRational {
        assert!(!self.is_zero(), "inverse of zero");
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussianRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        }
    }

    /// Parses one rational component: either `p` or `p/q` with no
    /// whitespace, `q > 0` after normalization.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let bad = |_| Error::Parse(format!("invalid rational literal {s:?}"));
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(
                BigInt::from_str(s).map_err(bad)?,
            )),
            Some((num, den)) => {
                let num = BigInt::from_str(num).map_err(bad)?;
                let den = BigInt::from_str(den).map_err(bad)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(num, den))
            }
        }
    }

    /// Canonical string for one component, always `p/q` form.
    pub fn rational_string(r: &BigRational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |r: &BigRational| {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{r}i")
            }
        };
        if self.re.is_zero() {
            return write!(f, "{}", imag(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}", self.re, imag(&-&self.im))
        } else {
            write!(f, "{}+{}", self.re, imag(&self.im))
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident, $method:ident;)*) => {$(
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops! { Add, add; Sub, sub; Mul, mul; Div, div; }

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn gauss(strategy_bound: i64) -> impl Strategy<Value = GaussianRational> {
        let b = strategy_bound;
        (
            -b..=b,
            1..=b,
            -b..=b,
            1..=b,
        )
            .prop_map(|(a, c, d, e)| GaussianRational::new(rat(a, c), rat(d, e)))
    }

    #[test]
    fn reduced_form_is_canonical() {
        let x = GaussianRational::new(rat(2, 4), rat(-3, -6));
        let y = GaussianRational::new(rat(1, 2), rat(1, 2));
        assert_eq!(x, y);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::from_int(0).to_string(), "0");
        assert_eq!(GaussianRational::from_ints(-2, 0).to_string(), "-2");
        assert_eq!(GaussianRational::from_ints(0, 1).to_string(), "i");
        assert_eq!(GaussianRational::from_ints(0, -1).to_string(), "-i");
        assert_eq!(
            GaussianRational::new(rat(-2, 3), rat(0, 1)).to_string(),
            "-2/3"
        );
        assert_eq!(
            GaussianRational::new(rat(1, 2), rat(-3, 4)).to_string(),
            "1/2-3/4i"
        );
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(GaussianRational::parse_rational("1/0").is_err());
        assert!(GaussianRational::parse_rational("x").is_err());
        assert_eq!(
            GaussianRational::parse_rational("-6/4").unwrap(),
            rat(-3, 2)
        );
        assert_eq!(GaussianRational::parse_rational("5").unwrap(), rat(5, 1));
    }

    proptest! {
        #[test]
        fn field_axioms(a in gauss(30), b in gauss(30), c in gauss(30)) {
            // associativity and commutativity
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            // distributivity
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // additive inverse
            prop_assert_eq!(&a - &a, GaussianRational::zero());
        }

        #[test]
        fn multiplicative_inverse(a in gauss(30)) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inv(), GaussianRational::one());
        }
    }
}
