use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::fmt;

/// Commutative ring with exact arithmetic.
///
/// Identities are produced from an existing element (`zero_like`,
/// `one_like`) so that rings whose elements carry context, such as
/// truncated series used as coefficients of other series, fit the same
/// interface.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;

    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;

    /// Exact quotient `self / d`, when it exists.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inverse().map(|i| self.mul_ref(&i))
    }

    /// A square root inside the ring, if one is known.
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_zero() || *self == self.one_like() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

/// A ring whose elements need no context, with an embedding of ℚ.
pub trait Scalar: Ring + fmt::Display {
    fn from_rational(c: BigRational) -> Self;

    fn zero() -> Self {
        Self::from_rational(qi(0))
    }

    fn one() -> Self {
        Self::from_rational(qi(1))
    }

    fn from_int(i: i64) -> Self {
        Self::from_rational(qi(i))
    }
}

/// The rational `n/d`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        qi(0)
    }
    fn one_like(&self) -> Self {
        qi(1)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
    fn inverse(&self) -> Option<Self> {
        (!Ring::is_zero(self)).then(|| self.recip())
    }
    fn exact_sqrt(&self) -> Option<Self> {
        let n = isqrt_exact(self.numer())?;
        let d = isqrt_exact(self.denom())?;
        Some(BigRational::new(n, d))
    }
}

impl Scalar for BigRational {
    fn from_rational(c: BigRational) -> Self {
        c
    }
}
