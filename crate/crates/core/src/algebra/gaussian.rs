use super::ring::{qi, Ring, Scalar};
use num_rational::BigRational;
use num_traits::Signed;
use std::fmt;

/// A complex number `re + i·im` with rational parts.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: qi(0) }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(qi(0), qi(1))
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Ring for GaussianRational {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg_ref(&self) -> Self {
        GaussianRational::new(-&self.re, -&self.im)
    }
    fn scale(&self, c: &BigRational) -> Self {
        GaussianRational::new(&self.re * c, &self.im * c)
    }
    fn inverse(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let r = n.recip();
        Some(self.conj().scale(&r))
    }
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_real() && !self.re.is_negative() {
            return self.re.exact_sqrt().map(Self::real);
        }
        None
    }
}

impl Scalar for GaussianRational {
    fn from_rational(c: BigRational) -> Self {
        Self::real(c)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}
