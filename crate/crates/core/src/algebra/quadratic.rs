use super::ring::{qi, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::cmp::Ordering;
use std::fmt;

/// An element `a + b·√d` of the quadratic field ℚ(√d).
///
/// `d` is a non-square integer shared by both operands of every binary
/// operation; mixing radicands panics.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QuadraticNumber {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, d: impl Into<BigInt>) -> Self {
        QuadraticNumber { a, b, d: d.into() }
    }

    pub fn rational(a: BigRational, d: impl Into<BigInt>) -> Self {
        Self::new(a, qi(0), d)
    }

    /// `√d` itself.
    pub fn root(d: impl Into<BigInt>) -> Self {
        Self::new(qi(0), qi(1), d)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.d.clone())
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.d, rhs.d, "mixed radicands in quadratic field arithmetic");
    }

    /// Exact sign, using `√d > 0`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&qi(0));
        let sb = self.b.cmp(&qi(0));
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        // Opposite signs: compare a² with d·b².
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * d.sqrt()
    }
}

impl Ring for QuadraticNumber {
    fn zero_like(&self) -> Self {
        Self::rational(qi(0), self.d.clone())
    }
    fn one_like(&self) -> Self {
        Self::rational(qi(1), self.d.clone())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self::new(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone())
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self::new(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let d = BigRational::from_integer(self.d.clone());
        Self::new(
            &self.a * &rhs.a + &self.b * &rhs.b * d,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.d.clone(),
        )
    }
    fn neg_ref(&self) -> Self {
        Self::new(-&self.a, -&self.b, self.d.clone())
    }
    fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c, self.d.clone())
    }
    fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        (!n.is_zero()).then(|| self.conj().scale(&n.recip()))
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*sqrt({})", self.a, sign, self.b.abs(), self.d)
    }
}
