//! Complex arithmetic for the numeric side: plain `f64` for exploration and
//! a software multi-precision type for the final digits.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_complex::Complex64;
use num_rational::BigRational;
use std::fmt;

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// The operations the Newton iterations and jets need.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    /// A constant carrying the same precision as `self`.
    fn lift(&self, c: Complex64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Nearest `f64` approximation.
    fn approx(&self) -> Complex64;

    fn zero_like(&self) -> Self {
        self.lift(Complex64::new(0.0, 0.0))
    }

    fn one_like(&self) -> Self {
        self.lift(Complex64::new(1.0, 0.0))
    }

    fn scale(&self, x: f64) -> Self {
        self.mul(&self.lift(Complex64::new(x, 0.0)))
    }

    fn norm(&self) -> f64 {
        self.approx().norm()
    }
}

impl Field for Complex64 {
    fn lift(&self, c: Complex64) -> Self {
        c
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn approx(&self) -> Complex64 {
        *self
    }
}

/// Binary digits for a requested number of decimal digits, with guard bits.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

/// A complex number with `BigFloat` parts at an explicit precision in bits.
#[derive(Clone)]
pub struct ComplexHP {
    pub re: BigFloat,
    pub im: BigFloat,
    pub prec: usize,
}

fn real_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let mut cc = Consts::new().expect("constant cache");
    x.format(Radix::Dec, RM, &mut cc)
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(f64::NAN)
}

impl ComplexHP {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        ComplexHP { re, im, prec }
    }

    pub fn from_c64(c: Complex64, prec: usize) -> Self {
        ComplexHP::new(BigFloat::from_f64(c.re, prec), BigFloat::from_f64(c.im, prec), prec)
    }

    /// Parse decimal real and imaginary parts.
    pub fn parse(re: &str, im: &str, prec: usize) -> Result<Self> {
        let mut cc = Consts::new().map_err(|e| Error::Numeric(format!("{e:?}")))?;
        let mut p = |s: &str| {
            let x = BigFloat::parse(s, Radix::Dec, prec, RM, &mut cc);
            if x.is_nan() {
                Err(Error::Numeric(format!("cannot parse {s}")))
            } else {
                Ok(x)
            }
        };
        let (re, im) = (p(re)?, p(im)?);
        Ok(ComplexHP::new(re, im, prec))
    }

    pub fn from_rational(q: &BigRational, prec: usize) -> Result<Self> {
        let n = ComplexHP::parse(&q.numer().to_string(), "0", prec)?;
        let d = ComplexHP::parse(&q.denom().to_string(), "0", prec)?;
        Ok(n.div(&d))
    }

    pub fn pi(prec: usize) -> Result<Self> {
        let mut cc = Consts::new().map_err(|e| Error::Numeric(format!("{e:?}")))?;
        Ok(ComplexHP::new(cc.pi(prec, RM), BigFloat::from_f64(0.0, prec), prec))
    }

    /// `re² + im²` as a real number.
    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec;
        let zero = BigFloat::from_f64(0.0, p);
        if self.re.is_zero() && self.im.is_zero() {
            return self.clone();
        }
        let r = self.norm_sqr().sqrt(p, RM);
        let two = BigFloat::from_f64(2.0, p);
        let a = r.add(&self.re, p, RM).div(&two, p, RM);
        let b = r.sub(&self.re, p, RM).div(&two, p, RM);
        let clamp = |x: BigFloat| if x.is_negative() { zero.clone() } else { x };
        let re = clamp(a).sqrt(p, RM);
        let mut im = clamp(b).sqrt(p, RM);
        if self.im.is_negative() {
            im = im.neg();
        }
        ComplexHP::new(re, im, p)
    }

    /// Decimal rendering of both parts with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        let mut cc = Consts::new().expect("constant cache");
        let mut f = |x: &BigFloat| {
            let s = x.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "NaN".into());
            truncate_significand(&s, digits.max(1))
        };
        (f(&self.re), f(&self.im))
    }
}

/// Keep the first `digits` significant digits of `d.ddd…e±x`.
fn truncate_significand(s: &str, digits: usize) -> String {
    let (mant, exp) = s.split_once('e').map_or((s, None), |(m, e)| (m, Some(e)));
    let mut out = String::new();
    let mut kept = 0;
    for c in mant.chars() {
        if c.is_ascii_digit() {
            if kept == digits {
                continue;
            }
            kept += 1;
        }
        out.push(c);
    }
    let out = out.trim_end_matches('.').to_string();
    match exp {
        Some(e) => format!("{out}e{e}"),
        None => out,
    }
}

impl fmt::Debug for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal(20);
        write!(f, "({re}, {im}) @{}b", self.prec)
    }
}

impl Field for ComplexHP {
    fn lift(&self, c: Complex64) -> Self {
        ComplexHP::from_c64(c, self.prec)
    }

    fn add(&self, o: &Self) -> Self {
        let p = self.prec;
        ComplexHP::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }

    fn sub(&self, o: &Self) -> Self {
        let p = self.prec;
        ComplexHP::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }

    fn mul(&self, o: &Self) -> Self {
        let p = self.prec;
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        ComplexHP::new(re, im, p)
    }

    fn div(&self, o: &Self) -> Self {
        let p = self.prec;
        let d = o.norm_sqr();
        let re = self.re.mul(&o.re, p, RM).add(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.im.mul(&o.re, p, RM).sub(&self.re.mul(&o.im, p, RM), p, RM);
        ComplexHP::new(re.div(&d, p, RM), im.div(&d, p, RM), p)
    }

    fn neg(&self) -> Self {
        ComplexHP::new(self.re.neg(), self.im.neg(), self.prec)
    }

    fn approx(&self) -> Complex64 {
        Complex64::new(real_to_f64(&self.re), real_to_f64(&self.im))
    }

    fn norm(&self) -> f64 {
        real_to_f64(&self.norm_sqr()).sqrt()
    }
}
