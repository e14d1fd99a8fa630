use super::ring::{Ring, Scalar};
use num_rational::BigRational;
use std::fmt;

/// Polynomial in the loop weight `n`, coefficients listed from degree 0.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ColorPoly<F = BigRational> {
    coeffs: Vec<F>,
}

impl<F: Scalar> ColorPoly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ColorPoly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `n`.
    pub fn n() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    /// `c·nᵏ`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn eval(&self, n: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(n).add_ref(c);
        }
        acc
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> ColorPoly<G> {
        ColorPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Long division; `None` unless the remainder vanishes.
    fn div_poly(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lead_inv = d.coeffs[dd].inverse()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.is_zero().then(Self::zero_poly);
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul_ref(&lead_inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub_ref(&c.mul_ref(dc));
            }
            quot[i] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::from_coeffs(quot))
    }

    fn zero_poly() -> Self {
        ColorPoly { coeffs: Vec::new() }
    }
}

impl<F: Scalar> Ring for ColorPoly<F> {
    fn zero_like(&self) -> Self {
        Self::zero_poly()
    }
    fn one_like(&self) -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..len).map(|k| self.coeff(k).add_ref(&rhs.coeff(k))).collect())
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..len).map(|k| self.coeff(k).sub_ref(&rhs.coeff(k))).collect())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_poly();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_coeffs(out)
    }
    fn neg_ref(&self) -> Self {
        ColorPoly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }
    fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.scale(c)).collect())
    }
    fn inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0].inverse().map(Self::constant),
            _ => None,
        }
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_poly(d)
    }
}

impl<F: Scalar> Scalar for ColorPoly<F> {
    fn from_rational(c: BigRational) -> Self {
        Self::constant(F::from_rational(c))
    }
}

impl<F: Scalar> fmt::Display for ColorPoly<F> {
    /// Renders highest degree first, e.g. `2*n^2 + n - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let neg = s.starts_with('-') && !s[1..].contains(['+', '-']);
            if neg {
                s.remove(0);
            }
            let compound = s.contains(['+', '-']);
            if compound {
                s = format!("({s})");
            }
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = s == "1";
            match k {
                0 => write!(f, "{s}")?,
                _ => {
                    if !unit {
                        write!(f, "{s}*")?;
                    }
                    if k == 1 {
                        write!(f, "n")?;
                    } else {
                        write!(f, "n^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
