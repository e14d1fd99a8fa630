use super::ring::{qi, Ring, Scalar};
use super::series::{newton_solve, Series};
use crate::error::{Error, Result};
use num_rational::BigRational;

/// Polynomial `Σ c_{ij} Aⁱ gʲ` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariatePoly {
    /// `coeffs[i][j]` multiplies `Aⁱ gʲ`.
    coeffs: Vec<Vec<BigRational>>,
}

impl BivariatePoly {
    /// From rows indexed by the power of `A`, each listing powers of `g`.
    pub fn new(coeffs: Vec<Vec<BigRational>>) -> Self {
        BivariatePoly { coeffs }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&c| qi(c)).collect()).collect())
    }

    /// Rows indexed by the power of `A`, each listing powers of `g`.
    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.coeffs
    }

    /// Coefficients of `P(a, g)` as a polynomial in `g`, lowest first.
    pub fn at_a(&self, a: &BigRational) -> Vec<BigRational> {
        let width = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![qi(0); width];
        let mut power = qi(1);
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                out[j] += c * &power;
            }
            power *= a;
        }
        out
    }

    /// `∂/∂A`.
    pub fn d_a(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, row)| row.iter().map(|c| c * qi(i as i64)).collect())
                .collect(),
        )
    }

    /// `∂/∂g`.
    pub fn d_g(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|row| {
                    row.iter().enumerate().skip(1).map(|(j, c)| c * qi(j as i64)).collect()
                })
                .collect(),
        )
    }

    /// Evaluate at ring elements `a` and `g`.
    pub fn eval<R: Ring>(&self, a: &R, g: &R) -> R {
        let zero = a.zero_like();
        let mut acc = zero.clone();
        for row in self.coeffs.iter().rev() {
            let mut r = zero.clone();
            for c in row.iter().rev() {
                r = r.mul_ref(g);
                if !c.is_zero() {
                    r = r.add_ref(&a.one_like().scale(c));
                }
            }
            acc = acc.mul_ref(a).add_ref(&r);
        }
        acc
    }

    /// `P(A(x), x)` for a series `A`.
    pub fn eval_series<R: Ring>(&self, a: &Series<R>) -> Series<R> {
        let g = a.var_like();
        self.eval(a, &g)
    }
}

/// The series root `A(g)` of `P(A, g) = 0` with `A(0) = a0`, through `order`.
///
/// Requires `P(a0, 0) = 0` and `∂P/∂A(a0, 0)` invertible.
pub fn newton_lift<R: Scalar>(p: &BivariatePoly, a0: R, order: usize) -> Result<Series<R>> {
    let zero = R::zero();
    if !p.eval(&a0, &zero).is_zero() {
        return Err(Error::NotARoot);
    }
    let dp = p.d_a();
    if dp.eval(&a0, &zero).inverse().is_none() {
        return Err(Error::DegenerateRoot);
    }
    newton_solve(Series::constant(a0, 0), order, |a| {
        Ok((p.eval_series(a), dp.eval_series(a)))
    })
}

impl BivariatePoly {
    /// See [`newton_lift`].
    pub fn lift<R: Scalar>(&self, a0: R, order: usize) -> Result<Series<R>> {
        newton_lift(self, a0, order)
    }
}
