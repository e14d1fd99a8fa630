use super::ring::{qi, Ring};
use super::series::Series;
use crate::error::{Error, Result};
use num_rational::BigRational;
use std::fmt;

/// Truncated series in two variables `(h₁, h₂)`, keeping monomials of
/// total degree at most `P`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiSeries<R> {
    /// Monomials grouped by total degree: index `d(d+1)/2 + k` holds
    /// `h₁^{d−k} h₂^k`.
    coeffs: Vec<R>,
    order: usize,
}

fn idx(j: usize, k: usize) -> usize {
    let d = j + k;
    d * (d + 1) / 2 + k
}

impl<R: Ring> BiSeries<R> {
    pub fn zero_like(template: &R, order: usize) -> Self {
        let n = (order + 1) * (order + 2) / 2;
        BiSeries { coeffs: vec![template.zero_like(); n], order }
    }

    pub fn constant_like(c: R, order: usize) -> Self {
        let mut s = Self::zero_like(&c, order);
        s.coeffs[0] = c;
        s
    }

    /// `h₁` (`which = 0`) or `h₂` (`which = 1`).
    pub fn var_like(template: &R, which: usize, order: usize) -> Self {
        let mut s = Self::zero_like(template, order);
        if order >= 1 {
            s.coeffs[idx(1 - which, which)] = template.one_like();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `h₁ʲ h₂ᵏ`.
    ///
    /// # Panics
    /// If `j + k` exceeds the truncation order.
    pub fn get(&self, j: usize, k: usize) -> &R {
        assert!(j + k <= self.order, "monomial beyond truncation order");
        &self.coeffs[idx(j, k)]
    }

    pub fn set(&mut self, j: usize, k: usize, c: R) {
        assert!(j + k <= self.order, "monomial beyond truncation order");
        self.coeffs[idx(j, k)] = c;
    }

    /// All `(j, k, coefficient)` in order of total degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        (0..=self.order).flat_map(move |d| (0..=d).map(move |k| (d - k, k, &self.coeffs[idx(d - k, k)])))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let n = (order + 1) * (order + 2) / 2;
        BiSeries { coeffs: self.coeffs[..n].to_vec(), order }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> BiSeries<S> {
        BiSeries { coeffs: self.coeffs.iter().map(f).collect(), order: self.order }
    }

    /// Multiply the coefficient of `h₁ʲh₂ᵏ` by `f(j, k)`.
    pub fn map_terms(&self, f: impl Fn(usize, usize, &R) -> R) -> Self {
        let mut out = self.clone();
        for d in 0..=self.order {
            for k in 0..=d {
                let i = idx(d - k, k);
                out.coeffs[i] = f(d - k, k, &self.coeffs[i]);
            }
        }
        out
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let order = self.order.min(rhs.order);
        let n = (order + 1) * (order + 2) / 2;
        BiSeries { coeffs: (0..n).map(|i| f(&self.coeffs[i], &rhs.coeffs[i])).collect(), order }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, R::add_ref)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, R::sub_ref)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::zero_like(&self.coeffs[0], order);
        for (j1, k1, a) in self.terms() {
            if a.is_zero() || j1 + k1 > order {
                continue;
            }
            for (j2, k2, b) in rhs.terms() {
                if j1 + k1 + j2 + k2 > order {
                    break;
                }
                if !b.is_zero() {
                    let i = idx(j1 + j2, k1 + k2);
                    out.coeffs[i] = out.coeffs[i].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg_ref)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul_scalar(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn add_scalar(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].add_ref(c);
        out
    }

    /// Coefficientwise exact division by a ring element.
    pub fn div_scalar_exact(&self, d: &R) -> Option<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.div_exact(d)).collect::<Option<Vec<_>>>()?;
        Some(BiSeries { coeffs, order: self.order })
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .inverse()
            .ok_or(Error::NotInvertible { what: "bivariate series inverse" })?;
        // a = c₀(1 + x) with x = O(h); 1/a = c₀⁻¹ Σ (−x)ᵐ.
        let mut x = self.mul_scalar(&c0);
        x.coeffs[0] = c0.zero_like();
        let minus_x = x.neg();
        let mut acc = Self::constant_like(c0.one_like(), self.order);
        let mut term = acc.clone();
        for _ in 0..self.order {
            term = term.mul(&minus_x);
            acc = acc.add(&term);
        }
        Ok(acc.mul_scalar(&c0))
    }

    /// `∂/∂h₁`, valid through order `P − 1`.
    pub fn d_h1(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let mut out = Self::zero_like(&self.coeffs[0], order);
        for (j, k, c) in self.terms() {
            if j >= 1 && j + k - 1 <= order {
                out.coeffs[idx(j - 1, k)] = c.scale(&qi(j as i64));
            }
        }
        out
    }

    /// `∂/∂h₂`, valid through order `P − 1`.
    pub fn d_h2(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let mut out = Self::zero_like(&self.coeffs[0], order);
        for (j, k, c) in self.terms() {
            if k >= 1 && j + k - 1 <= order {
                out.coeffs[idx(j, k - 1)] = c.scale(&qi(k as i64));
            }
        }
        out
    }

    /// The `h₂ = 0` slice as a series in `h₁`.
    pub fn at_h2_zero(&self) -> Series<R> {
        Series::from_coeffs((0..=self.order).map(|j| self.get(j, 0).clone()).collect(), self.order)
    }

    /// Substitute `h₁ = a(g)`, `h₂ = b(g)`; both must vanish at `g = 0`.
    ///
    /// The result is valid through `min(P, order(a), order(b))`.
    pub fn compose(&self, a: &Series<R>, b: &Series<R>) -> Result<Series<R>> {
        if !a.coeff(0).is_zero() || !b.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(a.order()).min(b.order());
        let a = a.truncate(order);
        let b = b.truncate(order);
        let mut pa = vec![a.one_like_series()];
        let mut pb = vec![b.one_like_series()];
        for _ in 0..order {
            pa.push(pa.last().unwrap().mul_series(&a));
            pb.push(pb.last().unwrap().mul_series(&b));
        }
        let mut acc = Series::zero_like(&self.coeffs[0], order);
        for (j, k, c) in self.terms() {
            if j + k > order || c.is_zero() {
                continue;
            }
            acc = acc.add_series(&pa[j].mul_series(&pb[k]).mul_scalar(c));
        }
        Ok(acc)
    }
}

impl<R: Ring> fmt::Debug for BiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (j, k, c) in self.terms() {
            if !c.is_zero() {
                m.entry(&(j, k), c);
            }
        }
        m.finish()?;
        write!(f, " + O(h^{})", self.order + 1)
    }
}
