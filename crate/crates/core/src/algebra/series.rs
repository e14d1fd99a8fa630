use super::ring::{qi, Ring, Scalar};
use crate::error::{Error, Result};
use num_rational::BigRational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Truncated power series `c₀ + c₁x + … + c_T x^T + O(x^{T+1})`.
///
/// The truncation order `T` is inclusive and always carried: the
/// coefficient vector has exactly `T + 1` entries. Binary operations on
/// operands of different orders truncate to the smaller one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Series from leading coefficients, zero-padded or cut to `order`.
    ///
    /// # Panics
    /// If `coeffs` is empty; use [`Series::zero_like`] instead.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        let z = coeffs[0].zero_like();
        coeffs.resize(order + 1, z);
        Series { coeffs }
    }

    /// Zero series in the ring of `template`.
    pub fn zero_like(template: &R, order: usize) -> Self {
        Series { coeffs: vec![template.zero_like(); order + 1] }
    }

    /// `c·x^k` through `order`.
    pub fn monomial_like(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero_like(&c, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^k`.
    ///
    /// # Panics
    /// If `k` exceeds the truncation order.
    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Cut to `min(order, self.order())`.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order()) + 1;
        Series { coeffs: self.coeffs[..n].to_vec() }
    }

    /// Raise the nominal order by padding with zeros. Only meaningful for
    /// approximants whose higher coefficients are about to be refined.
    pub(crate) fn pad(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order.max(self.order()))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Series { coeffs: (0..n).map(|k| f(&self.coeffs[k], &rhs.coeffs[k])).collect() }
    }

    pub fn add_series(&self, rhs: &Self) -> Self {
        self.zip(rhs, R::add_ref)
    }

    pub fn sub_series(&self, rhs: &Self) -> Self {
        self.zip(rhs, R::sub_ref)
    }

    pub fn mul_series(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        mul_from(self, 0, rhs, 0, order)
    }

    pub fn neg_series(&self) -> Self {
        self.map(R::neg_ref)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul_scalar(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Coefficientwise exact division by a ring element.
    pub fn div_scalar_exact(&self, d: &R) -> Option<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.div_exact(d)).collect::<Option<Vec<_>>>()?;
        Some(Series { coeffs })
    }

    pub fn add_scalar(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].add_ref(c);
        out
    }

    pub fn one_like_series(&self) -> Self {
        Self::monomial_like(self.coeffs[0].one_like(), 0, self.order())
    }

    /// The variable `x` in the same ring and order.
    pub fn var_like(&self) -> Self {
        Self::monomial_like(self.coeffs[0].one_like(), 1, self.order())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like_series();
        for _ in 0..e {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .inverse()
            .ok_or(Error::NotInvertible { what: "series inverse" })?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(c0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = c0.zero_like();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
                }
            }
            out.push(acc.mul_ref(&c0).neg_ref());
        }
        Ok(Series { coeffs: out })
    }

    pub fn div_series(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul_series(&rhs.inverse()?))
    }

    /// `f(g(x))`; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        let mut acc = Self::monomial_like(self.coeffs[0].clone(), 0, order);
        let mut power = g.clone();
        for k in 1..=order {
            if k > 1 {
                power = mul_from(&power, k - 1, &g, 1, order);
            }
            let fk = &self.coeffs[k];
            if !fk.is_zero() {
                for m in k..=order {
                    if !power.coeffs[m].is_zero() {
                        acc.coeffs[m] = acc.coeffs[m].add_ref(&power.coeffs[m].mul_ref(fk));
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Compositional inverse: `g` with `f(g(x)) = x`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        if order == 0 {
            return Ok(self.clone());
        }
        let f1 = self.coeffs[1]
            .inverse()
            .ok_or(Error::NotInvertible { what: "reversion linear coefficient" })?;
        let x = self.var_like();
        let df = self.derivative();
        let start = Self::monomial_like(f1, 1, 1);
        newton_solve(start, order, |y| {
            let n = y.order();
            let r = self.truncate(n).compose(y)?.sub_series(&x.truncate(n));
            let d = df.truncate(n).compose(y)?;
            Ok((r, d))
        })
    }

    /// Square root with the constant term's root from [`Ring::exact_sqrt`].
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let r0 = c0.exact_sqrt().ok_or_else(|| Error::NoExactSqrt(format!("{c0:?}")))?;
        let half = BigRational::new(1.into(), 2.into());
        let inv2r0 = r0
            .inverse()
            .ok_or(Error::NotInvertible { what: "square root" })?
            .scale(&half);
        let mut out = vec![r0];
        for k in 1..self.coeffs.len() {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.sub_ref(&out[j].mul_ref(&out[k - j]));
            }
            out.push(acc.mul_ref(&inv2r0));
        }
        Ok(Series { coeffs: out })
    }

    /// Formal derivative; the result has order `T − 1`.
    ///
    /// # Panics
    /// On a series of order 0, whose derivative carries no information.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "derivative of an order-0 series");
        Series {
            coeffs: (1..self.coeffs.len())
                .map(|k| self.coeffs[k].scale(&qi(k as i64)))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term; the result has order `T + 1`.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![self.coeffs[0].zero_like()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&BigRational::new(1.into(), (k as i64 + 1).into())));
        }
        Series { coeffs }
    }

    /// Multiply by `x^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![self.coeffs[0].zero_like(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Divide by `x^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InsufficientOrder { needed: k, available: self.order() });
        }
        if let Some(j) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::Invariant(format!(
                "dividing by x^{k}: coefficient of x^{j} is nonzero"
            )));
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }
}

/// Product of `a` and `b` known to vanish below `va` and `vb`, through `order`.
fn mul_from<R: Ring>(a: &Series<R>, va: usize, b: &Series<R>, vb: usize, order: usize) -> Series<R> {
    let mut out = Series::zero_like(&a.coeffs[0], order);
    for i in va..=order.min(a.order()) {
        let ai = &a.coeffs[i];
        if ai.is_zero() {
            continue;
        }
        let top = (order - i).min(b.order());
        for j in vb..=top {
            let bj = &b.coeffs[j];
            if !bj.is_zero() {
                out.coeffs[i + j] = out.coeffs[i + j].add_ref(&ai.mul_ref(bj));
            }
        }
    }
    out
}

/// Newton iteration for a series root `y` of `F(y) = 0`.
///
/// `start` must be correct in its constant term. `step` receives the
/// current approximant padded to some order `N` and returns `F(y)` and
/// `F′(y)` through order `N` (the derivative may be one order short).
/// Precision doubles each round; the final residual is checked to vanish
/// through `order`.
pub fn newton_solve<R, F>(start: Series<R>, order: usize, mut step: F) -> Result<Series<R>>
where
    R: Ring,
    F: FnMut(&Series<R>) -> Result<(Series<R>, Series<R>)>,
{
    let mut y = start;
    let mut known = y.order().min(order) + 1;
    y = y.truncate(known - 1);
    while known <= order {
        let n = (2 * known - 1).min(order);
        let yn = y.pad(n);
        let (r, d) = step(&yn)?;
        if r.order() < n {
            return Err(Error::InsufficientOrder { needed: n, available: r.order() });
        }
        let r = r.truncate(n).shift_down(known)?;
        let delta = r.div_series(&d.truncate(n - known))?;
        if delta.order() < n - known {
            return Err(Error::InsufficientOrder { needed: n, available: delta.order() + known });
        }
        y = yn.sub_series(&delta.shift_up(known));
        known = n + 1;
    }
    let (r, _) = step(&y)?;
    if let Some(j) = r.truncate(order).valuation() {
        return Err(Error::Invariant(format!("Newton residual nonzero at order {j}")));
    }
    Ok(y)
}

impl<R: Scalar> Series<R> {
    pub fn zero(order: usize) -> Self {
        Self::zero_like(&R::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial_like(R::one(), 0, order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::monomial_like(c, 0, order)
    }

    /// The variable `x`.
    pub fn var(order: usize) -> Self {
        Self::monomial_like(R::one(), 1, order)
    }

    pub fn from_ints(v: &[i64], order: usize) -> Self {
        Self::from_coeffs(v.iter().map(|&i| R::from_int(i)).collect(), order)
    }

    pub fn from_rationals(v: &[BigRational], order: usize) -> Self {
        Self::from_coeffs(v.iter().cloned().map(R::from_rational).collect(), order)
    }
}

impl<R: Ring> Ring for Series<R> {
    fn zero_like(&self) -> Self {
        Series::zero_like(&self.coeffs[0], self.order())
    }
    fn one_like(&self) -> Self {
        self.one_like_series()
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_series(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub_series(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_series(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg_series()
    }
    fn scale(&self, c: &BigRational) -> Self {
        Series::scale(self, c)
    }
    fn inverse(&self) -> Option<Self> {
        Series::inverse(self).ok()
    }
    fn exact_sqrt(&self) -> Option<Self> {
        self.sqrt().ok()
    }
}

impl<R: Ring> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series").field("order", &self.order()).field("coeffs", &self.coeffs).finish()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $impl:ident) => {
        impl<R: Ring> $tr<&Series<R>> for &Series<R> {
            type Output = Series<R>;
            fn $m(self, rhs: &Series<R>) -> Series<R> {
                self.$impl(rhs)
            }
        }
        impl<R: Ring> $tr<Series<R>> for Series<R> {
            type Output = Series<R>;
            fn $m(self, rhs: Series<R>) -> Series<R> {
                self.$impl(&rhs)
            }
        }
        impl<R: Ring> $tr<&Series<R>> for Series<R> {
            type Output = Series<R>;
            fn $m(self, rhs: &Series<R>) -> Series<R> {
                self.$impl(rhs)
            }
        }
    };
}

binop!(Add, add, add_series);
binop!(Sub, sub, sub_series);
binop!(Mul, mul, mul_series);

impl<R: Ring> Neg for &Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        self.neg_series()
    }
}

impl<R: Ring> Neg for Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        self.neg_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, GaussianRational};
    use proptest::prelude::*;

    type S = Series<BigRational>;

    fn ints(v: &[i64], t: usize) -> S {
        S::from_ints(v, t)
    }

    fn series(order: usize) -> impl Strategy<Value = S> {
        proptest::collection::vec((-9i64..9, 1i64..5), order + 1)
            .prop_map(move |v| S::from_coeffs(v.into_iter().map(|(a, b)| q(a, b)).collect(), order))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&ints(&[1, 1], 4) * &ints(&[1, -1], 4), ints(&[1, 0, -1], 4));
        assert_eq!(ints(&[1, -1], 3).inverse().unwrap(), ints(&[1, 1, 1, 1], 3));
        let g = ints(&[1, 2, 9], 2);
        assert_eq!(&g * &g, ints(&[1, 4, 22], 2));
        assert_eq!(
            ints(&[1], 3).div_series(&ints(&[0, 1], 3)),
            Err(Error::NotInvertible { what: "series inverse" })
        );
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = ints(&[1, 1, 1, 1, 1], 4);
        let b = ints(&[1, 1], 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn composition_examples() {
        let geo = ints(&[1, 1, 1, 1, 1, 1], 5);
        assert_eq!(geo.compose(&S::var(5)).unwrap(), geo);
        let sq = ints(&[0, 0, 1], 5);
        assert_eq!(sq.compose(&ints(&[0, 1, 1], 5)).unwrap(), ints(&[0, 0, 1, 2, 1], 5));
        assert_eq!(sq.compose(&ints(&[1, 1], 5)), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn reversion_examples() {
        let x = S::var(6);
        assert_eq!(x.revert().unwrap(), x);
        // w − w² inverts to the Catalan generating function.
        let c = ints(&[0, 1, -1], 6).revert().unwrap();
        assert_eq!(c, ints(&[0, 1, 1, 2, 5, 14, 42], 6));
        let f = ints(&[0, 1, 3, 1], 8);
        assert_eq!(f.revert().unwrap().revert().unwrap(), f);
        assert_eq!(
            ints(&[0, 0, 1], 4).revert(),
            Err(Error::NotInvertible { what: "reversion linear coefficient" })
        );
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(S::one(4).sqrt().unwrap(), S::one(4));
        let r = ints(&[1, -12], 3).sqrt().unwrap();
        assert_eq!(r, ints(&[1, -6, -18, -108], 3));
        assert_eq!(ints(&[1, 2, 1], 5).sqrt().unwrap(), ints(&[1, 1], 5));
        assert_eq!(
            ints(&[1, -12], 6).sqrt().unwrap(),
            ints(&[1, -12], 6).sqrt().unwrap().compose(&S::var(6)).unwrap()
        );
        assert!(matches!(ints(&[2, 1], 3).sqrt(), Err(Error::NoExactSqrt(_))));
    }

    #[test]
    fn shifts_and_calculus() {
        let s = ints(&[0, 0, 3, 4], 3);
        assert_eq!(s.shift_down(2).unwrap(), ints(&[3, 4], 1));
        assert!(s.shift_down(3).is_err());
        assert_eq!(s.derivative(), ints(&[0, 6, 12], 2));
        assert_eq!(s.derivative().integral(), s);
    }

    #[test]
    fn nested_series_ring() {
        // Coefficients are themselves series: (1 + y·x)⁻¹ = Σ (−y)ᵏ xᵏ.
        let y = S::var(3);
        let outer = Series::from_coeffs(vec![S::one(3), y.clone()], 3);
        let inv = outer.inverse().unwrap();
        assert_eq!(inv.coeff(2), &(&y * &y));
        assert_eq!(inv.coeff(3), &(&(&y * &y) * &y).neg_series());
    }

    #[test]
    fn gaussian_coefficients() {
        let i = GaussianRational::i();
        let s = Series::from_coeffs(vec![GaussianRational::zero(), i.clone()], 4);
        let r = s.revert().unwrap();
        assert_eq!(r.coeff(1), &i.neg_ref());
    }

    proptest! {
        #[test]
        fn ring_axioms(a in series(5), b in series(5), c in series(5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn division_inverts_multiplication(a in series(6), b in series(6)) {
            prop_assume!(!b.coeff(0).is_zero());
            prop_assert_eq!(&a.div_series(&b).unwrap() * &b, a);
        }

        #[test]
        fn reversion_is_two_sided(mut f in series(7)) {
            f = S::from_coeffs({ let mut c = f.coeffs().to_vec(); c[0] = qi(0); c }, 7);
            prop_assume!(!f.coeff(1).is_zero());
            let g = f.revert().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), S::var(7));
            prop_assert_eq!(g.compose(&f).unwrap(), S::var(7));
        }

        #[test]
        fn sqrt_squares_back(f in series(7)) {
            let f = f.add_scalar(&(qi(1) - f.coeff(0)));
            let r = f.sqrt().unwrap();
            prop_assert_eq!(&r * &r, f);
        }

        #[test]
        fn composition_is_associative(a in series(5), b in series(5), c in series(5)) {
            let b = b.add_scalar(&-b.coeff(0).clone());
            let c = c.add_scalar(&-c.coeff(0).clone());
            let lhs = a.compose(&b.compose(&c).unwrap()).unwrap();
            let rhs = a.compose(&b).unwrap().compose(&c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
