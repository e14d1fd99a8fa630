//! Exact expansions of the `n = −2` solution in the elliptic modulus and in
//! the renormalized coupling.

use crate::algebra::{q, qi, BigInt, BigRational, GaussianRational, Ring, Scalar, Series};
use crate::error::{Error, Result};

/// `K/(π/2)` and `E/(π/2)` as series in `u = k²`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticSeries {
    pub k: Series<BigRational>,
    pub e: Series<BigRational>,
}

/// `((2m−1)!!/(2m)!!)²`, built up by the ratio `(2m−1)/(2m)`.
pub fn elliptic_series(order: usize) -> EllipticSeries {
    let mut c = qi(1);
    let mut k = vec![c.clone()];
    let mut e = vec![qi(1)];
    for m in 1..=order {
        let r = q(2 * m as i64 - 1, 2 * m as i64);
        c = c * &r * &r;
        k.push(c.clone());
        e.push(-(&c / qi(2 * m as i64 - 1)));
    }
    EllipticSeries { k: Series::from_coeffs(k, order), e: Series::from_coeffs(e, order) }
}

/// A rational series times `π^pi`.
#[derive(Clone, Debug)]
struct PiSeries {
    s: Series<BigRational>,
    pi: i32,
}

impl PiSeries {
    fn new(s: Series<BigRational>, pi: i32) -> Self {
        PiSeries { s, pi }
    }

    fn mul(&self, o: &Self) -> Self {
        PiSeries::new(self.s.mul_series(&o.s), self.pi + o.pi)
    }

    fn add(&self, o: &Self) -> Result<Self> {
        if self.pi != o.pi {
            return Err(Error::Invariant(format!("adding π^{} to π^{}", self.pi, o.pi)));
        }
        Ok(PiSeries::new(self.s.add_series(&o.s), self.pi))
    }

    fn rational(self) -> Result<Series<BigRational>> {
        if self.pi != 0 {
            return Err(Error::Invariant(format!("π^{} does not cancel", self.pi)));
        }
        Ok(self.s)
    }
}

/// `g₀`, `G` and `Γ` of the solved model at `t = 1`, as series in `u = k²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSeries {
    pub g0: Series<BigRational>,
    pub g: Series<BigRational>,
    pub gamma: Series<BigRational>,
}

/// Expand
///
/// ```text
/// g₀ = −(1/8π²) K((2−k²)K − 2E)
/// G − 1/(4g₀) + 2 = (1/(96π⁴g₀²)) K³((8−8k²+3k⁴)K + 4(k²−2)E)
/// Γ = (1−G)/(2g₀G²) + 1
/// ```
///
/// The poles of `G` at `u = 0` must cancel; orders are lost to the
/// divisions, so the result is known through `order − 6`.
pub fn model_series(order: usize) -> Result<ModelSeries> {
    if order < 8 {
        return Err(Error::InvalidArgument("model series need order ≥ 8".into()));
    }
    let el = elliptic_series(order);
    let c = |x: BigRational, pi: i32| PiSeries::new(Series::constant(x, order), pi);
    let poly = |v: &[i64]| PiSeries::new(Series::from_ints(v, order), 0);
    let k = PiSeries::new(el.k.scale(&q(1, 2)), 1);
    let e = PiSeries::new(el.e.scale(&q(1, 2)), 1);
    let g0 = c(q(-1, 8), -2).mul(&k).mul(&poly(&[2, -1]).mul(&k).add(&c(qi(-2), 0).mul(&e))?).rational()?;
    let k3 = k.mul(&k).mul(&k);
    let bracket = poly(&[8, -8, 3]).mul(&k).add(&poly(&[-8, 4]).mul(&e))?;
    let rhs = c(q(1, 96), -4).mul(&k3).mul(&bracket).rational()?;
    if g0.valuation() != Some(2) {
        return Err(Error::Invariant("g₀ does not start at u²".into()));
    }
    // G·g₀² = g₀/4 − 2g₀² + rhs must vanish to order u⁴.
    let g0sq = g0.mul_series(&g0);
    let gg = g0.scale(&q(1, 4)).sub_series(&g0sq.scale(&qi(2))).add_series(&rhs);
    let g = gg.shift_down(4)?.div_series(&g0sq.shift_down(4)?)?;
    let g0 = g0.truncate(order - 4);
    let one = g.one_like_series();
    let num = one.sub_series(&g).shift_down(2)?;
    let den = g0.shift_down(2)?.mul_series(&g.truncate(order - 6)).mul_series(&g.truncate(order - 6));
    let gamma = num.div_series(&den)?.scale(&q(1, 2)).add_scalar(&qi(1));
    Ok(ModelSeries { g0, g, gamma })
}

/// `R(g, Γ) = −1 + 3/(2(1+g)(1−Γ)) + 1/(2(1−g)(1+Γ))` and `∂R/∂Γ`, so
/// that the renormalization condition reads `g₀G² = g R`.
fn closing_terms<F: Ring>(g: &Series<F>, gamma: &Series<F>) -> Result<(Series<F>, Series<F>)> {
    let one = g.one_like_series();
    let a = one.add_series(g).mul_series(&one.sub_series(gamma)).inverse()?;
    let b = one.sub_series(g).mul_series(&one.add_series(gamma)).inverse()?;
    let r = a.scale(&q(3, 2)).add_series(&b.scale(&q(1, 2))).sub_series(&one);
    let ia = one.sub_series(gamma).inverse()?;
    let ib = one.add_series(gamma).inverse()?;
    let dr = a
        .mul_series(&ia)
        .scale(&q(3, 2))
        .sub_series(&b.mul_series(&ib).scale(&q(1, 2)));
    Ok((r, dr))
}

/// Solve `g₀(u) G(u)² = g R(g, Γ(u))` for `u(g)` and return `Γ(u(g))`
/// through `order`.
///
/// Since `g₀ ≈ −u²/256`, `u` is a series in `s = √g`: `u = s v(s)` with
/// `v(0) = 16i`, over the Gaussian rationals. The odd and imaginary parts
/// of `Γ` must vanish identically.
pub fn solve_renorm_nm2(order: usize) -> Result<Series<BigRational>> {
    let m = model_series(2 * order + 7)?;
    let phi = m.g0.mul_series(&m.g).mul_series(&m.g).shift_down(2)?;
    let lift = |s: &Series<BigRational>| s.map(|c| GaussianRational::from_rational(c.clone()));
    let (phi_c, dphi_c) = (lift(&phi), lift(&phi.derivative()));
    let (gam_c, dgam_c) = (lift(&m.gamma), lift(&m.gamma.derivative()));
    let n = 2 * order;
    let v0 = GaussianRational::i().scale(&qi(16));
    let v = crate::algebra::newton_solve(Series::constant(v0, 0), n, |v| {
        let s = v.var_like();
        let u = s.mul_series(v);
        let g = s.mul_series(&s);
        let (ph, dph) = (phi_c.compose(&u)?, dphi_c.compose(&u)?);
        let (gm, dgm) = (gam_c.compose(&u)?, dgam_c.compose(&u)?);
        let (r, dr) = closing_terms(&g, &gm)?;
        let v2 = v.mul_series(v);
        let f = v2.mul_series(&ph).sub_series(&r);
        let df = v
            .mul_series(&ph)
            .scale(&qi(2))
            .add_series(&v2.mul_series(&s).mul_series(&dph))
            .sub_series(&dr.mul_series(&s).mul_series(&dgm));
        Ok((f, df))
    })?;
    let u = v.var_like().mul_series(&v);
    let gamma = gam_c.compose(&u)?;
    let mut out = vec![qi(0); order + 1];
    for (k, c) in gamma.coeffs().iter().enumerate() {
        if !c.is_real() {
            return Err(Error::Invariant(format!("Γ has an imaginary coefficient at s^{k}")));
        }
        if k % 2 == 1 {
            if !c.is_zero() {
                return Err(Error::Invariant(format!("Γ has an odd power s^{k}")));
            }
        } else {
            out[k / 2] = c.re.clone();
        }
    }
    Ok(Series::from_coeffs(out, order))
}

/// The same series through a real substitution: `g = −r²`, `u = r w(r)`,
/// `w(0) = 16`, solved over the rationals; `γ_p = (−1)^p [r^{2p}] Γ`.
pub fn solve_renorm_nm2_real(order: usize) -> Result<Series<BigRational>> {
    let m = model_series(2 * order + 7)?;
    let phi = m.g0.mul_series(&m.g).mul_series(&m.g).shift_down(2)?;
    let dphi = phi.derivative();
    let dgam = m.gamma.derivative();
    let w = crate::algebra::newton_solve(Series::constant(qi(16), 0), 2 * order, |w| {
        let r = w.var_like();
        let u = r.mul_series(w);
        let g = r.mul_series(&r).neg_series();
        let (ph, dph) = (phi.compose(&u)?, dphi.compose(&u)?);
        let (gm, dgm) = (m.gamma.compose(&u)?, dgam.compose(&u)?);
        let (big_r, dr) = closing_terms(&g, &gm)?;
        let w2 = w.mul_series(w);
        let f = w2.mul_series(&ph).add_series(&big_r);
        let df = w
            .mul_series(&ph)
            .scale(&qi(2))
            .add_series(&w2.mul_series(&r).mul_series(&dph))
            .add_series(&dr.mul_series(&r).mul_series(&dgm));
        Ok((f, df))
    })?;
    let gamma = m.gamma.compose(&w.var_like().mul_series(&w))?;
    let mut out = vec![qi(0); order + 1];
    for p in 0..=order {
        let c = gamma.coeff(2 * p).clone();
        out[p] = if p % 2 == 0 { c } else { -c };
    }
    Ok(Series::from_coeffs(out, order))
}

/// `γ_p` for `p = 1..=order` as integers.
pub fn gamma_table(order: usize) -> Result<Vec<BigInt>> {
    if order == 0 {
        return Ok(Vec::new());
    }
    let s = solve_renorm_nm2(order)?;
    (1..=order)
        .map(|p| {
            let c = s.coeff(p);
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Invariant(format!("non-integer coefficient {c} at order {p}")))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_leading_terms() {
        let el = elliptic_series(2);
        assert_eq!(el.k.coeffs(), [qi(1), q(1, 4), q(9, 64)]);
        assert_eq!(el.e.coeffs(), [qi(1), q(-1, 4), q(-3, 64)]);
        // (2−u)K − 2E = u²/8 + O(u³) in units of π/2.
        let el = elliptic_series(3);
        let c = el.k.mul_series(&Series::from_ints(&[2, -1], 3)).sub_series(&el.e.scale(&qi(2)));
        assert_eq!(c.coeffs()[..3], [qi(0), qi(0), q(1, 8)]);
    }

    #[test]
    fn model_at_small_modulus() {
        let m = model_series(12).unwrap();
        assert_eq!(m.g0.coeff(2), &q(-1, 256));
        assert_eq!(m.g.coeff(0), &qi(1));
        assert!(m.gamma.coeff(0).is_zero());
    }

    #[test]
    fn short_order_refused() {
        assert!(model_series(5).is_err());
    }
}
