//! Flype-removing renormalization of the two-coupling model.
//!
//! Given the bare correlators `G`, `Γ₁`, `Γ₂` at `t = 1` as series in
//! `(h₁, h₂)`, find `h₁(g)`, `h₂(g)` such that
//!
//! ```text
//! h₁ G(h)² = g (1 − 2H′₂)
//! h₂ G(h)² = −g (H′₁ + V′₂)
//! ```
//!
//! with the auxiliary series built from the renormalized `Γᵢ = Γᵢ(h)/G(h)²`.
//! Then `t = G(h)` and `gᵢ = hᵢ t²`.

use crate::algebra::{BiSeries, BigRational, ColorPoly, Ring, Series};
use crate::error::{Error, Result};
use crate::planar::PlanarOracle;

/// `G`, `Γ₁`, `Γ₂` at `t = 1`, with the loop weight `n` in the same ring.
#[derive(Clone, Debug)]
pub struct BareCorrelators<R: Ring> {
    pub g: BiSeries<R>,
    pub gamma1: BiSeries<R>,
    pub gamma2: BiSeries<R>,
    pub n: R,
}

impl BareCorrelators<ColorPoly> {
    /// Enumerate the bare correlators through total order `order`, with
    /// `n` kept formal.
    pub fn from_oracle(oracle: &PlanarOracle, order: usize) -> Result<Self> {
        let t = BigRational::from_integer(1.into());
        Ok(BareCorrelators {
            g: oracle.two_point(order, &t)?,
            gamma1: oracle.gamma1(order, &t)?,
            gamma2: oracle.gamma2(order, &t)?,
            n: ColorPoly::n(),
        })
    }

    /// Evaluate every coefficient at a rational `n`.
    pub fn specialize(&self, n: &BigRational) -> BareCorrelators<BigRational> {
        BareCorrelators {
            g: self.g.map(|p| p.eval(n)),
            gamma1: self.gamma1.map(|p| p.eval(n)),
            gamma2: self.gamma2.map(|p| p.eval(n)),
            n: n.clone(),
        }
    }
}

impl<R: Ring> BareCorrelators<R> {
    pub fn order(&self) -> usize {
        self.g.order().min(self.gamma1.order()).min(self.gamma2.order())
    }
}

/// The solved counterterms and renormalized four-leg functions.
#[derive(Clone, Debug, PartialEq)]
pub struct RenormSolution<R: Ring> {
    pub t: Series<R>,
    pub h1: Series<R>,
    pub h2: Series<R>,
    pub gamma1: Series<R>,
    pub gamma2: Series<R>,
    pub h1p: Series<R>,
    pub h2p: Series<R>,
    pub v2p: Series<R>,
}

/// `H′₁`, `H′₂`, `V′₂` from renormalized `Γ₁`, `Γ₂` (series in `g`).
///
/// `V′₂` is isolated by an exact division by `n`, which fails for `n = 0`.
pub fn auxiliary_functions<R: Ring>(
    gamma1: &Series<R>,
    gamma2: &Series<R>,
    n: &R,
) -> Result<(Series<R>, Series<R>, Series<R>)> {
    let one = gamma1.one_like_series();
    let g = gamma1.var_like();
    // 1 − 1/((1 − s g)(1 + x))
    let channel = |s: i64, x: &Series<R>| -> Result<Series<R>> {
        let f = one.sub_series(&g.scale(&BigRational::from_integer(s.into())));
        let d = f.mul_series(&one.add_series(x)).inverse()?;
        Ok(one.sub_series(&d))
    };
    let plus = channel(1, &gamma2.add_series(gamma1))?;
    let minus = channel(-1, &gamma2.sub_series(gamma1))?;
    let half = BigRational::new(1.into(), 2.into());
    let h2p = plus.add_series(&minus).scale(&half);
    let h1p = plus.sub_series(&minus).scale(&half);
    let n1 = n.add_ref(&n.one_like());
    let vertical = channel(1, &gamma2.mul_scalar(&n1).add_series(gamma1))?;
    let nv = vertical.sub_series(&plus);
    if n.is_zero() {
        return Err(Error::DivisionByN);
    }
    let v2p = nv.div_scalar_exact(n).ok_or(Error::DivisionByN)?;
    Ok((h1p, h2p, v2p))
}

/// Solve the renormalization equations through order `order` in `g`.
///
/// Each sweep fixes one more order of `h₁`, `h₂`; the coefficients already
/// fixed are checked to stay unchanged.
pub fn solve_fixed_point<R: Ring>(bare: &BareCorrelators<R>, order: usize) -> Result<RenormSolution<R>> {
    if bare.order() < order {
        return Err(Error::InsufficientOrder { needed: order, available: bare.order() });
    }
    let template = bare.n.zero_like();
    let g = Series::monomial_like(template.one_like(), 1, order);
    let mut h1 = g.clone();
    let mut h2 = Series::zero_like(&template, order);
    for k in 1..=order {
        let step = sweep(bare, &g, &h1, &h2)?;
        let (n1, n2) = (&step.h1, &step.h2);
        for j in 0..k {
            if n1.coeff(j) != h1.coeff(j) || n2.coeff(j) != h2.coeff(j) {
                return Err(Error::Invariant(format!(
                    "renormalization sweep {k} changed the already fixed order {j}"
                )));
            }
        }
        h1 = step.h1;
        h2 = step.h2;
    }
    let last = sweep(bare, &g, &h1, &h2)?;
    if last.h1 != h1 || last.h2 != h2 {
        return Err(Error::Invariant("renormalization equations not satisfied".into()));
    }
    Ok(RenormSolution { h1, h2, ..last })
}

/// One substitution of `(h₁, h₂)` into the right-hand sides.
fn sweep<R: Ring>(bare: &BareCorrelators<R>, g: &Series<R>, h1: &Series<R>, h2: &Series<R>) -> Result<RenormSolution<R>> {
    let t = bare.g.compose(h1, h2)?;
    let inv_g2 = t.mul_series(&t).inverse()?;
    let gamma1 = bare.gamma1.compose(h1, h2)?.mul_series(&inv_g2);
    let gamma2 = bare.gamma2.compose(h1, h2)?.mul_series(&inv_g2);
    let (h1p, h2p, v2p) = auxiliary_functions(&gamma1, &gamma2, &bare.n)?;
    let one = g.one_like_series();
    let rhs1 = g.mul_series(&one.sub_series(&h2p.add_series(&h2p)));
    let rhs2 = g.mul_series(&h1p.add_series(&v2p)).neg_series();
    Ok(RenormSolution {
        h1: rhs1.mul_series(&inv_g2),
        h2: rhs2.mul_series(&inv_g2),
        t,
        gamma1,
        gamma2,
        h1p,
        h2p,
        v2p,
    })
}

/// The bare couplings `gᵢ = hᵢ t²`.
pub fn renormalized_counterterms<R: Ring>(sol: &RenormSolution<R>) -> (Series<R>, Series<R>) {
    let t2 = sol.t.mul_series(&sol.t);
    (sol.h1.mul_series(&t2), sol.h2.mul_series(&t2))
}
