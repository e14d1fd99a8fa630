//! Complete elliptic integrals by the arithmetic–geometric mean.

use super::hp::{ComplexHP, Field};
use crate::error::{Error, Result};

const MAX_STEPS: usize = 400;

/// `K(u)` and `E(u)` at parameter `u = k²`, on the principal sheet.
///
/// Fails on the cut `u ∈ [1, ∞)` and if the mean does not settle.
pub fn elliptic_eval(u: &ComplexHP) -> Result<(ComplexHP, ComplexHP)> {
    let p = u.prec;
    let a0 = u.approx();
    if a0.im == 0.0 && a0.re >= 1.0 {
        return Err(Error::Numeric(format!("k² = {a0} lies on the branch cut")));
    }
    let tol = 2f64.powi(-(p as i32 - 32).min(1000));
    let one = u.one_like();
    let mut a = one.clone();
    let mut b = one.sub(u).sqrt();
    let mut sum = u.scale(0.5);
    let mut weight = 0.5;
    for _ in 0..MAX_STEPS {
        let c = a.sub(&b).scale(0.5);
        if c.norm() <= tol * a.norm() {
            let pi = ComplexHP::pi(p)?;
            let k = pi.div(&a.scale(2.0));
            let e = k.mul(&one.sub(&sum));
            return Ok((k, e));
        }
        weight *= 2.0;
        sum = sum.add(&c.mul(&c).scale(weight));
        let next = a.add(&b).scale(0.5);
        let mut root = a.mul(&b).sqrt();
        // keep the geometric mean on the side of the arithmetic one
        if root.div(&next).approx().re < 0.0 {
            root = root.neg();
        }
        a = next;
        b = root;
    }
    Err(Error::Numeric(format!("AGM did not converge at k² = {a0}")))
}
