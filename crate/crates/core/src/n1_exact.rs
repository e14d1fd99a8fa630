//! Exact solution at `n = 1`: tangles with any even number of legs.
//!
//! Everything follows from the series `A(g)`, the root of
//!
//! ```text
//! 32(1−g) − 64(1−g)A + 32(1−g)A² − 4(1+2g−g²)A³ + 6g(1−g)A⁴ − g(1−g)A⁵ = 0
//! ```
//!
//! with `A(0) = 2`. In the one-matrix model with coupling `g₀` and mass `t`,
//! `A` is fixed by `3A²g₀ − 2At + 4 = 0`; normalizing the two-point function
//! to 1 gives `t = 4(2A−3)/A²` and `g₀ = 4(A−2)/A³`.

use crate::algebra::{q, qi, BigInt, BigRational, BivariatePoly, QuadraticNumber, Ring, Series};
use crate::error::{Error, Result};
use num_traits::ToPrimitive;
use std::cmp::Ordering;

/// The quintic relating `A` and the renormalized coupling `g`.
pub fn quintic() -> BivariatePoly {
    BivariatePoly::from_ints(&[
        &[32, -32],
        &[-64, 64],
        &[32, -32],
        &[-4, -8, 4],
        &[0, 6, -6],
        &[0, -1, 1],
    ])
}

/// `A(g)` through a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuinticSolution {
    pub a: Series<BigRational>,
}

impl QuinticSolution {
    pub fn order(&self) -> usize {
        self.a.order()
    }
}

pub fn solve_a(order: usize) -> Result<QuinticSolution> {
    Ok(QuinticSolution { a: quintic().lift(qi(2), order)? })
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `(2ℓ−1)!!`, with `(−1)!! = 1`.
pub fn double_factorial_odd(l: usize) -> BigInt {
    (1..l).map(|k| BigInt::from(2 * k + 1)).product()
}

/// The constant `c_ℓ`, from
/// `c_{ℓ+1} = 1/(3ℓ+1) Σ_{⌈ℓ/2⌉≤q≤ℓ} (−4)^{q−ℓ} (ℓ+q)! / ((2q−ℓ)! (ℓ−q)!)`.
pub fn c_const(l: usize) -> Result<BigRational> {
    if l == 0 {
        return Err(Error::InvalidArgument("c_ℓ needs ℓ ≥ 1".into()));
    }
    let m = l - 1;
    let mut sum = qi(0);
    for k in m.div_ceil(2)..=m {
        let num = factorial(m + k);
        let den = factorial(2 * k - m) * factorial(m - k) * BigInt::from(4).pow((m - k) as u32);
        let term = BigRational::new(num, den);
        sum += if (m - k) % 2 == 0 { term } else { -term };
    }
    Ok(sum / qi(3 * m as i64 + 1))
}

/// `G_{2ℓ} = 2A^{ℓ−1} (2ℓ−1)!!/(ℓ+2)! (3ℓ − (ℓ−1)A)`.
pub fn moments(l: usize, sol: &QuinticSolution) -> Result<Series<BigRational>> {
    if l == 0 {
        return Ok(sol.a.one_like_series());
    }
    let a = &sol.a;
    let pref = BigRational::new(2 * double_factorial_odd(l), factorial(l + 2));
    let inner = a.scale(&-qi(l as i64 - 1)).add_scalar(&qi(3 * l as i64));
    Ok(a.pow(l as u32 - 1).mul_series(&inner).scale(&pref))
}

/// `G_{2ℓ}ᶜ = c_ℓ/ℓ! (A−2)^{ℓ−1} (3ℓ−2 − (ℓ−1)A)`.
pub fn connected(l: usize, sol: &QuinticSolution) -> Result<Series<BigRational>> {
    let pref = c_const(l)? / BigRational::from_integer(factorial(l));
    let a = &sol.a;
    let shifted = a.add_scalar(&qi(-2));
    let inner = a.scale(&-qi(l as i64 - 1)).add_scalar(&qi(3 * l as i64 - 2));
    Ok(shifted.pow(l as u32 - 1).mul_series(&inner).scale(&pref))
}

/// Integer counts `γ_{legs;p}` for `p = 1..=order` of prime alternating
/// tangles with `legs` external legs.
pub fn tangle_counts(legs: usize, order: usize) -> Result<Vec<BigInt>> {
    if legs < 4 || legs % 2 != 0 {
        return Err(Error::InvalidArgument(format!("legs must be even and at least 4, got {legs}")));
    }
    let sol = solve_a(order)?;
    let s = connected(legs / 2, &sol)?;
    (1..=order)
        .map(|p| {
            let c = s.coeff(p);
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Invariant(format!("non-integer count {c} at order {p}")))
            }
        })
        .collect()
}

/// `g₀ = 4(A−2)/A³` and `t = 4(2A−3)/A²` as series in `g`.
pub fn bare_couplings(sol: &QuinticSolution) -> Result<(Series<BigRational>, Series<BigRational>)> {
    let a = &sol.a;
    let inv = a.inverse()?;
    let inv2 = inv.mul_series(&inv);
    let g0 = a.add_scalar(&qi(-2)).mul_series(&inv2).mul_series(&inv).scale(&qi(4));
    let t = a.scale(&qi(2)).add_scalar(&qi(-3)).mul_series(&inv2).scale(&qi(4));
    Ok((g0, t))
}

fn mismatch(what: &str, l: usize, a: &Series<BigRational>, b: &Series<BigRational>) -> Error {
    let p = a.sub_series(b).valuation().unwrap_or(0);
    Error::Invariant(format!("{what} for ℓ = {l} differs at order g^{p}"))
}

/// Expand the resolvent
/// `ω(λ) = ½(tλ − g₀λ³ − (t − g₀λ² − g₀A)√(λ²−2A))` in `1/λ`, compare its
/// coefficients with [`moments`], then invert `λ(ω)` and compare with
/// [`connected`], for `ℓ ≤ max_l`.
pub fn resolvent_check(sol: &QuinticSolution, max_l: usize) -> Result<()> {
    let order = sol.order();
    let (g0, t) = bare_couplings(sol)?;
    let a = &sol.a;
    let one = a.one_like_series();
    let zero = a.zero_like();
    // √(1 − 2A y), y = λ⁻², with coefficients in g.
    let ny = max_l + 2;
    let mut inner = vec![zero.clone(); ny + 1];
    inner[0] = one.clone();
    inner[1] = a.scale(&qi(-2));
    let root = Series::from_coeffs(inner, ny).sqrt()?;
    let s = |m: usize| root.coeff(m).clone();
    // λ√(λ²−2A) = Σ s_m λ^{2−2m}: collect the coefficient of λ^{−(2ℓ+1)}.
    let omega = |l: i64| -> Series<BigRational> {
        let at = |m: i64| if m < 0 { zero.clone() } else { s(m as usize) };
        let mut c = at(l + 1).mul_series(&g0.mul_series(a).sub_series(&t));
        c = c.add_series(&at(l + 2).mul_series(&g0));
        if l == -1 {
            c = c.add_series(&t);
        }
        if l == -2 {
            c = c.sub_series(&g0);
        }
        c.scale(&q(1, 2))
    };
    for l in [-2, -1] {
        if !omega(l).is_zero() {
            return Err(Error::Invariant(format!("resolvent has a λ^{} term", -(2 * l + 1))));
        }
    }
    let mut w = vec![zero.clone(); 2 * max_l + 2];
    for l in 0..=max_l {
        let c = omega(l as i64);
        let m = moments(l, sol)?;
        if c != m {
            return Err(mismatch("resolvent moment", l, &c, &m));
        }
        w[2 * l + 1] = c;
    }
    // ω as a series in x = 1/λ; revert to x(ω), then λ = 1/x(ω).
    let x_of_w = Series::from_coeffs(w, 2 * max_l + 1).revert()?;
    let quotient = x_of_w.shift_down(1)?.inverse()?;
    for l in 1..=max_l {
        let c = quotient.coeff(2 * l).truncate(order);
        let expect = connected(l, sol)?;
        if c != expect {
            return Err(mismatch("connected correlator", l, &c, &expect));
        }
    }
    Ok(())
}

/// The H-2PI tangle series `H = 1 − 1/((1−g)(1+Γ))`, `Γ = G₄ᶜ`.
pub fn h2pi_series(sol: &QuinticSolution) -> Result<Series<BigRational>> {
    let gamma = connected(2, sol)?;
    let one = gamma.one_like_series();
    let d = one.sub_series(&gamma.var_like()).mul_series(&one.add_series(&gamma));
    Ok(one.sub_series(&d.inverse()?))
}

/// Check the closed subset `g₀(g) = g(1 − 2H(g))`.
pub fn h2pi_check(sol: &QuinticSolution) -> Result<()> {
    let h = h2pi_series(sol)?;
    let (g0, _) = bare_couplings(sol)?;
    let rhs = h.var_like().mul_series(&h.scale(&qi(-2)).add_scalar(&qi(1)));
    if g0 != rhs {
        return Err(mismatch("coupling renormalization", 2, &g0, &rhs));
    }
    Ok(())
}

/// Dense univariate polynomials, lowest degree first, used to locate the
/// branch point.
mod upoly {
    use crate::algebra::{qi, BigRational};

    pub type Poly = Vec<BigRational>;

    pub fn trim(mut p: Poly) -> Poly {
        while p.last().is_some_and(|c| *c == qi(0)) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![qi(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &Poly, b: &Poly) -> Poly {
        let mut out = vec![qi(0); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(out)
    }

    pub fn derivative(a: &Poly) -> Poly {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| c * qi(i as i64)).collect())
    }

    pub fn rem(a: &Poly, b: &Poly) -> Poly {
        let mut r = trim(a.clone());
        let lead = b.last().expect("division by the zero polynomial");
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let f = r.last().unwrap() / lead;
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        let lead = x.last().cloned().unwrap_or(qi(1));
        x.iter().map(|c| c / &lead).collect()
    }
}

/// The quintic as a polynomial in `g` whose coefficients are polynomials
/// in `A`.
fn in_g(p: &BivariatePoly) -> Vec<upoly::Poly> {
    let width = p.rows().iter().map(Vec::len).max().unwrap_or(0);
    (0..width)
        .map(|j| upoly::trim(p.rows().iter().map(|row| row.get(j).cloned().unwrap_or(qi(0))).collect()))
        .collect()
}

/// `Res_g(P, ∂P/∂A)` as a polynomial in `A`; `P` must be quadratic in `g`.
pub fn branch_resultant() -> Result<Vec<BigRational>> {
    use upoly::{mul, sub};
    let p = quintic();
    let a = in_g(&p);
    let b = in_g(&p.d_a());
    if a.len() != 3 || b.len() != 3 {
        return Err(Error::Invariant("the quintic is not quadratic in g".into()));
    }
    // Res(a₂x²+a₁x+a₀, b₂x²+b₁x+b₀) = (a₂b₀ − a₀b₂)² − (a₂b₁ − a₁b₂)(a₁b₀ − a₀b₁)
    let u = sub(&mul(&a[2], &b[0]), &mul(&a[0], &b[2]));
    let v = sub(&mul(&a[2], &b[1]), &mul(&a[1], &b[2]));
    let w = sub(&mul(&a[1], &b[0]), &mul(&a[0], &b[1]));
    Ok(sub(&mul(&u, &u), &mul(&v, &w)))
}

/// Critical point `(A_c, g₀c, t_c)` of the solution.
///
/// A branch point of `A(g)` has `P = ∂P/∂A = 0`. Eliminating `g` leaves a
/// polynomial in `A`; discarding the spurious root `A = 0` (where the
/// parametrization `g₀ = 4(A−2)/A³` breaks down), its only repeated root is
/// `A_c`. Then `g₀c = g₀(A_c)` and `t_c = 4(2A_c−3)/A_c²`.
pub fn critical_point() -> Result<(BigRational, BigRational, BigRational)> {
    let mut r = branch_resultant()?;
    while r.first().is_some_and(|c| c.is_zero()) {
        r.remove(0);
    }
    let repeated = upoly::gcd(&r, &upoly::derivative(&r));
    if repeated.len() != 2 {
        return Err(Error::Invariant(format!(
            "expected a single repeated root, found a factor of degree {}",
            repeated.len().saturating_sub(1)
        )));
    }
    let ac = -&repeated[0] / &repeated[1];
    let g0c = qi(4) * (&ac - qi(2)) / (&ac * &ac * &ac);
    let tc = qi(4) * (qi(2) * &ac - qi(3)) / (&ac * &ac);
    Ok((ac, g0c, tc))
}

/// Exact singularity data in a quadratic field.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticData {
    pub g_c: QuadraticNumber,
    pub a_sq: QuadraticNumber,
    pub b: QuadraticNumber,
}

impl AsymptoticData {
    /// Leading estimate `3/(4√π) c_ℓ/(ℓ−2)! a (b + (ℓ−2)a²/3) p^{−5/2} g_c^{3/2−p}`.
    pub fn predict(&self, l: usize, p: usize) -> Result<f64> {
        if l < 2 {
            return Err(Error::InvalidArgument("asymptotics need ℓ ≥ 2".into()));
        }
        let c = c_const(l)? / BigRational::from_integer(factorial(l - 2));
        let a2 = self.a_sq.to_f64();
        let amp = c.to_f64().unwrap() * a2.sqrt() * (self.b.to_f64() + (l as f64 - 2.0) * a2 / 3.0);
        let gc = self.g_c.to_f64();
        let p = p as f64;
        Ok(3.0 / (4.0 * std::f64::consts::PI.sqrt()) * amp * p.powf(-2.5) * gc.powf(1.5 - p))
    }
}

/// Write `√r` as `m√d` with `d` square-free; returns `(m, d)`.
fn split_root(r: &BigRational) -> (BigRational, BigInt) {
    let mut k = r.numer() * r.denom();
    let den = r.denom().clone();
    let mut m = BigInt::from(1);
    let mut f = BigInt::from(2);
    while &f * &f <= k {
        let f2 = &f * &f;
        while num_traits::Zero::is_zero(&(&k % &f2)) {
            k /= &f2;
            m *= &f;
        }
        f += 1;
    }
    (BigRational::new(m, den), k)
}

/// `g_c`, `a²` and `b` from the quintic alone.
///
/// `A_c` comes from [`critical_point`]; `g_c` is the root in `(0, 1)` of
/// `P(A_c, g) = 0`, checked to make `A_c` a double root. With
/// `A = A_c − a ε^{1/2} + b ε`, `ε = g_c − g`, matching orders `ε` and
/// `ε^{3/2}` in `P` gives `a² = 2P_g/P_AA` and
/// `b = (P_Ag − P_AAA a²/6)/P_AA`.
pub fn exact_constants() -> Result<AsymptoticData> {
    let p = quintic();
    let (ac, _, _) = critical_point()?;
    let poly = p.at_a(&ac);
    if poly.len() != 3 || poly[2].is_zero() {
        return Err(Error::Invariant("P(A_c, g) is not quadratic in g".into()));
    }
    let (c0, c1, c2) = (&poly[0], &poly[1], &poly[2]);
    let disc = c1 * c1 - qi(4) * c0 * c2;
    let (m, d) = split_root(&disc);
    let two_c2 = qi(2) * c2;
    let mut roots = [1, -1].map(|s| QuadraticNumber::new(-c1 / &two_c2, &m * qi(s) / &two_c2, d.clone()));
    roots.sort_by(|x, y| x.sub_ref(y).signum());
    let in_unit = |x: &QuadraticNumber| {
        x.signum() == Ordering::Greater && x.sub_ref(&x.one_like()).signum() == Ordering::Less
    };
    let g_c = roots
        .into_iter()
        .find(in_unit)
        .ok_or_else(|| Error::Invariant("no root of P(A_c, g) in (0, 1)".into()))?;
    let a = QuadraticNumber::rational(ac, d);
    let at = |poly: &BivariatePoly| poly.eval(&a, &g_c);
    if !at(&p).is_zero() || !at(&p.d_a()).is_zero() {
        return Err(Error::Invariant("A_c is not a double root at g_c".into()));
    }
    let paa = at(&p.d_a().d_a());
    let inv = paa.inverse().ok_or(Error::DegenerateRoot)?;
    let a_sq = at(&p.d_g()).scale(&qi(2)).mul_ref(&inv);
    let b = at(&p.d_a().d_g())
        .sub_ref(&at(&p.d_a().d_a().d_a()).mul_ref(&a_sq).scale(&q(1, 6)))
        .mul_ref(&inv);
    if a_sq.signum() != Ordering::Greater {
        return Err(Error::Invariant("a² is not positive".into()));
    }
    Ok(AsymptoticData { g_c, a_sq, b })
}

/// Comparison of the leading estimate with an exact coefficient.
#[derive(Clone, Debug)]
pub struct AsymptoticComparison {
    pub legs: usize,
    pub p: usize,
    pub exact: BigInt,
    pub predicted: f64,
    pub ratio: f64,
}

pub fn asymptotics(sol: &QuinticSolution, l: usize, p: usize) -> Result<AsymptoticComparison> {
    if p > sol.order() || p == 0 {
        return Err(Error::InsufficientOrder { needed: p, available: sol.order() });
    }
    let data = exact_constants()?;
    let predicted = data.predict(l, p)?;
    let exact = connected(l, sol)?.coeff(p).to_integer();
    let ratio = predicted / exact.to_f64().unwrap_or(f64::NAN);
    Ok(AsymptoticComparison { legs: 2 * l, p, exact, predicted, ratio })
}
