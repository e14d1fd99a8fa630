//! Complex singularities of `Γ(g)` at `n = −2`.
//!
//! The modulus is parametrized by the nome `q`, in which `K`, `E` and
//! `u = k²` are single valued:
//!
//! ```text
//! K/(π/2) = θ₃²,   u = 16 q S⁴/θ₃⁴,   S = Σ_{n≥0} q^{n(n+1)}
//! E/(π/2) = P(q²)/(3θ₃²) + θ₃²(2 − u)/3,   P(x) = 1 − 24 Σ σ₁(m) xᵐ
//! ```
//!
//! The renormalization condition is `F(q, g) = g₀G² − g R(g, Γ) = 0`; a
//! branch point of `Γ(g)` is a common root of `F` and `∂F/∂q`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::hp::{bits_for_digits, ComplexHP, Field};
use super::jet::Jet2;
use super::series::solve_renorm_nm2;
use crate::algebra::BigInt;
use crate::error::{Error, Result};

/// Largest nome handled; the series in `q` converge too slowly beyond.
const MAX_NOME: f64 = 0.95;

fn sigma1(m: usize) -> Vec<u64> {
    let mut s = vec![0u64; m + 1];
    for d in 1..=m {
        for k in (d..=m).step_by(d) {
            s[k] += d as u64;
        }
    }
    s
}

/// Jets of the model quantities at the nome `q`.
#[derive(Clone, Debug)]
pub struct ModelJets<F> {
    pub u: Jet2<F>,
    /// `K/(π/2)` and `E/(π/2)`.
    pub k: Jet2<F>,
    pub e: Jet2<F>,
    pub g0: Jet2<F>,
    pub big_g: Jet2<F>,
    pub gamma: Jet2<F>,
}

/// Evaluate `u`, `g₀`, `G`, `Γ` as jets in `q`, summing until the terms
/// drop below `eps`.
pub fn model_jets<F: Field>(q: &Jet2<F>, eps: f64) -> Result<ModelJets<F>> {
    let r = q.v.norm();
    if r >= MAX_NOME {
        return Err(Error::Numeric(format!("nome |q| = {r} too close to the unit circle")));
    }
    // q^{2m} must fall below eps in the Eisenstein sum
    let top = if r == 0.0 { 2 } else { (2.0 * eps.ln() / r.ln()).ceil() as usize + 2 };
    let mut pw = vec![q.lift(1.0), q.clone()];
    while pw.len() <= top {
        let next = pw[pw.len() - 1].mul(q);
        pw.push(next);
    }
    let mut theta = q.lift(1.0);
    let mut s = q.lift(1.0);
    for n in 1.. {
        if n * n > top {
            break;
        }
        theta = theta.add(&pw[n * n].scale(2.0));
        if n * (n + 1) <= top {
            s = s.add(&pw[n * (n + 1)]);
        }
    }
    let sig = sigma1(top / 2);
    let mut eis = q.lift(0.0);
    for m in 1..=top / 2 {
        eis = eis.add(&pw[2 * m].scale(sig[m] as f64));
    }
    let eis = eis.scale(-24.0).add_const(1.0);
    let s2 = s.square();
    let t2 = theta.square();
    let u = q.mul(&s2.square()).scale(16.0).div(&t2.square());
    let k = t2;
    let e = eis.div(&k.scale(3.0)).add(&k.mul(&u.neg().add_const(2.0)).scale_frac(1, 3));
    // g₀ = −K((2−u)K − 2E)/32 in units where K, E are divided by π/2
    let g0 = k.mul(&u.neg().add_const(2.0).mul(&k).sub(&e.scale(2.0))).scale(-1.0 / 32.0);
    let u2 = u.square();
    let poly = u2.scale(3.0).sub(&u.scale(8.0)).add_const(8.0);
    let k3 = k.square().mul(&k);
    let tail = k3.mul(&poly.mul(&k).add(&u.add_const(-2.0).mul(&e).scale(4.0))).scale_frac(1, 1536);
    let gg = g0.scale(0.25).sub(&g0.square().scale(2.0)).add(&tail);
    let big_g = gg.div(&g0.square());
    let gamma = big_g
        .neg()
        .add_const(1.0)
        .div(&g0.mul(&big_g.square()).scale(2.0))
        .add_const(1.0);
    Ok(ModelJets { u, k, e, g0, big_g, gamma })
}

/// `F(q, g)` with its jets, and the model jets it was built from.
pub fn residual<F: Field>(q: &F, g: &F, eps: f64) -> Result<(Jet2<F>, ModelJets<F>)> {
    let qj = Jet2::var_q(q.clone());
    let gj = Jet2::var_g(g.clone());
    let m = model_jets(&qj, eps)?;
    let phi = m.g0.mul(&m.big_g.square());
    let a = gj.add_const(1.0).mul(&m.gamma.neg().add_const(1.0)).inv().scale(1.5);
    let b = gj.neg().add_const(1.0).mul(&m.gamma.add_const(1.0)).inv().scale(0.5);
    let r = a.add(&b).add_const(-1.0);
    Ok((phi.sub(&gj.mul(&r)), m))
}

const EPS64: f64 = 1e-17;

/// Newton in `q` at fixed `g`. The residual carries cancellation noise
/// at small `|q|`, so a step that stalls near `10⁻¹⁰` still counts as
/// converged.
fn solve_q(q0: Complex64, g: Complex64) -> Option<Complex64> {
    let mut q = q0;
    let mut last = f64::INFINITY;
    for _ in 0..40 {
        let (f, _) = residual(&q, &g, EPS64).ok()?;
        let dq = f.v / f.q;
        if !dq.is_finite() {
            return None;
        }
        q -= dq;
        last = dq.norm() / q.norm().max(1e-3);
        if last <= 1e-14 {
            break;
        }
    }
    (last <= 1e-10).then_some(q)
}

/// Follow the branch with `Γ = g + O(g²)` along the segment from `g₁` to
/// `g₂`, starting from the nome `q₁` at `g₁`.
fn follow(q1: Complex64, g1: Complex64, g2: Complex64) -> Option<Complex64> {
    let (mut q, mut g) = (q1, g1);
    let mut h: f64 = 1.0 / 64.0;
    let mut t: f64 = 0.0;
    while t < 1.0 {
        let step = h.min(1.0 - t);
        let gn = g1 + (g2 - g1) * (t + step);
        let (f, _) = residual(&q, &g, EPS64).ok()?;
        // tangent predictor dq/dg = −F_g/F_q
        let guess = q - f.g / f.q * (gn - g);
        match solve_q(guess, gn) {
            Some(qn) if (qn - guess).norm() < 0.05 * q.norm().max(0.05) => {
                q = qn;
                g = gn;
                t += step;
                h = (h * 1.5).min(1.0 / 16.0);
            }
            _ => {
                h /= 2.0;
                if h < 1e-7 {
                    return None;
                }
            }
        }
    }
    Some(q)
}

/// Radius where every ray leaves the origin; `u ≈ 16 i √g` there.
const START: f64 = 5e-3;
/// Radius where the branch is compared with the exact series.
const CHECKPOINT: f64 = 0.05;

/// The nome on the physical branch at `g`, reached along the ray from 0.
fn physical_nome(g: Complex64, exact: &[f64]) -> Result<Complex64> {
    let dir = g / g.norm();
    let g_start = dir * START;
    let q_start = solve_q(Complex64::i() * g_start.sqrt(), g_start)
        .ok_or_else(|| Error::Numeric(format!("no start on the ray through {g}")))?;
    let fail = || Error::Numeric(format!("continuation to {g} failed"));
    if g.norm() <= CHECKPOINT {
        return follow(q_start, g_start, g).ok_or_else(fail);
    }
    let g_check = dir * CHECKPOINT;
    let q_check = follow(q_start, g_start, g_check).ok_or_else(fail)?;
    let (_, m) = residual(&q_check, &g_check, EPS64)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (p, c) in exact.iter().enumerate() {
        sum += c * g_check.powu(p as u32 + 1);
    }
    if (m.gamma.v - sum).norm() > 1e-8 {
        return Err(Error::Invariant(format!(
            "numeric branch at {g_check} gives Γ = {}, the series gives {sum}",
            m.gamma.v
        )));
    }
    follow(q_check, g_check, g).ok_or_else(fail)
}

/// Newton on `F = ∂F/∂q = 0`; stops once `|∂F/∂q| < tol`.
fn critical_newton<F: Field>(q: F, g: F, eps: f64, tol: f64, max_iter: usize) -> Option<(F, F)> {
    let (mut q, mut g) = (q, g);
    for _ in 0..max_iter {
        let (f, _) = residual(&q, &g, eps).ok()?;
        if f.q.norm() < tol && f.v.norm() < tol {
            return Some((q, g));
        }
        // [[F_q, F_g], [F_qq, F_qg]] (dq, dg) = (F, F_q)
        let det = f.q.mul(&f.qg).sub(&f.g.mul(&f.qq));
        let dq = f.v.mul(&f.qg).sub(&f.g.mul(&f.q)).div(&det);
        let dg = f.q.mul(&f.q).sub(&f.qq.mul(&f.v)).div(&det);
        if !dq.approx().is_finite() || !dg.approx().is_finite() || dg.norm() > 0.5 {
            return None;
        }
        q = q.sub(&dq);
        g = g.sub(&dg);
    }
    None
}

/// Annulus in the `g` plane covered by Newton seeds.
#[derive(Clone, Debug)]
pub struct SearchBox {
    pub r_min: f64,
    pub r_max: f64,
    pub radii: usize,
    pub angles: usize,
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox { r_min: 0.1, r_max: 0.5, radii: 5, angles: 24 }
    }
}

/// A square-root branch point of `Γ(g)`.
#[derive(Clone, Debug)]
pub struct Singularity {
    pub g_c: ComplexHP,
    pub q_c: ComplexHP,
    pub gamma_c: ComplexHP,
    /// `cst` in `γ_p ≈ Re(cst p^{−3/2} g_c^{−p})`, counting both members
    /// of the conjugate pair.
    pub amplitude: ComplexHP,
    /// Fitted exponent of `Γ − Γ_c` in `1 − g/g_c`.
    pub exponent: f64,
    /// Final `|∂F/∂q|`.
    pub residual: f64,
    pub digits: usize,
}

/// Series coefficients used to check the numeric branch.
fn branch_reference() -> Result<Vec<f64>> {
    let s = solve_renorm_nm2(24)?;
    Ok((1..=24)
        .map(|p| {
            let c = s.coeff(p);
            let n: BigInt = c.numer().clone();
            n.to_string().parse::<f64>().unwrap_or(f64::NAN) / c.denom().to_string().parse::<f64>().unwrap_or(f64::NAN)
        })
        .collect())
}

/// `Γ − Γ_c` on the physical branch at `g_c(1 − δ)`.
fn offset(q_c: Complex64, g_c: Complex64, w: Complex64, delta: f64, gamma_c: Complex64, sigma: f64) -> Option<Complex64> {
    let g = g_c * (1.0 - delta);
    let q = solve_q(q_c + w * sigma * delta.sqrt(), g)?;
    let (_, m) = residual(&q, &g, EPS64).ok()?;
    Some(m.gamma.v - gamma_c)
}

/// Locate the branch points of `Γ(g)` nearest the origin.
///
/// Seeds on a polar grid in `search` are reached by continuation from
/// `g = 0`, refined by Newton in `f64`, checked to lie on the physical
/// sheet and polished to `digits` decimal digits. Returns the conjugate
/// pair of smallest modulus, upper half plane first.
pub fn find_singularities(digits: usize, search: &SearchBox) -> Result<Vec<Singularity>> {
    if search.radii == 0 || search.angles == 0 || !(0.0 < search.r_min && search.r_min <= search.r_max) {
        return Err(Error::InvalidArgument(format!("empty search box {search:?}")));
    }
    let exact = branch_reference()?;
    let mut seeds = Vec::new();
    for j in 0..search.angles {
        let theta = std::f64::consts::PI * (j as f64 + 0.5) / search.angles as f64;
        for k in 0..search.radii {
            let r = if search.radii == 1 {
                search.r_min
            } else {
                search.r_min + (search.r_max - search.r_min) * k as f64 / (search.radii - 1) as f64
            };
            seeds.push(Complex64::from_polar(r, theta));
        }
    }
    // upper half plane only; conjugation maps solutions to solutions
    let found: Vec<(Complex64, Complex64)> = seeds
        .par_iter()
        .filter_map(|&g| {
            let q = physical_nome(g, &exact).ok()?;
            critical_newton(q, g, EPS64, 1e-13, 60)
        })
        .filter(|(_, g)| g.im > 1e-9)
        .collect();
    let mut found = found;
    found.sort_by(|a, b| a.1.norm().total_cmp(&b.1.norm()).then(a.1.arg().total_cmp(&b.1.arg())));
    found.dedup_by(|a, b| (a.1 - b.1).norm() < 1e-8);
    for (q, g) in found {
        if let Ok(s) = polish(q, g, digits, &exact) {
            let mut conj = s.clone();
            conj.g_c.im = conj.g_c.im.neg();
            conj.q_c.im = conj.q_c.im.neg();
            conj.gamma_c.im = conj.gamma_c.im.neg();
            conj.amplitude.im = conj.amplitude.im.neg();
            return Ok(vec![s, conj]);
        }
    }
    let tried: Vec<String> = seeds.iter().map(|g| format!("{:.3}{:+.3}i", g.re, g.im)).collect();
    Err(Error::Numeric(format!("no branch point on the physical sheet from seeds {}", tried.join(", "))))
}

/// Verify a candidate against the physical branch and refine it.
fn polish(q: Complex64, g: Complex64, digits: usize, exact: &[f64]) -> Result<Singularity> {
    let (f, m) = residual(&q, &g, EPS64)?;
    let gamma_c = m.gamma.v;
    let w = (2.0 * g * f.g / f.qq).sqrt();
    // which square root the physical sheet takes near g_c
    let delta = 1e-3;
    let g_near = g * (1.0 - delta);
    let q_phys = physical_nome(g_near, exact)?;
    let ratio = (q_phys - q) / (w * delta.sqrt());
    if (ratio.norm() - 1.0).abs() > 0.1 || ratio.re.abs() < 0.9 {
        return Err(Error::Numeric(format!("branch point {g} is not on the physical sheet (ratio {ratio})")));
    }
    let sigma = ratio.re.signum();
    let fit = |d: f64| offset(q, g, w, d, gamma_c, sigma).map(|x| x.norm());
    let (d1, d2) = (1e-4, 1e-6);
    let exponent = match (fit(d1), fit(d2)) {
        (Some(a), Some(b)) => (a / b).ln() / (d1 / d2).ln(),
        _ => return Err(Error::Numeric(format!("local fit failed at {g}"))),
    };
    let prec = bits_for_digits(digits);
    let tol = 10f64.powi(-(digits as i32 * 2 / 3));
    let eps = 10f64.powi(-(digits as i32 + 5));
    let (qh, gh) = critical_newton(ComplexHP::from_c64(q, prec), ComplexHP::from_c64(g, prec), eps, tol, 40)
        .ok_or_else(|| Error::Numeric(format!("high-precision Newton diverged at {g}")))?;
    let (f, m) = residual(&qh, &gh, eps)?;
    let g_qq = f.qq.div(&f.g).neg();
    let w = gh.scale(-2.0).div(&g_qq).sqrt();
    let c = m.gamma.q.mul(&w).scale(sigma);
    let root_pi = ComplexHP::pi(prec)?.sqrt();
    Ok(Singularity {
        amplitude: c.div(&root_pi).neg(),
        gamma_c: m.gamma.v,
        q_c: qh,
        g_c: gh,
        exponent,
        residual: f.q.norm(),
        digits,
    })
}

/// One row of [`asymptotic_check`].
#[derive(Clone, Debug)]
pub struct AsymptoticRow {
    pub p: usize,
    pub exact: BigInt,
    pub predicted: f64,
    /// `(exact − predicted)/exact`.
    pub relative_error: f64,
    /// `(exact − predicted)` over the envelope `|cst| p^{−3/2} |g_c|^{−p}`.
    pub envelope_error: f64,
    /// The prediction is not near a node of its cosine.
    pub decisive: bool,
    pub sign_agrees: bool,
}

#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub growth: f64,
    pub rows: Vec<AsymptoticRow>,
}

impl AsymptoticReport {
    /// Every decisive row has the sign of the prediction.
    pub fn signs_agree(&self) -> bool {
        self.rows.iter().all(|r| !r.decisive || r.sign_agrees)
    }
}

/// Compare `γ_p` with `Re(cst p^{−3/2} g_c^{−p})` for `p` in `window`.
pub fn asymptotic_check(gammas: &[BigInt], sing: &Singularity, window: std::ops::RangeInclusive<usize>) -> Result<AsymptoticReport> {
    if *window.end() > gammas.len() || *window.start() == 0 {
        return Err(Error::InsufficientOrder { needed: *window.end(), available: gammas.len() });
    }
    let gc = sing.g_c.approx();
    let cst = sing.amplitude.approx();
    let rows = window
        .map(|p| {
            let exact = gammas[p - 1].clone();
            let x: f64 = exact.to_string().parse().unwrap_or(f64::NAN);
            let scale = (p as f64).powf(-1.5);
            let pred = (cst * scale * gc.powi(-(p as i32))).re;
            let env = cst.norm() * scale * gc.norm().powi(-(p as i32));
            AsymptoticRow {
                p,
                exact,
                predicted: pred,
                relative_error: (x - pred) / x,
                envelope_error: (x - pred) / env,
                decisive: pred.abs() >= 0.5 * env,
                sign_agrees: (x > 0.0) == (pred > 0.0),
            }
        })
        .collect();
    Ok(AsymptoticReport { growth: 1.0 / gc.norm(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nm2_exact::elliptic::elliptic_eval;

    #[test]
    fn nome_model_matches_agm() {
        let u = Complex64::new(0.3, 0.2);
        // invert u(q) from the start q ≈ u/16 + 8(u/16)²
        let x = u / 16.0;
        let mut q = x + 8.0 * x * x;
        for _ in 0..50 {
            let m = model_jets(&Jet2::var_q(q), 1e-17).unwrap();
            q -= (m.u.v - u) / m.u.q;
        }
        let m = model_jets(&Jet2::var_q(q), 1e-17).unwrap();
        assert!((m.u.v - u).norm() < 1e-14);
        let (k, e) = elliptic_eval(&ComplexHP::from_c64(u, 120)).unwrap();
        let half_pi = std::f64::consts::FRAC_PI_2;
        assert!((k.approx() / half_pi - m.k.v).norm() < 1e-12);
        assert!((e.approx() / half_pi - m.e.v).norm() < 1e-12);
    }

    #[test]
    fn small_coupling_branch() {
        let exact = branch_reference().unwrap();
        let g = Complex64::new(-0.03, 0.02);
        let q = physical_nome(g, &exact).map_err(|e| e.to_string()).unwrap();
        let (_, m) = residual(&q, &g, EPS64).unwrap();
        let sum: Complex64 = exact.iter().enumerate().map(|(p, c)| c * g.powu(p as u32 + 1)).sum();
        assert!((m.gamma.v - sum).norm() < 1e-9);
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma1(6), [0, 1, 3, 4, 7, 6, 12]);
    }

    #[test]
    fn empty_box_refused() {
        let b = SearchBox { radii: 0, ..SearchBox::default() };
        assert!(find_singularities(30, &b).is_err());
    }
}
