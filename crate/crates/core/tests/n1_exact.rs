//! The n = 1 closed forms against the reference table and the exact
//! singularity data.

use std::time::Instant;
use tangles::algebra::{q, qi, BigInt, QuadraticNumber, Ring};
use tangles::golden::{self, TableId};
use tangles::n1_exact::*;

#[test]
fn reference_table_one() {
    let start = Instant::now();
    for col in golden::builtin().into_iter().filter(|c| c.table == TableId::Tab1) {
        let legs = golden::legs(col.column).unwrap();
        let counts = tangle_counts(legs, 32).unwrap();
        for p in 1..=32 {
            let expect = col.get(p).cloned().unwrap_or_default();
            assert_eq!(counts[p - 1], expect, "{} at p = {p}", col.column);
        }
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn leading_coefficients() {
    let sol = solve_a(6).unwrap();
    let g4 = connected(2, &sol).unwrap();
    assert_eq!(g4.coeffs()[..6], [0, 1, 2, 4, 10, 29].map(qi));
    assert_eq!(moments(2, &sol).unwrap().coeff(0), &qi(2));
    // G₄ᶜ = G₄ − 2G₂² with G₂ = 1.
    assert_eq!(g4, moments(2, &sol).unwrap().add_scalar(&qi(-2)));
    // Free cumulants with m₂ = 1: κ₆ = m₆ − 6κ₄ − 5.
    let k6 = moments(3, &sol).unwrap().sub_series(&g4.scale(&qi(6))).add_scalar(&qi(-5));
    assert_eq!(connected(3, &sol).unwrap(), k6);
}

#[test]
fn solution_coefficients_are_positive() {
    let sol = solve_a(32).unwrap();
    assert!(sol.a.coeffs().iter().all(|c| *c > qi(0)));
}

#[test]
fn resolvent_expansion() {
    let sol = solve_a(10).unwrap();
    resolvent_check(&sol, 5).unwrap();
}

#[test]
fn closed_subset_relation() {
    h2pi_check(&solve_a(24).unwrap()).unwrap();
    let sol = solve_a(2).unwrap();
    let h = h2pi_series(&sol).unwrap();
    // H = O(g²): the first H-2PI tangle has two crossings.
    assert!(h.coeff(0).is_zero() && h.coeff(1).is_zero());
}

#[test]
fn critical_values() {
    assert_eq!(critical_point().unwrap(), (qi(3), q(4, 27), q(4, 3)));
    let res = branch_resultant().unwrap();
    let at3: tangles::algebra::BigRational = res.iter().rev().fold(qi(0), |acc, c| acc * qi(3) + c);
    assert!(at3.is_zero());
}

fn sqrt21001(a: (i64, i64), b: (i64, i64)) -> QuadraticNumber {
    QuadraticNumber::new(q(a.0, a.1), q(b.0, b.1), 21001)
}

#[test]
fn singularity_constants() {
    let data = exact_constants().unwrap();
    assert_eq!(data.g_c, sqrt21001((-101, 270), (1, 270)));
    assert_eq!(data.a_sq, sqrt21001((2877137, 339696), (7087, 339696)));
    assert_eq!(data.b, sqrt21001((5 * 99397733, 901510722), (5 * 2127733, 901510722)));
    assert!((data.g_c.to_f64() - 0.16266).abs() < 1e-5);
    // P(3, g) ∝ 20 − 101g − 135g².
    let poly = quintic().at_a(&qi(3));
    let scale = &poly[0] / qi(20);
    assert_eq!(poly, [qi(20), qi(-101), qi(-135)].map(|c| c * &scale));
}

/// Solve the quintic numerically just below `g_c` and read off `a`, `b`.
#[test]
fn local_expansion_numerically() {
    let data = exact_constants().unwrap();
    let gc = data.g_c.to_f64();
    let p = |a: f64, g: f64| {
        32.0 * (1.0 - g) - 64.0 * (1.0 - g) * a + 32.0 * (1.0 - g) * a * a
            - 4.0 * (1.0 + 2.0 * g - g * g) * a.powi(3)
            + 6.0 * g * (1.0 - g) * a.powi(4)
            - g * (1.0 - g) * a.powi(5)
    };
    // The physical branch is the root below 3; bisect on (2.5, 3).
    let root = |g: f64| {
        let (mut lo, mut hi) = (2.5, 3.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p(lo, g).signum() == p(mid, g).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let (e1, e2) = (1e-6, 4e-6);
    let (d1, d2) = (3.0 - root(gc - e1), 3.0 - root(gc - e2));
    // 3 − A = a√ε − bε: solve the 2×2 system.
    let (s1, s2) = (e1.sqrt(), e2.sqrt());
    let det = s1 * (-e2) - s2 * (-e1);
    let a = (d1 * (-e2) - d2 * (-e1)) / det;
    let b = (s1 * d2 - s2 * d1) / det;
    assert!((a * a / data.a_sq.to_f64() - 1.0).abs() < 1e-3, "a = {a}");
    assert!((b / data.b.to_f64() - 1.0).abs() < 2e-2, "b = {b}");
}

#[test]
fn large_order_estimate() {
    let sol = solve_a(32).unwrap();
    for l in 2..=4 {
        let c = asymptotics(&sol, l, 32).unwrap();
        assert!((c.ratio - 1.0).abs() < 0.10, "ℓ = {l}: ratio {}", c.ratio);
    }
    assert!(asymptotics(&sol, 1, 32).is_err());
    assert!(asymptotics(&sol, 2, 33).is_err());
}

#[test]
fn counts_are_integers() {
    assert_eq!(tangle_counts(10, 5).unwrap()[..3], [0, 0, 0].map(BigInt::from));
}
