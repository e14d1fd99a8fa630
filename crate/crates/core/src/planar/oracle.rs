use super::enumerate::{Enumerator, Filter, Root, Tally};
use super::word::{ColorLabel, TraceWord, VertexType};
use super::CouplingSeries;
use crate::algebra::{q, qi, BiSeries, BigRational, ColorPoly, Ring, Scalar};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Default maximum total coupling order.
pub const DEFAULT_BUDGET: usize = 4;
/// Orders above this are always refused.
pub const HARD_LIMIT: usize = 6;

/// Planar correlators by exhaustive enumeration, up to a total coupling
/// order budget.
///
/// Every series is returned as a [`CouplingSeries`] in `(g₁, g₂)` whose
/// coefficients are polynomials in `n`. Each propagator carries `1/t`.
#[derive(Clone, Debug)]
pub struct PlanarOracle {
    budget: usize,
}

impl Default for PlanarOracle {
    fn default() -> Self {
        PlanarOracle { budget: DEFAULT_BUDGET }
    }
}

impl PlanarOracle {
    pub fn new(budget: usize) -> Result<Self> {
        if budget > HARD_LIMIT {
            return Err(Error::Budget { requested: budget, budget: HARD_LIMIT });
        }
        Ok(PlanarOracle { budget })
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn check(&self, order: usize, t: &BigRational) -> Result<()> {
        if order > self.budget {
            return Err(Error::Budget { requested: order, budget: self.budget });
        }
        if t.is_zero() {
            return Err(Error::InvalidArgument("t must be nonzero".into()));
        }
        Ok(())
    }

    /// `⟨(1/N) tr word⟩` at large `N`. Odd words give the zero series.
    pub fn correlator_series(&self, word: &TraceWord, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        self.filtered_correlator(word, order, t, Filter::All)
    }

    /// As [`correlator_series`](Self::correlator_series), keeping only
    /// diagrams accepted by `filter`.
    pub fn filtered_correlator(
        &self,
        word: &TraceWord,
        order: usize,
        t: &BigRational,
        filter: Filter,
    ) -> Result<CouplingSeries> {
        self.check(order, t)?;
        let zero = BiSeries::zero_like(&ColorPoly::zero(), order);
        if word.len() % 2 == 1 {
            return Ok(zero);
        }
        let mut vars: HashMap<ColorLabel, usize> = HashMap::new();
        let mut fixed: Vec<ColorLabel> = word.labels().iter().copied().filter(|l| matches!(l, ColorLabel::Fixed(_))).collect();
        fixed.sort();
        fixed.dedup();
        for (i, l) in fixed.iter().enumerate() {
            vars.insert(*l, i);
        }
        for l in word.labels() {
            let next = vars.len();
            vars.entry(*l).or_insert(next);
        }
        let root = Root {
            leg_vars: word.labels().iter().map(|l| vars[l]).collect(),
            fixed: fixed.len(),
            vars: vars.len(),
        };
        let e = Enumerator {
            root,
            max_vertices: order,
            allowed: vec![VertexType::Crossing, VertexType::Tangency],
            filter,
        };
        let tally = run_checked(&e)?;
        let legs = word.len();
        let mut out = zero;
        for k1 in 0..=order {
            for k2 in 0..=order - k1 {
                let poly = loops_poly(&tally, k1, k2);
                if poly.is_zero() {
                    continue;
                }
                let props = (4 * (k1 + k2) + legs) / 2;
                let w = q(1, 1 << k1) * t_power(t, props);
                out.set(k1, k2, poly.scale(&w));
            }
        }
        Ok(out)
    }

    /// Connected part, by subtracting non-crossing products of lower
    /// cumulants. All labels must be fixed colors.
    pub fn connected_correlator(&self, word: &TraceWord, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        if !word.is_all_fixed() {
            return Err(Error::InvalidArgument(format!("connected part of {word} needs fixed colors")));
        }
        self.check(order, t)?;
        let mut memo = HashMap::new();
        self.cumulant(word, order, t, &mut memo)
    }

    fn cumulant(
        &self,
        word: &TraceWord,
        order: usize,
        t: &BigRational,
        memo: &mut HashMap<TraceWord, CouplingSeries>,
    ) -> Result<CouplingSeries> {
        if let Some(c) = memo.get(word) {
            return Ok(c.clone());
        }
        let mut k = self.correlator_series(word, order, t)?;
        if word.len() % 2 == 0 {
            let positions: Vec<usize> = (0..word.len()).collect();
            for partition in even_noncrossing_partitions(&positions) {
                if partition.len() < 2 {
                    continue;
                }
                let mut prod = BiSeries::constant_like(ColorPoly::one(), order);
                for block in &partition {
                    let sub = word.restrict(block);
                    prod = prod.mul(&self.cumulant(&sub, order, t, memo)?);
                    if prod.is_zero() {
                        break;
                    }
                }
                k = k.sub(&prod);
            }
        }
        memo.insert(word.clone(), k.clone());
        Ok(k)
    }

    /// Planar free energy `F = lim log Z / N²`.
    pub fn free_energy_series(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        self.check(order, t)?;
        let mut out = BiSeries::zero_like(&ColorPoly::zero(), order);
        if order == 0 {
            return Ok(out);
        }
        // Root at a crossing vertex when there is one, weight 1/k₁;
        // otherwise at a tangency vertex, weight 1/k₂.
        for (root_type, allowed) in [
            (VertexType::Crossing, vec![VertexType::Crossing, VertexType::Tangency]),
            (VertexType::Tangency, vec![VertexType::Tangency]),
        ] {
            let pattern = root_type.pattern();
            let e = Enumerator {
                root: Root { leg_vars: pattern.to_vec(), fixed: 0, vars: 2 },
                max_vertices: order - 1,
                allowed,
                filter: Filter::All,
            };
            let tally = run_checked(&e)?;
            for c1 in 0..order {
                for c2 in 0..order - c1 {
                    let poly = loops_poly(&tally, c1, c2);
                    if poly.is_zero() {
                        continue;
                    }
                    let (k1, k2, w) = match root_type {
                        VertexType::Crossing => (c1 + 1, c2, q(1, 4 * (c1 as i64 + 1)) * q(1, 1 << c1)),
                        VertexType::Tangency => (0, c2 + 1, q(1, 2 * (c2 as i64 + 1))),
                    };
                    let w = w * t_power(t, 2 * (k1 + k2));
                    out.set(k1, k2, poly.scale(&w));
                }
            }
        }
        Ok(out)
    }

    /// The five connected six-leg correlators `Ξ₁..Ξ₅` at `t = 1`, for the
    /// words `abcabc`, `abcacb`, `aabcbc`, `abbacc`, `aabbcc`.
    pub fn six_leg_invariants(&self, order: usize) -> Result<[CouplingSeries; 5]> {
        let t = qi(1);
        self.check(order, &t)?;
        let mut memo = HashMap::new();
        let mut get = |w: &str| self.cumulant(&TraceWord::fixed(w), order, &t, &mut memo);
        Ok([get("abcabc")?, get("abcacb")?, get("aabcbc")?, get("abbacc")?, get("aabbcc")?])
    }

    /// `G = ⟨(1/N) tr M_a²⟩`.
    pub fn two_point(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        self.correlator_series(&TraceWord::fixed("aa"), order, t)
    }

    /// `Γ₁`: connected `⟨tr M_a M_b M_a M_b⟩`.
    pub fn gamma1(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        self.connected_correlator(&TraceWord::fixed("abab"), order, t)
    }

    /// `Γ₂`: connected `⟨tr M_a M_a M_b M_b⟩`.
    pub fn gamma2(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        self.connected_correlator(&TraceWord::fixed("aabb"), order, t)
    }

    /// `F₁ = (1/n) Σ_{a,b} ⟨tr M_a M_b M_a M_b⟩`.
    pub fn f1(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        self.summed_over_n("abab", order, t)
    }

    /// `F₂ = (1/n) Σ_{a,b} ⟨tr M_a M_a M_b M_b⟩`.
    pub fn f2(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        self.summed_over_n("aabb", order, t)
    }

    fn summed_over_n(&self, w: &str, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        let s = self.correlator_series(&TraceWord::summed(w), order, t)?;
        s.div_scalar_exact(&ColorPoly::n())
            .ok_or_else(|| Error::Invariant(format!("summed word {w} not divisible by n")))
    }

    /// `Σ = t − 1/G`.
    pub fn sigma_series(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        let g = self.two_point(order, t)?;
        let inv = g.inverse()?;
        Ok(inv.neg().add_scalar(&ColorPoly::constant(t.clone())))
    }

    /// Amputated one-particle-irreducible two-leg sum, counted directly.
    pub fn one_pi_series(&self, order: usize, t: &BigRational) -> Result<CouplingSeries> {
        let s = self.filtered_correlator(&TraceWord::fixed("aa"), order, t, Filter::OnePI)?;
        Ok(s.scale(&(t * t)))
    }
}

fn run_checked(e: &Enumerator) -> Result<Tally> {
    let tally = e.run();
    if tally.nonplanar != 0 {
        return Err(Error::Invariant(format!(
            "{} generated diagrams have subleading powers of N",
            tally.nonplanar
        )));
    }
    Ok(tally)
}

fn loops_poly(tally: &Tally, k1: usize, k2: usize) -> ColorPoly {
    ColorPoly::from_coeffs((0..tally.colors).map(|c| qi(tally.get(k1, k2, c) as i64)).collect())
}

fn t_power(t: &BigRational, e: usize) -> BigRational {
    Ring::pow(&t.inverse().expect("t is nonzero"), e as u32)
}

/// Non-crossing partitions of `elems` into blocks of even size.
pub(crate) fn even_noncrossing_partitions(elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if elems.is_empty() {
        return vec![vec![]];
    }
    let n = elems.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let mut idx = vec![0usize];
        idx.extend((1..n).filter(|i| mask >> (i - 1) & 1 == 1));
        if idx.len() % 2 == 1 {
            continue;
        }
        let block: Vec<usize> = idx.iter().map(|&i| elems[i]).collect();
        let mut gaps: Vec<&[usize]> = idx.windows(2).map(|w| &elems[w[0] + 1..w[1]]).collect();
        gaps.push(&elems[idx[idx.len() - 1] + 1..]);
        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![block]];
        for gap in gaps {
            let subs = even_noncrossing_partitions(gap);
            partial = partial
                .iter()
                .flat_map(|p| {
                    subs.iter().map(move |s| {
                        let mut v = p.clone();
                        v.extend(s.iter().cloned());
                        v
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Series;

    fn poly(c: &[i64]) -> ColorPoly {
        ColorPoly::from_coeffs(c.iter().map(|&x| qi(x)).collect())
    }

    fn one_matrix(s: &CouplingSeries) -> Series<BigRational> {
        s.map(|c| c.eval(&qi(1))).at_h2_zero()
    }

    #[test]
    fn noncrossing_counts() {
        // Even non-crossing partitions of 2m points: 1, 2, 5, 14 ... for
        // pair partitions plus larger blocks: 1, 3, 12.
        let sizes: Vec<usize> = [2, 4, 6]
            .iter()
            .map(|&n| even_noncrossing_partitions(&(0..n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(sizes, vec![1, 3, 12]);
    }

    #[test]
    fn two_point_low_orders() {
        let o = PlanarOracle::default();
        let g = o.two_point(3, &qi(1)).unwrap();
        assert_eq!(g.get(0, 0), &poly(&[1]));
        assert_eq!(g.get(1, 0), &poly(&[2]));
        assert_eq!(g.get(0, 1), &poly(&[2, 2]));
        assert_eq!(one_matrix(&g), Series::from_ints(&[1, 2, 9, 54], 3));
    }

    #[test]
    fn single_crossing_tangle() {
        let o = PlanarOracle::default();
        let g1 = o.gamma1(2, &qi(1)).unwrap();
        assert_eq!(g1.get(0, 0), &poly(&[]));
        assert_eq!(g1.get(1, 0), &poly(&[1]));
    }

    #[test]
    fn free_energy_first_orders() {
        let o = PlanarOracle::default();
        assert!(o.free_energy_series(0, &qi(1)).unwrap().is_zero());
        let f = o.free_energy_series(2, &qi(1)).unwrap();
        assert_eq!(f.get(1, 0), &ColorPoly::from_coeffs(vec![qi(0), q(1, 2)]));
        assert_eq!(f.get(0, 1), &ColorPoly::from_coeffs(vec![qi(0), q(1, 2), q(1, 2)]));
    }

    #[test]
    fn budget_refusal() {
        assert!(PlanarOracle::new(7).is_err());
        let o = PlanarOracle::new(2).unwrap();
        assert_eq!(
            o.two_point(3, &qi(1)),
            Err(Error::Budget { requested: 3, budget: 2 })
        );
    }

    #[test]
    fn odd_words_vanish() {
        let o = PlanarOracle::default();
        assert!(o.correlator_series(&TraceWord::fixed("aba"), 2, &qi(1)).unwrap().is_zero());
    }

    #[test]
    fn sigma_first_orders() {
        let o = PlanarOracle::default();
        let s = one_matrix(&o.sigma_series(3, &qi(1)).unwrap());
        assert_eq!(s.truncate(2), Series::from_ints(&[0, 2, 5], 2));
        let direct = one_matrix(&o.one_pi_series(3, &qi(1)).unwrap());
        assert_eq!(s, direct);
    }
}
