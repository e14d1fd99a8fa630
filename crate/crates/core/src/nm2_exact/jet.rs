//! Second-order jets in two variables `(q, g)`.

use super::hp::Field;

/// A value together with its first and second partial derivatives.
#[derive(Clone, Debug)]
pub struct Jet2<F> {
    pub v: F,
    pub q: F,
    pub g: F,
    pub qq: F,
    pub qg: F,
    pub gg: F,
}

impl<F: Field> Jet2<F> {
    pub fn constant(v: F) -> Self {
        let z = v.zero_like();
        Jet2 { q: z.clone(), g: z.clone(), qq: z.clone(), qg: z.clone(), gg: z, v }
    }

    /// The variable `q` at the point `v`.
    pub fn var_q(v: F) -> Self {
        let mut j = Jet2::constant(v);
        j.q = j.v.one_like();
        j
    }

    /// The variable `g` at the point `v`.
    pub fn var_g(v: F) -> Self {
        let mut j = Jet2::constant(v);
        j.g = j.v.one_like();
        j
    }

    pub fn lift(&self, x: f64) -> Self {
        Jet2::constant(self.v.lift(num_complex::Complex64::new(x, 0.0)))
    }

    fn map2(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        Jet2 {
            v: f(&self.v, &o.v),
            q: f(&self.q, &o.q),
            g: f(&self.g, &o.g),
            qq: f(&self.qq, &o.qq),
            qg: f(&self.qg, &o.qg),
            gg: f(&self.gg, &o.gg),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.map2(o, F::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.map2(o, F::sub)
    }

    pub fn neg(&self) -> Self {
        self.map2(self, |a, _| a.neg())
    }

    pub fn scale(&self, x: f64) -> Self {
        self.map2(self, |a, _| a.scale(x))
    }

    /// Multiply by `n/d` for integers small enough to be exact in `f64`.
    pub fn scale_frac(&self, n: i64, d: i64) -> Self {
        let d = self.v.lift(num_complex::Complex64::new(d as f64, 0.0));
        self.map2(self, |a, _| a.scale(n as f64).div(&d))
    }

    pub fn add_const(&self, x: f64) -> Self {
        let mut j = self.clone();
        j.v = j.v.add(&j.v.lift(num_complex::Complex64::new(x, 0.0)));
        j
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self, o);
        let two = |x: F| x.add(&x);
        Jet2 {
            v: a.v.mul(&b.v),
            q: a.q.mul(&b.v).add(&a.v.mul(&b.q)),
            g: a.g.mul(&b.v).add(&a.v.mul(&b.g)),
            qq: a.qq.mul(&b.v).add(&two(a.q.mul(&b.q))).add(&a.v.mul(&b.qq)),
            qg: a.qg.mul(&b.v).add(&a.q.mul(&b.g)).add(&a.g.mul(&b.q)).add(&a.v.mul(&b.qg)),
            gg: a.gg.mul(&b.v).add(&two(a.g.mul(&b.g))).add(&a.v.mul(&b.gg)),
        }
    }

    /// `1/f`.
    pub fn inv(&self) -> Self {
        let f = self;
        let h = f.v.one_like().div(&f.v);
        let h2 = h.mul(&h);
        let h3 = h2.mul(&h);
        let two = |x: F| x.add(&x);
        Jet2 {
            q: f.q.mul(&h2).neg(),
            g: f.g.mul(&h2).neg(),
            qq: two(f.q.mul(&f.q)).mul(&h3).sub(&f.qq.mul(&h2)),
            qg: two(f.q.mul(&f.g)).mul(&h3).sub(&f.qg.mul(&h2)),
            gg: two(f.g.mul(&f.g)).mul(&h3).sub(&f.gg.mul(&h2)),
            v: h,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn f(q: &Jet2<C>, g: &Jet2<C>) -> Jet2<C> {
        // q³g/(1 + q g²)
        let num = q.mul(q).mul(q).mul(g);
        num.div(&q.mul(&g.square()).add_const(1.0))
    }

    fn close(a: C, b: C) -> bool {
        (a - b).norm() < 1e-6 * b.norm().max(1.0)
    }

    #[test]
    fn derivatives_against_differences() {
        let (q0, g0) = (C::new(0.4, 0.3), C::new(-0.7, 0.2));
        let val = |q: C, g: C| f(&Jet2::constant(q), &Jet2::constant(g)).v;
        let j = f(&Jet2::var_q(q0), &Jet2::var_g(g0));
        let h = 1e-4;
        let (dq, dg) = (C::new(h, 0.0), C::new(h, 0.0));
        assert!(close(j.v, val(q0, g0)));
        assert!(close(j.q, (val(q0 + dq, g0) - val(q0 - dq, g0)) / (2.0 * h)));
        assert!(close(j.g, (val(q0, g0 + dg) - val(q0, g0 - dg)) / (2.0 * h)));
        let d2 = |a: C, b: C| (val(q0 + a, g0 + b) - 2.0 * val(q0, g0) + val(q0 - a, g0 - b)) / (h * h);
        assert!((j.qq - d2(dq, C::new(0.0, 0.0))).norm() < 1e-5);
        assert!((j.gg - d2(C::new(0.0, 0.0), dg)).norm() < 1e-5);
        let mixed = (val(q0 + dq, g0 + dg) - val(q0 + dq, g0 - dg) - val(q0 - dq, g0 + dg) + val(q0 - dq, g0 - dg))
            / (4.0 * h * h);
        assert!((j.qg - mixed).norm() < 1e-5);
    }
}
