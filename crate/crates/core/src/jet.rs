//! Truncated Taylor series (jets) in one variable.
//!
//! A jet of order `K` stores coefficients `c_0..c_K` of an expansion around a
//! point; arithmetic is exact truncation. Jets carry the high-order
//! derivatives needed by the homogeneous-limit determinants, where finite
//! differences would be hopeless.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Minimum leading-coefficient modulus accepted by [`Jet::div`].
pub const JET_DIV_THRESHOLD: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Jet<S> {
    /// Jet from explicit coefficients; `coeffs.len() = K + 1`, K >= 0.
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "jet needs at least the constant term");
        Jet { coeffs }
    }

    /// Constant jet of the given order.
    pub fn constant(value: S, order: usize) -> Self {
        let ctx = value.ctx();
        let mut coeffs = vec![S::zero(ctx); order + 1];
        coeffs[0] = value;
        Jet { coeffs }
    }

    /// The identity jet `value + eps` of the given order.
    pub fn variable(value: S, order: usize) -> Self {
        let ctx = value.ctx();
        let mut coeffs = vec![S::zero(ctx); order + 1];
        coeffs[0] = value;
        if order >= 1 {
            coeffs[1] = S::one(ctx);
        }
        Jet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    fn ctx(&self) -> S::Ctx {
        self.coeffs[0].ctx()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!(self.order(), rhs.order(), "jet order mismatch");
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "jet order mismatch");
        let ctx = self.ctx();
        let k = self.order();
        let mut out = vec![S::zero(ctx); k + 1];
        for i in 0..=k {
            for j in 0..=k - i {
                out[i + j] = out[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        Jet { coeffs: out }
    }

    /// Truncated quotient; requires a nonzero leading coefficient in `den`.
    pub fn div(&self, den: &Self) -> Result<Self> {
        assert_eq!(self.order(), den.order(), "jet order mismatch");
        if den.coeffs[0].modulus() < JET_DIV_THRESHOLD {
            return Err(Error::SingularJet);
        }
        let ctx = self.ctx();
        let k = self.order();
        let mut out = vec![S::zero(ctx); k + 1];
        for n in 0..=k {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc = acc - den.coeffs[j].clone() * out[n - j].clone();
            }
            out[n] = acc / den.coeffs[0].clone();
        }
        Ok(Jet { coeffs: out })
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, e: usize) -> Self {
        let mut out = Jet::constant(S::one(self.ctx()), self.order());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// sinh composed with this jet, via the coupled sinh/cosh recurrence.
    pub fn sinh(&self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    /// Coefficients of (sinh(x), cosh(x)) for jet x:
    /// n*s_n = sum_{j=1..n} j*x_j*c_{n-j}, and symmetrically for c_n.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        let ctx = self.ctx();
        let k = self.order();
        let mut s = vec![S::zero(ctx); k + 1];
        let mut c = vec![S::zero(ctx); k + 1];
        s[0] = self.coeffs[0].sinh();
        c[0] = self.coeffs[0].cosh();
        for n in 1..=k {
            let mut sn = S::zero(ctx);
            let mut cn = S::zero(ctx);
            for j in 1..=n {
                let xj = self.coeffs[j].scale(j as f64);
                sn = sn + xj.clone() * c[n - j].clone();
                cn = cn + xj * s[n - j].clone();
            }
            s[n] = sn.scale(1.0 / n as f64);
            c[n] = cn.scale(1.0 / n as f64);
        }
        (Jet { coeffs: s }, Jet { coeffs: c })
    }

    /// k-th derivative at the expansion point: k! * c_k.
    pub fn derivative(&self, k: usize) -> S {
        let mut fact = 1.0f64;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.coeffs[k].scale(fact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c64, rel_err, C64};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn jet(vals: &[(f64, f64)]) -> Jet<C64> {
        Jet::from_coeffs(vals.iter().map(|&(r, i)| c64(r, i)).collect())
    }

    #[test]
    fn sinh_of_identity_jet_order1() {
        let x = Jet::variable(c64(0.0, 0.0), 1);
        let s = x.sinh();
        assert_eq!(s.coeffs(), &[c64(0.0, 0.0), c64(1.0, 0.0)]);
    }

    #[test]
    fn sinh_taylor_series_order3() {
        let x = Jet::variable(c64(0.0, 0.0), 3);
        let s = x.sinh();
        assert!(rel_err(s.coeff(0), &c64(0.0, 0.0)) < 1e-15);
        assert!(rel_err(s.coeff(1), &c64(1.0, 0.0)) < 1e-15);
        assert!(s.coeff(2).norm() < 1e-15);
        assert!(rel_err(s.coeff(3), &c64(1.0 / 6.0, 0.0)) < 1e-14);
    }

    #[test]
    fn sinh_at_i_pi_half() {
        let x = Jet::variable(c64(0.0, FRAC_PI_2), 1);
        let s = x.sinh();
        assert!((s.coeff(0) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!(s.coeff(1).norm() < 1e-15); // cosh(i pi/2) = 0
    }

    #[test]
    fn div_constants() {
        let a = jet(&[(1.0, 0.0)]);
        let b = jet(&[(2.0, 0.0)]);
        assert_eq!(a.div(&b).unwrap().coeff(0), &c64(0.5, 0.0));
    }

    #[test]
    fn div_by_one() {
        let a = jet(&[(0.0, 0.0), (1.0, 0.0)]);
        let b = jet(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(a.div(&b).unwrap(), a);
    }

    #[test]
    fn div_geometric_series() {
        let num = jet(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let den = jet(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let q = num.div(&den).unwrap();
        assert_eq!(q, jet(&[(1.0, 0.0), (-1.0, 0.0), (1.0, 0.0)]));
    }

    #[test]
    fn div_singular_leading_coeff() {
        let num = jet(&[(1.0, 0.0), (0.0, 0.0)]);
        let den = jet(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(matches!(num.div(&den), Err(Error::SingularJet)));
    }

    #[test]
    fn sinh_matches_finite_differences() {
        // central differences of sinh at a complex point, orders 1..4
        let z0 = c64(0.35, 0.8);
        let x = Jet::variable(z0, 4);
        let s = x.sinh();
        let h = 1e-2;
        let f = |t: f64| (z0 + c64(t, 0.0)).sinh();
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        let d2 = (f(h) - f(0.0).scale(2.0) + f(-h)) / (h * h);
        let d3 = (f(2.0 * h) - f(h).scale(2.0) + f(-h).scale(2.0) - f(-2.0 * h)) / (2.0 * h * h * h);
        let d4 = (f(2.0 * h) - f(h).scale(4.0) + f(0.0).scale(6.0) - f(-h).scale(4.0)
            + f(-2.0 * h))
            / (h * h * h * h);
        // central differences at h = 1e-2 are only accurate to O(h^2)
        for (k, fd) in [(1, d1), (2, d2), (3, d3), (4, d4)] {
            assert!(
                rel_err(&s.derivative(k), &fd) < 1e-3,
                "order {k}: jet {:?} fd {:?}",
                s.derivative(k),
                fd
            );
        }
    }

    fn arb_jet() -> impl Strategy<Value = Jet<C64>> {
        (1usize..=8, prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 9)).prop_map(|(k, v)| {
            Jet::from_coeffs(v[..=k].iter().map(|&(r, i)| c64(r, i)).collect())
        })
    }

    fn jets_close(a: &Jet<C64>, b: &Jet<C64>, tol: f64) -> bool {
        a.coeffs()
            .iter()
            .zip(b.coeffs())
            .all(|(x, y)| (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm())))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
            let k = a.order().min(b.order()).min(c.order());
            let trim = |j: &Jet<C64>| Jet::from_coeffs(j.coeffs()[..=k].to_vec());
            let (a, b, c) = (trim(&a), trim(&b), trim(&c));
            prop_assert!(jets_close(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)), 1e-10));
            prop_assert!(jets_close(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c)), 1e-10));
        }

        #[test]
        fn div_is_mul_inverse(a in arb_jet(), b in arb_jet()) {
            let k = a.order().min(b.order());
            let trim = |j: &Jet<C64>| Jet::from_coeffs(j.coeffs()[..=k].to_vec());
            let (a, b) = (trim(&a), trim(&b));
            // the recurrence divides by the leading coefficient once per
            // order, so error compounds when it is small
            prop_assume!(b.coeff(0).norm() > 0.5);
            let q = a.div(&b).unwrap();
            prop_assert!(jets_close(&q.mul(&b), &a, 1e-9));
        }
    }
}
