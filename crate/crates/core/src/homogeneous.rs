//! Homogeneous-limit evaluators: all rows at one lambda, all columns at 0.
//!
//! The determinant entries become stacked derivatives of phi(lambda) (a
//! double Wronskian / Hankel structure), computed exactly by jet recurrences.
//! These matrices are badly conditioned: the (n!)^2 prefactor signals about
//! 2*log10(prod n!) decimal digits of cancellation, so all internal work uses
//! MPFR scalars with a precision chosen from that estimate, and determinants
//! and prefactors are combined in log-space to dodge exponent overflow.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::matrix::Matrix;
use crate::scalar::{CPrec, Scalar, C64};
use rug::ops::CompleteRound;
use rug::Float;
use std::f64::consts::PI;

/// Largest N accepted by the homogeneous evaluators.
pub const HOM_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct HomogeneousParams {
    pub lambda: C64,
    pub eta: C64,
    pub n: usize,
    /// Working precision override; `None` picks [`auto_bits`].
    pub bits: Option<u32>,
}

impl HomogeneousParams {
    pub fn new(lambda: C64, eta: C64, n: usize) -> Self {
        HomogeneousParams {
            lambda,
            eta,
            n,
            bits: None,
        }
    }

    fn working_bits(&self) -> u32 {
        self.bits.unwrap_or_else(|| auto_bits(self.n))
    }
}

/// A value together with its logarithm (safe against exponent overflow of
/// the plain value) and the precision it was computed at.
#[derive(Clone, Debug)]
pub struct HomValue {
    pub value: C64,
    pub ln_value: C64,
    pub precision_bits: u32,
}

/// Precision estimate: the bits cancelled by the (n!)^2 prefactor plus
/// headroom. Never below 128 bits.
pub fn auto_bits(n: usize) -> u32 {
    let mut lost = 0.0f64;
    let mut lg_fact = 0.0f64;
    for k in 2..n {
        lg_fact += (k as f64).log2();
        lost += 2.0 * lg_fact;
    }
    // lost = 2 * sum_{k<n} log2(k!) is an overcount of the true cancellation
    // but cheap headroom; 64 guard bits on top
    (lost.ceil() as u32 + 64).max(128)
}

fn check_cap(n: usize) -> Result<()> {
    if n == 0 || n > HOM_CAP {
        return Err(Error::Resource {
            what: "homogeneous determinant",
            cap: HOM_CAP,
            requested: n,
        });
    }
    Ok(())
}

fn factorials(bits: u32, up_to: usize) -> Vec<Float> {
    let mut f = Vec::with_capacity(up_to + 1);
    f.push(Float::with_val(bits, 1));
    for k in 1..=up_to {
        f.push(f[k - 1].clone() * k as u32);
    }
    f
}

fn scale_by(c: &CPrec, f: &Float) -> CPrec {
    CPrec {
        re: (&c.re * f).complete(f.prec()),
        im: (&c.im * f).complete(f.prec()),
    }
}

struct HomCore {
    bits: u32,
    lambda: CPrec,
    eta: CPrec,
    /// ln det of the derivative matrix of phi.
    det_ln_z: CPrec,
    /// ln of the prefactor phi^(N^2) prod (n!)^2.
    ln_pref_z: CPrec,
    /// Derivative matrix, kept for column replacement.
    zmat: Matrix<CPrec>,
    facts: Vec<Float>,
}

fn hom_core(p: &HomogeneousParams) -> Result<HomCore> {
    check_cap(p.n)?;
    let n = p.n;
    let bits = p.working_bits();
    let lambda = CPrec::new(bits, p.lambda.re, p.lambda.im);
    let eta = CPrec::new(bits, p.eta.re, p.eta.im);
    let order = 2 * n - 2;
    let sp = Jet::variable(lambda.clone() + eta.clone(), order).sinh();
    let sm = Jet::variable(lambda.clone() - eta.clone(), order).sinh();
    let c = eta.scale(2.0).sinh();
    if sp.coeff(0).modulus() < 1e-30 || sm.coeff(0).modulus() < 1e-30 {
        return Err(Error::SingularParameter(
            "vanishing vertex weight sinh(lambda +/- eta)".into(),
        ));
    }
    let phi_jet = Jet::constant(c, order).div(&sp.mul(&sm))?;
    let facts = factorials(bits, order.max(1));
    let mut zmat = Matrix::zeros(bits, n, n);
    for a in 0..n {
        for k in 0..n {
            zmat.set(a, k, scale_by(phi_jet.coeff(a + k), &facts[a + k]));
        }
    }
    let det_ln_z = zmat.det_ln()?;
    let ln_phi = phi_jet.coeff(0).ln();
    let mut ln_fact_sum = CPrec::zero(bits);
    for k in 1..n {
        ln_fact_sum = ln_fact_sum
            + CPrec {
                re: facts[k].clone().ln(),
                im: Float::with_val(bits, 0),
            };
    }
    // the (sinh 2 eta)^(N^2) factor restores the unnormalized weights:
    // without it the N = 1 value would be 1 instead of sinh 2 eta, and the
    // enumeration oracle disagrees at every N
    let ln_c = eta.scale(2.0).sinh().ln();
    let ln_pref_z = (ln_phi - ln_c).scale((n * n) as f64) + ln_fact_sum.scale(2.0);
    Ok(HomCore {
        bits,
        lambda,
        eta,
        det_ln_z,
        ln_pref_z,
        zmat,
        facts,
    })
}

fn finish(ln_value: CPrec, bits: u32) -> HomValue {
    HomValue {
        value: ln_value.exp().to_c64(),
        ln_value: ln_value.to_c64(),
        precision_bits: bits,
    }
}

/// Homogeneous partition function.
pub fn z_hom(p: &HomogeneousParams) -> Result<HomValue> {
    let core = hom_core(p)?;
    Ok(finish(core.det_ln_z - core.ln_pref_z, core.bits))
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::IndexRange(format!(
            "row index M = {m} outside 1..={n}"
        )));
    }
    Ok(())
}

/// Shared path of the correlators: replace the last column of the derivative
/// matrix with epsilon-derivatives of the psi ratio
/// sinh(eps)^e_s * sinh(eps - 2 eta)^e_c / sinh(eps + lambda - eta)^e_d.
fn correlator_hom(p: &HomogeneousParams, m: usize, turn_only: bool) -> Result<HomValue> {
    check_m(p.n, m)?;
    let core = hom_core(p)?;
    let n = p.n;
    let bits = core.bits;
    let order = n - 1;
    let (e_c, e_d) = if turn_only { (m - 1, n - 1) } else { (m, n) };
    let s_eps = Jet::variable(CPrec::zero(bits), order).sinh();
    let s_shift = Jet::variable(-core.eta.scale(2.0), order).sinh();
    let s_den = Jet::variable(core.lambda.clone() - core.eta.clone(), order).sinh();
    let psi = s_eps
        .powi(n - m)
        .mul(&s_shift.powi(e_c))
        .div(&s_den.powi(e_d))?;
    let mut kmat = core.zmat.clone();
    for a in 0..n {
        let mut v = scale_by(psi.coeff(a), &core.facts[a]);
        if !turn_only {
            v = -v;
        }
        kmat.set(a, n - 1, v);
    }
    let det_ln_k = kmat.det_ln()?;
    let sh_p = (core.lambda.clone() + core.eta.clone()).sinh();
    let sh_m = (core.lambda.clone() - core.eta.clone()).sinh();
    let mut ln = CPrec {
        re: core.facts[n - 1].clone().ln(),
        im: Float::with_val(bits, 0),
    };
    if turn_only {
        ln = ln + core.eta.scale(2.0).sinh().ln();
        ln = ln - sh_p.ln().scale(m as f64) - sh_m.ln().scale((n - m + 1) as f64);
    } else {
        ln = ln - sh_p.ln().scale(m as f64) - sh_m.ln().scale((n - m) as f64);
    }
    Ok(finish(ln + det_ln_k - core.det_ln_z, bits))
}

/// Homogeneous boundary polarization G_N^(M).
pub fn g_hom(p: &HomogeneousParams, m: usize) -> Result<HomValue> {
    correlator_hom(p, m, false)
}

/// Homogeneous turn probability H_N^(M).
pub fn h_hom(p: &HomogeneousParams, m: usize) -> Result<HomValue> {
    correlator_hom(p, m, true)
}

/// ASM count A_N from the partition function at the ice point
/// (lambda = i pi/2, eta = i pi/6, all weight moduli sqrt(3)/2).
pub fn ice_point_asm(n: usize) -> Result<f64> {
    let p = HomogeneousParams::new(C64::new(0.0, PI / 2.0), C64::new(0.0, PI / 6.0), n);
    let core = hom_core(&p)?;
    // Z = w^(N^2) A_N with w = sinh(lambda + eta) = i sqrt(3)/2
    let ln_w = (core.lambda.clone() + core.eta.clone()).sinh().ln();
    let a = (core.det_ln_z - core.ln_pref_z - ln_w.scale((n * n) as f64)).exp();
    let val = a.to_c64();
    if val.im.abs() > 1e-4 * val.re.abs().max(1.0) {
        return Err(Error::SingularParameter(format!(
            "ice-point count came out non-real: {val}"
        )));
    }
    Ok(val.re)
}
