//! Closed forms at the free-fermion point eta = i pi/4.
//!
//! After the variable change lambda -> i lambda, nu -> i nu and rescaling
//! every weight by -i, the weights become a = sin(lambda - nu + pi/4),
//! b = sin(lambda - nu - pi/4), c = 1 and satisfy a^2 + b^2 = c^2. The
//! partition function collapses to a double cosine product, and the
//! homogeneous boundary correlators become binomial probabilities.

use crate::error::{Error, Result};
use crate::model::{SpectralParams, SpectralParams64};
use crate::scalar::{c64, C64};
use std::f64::consts::FRAC_PI_4;

/// Real spectral parameters of the free-fermion model.
#[derive(Clone, Debug)]
pub struct FreeFermionParams {
    pub lambdas: Vec<f64>,
    pub nus: Vec<f64>,
}

impl FreeFermionParams {
    /// Homogeneous model with weights (cos lambda, sin lambda, 1): all rows
    /// at `lambda`, all columns at -pi/4.
    pub fn homogeneous(n: usize, lambda: f64) -> Self {
        FreeFermionParams {
            lambdas: vec![lambda; n],
            nus: vec![-FRAC_PI_4; n],
        }
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    /// The inverse of the variable change: generic parameters whose sinh
    /// weights equal i times the free-fermion sin weights.
    pub fn to_generic(&self) -> Result<SpectralParams64> {
        SpectralParams::new(
            self.lambdas.iter().map(|&l| c64(0.0, l)).collect(),
            self.nus.iter().map(|&v| c64(0.0, v)).collect(),
            c64(0.0, FRAC_PI_4),
        )
    }
}

/// Phase i^(n^2) relating the generic-parametrization partition function to
/// the rescaled free-fermion one: each of the n^2 site weights carries an i.
pub fn phase(n: usize) -> C64 {
    match (n * n) % 4 {
        0 => c64(1.0, 0.0),
        1 => c64(0.0, 1.0),
        2 => c64(-1.0, 0.0),
        _ => c64(0.0, -1.0),
    }
}

/// Partition function at the free-fermion point: the double cosine product.
pub fn z_ff(p: &FreeFermionParams) -> f64 {
    let n = p.n();
    let mut z = 1.0;
    for a in 0..n {
        for b in a + 1..n {
            z *= (p.lambdas[a] - p.lambdas[b]).cos();
        }
    }
    for k in 0..n {
        for j in k + 1..n {
            z *= (p.nus[k] - p.nus[j]).cos();
        }
    }
    z
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 || m > n {
        return Err(Error::IndexRange(format!(
            "row index M = {m} outside 1..={n}"
        )));
    }
    Ok(())
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut b = 1.0f64;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b
}

/// Homogeneous turn probability:
/// H = binom(N-1, M-1) (cos^2 lambda)^(N-M) (sin^2 lambda)^(M-1).
pub fn h_ff(n: usize, m: usize, lambda: f64) -> Result<f64> {
    check_m(n, m)?;
    let c2 = lambda.cos().powi(2);
    let s2 = lambda.sin().powi(2);
    // direct product below the overflow range, log-space above
    if n <= 50 {
        return Ok(binomial(n - 1, m - 1) * c2.powi((n - m) as i32) * s2.powi((m - 1) as i32));
    }
    // ln(0) guard: a vanishing base with a positive exponent kills the term
    if (c2 <= 0.0 && n > m) || (s2 <= 0.0 && m > 1) {
        return Ok(0.0);
    }
    let lx = if n == m { 0.0 } else { (n - m) as f64 * c2.ln() };
    let ly = if m == 1 { 0.0 } else { (m - 1) as f64 * s2.ln() };
    Ok((ln_binomial(n - 1, m - 1) + lx + ly).exp())
}

/// Homogeneous boundary polarization: cumulative sum of the turn terms.
pub fn g_ff(n: usize, m: usize, lambda: f64) -> Result<f64> {
    check_m(n, m)?;
    let mut acc = 0.0;
    for k in 1..=m {
        acc += h_ff(n, k, lambda)?;
    }
    Ok(acc)
}

/// Finite-N approximant of the thermodynamic step function
/// G(x) = theta(x - sin^2 lambda), evaluated at M = round(x N).
pub fn g_thermo(x: f64, lambda: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) || !x.is_finite() {
        return Err(Error::InvalidInput);
    }
    let m = ((x * n as f64).round() as usize).clamp(1, n);
    g_ff(n, m, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::z_det;
    use crate::enumeration::correlators_by_enumeration;
    use crate::scalar::rel_err;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn z_ff_trivial_cases() {
        let p1 = FreeFermionParams {
            lambdas: vec![0.3],
            nus: vec![0.1],
        };
        assert_eq!(z_ff(&p1), 1.0);
        let hom = FreeFermionParams::homogeneous(5, 0.4);
        assert!((z_ff(&hom) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn z_ff_matches_z_det_through_the_map() {
        for n in 1..=5 {
            let p = FreeFermionParams {
                lambdas: (0..n).map(|i| 0.21 + 0.17 * i as f64).collect(),
                nus: (0..n).map(|k| -0.12 + 0.09 * k as f64).collect(),
            };
            let zg = z_det(&p.to_generic().unwrap()).unwrap();
            let expected = phase(n) * z_ff(&p);
            assert!(rel_err(&zg, &expected) < 1e-10, "N = {n}: {zg} vs {expected}");
        }
    }

    #[test]
    fn h_ff_example() {
        assert!((h_ff(3, 2, FRAC_PI_4).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn h_ff_normalizes() {
        for lambda in [0.3, FRAC_PI_3, 1.2] {
            let total: f64 = (1..=20).map(|m| h_ff(20, m, lambda).unwrap()).sum();
            assert!((total - 1.0).abs() < 1e-12, "lambda = {lambda}");
        }
    }

    #[test]
    fn binomial_mean() {
        // mean of M is (N-1) sin^2 lambda + 1
        let (n, lambda) = (30usize, 0.7f64);
        let mean: f64 = (1..=n)
            .map(|m| m as f64 * h_ff(n, m, lambda).unwrap())
            .sum();
        let expected = (n - 1) as f64 * lambda.sin().powi(2) + 1.0;
        assert!((mean - expected).abs() < 1e-10);
    }

    #[test]
    fn g_ff_monotone_and_terminal() {
        let (n, lambda) = (12usize, 0.9f64);
        let mut prev = 0.0;
        for m in 1..=n {
            let g = g_ff(n, m, lambda).unwrap();
            assert!(g >= prev - 1e-15);
            prev = g;
        }
        assert!((prev - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_enumeration_with_cs_weights() {
        for n in 2..=5 {
            let lambda = 0.55;
            let p = FreeFermionParams::homogeneous(n, lambda).to_generic().unwrap();
            let t = correlators_by_enumeration(&p).unwrap();
            for m in 1..=n {
                let h = h_ff(n, m, lambda).unwrap();
                let g = g_ff(n, m, lambda).unwrap();
                assert!((t.h(m).re - h).abs() < 1e-10 && t.h(m).im.abs() < 1e-10, "H {n} {m}");
                assert!((t.g(m).re - g).abs() < 1e-10 && t.g(m).im.abs() < 1e-10, "G {n} {m}");
            }
        }
    }

    #[test]
    fn log_space_branch_consistent() {
        // same value just below and above the switchover size
        for m in [1usize, 25, 50] {
            let direct = h_ff(50, m, 0.8).unwrap();
            let lb = ln_binomial(49, m - 1)
                + (50 - m) as f64 * 0.8f64.cos().powi(2).ln()
                + (m - 1) as f64 * 0.8f64.sin().powi(2).ln();
            assert!((direct - lb.exp()).abs() < 1e-12 * direct.max(1e-30));
        }
        // degenerate angles do not produce NaN in the large-N branch
        assert_eq!(h_ff(100, 3, 0.0).unwrap(), 0.0);
        assert!((h_ff(100, 1, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((h_ff(100, 100, std::f64::consts::FRAC_PI_2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn step_function_behaviour() {
        // sin^2(pi/3) = 3/4: below the step, above the step, and at the jump
        assert!(g_thermo(0.5, FRAC_PI_3, 200).unwrap() < 0.01);
        assert!(g_thermo(0.9, FRAC_PI_3, 200).unwrap() > 0.99);
        let at_jump = g_thermo(0.5, FRAC_PI_4, 400).unwrap();
        assert!((at_jump - 0.5).abs() < 0.05);
    }

    #[test]
    fn bad_inputs() {
        assert!(h_ff(3, 0, 0.1).is_err());
        assert!(g_ff(3, 4, 0.1).is_err());
        assert!(g_thermo(1.5, 0.1, 10).is_err());
    }
}
