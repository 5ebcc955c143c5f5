//! Reproducible random spectral parameters for cross-method checks.
//!
//! Parameters are drawn uniformly from fixed rectangles and rejected until
//! they keep a safety margin from the singular set (coincident parameters,
//! phi poles, vanishing reduction denominators), so every evaluator accepts
//! the same sample.

use crate::error::{Error, Result};
use crate::model::{SpectralParams, SpectralParams64};
use crate::scalar::{c64, C64};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Minimum modulus of any guarded sinh factor.
pub const SINGULAR_MARGIN: f64 = 0.05;

/// Minimum separation inside the lambda and nu families. Clustered
/// parameters shrink the phi-determinant like a Vandermonde in the
/// spacings, and at N = 5 a spacing near [`SINGULAR_MARGIN`] burns more
/// f64 digits than the cross-method tolerances leave to spare.
pub const PAIR_MARGIN: f64 = 0.3;

const MAX_ATTEMPTS: usize = 10_000;

fn draw(rng: &mut ChaCha12Rng, re: f64, im: f64) -> C64 {
    c64(rng.gen_range(-re..re), rng.gen_range(-im..im))
}

fn margins_ok(p: &SpectralParams64) -> bool {
    let n = p.n();
    let ok = |z: C64| z.sinh().norm() > SINGULAR_MARGIN;
    let separated = |z: C64| z.sinh().norm() > PAIR_MARGIN;
    for i in 0..n {
        for j in i + 1..n {
            if !separated(p.lambdas[i] - p.lambdas[j]) || !separated(p.nus[i] - p.nus[j]) {
                return false;
            }
        }
        for j in 0..n {
            if i != j {
                // f-function poles and the shifted ratio denominators
                if !ok(p.lambdas[i] - p.lambdas[j] + p.eta * 2.0) {
                    return false;
                }
            }
        }
    }
    for la in &p.lambdas {
        for nu in &p.nus {
            let d = la - nu;
            if !ok(d + p.eta) || !ok(d - p.eta) {
                return false;
            }
        }
    }
    p.eta.scale(2.0).sinh().norm() > SINGULAR_MARGIN
}

/// Seeded parameter set of size `n`, away from every singular denominator.
pub fn sample_params(n: usize, seed: u64) -> Result<SpectralParams64> {
    if n == 0 {
        return Err(Error::Dimension { expected: 1, got: 0 });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let lambdas = (0..n).map(|_| draw(&mut rng, 1.2, 0.7) + c64(0.8, 0.0)).collect();
        let nus = (0..n).map(|_| draw(&mut rng, 0.9, 0.6)).collect();
        let eta = draw(&mut rng, 0.45, 0.35) + c64(0.35, 0.0);
        let p = SpectralParams::new(lambdas, nus, eta)?;
        if margins_ok(&p) {
            return Ok(p);
        }
    }
    Err(Error::SingularParameter(
        "could not sample parameters away from the singular set".into(),
    ))
}
