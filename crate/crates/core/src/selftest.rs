//! Deterministic oracle-equivalence suite behind `sixv selftest`.

use crate::determinant::{
    g_det, g_reduction, h_det, h_reduction, recursion_residual, z_det, z_perm,
};
use crate::enumeration::{correlators_by_enumeration, z_by_enumeration, ASM_COUNTS};
use crate::error::Result;
use crate::free_fermion::{phase, FreeFermionParams, z_ff};
use crate::homogeneous::{ice_point_asm, z_hom, HomogeneousParams};
use crate::model::SpectralParams;
use crate::qism::{algebra_residuals, g_via_monodromy, h_via_monodromy, z_via_monodromy};
use crate::sample::sample_params;
use crate::scalar::{c64, rel_err};

/// One named residual with its pass threshold.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual < self.tol
    }
}

const SEEDS: [u64; 2] = [11, 17];

/// Runs the fixed cross-method suite at N <= 4. Deterministic: same seeds,
/// same order, same values on every run.
pub fn run_selftest() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let push = |name: String, residual: f64, tol: f64, checks: &mut Vec<Check>| {
        checks.push(Check {
            name,
            residual,
            tol,
        });
    };

    for &seed in &SEEDS {
        for n in 1..=4usize {
            let p = sample_params(n, seed)?;
            let zd = z_det(&p)?;
            let mut worst = rel_err(&zd, &z_perm(&p)?);
            worst = worst.max(rel_err(&zd, &z_via_monodromy(&p)?));
            worst = worst.max(rel_err(&zd, &z_by_enumeration(&p)?));
            push(
                format!("z-methods-agree seed={seed} n={n}"),
                worst,
                1e-9,
                &mut checks,
            );

            if n >= 2 {
                let t = correlators_by_enumeration(&p)?;
                let mut worst = 0.0f64;
                for m in 1..=n {
                    let h = t.h(m);
                    worst = worst.max(rel_err(&h_det(&p, m)?, &h));
                    worst = worst.max(rel_err(&h_reduction(&p, m)?, &h));
                    worst = worst.max(rel_err(&h_via_monodromy(&p, m)?, &h));
                    let g = t.g(m);
                    worst = worst.max(rel_err(&g_det(&p, m)?, &g));
                    worst = worst.max(rel_err(&g_reduction(&p, m)?, &g));
                    worst = worst.max(rel_err(&g_via_monodromy(&p, m)?, &g));
                }
                push(
                    format!("correlator-methods-agree seed={seed} n={n}"),
                    worst,
                    1e-9,
                    &mut checks,
                );

                let mut worst = 0.0f64;
                for j in 1..=n {
                    worst = worst.max(recursion_residual(&p, j)?);
                }
                push(
                    format!("recursion seed={seed} n={n}"),
                    worst,
                    1e-9,
                    &mut checks,
                );

                // telescoping of the turn masses into the polarization
                let mut acc = c64(0.0, 0.0);
                let mut worst = 0.0f64;
                for m in 1..=n {
                    acc += h_det(&p, m)?;
                    worst = worst.max(rel_err(&acc, &g_det(&p, m)?));
                }
                worst = worst.max(rel_err(&acc, &c64(1.0, 0.0)));
                push(
                    format!("connection seed={seed} n={n}"),
                    worst,
                    1e-9,
                    &mut checks,
                );
            }
        }
    }

    let p3 = sample_params(3, SEEDS[0])?;
    push(
        "algebra-residuals n=3".into(),
        algebra_residuals(&p3, 4, SEEDS[0])?.max(),
        1e-10,
        &mut checks,
    );

    let ff = FreeFermionParams {
        lambdas: vec![0.15, 0.42, 0.71, 1.02],
        nus: vec![-0.2, 0.05, 0.33, 0.6],
    };
    let zg = z_det(&ff.to_generic()?)?;
    push(
        "free-fermion-map n=4".into(),
        rel_err(&zg, &(phase(4) * z_ff(&ff))),
        1e-10,
        &mut checks,
    );

    let hp = HomogeneousParams::new(c64(0.9, 0.27), c64(0.33, 0.15), 4);
    let sp = SpectralParams::new(vec![hp.lambda; 4], vec![c64(0.0, 0.0); 4], hp.eta)?;
    push(
        "homogeneous-z n=4".into(),
        rel_err(&z_hom(&hp)?.value, &z_by_enumeration(&sp)?),
        1e-8,
        &mut checks,
    );

    push(
        "ice-point-count n=4".into(),
        (ice_point_asm(4)? - ASM_COUNTS[3] as f64).abs(),
        1e-6,
        &mut checks,
    );

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_is_deterministic() {
        let a = run_selftest().unwrap();
        assert!(!a.is_empty());
        for c in &a {
            assert!(c.passed(), "{}: residual {}", c.name, c.residual);
        }
        let b = run_selftest().unwrap();
        let key = |v: &[Check]| -> Vec<(String, u64)> {
            v.iter()
                .map(|c| (c.name.clone(), c.residual.to_bits()))
                .collect()
        };
        assert_eq!(key(&a), key(&b));
    }
}
