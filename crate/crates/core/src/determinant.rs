//! Determinant representations for the partition function and the boundary
//! correlators, the reduction formulas, the recursion relation, and the
//! permutation-sum form.
//!
//! Everything here is generic over the scalar backend; the f64 instantiation
//! is the workhorse, the extended-precision one serves ill-conditioned
//! parameter sets (near-homogeneous collapses).

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::{
    a2_eig, f_fun, phi, ratio_gf, SpectralParams, POLE_THRESHOLD,
};
use crate::scalar::Scalar;

/// Largest N for the permutation sum (N! terms).
pub const PERM_CAP: usize = 8;

fn sh<S: Scalar>(x: S) -> S {
    x.sinh()
}

fn nonzero<S: Scalar>(v: &S, what: &str) -> Result<()> {
    if v.modulus() < POLE_THRESHOLD {
        return Err(Error::SingularParameter(format!(
            "vanishing factor in {what}"
        )));
    }
    Ok(())
}

/// The phi-matrix whose determinant enters every representation.
pub fn phi_matrix<S: Scalar>(p: &SpectralParams<S>) -> Result<Matrix<S>> {
    let n = p.n();
    let mut m = Matrix::zeros(p.eta.ctx(), n, n);
    for a in 0..n {
        for k in 0..n {
            m.set(a, k, phi(&p.lambdas[a], &p.nus[k], &p.eta)?);
        }
    }
    Ok(m)
}

/// Partition function by the determinant representation.
pub fn z_det<S: Scalar>(p: &SpectralParams<S>) -> Result<S> {
    p.check_distinct()?;
    let ctx = p.eta.ctx();
    let n = p.n();
    let mut pref = S::one(ctx);
    for la in &p.lambdas {
        for nu in &p.nus {
            let d = la.clone() - nu.clone();
            pref = pref * sh(d.clone() + p.eta.clone()) * sh(d - p.eta.clone());
        }
    }
    for b in 0..n {
        for a in 0..b {
            pref = pref / sh(p.lambdas[b].clone() - p.lambdas[a].clone());
        }
    }
    for k in 0..n {
        for j in k + 1..n {
            pref = pref / sh(p.nus[k].clone() - p.nus[j].clone());
        }
    }
    Ok(pref * phi_matrix(p)?.det()?)
}

fn permutations(n: usize, visit: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..n).collect();
    fn rec(idx: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == idx.len() {
            visit(idx);
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            rec(idx, k + 1, visit);
            idx.swap(k, i);
        }
    }
    rec(&mut idx, 0, visit);
}

/// Partition function as the sum over permutations of the row parameters.
pub fn z_perm<S: Scalar>(p: &SpectralParams<S>) -> Result<S> {
    let n = p.n();
    if n > PERM_CAP {
        return Err(Error::Resource {
            what: "permutation sum",
            cap: PERM_CAP,
            requested: n,
        });
    }
    p.check_distinct()?;
    let ctx = p.eta.ctx();
    // precompute the pair factors so each permutation is a table walk
    let mut fm = vec![S::zero(ctx); n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                fm[i * n + j] = f_fun(&p.lambdas[i], &p.lambdas[j], &p.eta)?;
            }
        }
    }
    let mut total = S::zero(ctx);
    permutations(n, &mut |perm| {
        let mut term = S::one(ctx);
        for a in 0..n {
            for b in a + 1..n {
                let (pa, pb) = (perm[a], perm[b]);
                term = term
                    * fm[pa * n + pb].clone()
                    * sh(p.lambdas[pb].clone() - p.nus[a].clone() - p.eta.clone())
                    * sh(p.lambdas[pa].clone() - p.nus[b].clone() + p.eta.clone());
            }
        }
        total = total.clone() + term;
    });
    let c = p.eta.scale(2.0).sinh();
    let mut cn = S::one(ctx);
    for _ in 0..n {
        cn = cn * c.clone();
    }
    Ok(cn * total)
}

/// Relative residual of the recursion expressing Z_N through the Z_{N-1}
/// obtained by striking one row parameter and column `j` (1-based).
pub fn recursion_residual<S: Scalar>(p: &SpectralParams<S>, j: usize) -> Result<f64> {
    let n = p.n();
    if n < 2 {
        return Err(Error::IndexRange(
            "recursion needs N >= 2".into(),
        ));
    }
    if j == 0 || j > n {
        return Err(Error::IndexRange(format!("column j = {j} outside 1..={n}")));
    }
    let ctx = p.eta.ctx();
    let nu_j = p.nus[j - 1].clone();
    let lhs = z_det(p)?;
    let mut rhs = S::zero(ctx);
    for b in 0..n {
        let lam_b = p.lambdas[b].clone();
        let mut term = p.eta.scale(2.0).sinh();
        for (a, la) in p.lambdas.iter().enumerate() {
            if a != b {
                term = term * sh(la.clone() - nu_j.clone() - p.eta.clone());
                term = term * f_fun(&lam_b, la, &p.eta)?;
            }
        }
        for (k, nu) in p.nus.iter().enumerate() {
            if k != j - 1 {
                term = term * sh(lam_b.clone() - nu.clone() + p.eta.clone());
            }
        }
        rhs = rhs + term * z_det(&p.reduced(b, j - 1))?;
    }
    let diff = (lhs.clone() - rhs).modulus();
    let scale = lhs.modulus();
    if scale == 0.0 {
        return Err(Error::DegenerateNormalization);
    }
    Ok(diff / scale)
}

/// Which replacement column a [`KernelColumn`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    HM,
    GM,
}

/// First column of the correlator determinants; the last N-M values vanish
/// when evaluated at the build parameters.
#[derive(Clone, Debug)]
pub struct KernelColumn<S: Scalar> {
    pub kind: KernelKind,
    pub m: usize,
    pub values: Vec<S>,
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::IndexRange(format!(
            "row index M = {m} outside 1..={n}"
        )));
    }
    Ok(())
}

/// Evaluates the h_M or g_M kernel at an arbitrary argument.
pub fn kernel_value<S: Scalar>(
    p: &SpectralParams<S>,
    m: usize,
    kind: KernelKind,
    lambda: &S,
) -> Result<S> {
    let n = p.n();
    check_m(n, m)?;
    let ctx = p.eta.ctx();
    // h_M: numerator gamma < M, denominator k >= 2
    // g_M: numerator gamma <= M, denominator k >= 1
    let (num_hi, den_lo) = match kind {
        KernelKind::HM => (m - 1, 1),
        KernelKind::GM => (m, 0),
    };
    let mut num = S::one(ctx);
    for g in 0..num_hi {
        num = num * sh(p.lambdas[g].clone() - lambda.clone() + p.eta.scale(2.0));
    }
    for g in m..n {
        num = num * sh(p.lambdas[g].clone() - lambda.clone());
    }
    let mut den = S::one(ctx);
    for k in den_lo..n {
        den = den * sh(lambda.clone() - p.nus[k].clone() - p.eta.clone());
    }
    nonzero(&den, "kernel denominator")?;
    Ok(num / den)
}

/// Kernel values at the row parameters, forming the replacement column.
pub fn kernel_column<S: Scalar>(
    p: &SpectralParams<S>,
    m: usize,
    kind: KernelKind,
) -> Result<KernelColumn<S>> {
    let values = p
        .lambdas
        .iter()
        .map(|la| kernel_value(p, m, kind, la))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelColumn { kind, m, values })
}

fn correlator_det<S: Scalar>(p: &SpectralParams<S>, m: usize, kind: KernelKind) -> Result<S> {
    let n = p.n();
    check_m(n, m)?;
    p.check_distinct()?;
    let ctx = p.eta.ctx();
    let col = kernel_column(p, m, kind)?;
    let zm = phi_matrix(p)?;
    let mut km = zm.clone();
    for a in 0..n {
        km.set(a, 0, col.values[a].clone());
    }
    // prefactor; the second product starts at alpha = M for h, M+1 for g
    let mut pref = match kind {
        KernelKind::HM => p.eta.scale(2.0).sinh(),
        KernelKind::GM => S::one(ctx),
    };
    for k in 1..n {
        pref = pref * sh(p.nus[0].clone() - p.nus[k].clone());
    }
    let mut den = S::one(ctx);
    for a in 0..m {
        den = den * sh(p.lambdas[a].clone() - p.nus[0].clone() + p.eta.clone());
    }
    let lo = match kind {
        KernelKind::HM => m - 1,
        KernelKind::GM => m,
    };
    for a in lo..n {
        den = den * sh(p.lambdas[a].clone() - p.nus[0].clone() - p.eta.clone());
    }
    nonzero(&den, "correlator prefactor")?;
    let dz = zm.det()?;
    if dz.modulus() < 1e-280 {
        return Err(Error::DegenerateNormalization);
    }
    Ok(pref / den * km.det()? / dz)
}

/// Turn probability H_N^(M) by the determinant representation.
pub fn h_det<S: Scalar>(p: &SpectralParams<S>, m: usize) -> Result<S> {
    correlator_det(p, m, KernelKind::HM)
}

/// Boundary polarization G_N^(M) by the determinant representation.
pub fn g_det<S: Scalar>(p: &SpectralParams<S>, m: usize) -> Result<S> {
    correlator_det(p, m, KernelKind::GM)
}

fn reduction<S: Scalar>(p: &SpectralParams<S>, m: usize, kind: KernelKind) -> Result<S> {
    let n = p.n();
    check_m(n, m)?;
    if n < 2 {
        return Err(Error::IndexRange("reduction needs N >= 2".into()));
    }
    p.check_distinct()?;
    let ctx = p.eta.ctx();
    let zn = z_det(p)?;
    if zn.modulus() < 1e-280 {
        return Err(Error::DegenerateNormalization);
    }
    let nu1 = p.nus[0].clone();
    let mut pref = S::one(ctx);
    match kind {
        KernelKind::HM => {
            pref = pref * p.eta.scale(2.0).sinh();
            for a in 0..m - 1 {
                pref = pref * sh(p.lambdas[a].clone() - nu1.clone() - p.eta.clone());
            }
        }
        KernelKind::GM => {
            for a in 0..m {
                pref = pref * sh(p.lambdas[a].clone() - nu1.clone() - p.eta.clone());
            }
        }
    }
    for a in m..n {
        pref = pref * sh(p.lambdas[a].clone() - nu1.clone() + p.eta.clone());
    }
    let mut sum = S::zero(ctx);
    for b in 0..m {
        let lam_b = p.lambdas[b].clone();
        let mut term = a2_eig(&lam_b, p);
        match kind {
            KernelKind::HM => {
                term = term * ratio_gf(&lam_b, &p.lambdas[m - 1], &p.eta)?;
            }
            KernelKind::GM => {
                let den = sh(lam_b.clone() - nu1.clone() - p.eta.clone());
                nonzero(&den, "reduction denominator")?;
                term = term * p.eta.scale(2.0).sinh() / den;
            }
        }
        for g in 0..m {
            if g != b {
                term = term * f_fun(&lam_b, &p.lambdas[g], &p.eta)?;
            }
        }
        sum = sum + term * z_det(&p.reduced(b, 0))?;
    }
    Ok(pref * sum / zn)
}

/// H_N^(M) by the reduction to partition functions of size N-1.
pub fn h_reduction<S: Scalar>(p: &SpectralParams<S>, m: usize) -> Result<S> {
    reduction(p, m, KernelKind::HM)
}

/// G_N^(M) by the reduction to partition functions of size N-1.
pub fn g_reduction<S: Scalar>(p: &SpectralParams<S>, m: usize) -> Result<S> {
    reduction(p, m, KernelKind::GM)
}

/// Residual of the partial-fraction identity at row `alpha` (1-based):
/// prod_{g != a} sinh(l_g - l_a + 2 eta) / prod_j sinh(l_a - nu_j - eta)
///   = sum_k [prod_{g != a} sinh(l_g - nu_k + eta)
///            / prod_{j != k} sinh(nu_k - nu_j)] / sinh(l_a - nu_k - eta).
pub fn partial_fraction_residual<S: Scalar>(p: &SpectralParams<S>, alpha: usize) -> Result<f64> {
    let n = p.n();
    if alpha == 0 || alpha > n {
        return Err(Error::IndexRange(format!(
            "row alpha = {alpha} outside 1..={n}"
        )));
    }
    p.check_distinct()?;
    let ctx = p.eta.ctx();
    let la = p.lambdas[alpha - 1].clone();
    let mut lhs = S::one(ctx);
    for (g, lg) in p.lambdas.iter().enumerate() {
        if g != alpha - 1 {
            lhs = lhs * sh(lg.clone() - la.clone() + p.eta.scale(2.0));
        }
    }
    for nu in &p.nus {
        let d = sh(la.clone() - nu.clone() - p.eta.clone());
        nonzero(&d, "partial fraction")?;
        lhs = lhs / d;
    }
    let mut rhs = S::zero(ctx);
    for (k, nu_k) in p.nus.iter().enumerate() {
        let mut term = S::one(ctx);
        for (g, lg) in p.lambdas.iter().enumerate() {
            if g != alpha - 1 {
                term = term * sh(lg.clone() - nu_k.clone() + p.eta.clone());
            }
        }
        for (j, nu_j) in p.nus.iter().enumerate() {
            if j != k {
                term = term / sh(nu_k.clone() - nu_j.clone());
            }
        }
        rhs = rhs + term / sh(la.clone() - nu_k.clone() - p.eta.clone());
    }
    // scaled residual: the raw difference grows with the term magnitudes
    let scale = lhs.modulus().max(rhs.modulus()).max(1.0);
    Ok((lhs - rhs).modulus() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{correlators_by_enumeration, z_by_enumeration};
    use crate::model::SpectralParams64;
    use crate::qism::{g_via_monodromy, h_via_monodromy};
    use crate::scalar::{c64, rel_err, C64};

    fn params(n: usize) -> SpectralParams64 {
        // spacings of order one: closely packed parameters shrink the
        // phi-determinant like a Vandermonde and waste f64 digits
        let lambdas = (0..n)
            .map(|i| c64(0.85 + 0.45 * i as f64, 0.23 - 0.11 * i as f64))
            .collect();
        let nus = (0..n)
            .map(|k| c64(0.36 * k as f64, 0.13 + 0.09 * k as f64))
            .collect();
        SpectralParams::new(lambdas, nus, c64(0.37, 0.21)).unwrap()
    }

    #[test]
    fn z_det_n1() {
        let p = params(1);
        let z = z_det(&p).unwrap();
        assert!(rel_err(&z, &p.eta.scale(2.0).sinh()) < 1e-14);
    }

    #[test]
    fn z_det_matches_enumeration() {
        for n in 1..=4 {
            let p = params(n);
            let zd = z_det(&p).unwrap();
            let ze = z_by_enumeration(&p).unwrap();
            assert!(rel_err(&zd, &ze) < 1e-11, "N = {n}: {zd} vs {ze}");
        }
    }

    #[test]
    fn z_perm_n1_and_matches_det() {
        let p1 = params(1);
        assert!(rel_err(&z_perm(&p1).unwrap(), &p1.eta.scale(2.0).sinh()) < 1e-14);
        for n in 2..=4 {
            let p = params(n);
            assert!(
                rel_err(&z_perm(&p).unwrap(), &z_det(&p).unwrap()) < 1e-10,
                "N = {n}"
            );
        }
    }

    #[test]
    fn z_perm_cap() {
        let p = params(2);
        let mut big = p.clone();
        big.lambdas = (0..9).map(|i| c64(i as f64 * 0.2, 0.0)).collect();
        big.nus = (0..9).map(|i| c64(i as f64 * 0.1, 0.5)).collect();
        assert!(matches!(z_perm(&big), Err(Error::Resource { .. })));
    }

    #[test]
    fn z_det_symmetric_under_parameter_permutations() {
        let p = params(4);
        let base = z_det(&p).unwrap();
        let mut q = p.clone();
        q.lambdas.swap(0, 2);
        q.lambdas.swap(1, 3);
        assert!(rel_err(&z_det(&q).unwrap(), &base) < 1e-10);
        let mut r = p.clone();
        r.nus.swap(0, 3);
        assert!(rel_err(&z_det(&r).unwrap(), &base) < 1e-10);
    }

    #[test]
    fn recursion_identity() {
        for n in 2..=4 {
            let p = params(n);
            for j in 1..=n {
                let res = recursion_residual(&p, j).unwrap();
                assert!(res < 1e-11, "N = {n}, j = {j}: {res}");
            }
        }
    }

    #[test]
    fn recursion_undefined_at_n1() {
        assert!(recursion_residual(&params(1), 1).is_err());
    }

    #[test]
    fn kernel_tail_vanishes() {
        let p = params(5);
        for m in 1..=5 {
            for kind in [KernelKind::HM, KernelKind::GM] {
                let col = kernel_column(&p, m, kind).unwrap();
                let scale = col
                    .values
                    .iter()
                    .map(|v| v.norm())
                    .fold(1.0f64, f64::max);
                for a in m..5 {
                    assert!(
                        col.values[a].norm() < 1e-12 * scale,
                        "{kind:?} M={m} row {a}"
                    );
                }
            }
        }
    }

    #[test]
    fn h_prefactor_identity() {
        // the prefactor equals phi(lambda_M, nu_1) / h_M(nu_1 + eta)
        let p = params(4);
        for m in 1..=4 {
            let mut pref = p.eta.scale(2.0).sinh();
            for k in 1..4 {
                pref *= (p.nus[0] - p.nus[k]).sinh();
            }
            for a in 0..m {
                pref /= (p.lambdas[a] - p.nus[0] + p.eta).sinh();
            }
            for a in m - 1..4 {
                pref /= (p.lambdas[a] - p.nus[0] - p.eta).sinh();
            }
            let alt = phi(&p.lambdas[m - 1], &p.nus[0], &p.eta).unwrap()
                / kernel_value(&p, m, KernelKind::HM, &(p.nus[0] + p.eta)).unwrap();
            assert!(rel_err(&pref, &alt) < 1e-10, "M = {m}");
        }
    }

    #[test]
    fn correlators_trivial_cases() {
        let p1 = params(1);
        assert!(rel_err(&h_det(&p1, 1).unwrap(), &c64(1.0, 0.0)) < 1e-12);
        assert!(rel_err(&g_det(&p1, 1).unwrap(), &c64(1.0, 0.0)) < 1e-12);
        for n in 2..=5 {
            let p = params(n);
            assert!(
                rel_err(&g_det(&p, n).unwrap(), &c64(1.0, 0.0)) < 1e-10,
                "N = {n}"
            );
            assert!(
                rel_err(&g_reduction(&p, n).unwrap(), &c64(1.0, 0.0)) < 1e-10,
                "N = {n}"
            );
        }
    }

    #[test]
    fn correlators_match_enumeration() {
        for n in 2..=4 {
            let p = params(n);
            let t = correlators_by_enumeration(&p).unwrap();
            for m in 1..=n {
                assert!(rel_err(&h_det(&p, m).unwrap(), &t.h(m)) < 1e-10, "H {n} {m}");
                assert!(rel_err(&g_det(&p, m).unwrap(), &t.g(m)) < 1e-10, "G {n} {m}");
                assert!(
                    rel_err(&h_reduction(&p, m).unwrap(), &t.h(m)) < 1e-10,
                    "Hred {n} {m}"
                );
                assert!(
                    rel_err(&g_reduction(&p, m).unwrap(), &t.g(m)) < 1e-10,
                    "Gred {n} {m}"
                );
            }
        }
    }

    #[test]
    fn correlators_match_monodromy_n5() {
        let p = params(5);
        for m in 1..=5 {
            assert!(
                rel_err(&h_det(&p, m).unwrap(), &h_via_monodromy(&p, m).unwrap()) < 1e-9,
                "H M={m}"
            );
            assert!(
                rel_err(&g_det(&p, m).unwrap(), &g_via_monodromy(&p, m).unwrap()) < 1e-9,
                "G M={m}"
            );
        }
    }

    #[test]
    fn connection_formulas() {
        let p = params(5);
        let mut acc = c64(0.0, 0.0);
        for m in 1..=5 {
            let h = h_det(&p, m).unwrap();
            acc += h;
            let g = g_det(&p, m).unwrap();
            assert!(rel_err(&acc, &g) < 1e-9, "M = {m}");
        }
    }

    #[test]
    fn g_det_block_symmetry() {
        // invariant under permutations inside the first M and the last N-M
        let p = params(4);
        let m = 2;
        let base = g_det(&p, m).unwrap();
        let mut q = p.clone();
        q.lambdas.swap(0, 1);
        assert!(rel_err(&g_det(&q, m).unwrap(), &base) < 1e-10);
        let mut r = p.clone();
        r.lambdas.swap(2, 3);
        assert!(rel_err(&g_det(&r, m).unwrap(), &base) < 1e-10);
    }

    #[test]
    fn partial_fraction_identity() {
        for n in [1usize, 2, 5] {
            let p = params(n);
            for alpha in 1..=n {
                let res = partial_fraction_residual(&p, alpha).unwrap();
                assert!(res < 1e-10, "N = {n}, alpha = {alpha}: {res}");
            }
        }
    }

    #[test]
    fn coincident_parameters_rejected() {
        let mut p = params(3);
        p.lambdas[2] = p.lambdas[0];
        assert!(matches!(z_det(&p), Err(Error::SingularParameter(_))));
    }

    #[test]
    fn index_checks() {
        let p = params(3);
        assert!(h_det(&p, 0).is_err());
        assert!(g_det(&p, 4).is_err());
        assert!(recursion_residual(&p, 5).is_err());
    }

    #[test]
    fn extended_precision_backend_agrees() {
        use crate::scalar::CPrec;
        let p = params(3);
        let hp = SpectralParams::new(
            p.lambdas.iter().map(|z| CPrec::new(128, z.re, z.im)).collect(),
            p.nus.iter().map(|z| CPrec::new(128, z.re, z.im)).collect(),
            CPrec::new(128, p.eta.re, p.eta.im),
        )
        .unwrap();
        let z64: C64 = z_det(&p).unwrap();
        let zhp = z_det(&hp).unwrap().to_c64();
        assert!(rel_err(&z64, &zhp) < 1e-12);
    }
}

