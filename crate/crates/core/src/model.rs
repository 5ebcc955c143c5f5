//! Parametrization of the six-vertex model: spectral parameters, vertex
//! weights, and the scalar functions every evaluator consumes.
//!
//! Index conventions (fixed here, imported everywhere else): row variables
//! `lambda[0]` .. `lambda[N-1]` run top to bottom, column variables
//! `nu[0]` .. `nu[N-1]` run right to left. The "first column" of the
//! boundary correlators is the rightmost one, `nu[0]`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Modulus below which a denominator counts as a pole.
pub const POLE_THRESHOLD: f64 = 1e-12;

/// Spectral parameters of the inhomogeneous model.
#[derive(Clone, Debug)]
pub struct SpectralParams<S: Scalar> {
    pub lambdas: Vec<S>,
    pub nus: Vec<S>,
    pub eta: S,
}

pub type SpectralParams64 = SpectralParams<crate::scalar::C64>;

impl<S: Scalar> SpectralParams<S> {
    pub fn new(lambdas: Vec<S>, nus: Vec<S>, eta: S) -> Result<Self> {
        if lambdas.is_empty() || lambdas.len() != nus.len() {
            return Err(Error::Dimension {
                expected: lambdas.len().max(1),
                got: nus.len(),
            });
        }
        Ok(SpectralParams { lambdas, nus, eta })
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    fn ctx(&self) -> S::Ctx {
        self.eta.ctx()
    }

    /// Checks that the Vandermonde-type denominators of the determinant
    /// representations stay away from zero.
    pub fn check_distinct(&self) -> Result<()> {
        for (name, set) in [("lambda", &self.lambdas), ("nu", &self.nus)] {
            for i in 0..set.len() {
                for j in i + 1..set.len() {
                    let d = (set[j].clone() - set[i].clone()).sinh();
                    if d.modulus() < POLE_THRESHOLD {
                        return Err(Error::SingularParameter(format!(
                            "{name}[{i}] and {name}[{j}] coincide"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parameters with row `beta` and column `j` removed (0-based).
    pub fn reduced(&self, beta: usize, j: usize) -> SpectralParams<S> {
        let lambdas = self
            .lambdas
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != beta)
            .map(|(_, v)| v.clone())
            .collect();
        let nus = self
            .nus
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, v)| v.clone())
            .collect();
        SpectralParams {
            lambdas,
            nus,
            eta: self.eta.clone(),
        }
    }
}

/// The three vertex weights at one site.
#[derive(Clone, Debug)]
pub struct VertexWeights<S: Scalar> {
    pub a: S,
    pub b: S,
    pub c: S,
}

/// a = sinh(lambda - nu + eta), b = sinh(lambda - nu - eta), c = sinh(2 eta).
pub fn vertex_weights<S: Scalar>(lambda: &S, nu: &S, eta: &S) -> VertexWeights<S> {
    let d = lambda.clone() - nu.clone();
    VertexWeights {
        a: (d.clone() + eta.clone()).sinh(),
        b: (d - eta.clone()).sinh(),
        c: eta.scale(2.0).sinh(),
    }
}

/// phi(lambda, nu) = sinh(2 eta) / (sinh(lambda-nu+eta) sinh(lambda-nu-eta)) = c/(a b).
pub fn phi<S: Scalar>(lambda: &S, nu: &S, eta: &S) -> Result<S> {
    let w = vertex_weights(lambda, nu, eta);
    if w.a.modulus() < POLE_THRESHOLD || w.b.modulus() < POLE_THRESHOLD {
        return Err(Error::SingularParameter(
            "phi evaluated at a pole (lambda - nu = -/+ eta)".into(),
        ));
    }
    Ok(w.c / (w.a * w.b))
}

/// f(lambda', lambda) = sinh(lambda - lambda' + 2 eta) / sinh(lambda - lambda').
pub fn f_fun<S: Scalar>(lambda_p: &S, lambda: &S, eta: &S) -> Result<S> {
    let d = lambda.clone() - lambda_p.clone();
    let den = d.clone().sinh();
    if den.modulus() < POLE_THRESHOLD {
        return Err(Error::SingularParameter("f at coincident arguments".into()));
    }
    Ok((d + eta.scale(2.0)).sinh() / den)
}

/// g(lambda', lambda) = sinh(2 eta) / sinh(lambda - lambda').
pub fn g_fun<S: Scalar>(lambda_p: &S, lambda: &S, eta: &S) -> Result<S> {
    let den = (lambda.clone() - lambda_p.clone()).sinh();
    if den.modulus() < POLE_THRESHOLD {
        return Err(Error::SingularParameter("g at coincident arguments".into()));
    }
    Ok(eta.scale(2.0).sinh() / den)
}

/// g/f = sinh(2 eta) / sinh(lambda - lambda' + 2 eta); regular at
/// lambda' = lambda, where it equals 1.
pub fn ratio_gf<S: Scalar>(lambda_p: &S, lambda: &S, eta: &S) -> Result<S> {
    let den = (lambda.clone() - lambda_p.clone() + eta.scale(2.0)).sinh();
    if den.modulus() < POLE_THRESHOLD {
        return Err(Error::SingularParameter("g/f at a pole".into()));
    }
    Ok(eta.scale(2.0).sinh() / den)
}

/// Vacuum eigenvalue a(lambda) = prod_k sinh(lambda - nu_k + eta).
pub fn a_eig<S: Scalar>(lambda: &S, params: &SpectralParams<S>) -> S {
    a_eig_over(lambda, &params.nus, &params.eta)
}

/// Vacuum eigenvalue d(lambda) = prod_k sinh(lambda - nu_k - eta).
pub fn d_eig<S: Scalar>(lambda: &S, params: &SpectralParams<S>) -> S {
    let mut acc = S::one(params.ctx());
    for nu in &params.nus {
        acc = acc * (lambda.clone() - nu.clone() - params.eta.clone()).sinh();
    }
    acc
}

/// a-eigenvalue over an explicit column subset; the empty product is 1.
pub fn a_eig_over<S: Scalar>(lambda: &S, nus: &[S], eta: &S) -> S {
    let mut acc = S::one(eta.ctx());
    for nu in nus {
        acc = acc * (lambda.clone() - nu.clone() + eta.clone()).sinh();
    }
    acc
}

/// a_2(lambda): the a-eigenvalue with the first column removed.
pub fn a2_eig<S: Scalar>(lambda: &S, params: &SpectralParams<S>) -> S {
    a_eig_over(lambda, &params.nus[1..], &params.eta)
}
