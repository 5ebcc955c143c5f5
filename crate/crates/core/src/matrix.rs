//! Dense complex matrices and LU determinants.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix over a complex scalar type.
#[derive(Clone, Debug)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    ctx: S::Ctx,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(ctx: S::Ctx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(ctx); rows * cols],
            ctx,
        }
    }

    pub fn from_fn(ctx: S::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data, ctx }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    fn check_square_finite(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.data.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput);
        }
        Ok(())
    }

    /// Determinant via LU with partial pivoting by largest modulus
    /// (ties broken by lowest row index). The 0x0 determinant is 1.
    pub fn det(&self) -> Result<S> {
        self.check_square_finite()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = S::one(self.ctx);
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = a[col * n + col].modulus();
            for r in col + 1..n {
                let m = a[r * n + col].modulus();
                if m > pivot_mag {
                    pivot_mag = m;
                    pivot_row = r;
                }
            }
            if pivot_mag == 0.0 {
                return Ok(S::zero(self.ctx));
            }
            if pivot_row != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot_row * n + c);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                let factor = a[r * n + col].clone() / pivot.clone();
                for c in col + 1..n {
                    let delta = factor.clone() * a[col * n + c].clone();
                    a[r * n + c] = a[r * n + c].clone() - delta;
                }
            }
        }
        if !det.is_finite() {
            return Err(Error::InvalidInput);
        }
        Ok(det)
    }

    /// Complex logarithm of the determinant (sum of pivot logarithms).
    ///
    /// Avoids overflow when the determinant itself exceeds the exponent
    /// range; `exp` of the result recovers the determinant up to the
    /// inherent 2*pi*i ambiguity, which cancels on exponentiation.
    pub fn det_ln(&self) -> Result<S> {
        self.check_square_finite()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut acc = S::zero(self.ctx);
        let mut swaps = 0usize;
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = a[col * n + col].modulus();
            for r in col + 1..n {
                let m = a[r * n + col].modulus();
                if m > pivot_mag {
                    pivot_mag = m;
                    pivot_row = r;
                }
            }
            if pivot_mag == 0.0 {
                return Err(Error::SingularParameter(
                    "determinant vanishes; logarithm undefined".into(),
                ));
            }
            if pivot_row != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot_row * n + c);
                }
                swaps += 1;
            }
            let pivot = a[col * n + col].clone();
            acc = acc + pivot.ln();
            for r in col + 1..n {
                let factor = a[r * n + col].clone() / pivot.clone();
                for c in col + 1..n {
                    let delta = factor.clone() * a[col * n + c].clone();
                    a[r * n + c] = a[r * n + c].clone() - delta;
                }
            }
        }
        if swaps % 2 == 1 {
            acc = acc + S::from_parts(self.ctx, 0.0, std::f64::consts::PI);
        }
        Ok(acc)
    }
}

/// Brute-force Leibniz determinant; independent oracle for small matrices.
pub fn det_leibniz<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let ctx = if n > 0 { m.get(0, 0).ctx() } else { m.ctx };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = S::zero(ctx);
    permute(&mut perm, 0, &mut |p, sign| {
        let mut term = S::one(ctx);
        for (r, &c) in p.iter().enumerate() {
            term = term * m.get(r, c).clone();
        }
        if sign < 0 {
            term = -term;
        }
        total = total.clone() + term;
    });
    Ok(total)
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize], i32)) {
    let n = p.len();
    if k == n {
        let mut sign = 1;
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        visit(p, sign);
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}
