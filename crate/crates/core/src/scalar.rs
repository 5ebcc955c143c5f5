//! Complex scalar abstraction over the working precision.
//!
//! Two backends are provided: [`C64`] (hardware `f64` components, the default)
//! and [`CPrec`] (MPFR floats at a configurable number of bits, used by the
//! homogeneous-limit determinants where factorial-scale cancellation eats
//! double precision).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use rug::Float;

/// Hardware-precision complex scalar.
pub type C64 = Complex64;

/// Shorthand constructor for [`C64`].
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A complex number at some working precision.
///
/// All operations are pure; a value constructed from a context carries that
/// context (precision) through arithmetic.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Precision context: `()` for `f64`, bit count for MPFR.
    type Ctx: Copy + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn from_parts(ctx: Self::Ctx, re: f64, im: f64) -> Self;
    fn re_f64(&self) -> f64;
    fn im_f64(&self) -> f64;
    /// Modulus rounded to f64; used for pivoting and pole thresholds.
    fn modulus(&self) -> f64;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn exp(&self) -> Self;
    /// Principal branch complex logarithm.
    fn ln(&self) -> Self;
    /// Multiplication by a real constant.
    fn scale(&self, k: f64) -> Self;
    fn is_finite(&self) -> bool;
    fn precision_bits(&self) -> u32;

    fn zero(ctx: Self::Ctx) -> Self {
        Self::from_parts(ctx, 0.0, 0.0)
    }
    fn one(ctx: Self::Ctx) -> Self {
        Self::from_parts(ctx, 1.0, 0.0)
    }
    fn from_c64(ctx: Self::Ctx, z: C64) -> Self {
        Self::from_parts(ctx, z.re, z.im)
    }
    fn to_c64(&self) -> C64 {
        c64(self.re_f64(), self.im_f64())
    }
}

impl Scalar for C64 {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn from_parts(_ctx: (), re: f64, im: f64) -> Self {
        C64::new(re, im)
    }

    fn re_f64(&self) -> f64 {
        self.re
    }

    fn im_f64(&self) -> f64 {
        self.im
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn sinh(&self) -> Self {
        Complex64::sinh(*self)
    }

    fn cosh(&self) -> Self {
        Complex64::cosh(*self)
    }

    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }

    fn ln(&self) -> Self {
        Complex64::ln(*self)
    }

    fn scale(&self, k: f64) -> Self {
        self * k
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn precision_bits(&self) -> u32 {
        53
    }
}

/// Complex scalar with MPFR real and imaginary parts.
#[derive(Clone, PartialEq)]
pub struct CPrec {
    pub re: Float,
    pub im: Float,
}

impl CPrec {
    pub fn new(prec: u32, re: f64, im: f64) -> Self {
        CPrec {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Squared modulus at full precision.
    fn norm_sqr(&self) -> Float {
        let rr = self.re.clone().square();
        let ii = self.im.clone().square();
        rr + &ii
    }
}

impl fmt::Debug for CPrec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CPrec({:e} + {:e}i, {} bits)",
            self.re.to_f64(),
            self.im.to_f64(),
            self.prec()
        )
    }
}

impl Add for CPrec {
    type Output = CPrec;
    fn add(self, rhs: CPrec) -> CPrec {
        CPrec {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl Sub for CPrec {
    type Output = CPrec;
    fn sub(self, rhs: CPrec) -> CPrec {
        CPrec {
            re: self.re - &rhs.re,
            im: self.im - &rhs.im,
        }
    }
}

impl Mul for CPrec {
    type Output = CPrec;
    fn mul(self, rhs: CPrec) -> CPrec {
        let ac = self.re.clone() * &rhs.re;
        let bd = self.im.clone() * &rhs.im;
        let ad = self.re * &rhs.im;
        let bc = self.im * &rhs.re;
        CPrec {
            re: ac - &bd,
            im: ad + &bc,
        }
    }
}

impl Div for CPrec {
    type Output = CPrec;
    fn div(self, rhs: CPrec) -> CPrec {
        let den = rhs.norm_sqr();
        let ac = self.re.clone() * &rhs.re;
        let bd = self.im.clone() * &rhs.im;
        let bc = self.im * &rhs.re;
        let ad = self.re * &rhs.im;
        CPrec {
            re: (ac + &bd) / &den,
            im: (bc - &ad) / &den,
        }
    }
}

impl Neg for CPrec {
    type Output = CPrec;
    fn neg(self) -> CPrec {
        CPrec {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Scalar for CPrec {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.prec()
    }

    fn from_parts(ctx: u32, re: f64, im: f64) -> Self {
        CPrec::new(ctx, re, im)
    }

    fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }

    fn modulus(&self) -> f64 {
        self.re.clone().hypot(&self.im).to_f64()
    }

    // sinh(x+iy) = sinh x cos y + i cosh x sin y
    fn sinh(&self) -> Self {
        let sh = self.re.clone().sinh();
        let ch = self.re.clone().cosh();
        let s = self.im.clone().sin();
        let c = self.im.clone().cos();
        CPrec {
            re: sh * &c,
            im: ch * &s,
        }
    }

    fn cosh(&self) -> Self {
        let sh = self.re.clone().sinh();
        let ch = self.re.clone().cosh();
        let s = self.im.clone().sin();
        let c = self.im.clone().cos();
        CPrec {
            re: ch * &c,
            im: sh * &s,
        }
    }

    fn exp(&self) -> Self {
        let m = self.re.clone().exp();
        let s = self.im.clone().sin();
        let c = self.im.clone().cos();
        CPrec {
            re: m.clone() * &c,
            im: m * &s,
        }
    }

    fn ln(&self) -> Self {
        let p = self.prec();
        let half: Float = self.norm_sqr().ln() / 2u32;
        let arg = self.im.clone().atan2(&self.re);
        let _ = p;
        CPrec { re: half, im: arg }
    }

    fn scale(&self, k: f64) -> Self {
        CPrec {
            re: self.re.clone() * k,
            im: self.im.clone() * k,
        }
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn precision_bits(&self) -> u32 {
        self.prec()
    }
}

/// Relative difference |a-b| / max(|a|, |b|, floor), as f64.
pub fn rel_err<S: Scalar>(a: &S, b: &S) -> f64 {
    let diff = (a.clone() - b.clone()).modulus();
    let scale = a.modulus().max(b.modulus()).max(1e-300);
    diff / scale
}
