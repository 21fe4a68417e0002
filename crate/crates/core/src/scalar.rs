//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All state vectors, operators and closed-form analytics are generic over a
//! real field `T: Real`; amplitudes are `Complex<T>`. `f64` is the reference
//! precision and the one the tolerances below are tuned for.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point field usable as the real part of an amplitude.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance used by checked constructors (unitarity, unit norm).
    fn check_tol() -> Self;

    /// Converts an `f64` literal. Exact for f64, rounded for f32.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("representable count")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite value")
    }
}

impl Real for f64 {
    fn check_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn check_tol() -> Self {
        1e-4
    }
}

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

/// `e^{i phase}`
#[inline]
pub(crate) fn cis<T: Real>(phase: T) -> C<T> {
    Complex::new(phase.cos(), phase.sin())
}

/// Numerical tolerances used across the crate, in one place.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// ‖U†U − I‖_max accepted by checked operator constructors.
    pub unitarity: f64,
    /// |‖ψ‖ − 1| accepted by checked state constructors.
    pub norm: f64,
    /// Sum of an outcome distribution must be 1 within this.
    pub completeness: f64,
    /// Below this, |sin(x)| is treated as zero in Fourier overlaps.
    pub singular_sine: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        unitarity: 1e-10,
        norm: 1e-10,
        completeness: 1e-12,
        singular_sine: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
