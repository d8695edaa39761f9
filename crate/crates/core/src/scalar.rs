//! Scalar abstraction shared by every numeric module.
//!
//! All algebra in this crate is carried out over `Complex<T>` where `T` is a
//! real field type. `f64` is the working precision; `f32` is supported for
//! the pure formula evaluators but cannot meet the default tolerances of the
//! tube-algebra pipeline.

use nalgebra::{Complex, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Complex scalar over a real field `T`.
pub type C<T> = Complex<T>;

/// Real scalar: `f32` or `f64`.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + std::fmt::Debug + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_int(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("integer literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).expect("finite value")
    }

    #[inline]
    fn magnitude(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[inline]
pub fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub fn re<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn c_lit<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub fn zero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn one<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

/// Modulus of a complex number.
#[inline]
pub fn abs<T: Real>(z: C<T>) -> T {
    z.norm_sqr().sqrt()
}

/// `exp(i·angle)`.
#[inline]
pub fn cis<T: Real>(angle: T) -> C<T> {
    Complex::new(angle.cos(), angle.sin())
}

/// `exp(2πi·num/den)`, exact when the angle is a multiple of a quarter turn.
pub fn root_of_unity<T: Real>(num: i64, den: i64) -> C<T> {
    assert!(den != 0, "zero denominator");
    let den_abs = den.abs();
    let num = if den < 0 { -num } else { num }.rem_euclid(den_abs);
    if (4 * num) % den_abs == 0 {
        return match 4 * num / den_abs {
            0 => one(),
            1 => c(T::zero(), T::one()),
            2 => c(-T::one(), T::zero()),
            _ => c(T::zero(), -T::one()),
        };
    }
    let angle = T::two_pi() * T::from_int(num) / T::from_int(den_abs);
    cis(angle)
}

/// Integer power of a complex number. Negative exponents of a unit-modulus
/// number use its conjugate.
pub fn powi<T: Real>(z: C<T>, n: i64) -> C<T> {
    let base = if n < 0 { z.conj() } else { z };
    let mut e = n.unsigned_abs();
    let mut acc = one::<T>();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b = b * b;
        e >>= 1;
    }
    acc
}

/// Converts a complex scalar to an `[re, im]` pair of `f64`.
#[inline]
pub fn to_pair<T: Real>(z: C<T>) -> [f64; 2] {
    [z.re.as_f64(), z.im.as_f64()]
}

#[inline]
pub fn from_pair<T: Real>(p: [f64; 2]) -> C<T> {
    Complex::new(T::lit(p[0]), T::lit(p[1]))
}
