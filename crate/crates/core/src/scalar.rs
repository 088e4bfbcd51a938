//! Scalar abstraction: every numeric routine in this crate is generic over a
//! floating-point type through [`Real`].

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar: f32 or f64.
pub trait Real: Float + FromPrimitive + NumAssign + Debug + Display + Copy + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + NumAssign + Debug + Display + Copy + 'static {}

/// Converts an f64 constant into the working scalar type.
///
/// Panics only if `T` cannot represent any f64, which no `Real` type does.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert into the scalar type")
}

/// Integer power r^k without going through `powf`.
#[inline]
pub fn powi<T: Real>(r: T, k: u32) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc * r;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_round_trips_constants() {
        assert_eq!(real::<f64>(0.5), 0.5);
        assert_eq!(real::<f32>(0.25), 0.25f32);
    }

    #[test]
    fn powi_matches_powf() {
        let r = 1.7f64;
        for k in 0..8 {
            assert!((powi(r, k) - r.powi(k as i32)).abs() < 1e-12);
        }
    }
}
