//! Scalar traits the matrix container is generic over.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Ring-element operations shared by every matrix entry type, exact or
/// floating point.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Floating-point scalars accepted by the numerical module.
pub trait Real: Scalar + num_traits::Float + num_traits::FromPrimitive {}

impl Real for f32 {}
impl Real for f64 {}
