use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer entry type for fraction-free elimination.
///
/// The machine-word implementation reports overflow by returning `None`, at
/// which point the caller restarts the block with arbitrary precision.
pub(crate) trait ElimInt: Clone + Send + Sync {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    /// `self * a - other * b`
    fn mul_sub(&self, a: &Self, other: &Self, b: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn div_exact(&self, g: &Self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl ElimInt for i128 {
    #[inline]
    fn nil() -> Self {
        0
    }

    #[inline]
    fn is_nil(&self) -> bool {
        *self == 0
    }

    #[inline]
    fn mul_sub(&self, a: &Self, other: &Self, b: &Self) -> Option<Self> {
        let lhs = if *self == 0 { 0 } else { self.checked_mul(*a)? };
        let rhs = if *other == 0 { 0 } else { other.checked_mul(*b)? };
        lhs.checked_sub(rhs)
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        // gcd(i128::MIN, 0) does not fit; callers only divide by it, so saturate
        i128::try_from(a).unwrap_or(i128::MAX)
    }

    #[inline]
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }

    #[inline]
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ElimInt for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn mul_sub(&self, a: &Self, other: &Self, b: &Self) -> Option<Self> {
        match (Zero::is_zero(self), Zero::is_zero(other)) {
            (true, true) => Some(BigInt::zero()),
            (false, true) => Some(self * a),
            (true, false) => Some(-(other * b)),
            (false, false) => Some(self * a - other * b),
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }

    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}
