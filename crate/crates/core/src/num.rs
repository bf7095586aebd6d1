//! Scalar types used for utilities.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};

/// Exact unsigned scalar holding quantities, external utilities and every
/// aggregate derived from them.
///
/// Implemented for all primitive unsigned integers. Aggregates over a large
/// database should use at least 64 bits; the crate root aliases pick `u64`.
pub trait Utility:
    PrimInt + Unsigned + Sum + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    /// Widening conversion used for ratio comparisons.
    fn to_u128(self) -> u128 {
        num_traits::ToPrimitive::to_u128(&self).expect("unsigned scalar fits in u128")
    }

    /// Narrowing conversion from a plain count, `None` on overflow.
    fn from_u64(value: u64) -> Option<Self> {
        num_traits::NumCast::from(value)
    }
}

impl<T> Utility for T where
    T: PrimInt + Unsigned + Sum + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total<U: Utility>(xs: &[U]) -> U {
        xs.iter().copied().sum()
    }

    #[test]
    fn sums_over_every_width() {
        assert_eq!(total(&[1u8, 2, 3]), 6);
        assert_eq!(total(&[1u32, 2, 3]), 6);
        assert_eq!(total(&[u64::MAX - 1, 1]), u64::MAX);
        assert_eq!(total::<u128>(&[]), 0);
    }

    #[test]
    fn conversions() {
        assert_eq!(<u8 as Utility>::from_u64(300), None);
        assert_eq!(<u16 as Utility>::from_u64(300), Some(300));
        assert_eq!(7u32.to_u128(), 7);
    }
}
