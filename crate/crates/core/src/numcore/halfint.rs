use std::fmt;

use super::rat::{parse_rat, BigRat};
use crate::error::{Result, WalkError};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

/// ν = twice/2, so the dimension is d = twice + 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: u32,
}

impl HalfInt {
    pub const fn from_twice(twice: u32) -> Self {
        HalfInt { twice }
    }

    pub const fn int(nu: u32) -> Self {
        HalfInt { twice: 2 * nu }
    }

    pub fn from_dim(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(WalkError::Domain(format!("dimension must be at least 2, got {d}")));
        }
        Ok(HalfInt { twice: d - 2 })
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn dim(self) -> u32 {
        self.twice + 2
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice.is_multiple_of(2)
    }

    pub fn as_integer(self) -> Option<u32> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_rat(self) -> BigRat {
        BigRat::new(BigInt::from(self.twice), BigInt::from(2))
    }

    /// Shift by an integer, `None` when the result would be negative.
    pub fn offset(self, by: i32) -> Option<Self> {
        let t = self.twice as i64 + 2 * by as i64;
        (t >= 0).then_some(HalfInt { twice: t as u32 })
    }

    /// Accepts "3/2", "2", "1.5".
    pub fn parse(s: &str) -> Result<Self> {
        let r = parse_rat(s)?;
        let twice = &r * BigRat::from_integer(BigInt::from(2));
        if !twice.denom().is_one() || twice < BigRat::from_integer(BigInt::from(0)) {
            return Err(WalkError::Parse(format!("{s} is not a nonnegative half-integer")));
        }
        let t = twice
            .numer()
            .to_u32()
            .ok_or_else(|| WalkError::Parse(format!("{s} out of range")))?;
        Ok(HalfInt { twice: t })
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        assert_eq!(HalfInt::from_dim(2).unwrap(), HalfInt::int(0));
        assert_eq!(HalfInt::from_dim(3).unwrap().to_string(), "1/2");
        assert_eq!(HalfInt::from_dim(8).unwrap().as_integer(), Some(3));
        assert!(HalfInt::from_dim(1).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(HalfInt::parse("3/2").unwrap().twice(), 3);
        assert_eq!(HalfInt::parse("1.5").unwrap().twice(), 3);
        assert_eq!(HalfInt::parse("2").unwrap().dim(), 6);
        assert!(HalfInt::parse("1/3").is_err());
        assert!(HalfInt::parse("-1").is_err());
    }
}
