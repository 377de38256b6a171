//! Extended reals `ℝ ∪ {−∞, +∞}`, the codomain of every scalarization.
//!
//! Arithmetic is restricted to the forms that are always defined: adding a
//! finite real to anything, and subtracting a finite real from anything.
//! Combining two infinities of opposite sign is an error, never a NaN.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LatticeError;

/// A value in `ℝ ∪ {−∞, +∞}`.
///
/// `Finite` never holds NaN or an IEEE infinity; use [`ExtendedReal::from_f64`]
/// to normalize raw floats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    NegInf,
    Finite(f64),
    PosInf,
}

pub use ExtendedReal::{Finite, NegInf, PosInf};

impl ExtendedReal {
    pub const ZERO: ExtendedReal = Finite(0.0);

    /// Maps IEEE infinities onto the symbolic ones.
    ///
    /// # Panics
    /// On NaN: a NaN reaching the order structure is always a bug upstream.
    pub fn from_f64(v: f64) -> Self {
        assert!(!v.is_nan(), "NaN cannot be represented as an extended real");
        if v == f64::INFINITY {
            PosInf
        } else if v == f64::NEG_INFINITY {
            NegInf
        } else {
            Finite(v)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(v) => v,
            PosInf => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `self − other`, rejecting `∞ − ∞` of equal sign.
    pub fn try_sub(self, other: ExtendedReal) -> Result<ExtendedReal, LatticeError> {
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a - b)),
            (PosInf, PosInf) | (NegInf, NegInf) => Err(LatticeError::IndeterminateForm),
            (PosInf, _) | (_, NegInf) => Ok(PosInf),
            (NegInf, _) | (_, PosInf) => Ok(NegInf),
        }
    }

    /// `self + other`, rejecting `+∞ + (−∞)`.
    pub fn try_add(self, other: ExtendedReal) -> Result<ExtendedReal, LatticeError> {
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(LatticeError::IndeterminateForm),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    /// Multiplication by a strictly positive finite scale.
    pub fn scale(self, s: f64) -> ExtendedReal {
        debug_assert!(s > 0.0 && s.is_finite());
        match self {
            Finite(v) => Finite(v * s),
            other => other,
        }
    }

    /// `self ≤ other + tol`; infinities compare exactly.
    pub fn le_tol(self, other: ExtendedReal, tol: f64) -> bool {
        match (self, other) {
            (Finite(a), Finite(b)) => a <= b + tol,
            _ => self <= other,
        }
    }

    /// Equality up to `tol` for finite values, exact for infinities.
    pub fn approx_eq(self, other: ExtendedReal, tol: f64) -> bool {
        match (self, other) {
            (Finite(a), Finite(b)) => (a - b).abs() <= tol,
            _ => self == other,
        }
    }

    pub fn min(self, other: ExtendedReal) -> ExtendedReal {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: ExtendedReal) -> ExtendedReal {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Eq for ExtendedReal {}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(x: &ExtendedReal) -> u8 {
            match x {
                NegInf => 0,
                Finite(_) => 1,
                PosInf => 2,
            }
        }
        match (self, other) {
            (Finite(a), Finite(b)) => a.total_cmp(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        ExtendedReal::from_f64(v)
    }
}

impl Add<f64> for ExtendedReal {
    type Output = ExtendedReal;

    fn add(self, rhs: f64) -> ExtendedReal {
        assert!(rhs.is_finite(), "only finite reals may be added to an extended real");
        match self {
            Finite(v) => Finite(v + rhs),
            other => other,
        }
    }
}

impl Neg for ExtendedReal {
    type Output = ExtendedReal;

    fn neg(self) -> ExtendedReal {
        match self {
            NegInf => PosInf,
            Finite(v) => Finite(-v),
            PosInf => NegInf,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            Finite(v) => write!(f, "{v}"),
            PosInf => f.write_str("+inf"),
        }
    }
}

// JSON form: finite values are plain numbers (shortest round-trip decimal),
// infinities are the strings "+inf" and "-inf".
impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(v) => s.serialize_f64(*v),
            PosInf => s.serialize_str("+inf"),
            NegInf => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl<'de> Visitor<'de> for ExtVisitor {
            type Value = ExtendedReal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a finite number or one of \"+inf\", \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                if v.is_finite() {
                    Ok(Finite(v))
                } else {
                    Err(E::custom("non-finite number"))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                match v {
                    "+inf" | "inf" => Ok(PosInf),
                    "-inf" => Ok(NegInf),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        d.deserialize_any(ExtVisitor)
    }
}
