//! Extended reals in `[-inf, inf]`.
//!
//! Conventions: `log 0 = -inf`, `log inf = inf`, `|-inf| = inf`, `exp(-inf) = 0`.
//! The indeterminate form `inf + (-inf)` is reported as [`ConventionError`]
//! instead of being collapsed to some finite value.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Tolerance used for every axiom and inequality comparison in the crate.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("indeterminate extended-real operation: {0}")]
pub struct ConventionError(pub &'static str);

#[derive(Debug, Clone, Copy)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

pub use ExtReal::{NegInf, PosInf};

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Wraps a float; `NaN` is rejected and infinite floats map to the sentinels.
    pub fn new(x: f64) -> ExtReal {
        assert!(!x.is_nan(), "NaN is not an extended real");
        if x == f64::INFINITY {
            PosInf
        } else if x == f64::NEG_INFINITY {
            NegInf
        } else {
            ExtReal::Finite(x)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_pos_inf(self) -> bool {
        matches!(self, PosInf)
    }

    /// The value as `f64`, with the sentinels mapped to the float infinities.
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(x) => x,
            PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn checked_add(self, other: ExtReal) -> Result<ExtReal, ConventionError> {
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(ConventionError("inf + (-inf)")),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Ok(ExtReal::new(a + b)),
        }
    }

    pub fn checked_sub(self, other: ExtReal) -> Result<ExtReal, ConventionError> {
        match (self, other) {
            (PosInf, PosInf) | (NegInf, NegInf) => Err(ConventionError("inf - inf")),
            _ => self.checked_add(-other),
        }
    }

    /// Natural logarithm of a nonnegative count or magnitude.
    pub fn ln(x: f64) -> ExtReal {
        assert!(x >= 0.0, "log of a negative number");
        if x == 0.0 {
            NegInf
        } else {
            ExtReal::new(x.ln())
        }
    }

    pub fn ln_ext(self) -> ExtReal {
        match self {
            PosInf => PosInf,
            ExtReal::Finite(x) => ExtReal::ln(x),
            NegInf => panic!("log of -inf"),
        }
    }

    pub fn exp(self) -> ExtReal {
        match self {
            NegInf => ExtReal::ZERO,
            ExtReal::Finite(x) => ExtReal::new(x.exp()),
            PosInf => PosInf,
        }
    }

    pub fn abs(self) -> ExtReal {
        match self {
            NegInf | PosInf => PosInf,
            ExtReal::Finite(x) => ExtReal::Finite(x.abs()),
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `self <= other + tol`, with infinities compared exactly.
    pub fn le_tol(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a <= b + tol,
            _ => self <= other,
        }
    }

    /// Equality up to `tol` for finite values, exact for the sentinels.
    pub fn approx_eq(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            _ => self == other,
        }
    }

    fn rank(self) -> u8 {
        match self {
            NegInf => 0,
            ExtReal::Finite(_) => 1,
            PosInf => 2,
        }
    }
}

/// `max(floor, sup values)`; the supremum of the empty family is `floor`.
pub fn sup_bounded<I>(floor: ExtReal, values: I) -> ExtReal
where
    I: IntoIterator<Item = ExtReal>,
{
    values.into_iter().fold(floor, ExtReal::max)
}

/// `sup_bounded` with floor 0.
pub fn sup0<I>(values: I) -> ExtReal
where
    I: IntoIterator<Item = ExtReal>,
{
    sup_bounded(ExtReal::ZERO, values)
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::new(x)
    }
}

impl std::ops::Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            NegInf => PosInf,
            ExtReal::Finite(x) => ExtReal::Finite(-x),
            PosInf => NegInf,
        }
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => {
                // -0.0 and 0.0 compare equal
                a.partial_cmp(b).expect("NaN in ExtReal")
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            PosInf => write!(f, "inf"),
            ExtReal::Finite(x) => {
                if let Some(p) = f.precision() {
                    write!(f, "{:.*}", p, x)
                } else {
                    write!(f, "{}", x)
                }
            }
        }
    }
}

/// JSON encoding: finite values as numbers, sentinels as `"inf"` / `"-inf"`.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(x) => s.serialize_f64(*x),
            PosInf => s.serialize_str("inf"),
            NegInf => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(ExtReal::new(x)),
            Raw::Text(t) => match t.as_str() {
                "inf" | "+inf" | "infinity" => Ok(PosInf),
                "-inf" | "-infinity" => Ok(NegInf),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number, \"inf\" or \"-inf\", got {other:?}"
                ))),
            },
        }
    }
}
