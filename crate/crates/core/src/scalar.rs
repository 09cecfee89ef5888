//! Exact scalar types: Gaussian rationals (the coefficient field of every
//! algebra in this crate) and the circle group `Q/Z` used for character
//! values.

use num::{BigInt, BigRational, One, Zero};
use serde_json::{json, Value};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::system::CosetError;

/// Parse a rational from `"p/q"` or `"p"`.
pub fn rat_from_str(s: &str) -> Result<BigRational, CosetError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| CosetError::Parse(format!("bad rational {s:?}")))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| CosetError::Parse(format!("bad rational {s:?}")))?;
    if q.is_zero() {
        return Err(CosetError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(p, q))
}

/// Render a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A Gaussian rational `re + im·i` with exact arithmetic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(n.into()),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "re": rat_to_string(&self.re), "im": rat_to_string(&self.im) })
    }

    pub fn from_json(v: &Value) -> Result<Self, CosetError> {
        let obj = v
            .as_object()
            .ok_or_else(|| CosetError::Parse("scalar must be an object".into()))?;
        let field = |k: &str| -> Result<BigRational, CosetError> {
            match obj.get(k) {
                None => Ok(BigRational::zero()),
                Some(Value::String(s)) => rat_from_str(s),
                Some(other) => Err(CosetError::Parse(format!("bad scalar field {k}: {other}"))),
            }
        };
        Ok(Scalar {
            re: field("re")?,
            im: field("im")?,
        })
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rat_to_string(&self.re))
        } else {
            write!(
                f,
                "{}+{}i",
                rat_to_string(&self.re),
                rat_to_string(&self.im)
            )
        }
    }
}

/// An element of `Q/Z`, stored as the unique representative in `[0, 1)`.
///
/// `QmodZ(q)` stands for the exact character value `exp(2πi·q)`, so the group
/// law is addition mod 1 and the trivial character value is zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QmodZ(BigRational);

impl QmodZ {
    pub fn new(q: BigRational) -> Self {
        let f = q.floor();
        QmodZ(q - f)
    }

    pub fn zero() -> Self {
        QmodZ(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn add(&self, other: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> QmodZ {
        QmodZ::new(-self.0.clone())
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rat_to_string(&self.0))
    }
}
