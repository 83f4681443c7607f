//! Dual number representation: exact rationals where the data is rational,
//! floats with an absolute tolerance where trigonometry forces approximation.
//!
//! Arithmetic between two exact values stays exact; as soon as a float is
//! involved the result is a float. Comparisons between exact values are
//! decided exactly, all other comparisons use an absolute tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Default absolute tolerance for float comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Absolute comparison tolerance. Only consulted when at least one operand
/// is a float; exact pairs ignore it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol(pub f64);

impl Default for Tol {
    fn default() -> Self {
        Tol(DEFAULT_TOL)
    }
}

/// A real number, either an exact rational or an f64.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact ratio `num / den`. Panics on a zero denominator, which is a
    /// programming error at every call site.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or_else(|| {
                // Out-of-range rationals do not occur in this workbench's data.
                if r.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }),
            Scalar::Float(x) => *x,
        }
    }

    /// True when this value is an exact integer (floats never qualify).
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            _ => None,
        }
    }

    /// Nearest integer when the value is within `tol` of one.
    pub fn nearby_integer(&self, tol: Tol) -> Option<i64> {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    r.to_integer().to_i64()
                } else {
                    None
                }
            }
            Scalar::Float(x) => {
                let n = x.round();
                if (x - n).abs() <= tol.0 {
                    Some(n as i64)
                } else {
                    None
                }
            }
        }
    }

    /// Three-way comparison: exact for rational pairs, tolerance-banded
    /// (`Equal` within `tol`) otherwise.
    pub fn cmp_within(&self, other: &Scalar, tol: Tol) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                if (a - b).abs() <= tol.0 {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn le_within(&self, other: &Scalar, tol: Tol) -> bool {
        self.cmp_within(other, tol) != Ordering::Greater
    }

    pub fn ge_within(&self, other: &Scalar, tol: Tol) -> bool {
        self.cmp_within(other, tol) != Ordering::Less
    }

    /// Strictly less even after widening by `tol`.
    pub fn lt_within(&self, other: &Scalar, tol: Tol) -> bool {
        self.cmp_within(other, tol) == Ordering::Less
    }

    pub fn gt_within(&self, other: &Scalar, tol: Tol) -> bool {
        self.cmp_within(other, tol) == Ordering::Greater
    }

    pub fn eq_within(&self, other: &Scalar, tol: Tol) -> bool {
        self.cmp_within(other, tol) == Ordering::Equal
    }

    pub fn is_zero_within(&self, tol: Tol) -> bool {
        self.eq_within(&Scalar::zero(), tol)
    }

    /// Sign with a dead zone of `tol` for floats.
    pub fn sign_within(&self, tol: Tol) -> Ordering {
        self.cmp_within(&Scalar::zero(), tol)
    }

    /// Raw total order used for deterministic sorting; no tolerance band.
    pub fn raw_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    pub fn sqrt_f64(&self) -> f64 {
        self.to_f64().sqrt()
    }

    /// Exact halving; stays rational for rational input.
    pub fn half(&self) -> Scalar {
        self * &Scalar::from_ratio(1, 2)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a $op b),
                    _ => Scalar::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                assert!(!b.is_zero(), "exact division by zero");
                Scalar::Rational(a / b)
            }
            _ => Scalar::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(x) => Scalar::Float(-*x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Formats a float with 12 significant digits, deterministically.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        format!("{:.11e}", x)
    }
}

impl fmt::Display for Scalar {
    /// Exact rationals render as `p` or `p/q`; floats with 12 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{}", format_sig12(*x)),
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Extended real line used by support functions and slice infima.
#[derive(Clone, Debug)]
pub enum ExtReal {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl ExtReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            ExtReal::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(s) => s.to_f64(),
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    /// Total order with infinities at the extremes; finite values compare raw.
    pub fn raw_cmp(&self, other: &ExtReal) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.raw_cmp(b),
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if self.raw_cmp(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn neg(&self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(s) => ExtReal::Finite(-s),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::Finite(s) => write!(f, "{s}"),
            ExtReal::PosInf => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for ExtReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Converts lattice coordinates into exact scalars.
pub fn lattice_to_scalars(z: &[i64]) -> Vec<Scalar> {
    z.iter().map(|&v| Scalar::from_int(v)).collect()
}
