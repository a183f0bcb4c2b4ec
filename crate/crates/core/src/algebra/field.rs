//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..1 << 31).contains(&p) {
            return Err(Error::Input(format!("prime modulus {p} out of range [2, 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue { value: r.to_u32().expect("residue fits"), modulus: p }
            }
        }
    }

    /// Maps a rational into the field; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(_) => {
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::Input(format!("{q} has no image in {self}")));
                }
                Ok(&self.from_bigint(q.numer()) * &den.inverse())
            }
        }
    }

    /// All field elements, only available for prime fields.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(|value| Scalar::Residue { value, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element in canonical form. Residues carry their modulus so that
/// arithmetic never needs a separate context argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inverse(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                let v = pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64);
                Scalar::Residue { value: v as u32, modulus: *modulus }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact rational value; residues map to their representative in `[0, p)`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue { value, .. } => BigRational::from_integer(BigInt::from(*value)),
        }
    }

    /// Signed representative used for display: residues above p/2 print negative.
    pub fn signed_rational(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue { value, modulus } => {
                let v = *value as i64;
                let m = *modulus as i64;
                let s = if v > m / 2 { v - m } else { v };
                BigRational::from_integer(BigInt::from(s))
            }
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "scalars from different fields");
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inverse()
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.signed_rational();
        if q.is_integer() {
            write!(f, "{}", q.numer())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

/// `[numerator, denominator]` pair of a rational, the serialization used in reports.
pub fn rational_pair(q: &BigRational) -> (BigInt, BigInt) {
    (q.numer().clone(), q.denom().clone())
}

/// Parses `"n"` or `"n/d"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
