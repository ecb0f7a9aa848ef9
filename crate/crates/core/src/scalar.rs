//! Exact scalars: arbitrary-precision rationals and prime-field residues.
//!
//! A computation lives over a single [`Field`]. Arithmetic between scalars of
//! different fields is a programming error and panics; containers such as
//! [`crate::Matrix`] check fields up front and return [`Error::FieldMismatch`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl Field {
    /// The prime field with `p` elements. `p` must be a prime below 2^32.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime { p })
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime { p } => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime { p } => Scalar::Prime { r: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime { p } => Scalar::Prime {
                r: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// `num/den`; `den` must be invertible in the field.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Parse(format!("{num}/{den}: zero denominator")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Parses the string form used in JSON documents: "a/b", "a", or a
    /// decimal residue for prime fields (fractions are accepted there too).
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("malformed scalar {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime { p } => {
                let m = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &m) + &m) % &m;
                    r.try_into().expect("residue fits in u64")
                };
                let n = Scalar::Prime { r: reduce(&num), p };
                let d = Scalar::Prime { r: reduce(&den), p };
                let inv = d.inv().ok_or_else(bad)?;
                Ok(&n * &inv)
            }
        }
    }

    /// Enumerates all field elements (prime fields only), in residue order.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime { p } => Some((0..p).map(move |r| Scalar::Prime { r, p })),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// Residue `r` in `[0, p)`.
    Prime {
        r: u64,
        p: u64,
    },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { r, .. } => *r == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { r, p } => Scalar::Prime {
                r: pow_mod(*r, p - 2, *p),
                p: *p,
            },
        })
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

    pub fn to_bigrational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime { .. } => None,
        }
    }

    /// The residue of a prime-field element.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Prime { r, .. } => Some(*r),
            Scalar::Rational(_) => None,
        }
    }

    fn expect_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across fields ({} vs {})",
            self.field(),
            other.field()
        );
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { r, .. } => write!(f, "{r}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { r: a, p }, Scalar::Prime { r: b, .. }) => Scalar::Prime {
                r: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { r: a, p }, Scalar::Prime { r: b, .. }) => Scalar::Prime {
                r: (a + p - b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { r: a, p }, Scalar::Prime { r: b, .. }) => Scalar::Prime {
                r: a * b % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { r, p } => Scalar::Prime {
                r: (p - r) % p,
                p: *p,
            },
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Prime { r: a, p }, Scalar::Prime { r: b, p: q }) => {
                assert_eq!(p, q, "scalar arithmetic across fields");
                *a = (*a + b) % *p;
            }
            _ => panic!("scalar arithmetic across fields"),
        }
    }
}

impl Scalar {
    /// `self += a * b`, the inner-loop workhorse.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Prime { r, p }, Scalar::Prime { r: x, .. }, Scalar::Prime { r: y, .. }) => {
                *r = (*r + x * y % *p) % *p;
            }
            _ => {
                let t = a * b;
                *self += &t;
            }
        }
    }

    /// Sign of a rational (`None` over prime fields).
    pub fn signum(&self) -> Option<i32> {
        self.to_bigrational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    /// Clears a rational to an integer numerator over a common denominator.
    pub(crate) fn numer_denom(&self) -> Option<(BigInt, BigInt)> {
        self.to_bigrational()
            .map(|q| (q.numer().clone(), q.denom().clone()))
    }
}
