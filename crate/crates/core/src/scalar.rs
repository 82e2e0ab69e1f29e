//! Exact field scalars: arbitrary-precision rationals and prime fields GF(p).
//!
//! Every identity in this crate is an exact algebraic equality, so there is
//! no floating point anywhere. Rationals are kept fully reduced with a
//! positive denominator; GF(p) residues are kept in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// Which kind of field a [`FieldSpec`] denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// A ground field: the rationals or GF(p) for a prime `p <= 2^31 - 1`.
///
/// Primality is checked once, at construction, so a `FieldSpec` value is
/// always valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec(Repr);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Repr {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec(Repr::Rationals)
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if p > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec(Repr::PrimeField(p)))
    }

    /// Parses the textual form used in files and on the command line:
    /// `"q"` for the rationals, `"gf:<p>"` for a prime field.
    pub fn parse(text: &str) -> Result<Self> {
        if text == "q" {
            return Ok(Self::rationals());
        }
        if let Some(p) = text.strip_prefix("gf:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::MalformedFieldSpec(text.to_string()))?;
            return Self::prime_field(p);
        }
        Err(Error::MalformedFieldSpec(text.to_string()))
    }

    pub fn kind(&self) -> FieldKind {
        match self.0 {
            Repr::Rationals => FieldKind::Rationals,
            Repr::PrimeField(_) => FieldKind::PrimeField,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Repr::Rationals => None,
            Repr::PrimeField(p) => Some(p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Rationals => write!(f, "q"),
            Repr::PrimeField(p) => write!(f, "gf:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact element of a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_integer(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: FieldSpec, n: i64) -> Self {
        let value = match field.0 {
            Repr::Rationals => Value::Rational(BigRational::from_integer(BigInt::from(n))),
            Repr::PrimeField(p) => Value::Residue(reduce_mod(&BigInt::from(n), p)),
        };
        Scalar { field, value }
    }

    /// Builds `n/d` over the rationals, reduced to lowest terms.
    pub fn from_fraction(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar {
            field: FieldSpec::rationals(),
            value: Value::Rational(BigRational::new(BigInt::from(n), BigInt::from(d))),
        })
    }

    /// Parses the canonical text form: `a` or `a/b` over the rationals
    /// (optional leading sign), a decimal integer over GF(p).
    /// Printing and re-parsing is the identity.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        let malformed = || Error::MalformedScalar(text.to_string());
        match field.0 {
            Repr::Rationals => {
                let (num_text, den_text) = match text.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (text, None),
                };
                let numer = parse_bigint(num_text, true).ok_or_else(malformed)?;
                let denom = match den_text {
                    Some(d) => parse_bigint(d, false).ok_or_else(malformed)?,
                    None => BigInt::one(),
                };
                if denom.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Scalar {
                    field,
                    value: Value::Rational(BigRational::new(numer, denom)),
                })
            }
            Repr::PrimeField(p) => {
                let n = parse_bigint(text, true).ok_or_else(malformed)?;
                Ok(Scalar {
                    field,
                    value: Value::Residue(reduce_mod(&n, p)),
                })
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_one(),
            Value::Residue(r) => *r == 1,
        }
    }

    /// Field addition with a field-mismatch check.
    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.ensure_same_field(rhs)?;
        Ok(self + rhs)
    }

    /// Field subtraction with a field-mismatch check.
    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.ensure_same_field(rhs)?;
        Ok(self - rhs)
    }

    /// Field multiplication with a field-mismatch check.
    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.ensure_same_field(rhs)?;
        Ok(self * rhs)
    }

    /// Field division; fails on mismatched fields or a zero divisor.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.ensure_same_field(rhs)?;
        Ok(self * &rhs.inverse()?)
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(r) => Value::Rational(r.recip()),
            Value::Residue(r) => {
                let p = self.field.modulus().expect("residue implies prime field");
                Value::Residue(mod_inverse(*r, p))
            }
        };
        Ok(Scalar {
            field: self.field,
            value,
        })
    }

    fn ensure_same_field(&self, rhs: &Scalar) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

fn parse_bigint(text: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        text.strip_prefix(['+', '-']).unwrap_or(text)
    } else {
        text
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = n % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    let (_, digits) = r.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue below 2^31 fits one digit"),
    }
}

/// Extended Euclid; `a` must be a unit mod `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus is prime and a is nonzero");
    t0.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt, $wrap_mod:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;

            /// # Panics
            /// Panics if the operands belong to different fields; library
            /// entry points validate contexts before arithmetic starts.
            fn $method(self, rhs: &Scalar) -> Scalar {
                assert_eq!(self.field, rhs.field, "scalar field mismatch");
                let value = match (&self.value, &rhs.value) {
                    (Value::Rational(a), Value::Rational(b)) => Value::Rational(a $op b),
                    (Value::Residue(a), Value::Residue(b)) => {
                        let p = self.field.modulus().expect("residue implies prime field");
                        Value::Residue($wrap_mod(*a, *b, p))
                    }
                    _ => unreachable!("value kind always matches field kind"),
                };
                Scalar { field: self.field, value }
            }
        }
    };
}

scalar_binop!(Add, add, +, |a: u64, b: u64, p: u64| (a + b) % p);
scalar_binop!(Sub, sub, -, |a: u64, b: u64, p: u64| (a + p - b) % p);
scalar_binop!(Mul, mul, *, |a: u64, b: u64, p: u64| ((a as u128 * b as u128) % p as u128) as u64);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        let value = match &self.value {
            Value::Rational(r) => Value::Rational(-r),
            Value::Residue(r) => {
                let p = self.field.modulus().expect("residue implies prime field");
                Value::Residue((p - *r) % p)
            }
        };
        Scalar {
            field: self.field,
            value,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(5).is_ok());
        assert_eq!(FieldSpec::prime_field(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime_field(9), Err(Error::NotPrime(9)));
        assert_eq!(
            FieldSpec::prime_field(1 << 31),
            Err(Error::ModulusTooLarge(1 << 31))
        );
        assert_eq!(FieldSpec::parse("q").unwrap(), q());
        assert_eq!(FieldSpec::parse("gf:7").unwrap(), gf(7));
        assert!(FieldSpec::parse("gf:").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    #[test]
    fn parse_reduces_to_canonical_form() {
        let half = Scalar::parse("2/4", q()).unwrap();
        assert_eq!(half, Scalar::from_fraction(1, 2).unwrap());
        assert_eq!(half.to_string(), "1/2");

        let two = Scalar::parse("7", gf(5)).unwrap();
        assert_eq!(two, Scalar::from_integer(gf(5), 2));

        assert_eq!(Scalar::parse("1/0", q()), Err(Error::ZeroDenominator));
        assert!(Scalar::parse("2x", q()).is_err());
        assert!(Scalar::parse("1/-2", q()).is_err());
        assert_eq!(Scalar::parse("-3", gf(5)).unwrap().to_string(), "2");
    }

    #[test]
    fn arithmetic_examples() {
        let a = Scalar::from_fraction(1, 2).unwrap();
        let b = Scalar::from_fraction(1, 3).unwrap();
        assert_eq!(&a + &b, Scalar::from_fraction(5, 6).unwrap());

        let three = Scalar::from_integer(gf(5), 3);
        let four = Scalar::from_integer(gf(5), 4);
        assert_eq!(&three * &four, Scalar::from_integer(gf(5), 2));

        assert_eq!(
            a.checked_div(&Scalar::zero(q())),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            a.checked_add(&three),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn inversion_examples() {
        let x = Scalar::from_fraction(2, 3).unwrap();
        assert_eq!(x.inverse().unwrap(), Scalar::from_fraction(3, 2).unwrap());

        let three = Scalar::from_integer(gf(7), 3);
        assert_eq!(three.inverse().unwrap(), Scalar::from_integer(gf(7), 5));

        assert_eq!(Scalar::zero(q()).inverse(), Err(Error::DivisionByZero));
    }

    fn rational() -> impl Strategy<Value = Scalar> {
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Scalar::from_fraction(n, d).unwrap())
    }

    fn residue() -> impl Strategy<Value = Scalar> {
        (0u32..101).prop_map(|r| Scalar::from_integer(gf(101), r as i64))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            field_axioms(&a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in residue(), b in residue(), c in residue()) {
            field_axioms(&a, &b, &c);
        }

        #[test]
        fn print_parse_round_trip(a in rational(), b in residue()) {
            prop_assert_eq!(Scalar::parse(&a.to_string(), a.field()).unwrap(), a);
            prop_assert_eq!(Scalar::parse(&b.to_string(), b.field()).unwrap(), b);
        }
    }

    fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        let field = a.field();
        assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
        assert_eq!(&(a + b), &(b + a));
        assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
        assert_eq!(&(a * b), &(b * a));
        assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
        assert_eq!(&(a + &-a), &Scalar::zero(field));
        if !a.is_zero() {
            assert_eq!(&(a * &a.inverse().unwrap()), &Scalar::one(field));
        }
        assert_eq!(&(a * &Scalar::one(field)), a);
        assert_eq!(&(a + &Scalar::zero(field)), a);
    }
}
