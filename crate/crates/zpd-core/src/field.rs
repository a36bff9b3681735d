//! Scalar arithmetic for the two coefficient fields: prime fields F_p
//! (p a runtime value) and the rationals.
//!
//! Matrices and algebras are generic over [`Scalar`]. The prime-field
//! scalar [`Fp`] carries its modulus in the value so that the num-traits
//! operator surface stays context free; `Zero::zero()` and `One::one()`
//! produce *unbound* integers (modulus 0) that bind to a modulus on first
//! contact with a bound value. A computation never mixes two distinct
//! explicit moduli; doing so is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Identifies a coefficient field: `gf(p)` for a prime `2 <= p < 2^31`,
/// or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Prime(u64),
    Rational,
}

impl FieldDescriptor {
    /// Characteristic of the field: `p` for `gf(p)`, 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Prime(p) => *p,
            FieldDescriptor::Rational => 0,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldDescriptor::Prime(_))
    }

    /// Checks the prime bound `2 <= p < 2^31` and primality by trial division.
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            FieldDescriptor::Rational => Ok(()),
            FieldDescriptor::Prime(p) => {
                let p = *p;
                if !(2..(1 << 31)).contains(&p) {
                    return Err(Error::InvalidField { modulus: p });
                }
                let mut d = 2u64;
                while d * d <= p {
                    if p % d == 0 {
                        return Err(Error::InvalidField { modulus: p });
                    }
                    d += 1;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime(p) => write!(f, "gf({p})"),
            FieldDescriptor::Rational => write!(f, "rational"),
        }
    }
}

/// An exact field element. Implementors: [`Fp`] and [`BigRational`].
///
/// The num-traits bounds give generic code its arithmetic; the extra
/// methods cover what a context-free operator surface cannot express
/// (field identification, embedding integers, inversion).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The field this value is bound to; `None` for an unbound
    /// `zero()`/`one()` that has not yet met a bound value.
    fn field(&self) -> Option<FieldDescriptor>;

    /// Embeds the integer `n` into `field`. Panics if `field` does not
    /// match the implementing scalar kind.
    fn from_integer(field: &FieldDescriptor, n: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn try_inverse(&self) -> Option<Self>;

    /// `Some(bit)` when the value is unambiguously an element of gf(2)
    /// (bound to modulus 2, or an unbound 0/1). Used to route matrices
    /// onto the bit-packed gf(2) path.
    fn as_gf2_bit(&self) -> Option<bool>;
}

/// Element of F_p. `modulus == 0` marks an unbound integer produced by
/// `zero()`/`one()`; bound values keep `0 <= value < modulus`.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2, "modulus must be at least 2");
        Fp {
            value: value.rem_euclid(modulus as i64),
            modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical residue in `[0, p)`; unbound values report their integer.
    pub fn residue(&self) -> i64 {
        self.value
    }

    /// Common modulus of two operands. Panics on two distinct bound moduli.
    fn joined_modulus(&self, other: &Fp) -> u64 {
        match (self.modulus, other.modulus) {
            (0, m) | (m, 0) => m,
            (a, b) => {
                assert_eq!(a, b, "mixed moduli {a} and {b} in one computation");
                a
            }
        }
    }

    fn bound_to(value: i64, modulus: u64) -> Fp {
        if modulus == 0 {
            Fp { value, modulus: 0 }
        } else {
            Fp::new(value, modulus)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let m = self.joined_modulus(other);
        if m == 0 {
            self.value == other.value
        } else {
            self.value.rem_euclid(m as i64) == other.value.rem_euclid(m as i64)
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = self.joined_modulus(&rhs);
        Fp::bound_to(self.value + rhs.value, m)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = self.joined_modulus(&rhs);
        Fp::bound_to(self.value - rhs.value, m)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = self.joined_modulus(&rhs);
        // Bound residues are < 2^31, so the product fits in i64.
        Fp::bound_to(self.value * rhs.value, m)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::bound_to(-self.value, self.modulus)
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        if self.modulus == 0 {
            self.value == 0
        } else {
            self.value.rem_euclid(self.modulus as i64) == 0
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
    fn is_one(&self) -> bool {
        if self.modulus == 0 {
            self.value == 1
        } else {
            self.value.rem_euclid(self.modulus as i64) == 1
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar for Fp {
    fn field(&self) -> Option<FieldDescriptor> {
        (self.modulus != 0).then_some(FieldDescriptor::Prime(self.modulus))
    }

    fn from_integer(field: &FieldDescriptor, n: i64) -> Self {
        match field {
            FieldDescriptor::Prime(p) => Fp::new(n, *p),
            FieldDescriptor::Rational => panic!("Fp cannot embed into the rational field"),
        }
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.modulus == 0 {
            match self.value {
                1 => Some(*self),
                -1 => Some(*self),
                v => panic!("inverse of unbound integer {v} is field dependent"),
            }
        } else {
            let p = self.modulus;
            let v = self.value.rem_euclid(p as i64) as u64;
            Some(Fp::new(pow_mod(v, p - 2, p) as i64, p))
        }
    }

    fn as_gf2_bit(&self) -> Option<bool> {
        match self.modulus {
            2 => Some(self.value.rem_euclid(2) == 1),
            0 if self.value == 0 => Some(false),
            0 if self.value == 1 => Some(true),
            _ => None,
        }
    }
}

impl Scalar for BigRational {
    fn field(&self) -> Option<FieldDescriptor> {
        Some(FieldDescriptor::Rational)
    }

    fn from_integer(field: &FieldDescriptor, n: i64) -> Self {
        match field {
            FieldDescriptor::Rational => BigRational::from_integer(BigInt::from(n)),
            FieldDescriptor::Prime(p) => panic!("rational scalar cannot embed into gf({p})"),
        }
    }

    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn as_gf2_bit(&self) -> Option<bool> {
        None
    }
}

/// Parses a rational from `"a/b"` or `"a"`. The result is reduced with a
/// positive denominator by construction.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let mk_err = || Error::InvalidScalar { text: s.to_string() };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| mk_err())?;
    let d: BigInt = den.parse().map_err(|_| mk_err())?;
    if d.is_zero() {
        return Err(mk_err());
    }
    Ok(BigRational::new(n, d))
}
