//! Base fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Largest prime modulus accepted. Products of two residues must fit in a `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// A base field, identified by its characteristic (0 for the rationals).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldWire", into = "FieldWire")]
pub struct FieldSpec {
    characteristic: u64,
}

#[derive(Serialize, Deserialize)]
struct FieldWire {
    char: u64,
}

impl TryFrom<FieldWire> for FieldSpec {
    type Error = AlgebraError;
    fn try_from(w: FieldWire) -> Result<Self, Self::Error> {
        FieldSpec::new(w.char)
    }
}

impl From<FieldSpec> for FieldWire {
    fn from(f: FieldSpec) -> Self {
        FieldWire { char: f.characteristic }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Characteristic 0 gives the rationals; otherwise `characteristic` must be a prime.
    pub fn new(characteristic: u64) -> Result<Self, AlgebraError> {
        if characteristic == 0 || (characteristic <= MAX_MODULUS && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(AlgebraError::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    /// Panics if `p` is not an admissible prime; for literals in code and tests.
    pub fn prime(p: u64) -> Self {
        FieldSpec::new(p).expect("not an admissible prime")
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match self.characteristic {
            0 => FieldElem::Rational(BigRational::from_integer(v.clone())),
            p => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElem::Residue { value: r.to_u64().unwrap(), modulus: p }
            }
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem, AlgebraError> {
        match self.characteristic {
            0 => Ok(FieldElem::Rational(q.clone())),
            _ => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                n.checked_div(&d)
            }
        }
    }

    /// Every element of a prime field in increasing residue order.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        match self.characteristic {
            0 => None,
            p => Some((0..p).map(|v| FieldElem::Residue { value: v, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

/// An element of a [`FieldSpec`]. Rationals are kept reduced with positive denominator,
/// residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

impl FieldElem {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElem::Rational(_) => FieldSpec::rationals(),
            FieldElem::Residue { modulus, .. } => FieldSpec { characteristic: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Residue { value, .. } => *value == 1,
        }
    }

    fn same(&self, other: &FieldElem) {
        assert_eq!(self.spec(), other.spec(), "field mismatch in coefficient arithmetic");
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.same(other);
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Residue { value: a, modulus: p }, FieldElem::Residue { value: b, .. }) => {
                FieldElem::Residue { value: (a + b) % p, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Residue { value, modulus } => {
                FieldElem::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.same(other);
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Residue { value: a, modulus: p }, FieldElem::Residue { value: b, .. }) => {
                FieldElem::Residue { value: a * b % p, modulus: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<FieldElem, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rational(a) => FieldElem::Rational(a.recip()),
            FieldElem::Residue { value, modulus } => {
                FieldElem::Residue { value: inv_mod(*value, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut r = self.spec().one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Integer multiple `k·self`.
    pub fn scale(&self, k: i64) -> FieldElem {
        self.mul(&self.spec().from_i64(k))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            FieldElem::Residue { .. } => None,
        }
    }

    /// True when the printed form would start with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_negative(),
            FieldElem::Residue { .. } => false,
        }
    }

    /// Wire encoding: `"num/den"` (or `"num"`) over the rationals, the residue otherwise.
    pub fn to_wire(&self) -> String {
        match self {
            FieldElem::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Residue { value, .. } => value.to_string(),
        }
    }

    pub fn from_wire(spec: FieldSpec, s: &str) -> Result<FieldElem, AlgebraError> {
        let bad = || AlgebraError::Parse(format!("bad coefficient {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        spec.from_rational(&BigRational::new(n, d))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire())
    }
}
