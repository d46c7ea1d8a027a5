//! Coefficient arithmetic used inside the Gröbner engine.
//!
//! Rationals use a machine-word fast path and fall back to big integers on overflow.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::{inv_mod, FieldElem};

pub(crate) trait Coeffs: Clone + Send + Sync {
    type C: Clone + PartialEq + Debug + Send + Sync;
    fn one(&self) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn is_one(&self, a: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn inv(&self, a: &Self::C) -> Self::C;
    fn import(&self, a: &FieldElem) -> Self::C;
    fn export(&self, a: &Self::C) -> FieldElem;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeCoeffs {
    pub p: u64,
}

impl Coeffs for PrimeCoeffs {
    type C = u32;
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p - *b as u64) % self.p) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        ((self.p - *a as u64) % self.p) as u32
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a as u64, self.p) as u32
    }
    fn import(&self, a: &FieldElem) -> u32 {
        match a {
            FieldElem::Residue { value, .. } => *value as u32,
            FieldElem::Rational(_) => panic!("rational coefficient in prime-field engine"),
        }
    }
    fn export(&self, a: &u32) -> FieldElem {
        FieldElem::Residue { value: *a as u64, modulus: self.p }
    }
}

/// Rational number with an `i64` fast path; `Small(n, d)` has `d > 0` and `gcd(n, d) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        if n == 0 {
            return Rat::Small(0, 1);
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(q: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (q.numer().to_i64(), q.denom().to_i64()) {
            if n != i64::MIN {
                return Rat::Small(n, d);
            }
        }
        Rat::Big(q)
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(q) => q.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RationalCoeffs;

impl Coeffs for RationalCoeffs {
    type C = Rat;
    fn one(&self) -> Rat {
        Rat::Small(1, 1)
    }
    fn is_zero(&self, a: &Rat) -> bool {
        match a {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(q) => q.is_zero(),
        }
    }
    fn is_one(&self, a: &Rat) -> bool {
        match a {
            Rat::Small(n, d) => *n == 1 && *d == 1,
            Rat::Big(q) => q.is_one(),
        }
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => {
                if ad == bd {
                    return Rat::from_i128(*an as i128 + *bn as i128, *ad as i128);
                }
                let n = *an as i128 * *bd as i128 + *bn as i128 * *ad as i128;
                let d = *ad as i128 * *bd as i128;
                Rat::from_i128(n, d)
            }
            _ => Rat::from_big(a.to_big() + b.to_big()),
        }
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => {
                Rat::from_i128(*an as i128 * *bn as i128, *ad as i128 * *bd as i128)
            }
            _ => Rat::from_big(a.to_big() * b.to_big()),
        }
    }
    fn neg(&self, a: &Rat) -> Rat {
        match a {
            Rat::Small(n, d) => Rat::Small(-n, *d),
            Rat::Big(q) => Rat::from_big(-q),
        }
    }
    fn inv(&self, a: &Rat) -> Rat {
        match a {
            Rat::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::Big(q) => Rat::from_big(q.recip()),
        }
    }
    fn import(&self, a: &FieldElem) -> Rat {
        match a {
            FieldElem::Rational(q) => Rat::from_big(q.clone()),
            FieldElem::Residue { .. } => panic!("residue coefficient in rational engine"),
        }
    }
    fn export(&self, a: &Rat) -> FieldElem {
        FieldElem::Rational(a.to_big())
    }
}
