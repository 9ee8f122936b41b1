//! Exact field scalars: arbitrary-precision rationals or a prime field GF(p).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The coefficient field of a ring, fixed at ring creation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    /// Arbitrary-precision rationals.
    Rational,
    /// GF(p) for a prime p < 2^31.
    Prime(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. Rationals are kept reduced with positive
/// denominator; prime-field values live in [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u32, p: u32 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { val: 0, p },
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Fp { val: 1 % p, p },
        }
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let m = v.rem_euclid(p as i64) as u32;
                Scalar::Fp { val: m, p }
            }
        }
    }

    pub fn from_fraction(field: FieldSpec, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let n = Scalar::from_i64(field, num);
        let d = Scalar::from_i64(field, den);
        n.mul(&d.inv())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp { val: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp { val: if *val == 0 { 0 } else { p - val }, p: *p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp { val: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { val, p } => Scalar::Fp { val: mod_inv(*val, *p), p: *p },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // extended Euclid
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "non-invertible element mod {p}");
    t.rem_euclid(p as i64) as u32
}

/// Sign of a rational scalar; used only for display.
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Fp { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical() {
        let a = Scalar::from_fraction(FieldSpec::Rational, 2, -4);
        let b = Scalar::from_fraction(FieldSpec::Rational, -1, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn fp_inverse() {
        let p = 32003;
        for v in [1u32, 2, 5, 32002, 12345] {
            let s = Scalar::Fp { val: v, p };
            assert!(s.mul(&s.inv()).is_one());
        }
    }
}
