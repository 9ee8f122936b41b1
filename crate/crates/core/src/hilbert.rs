//! Exact Hilbert series as Laurent numerators over (1-t)^n, and Hilbert
//! polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Hilbert series numerator / (1-t)^denom_power, with integer Laurent
/// numerator. Equality is exact numerator comparison (the denominator power
/// is pinned to the ambient variable count).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: BTreeMap<i64, BigInt>,
    denom_power: u32,
}

impl HilbertSeries {
    pub fn zero(denom_power: u32) -> Self {
        HilbertSeries { numerator: BTreeMap::new(), denom_power }
    }

    pub fn from_numerator(numerator: BTreeMap<i64, BigInt>, denom_power: u32) -> Self {
        let numerator = numerator.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        HilbertSeries { numerator, denom_power }
    }

    /// Series of a twisted free module ⊕_j R(-a_j): numerator Σ_j t^{a_j}.
    pub fn from_twists(twists: &[i64], denom_power: u32) -> Self {
        let mut numerator: BTreeMap<i64, BigInt> = BTreeMap::new();
        for &a in twists {
            *numerator.entry(a).or_insert_with(BigInt::zero) += 1;
        }
        HilbertSeries::from_numerator(numerator, denom_power)
    }

    pub fn numerator(&self) -> &BTreeMap<i64, BigInt> {
        &self.numerator
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.denom_power, other.denom_power);
        let mut numerator = self.numerator.clone();
        for (a, c) in &other.numerator {
            let e = numerator.entry(*a).or_insert_with(BigInt::zero);
            *e += c;
        }
        HilbertSeries::from_numerator(numerator, self.denom_power)
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(a, c)| (*a, -c)).collect(),
            denom_power: self.denom_power,
        }
    }

    /// Shift by t^s: the series of M(-s) when this is the series of M.
    pub fn shift(&self, s: i64) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(a, c)| (a + s, c.clone())).collect(),
            denom_power: self.denom_power,
        }
    }

    /// Coefficient of t^nu in the power-series expansion: the graded
    /// dimension at degree nu.
    pub fn evaluate(&self, nu: i64) -> BigInt {
        let n = self.denom_power as i64;
        let mut acc = BigInt::zero();
        for (a, c) in &self.numerator {
            let d = nu - a;
            if d < 0 {
                continue;
            }
            acc += c * binomial(d + n - 1, n - 1);
        }
        acc
    }

    /// Multiplicity of the root t=1 in the numerator; the Krull dimension of
    /// a module with this series is denom_power minus this count.
    pub fn vanishing_order_at_one(&self) -> u32 {
        if self.is_zero() {
            return self.denom_power;
        }
        let mut cur = self.numerator.clone();
        let mut k = 0;
        while k < self.denom_power {
            let total: BigInt = cur.values().sum();
            if !total.is_zero() {
                break;
            }
            cur = divide_by_one_minus_t(&cur);
            k += 1;
        }
        k
    }

    /// Krull dimension of a module with this series (0 for the zero module).
    pub fn dimension(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            self.denom_power - self.vanishing_order_at_one()
        }
    }

    /// The Hilbert polynomial: agrees with evaluate(nu) for all large nu.
    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        let n = self.denom_power as usize;
        let mut coeffs = vec![BigRational::zero(); n.max(1)];
        for (a, c) in &self.numerator {
            // binomial(nu - a + n - 1, n - 1) as a polynomial in nu
            let p = binomial_polynomial(-a + n as i64 - 1, n.saturating_sub(1));
            for (i, q) in p.iter().enumerate() {
                coeffs[i] += q * BigRational::from(c.clone());
            }
        }
        HilbertPolynomial { coeffs }
    }

    /// Largest numerator exponent; degrees above (max_exponent - denom_power
    /// worth of slack) are governed by the Hilbert polynomial.
    pub fn max_exponent(&self) -> Option<i64> {
        self.numerator.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.numerator.keys().next().copied()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.numerator {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if abs.is_one() && *a != 0 {
                // skip coefficient
            } else {
                write!(f, "{abs}")?;
                if *a != 0 {
                    write!(f, "*")?;
                }
            }
            if *a != 0 {
                write!(f, "t^{a}")?;
            }
        }
        write!(f, " / (1-t)^{}", self.denom_power)
    }
}

fn divide_by_one_minus_t(num: &BTreeMap<i64, BigInt>) -> BTreeMap<i64, BigInt> {
    // N(t) = (1-t) Q(t): q_a = Σ_{b <= a} n_b, valid when Σ n_b = 0
    let mut out = BTreeMap::new();
    let mut acc = BigInt::zero();
    let keys: Vec<i64> = num.keys().copied().collect();
    let (lo, hi) = (keys[0], keys[keys.len() - 1]);
    for a in lo..hi {
        if let Some(c) = num.get(&a) {
            acc += c;
        }
        if !acc.is_zero() {
            out.insert(a, acc.clone());
        }
    }
    out
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficients of binomial(nu + off, k) as a polynomial in nu.
fn binomial_polynomial(off: i64, k: usize) -> Vec<BigRational> {
    // product_{i=0..k-1} (nu + off - i) / k!
    let mut poly = vec![BigRational::one()];
    for i in 0..k {
        let c = BigRational::from(BigInt::from(off - i as i64));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (d, a) in poly.iter().enumerate() {
            next[d] += a * &c;
            next[d + 1] += a;
        }
        poly = next;
    }
    let mut fact = BigRational::one();
    for i in 1..=k {
        fact *= BigRational::from(BigInt::from(i as i64));
    }
    for a in poly.iter_mut() {
        *a /= &fact;
    }
    poly
}

/// A numerical polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn evaluate(&self, nu: i64) -> BigRational {
        let x = BigRational::from(BigInt::from(nu));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match d {
                0 => format!("{c}"),
                1 => format!("{c}*v"),
                _ => format!("{c}*v^{d}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_ring_series() {
        // R = k[x,y,z]: numerator 1
        let s = HilbertSeries::from_twists(&[0], 3);
        assert_eq!(s.evaluate(0), BigInt::from(1));
        assert_eq!(s.evaluate(1), BigInt::from(3));
        assert_eq!(s.evaluate(4), BigInt::from(15));
        assert_eq!(s.evaluate(-1), BigInt::from(0));
        assert_eq!(s.dimension(), 3);
    }

    #[test]
    fn twisted_free() {
        // R(-2) in 3 vars: t^2/(1-t)^3
        let s = HilbertSeries::from_twists(&[2], 3);
        assert_eq!(s.evaluate(1), BigInt::from(0));
        assert_eq!(s.evaluate(2), BigInt::from(1));
        assert_eq!(s.evaluate(3), BigInt::from(3));
    }

    #[test]
    fn hilbert_polynomial_of_free_ring() {
        let s = HilbertSeries::from_twists(&[0], 3);
        let p = s.hilbert_polynomial();
        for nu in 0..8 {
            assert_eq!(
                p.evaluate(nu),
                BigRational::from(s.evaluate(nu)),
                "mismatch at {nu}"
            );
        }
    }

    #[test]
    fn vanishing_order() {
        // numerator (1-t): series of R/(x) has dimension n-1
        let mut num = BTreeMap::new();
        num.insert(0, BigInt::from(1));
        num.insert(1, BigInt::from(-1));
        let s = HilbertSeries::from_numerator(num, 3);
        assert_eq!(s.vanishing_order_at_one(), 1);
        assert_eq!(s.dimension(), 2);
        assert_eq!(s.evaluate(5), BigInt::from(6)); // k[y,z] degree 5
    }
}
