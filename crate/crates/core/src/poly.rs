//! Sparse exact multivariate polynomials over a fixed standard-graded ring.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::scalar::{is_negative, FieldSpec, Scalar};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Ring descriptor: variable names, coefficient field and the ambient
/// monomial order. Every variable has degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub vars: Vec<String>,
    pub field: FieldSpec,
    pub order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: Vec<String>, field: FieldSpec, order: MonomialOrder) -> Result<RingRef> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len(), MAX_VARS));
        }
        Ok(Arc::new(Ring { vars, field, order }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Same ring with a different ambient order; values must be re-sorted
    /// when moved across.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(Ring { vars: self.vars.clone(), field: self.field, order })
    }
}

/// A polynomial in canonical form: no zero coefficients, terms strictly
/// decreasing in the ring's ambient order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Scalar, Monomial)>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::term(ring, Scalar::one(ring.field), Monomial::one(ring.nvars()))
    }

    pub fn variable(ring: &RingRef, i: usize) -> Self {
        Polynomial::term(ring, Scalar::one(ring.field), Monomial::variable(ring.nvars(), i))
    }

    pub fn term(ring: &RingRef, c: Scalar, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(c, m)] }
    }

    pub fn monomial(ring: &RingRef, m: Monomial) -> Self {
        Polynomial::term(ring, Scalar::one(ring.field), m)
    }

    /// Builds canonical form from arbitrary (coefficient, monomial) pairs.
    pub fn from_terms(ring: &RingRef, pairs: Vec<(Scalar, Monomial)>) -> Self {
        let mut map: HashMap<Vec<u32>, Scalar> = HashMap::new();
        for (c, m) in pairs {
            assert_eq!(m.nvars(), ring.nvars());
            match map.entry(m.exps().to_vec()) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.insert(s);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Scalar, Monomial)> = map
            .into_iter()
            .map(|(e, c)| (c, Monomial::new(e)))
            .collect();
        terms.sort_by(|a, b| ring.order.compare_unchecked(&b.1, &a.1));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Scalar, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Scalar, Monomial)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Total degree of a homogeneous polynomial; None for 0 or an
    /// inhomogeneous value.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = self.terms.first()?;
        let d = first.1.total_degree();
        if self.terms.iter().all(|(_, m)| m.total_degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        // merge two sorted term lists
        let ord = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.compare_unchecked(&self.terms[i].1, &other.terms[j].1) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].0.add(&other.terms[j].0);
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (c.neg(), m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, m)| (a.mul(c), m.clone())).collect(),
        }
    }

    /// Multiplication by a single term c*m; preserves sortedness.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, t)| (a.mul(c), t.mul(m).expect("exponent overflow")))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut pairs = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, m) in &self.terms {
            for (b, t) in &other.terms {
                pairs.push((a.mul(b), m.mul(t)?));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, pairs))
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((c, _)) => self.scale(&c.inv()),
        }
    }

    /// Substitutes polynomials for variables, landing in `target`.
    /// `images[i]` replaces variable i.
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        for (c, m) in &self.terms {
            let mut t = Polynomial::term(target, c.clone(), Monomial::one(target.nvars()));
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[i])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Re-sorts the terms under a (possibly different) ambient order.
    pub fn into_ring(&self, target: &RingRef) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars());
        assert_eq!(target.field, self.ring.field);
        Polynomial::from_terms(target, self.terms.clone())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let c_abs = if neg { c.neg() } else { c.clone() };
            let show_coeff = !c_abs.is_one() || m.is_one();
            if show_coeff {
                write!(f, "{c_abs}")?;
            }
            let mut first_var = !show_coeff;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", self.ring.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
