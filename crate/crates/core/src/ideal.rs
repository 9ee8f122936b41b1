//! Homogeneous ideals with cached reduced Groebner bases, initial ideals,
//! and Hilbert series of quotients.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, minimalize_monomials, normal_form};
use crate::hilbert::HilbertSeries;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, RingRef};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// A homogeneous ideal. The reduced Groebner basis per monomial order is
/// computed once and cached; readers share the cached value.
#[derive(Debug)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
    gb_cache: Mutex<Vec<(MonomialOrder, Arc<Vec<Polynomial>>)>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            gb_cache: Mutex::new(self.gb_cache.lock().unwrap().clone()),
        }
    }
}

impl Ideal {
    pub fn new(ring: RingRef, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if g.ring() != &ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!(": {g}")));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, generators, gb_cache: Mutex::new(Vec::new()) })
    }

    pub fn zero(ring: RingRef) -> Ideal {
        Ideal { ring, generators: Vec::new(), gb_cache: Mutex::new(Vec::new()) }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Groebner basis under the ring's ambient order.
    pub fn groebner_basis(&self) -> Result<Arc<Vec<Polynomial>>> {
        self.groebner_basis_with(&self.ring.order.clone())
    }

    /// Reduced Groebner basis under an arbitrary order, cached per order.
    pub fn groebner_basis_with(&self, order: &MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        {
            let cache = self.gb_cache.lock().unwrap();
            if let Some((_, gb)) = cache.iter().find(|(o, _)| o == order) {
                return Ok(gb.clone());
            }
        }
        let sorted_ring = self.ring.with_order(order.clone());
        let gens: Vec<Polynomial> =
            self.generators.iter().map(|g| g.into_ring(&sorted_ring)).collect();
        let gb = Arc::new(buchberger(&gens)?);
        let mut cache = self.gb_cache.lock().unwrap();
        if let Some((_, g)) = cache.iter().find(|(o, _)| o == order) {
            return Ok(g.clone());
        }
        cache.push((order.clone(), gb.clone()));
        Ok(gb)
    }

    /// Normal form against the cached reduced basis of the ambient order.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let gb = self.groebner_basis()?;
        let nf = normal_form(&f.into_ring(gb_ring(&gb, &self.ring)), &gb);
        Ok(nf.into_ring(&self.ring))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// The monomial ideal of leading terms under `order`.
    pub fn initial_ideal(&self, order: &MonomialOrder) -> Result<Ideal> {
        let gb = self.groebner_basis_with(order)?;
        let mons: Vec<Monomial> =
            gb.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let mons = minimalize_monomials(&self.ring, &mons);
        let gens = mons.into_iter().map(|m| Polynomial::monomial(&self.ring, m)).collect();
        Ideal::new(self.ring.clone(), gens)
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.is_monomial())
    }

    /// Minimal monomial generators, when the ideal is monomial.
    pub fn monomial_generators(&self) -> Result<Vec<Monomial>> {
        if !self.is_monomial() {
            return Err(Error::NotMonomial);
        }
        let mons: Vec<Monomial> = self
            .generators
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        Ok(minimalize_monomials(&self.ring, &mons))
    }

    pub fn is_squarefree_monomial(&self) -> bool {
        self.is_monomial() && self.generators.iter().all(|g| g.leading_monomial().unwrap().is_squarefree())
    }

    /// Exact Hilbert series of R/I, via the staircase of the initial ideal
    /// under the ambient order.
    pub fn quotient_hilbert_series(&self) -> Result<HilbertSeries> {
        let n = self.ring.nvars() as u32;
        if self.is_zero_ideal() {
            return Ok(HilbertSeries::from_twists(&[0], n));
        }
        let mons = if self.is_monomial() {
            self.monomial_generators()?
        } else {
            self.initial_ideal(&self.ring.order.clone())?.monomial_generators()?
        };
        let num = staircase_numerator(&mons);
        Ok(HilbertSeries::from_numerator(num, n))
    }

    /// Reduced-GB equality of ideals.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let a = self.groebner_basis()?;
        let b = other.groebner_basis()?;
        Ok(*a == *b)
    }

    /// Krull dimension of R/I.
    pub fn quotient_dimension(&self) -> Result<u32> {
        Ok(self.quotient_hilbert_series()?.dimension())
    }
}

fn gb_ring<'a>(gb: &'a [Polynomial], fallback: &'a RingRef) -> &'a RingRef {
    gb.first().map(|g| g.ring()).unwrap_or(fallback)
}

/// Numerator of the Hilbert series of R/(monomial ideal), by the staircase
/// inclusion-exclusion evaluated recursively with colon pruning.
fn staircase_numerator(gens: &[Monomial]) -> BTreeMap<i64, BigInt> {
    let mut one = BTreeMap::new();
    if gens.is_empty() {
        one.insert(0i64, BigInt::from(1));
        return one;
    }
    if gens.iter().any(|m| m.is_one()) {
        return BTreeMap::new();
    }
    let (rest, last) = gens.split_at(gens.len() - 1);
    let pivot = &last[0];
    // colon ideal (rest : pivot), minimalized
    let colon_raw: Vec<Monomial> = rest
        .iter()
        .map(|g| g.checked_div(&g.gcd(pivot)).unwrap())
        .collect();
    let colon = minimal_monomials(&colon_raw);
    let mut num = staircase_numerator(rest);
    let shift = pivot.total_degree() as i64;
    for (a, c) in staircase_numerator(&colon) {
        let e = num.entry(a + shift).or_insert_with(BigInt::zero);
        *e -= c;
    }
    num.retain(|_, c| !c.is_zero());
    num
}

fn minimal_monomials(mons: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for m in mons {
        if out.iter().any(|o| o.divides(m)) {
            continue;
        }
        out.retain(|o| !m.divides(o));
        out.push(m.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use crate::scalar::FieldSpec;

    fn ring3() -> RingRef {
        Ring::new(
            vec!["x".into(), "y".into(), "z".into()],
            FieldSpec::Rational,
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    fn mono(r: &RingRef, e: &[u32]) -> Polynomial {
        Polynomial::monomial(r, Monomial::new(e.to_vec()))
    }

    fn i1(r: &RingRef) -> Ideal {
        Ideal::new(
            r.clone(),
            vec![
                mono(r, &[2, 0, 0]),
                mono(r, &[0, 2, 0]),
                mono(r, &[1, 1, 0]),
                mono(r, &[1, 0, 1]),
                mono(r, &[0, 1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn series_of_free_ring() {
        let r = ring3();
        let i = Ideal::zero(r);
        let s = i.quotient_hilbert_series().unwrap();
        assert_eq!(s, HilbertSeries::from_twists(&[0], 3));
    }

    #[test]
    fn series_of_i1() {
        let r = ring3();
        let s = i1(&r).quotient_hilbert_series().unwrap();
        // g(0)=1, g(1)=3, g(nu)=1 for nu >= 2 (only z^nu survives)
        assert_eq!(s.evaluate(0), BigInt::from(1));
        assert_eq!(s.evaluate(1), BigInt::from(3));
        for nu in 2..8 {
            assert_eq!(s.evaluate(nu), BigInt::from(1), "at {nu}");
        }
    }

    #[test]
    fn series_of_irrelevant_ideal() {
        let r = ring3();
        let i = Ideal::new(
            r.clone(),
            vec![mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0]), mono(&r, &[0, 0, 1])],
        )
        .unwrap();
        let s = i.quotient_hilbert_series().unwrap();
        assert_eq!(s.evaluate(0), BigInt::from(1));
        assert_eq!(s.evaluate(1), BigInt::from(0));
        assert_eq!(s.evaluate(5), BigInt::from(0));
        assert_eq!(s.dimension(), 0);
    }

    #[test]
    fn initial_ideal_of_monomial_is_self() {
        let r = ring3();
        let i = i1(&r);
        let init = i.initial_ideal(&MonomialOrder::GrevLex).unwrap();
        assert!(init.equals(&i).unwrap());
    }

    #[test]
    fn initial_ideal_principal() {
        let r = ring3();
        let f = mono(&r, &[2, 0, 0]).sub(&mono(&r, &[0, 1, 1])).unwrap();
        let i = Ideal::new(r.clone(), vec![f]).unwrap();
        let init = i.initial_ideal(&MonomialOrder::GrevLex).unwrap();
        let expect = Ideal::new(r.clone(), vec![mono(&r, &[2, 0, 0])]).unwrap();
        assert!(init.equals(&expect).unwrap());
    }

    #[test]
    fn macaulay_on_completion_example() {
        let r = ring3();
        let f = mono(&r, &[1, 1, 0]).sub(&mono(&r, &[0, 0, 2])).unwrap();
        let g = mono(&r, &[0, 2, 0]).sub(&mono(&r, &[1, 0, 1])).unwrap();
        let i = Ideal::new(r.clone(), vec![f, g]).unwrap();
        let init = i.initial_ideal(&MonomialOrder::GrevLex).unwrap();
        assert_eq!(
            i.quotient_hilbert_series().unwrap(),
            init.quotient_hilbert_series().unwrap()
        );
    }
}
