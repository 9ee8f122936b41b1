//! Groebner degenerations: representing weight vectors, the one-parameter
//! flat family over k[t] joining I to its initial ideal, and the check that
//! the degeneration preserves all graded local cohomology.

use crate::cohomology::{local_cohomology_table, CohomologyTable};
use crate::criterion::{constant_cohomology_criterion, CriterionReport};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring, RingRef};
use num_integer::Integer;

fn weight_of(w: &[i64], m: &Monomial) -> i64 {
    m.exps().iter().enumerate().map(|(i, &e)| w[i] * e as i64).sum()
}

/// An integer weight vector w with in_w(I) = in_<(I): on every monomial of
/// degree up to the Groebner degree bound D, w orders exactly as `<` does.
/// Closed forms in base D+1 avoid any feasibility search.
pub fn representing_weight(ideal: &Ideal, order: &MonomialOrder) -> Result<Vec<i64>> {
    let n = ideal.ring().nvars();
    let gb = ideal.groebner_basis_with(order)?;
    let deg_bound: u32 = gb
        .iter()
        .filter_map(|g| g.leading_monomial().map(|_| g.homogeneous_degree().unwrap_or(0)))
        .max()
        .unwrap_or(1)
        .max(1);
    let base = deg_bound as i64 + 1;
    let mut pow = vec![1i64; n + 1];
    for j in 1..=n {
        pow[j] = pow[j - 1]
            .checked_mul(base)
            .ok_or_else(|| Error::Internal("representing weight overflow".into()))?;
    }
    let grevlex_w: Vec<i64> = (0..n).map(|j| pow[n] - pow[j]).collect();
    let w = match order {
        MonomialOrder::GrevLex => grevlex_w,
        MonomialOrder::Lex => (0..n).map(|j| pow[n - j]).collect(),
        MonomialOrder::Weight(u) => {
            if u.len() != n {
                return Err(Error::DimensionMismatch(u.len(), n));
            }
            if separates_leads(&gb, u) {
                u.clone()
            } else {
                // perturb: M*u + grevlex tie-break, M beyond any grevlex gap
                let m = (2 * n as i64)
                    .checked_mul(deg_bound as i64)
                    .and_then(|v| v.checked_mul(pow[n]))
                    .and_then(|v| v.checked_add(1))
                    .ok_or_else(|| Error::Internal("representing weight overflow".into()))?;
                let mut w = Vec::with_capacity(n);
                for j in 0..n {
                    let v = u[j]
                        .checked_mul(m)
                        .and_then(|v| v.checked_add(grevlex_w[j]))
                        .ok_or_else(|| {
                            Error::Internal("representing weight overflow".into())
                        })?;
                    w.push(v);
                }
                w
            }
        }
    };
    if !separates_leads(&gb, &w) {
        return Err(Error::Internal(
            "computed weight does not isolate the leading terms".into(),
        ));
    }
    Ok(w)
}

/// True when w gives the lead monomial of every basis element a strictly
/// larger weight than its other monomials.
fn separates_leads(gb: &[Polynomial], w: &[i64]) -> bool {
    gb.iter().all(|g| {
        let Some(lm) = g.leading_monomial() else { return true };
        let top = weight_of(w, lm);
        g.terms().iter().skip(1).all(|(_, m)| weight_of(w, m) < top)
    })
}

/// The flat family over k[t] interpolating between I (t = 1) and in_w(I)
/// (t = 0), generated by the t-homogenizations of a w-compatible Groebner
/// basis. The parameter t carries degree 0, so the family generators live
/// in R[t] without a standard grading and are stored as raw polynomials.
#[derive(Clone, Debug)]
pub struct FamilyIdeal {
    base: RingRef,
    ring_t: RingRef,
    generators: Vec<Polynomial>,
    weight: Vec<i64>,
}

pub fn family_ideal(ideal: &Ideal, w: &[i64]) -> Result<FamilyIdeal> {
    let base = ideal.ring().clone();
    let n = base.nvars();
    if w.len() != n {
        return Err(Error::DimensionMismatch(w.len(), n));
    }
    let gb = ideal.groebner_basis_with(&MonomialOrder::Weight(w.to_vec()))?;
    // t-exponent of each monomial: weight gap below the lead
    let mut homogenized: Vec<Vec<(usize, i64)>> = Vec::with_capacity(gb.len());
    let mut gap_gcd: i64 = 0;
    for g in gb.iter() {
        let lm = g.leading_monomial().unwrap();
        let top = weight_of(w, lm);
        let mut gaps = Vec::with_capacity(g.terms().len());
        for (k, (_, m)) in g.terms().iter().enumerate() {
            let gap = top - weight_of(w, m);
            if gap <= 0 && k > 0 {
                return Err(Error::NonMonomialInitialForm(g.to_string()));
            }
            gap_gcd = gap_gcd.gcd(&gap);
            gaps.push((k, gap));
        }
        homogenized.push(gaps);
    }
    let scale = gap_gcd.max(1);
    let mut names: Vec<String> = base.vars.clone();
    let mut t_name = "t".to_string();
    while names.contains(&t_name) {
        t_name.push('t');
    }
    names.push(t_name);
    let ring_t = Ring::new(names, base.field, MonomialOrder::GrevLex)?;
    let mut generators = Vec::with_capacity(gb.len());
    for (g, gaps) in gb.iter().zip(&homogenized) {
        let mut terms = Vec::with_capacity(gaps.len());
        for &(k, gap) in gaps {
            let (c, m) = &g.terms()[k];
            let e = u32::try_from(gap / scale).map_err(|_| Error::ExponentOverflow)?;
            let mut exps = m.exps().to_vec();
            exps.push(e);
            terms.push((c.clone(), Monomial::new(exps)));
        }
        generators.push(Polynomial::from_terms(&ring_t, terms));
    }
    Ok(FamilyIdeal { base, ring_t, generators, weight: w.to_vec() })
}

impl FamilyIdeal {
    pub fn base_ring(&self) -> &RingRef {
        &self.base
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring_t
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    /// The fiber at t = 0: only the weight-maximal terms survive.
    pub fn special_fiber(&self) -> Result<Ideal> {
        self.fiber_terms(|e| if e == 0 { Some(()) } else { None })
    }

    /// The fiber at t = 1: forget the t exponents.
    pub fn general_fiber(&self) -> Result<Ideal> {
        self.fiber_terms(|_| Some(()))
    }

    fn fiber_terms(&self, keep: impl Fn(u32) -> Option<()>) -> Result<Ideal> {
        let n = self.base.nvars();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .filter_map(|(c, m)| {
                        keep(m.exp(n)).map(|()| {
                            (c.clone(), Monomial::new(m.exps()[..n].to_vec()))
                        })
                    })
                    .collect();
                Polynomial::from_terms(&self.base, terms)
            })
            .collect();
        Ideal::new(self.base.clone(), gens)
    }
}

/// The full verdict on the degeneration of I onto in_<(I): both cohomology
/// tables, their exact comparison, the semicontinuity sanity check, and the
/// criterion evaluated at the special fiber.
#[derive(Clone, Debug)]
pub struct DegenerationReport {
    pub weight: Vec<i64>,
    pub initial_ideal: Ideal,
    pub table_general: CohomologyTable,
    pub table_special: CohomologyTable,
    pub tables_equal: bool,
    pub semicontinuity_ok: bool,
    pub criterion: CriterionReport,
}

pub fn verify_constant_cohomology(
    ideal: &Ideal,
    order: &MonomialOrder,
) -> Result<DegenerationReport> {
    let weight = representing_weight(ideal, order)?;
    let initial = ideal.initial_ideal(order)?;
    let family = family_ideal(ideal, &weight)?;
    if !family.special_fiber()?.equals(&initial)? {
        return Err(Error::Internal(
            "family fiber at t=0 differs from the initial ideal".into(),
        ));
    }
    if !family.general_fiber()?.equals(ideal)? {
        return Err(Error::Internal(
            "family fiber at t=1 differs from the general fiber".into(),
        ));
    }
    let table_general = local_cohomology_table(ideal)?;
    let table_special = local_cohomology_table(&initial)?;
    let tables_equal = table_general.same_tables(&table_special);
    let semicontinuity_ok = table_special.dominates(&table_general);
    let criterion = constant_cohomology_criterion(&initial)?;
    Ok(DegenerationReport {
        weight,
        initial_ideal: initial,
        table_general,
        table_special,
        tables_equal,
        semicontinuity_ok,
        criterion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn ring(names: &[&str]) -> RingRef {
        Ring::new(
            names.iter().map(|s| s.to_string()).collect(),
            FieldSpec::Rational,
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    fn mono(r: &RingRef, e: &[u32]) -> Polynomial {
        Polynomial::monomial(r, Monomial::new(e.to_vec()))
    }

    fn twisted_cubic(r: &RingRef) -> Ideal {
        // 2x2 minors of [x y z; y z w]
        let xz = mono(r, &[1, 0, 1, 0]);
        let y2 = mono(r, &[0, 2, 0, 0]);
        let xw = mono(r, &[1, 0, 0, 1]);
        let yz = mono(r, &[0, 1, 1, 0]);
        let yw = mono(r, &[0, 1, 0, 1]);
        let z2 = mono(r, &[0, 0, 2, 0]);
        Ideal::new(
            r.clone(),
            vec![
                xz.sub(&y2).unwrap(),
                xw.sub(&yz).unwrap(),
                yw.sub(&z2).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn weights_reproduce_initial_ideals() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = twisted_cubic(&r);
        for order in [
            MonomialOrder::GrevLex,
            MonomialOrder::Lex,
            MonomialOrder::Weight(vec![5, 3, 2, 1]),
        ] {
            let w = representing_weight(&i, &order).unwrap();
            let via_weight = i.initial_ideal(&MonomialOrder::Weight(w.clone())).unwrap();
            let direct = i.initial_ideal(&order).unwrap();
            assert!(via_weight.equals(&direct).unwrap(), "{order:?}");
        }
    }

    #[test]
    fn family_fibers() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = twisted_cubic(&r);
        let order = MonomialOrder::GrevLex;
        let w = representing_weight(&i, &order).unwrap();
        let fam = family_ideal(&i, &w).unwrap();
        assert!(fam.special_fiber().unwrap().equals(&i.initial_ideal(&order).unwrap()).unwrap());
        assert!(fam.general_fiber().unwrap().equals(&i).unwrap());
        // the deformation parameter genuinely appears
        assert!(fam.generators().iter().any(|g| {
            g.terms().iter().any(|(_, m)| m.exp(4) > 0)
        }));
    }

    #[test]
    fn monomial_ideal_gives_trivial_family() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::new(r.clone(), vec![mono(&r, &[1, 2, 0]), mono(&r, &[1, 0, 1])]).unwrap();
        let w = representing_weight(&i, &MonomialOrder::GrevLex).unwrap();
        let fam = family_ideal(&i, &w).unwrap();
        assert!(fam.special_fiber().unwrap().equals(&i).unwrap());
        assert!(fam.general_fiber().unwrap().equals(&i).unwrap());
    }

    #[test]
    fn ties_are_rejected() {
        let r = ring(&["x", "y"]);
        let x2 = mono(&r, &[2, 0]);
        let y2 = mono(&r, &[0, 2]);
        let i = Ideal::new(r, vec![x2.sub(&y2).unwrap()]).unwrap();
        assert!(matches!(
            family_ideal(&i, &[1, 1]),
            Err(Error::NonMonomialInitialForm(_))
        ));
    }

    #[test]
    fn degeneration_report_consistency() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = twisted_cubic(&r);
        let report = verify_constant_cohomology(&i, &MonomialOrder::GrevLex).unwrap();
        assert!(report.semicontinuity_ok);
        assert!(report.initial_ideal.is_monomial());
        // semicontinuity forces equality whenever the criterion passes
        if report.criterion.pass {
            assert!(report.tables_equal);
        }
    }
}
