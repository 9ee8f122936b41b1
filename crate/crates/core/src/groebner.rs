//! Buchberger's algorithm and normal forms for homogeneous ideals.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};

/// Full normal form of `f` against `basis`: the remainder has no term
/// divisible by any basis leading monomial.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut rem = Polynomial::zero(&ring);
    let mut work = f.clone();
    'outer: while let Some((c, m)) = work.leading_term().map(|(c, m)| (c.clone(), m.clone())) {
        for g in basis {
            let (gc, gm) = match g.leading_term() {
                Some(t) => t,
                None => continue,
            };
            if let Some(q) = m.checked_div(gm) {
                let factor = c.div(gc);
                work = work.add_unchecked(&g.mul_term(&factor.neg(), &q));
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        rem = rem.add_unchecked(&Polynomial::term(&ring, c, m.clone()));
        work = work.add_unchecked(&Polynomial::term(&ring, work.leading_term().unwrap().0.neg(), m));
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fc, fm) = f.leading_term().unwrap();
    let (gc, gm) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = l.checked_div(fm).unwrap();
    let b = l.checked_div(gm).unwrap();
    f.mul_term(&fc.inv(), &a)
        .add_unchecked(&g.mul_term(&gc.inv().neg(), &b))
}

/// Reduced Groebner basis of the homogeneous ideal generated by `gens`,
/// under the generators' ambient ring order. Deterministic: normal pair
/// selection (minimal lcm degree, ties by pair index), output sorted by
/// decreasing leading monomial, monic, tails reduced.
pub fn buchberger(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ring: RingRef = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Ok(Vec::new()),
    };
    for g in gens {
        if g.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(format!(": {g}")));
        }
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    // pending pairs (i, j) with i < j
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        // normal strategy: minimal lcm degree, ties by pair index order
        let mut best = 0;
        let mut best_deg = pair_lcm_degree(&basis, pairs[0]);
        for (k, &p) in pairs.iter().enumerate().skip(1) {
            let d = pair_lcm_degree(&basis, p);
            if d < best_deg || (d == best_deg && p < pairs[best]) {
                best = k;
                best_deg = d;
            }
        }
        let (i, j) = pairs.remove(best);
        let (fi, fj) = (&basis[i], &basis[j]);
        let (mi, mj) = (
            fi.leading_monomial().unwrap().clone(),
            fj.leading_monomial().unwrap().clone(),
        );
        // Buchberger's first criterion: coprime leading terms
        if mi.is_coprime(&mj) {
            continue;
        }
        // chain criterion
        let l = mi.lcm(&mj);
        let mut chained = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let mk = g.leading_monomial().unwrap();
            if mk.divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
            {
                chained = true;
                break;
            }
        }
        if chained {
            continue;
        }
        let s = s_polynomial(fi, fj);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            let n = basis.len();
            for k in 0..n {
                pairs.push((k, n));
            }
            basis.push(r);
        }
    }

    Ok(reduce_basis(basis))
}

/// Interreduces a Groebner basis: drops redundant elements, reduces the
/// tails, sorts by decreasing leading monomial.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // minimal: drop any element whose lead is divisible by another lead
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let mi = basis[i].leading_monomial().unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let mj = basis[j].leading_monomial().unwrap();
            if mj.divides(&mi) && (mj != &mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // tail reduction
    let mut out: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        out.push(normal_form(&basis[i], &others).monic());
    }
    let ring = out[0].ring().clone();
    out.sort_by(|a, b| {
        ring.order
            .compare_unchecked(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    out
}

fn pair_lcm_degree(basis: &[Polynomial], (i, j): (usize, usize)) -> u32 {
    basis[i]
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].leading_monomial().unwrap())
        .total_degree()
}

/// Leading monomials of a reduced Groebner basis.
pub fn leading_monomials(gb: &[Polynomial]) -> Vec<Monomial> {
    gb.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
}

/// Checks every S-polynomial reduces to zero (test support).
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            let s = s_polynomial(&basis[i], &basis[j]);
            if !normal_form(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Minimal generators of a monomial ideal given by (possibly redundant)
/// monomial generators, sorted decreasing in the ambient order.
pub fn minimalize_monomials(ring: &RingRef, mons: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for m in mons {
        if !mons.iter().any(|o| o != m && o.divides(m)) && !out.contains(m) {
            out.push(m.clone());
        }
    }
    // duplicates where equal monomials appear twice: the contains check above
    // keeps the first copy only
    out.sort_by(|a, b| ring.order.compare_unchecked(b, a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::poly::Ring;
    use crate::scalar::FieldSpec;
    use std::cmp::Ordering;

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

    #[test]
    fn monomial_ideal_is_own_gb() {
        let r = ring3();
        // I1 = (x^2, y^2, xy, xz, yz)
        let gens = vec![
            mono(&r, &[2, 0, 0]),
            mono(&r, &[0, 2, 0]),
            mono(&r, &[1, 1, 0]),
            mono(&r, &[1, 0, 1]),
            mono(&r, &[0, 1, 1]),
        ];
        let gb = buchberger(&gens).unwrap();
        assert_eq!(gb.len(), 5);
        assert!(is_groebner_basis(&gb));
        // x^2 reduces to zero, z^3 survives
        assert!(normal_form(&mono(&r, &[2, 0, 0]), &gb).is_zero());
        let z3 = mono(&r, &[0, 0, 3]);
        assert_eq!(normal_form(&z3, &gb), z3);
    }

    #[test]
    fn principal_ideal() {
        let r = ring3();
        let f = mono(&r, &[2, 0, 0]).sub(&mono(&r, &[0, 1, 1])).unwrap();
        let gb = buchberger(&[f.clone()]).unwrap();
        assert_eq!(gb, vec![f]);
    }

    #[test]
    fn twisted_cubic_like_completion() {
        let r = ring3();
        // (xy - z^2, y^2 - xz): S-polynomial completion needed
        let f = mono(&r, &[1, 1, 0]).sub(&mono(&r, &[0, 0, 2])).unwrap();
        let g = mono(&r, &[0, 2, 0]).sub(&mono(&r, &[1, 0, 1])).unwrap();
        let gb = buchberger(&[f, g]).unwrap();
        assert!(is_groebner_basis(&gb));
        assert!(gb.len() >= 3);
    }

    #[test]
    fn normal_form_linear_and_idempotent() {
        let r = ring3();
        let gb = buchberger(&[mono(&r, &[1, 1, 0]), mono(&r, &[0, 0, 2])]).unwrap();
        let f = mono(&r, &[1, 1, 1]).add(&mono(&r, &[0, 2, 1])).unwrap();
        let n1 = normal_form(&f, &gb);
        assert_eq!(normal_form(&n1, &gb), n1);
        let g = mono(&r, &[3, 0, 0]);
        let sum_nf = normal_form(&f.add(&g).unwrap(), &gb);
        assert_eq!(sum_nf, n1.add(&normal_form(&g, &gb)).unwrap());
    }

    #[test]
    fn deterministic_output() {
        let r = ring3();
        let f = mono(&r, &[1, 1, 0]).sub(&mono(&r, &[0, 0, 2])).unwrap();
        let g = mono(&r, &[0, 2, 0]).sub(&mono(&r, &[1, 0, 1])).unwrap();
        let gb1 = buchberger(&[f.clone(), g.clone()]).unwrap();
        let gb2 = buchberger(&[f, g]).unwrap();
        assert_eq!(gb1, gb2);
        for w in gb1.windows(2) {
            assert_eq!(
                r.order.compare_unchecked(
                    w[0].leading_monomial().unwrap(),
                    w[1].leading_monomial().unwrap()
                ),
                Ordering::Greater
            );
        }
    }
}
