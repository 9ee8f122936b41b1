//! Randomized property suites cross-checking independent engines against
//! each other. Seeds are fixed, so every run exercises the same corpus.

use fiberfull::cohomology::{local_cohomology_table, stratification_data};
use fiberfull::criterion::constant_cohomology_criterion;
use fiberfull::hochster::hochster_table;
use fiberfull::ideal::Ideal;
use fiberfull::monomial::{Monomial, MonomialOrder};
use fiberfull::pieces::{monomials_of_degree, ModulePieces};
use fiberfull::poly::{Polynomial, Ring, RingRef};
use fiberfull::resolution::{free_resolution, GradedModulePresentation};
use fiberfull::scalar::{FieldSpec, Scalar};
use fiberfull::tangent::fiber_full_tangent;
use num_bigint::BigInt;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

const CASES: usize = 200;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_ring(rng: &mut ChaCha8Rng, max_n: usize) -> RingRef {
    let names = ["x", "y", "z", "u", "v", "w", "s"];
    let n = rng.gen_range(2..=max_n);
    let field = if rng.gen_bool(0.3) {
        FieldSpec::Prime(*[2u32, 3, 101].choose(rng).unwrap())
    } else {
        FieldSpec::Rational
    };
    Ring::new(
        names[..n].iter().map(|s| s.to_string()).collect(),
        field,
        MonomialOrder::GrevLex,
    )
    .unwrap()
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Monomial {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let mut exps = vec![0u32; n];
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let m = Monomial::new(exps);
        if !m.is_one() {
            return m;
        }
    }
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng, r: &RingRef, max_gens: usize) -> Ideal {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k)
        .map(|_| Polynomial::monomial(r, random_monomial(rng, r.nvars(), 4)))
        .collect();
    Ideal::new(r.clone(), gens).unwrap()
}

fn random_squarefree_ideal(rng: &mut ChaCha8Rng, r: &RingRef, max_gens: usize) -> Ideal {
    let n = r.nvars();
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=n);
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(rng);
            let mut exps = vec![0u32; n];
            for &v in &verts[..size] {
                exps[v] = 1;
            }
            Polynomial::monomial(r, Monomial::new(exps))
        })
        .collect();
    Ideal::new(r.clone(), gens).unwrap()
}

/// A homogeneous perturbation of a random monomial ideal: each generator
/// optionally gains grevlex-smaller same-degree tails.
fn random_polynomial_ideal(rng: &mut ChaCha8Rng, r: &RingRef, max_gens: usize) -> Ideal {
    let k = rng.gen_range(1..=max_gens);
    let mut gens = Vec::with_capacity(k);
    for _ in 0..k {
        let lead = random_monomial(rng, r.nvars(), 4);
        let mut f = Polynomial::monomial(r, lead.clone());
        let smaller: Vec<Monomial> = monomials_of_degree(r, lead.total_degree() as i64)
            .into_iter()
            .filter(|m| r.order.compare_unchecked(m, &lead) == Ordering::Less)
            .collect();
        for _ in 0..rng.gen_range(0..=2) {
            if let Some(tail) = smaller.choose(rng) {
                let c = *[1i64, -1, 2].choose(rng).unwrap();
                let t = Polynomial::term(r, Scalar::from_i64(r.field, c), tail.clone());
                f = f.add(&t).unwrap();
            }
        }
        gens.push(f);
    }
    Ideal::new(r.clone(), gens).unwrap()
}

#[test]
fn macaulay_equality() {
    // the staircase Hilbert series agrees with brute-force linear algebra
    // in every degree
    let mut rng = rng(101);
    for case in 0..CASES {
        let r = random_ring(&mut rng, 5);
        let i = if case % 2 == 0 {
            random_monomial_ideal(&mut rng, &r, 6)
        } else {
            random_polynomial_ideal(&mut rng, &r, 4)
        };
        let series = i.quotient_hilbert_series().unwrap();
        let pieces = ModulePieces::new(GradedModulePresentation::quotient_ring(&i));
        for d in 0..6 {
            assert_eq!(
                BigInt::from(pieces.dim(d)),
                series.evaluate(d),
                "case {case}: degree {d} of {:?}",
                gens(&i)
            );
        }
    }
}

#[test]
fn resolutions_are_exact_complexes() {
    let mut rng = rng(102);
    for case in 0..CASES {
        let r = random_ring(&mut rng, 4);
        let i = if case % 2 == 0 {
            random_monomial_ideal(&mut rng, &r, 5)
        } else {
            random_polynomial_ideal(&mut rng, &r, 4)
        };
        let pres = GradedModulePresentation::quotient_ring(&i);
        let res = free_resolution(&pres, true).unwrap();
        assert!(res.is_complex().unwrap(), "case {case}: d^2 != 0 for {:?}", gens(&i));
        assert!(res.length() <= r.nvars(), "case {case}: too long for {:?}", gens(&i));
        // exactness certificate: the alternating sum of the free modules
        // telescopes to the Hilbert series of the quotient
        assert_eq!(
            res.hilbert_series(),
            i.quotient_hilbert_series().unwrap(),
            "case {case}: Euler characteristic off for {:?}",
            gens(&i)
        );
        // minimality: no unit entries anywhere
        for map in res.maps() {
            for c in 0..map.ncols() {
                for row in 0..map.nrows() {
                    assert_ne!(
                        map.entry(row, c).homogeneous_degree(),
                        Some(0),
                        "case {case}: non-minimal entry for {:?}",
                        gens(&i)
                    );
                }
            }
        }
    }
}

#[test]
fn duality_vanishing_window() {
    // Grothendieck vanishing and nonvanishing: rows of the table are zero
    // outside [depth, dim] and nonzero at both ends
    let mut rng = rng(103);
    for case in 0..CASES {
        let r = random_ring(&mut rng, 4);
        let i = random_monomial_ideal(&mut rng, &r, 5);
        let n = r.nvars();
        let pres = GradedModulePresentation::quotient_ring(&i);
        let res = free_resolution(&pres, true).unwrap();
        let depth = n - res.length();
        let dim = i.quotient_hilbert_series().unwrap().dimension() as usize;
        let table = local_cohomology_table(&i).unwrap();
        for idx in 0..=n {
            let zero = table.is_row_zero(idx);
            if idx < depth || idx > dim {
                assert!(zero, "case {case}: h_{idx} should vanish for {:?}", gens(&i));
            }
        }
        assert!(
            !table.is_row_zero(depth),
            "case {case}: h_depth = h_{depth} should be nonzero for {:?}",
            gens(&i)
        );
        assert!(
            !table.is_row_zero(dim),
            "case {case}: h_dim = h_{dim} should be nonzero for {:?}",
            gens(&i)
        );
    }
}

#[test]
fn euler_identity_holds() {
    // stratification_data internally verifies g - Σ(-1)^i h_i = P across
    // the widened window and errors on any mismatch
    let mut rng = rng(104);
    for case in 0..CASES {
        let r = random_ring(&mut rng, 4);
        let i = if case % 2 == 0 {
            random_monomial_ideal(&mut rng, &r, 5)
        } else {
            random_polynomial_ideal(&mut rng, &r, 4)
        };
        let data = stratification_data(&i).unwrap();
        // and the polynomial really is the Hilbert polynomial: far enough
        // out it matches the Hilbert function
        let probe = 9;
        assert_eq!(
            num_rational::BigRational::from(data.g.evaluate(probe)),
            data.polynomial.evaluate(probe),
            "case {case}: Hilbert polynomial off for {:?}",
            gens(&i)
        );
    }
}

#[test]
fn semicontinuity_under_degeneration() {
    let mut rng = rng(105);
    for case in 0..CASES {
        let r = random_ring(&mut rng, 4);
        let j = random_polynomial_ideal(&mut rng, &r, 4);
        let init = j.initial_ideal(&MonomialOrder::GrevLex).unwrap();
        let special = local_cohomology_table(&init).unwrap();
        let general = local_cohomology_table(&j).unwrap();
        assert!(
            special.dominates(&general),
            "case {case}: semicontinuity fails for {:?}",
            gens(&j)
        );
    }
}

#[test]
fn hochster_agrees_with_duality() {
    let mut rng = rng(106);
    for case in 0..CASES {
        let names = ["x1", "x2", "x3", "x4", "x5", "x6", "x7"];
        let n = rng.gen_range(2..=7usize);
        let r = Ring::new(
            names[..n].iter().map(|s| s.to_string()).collect(),
            FieldSpec::Rational,
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let i = random_squarefree_ideal(&mut rng, &r, 5);
        let hoch = hochster_table(&i).unwrap();
        let dual = local_cohomology_table(&i).unwrap();
        assert!(
            hoch.same_tables(&dual),
            "case {case}: Hochster/duality mismatch for {:?}",
            gens(&i)
        );
    }
}

#[test]
fn low_dimensional_squarefree_fibers_pass() {
    // squarefree monomial special fibers with dim R/I <= 2 always satisfy
    // the criterion
    let mut rng = rng(107);
    let mut tested = 0;
    let mut attempts = 0;
    while tested < CASES {
        attempts += 1;
        assert!(attempts < 40 * CASES, "generator rejected too many samples");
        let r = random_ring(&mut rng, 5);
        let i = random_squarefree_ideal(&mut rng, &r, 6);
        if i.quotient_hilbert_series().unwrap().dimension() > 2 {
            continue;
        }
        tested += 1;
        let rep = constant_cohomology_criterion(&i).unwrap();
        assert!(rep.pass, "dim <= 2 squarefree fiber fails: {:?}", gens(&i));
    }
}

#[test]
fn criterion_pass_forces_flat_tangent_space() {
    // whenever the criterion passes, every Hilbert scheme tangent vector is
    // already fiber-full: dim T Fib = dim T Hilb
    let mut rng = rng(108);
    let mut tested = 0;
    let mut attempts = 0;
    while tested < CASES {
        attempts += 1;
        assert!(attempts < 40 * CASES, "generator rejected too many samples");
        let r = random_ring(&mut rng, 4);
        let i = random_monomial_ideal(&mut rng, &r, 4);
        let rep = constant_cohomology_criterion(&i).unwrap();
        if !rep.pass {
            continue;
        }
        tested += 1;
        let tangent = fiber_full_tangent(&i).unwrap();
        assert_eq!(
            tangent.dim_fib, tangent.dim_hs,
            "criterion passed but tangent spaces differ for {:?}",
            gens(&i)
        );
    }
}

#[test]
fn initial_ideals_are_order_independent_objects() {
    // reduced Groebner bases are canonical: recomputing from permuted
    // generators gives the identical ideal, and in(in(I)) = in(I)
    let mut rng = rng(109);
    for case in 0..CASES {
        let r = random_ring(&mut rng, 4);
        let i = random_polynomial_ideal(&mut rng, &r, 4);
        let mut shuffled = i.generators().to_vec();
        shuffled.shuffle(&mut rng);
        let i2 = Ideal::new(r.clone(), shuffled).unwrap();
        assert!(i.equals(&i2).unwrap(), "case {case}: equality fails for {:?}", gens(&i));
        let init = i.initial_ideal(&MonomialOrder::GrevLex).unwrap();
        let init2 = init.initial_ideal(&MonomialOrder::GrevLex).unwrap();
        assert!(init.equals(&init2).unwrap(), "case {case}: in not idempotent");
        // Hilbert series is degeneration-invariant
        assert_eq!(
            i.quotient_hilbert_series().unwrap(),
            init.quotient_hilbert_series().unwrap(),
            "case {case}: series changed under degeneration"
        );
    }
}

fn gens(i: &Ideal) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}
