//! Ext modules into R via dualized minimal resolutions, graded local
//! cohomology tables through local duality, and the (g, h, P) point data of
//! the stratification.

use crate::error::{Error, Result};
use crate::hilbert::{HilbertPolynomial, HilbertSeries};
use crate::ideal::Ideal;
use crate::module::{FreeModule, GraphBasis, ModPoly};
use crate::resolution::{
    free_resolution, minimal_presentation, FreeResolution, GradedMatrix,
    GradedModulePresentation,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Ext^j_R(M, R) presented from the dualized minimal resolution of M:
/// ker(d_{j+1}ᵀ)/im(d_jᵀ), generators from the kernel, relations from
/// lifted image columns plus kernel syzygies. The result is minimalized.
pub fn ext_module(pres: &GradedModulePresentation, j: usize) -> Result<GradedModulePresentation> {
    let res = free_resolution(pres, true)?;
    ext_from_resolution(&res, j)
}

/// All Ext^j(M, R) for j = 0..=n from a single minimal resolution.
pub fn ext_modules_all(pres: &GradedModulePresentation) -> Result<Vec<GradedModulePresentation>> {
    let res = free_resolution(pres, true)?;
    let n = pres.module.ring().nvars();
    (0..=n).map(|j| ext_from_resolution(&res, j)).collect()
}

pub fn ext_from_resolution(
    res: &FreeResolution,
    j: usize,
) -> Result<GradedModulePresentation> {
    let ring = res.modules()[0].ring().clone();
    if j > res.length() {
        let zero = FreeModule::new(ring, Vec::new());
        return Ok(GradedModulePresentation { module: zero, relations: Vec::new() });
    }
    let dual_fj = FreeModule::new(
        ring.clone(),
        res.modules()[j].twists().iter().map(|t| -t).collect(),
    );
    // generators of ker(d_{j+1}ᵀ) ⊆ F_jᵀ
    let kernel_matrix = match res.map(j + 1) {
        Some(d_next) => d_next.transpose_dual().kernel()?,
        None => GradedMatrix::identity(dual_fj.clone()),
    };
    if kernel_matrix.ncols() == 0 {
        let zero = FreeModule::new(ring, Vec::new());
        return Ok(GradedModulePresentation { module: zero, relations: Vec::new() });
    }
    let gens_module = kernel_matrix.src().clone();
    let graph = GraphBasis::new(kernel_matrix.tgt(), kernel_matrix.columns())?;
    let mut relations: Vec<ModPoly> = Vec::new();
    if j >= 1 {
        let d_t = res.map(j).unwrap().transpose_dual();
        for col in d_t.columns() {
            if col.is_zero() {
                continue;
            }
            let (nf, cofactors) = graph.reduce_with_cofactors(&col)?;
            if !nf.is_zero() {
                return Err(Error::Internal(
                    "image of the dualized differential escapes the kernel".into(),
                ));
            }
            let mut triples = Vec::new();
            for (i, c) in cofactors.iter().enumerate() {
                for (s, m) in c.terms() {
                    triples.push((s.clone(), i, m.clone()));
                }
            }
            let rel = ModPoly::from_terms(&gens_module, triples);
            if !rel.is_zero() {
                relations.push(rel);
            }
        }
    }
    for s in graph.syzygies() {
        let rel = ModPoly::from_terms(
            &gens_module,
            s.terms().iter().map(|(c, p, m)| (c.clone(), *p, m.clone())).collect(),
        );
        if !rel.is_zero() {
            relations.push(rel);
        }
    }
    minimal_presentation(&GradedModulePresentation { module: gens_module, relations })
}

/// The graded local cohomology table of a module M, represented on the
/// finitely generated dual side: h_i(ν) = dim [Ext^{n−i}(M,R)]_{−n−ν}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    n: usize,
    /// ext_series[i] is the Hilbert series of Ext^{n−i}(M, R).
    ext_series: Vec<HilbertSeries>,
    window: (i64, i64),
}

impl CohomologyTable {
    /// Assembles a table directly from the Ext-side series (row i holds the
    /// series of Ext^{n−i}(M,R)).
    pub fn from_ext_series(n: usize, ext_series: Vec<HilbertSeries>) -> CohomologyTable {
        assert_eq!(ext_series.len(), n + 1);
        let window = derive_window(n, &ext_series);
        CohomologyTable { n, ext_series, window }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// h_i(ν) = dim_k [H^i_m(M)]_ν.
    pub fn h(&self, i: usize, nu: i64) -> BigInt {
        if i > self.n {
            return BigInt::zero();
        }
        self.ext_series[i].evaluate(-(self.n as i64) - nu)
    }

    /// The Hilbert series of Ext^{n−i}(M, R).
    pub fn ext_series(&self, i: usize) -> &HilbertSeries {
        &self.ext_series[i]
    }

    pub fn is_row_zero(&self, i: usize) -> bool {
        self.ext_series[i].is_zero()
    }

    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..=self.n).filter(|&i| !self.is_row_zero(i)).collect()
    }

    /// Exact table equality: series equality in every row (ignores the
    /// rendering window).
    pub fn same_tables(&self, other: &CohomologyTable) -> bool {
        self.n == other.n && self.ext_series == other.ext_series
    }

    /// The provable rendering window in ν.
    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn with_window(mut self, lo: i64, hi: i64) -> CohomologyTable {
        self.window = (lo, hi);
        self
    }

    /// Pointwise h_i(ν) ≥ other's over the union of both windows.
    pub fn dominates(&self, other: &CohomologyTable) -> bool {
        if self.n != other.n {
            return false;
        }
        let lo = self.window.0.min(other.window.0);
        let hi = self.window.1.max(other.window.1);
        for i in 0..=self.n {
            for nu in lo..=hi {
                if self.h(i, nu) < other.h(i, nu) {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the cohomology table of a presented module. The window is taken
/// from the Ext twist data so that all nonzero values lie inside it.
pub fn cohomology_table_of(pres: &GradedModulePresentation) -> Result<CohomologyTable> {
    let n = pres.module.ring().nvars();
    let exts = ext_modules_all(pres)?;
    let mut ext_series = Vec::with_capacity(n + 1);
    // row i corresponds to Ext^{n-i}
    for i in 0..=n {
        let series = exts[n - i].hilbert_series()?;
        ext_series.push(series);
    }
    Ok(CohomologyTable::from_ext_series(n, ext_series))
}

fn derive_window(n: usize, ext_series: &[HilbertSeries]) -> (i64, i64) {
    let mut lo = -(n as i64);
    let mut hi = -(n as i64);
    for s in ext_series {
        // nonzero range of [Ext]_d: d from min numerator exponent upward;
        // in ν coordinates nu = -n - d, so high d means low nu
        if let Some(min_e) = s.min_exponent() {
            hi = hi.max(-(n as i64) - min_e);
            // dims can stay positive for all larger d; the window floor is
            // informative only, pinned at -n - (max twist + n)
            if let Some(max_e) = s.max_exponent() {
                lo = lo.min(-(n as i64) - max_e - n as i64);
            }
        }
    }
    (lo, hi)
}

/// Table for M = R/I.
pub fn local_cohomology_table(ideal: &Ideal) -> Result<CohomologyTable> {
    cohomology_table_of(&GradedModulePresentation::quotient_ring(ideal))
}

/// The (g, h, P) point of the stratification, with the Euler identity
/// g(ν) − Σ_i (−1)^i h_i(ν) = P(ν) verified across the widened window.
#[derive(Clone, Debug)]
pub struct StratificationData {
    pub g: HilbertSeries,
    pub table: CohomologyTable,
    pub polynomial: HilbertPolynomial,
}

pub fn stratification_data(ideal: &Ideal) -> Result<StratificationData> {
    let g = ideal.quotient_hilbert_series()?;
    let table = local_cohomology_table(ideal)?;
    let polynomial = g.hilbert_polynomial();
    let (lo, hi) = table.window();
    let lo = lo.min(g.min_exponent().unwrap_or(0)) - 2;
    let hi = hi.max(g.max_exponent().unwrap_or(0)) + 2;
    for nu in lo..=hi {
        let mut acc = BigRational::from(g.evaluate(nu));
        for i in 0..=table.n() {
            let h = BigRational::from(table.h(i, nu));
            if i % 2 == 0 {
                acc -= h;
            } else {
                acc += h;
            }
        }
        if acc != polynomial.evaluate(nu) {
            return Err(Error::Internal(format!(
                "Euler identity g - Σ(-1)^i h_i = P fails at ν = {nu}"
            )));
        }
    }
    Ok(StratificationData { g, table, polynomial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Monomial, MonomialOrder};
    use crate::poly::{Polynomial, Ring, RingRef};
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

    fn ideal(r: &RingRef, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(r.clone(), gens).unwrap()
    }

    #[test]
    fn ext_of_free_module() {
        let r = ring3();
        let pres = GradedModulePresentation::free(FreeModule::new(r.clone(), vec![0]));
        let e0 = ext_module(&pres, 0).unwrap();
        assert_eq!(
            e0.hilbert_series().unwrap(),
            HilbertSeries::from_twists(&[0], 3)
        );
        for j in 1..=3 {
            assert!(ext_module(&pres, j).unwrap().hilbert_series().unwrap().is_zero());
        }
    }

    #[test]
    fn koszul_self_duality() {
        let r = ring3();
        let i = ideal(
            &r,
            vec![mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0]), mono(&r, &[0, 0, 1])],
        );
        let pres = GradedModulePresentation::quotient_ring(&i);
        for j in 0..3 {
            assert!(ext_module(&pres, j).unwrap().hilbert_series().unwrap().is_zero());
        }
        // Ext^3(k, R) ≅ k(3): one-dimensional in degree -3
        let e3 = ext_module(&pres, 3).unwrap();
        let s = e3.hilbert_series().unwrap();
        assert_eq!(s.evaluate(-3), BigInt::from(1));
        assert_eq!(s.evaluate(-2), BigInt::from(0));
        assert_eq!(s.evaluate(-4), BigInt::from(0));
        assert_eq!(s.dimension(), 0);
    }

    #[test]
    fn example_two_ext_modules() {
        let r = ring3();
        // I = (xy^2, xz)
        let i = ideal(&r, vec![mono(&r, &[1, 2, 0]), mono(&r, &[1, 0, 1])]);
        let pres = GradedModulePresentation::quotient_ring(&i);
        let e0 = ext_module(&pres, 0).unwrap();
        // Ext^0(R/I, R) = 0 for a nonzero ideal
        assert!(e0.hilbert_series().unwrap().is_zero());
        // Ext^1 ≅ (R/(x))(1)
        let e1 = ext_module(&pres, 1).unwrap();
        let rx = ideal(&r, vec![mono(&r, &[1, 0, 0])]);
        let expect1 = rx.quotient_hilbert_series().unwrap().shift(-1);
        assert_eq!(e1.hilbert_series().unwrap(), expect1);
        // Ext^2 ≅ (R/(y^2,z))(4)
        let e2 = ext_module(&pres, 2).unwrap();
        let ryz = ideal(&r, vec![mono(&r, &[0, 2, 0]), mono(&r, &[0, 0, 1])]);
        let expect2 = ryz.quotient_hilbert_series().unwrap().shift(-4);
        assert_eq!(e2.hilbert_series().unwrap(), expect2);
        assert!(ext_module(&pres, 3).unwrap().hilbert_series().unwrap().is_zero());
    }

    #[test]
    fn duality_anchor_for_r() {
        let r = ring3();
        let table = local_cohomology_table(&Ideal::zero(r)).unwrap();
        assert_eq!(table.h(3, -3), BigInt::from(1));
        assert_eq!(table.h(3, -2), BigInt::from(0));
        assert_eq!(table.h(3, -4), BigInt::from(3));
        for i in 0..3 {
            assert!(table.is_row_zero(i));
        }
    }

    #[test]
    fn example_one_table() {
        let r = ring3();
        let i1 = ideal(
            &r,
            vec![
                mono(&r, &[2, 0, 0]),
                mono(&r, &[0, 2, 0]),
                mono(&r, &[1, 1, 0]),
                mono(&r, &[1, 0, 1]),
                mono(&r, &[0, 1, 1]),
            ],
        );
        let t = local_cohomology_table(&i1).unwrap();
        // h0(1) = 2, zero elsewhere
        assert_eq!(t.h(0, 1), BigInt::from(2));
        for nu in -4..6 {
            if nu != 1 {
                assert_eq!(t.h(0, nu), BigInt::from(0), "h0 at {nu}");
            }
        }
        // h1(nu) = 1 for nu <= -1, 0 otherwise
        for nu in -6..=-1 {
            assert_eq!(t.h(1, nu), BigInt::from(1), "h1 at {nu}");
        }
        for nu in 0..5 {
            assert_eq!(t.h(1, nu), BigInt::from(0), "h1 at {nu}");
        }
        assert!(t.is_row_zero(2));
        assert!(t.is_row_zero(3));
    }

    #[test]
    fn example_one_second_table() {
        let r = ring3();
        // I2 = (x^2 y, x z^2, y^2 z, z^3)
        let i2 = ideal(
            &r,
            vec![
                mono(&r, &[2, 1, 0]),
                mono(&r, &[1, 0, 2]),
                mono(&r, &[0, 2, 1]),
                mono(&r, &[0, 0, 3]),
            ],
        );
        let t = local_cohomology_table(&i2).unwrap();
        assert_eq!(t.h(0, 2), BigInt::from(2));
        assert_eq!(t.h(0, 3), BigInt::from(2));
        for nu in -4..8 {
            if nu != 2 && nu != 3 {
                assert_eq!(t.h(0, nu), BigInt::from(0), "h0 at {nu}");
            }
        }
        // h1 supported in degrees <= 1
        for nu in 2..8 {
            assert_eq!(t.h(1, nu), BigInt::from(0), "h1 at {nu}");
        }
        assert!(t.is_row_zero(3));
    }

    #[test]
    fn stratification_identity() {
        let r = ring3();
        let i1 = ideal(
            &r,
            vec![
                mono(&r, &[2, 0, 0]),
                mono(&r, &[0, 2, 0]),
                mono(&r, &[1, 1, 0]),
                mono(&r, &[1, 0, 1]),
                mono(&r, &[0, 1, 1]),
            ],
        );
        let data = stratification_data(&i1).unwrap();
        // P ≡ 1 for I1
        assert_eq!(data.polynomial.evaluate(0), BigRational::from(BigInt::from(1)));
        assert_eq!(data.polynomial.evaluate(7), BigRational::from(BigInt::from(1)));
        assert_eq!(data.polynomial.degree(), Some(0));
        // spot values from the table
        assert_eq!(data.g.evaluate(1), BigInt::from(3));
        assert_eq!(data.table.h(0, 1), BigInt::from(2));
        // Artinian case: P ≡ 0
        let m = ideal(
            &r,
            vec![mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0]), mono(&r, &[0, 0, 1])],
        );
        let artinian = stratification_data(&m).unwrap();
        assert_eq!(artinian.polynomial.degree(), None);
        // free ring: P(nu) = C(nu+2, 2)
        let free = stratification_data(&Ideal::zero(r)).unwrap();
        assert_eq!(free.polynomial.evaluate(4), BigRational::from(BigInt::from(15)));
    }
}
