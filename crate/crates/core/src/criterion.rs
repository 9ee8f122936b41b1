//! The constant-cohomology criterion: degree-zero Hom vanishing between
//! consecutive Ext modules of R/I₀, plus obstruction-space dimensions.

use crate::cohomology::ext_modules_all;
use crate::error::Result;
use crate::ideal::Ideal;
use crate::pieces::{ext_component_dim, graded_hom_component};
use crate::resolution::GradedModulePresentation;
use serde::Serialize;

/// Outcome of the Ext-pair Hom test for a special fiber I₀.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    /// For each i = 1..=r (r = n−1): dim [Hom(Ext^{i−1}, Ext^i)]₀.
    pub hom_dims: Vec<usize>,
    pub pass: bool,
    pub cohen_macaulay: bool,
    pub squarefree: bool,
}

impl CriterionReport {
    /// Indices i (1-based, as in the pairing) with a nonzero Hom space.
    pub fn failing_slots(&self) -> Vec<usize> {
        self.hom_dims
            .iter()
            .enumerate()
            .filter_map(|(k, &d)| if d > 0 { Some(k + 1) } else { None })
            .collect()
    }
}

/// Evaluates the criterion: if every [Hom(Ext^{i−1}(R/I₀,R),
/// Ext^i(R/I₀,R))]₀ vanishes for i = 1..n−1, every Groebner degeneration
/// onto I₀ has constant cohomology.
pub fn constant_cohomology_criterion(i0: &Ideal) -> Result<CriterionReport> {
    let n = i0.ring().nvars();
    let pres = GradedModulePresentation::quotient_ring(i0);
    let exts = ext_modules_all(&pres)?;
    let r = n.saturating_sub(1);
    let mut hom_dims = Vec::with_capacity(r);
    for i in 1..=r {
        let (dim, _) = graded_hom_component(&exts[i - 1], &exts[i], 0)?;
        hom_dims.push(dim);
    }
    let nonzero_exts = exts
        .iter()
        .filter(|e| e.module.rank() > 0)
        .count();
    let pass = hom_dims.iter().all(|&d| d == 0);
    Ok(CriterionReport {
        hom_dims,
        pass,
        cohen_macaulay: nonzero_exts == 1,
        squarefree: i0.is_squarefree_monomial(),
    })
}

/// Ambient obstruction-space dimensions: dim [Ext¹(I₀, R/I₀)]₀ and, for
/// each cohomological index i, dim [Ext²(E_i, E_i)]₀ with E_i =
/// Ext^{n−i}(R/I₀, R).
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionDims {
    pub ext1_ideal_quotient: usize,
    /// Indexed by i = 0..=n.
    pub ext2_cohomology_self: Vec<usize>,
}

pub fn obstruction_space_dims(i0: &Ideal) -> Result<ObstructionDims> {
    let n = i0.ring().nvars();
    let quotient = GradedModulePresentation::quotient_ring(i0);
    let ideal_pres = GradedModulePresentation::ideal_module(i0)?;
    let ext1 = if i0.is_zero_ideal() {
        0
    } else {
        ext_component_dim(&ideal_pres, &quotient, 1, 0)?
    };
    let exts = ext_modules_all(&quotient)?;
    let mut ext2 = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let e = &exts[n - i];
        if e.module.rank() == 0 {
            ext2.push(0);
        } else {
            ext2.push(ext_component_dim(e, e, 2, 0)?);
        }
    }
    Ok(ObstructionDims { ext1_ideal_quotient: ext1, ext2_cohomology_self: ext2 })
}
