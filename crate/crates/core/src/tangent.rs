//! Tangent vectors to the Hilbert scheme at [I₀], the maps they induce on
//! graded local cohomology, and the tangent space of the fiber-full locus.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{mod_buchberger, mod_normal_form, FreeModule, GraphBasis, ModPoly};
use crate::pieces::{graded_hom_component, kernel_basis};
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, FreeResolution, GradedMatrix, GradedModulePresentation};
use crate::scalar::Scalar;
use std::collections::{BTreeSet, HashMap};

/// The tangent space comparison at a Borel-fixed (or any) special fiber:
/// dim T_[I₀]Hilb = dim [Hom(I₀, R/I₀)]₀ versus the fiber-full subspace of
/// vectors inducing zero on every H^i_m.
#[derive(Clone, Debug)]
pub struct TangentReport {
    pub dim_hs: usize,
    pub dim_fib: usize,
    /// Basis of [Hom(I₀, R/I₀)]₀: values on the ideal generators, as
    /// representatives in R.
    pub basis: Vec<Vec<Polynomial>>,
    /// Whether the corresponding basis vector itself lies in the fiber-full
    /// tangent space.
    pub in_fiber: Vec<bool>,
}

/// Basis of the degree-0 homogeneous homomorphisms I₀ → R/I₀; each vector
/// is given by its values on the generators of I₀.
pub fn hilb_tangent_basis(i0: &Ideal) -> Result<(usize, Vec<Vec<Polynomial>>)> {
    if i0.is_zero_ideal() {
        return Ok((0, Vec::new()));
    }
    let m = GradedModulePresentation::ideal_module(i0)?;
    let n = GradedModulePresentation::quotient_ring(i0);
    let (dim, reps) = graded_hom_component(&m, &n, 0)?;
    let values = reps
        .iter()
        .map(|r| r.iter().map(|v| v.component(0)).collect())
        .collect();
    Ok((dim, values))
}

/// Identifies a residue coordinate of a lifted map: (cohomological index j,
/// cocycle index, dual position, monomial exponents).
type ResidueKey = (usize, usize, usize, Vec<u32>);

/// Shared chain-map machinery for one special fiber: a resolution F_• of
/// the ideal module whose F₀ stays the given generators, a minimal
/// resolution G_• of R/I₀, lifting data, and per-level coboundary bases.
pub struct TangentEngine {
    res_f: FreeResolution,
    res_g: FreeResolution,
    /// For i < levels: graph basis of the columns of d^G_{i+1} inside G_i.
    lift_graphs: Vec<GraphBasis>,
    /// For j <= levels: module GB of im(d^F_jᵀ) ⊆ F_jᵀ (empty at j = 0).
    coboundary_gbs: Vec<Vec<ModPoly>>,
    /// For j <= levels: generators of ker(d^G_{j+1}ᵀ) ⊆ G_jᵀ, whose classes
    /// generate Ext^j(R/I₀, R).
    cocycles: Vec<Vec<ModPoly>>,
    levels: usize,
}

impl TangentEngine {
    pub fn new(i0: &Ideal) -> Result<TangentEngine> {
        if i0.is_zero_ideal() {
            return Err(Error::InvalidTangent);
        }
        let mpres = GradedModulePresentation::ideal_module(i0)?;
        let npres = GradedModulePresentation::quotient_ring(i0);
        // unpruned, so that F_0 stays the free module on the generators
        let res_f = free_resolution(&mpres, false)?;
        let res_g = free_resolution(&npres, true)?;
        let ring = i0.ring().clone();
        let levels = res_f.length().min(res_g.length());
        let mut lift_graphs = Vec::with_capacity(levels);
        for i in 0..levels {
            let dg = res_g.map(i + 1).unwrap();
            lift_graphs.push(GraphBasis::new(dg.tgt(), dg.columns())?);
        }
        let mut coboundary_gbs = Vec::with_capacity(levels + 1);
        let mut cocycles = Vec::with_capacity(levels + 1);
        for j in 0..=levels {
            let cb = if j == 0 {
                Vec::new()
            } else {
                let cols: Vec<ModPoly> = res_f
                    .map(j)
                    .unwrap()
                    .transpose_dual()
                    .columns()
                    .into_iter()
                    .filter(|c| !c.is_zero())
                    .collect();
                mod_buchberger(&cols)?
            };
            coboundary_gbs.push(cb);
            let zs: Vec<ModPoly> = if j + 1 <= res_g.length() {
                res_g.map(j + 1).unwrap().transpose_dual().kernel()?.columns()
            } else {
                let dual = FreeModule::new(
                    ring.clone(),
                    res_g.modules()[j].twists().iter().map(|t| -t).collect(),
                );
                (0..dual.rank()).map(|p| ModPoly::generator(&dual, p)).collect()
            };
            cocycles.push(zs.into_iter().filter(|z| !z.is_zero()).collect());
        }
        Ok(TangentEngine { res_f, res_g, lift_graphs, coboundary_gbs, cocycles, levels })
    }

    /// Lifts a tangent vector, given by its values on the generators, to a
    /// degree-0 chain map φ_•: F_• → G_•.
    pub fn lift(&self, values: &[Polynomial]) -> Result<Vec<GradedMatrix>> {
        let f0 = self.res_f.modules()[0].clone();
        let g0 = self.res_g.modules()[0].clone();
        if values.len() != f0.rank() {
            return Err(Error::InvalidTangent);
        }
        for (j, v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if v.homogeneous_degree().map(i64::from) != Some(f0.twist(j)) {
                return Err(Error::InvalidTangent);
            }
        }
        let phi0 = GradedMatrix::new(f0, g0, vec![values.to_vec()])
            .map_err(|_| Error::InvalidTangent)?;
        let mut maps = vec![phi0];
        for i in 0..self.levels {
            let df = self.res_f.map(i + 1).unwrap();
            let gi1 = self.res_g.modules()[i + 1].clone();
            let ring = gi1.ring().clone();
            let mut entries = vec![vec![Polynomial::zero(&ring); df.ncols()]; gi1.rank()];
            for c in 0..df.ncols() {
                let w = maps[i].apply(&df.column(c))?;
                if w.is_zero() {
                    continue;
                }
                let (nf, cofactors) = self.lift_graphs[i].reduce_with_cofactors(&w)?;
                if !nf.is_zero() {
                    // at i = 0 this means φ does not kill the syzygies of
                    // the generators, i.e. it is not a module homomorphism
                    return Err(if i == 0 {
                        Error::InvalidTangent
                    } else {
                        Error::Internal("chain-map lift escaped the image".into())
                    });
                }
                for (r, x) in cofactors.into_iter().enumerate() {
                    entries[r][c] = x;
                }
            }
            maps.push(GradedMatrix::new(df.src().clone(), gi1, entries)?);
        }
        Ok(maps)
    }

    /// Normal forms of the dualized chain map on the Ext cocycles, modulo
    /// coboundaries: the induced Ext^j(R/I₀,R) → Ext^j(I₀,R) is zero iff no
    /// residue with that j survives. Normal forms are linear in φ.
    fn residues(&self, maps: &[GradedMatrix]) -> Result<HashMap<ResidueKey, Scalar>> {
        let mut out = HashMap::new();
        for j in 0..=self.levels {
            if self.cocycles[j].is_empty() {
                continue;
            }
            let phit = maps[j].transpose_dual();
            for (zi, z) in self.cocycles[j].iter().enumerate() {
                let w = phit.apply(z)?;
                if w.is_zero() {
                    continue;
                }
                let r = mod_normal_form(&w, &self.coboundary_gbs[j]);
                for (c, p, m) in r.terms() {
                    out.insert((j, zi, *p, m.exps().to_vec()), c.clone());
                }
            }
        }
        Ok(out)
    }

    fn nvars(&self) -> usize {
        self.res_f.modules()[0].ring().nvars()
    }
}

/// For a tangent vector φ (values on the generators of I₀), the levels i at
/// which the induced map H^i_m(I₀) → H^i_m(R/I₀) is nonzero; decided dually
/// through Ext^{n−i}. Entry i of the result corresponds to H^i.
pub fn induced_cohomology_maps(i0: &Ideal, values: &[Polynomial]) -> Result<Vec<bool>> {
    let engine = TangentEngine::new(i0)?;
    let maps = engine.lift(values)?;
    let residues = engine.residues(&maps)?;
    let n = engine.nvars();
    let mut nonzero = vec![false; n + 1];
    for (j, _, _, _) in residues.keys() {
        if *j <= n {
            nonzero[n - j] = true;
        }
    }
    Ok(nonzero)
}

/// Dimension comparison dim T Hilb vs dim T Fib at [I₀]: the fiber-full
/// tangent space is the kernel of the assembled residue map on
/// [Hom(I₀, R/I₀)]₀.
pub fn fiber_full_tangent(i0: &Ideal) -> Result<TangentReport> {
    let (dim_hs, basis) = hilb_tangent_basis(i0)?;
    if dim_hs == 0 {
        return Ok(TangentReport { dim_hs, dim_fib: 0, basis, in_fiber: Vec::new() });
    }
    let engine = TangentEngine::new(i0)?;
    let field = i0.ring().field;
    let mut residue_maps = Vec::with_capacity(dim_hs);
    let mut in_fiber = Vec::with_capacity(dim_hs);
    for values in &basis {
        let maps = engine.lift(values)?;
        let res = engine.residues(&maps)?;
        in_fiber.push(res.is_empty());
        residue_maps.push(res);
    }
    let keys: BTreeSet<ResidueKey> = residue_maps
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect();
    let dim_fib = if keys.is_empty() {
        dim_hs
    } else {
        let rows: Vec<Vec<Scalar>> = keys
            .iter()
            .map(|k| {
                residue_maps
                    .iter()
                    .map(|m| m.get(k).cloned().unwrap_or_else(|| Scalar::zero(field)))
                    .collect()
            })
            .collect();
        kernel_basis(rows, dim_hs, field).len()
    };
    Ok(TangentReport { dim_hs, dim_fib, basis, in_fiber })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::ext_module;
    use crate::monomial::{Monomial, MonomialOrder};
    use crate::poly::{Ring, RingRef};
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

    fn anchor_ideal(r: &RingRef) -> Ideal {
        // (x^3, xz, yz, z^2) in k[x,y,z,w]
        Ideal::new(
            r.clone(),
            vec![
                mono(r, &[3, 0, 0, 0]),
                mono(r, &[1, 0, 1, 0]),
                mono(r, &[0, 1, 1, 0]),
                mono(r, &[0, 0, 2, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn point_in_the_plane() {
        // I = (x, y) in k[x,y,z]: the Hilbert scheme of one point in P^2 is
        // smooth of dimension 2, and a CM fiber is automatically fiber-full
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::new(r.clone(), vec![mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0])]).unwrap();
        let report = fiber_full_tangent(&i).unwrap();
        assert_eq!(report.dim_hs, 2);
        assert_eq!(report.dim_fib, 2);
        assert!(report.in_fiber.iter().all(|&b| b));
    }

    #[test]
    fn principal_ideal_line() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(r.clone(), vec![mono(&r, &[1, 0])]).unwrap();
        let (dim, basis) = hilb_tangent_basis(&i).unwrap();
        // x can move to y only
        assert_eq!(dim, 1);
        assert_eq!(basis[0][0], mono(&r, &[0, 1]));
        let report = fiber_full_tangent(&i).unwrap();
        assert_eq!(report.dim_fib, 1);
    }

    #[test]
    fn anchor_dimensions() {
        let r = ring(&["x", "y", "z", "w"]);
        let i0 = anchor_ideal(&r);
        let report = fiber_full_tangent(&i0).unwrap();
        assert_eq!(report.dim_hs, 16);
        assert_eq!(report.dim_fib, 15);
        // exactly one independent obstruction direction among the basis
        assert_eq!(report.basis.len(), 16);
    }

    #[test]
    fn obstructed_direction_at_h2() {
        // φ: yz ↦ x^2, other generators ↦ 0, induces a nonzero map at the
        // H^2 level and nowhere else
        let r = ring(&["x", "y", "z", "w"]);
        let i0 = anchor_ideal(&r);
        let zero = Polynomial::zero(&r);
        let values = vec![zero.clone(), zero.clone(), mono(&r, &[2, 0, 0, 0]), zero];
        let levels = induced_cohomology_maps(&i0, &values).unwrap();
        assert!(levels[2], "H^2 map should be nonzero");
        for (i, &b) in levels.iter().enumerate() {
            if i != 2 {
                assert!(!b, "unexpected nonzero map at H^{i}");
            }
        }
    }

    #[test]
    fn invalid_vectors_are_rejected()
    {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::new(r.clone(), vec![mono(&r, &[2, 0, 0]), mono(&r, &[1, 1, 0])]).unwrap();
        // wrong arity
        assert!(matches!(
            induced_cohomology_maps(&i, &[Polynomial::zero(&r)]),
            Err(Error::InvalidTangent)
        ));
        // wrong degree
        assert!(matches!(
            induced_cohomology_maps(&i, &[mono(&r, &[1, 0, 0]), Polynomial::zero(&r)]),
            Err(Error::InvalidTangent)
        ));
        // violates the syzygy y*(x^2) - x*(xy) = 0: images y*y^2 - x*0 ∉ I
        assert!(matches!(
            induced_cohomology_maps(&i, &[mono(&r, &[0, 2, 0]), Polynomial::zero(&r)]),
            Err(Error::InvalidTangent)
        ));
    }

    #[test]
    fn ideal_ext_shift() {
        // Ext^j(I, R) ≅ Ext^{j+1}(R/I, R) for j ≥ 1 (series equality),
        // an independent check of the ideal-module resolution
        let r = ring(&["x", "y", "z", "w"]);
        let i0 = anchor_ideal(&r);
        let ideal_pres = GradedModulePresentation::ideal_module(&i0).unwrap();
        let quot = GradedModulePresentation::quotient_ring(&i0);
        for j in 1..=3 {
            let a = ext_module(&ideal_pres, j).unwrap().hilbert_series().unwrap();
            let b = ext_module(&quot, j + 1).unwrap().hilbert_series().unwrap();
            assert_eq!(a, b, "j = {j}");
        }
    }
}
