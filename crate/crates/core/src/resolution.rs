//! Graded matrices, free resolutions by iterated syzygies, complex
//! minimalization, and the Taylor complex of a monomial ideal.

use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::ideal::Ideal;
use crate::module::{FreeModule, FreeModuleRef, GraphBasis, ModPoly};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};
use crate::scalar::Scalar;

/// A degree-zero map of graded free modules, stored densely:
/// `entries[r][c]` is homogeneous of degree src.twist(c) - tgt.twist(r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    src: FreeModuleRef,
    tgt: FreeModuleRef,
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    pub fn new(
        src: FreeModuleRef,
        tgt: FreeModuleRef,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<GradedMatrix> {
        if src.ring() != tgt.ring() {
            return Err(Error::RingMismatch);
        }
        if entries.len() != tgt.rank() {
            return Err(Error::DimensionMismatch(entries.len(), tgt.rank()));
        }
        for (r, row) in entries.iter().enumerate() {
            if row.len() != src.rank() {
                return Err(Error::DimensionMismatch(row.len(), src.rank()));
            }
            for (c, f) in row.iter().enumerate() {
                if f.ring() != src.ring() {
                    return Err(Error::RingMismatch);
                }
                if let Some(d) = f.homogeneous_degree() {
                    if d as i64 != src.twist(c) - tgt.twist(r) {
                        return Err(Error::Inhomogeneous(format!(
                            " as a matrix entry at ({r},{c})"
                        )));
                    }
                } else if !f.is_zero() {
                    return Err(Error::Inhomogeneous(format!(
                        " as a matrix entry at ({r},{c})"
                    )));
                }
            }
        }
        Ok(GradedMatrix { src, tgt, entries })
    }

    pub fn zero(src: FreeModuleRef, tgt: FreeModuleRef) -> GradedMatrix {
        let z = Polynomial::zero(src.ring());
        let entries = vec![vec![z; src.rank()]; tgt.rank()];
        GradedMatrix { src, tgt, entries }
    }

    pub fn identity(module: FreeModuleRef) -> GradedMatrix {
        let ring = module.ring().clone();
        let entries = (0..module.rank())
            .map(|r| {
                (0..module.rank())
                    .map(|c| {
                        if r == c {
                            Polynomial::one(&ring)
                        } else {
                            Polynomial::zero(&ring)
                        }
                    })
                    .collect()
            })
            .collect();
        GradedMatrix { src: module.clone(), tgt: module, entries }
    }

    /// Builds the matrix whose columns are the given elements of `tgt`;
    /// source twists are the column degrees (columns must be nonzero).
    pub fn from_columns(tgt: &FreeModuleRef, cols: &[ModPoly]) -> Result<GradedMatrix> {
        let mut twists = Vec::with_capacity(cols.len());
        for v in cols {
            if v.module() != tgt {
                return Err(Error::RingMismatch);
            }
            twists.push(v.homogeneous_degree().ok_or_else(|| {
                Error::Internal("zero or inhomogeneous matrix column".into())
            })?);
        }
        let src = FreeModule::new(tgt.ring().clone(), twists);
        let entries = (0..tgt.rank())
            .map(|r| cols.iter().map(|v| v.component(r)).collect())
            .collect();
        Ok(GradedMatrix { src, tgt: tgt.clone(), entries })
    }

    pub fn src(&self) -> &FreeModuleRef {
        &self.src
    }

    pub fn tgt(&self) -> &FreeModuleRef {
        &self.tgt
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    pub fn nrows(&self) -> usize {
        self.tgt.rank()
    }

    pub fn ncols(&self) -> usize {
        self.src.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|f| f.is_zero()))
    }

    pub fn column(&self, c: usize) -> ModPoly {
        let mut triples = Vec::new();
        for (r, row) in self.entries.iter().enumerate() {
            for (s, m) in row[c].terms() {
                triples.push((s.clone(), r, m.clone()));
            }
        }
        ModPoly::from_terms(&self.tgt, triples)
    }

    pub fn columns(&self) -> Vec<ModPoly> {
        (0..self.ncols()).map(|c| self.column(c)).collect()
    }

    pub fn apply(&self, v: &ModPoly) -> Result<ModPoly> {
        if v.module() != &self.src {
            return Err(Error::RingMismatch);
        }
        let mut acc = ModPoly::zero(&self.tgt);
        for c in 0..self.ncols() {
            let f = v.component(c);
            if !f.is_zero() {
                acc = acc.add_unchecked(&self.column(c).mul_poly(&f)?);
            }
        }
        Ok(acc)
    }

    /// self ∘ other, where other maps into this matrix's source.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if other.tgt != self.src {
            return Err(Error::RingMismatch);
        }
        let mut entries = vec![vec![Polynomial::zero(self.src.ring()); other.ncols()]; self.nrows()];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(self.src.ring());
                for k in 0..self.ncols() {
                    acc = acc.add(&self.entries[r][k].mul(&other.entries[k][c])?)?;
                }
                *e = acc;
            }
        }
        Ok(GradedMatrix { src: other.src.clone(), tgt: self.tgt.clone(), entries })
    }

    /// The dual map Hom(-, R): transpose with negated twists.
    pub fn transpose_dual(&self) -> GradedMatrix {
        let ring = self.src.ring().clone();
        let dual_src = FreeModule::new(ring.clone(), self.tgt.twists().iter().map(|t| -t).collect());
        let dual_tgt = FreeModule::new(ring, self.src.twists().iter().map(|t| -t).collect());
        let entries = (0..self.ncols())
            .map(|c| (0..self.nrows()).map(|r| self.entries[r][c].clone()).collect())
            .collect();
        GradedMatrix { src: dual_src, tgt: dual_tgt, entries }
    }

    /// Generators of ker(self), as a matrix into the source.
    pub fn kernel(&self) -> Result<GradedMatrix> {
        let graph = GraphBasis::new(&self.tgt, self.columns())?;
        let syz = graph.syzygies();
        if syz.is_empty() {
            let zero_src = FreeModule::new(self.src.ring().clone(), Vec::new());
            return Ok(GradedMatrix::zero(zero_src, self.src.clone()));
        }
        // syzygy coordinates live in a tag module with the same twists as src
        let cols: Vec<ModPoly> = syz
            .iter()
            .map(|s| {
                ModPoly::from_terms(
                    &self.src,
                    s.terms().iter().map(|(c, p, m)| (c.clone(), *p, m.clone())).collect(),
                )
            })
            .collect();
        GradedMatrix::from_columns(&self.src, &cols)
    }
}

/// A presentation M = coker(relations ⊂ F).
#[derive(Clone, Debug)]
pub struct GradedModulePresentation {
    pub module: FreeModuleRef,
    pub relations: Vec<ModPoly>,
}

impl GradedModulePresentation {
    pub fn quotient_ring(ideal: &Ideal) -> GradedModulePresentation {
        let ring = ideal.ring().clone();
        let f0 = FreeModule::new(ring, vec![0]);
        let relations = ideal
            .generators()
            .iter()
            .map(|g| ModPoly::from_polynomial(&f0, 0, g))
            .collect();
        GradedModulePresentation { module: f0, relations }
    }

    /// Presents the ideal itself: generators become free-module basis
    /// elements, relations are their syzygies.
    pub fn ideal_module(ideal: &Ideal) -> Result<GradedModulePresentation> {
        let ring = ideal.ring().clone();
        let graph = GraphBasis::for_polynomials(&ring, ideal.generators())?;
        let twists: Vec<i64> = ideal
            .generators()
            .iter()
            .map(|g| g.homogeneous_degree().unwrap() as i64)
            .collect();
        let f0 = FreeModule::new(ring, twists);
        let relations = graph
            .syzygies()
            .into_iter()
            .map(|s| {
                ModPoly::from_terms(
                    &f0,
                    s.terms().iter().map(|(c, p, m)| (c.clone(), *p, m.clone())).collect(),
                )
            })
            .collect();
        Ok(GradedModulePresentation { module: f0, relations })
    }

    pub fn free(module: FreeModuleRef) -> GradedModulePresentation {
        GradedModulePresentation { module, relations: Vec::new() }
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let res = free_resolution(self, true)?;
        Ok(res.hilbert_series())
    }
}

/// A finite complex F_0 <- F_1 <- ... <- F_len, maps[k]: modules[k+1] ->
/// modules[k].
#[derive(Clone, Debug)]
pub struct FreeResolution {
    modules: Vec<FreeModuleRef>,
    maps: Vec<GradedMatrix>,
}

impl FreeResolution {
    pub fn from_parts(
        modules: Vec<FreeModuleRef>,
        maps: Vec<GradedMatrix>,
    ) -> Result<FreeResolution> {
        if modules.len() != maps.len() + 1 {
            return Err(Error::DimensionMismatch(modules.len(), maps.len() + 1));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.src() != &modules[k + 1] || m.tgt() != &modules[k] {
                return Err(Error::RingMismatch);
            }
        }
        Ok(FreeResolution { modules, maps })
    }

    pub fn modules(&self) -> &[FreeModuleRef] {
        &self.modules
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn module(&self, i: usize) -> Option<&FreeModuleRef> {
        self.modules.get(i)
    }

    /// The differential d_i: F_i -> F_{i-1} (i >= 1).
    pub fn map(&self, i: usize) -> Option<&GradedMatrix> {
        if i == 0 {
            None
        } else {
            self.maps.get(i - 1)
        }
    }

    /// Checks d_i ∘ d_{i+1} = 0 everywhere.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Alternating sum of the free-module series: the series of the module
    /// being resolved.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let n = self.modules[0].ring().nvars() as u32;
        let mut acc = HilbertSeries::zero(n);
        for (i, f) in self.modules.iter().enumerate() {
            let s = HilbertSeries::from_twists(f.twists(), n);
            acc = if i % 2 == 0 { acc.add(&s) } else { acc.sub(&s) };
        }
        acc
    }

    /// Graded Betti numbers as (homological degree, twist, multiplicity);
    /// meaningful after minimalization.
    pub fn betti(&self) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for (i, f) in self.modules.iter().enumerate() {
            let mut counts: std::collections::BTreeMap<i64, usize> = Default::default();
            for &t in f.twists() {
                *counts.entry(t).or_insert(0) += 1;
            }
            for (t, m) in counts {
                out.push((i, t, m));
            }
        }
        out
    }
}

/// A free resolution of coker(relations), by iterated syzygy computation
/// through the graph construction, optionally pruned to minimal form.
pub fn free_resolution(
    pres: &GradedModulePresentation,
    prune: bool,
) -> Result<FreeResolution> {
    let ring = pres.module.ring().clone();
    let n = ring.nvars();
    let mut modules = vec![pres.module.clone()];
    let mut maps: Vec<GradedMatrix> = Vec::new();
    let relations: Vec<ModPoly> =
        pres.relations.iter().filter(|v| !v.is_zero()).cloned().collect();
    if relations.is_empty() {
        return Ok(FreeResolution { modules, maps });
    }
    let mut d = GradedMatrix::from_columns(&pres.module, &relations)?;
    loop {
        modules.push(d.src().clone());
        let next = d.kernel()?;
        maps.push(d);
        if next.ncols() == 0 {
            break;
        }
        if maps.len() > n + 2 {
            return Err(Error::Internal(
                "free resolution exceeded the n+2 length cap".into(),
            ));
        }
        d = next;
    }
    let res = FreeResolution { modules, maps };
    debug_assert!(res.is_complex()?);
    if prune {
        minimalize(res)
    } else {
        Ok(res)
    }
}

/// Minimalizes a presentation by pruning unit entries of its relation
/// matrix.
pub fn minimal_presentation(
    pres: &GradedModulePresentation,
) -> Result<GradedModulePresentation> {
    let relations: Vec<ModPoly> =
        pres.relations.iter().filter(|v| !v.is_zero()).cloned().collect();
    if relations.is_empty() {
        return Ok(GradedModulePresentation {
            module: pres.module.clone(),
            relations: Vec::new(),
        });
    }
    let d = GradedMatrix::from_columns(&pres.module, &relations)?;
    let two_term = FreeResolution {
        modules: vec![pres.module.clone(), d.src().clone()],
        maps: vec![d],
    };
    let pruned = minimalize(two_term)?;
    let relations = match pruned.maps.first() {
        Some(m) => m.columns().into_iter().filter(|c| !c.is_zero()).collect(),
        None => Vec::new(),
    };
    Ok(GradedModulePresentation { module: pruned.modules[0].clone(), relations })
}

/// Prunes a resolution to its minimal form by pivoting away unit (constant)
/// entries, updating the adjacent differentials.
pub fn minimalize(res: FreeResolution) -> Result<FreeResolution> {
    let ring = res.modules[0].ring().clone();
    let mut twists: Vec<Vec<i64>> =
        res.modules.iter().map(|f| f.twists().to_vec()).collect();
    let mut mats: Vec<Vec<Vec<Polynomial>>> = res
        .maps
        .iter()
        .map(|m| {
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| m.entry(r, c).clone()).collect())
                .collect()
        })
        .collect();

    loop {
        let Some((i, r, c)) = find_unit(&mats) else { break };
        let u = mats[i][r][c].leading_term().unwrap().0.clone();
        // clear row r of d_{i+1} across columns: col_j -= (e[r][j]/u) col_c
        let lambdas: Vec<Polynomial> = (0..mats[i][r].len())
            .map(|j| mats[i][r][j].scale(&u.inv()))
            .collect();
        let ncols = mats[i][0].len();
        let nrows = mats[i].len();
        for j in 0..ncols {
            if j == c || lambdas[j].is_zero() {
                continue;
            }
            for s in 0..nrows {
                let delta = mats[i][s][c].mul(&lambdas[j])?;
                mats[i][s][j] = mats[i][s][j].sub(&delta)?;
            }
            // basis change of F_{i+1}: row_c of d_{i+2} += lambda_j * row_j
            if i + 1 < mats.len() {
                for t in 0..mats[i + 1][0].len() {
                    let delta = mats[i + 1][j][t].mul(&lambdas[j])?;
                    mats[i + 1][c][t] = mats[i + 1][c][t].add(&delta)?;
                }
            }
        }
        // clear column c of d_{i+1} down rows: row_s -= (e[s][c]/u) row_r
        let mus: Vec<Polynomial> =
            (0..nrows).map(|s| mats[i][s][c].scale(&u.inv())).collect();
        for s in 0..nrows {
            if s == r || mus[s].is_zero() {
                continue;
            }
            for j in 0..ncols {
                let delta = mats[i][r][j].mul(&mus[s])?;
                mats[i][s][j] = mats[i][s][j].sub(&delta)?;
            }
            // basis change of F_i: col_r of d_i += mu_s * col_s
            if i > 0 {
                for t in 0..mats[i - 1].len() {
                    let delta = mats[i - 1][t][s].mul(&mus[s])?;
                    mats[i - 1][t][r] = mats[i - 1][t][r].add(&delta)?;
                }
            }
        }
        // drop basis element r of F_i and c of F_{i+1}
        twists[i].remove(r);
        twists[i + 1].remove(c);
        mats[i].remove(r);
        for row in mats[i].iter_mut() {
            row.remove(c);
        }
        if i > 0 {
            for row in mats[i - 1].iter_mut() {
                row.remove(r);
            }
        }
        if i + 1 < mats.len() {
            mats[i + 1].remove(c);
        }
    }

    // trim trailing zero-rank modules
    while twists.len() > 1 && twists.last().unwrap().is_empty() {
        twists.pop();
        mats.pop();
    }

    let modules: Vec<FreeModuleRef> = twists
        .into_iter()
        .map(|t| FreeModule::new(ring.clone(), t))
        .collect();
    let maps = mats
        .into_iter()
        .enumerate()
        .map(|(k, e)| GradedMatrix::new(modules[k + 1].clone(), modules[k].clone(), e))
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeResolution { modules, maps })
}

fn find_unit(mats: &[Vec<Vec<Polynomial>>]) -> Option<(usize, usize, usize)> {
    for (i, m) in mats.iter().enumerate() {
        for (r, row) in m.iter().enumerate() {
            for (c, f) in row.iter().enumerate() {
                if f.homogeneous_degree() == Some(0) {
                    return Some((i, r, c));
                }
            }
        }
    }
    None
}

/// The Taylor complex of a monomial ideal: a (generally non-minimal) free
/// resolution of R/I indexed by subsets of the generators.
pub fn taylor_resolution(ring: &RingRef, gens: &[Monomial]) -> Result<FreeResolution> {
    let m = gens.len();
    assert!(m <= 20, "Taylor complex too large");
    // subsets of size k, in increasing bitmask order
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
    for mask in 0u32..(1 << m) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    let lcm_of = |mask: u32| -> Monomial {
        let mut acc = Monomial::one(ring.nvars());
        for i in 0..m {
            if mask & (1 << i) != 0 {
                acc = acc.lcm(&gens[i]);
            }
        }
        acc
    };
    let mut modules = Vec::with_capacity(m + 1);
    for subsets in by_size.iter() {
        let twists: Vec<i64> =
            subsets.iter().map(|&s| lcm_of(s).total_degree() as i64).collect();
        modules.push(FreeModule::new(ring.clone(), twists));
    }
    let mut maps = Vec::with_capacity(m);
    for k in 1..=m {
        let src = &modules[k];
        let tgt = &modules[k - 1];
        let mut entries =
            vec![vec![Polynomial::zero(ring); src.rank()]; tgt.rank()];
        for (c, &mask) in by_size[k].iter().enumerate() {
            let l = lcm_of(mask);
            let mut sign = Scalar::one(ring.field);
            for i in 0..m {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let sub = mask & !(1 << i);
                let r = by_size[k - 1].binary_search(&sub).unwrap();
                let q = l.checked_div(&lcm_of(sub)).unwrap();
                entries[r][c] = Polynomial::term(ring, sign.clone(), q);
                sign = sign.neg();
            }
        }
        maps.push(GradedMatrix::new(src.clone(), tgt.clone(), entries)?);
    }
    Ok(FreeResolution { modules, maps })
}
