//! Degree-by-degree exact linear algebra: graded pieces of presented
//! modules, multiplication maps, graded Hom components, and Ext component
//! dimensions via Hom(F_•, N).

use crate::error::{Error, Result};
use crate::module::ModPoly;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};
use crate::resolution::{free_resolution, GradedModulePresentation};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Reduced row echelon form in place; returns the pivot column of each
/// surviving row. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for e in rows[r].iter_mut() {
            *e = e.mul(&inv);
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for cc in 0..ncols {
                    let t = rows[r][cc].mul(&f);
                    rows[i][cc] = rows[i][cc].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of the right null space of the matrix (rows × ncols).
pub fn kernel_basis(mut rows: Vec<Vec<Scalar>>, ncols: usize, field: crate::scalar::FieldSpec) -> Vec<Vec<Scalar>> {
    let pivots = rref(&mut rows);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Scalar::zero(field); ncols];
        v[f] = Scalar::one(field);
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = row[f].neg();
        }
        basis.push(v);
    }
    basis
}

/// All monomials of the given total degree, sorted decreasing in the ring
/// order.
pub fn monomials_of_degree(ring: &RingRef, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, i: usize, rem: u32) {
        if i + 1 == exps.len() {
            exps[i] = rem;
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in (0..=rem).rev() {
            exps[i] = e;
            rec(out, exps, i + 1, rem - e);
        }
        exps[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut out, &mut exps, 0, d as u32);
    out.sort_by(|a, b| ring.order.compare_unchecked(b, a));
    out
}

/// The degree-e piece of a presented module: monomial basis of the ambient
/// free module modulo the echelonized image of the relations.
#[derive(Debug)]
pub struct Piece {
    degree: i64,
    ambient: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Vec<u32>), usize>,
    echelon: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    free_cols: Vec<usize>,
}

impl Piece {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    /// Reduces an ambient coordinate vector to quotient coordinates over
    /// the free columns.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for c in 0..v.len() {
                let t = row[c].mul(&f);
                v[c] = v[c].sub(&t);
            }
        }
        self.free_cols.iter().map(|&c| v[c].clone()).collect()
    }
}

/// Per-degree piece cache for one presented module.
pub struct ModulePieces {
    pres: GradedModulePresentation,
    cache: Mutex<HashMap<i64, Arc<Piece>>>,
}

impl ModulePieces {
    pub fn new(pres: GradedModulePresentation) -> ModulePieces {
        ModulePieces { pres, cache: Mutex::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> &GradedModulePresentation {
        &self.pres
    }

    fn ring(&self) -> &RingRef {
        self.pres.module.ring()
    }

    pub fn piece(&self, e: i64) -> Arc<Piece> {
        if let Some(p) = self.cache.lock().unwrap().get(&e) {
            return p.clone();
        }
        let p = Arc::new(self.build_piece(e));
        self.cache.lock().unwrap().insert(e, p.clone());
        p
    }

    fn build_piece(&self, e: i64) -> Piece {
        let ring = self.ring().clone();
        let module = &self.pres.module;
        let mut ambient = Vec::new();
        for pos in 0..module.rank() {
            for m in monomials_of_degree(&ring, e - module.twist(pos)) {
                ambient.push((pos, m));
            }
        }
        let index: HashMap<(usize, Vec<u32>), usize> = ambient
            .iter()
            .enumerate()
            .map(|(k, (p, m))| ((*p, m.exps().to_vec()), k))
            .collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for rel in &self.pres.relations {
            let Some(c) = rel.homogeneous_degree() else { continue };
            for m in monomials_of_degree(&ring, e - c) {
                let shifted = rel.mul_term(&Scalar::one(ring.field), &m);
                let mut row = vec![Scalar::zero(ring.field); ambient.len()];
                for (s, p, mm) in shifted.terms() {
                    let k = index[&(*p, mm.exps().to_vec())];
                    row[k] = row[k].add(s);
                }
                rows.push(row);
            }
        }
        let pivots = rref(&mut rows);
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; ambient.len()];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free_cols = (0..ambient.len()).filter(|&c| !is_pivot[c]).collect();
        Piece { degree: e, ambient, index, echelon: rows, pivots, free_cols }
    }

    pub fn dim(&self, e: i64) -> usize {
        self.piece(e).dim()
    }

    /// Quotient coordinates of a homogeneous element of the ambient free
    /// module.
    pub fn reduce_element(&self, v: &ModPoly) -> Result<Vec<Scalar>> {
        if v.module() != &self.pres.module {
            return Err(Error::RingMismatch);
        }
        let field = self.ring().field;
        if v.is_zero() {
            return Err(Error::Internal("degree of zero element is undefined".into()));
        }
        let e = v
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous(String::new()))?;
        let piece = self.piece(e);
        let mut coords = vec![Scalar::zero(field); piece.ambient_dim()];
        for (s, p, m) in v.terms() {
            let k = piece.index[&(*p, m.exps().to_vec())];
            coords[k] = coords[k].add(s);
        }
        Ok(piece.reduce(coords))
    }

    /// The ambient representative of quotient coordinates in degree e.
    pub fn element(&self, e: i64, coords: &[Scalar]) -> ModPoly {
        let piece = self.piece(e);
        assert_eq!(coords.len(), piece.dim());
        let mut triples = Vec::new();
        for (c, &col) in coords.iter().zip(&piece.free_cols) {
            if c.is_zero() {
                continue;
            }
            let (pos, m) = &piece.ambient[col];
            triples.push((c.clone(), *pos, m.clone()));
        }
        ModPoly::from_terms(&self.pres.module, triples)
    }

    /// Matrix of multiplication by f: piece(e) -> piece(e + deg f), columns
    /// indexed by the source quotient basis.
    pub fn mult_matrix(&self, f: &Polynomial, e: i64) -> Result<Vec<Vec<Scalar>>> {
        let field = self.ring().field;
        let src = self.piece(e);
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous(String::new()))? as i64;
        let tgt = self.piece(e + d);
        let mut cols = Vec::with_capacity(src.dim());
        for k in 0..src.dim() {
            let (pos, m) = &src.ambient[src.free_cols[k]];
            let elem = ModPoly::from_polynomial(&self.pres.module, *pos, f)
                .mul_term(&Scalar::one(field), m);
            let mut coords = vec![Scalar::zero(field); tgt.ambient_dim()];
            for (s, p, mm) in elem.terms() {
                let idx = tgt.index[&(*p, mm.exps().to_vec())];
                coords[idx] = coords[idx].add(s);
            }
            cols.push(tgt.reduce(coords));
        }
        // transpose to row-major (rows = target coords)
        let rows = (0..tgt.dim())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        Ok(rows)
    }
}

/// The degree-d component of Hom(M, N) for presented modules: dimension and
/// representative maps, each given by its values on the generators of M.
pub fn graded_hom_component(
    m: &GradedModulePresentation,
    n: &GradedModulePresentation,
    d: i64,
) -> Result<(usize, Vec<Vec<ModPoly>>)> {
    if m.module.ring() != n.module.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = m.module.ring().clone();
    let field = ring.field;
    let pieces = ModulePieces::new(n.clone());
    let gens = m.module.rank();
    let block_dims: Vec<usize> =
        (0..gens).map(|j| pieces.dim(m.module.twist(j) + d)).collect();
    let offsets: Vec<usize> = block_dims
        .iter()
        .scan(0usize, |acc, &w| {
            let o = *acc;
            *acc += w;
            Some(o)
        })
        .collect();
    let total: usize = block_dims.iter().sum();
    if total == 0 {
        return Ok((0, Vec::new()));
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for rel in &m.relations {
        let Some(c) = rel.homogeneous_degree() else { continue };
        let tgt_dim = pieces.dim(c + d);
        if tgt_dim == 0 {
            continue;
        }
        let mut block_rows = vec![vec![Scalar::zero(field); total]; tgt_dim];
        for j in 0..gens {
            let f = rel.component(j);
            if f.is_zero() || block_dims[j] == 0 {
                continue;
            }
            let mult = pieces.mult_matrix(&f, m.module.twist(j) + d)?;
            for (r, row) in mult.iter().enumerate() {
                for (k, s) in row.iter().enumerate() {
                    block_rows[r][offsets[j] + k] = block_rows[r][offsets[j] + k].add(s);
                }
            }
        }
        rows.extend(block_rows);
    }
    let kernel = kernel_basis(rows, total, field);
    let reps = kernel
        .iter()
        .map(|v| {
            (0..gens)
                .map(|j| {
                    let slice = &v[offsets[j]..offsets[j] + block_dims[j]];
                    pieces.element(m.module.twist(j) + d, slice)
                })
                .collect()
        })
        .collect();
    Ok((kernel.len(), reps))
}

/// dim_k [Ext^j(M, N)]_d, computed as cohomology of [Hom(F_•, N)]_d for a
/// minimal free resolution F_• of M.
pub fn ext_component_dim(
    m: &GradedModulePresentation,
    n: &GradedModulePresentation,
    j: usize,
    d: i64,
) -> Result<usize> {
    if m.module.ring() != n.module.ring() {
        return Err(Error::RingMismatch);
    }
    let res = free_resolution(m, true)?;
    if j > res.length() {
        return Ok(0);
    }
    let pieces = ModulePieces::new(n.clone());
    let field = m.module.ring().field;

    // [Hom(F_i, N)]_d = ⊕_p [N]_{twist_i(p) + d}
    let hom_dims = |i: usize| -> (Vec<usize>, Vec<usize>, usize) {
        let f = &res.modules()[i];
        let dims: Vec<usize> = (0..f.rank()).map(|p| pieces.dim(f.twist(p) + d)).collect();
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0usize, |acc, &w| {
                let o = *acc;
                *acc += w;
                Some(o)
            })
            .collect();
        let total = dims.iter().sum();
        (dims, offsets, total)
    };

    // matrix of δ^i: [Hom(F_i,N)]_d -> [Hom(F_{i+1},N)]_d, φ ↦ φ∘d_{i+1}
    let delta = |i: usize| -> Result<(Vec<Vec<Scalar>>, usize)> {
        let (src_dims, src_off, src_total) = hom_dims(i);
        if i + 1 > res.length() {
            return Ok((Vec::new(), src_total));
        }
        let (tgt_dims, tgt_off, tgt_total) = hom_dims(i + 1);
        let dmat = res.map(i + 1).unwrap();
        let fi = &res.modules()[i];
        let mut rows = vec![vec![Scalar::zero(field); src_total]; tgt_total];
        for q in 0..dmat.ncols() {
            if tgt_dims[q] == 0 {
                continue;
            }
            for p in 0..dmat.nrows() {
                let entry = dmat.entry(p, q);
                if entry.is_zero() || src_dims[p] == 0 {
                    continue;
                }
                let mult = pieces.mult_matrix(entry, fi.twist(p) + d)?;
                for (r, row) in mult.iter().enumerate() {
                    for (k, s) in row.iter().enumerate() {
                        let cell = &mut rows[tgt_off[q] + r][src_off[p] + k];
                        *cell = cell.add(s);
                    }
                }
            }
        }
        Ok((rows, src_total))
    };

    let (dj, cj) = delta(j)?;
    let ker_dim = cj - rank(dj);
    let im_dim = if j == 0 {
        0
    } else {
        let (dprev, _) = delta(j - 1)?;
        rank(dprev)
    };
    Ok(ker_dim - im_dim)
}
