//! Stanley–Reisner complexes and Hochster's formula, an independent oracle
//! for the local cohomology tables of squarefree monomial quotients.

use crate::cohomology::CohomologyTable;
use crate::error::{Error, Result};
use crate::hilbert::{binomial, HilbertSeries};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::pieces::rank;
use crate::poly::{Polynomial, RingRef};
use crate::scalar::{FieldSpec, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub const MAX_VERTICES: usize = 24;

/// A simplicial complex on vertices 0..nverts, faces stored as bitmasks.
/// The void complex (no faces at all) and the irrelevant complex {∅} are
/// distinct: the former has no facets, the latter has the single facet 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    nverts: usize,
    facets: Vec<u32>,
}

impl SimplicialComplex {
    pub fn from_facets(nverts: usize, facets: Vec<u32>) -> Result<SimplicialComplex> {
        if nverts > MAX_VERTICES {
            return Err(Error::TooManyVariables(nverts, MAX_VERTICES));
        }
        let full: u32 = if nverts == 32 { u32::MAX } else { (1u32 << nverts) - 1 };
        let mut maximal: Vec<u32> = Vec::new();
        for f in facets {
            debug_assert_eq!(f & !full, 0, "facet uses vertices outside the range");
            let f = f & full;
            if maximal.iter().any(|&g| f & !g == 0) {
                continue;
            }
            maximal.retain(|&g| g & !f != 0);
            maximal.push(f);
        }
        maximal.sort_unstable();
        Ok(SimplicialComplex { nverts, facets: maximal })
    }

    /// The complex with no faces whatsoever.
    pub fn void(nverts: usize) -> SimplicialComplex {
        SimplicialComplex { nverts, facets: Vec::new() }
    }

    /// The complex whose only face is the empty face.
    pub fn irrelevant(nverts: usize) -> SimplicialComplex {
        SimplicialComplex { nverts, facets: vec![0] }
    }

    pub fn full_simplex(nverts: usize) -> Result<SimplicialComplex> {
        if nverts > MAX_VERTICES {
            return Err(Error::TooManyVariables(nverts, MAX_VERTICES));
        }
        let full = if nverts == 0 { 0 } else { (1u32 << nverts) - 1 };
        Ok(SimplicialComplex { nverts, facets: vec![full] })
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn facets(&self) -> &[u32] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: u32) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// Every face, as sorted bitmasks (the empty face included unless void).
    pub fn faces(&self) -> Vec<u32> {
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        for &f in &self.facets {
            // enumerate the subsets of f
            let mut sub = f;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        seen.into_iter().collect()
    }

    /// Topological dimension: max |σ| − 1, or None for the void complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets
            .iter()
            .map(|f| f.count_ones() as i64 - 1)
            .max()
    }

    /// The link of a face: lk σ = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}.
    pub fn link(&self, sigma: u32) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::FaceNotInComplex);
        }
        let facets = self
            .facets
            .iter()
            .filter(|&&f| sigma & !f == 0)
            .map(|&f| f & !sigma)
            .collect();
        SimplicialComplex::from_facets(self.nverts, facets)
    }

    /// dim_k H̃^j(Δ; k) from the ranks of the simplicial coboundary maps,
    /// with the empty face generating C^{-1}.
    pub fn reduced_cohomology_dim(&self, j: i64, field: FieldSpec) -> usize {
        if self.is_void() || j < -1 {
            return 0;
        }
        let faces = self.faces();
        let mut by_card: Vec<Vec<u32>> = vec![Vec::new(); self.nverts + 1];
        for &f in &faces {
            by_card[f.count_ones() as usize].push(f);
        }
        let card = (j + 1) as usize;
        if card > self.nverts || by_card[card].is_empty() {
            return 0;
        }
        let dim_cj = by_card[card].len();
        let up = coboundary_rank(&by_card, card, field);
        let down = if card == 0 { 0 } else { coboundary_rank(&by_card, card - 1, field) };
        dim_cj - up - down
    }

    /// The reduced Euler characteristic Σ_j (−1)^j f_j, empty face at j = −1.
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for f in self.faces() {
            if f.count_ones() % 2 == 0 {
                acc -= 1;
            } else {
                acc += 1;
            }
        }
        acc
    }
}

/// Rank of δ: C^{card−1} → C^{card} (cochain groups indexed by face
/// cardinality; card counts vertices, so C^{card−1} has the card-element
/// faces as its basis is shifted by one).
fn coboundary_rank(by_card: &[Vec<u32>], card: usize, field: FieldSpec) -> usize {
    if card + 1 >= by_card.len() || by_card[card].is_empty() || by_card[card + 1].is_empty() {
        return 0;
    }
    let target_index: HashMap<u32, usize> = by_card[card + 1]
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, i))
        .collect();
    let ncols = by_card[card + 1].len();
    let mut rows = Vec::with_capacity(by_card[card].len());
    for &sigma in &by_card[card] {
        let mut row = vec![Scalar::zero(field); ncols];
        for v in 0..32u32 {
            let bit = 1u32 << v;
            if sigma & bit != 0 {
                continue;
            }
            if let Some(&col) = target_index.get(&(sigma | bit)) {
                let below = (sigma & (bit - 1)).count_ones();
                let sign = if below % 2 == 0 { 1 } else { -1 };
                row[col] = Scalar::from_i64(field, sign);
            }
        }
        rows.push(row);
    }
    rank(rows)
}

/// The Stanley–Reisner complex of a squarefree monomial ideal: faces are
/// the σ whose monomial x_σ lies outside I.
pub fn stanley_reisner_complex(ideal: &Ideal) -> Result<SimplicialComplex> {
    if !ideal.is_squarefree_monomial() {
        return Err(Error::NotSquarefree);
    }
    let n = ideal.ring().nvars();
    if ideal.is_zero_ideal() {
        return SimplicialComplex::full_simplex(n);
    }
    let nonfaces: Vec<u32> = ideal
        .monomial_generators()?
        .iter()
        .map(|m| m.support())
        .collect();
    if nonfaces.contains(&0) {
        return Ok(SimplicialComplex::void(n));
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut facets = Vec::new();
    for sigma in 0..=full {
        if nonfaces.iter().any(|&g| g & !sigma == 0) {
            continue;
        }
        // maximal iff adding any missing vertex creates a non-face
        let maximal = (0..n as u32).all(|v| {
            let bit = 1u32 << v;
            sigma & bit != 0 || nonfaces.iter().any(|&g| g & !(sigma | bit) == 0)
        });
        if maximal {
            facets.push(sigma);
        }
    }
    SimplicialComplex::from_facets(n, facets)
}

/// The Stanley–Reisner ideal of a complex: generated by the minimal
/// non-faces.
pub fn stanley_reisner_ideal(cx: &SimplicialComplex, ring: &RingRef) -> Result<Ideal> {
    if ring.nvars() != cx.nverts() {
        return Err(Error::DimensionMismatch(ring.nvars(), cx.nverts()));
    }
    let n = cx.nverts();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut gens = Vec::new();
    for sigma in 0..=full {
        if cx.contains(sigma) {
            continue;
        }
        let minimal = (0..n as u32).all(|v| {
            let bit = 1u32 << v;
            sigma & bit == 0 || cx.contains(sigma & !bit)
        });
        if minimal {
            let exps: Vec<u32> =
                (0..n as u32).map(|v| u32::from(sigma & (1 << v) != 0)).collect();
            gens.push(Polynomial::monomial(ring, Monomial::new(exps)));
        }
    }
    Ideal::new(ring.clone(), gens)
}

/// Hochster's formula assembled into the same Ext-side table produced by
/// local duality: for each face σ with s = |σ|, dim H̃^{i−s−1}(lk σ; k)
/// contributes t^{s−n}(1−t)^{n−s} to the numerator of row i.
pub fn hochster_table(ideal: &Ideal) -> Result<CohomologyTable> {
    let cx = stanley_reisner_complex(ideal)?;
    let n = ideal.ring().nvars();
    let field = ideal.ring().field;
    let mut rows: Vec<BTreeMap<i64, BigInt>> = vec![BTreeMap::new(); n + 1];
    for sigma in cx.faces() {
        let s = sigma.count_ones() as usize;
        let lk = cx.link(sigma)?;
        for i in s..=n {
            let c = lk.reduced_cohomology_dim(i as i64 - s as i64 - 1, field);
            if c == 0 {
                continue;
            }
            // c * t^{s-n} (1-t)^{n-s}
            for jj in 0..=(n - s) {
                let coeff = binomial((n - s) as i64, jj as i64) * BigInt::from(c);
                let signed = if jj % 2 == 0 { coeff } else { -coeff };
                let e = s as i64 - n as i64 + jj as i64;
                let slot = rows[i].entry(e).or_insert_with(BigInt::zero);
                *slot += signed;
                if slot.is_zero() {
                    rows[i].remove(&e);
                }
            }
        }
    }
    let ext_series: Vec<HilbertSeries> = rows
        .into_iter()
        .map(|num| HilbertSeries::from_numerator(num, n as u32))
        .collect();
    Ok(CohomologyTable::from_ext_series(n, ext_series))
}
