//! Elements of graded free modules, module Groebner bases under a
//! position-over-term order, and the graph construction used for syzygies
//! and submodule membership with cofactors.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A graded free module ⊕_i R(-a_i); `twists[i]` is a_i, so the generator
/// e_i sits in degree a_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: RingRef,
    twists: Vec<i64>,
}

pub type FreeModuleRef = Arc<FreeModule>;

impl FreeModule {
    pub fn new(ring: RingRef, twists: Vec<i64>) -> FreeModuleRef {
        Arc::new(FreeModule { ring, twists })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> i64 {
        self.twists[i]
    }
}

/// An element of a free module in canonical form: terms (c, position,
/// monomial) with no zero coefficients, strictly decreasing under the
/// position-over-term order (lower position index wins, ties broken by the
/// ring's monomial order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    module: FreeModuleRef,
    terms: Vec<(Scalar, usize, Monomial)>,
}

fn pot_compare(
    module: &FreeModule,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    // position-over-term: e_0 > e_1 > ...
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => module.ring.order.compare_unchecked(a.1, b.1),
    }
}

impl ModPoly {
    pub fn zero(module: &FreeModuleRef) -> Self {
        ModPoly { module: module.clone(), terms: Vec::new() }
    }

    pub fn generator(module: &FreeModuleRef, pos: usize) -> Self {
        assert!(pos < module.rank());
        ModPoly {
            module: module.clone(),
            terms: vec![(
                Scalar::one(module.ring.field),
                pos,
                Monomial::one(module.ring.nvars()),
            )],
        }
    }

    /// Canonicalizes arbitrary (coefficient, position, monomial) triples.
    pub fn from_terms(module: &FreeModuleRef, triples: Vec<(Scalar, usize, Monomial)>) -> Self {
        let mut map: HashMap<(usize, Vec<u32>), Scalar> = HashMap::new();
        for (c, p, m) in triples {
            assert!(p < module.rank());
            assert_eq!(m.nvars(), module.ring.nvars());
            let key = (p, m.exps().to_vec());
            match map.entry(key) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.insert(s);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Scalar, usize, Monomial)> = map
            .into_iter()
            .map(|((p, e), c)| (c, p, Monomial::new(e)))
            .collect();
        terms.sort_by(|a, b| pot_compare(module, (b.1, &b.2), (a.1, &a.2)));
        ModPoly { module: module.clone(), terms }
    }

    /// Embeds a polynomial as v * e_pos.
    pub fn from_polynomial(module: &FreeModuleRef, pos: usize, f: &Polynomial) -> Self {
        assert_eq!(f.ring(), &module.ring);
        ModPoly::from_terms(
            module,
            f.terms().iter().map(|(c, m)| (c.clone(), pos, m.clone())).collect(),
        )
    }

    pub fn module(&self) -> &FreeModuleRef {
        &self.module
    }

    pub fn terms(&self) -> &[(Scalar, usize, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Scalar, usize, Monomial)> {
        self.terms.first()
    }

    /// The coordinate at `pos` as a polynomial.
    pub fn component(&self, pos: usize) -> Polynomial {
        Polynomial::from_terms(
            &self.module.ring,
            self.terms
                .iter()
                .filter(|(_, p, _)| *p == pos)
                .map(|(c, _, m)| (c.clone(), m.clone()))
                .collect(),
        )
    }

    /// Internal degree of a term: twist of its position plus monomial degree.
    pub fn term_degree(&self, k: usize) -> i64 {
        let (_, p, m) = &self.terms[k];
        self.module.twist(*p) + m.total_degree() as i64
    }

    /// Degree of a homogeneous element; None for 0 or inhomogeneous values.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.terms.is_empty() {
            return None;
        }
        let d = self.term_degree(0);
        if (1..self.terms.len()).all(|k| self.term_degree(k) == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly> {
        if self.module != other.module {
            return Err(Error::RingMismatch);
        }
        Ok(self.add_unchecked(other))
    }

    pub fn add_unchecked(&self, other: &ModPoly) -> ModPoly {
        let m = &*self.module;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match pot_compare(m, (a.1, &a.2), (b.1, &b.2)) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.0.add(&b.0);
                    if !c.is_zero() {
                        out.push((c, a.1, a.2.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        ModPoly { module: self.module.clone(), terms: out }
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModPoly {
        ModPoly {
            module: self.module.clone(),
            terms: self.terms.iter().map(|(c, p, m)| (c.neg(), *p, m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModPoly {
        if c.is_zero() {
            return ModPoly::zero(&self.module);
        }
        ModPoly {
            module: self.module.clone(),
            terms: self.terms.iter().map(|(a, p, m)| (a.mul(c), *p, m.clone())).collect(),
        }
    }

    /// Multiplication by a ring term c*m; preserves sortedness.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> ModPoly {
        if c.is_zero() {
            return ModPoly::zero(&self.module);
        }
        ModPoly {
            module: self.module.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, p, t)| (a.mul(c), *p, t.mul(m).expect("exponent overflow")))
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Result<ModPoly> {
        if f.ring() != &self.module.ring {
            return Err(Error::RingMismatch);
        }
        let mut acc = ModPoly::zero(&self.module);
        for (c, m) in f.terms() {
            acc = acc.add_unchecked(&self.mul_term(c, m));
        }
        Ok(acc)
    }

    pub fn monic(&self) -> ModPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((c, _, _)) => self.scale(&c.inv()),
        }
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, p, m) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let poly = Polynomial::term(&self.module.ring, c.clone(), m.clone());
            write!(f, "({poly})*e{p}")?;
        }
        Ok(())
    }
}

/// Full normal form of `f` against module elements `basis`: no remaining
/// term is divisible (same position, dividing monomial) by a basis lead.
pub fn mod_normal_form(f: &ModPoly, basis: &[ModPoly]) -> ModPoly {
    let module = f.module().clone();
    let mut rem = ModPoly::zero(&module);
    let mut work = f.clone();
    'outer: while let Some((c, p, m)) =
        work.leading_term().map(|(c, p, m)| (c.clone(), *p, m.clone()))
    {
        for g in basis {
            let (gc, gp, gm) = match g.leading_term() {
                Some(t) => t,
                None => continue,
            };
            if *gp != p {
                continue;
            }
            if let Some(q) = m.checked_div(gm) {
                let factor = c.div(gc);
                work = work.add_unchecked(&g.mul_term(&factor.neg(), &q));
                continue 'outer;
            }
        }
        let lead = ModPoly {
            module: module.clone(),
            terms: vec![(c, p, m)],
        };
        work = work.add_unchecked(&lead.neg());
        rem = rem.add_unchecked(&lead);
    }
    rem
}

fn mod_s_polynomial(f: &ModPoly, g: &ModPoly) -> ModPoly {
    let (fc, _, fm) = f.leading_term().unwrap();
    let (gc, _, gm) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = l.checked_div(fm).unwrap();
    let b = l.checked_div(gm).unwrap();
    f.mul_term(&fc.inv(), &a)
        .add_unchecked(&g.mul_term(&gc.inv().neg(), &b))
}

/// Reduced Groebner basis of the submodule generated by `gens`, under the
/// position-over-term order. Only same-position pairs form S-vectors; the
/// coprimality shortcut is not valid for modules and is not used.
pub fn mod_buchberger(gens: &[ModPoly]) -> Result<Vec<ModPoly>> {
    let module = match gens.first() {
        Some(g) => g.module().clone(),
        None => return Ok(Vec::new()),
    };
    for g in gens {
        if g.module() != &module {
            return Err(Error::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(String::new()));
        }
    }
    let mut basis: Vec<ModPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            if lead_pos(&basis[i]) == lead_pos(&basis[j]) {
                pairs.push((i, j));
            }
        }
    }

    while !pairs.is_empty() {
        let mut best = 0;
        let mut best_deg = mod_pair_degree(&basis, pairs[0]);
        for (k, &p) in pairs.iter().enumerate().skip(1) {
            let d = mod_pair_degree(&basis, p);
            if d < best_deg || (d == best_deg && p < pairs[best]) {
                best = k;
                best_deg = d;
            }
        }
        let (i, j) = pairs.remove(best);
        let (mi, mj) = (
            basis[i].leading_term().unwrap().2.clone(),
            basis[j].leading_term().unwrap().2.clone(),
        );
        let pos = lead_pos(&basis[i]);
        // chain criterion, restricted to leads in the same position
        let l = mi.lcm(&mj);
        let mut chained = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j || lead_pos(g) != pos {
                continue;
            }
            let mk = &g.leading_term().unwrap().2;
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
        let s = mod_s_polynomial(&basis[i], &basis[j]);
        let r = mod_normal_form(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            let n = basis.len();
            let rpos = lead_pos(&r);
            for k in 0..n {
                if lead_pos(&basis[k]) == rpos {
                    pairs.push((k, n));
                }
            }
            basis.push(r);
        }
    }

    Ok(mod_reduce_basis(basis))
}

fn lead_pos(f: &ModPoly) -> usize {
    f.leading_term().unwrap().1
}

fn mod_pair_degree(basis: &[ModPoly], (i, j): (usize, usize)) -> i64 {
    let (_, p, mi) = basis[i].leading_term().unwrap();
    let (_, _, mj) = basis[j].leading_term().unwrap();
    basis[i].module().twist(*p) + mi.lcm(mj).total_degree() as i64
}

fn mod_reduce_basis(mut basis: Vec<ModPoly>) -> Vec<ModPoly> {
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (_, pi, mi) = basis[i].leading_term().unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (_, pj, mj) = basis[j].leading_term().unwrap();
            if *pj == pi && mj.divides(&mi) && (mj != &mi || j < i) {
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
    let mut out: Vec<ModPoly> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<ModPoly> = basis
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        out.push(mod_normal_form(&basis[i], &others).monic());
    }
    if let Some(first) = out.first() {
        let module = first.module().clone();
        out.sort_by(|a, b| {
            let (_, pa, ma) = a.leading_term().unwrap();
            let (_, pb, mb) = b.leading_term().unwrap();
            pot_compare(&module, (*pb, mb), (*pa, ma))
        });
    }
    out
}

/// The graph construction over F ⊕ R(-d_1)⊕...⊕R(-d_m) for generators
/// g_1..g_m ⊂ F: a Groebner basis of the span of (g_i, e_i). Elements with
/// zero F-part carry syzygies in their tag part, and reducing (v, 0) yields
/// the normal form of v with cofactors expressing v - NF(v) over the g_i.
pub struct GraphBasis {
    target: FreeModuleRef,
    ambient: FreeModuleRef,
    gens: Vec<ModPoly>,
    gb: Vec<ModPoly>,
}

impl GraphBasis {
    pub fn new(target: &FreeModuleRef, gens: Vec<ModPoly>) -> Result<GraphBasis> {
        let ring = target.ring().clone();
        let mut tag_twists = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.module() != target {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(String::new()));
            }
            // zero generators tag at degree 0; their syzygy e_i is trivial
            tag_twists.push(g.homogeneous_degree().unwrap_or(0));
        }
        let mut twists = target.twists().to_vec();
        twists.extend_from_slice(&tag_twists);
        let ambient = FreeModule::new(ring, twists);
        let base = target.rank();
        let graph_gens: Vec<ModPoly> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut terms: Vec<(Scalar, usize, Monomial)> = g
                    .terms()
                    .iter()
                    .map(|(c, p, m)| (c.clone(), *p, m.clone()))
                    .collect();
                terms.push((
                    Scalar::one(ambient.ring().field),
                    base + i,
                    Monomial::one(ambient.ring().nvars()),
                ));
                ModPoly::from_terms(&ambient, terms)
            })
            .collect();
        let gb = mod_buchberger(&graph_gens)?;
        Ok(GraphBasis { target: target.clone(), ambient, gens, gb })
    }

    /// Graph basis for an ideal: generators of a rank-1 free module R.
    pub fn for_polynomials(ring: &RingRef, polys: &[Polynomial]) -> Result<GraphBasis> {
        let target = FreeModule::new(ring.clone(), vec![0]);
        let gens = polys
            .iter()
            .map(|f| ModPoly::from_polynomial(&target, 0, f))
            .collect();
        GraphBasis::new(&target, gens)
    }

    pub fn target(&self) -> &FreeModuleRef {
        &self.target
    }

    pub fn generators(&self) -> &[ModPoly] {
        &self.gens
    }

    /// The syzygy module of (g_1..g_m): generators expressed in
    /// ⊕_i R(-deg g_i), from basis elements whose F-part vanished.
    pub fn syzygies(&self) -> Vec<ModPoly> {
        let base = self.target.rank();
        let tags = FreeModule::new(
            self.target.ring().clone(),
            self.ambient.twists()[base..].to_vec(),
        );
        self.gb
            .iter()
            .filter(|x| x.terms().iter().all(|(_, p, _)| *p >= base))
            .map(|x| {
                ModPoly::from_terms(
                    &tags,
                    x.terms()
                        .iter()
                        .map(|(c, p, m)| (c.clone(), p - base, m.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    /// Reduces `v` ∈ F modulo the submodule: returns the normal form and
    /// cofactors c_i with v = Σ c_i g_i + NF(v).
    pub fn reduce_with_cofactors(&self, v: &ModPoly) -> Result<(ModPoly, Vec<Polynomial>)> {
        if v.module() != &self.target {
            return Err(Error::RingMismatch);
        }
        let base = self.target.rank();
        let lifted = ModPoly::from_terms(
            &self.ambient,
            v.terms()
                .iter()
                .map(|(c, p, m)| (c.clone(), *p, m.clone()))
                .collect(),
        );
        let rem = mod_normal_form(&lifted, &self.gb);
        let nf = ModPoly::from_terms(
            &self.target,
            rem.terms()
                .iter()
                .filter(|(_, p, _)| *p < base)
                .map(|(c, p, m)| (c.clone(), *p, m.clone()))
                .collect(),
        );
        let cofactors = (0..self.gens.len())
            .map(|i| rem.component(base + i).neg())
            .collect();
        Ok((nf, cofactors))
    }

    pub fn contains(&self, v: &ModPoly) -> Result<bool> {
        Ok(self.reduce_with_cofactors(v)?.0.is_zero())
    }

    /// Normal form in F modulo the submodule, without cofactors.
    pub fn normal_form(&self, v: &ModPoly) -> Result<ModPoly> {
        Ok(self.reduce_with_cofactors(v)?.0)
    }
}
