//! Congruences: principal congruence generation, congruence lattices,
//! quotients and Mal'cev-style properties.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::lattice::Lattice;
use crate::{Elem, Error, Result};

/// A partition of the carrier in canonical form: block ids are numbered in
/// order of their least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    ids: Vec<u32>,
}

/// Which operations a congruence must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subject {
    /// The lattice operations together with the complementation.
    Algebra,
    /// Join and meet only.
    LatticeReduct,
}

impl Congruence {
    /// Groups elements by equal keys; `keys` lists the key of each element.
    pub fn from_keys<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut numbering = HashMap::new();
        let ids = keys
            .into_iter()
            .map(|k| {
                let next = numbering.len() as u32;
                *numbering.entry(k).or_insert(next)
            })
            .collect();
        Congruence { ids }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Elem>]) -> Result<Self> {
        let mut key = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::Input(format!("element {e} out of range")));
                }
                if key[e] != usize::MAX {
                    return Err(Error::Input(format!("element {e} appears in two blocks")));
                }
                key[e] = b;
            }
        }
        if let Some(e) = key.iter().position(|&k| k == usize::MAX) {
            return Err(Error::Input(format!("element {e} is in no block")));
        }
        Ok(Congruence::from_keys(key))
    }

    /// Δ, the identity relation.
    pub fn identity(n: usize) -> Self {
        Congruence {
            ids: (0..n as u32).collect(),
        }
    }

    /// ∇, the full relation.
    pub fn full(n: usize) -> Self {
        Congruence { ids: vec![0; n] }
    }

    fn from_union_find(uf: &UnionFind<usize>, n: usize) -> Self {
        Congruence::from_keys((0..n).map(|e| uf.find(e)))
    }

    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn block_id(&self, a: Elem) -> usize {
        self.ids[a] as usize
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.ids[a] == self.ids[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.ids.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (e, &b) in self.ids.iter().enumerate() {
            out[b as usize].push(e);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Refinement order: every pair related by `self` is related by `other`.
    pub fn leq(&self, other: &Congruence) -> bool {
        let mut image = vec![u32::MAX; self.num_blocks()];
        self.ids.iter().zip(&other.ids).all(|(&s, &o)| {
            let slot = &mut image[s as usize];
            if *slot == u32::MAX {
                *slot = o;
            }
            *slot == o
        })
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        Congruence::from_keys(self.ids.iter().zip(&other.ids))
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let mut uf = UnionFind::new(n);
        for rel in [self, other] {
            let mut first = vec![usize::MAX; rel.num_blocks()];
            for e in 0..n {
                let b = rel.ids[e] as usize;
                if first[b] == usize::MAX {
                    first[b] = e;
                } else {
                    uf.union(first[b], e);
                }
            }
        }
        Congruence::from_union_find(&uf, n)
    }

    /// First pair `(a, b)` with `a θ b` and an operation breaking it,
    /// reported as the two related elements; `None` if compatible.
    pub fn incompatibility(&self, alg: &Algebra, subject: Subject) -> Option<(Elem, Elem)> {
        let blocks = self.blocks();
        for block in &blocks {
            let rep = block[0];
            for &b in &block[1..] {
                if subject == Subject::Algebra && !self.related(alg.comp(rep), alg.comp(b)) {
                    return Some((rep, b));
                }
                for c in alg.elements() {
                    if !self.related(alg.join(rep, c), alg.join(b, c))
                        || !self.related(alg.meet(rep, c), alg.meet(b, c))
                    {
                        return Some((rep, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, alg: &Algebra, subject: Subject) -> bool {
        self.incompatibility(alg, subject).is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "blocks": self.blocks() })
    }

    pub fn from_json(v: &serde_json::Value, n: usize) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Doc {
            blocks: Vec<Vec<Elem>>,
        }
        let doc: Doc = serde_json::from_value(v.clone())?;
        Congruence::from_blocks(n, &doc.blocks)
    }
}

/// The least congruence of `subject` containing every pair in `pairs`.
pub fn generated_congruence(alg: &Algebra, pairs: &[(Elem, Elem)], subject: Subject) -> Congruence {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(Elem, Elem)> = pairs.to_vec();
    // Each merged pair is pushed through every one-step translation; the
    // union-find supplies transitivity.
    while let Some((u, v)) = work.pop() {
        if !uf.union(u, v) {
            continue;
        }
        if subject == Subject::Algebra {
            work.push((alg.comp(u), alg.comp(v)));
        }
        for c in alg.elements() {
            work.push((alg.join(u, c), alg.join(v, c)));
            work.push((alg.meet(u, c), alg.meet(v, c)));
        }
    }
    Congruence::from_union_find(&uf, n)
}

pub fn principal_congruence(alg: &Algebra, a: Elem, b: Elem, subject: Subject) -> Congruence {
    generated_congruence(alg, &[(a, b)], subject)
}

/// All congruences of an algebra ordered by refinement.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    /// Sorted by decreasing number of blocks, so Δ comes first and ∇ last.
    pub congruences: Vec<Congruence>,
}

/// Default cap on the number of congruences enumerated.
pub const MAX_CONGRUENCES: usize = 100_000;

pub fn congruence_lattice(alg: &Algebra, subject: Subject) -> Result<CongruenceLattice> {
    congruence_lattice_capped(alg, subject, MAX_CONGRUENCES)
}

/// Join-closure of the principal congruences, with a cap on the result.
pub fn congruence_lattice_capped(
    alg: &Algebra,
    subject: Subject,
    cap: usize,
) -> Result<CongruenceLattice> {
    let n = alg.size();
    let pairs: Vec<(Elem, Elem)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let principals: Vec<Congruence> = pairs
        .par_iter()
        .map(|&(a, b)| principal_congruence(alg, a, b, subject))
        .collect();
    let mut distinct: Vec<Congruence> = Vec::new();
    let mut seen = HashSet::new();
    for p in principals {
        if seen.insert(p.clone()) {
            distinct.push(p);
        }
    }
    let principals = distinct;
    seen.clear();
    let mut all = vec![Congruence::identity(n)];
    seen.insert(all[0].clone());
    let mut i = 0;
    while i < all.len() {
        for p in &principals {
            let j = all[i].join(p);
            if seen.insert(j.clone()) {
                if all.len() >= cap {
                    return Err(Error::budget(
                        format!("more than {cap} congruences"),
                        cap as u64,
                    ));
                }
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    Ok(CongruenceLattice { congruences: all })
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn identity(&self) -> &Congruence {
        &self.congruences[0]
    }

    pub fn full(&self) -> &Congruence {
        self.congruences.last().expect("non-empty")
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.congruences[i].leq(&self.congruences[j])
    }

    /// Congruences covering Δ.
    pub fn atoms(&self) -> Vec<usize> {
        let nontrivial: Vec<usize> = (1..self.len())
            .filter(|&i| !self.congruences[i].is_identity())
            .collect();
        nontrivial
            .iter()
            .copied()
            .filter(|&i| !nontrivial.iter().any(|&j| j != i && self.leq(j, i)))
            .collect()
    }

    /// The least congruence other than Δ, if there is one.
    pub fn monolith(&self) -> Option<&Congruence> {
        match self.atoms().as_slice() {
            [i] => Some(&self.congruences[*i]),
            _ => None,
        }
    }

    /// The congruences as a lattice under refinement, labelled `c0, c1, …`.
    pub fn as_lattice(&self) -> Lattice {
        let labels: Vec<String> = (0..self.len()).map(|i| format!("c{i}")).collect();
        let leq: Vec<Vec<bool>> = (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect();
        Lattice::from_leq(&labels, &leq).expect("congruences form a lattice")
    }
}

/// `(subdirectly irreducible, monolith)`. A one-element algebra is not
/// subdirectly irreducible.
pub fn subdirect_irreducibility(alg: &Algebra) -> Result<(bool, Option<Congruence>)> {
    let con = congruence_lattice(alg, Subject::Algebra)?;
    let m = con.monolith().cloned();
    Ok((m.is_some(), m))
}

pub fn quotient(alg: &Algebra, theta: &Congruence) -> Result<Algebra> {
    if theta.size() != alg.size() || !theta.is_compatible(alg, Subject::Algebra) {
        return Err(Error::IncompatibleCongruence);
    }
    let blocks = theta.blocks();
    let k = blocks.len();
    // Blocks are numbered by least member, which is a linear extension of
    // the quotient order.
    let labels = blocks.iter().map(|b| alg.label(b[0]).to_string()).collect();
    let mut meet = vec![0u32; k * k];
    let mut join = vec![0u32; k * k];
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            meet[i * k + j] = theta.block_id(alg.meet(bi[0], bj[0])) as u32;
            join[i * k + j] = theta.block_id(alg.join(bi[0], bj[0])) as u32;
        }
    }
    let comp = blocks
        .iter()
        .map(|b| theta.block_id(alg.comp(b[0])))
        .collect();
    Algebra::new(Lattice::from_tables(labels, meet, join), comp)
}

/// Compares Con of the algebra with Con of its lattice reduct; on a
/// mismatch returns the first lattice congruence that breaks ′.
pub fn reduct_congruence_comparison(alg: &Algebra) -> Result<(bool, Option<Congruence>)> {
    let reduct = congruence_lattice(alg, Subject::LatticeReduct)?;
    let witness = reduct
        .congruences
        .iter()
        .find(|c| !c.is_compatible(alg, Subject::Algebra))
        .cloned();
    Ok((witness.is_none(), witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MalcevReport {
    pub permutable: bool,
    pub cong_distributive: bool,
    pub regular: bool,
    pub pixley_p_ok: bool,
    pub pixley_q_ok: bool,
    pub reg_terms_ok: bool,
}

/// `θ ∘ φ` as one bitset row per element.
fn compose(theta: &Congruence, phi: &Congruence) -> Vec<FixedBitSet> {
    let n = theta.size();
    let tb = theta.blocks();
    let pb = phi.blocks();
    let mut phi_rows: Vec<FixedBitSet> = Vec::with_capacity(pb.len());
    for b in &pb {
        let mut s = FixedBitSet::with_capacity(n);
        s.extend(b.iter().copied());
        phi_rows.push(s);
    }
    let mut rows_by_block: Vec<FixedBitSet> = Vec::with_capacity(tb.len());
    for block in &tb {
        let mut s = FixedBitSet::with_capacity(n);
        for &b in block {
            s.union_with(&phi_rows[phi.block_id(b)]);
        }
        rows_by_block.push(s);
    }
    (0..n)
        .map(|a| rows_by_block[theta.block_id(a)].clone())
        .collect()
}

pub fn malcev_checks(alg: &Algebra) -> Result<MalcevReport> {
    let con = congruence_lattice(alg, Subject::Algebra)?;
    let cs = &con.congruences;
    let mut permutable = true;
    'outer: for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if compose(&cs[i], &cs[j]) != compose(&cs[j], &cs[i]) {
                permutable = false;
                break 'outer;
            }
        }
    }
    let cong_distributive = con.as_lattice().is_distributive().holds();
    let regular = (0..cs.len()).all(|i| {
        (i + 1..cs.len()).all(|j| {
            alg.elements().all(|a| {
                let bi: Vec<Elem> = alg.elements().filter(|&b| cs[i].related(a, b)).collect();
                let bj: Vec<Elem> = alg.elements().filter(|&b| cs[j].related(a, b)).collect();
                bi != bj
            })
        })
    });
    Ok(MalcevReport {
        permutable,
        cong_distributive,
        regular,
        pixley_p_ok: alg.satisfies_builtin("PIXLEY-P"),
        pixley_q_ok: alg.satisfies_builtin("PIXLEY-Q"),
        reg_terms_ok: alg.satisfies_builtin("REG-D") || alg.satisfies_builtin("REG-DD"),
    })
}
