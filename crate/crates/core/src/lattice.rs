//! Finite bounded lattices stored as full operation tables.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::{Elem, Error, Result, Verdict};

/// A finite bounded lattice on the carrier `0..n`.
///
/// Index 0 is the bottom and index `n − 1` the top; every other index
/// follows a linear extension of the order, so `a ≤ b` implies `a ≤ b` as
/// integers. Meet and join are precomputed for every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    meet: Vec<u32>,
    join: Vec<u32>,
}

/// Element-wise distributivity data for a single element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementProfile {
    pub element: Elem,
    pub distributive: bool,
    pub dually_distributive: bool,
    pub standard: bool,
    pub dually_standard: bool,
    pub neutral: bool,
    pub complements: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProfile {
    pub length: usize,
    pub width: usize,
    pub atoms: Vec<Elem>,
    pub coatoms: Vec<Elem>,
}

fn check_labels<S: AsRef<str>>(labels: &[S]) -> Result<Vec<String>> {
    if labels.is_empty() {
        return Err(Error::Input("a lattice needs at least one element".into()));
    }
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(j) = seen.insert(l.as_ref().to_string(), i) {
            return Err(Error::Input(format!(
                "label {} used twice (positions {j} and {i})",
                l.as_ref()
            )));
        }
    }
    Ok(labels.iter().map(|l| l.as_ref().to_string()).collect())
}

impl Lattice {
    /// Builds a lattice from its Hasse diagram; `(i, j)` means `i ≺ j`.
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(usize, usize)]) -> Result<Self> {
        let labels = check_labels(labels)?;
        let n = labels.len();
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for (i, r) in rel.iter_mut().enumerate() {
            r.insert(i);
        }
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(Error::Input(format!("cover ({i}, {j}) out of range")));
            }
            rel[i].insert(j);
        }
        // Warshall on bit rows: rel[i] ⊇ rel[k] whenever i ≤ k.
        for k in 0..n {
            let row_k = rel[k].clone();
            for row in rel.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_relation(labels, rel)
    }

    /// Builds a lattice from a full order relation, `leq[i][j]` meaning `i ≤ j`.
    pub fn from_leq<S: AsRef<str>>(labels: &[S], leq: &[Vec<bool>]) -> Result<Self> {
        let labels = check_labels(labels)?;
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Input("leq must be an n×n matrix".into()));
        }
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    rel[i].insert(j);
                }
            }
        }
        for i in 0..n {
            if !rel[i].contains(i) {
                return Err(Error::NotAPartialOrder(format!(
                    "{} ≰ {}",
                    labels[i], labels[i]
                )));
            }
            for k in rel[i].ones() {
                if !rel[k].is_subset(&rel[i]) {
                    let j = rel[k].difference(&rel[i]).next().unwrap();
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive: {} ≤ {} ≤ {} but {} ≰ {}",
                        labels[i], labels[k], labels[j], labels[i], labels[j]
                    )));
                }
            }
        }
        Self::from_relation(labels, rel)
    }

    /// `rel` is reflexive and transitive; rows are up-sets in input order.
    fn from_relation(labels: Vec<String>, rel: Vec<FixedBitSet>) -> Result<Self> {
        let n = labels.len();
        for i in 0..n {
            for j in rel[i].ones() {
                if j != i && rel[j].contains(i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} ≤ {} and {} ≤ {}",
                        labels[i], labels[j], labels[j], labels[i]
                    )));
                }
            }
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in rel[i].ones() {
                below[j].insert(i);
            }
        }
        // Kahn's algorithm taking the smallest available input position, so
        // an input that already lists a linear extension keeps its order.
        let mut placed = FixedBitSet::with_capacity(n);
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&x| {
                    !placed.contains(x) && below[x].ones().all(|y| y == x || placed.contains(y))
                })
                .expect("antisymmetric relation has a minimal element");
            placed.insert(next);
            order.push(next);
        }
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for old in 0..n {
            for old_j in rel[old].ones() {
                up[position[old]].insert(position[old_j]);
                down[position[old_j]].insert(position[old]);
            }
        }
        let labels: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        if up[0].count_ones(..) != n {
            return Err(Error::Unbounded("bottom"));
        }
        if down[n - 1].count_ones(..) != n {
            return Err(Error::Unbounded("top"));
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = Self::bound(&down, a, b, true).ok_or_else(|| Error::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    op: "meet",
                })?;
                let j = Self::bound(&up, a, b, false).ok_or_else(|| Error::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    op: "join",
                })?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        Ok(Lattice {
            labels,
            up,
            down,
            meet,
            join,
        })
    }

    /// Greatest common lower bound (or least common upper bound), if any.
    fn bound(sets: &[FixedBitSet], a: usize, b: usize, greatest: bool) -> Option<usize> {
        let mut common = sets[a].clone();
        common.intersect_with(&sets[b]);
        let cand = if greatest {
            common.maximum()?
        } else {
            common.minimum()?
        };
        common.is_subset(&sets[cand]).then_some(cand)
    }

    /// Builds a lattice from operation tables that are already known to be
    /// correct and indexed by a linear extension (bottom first, top last).
    pub(crate) fn from_tables(labels: Vec<String>, meet: Vec<u32>, join: Vec<u32>) -> Self {
        let n = labels.len();
        debug_assert_eq!(meet.len(), n * n);
        debug_assert_eq!(join.len(), n * n);
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in 0..n {
                if meet[a * n + b] as usize == a {
                    debug_assert!(a <= b, "table order is not a linear extension");
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        Lattice {
            labels,
            up,
            down,
            meet,
            join,
        }
    }

    /// The sublattice on `elems`, which must be closed under meet and join.
    /// Elements keep their relative order.
    pub(crate) fn restrict(&self, elems: &[Elem], labels: Vec<String>) -> Self {
        let k = elems.len();
        let mut index = vec![usize::MAX; self.size()];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i;
        }
        let mut meet = vec![0u32; k * k];
        let mut join = vec![0u32; k * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let m = index[self.meet(a, b)];
                let jn = index[self.join(a, b)];
                assert!(
                    m != usize::MAX && jn != usize::MAX,
                    "subset is not a sublattice"
                );
                meet[i * k + j] = m as u32;
                join[i * k + j] = jn as u32;
            }
        }
        Lattice::from_tables(labels, meet, join)
    }

    /// Direct product, with `(a, b)` stored at index `a·|B| + b`.
    pub fn product(a: &Lattice, b: &Lattice) -> Lattice {
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        let mut labels = Vec::with_capacity(n);
        for x in 0..na {
            for y in 0..nb {
                labels.push(format!("({},{})", a.label(x), b.label(y)));
            }
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for p in 0..n {
            let (x1, y1) = (p / nb, p % nb);
            for q in 0..n {
                let (x2, y2) = (q / nb, q % nb);
                meet[p * n + q] = (a.meet(x1, x2) * nb + b.meet(y1, y2)) as u32;
                join[p * n + q] = (a.join(x1, x2) * nb + b.join(y1, y2)) as u32;
            }
        }
        Lattice::from_tables(labels, meet, join)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn bottom(&self) -> Elem {
        0
    }

    pub fn top(&self) -> Elem {
        self.size() - 1
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b] as usize
    }

    pub fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: Elem) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    /// Hasse diagram as sorted `(lower, upper)` pairs.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                let mut between = self.up[a].clone();
                between.intersect_with(&self.down[b]);
                if between.count_ones(..) == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.leq(a, b)).collect())
            .collect()
    }

    pub fn complements_of(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&b| self.join(a, b) == self.top() && self.meet(a, b) == self.bottom())
            .collect()
    }

    pub fn is_complemented(&self) -> bool {
        self.elements().all(|a| !self.complements_of(a).is_empty())
    }

    /// First triple `(x, y, z)` with `x ≤ z` and `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`.
    pub fn is_modular(&self) -> Verdict<(Elem, Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.up[x].ones() {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Verdict::Fails((x, y, z));
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// First triple with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn is_distributive(&self) -> Verdict<(Elem, Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return Verdict::Fails((x, y, z));
                    }
                }
            }
        }
        Verdict::Holds
    }

    fn all_pairs(&self, law: impl Fn(Elem, Elem) -> bool) -> bool {
        self.elements().all(|x| self.elements().all(|y| law(x, y)))
    }

    pub fn is_distributive_element(&self, a: Elem) -> bool {
        self.all_pairs(|x, y| {
            self.join(a, self.meet(x, y)) == self.meet(self.join(a, x), self.join(a, y))
        })
    }

    pub fn is_dually_distributive_element(&self, a: Elem) -> bool {
        self.all_pairs(|x, y| {
            self.meet(a, self.join(x, y)) == self.join(self.meet(a, x), self.meet(a, y))
        })
    }

    pub fn is_standard_element(&self, a: Elem) -> bool {
        self.all_pairs(|x, y| {
            self.meet(x, self.join(a, y)) == self.join(self.meet(x, a), self.meet(x, y))
        })
    }

    pub fn is_dually_standard_element(&self, a: Elem) -> bool {
        self.all_pairs(|x, y| {
            self.join(x, self.meet(a, y)) == self.meet(self.join(x, a), self.join(x, y))
        })
    }

    pub fn is_neutral_element(&self, a: Elem) -> bool {
        self.all_pairs(|x, y| {
            let upper = self.meet(self.meet(self.join(a, x), self.join(a, y)), self.join(x, y));
            let lower = self.join(self.join(self.meet(a, x), self.meet(a, y)), self.meet(x, y));
            upper == lower
        })
    }

    pub fn element_profile(&self, a: Elem) -> ElementProfile {
        ElementProfile {
            element: a,
            distributive: self.is_distributive_element(a),
            dually_distributive: self.is_dually_distributive_element(a),
            standard: self.is_standard_element(a),
            dually_standard: self.is_dually_standard_element(a),
            neutral: self.is_neutral_element(a),
            complements: self.complements_of(a),
        }
    }

    /// Height of every element: length of the longest chain from the bottom.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.size()];
        for x in self.elements() {
            h[x] = self.down[x]
                .ones()
                .filter(|&y| y != x)
                .map(|y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    pub fn atoms(&self) -> Vec<Elem> {
        self.covers()
            .into_iter()
            .filter(|&(a, _)| a == self.bottom())
            .map(|(_, b)| b)
            .collect()
    }

    pub fn coatoms(&self) -> Vec<Elem> {
        self.covers()
            .into_iter()
            .filter(|&(_, b)| b == self.top())
            .map(|(a, _)| a)
            .collect()
    }

    /// Size of a largest antichain, via Dilworth: `n` minus a maximum
    /// matching in the strict comparability graph.
    pub fn width(&self) -> usize {
        let n = self.size();
        let mut matched_right: Vec<Option<usize>> = vec![None; n];
        let mut matching = 0;
        for left in 0..n {
            let mut seen = vec![false; n];
            if self.augment(left, &mut seen, &mut matched_right) {
                matching += 1;
            }
        }
        n - matching
    }

    fn augment(&self, left: usize, seen: &mut [bool], matched_right: &mut [Option<usize>]) -> bool {
        for right in self.up[left].ones() {
            if right == left || seen[right] {
                continue;
            }
            seen[right] = true;
            let free = match matched_right[right] {
                None => true,
                Some(other) => self.augment(other, seen, matched_right),
            };
            if free {
                matched_right[right] = Some(left);
                return true;
            }
        }
        false
    }

    pub fn profile(&self) -> LatticeProfile {
        LatticeProfile {
            length: self.heights()[self.top()],
            width: self.width(),
            atoms: self.atoms(),
            coatoms: self.coatoms(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> Lattice {
        Lattice::from_covers(&["0", "1"], &[(0, 1)]).unwrap()
    }

    fn diamond() -> Lattice {
        Lattice::from_covers(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap()
    }

    fn pentagon() -> Lattice {
        Lattice::from_covers(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn two_chain_is_min_max() {
        let l = chain2();
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
        assert!(l.leq(0, 1) && !l.leq(1, 0));
    }

    #[test]
    fn diamond_atoms_are_complements() {
        let l = diamond();
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.complements_of(1), vec![2, 3]);
        assert_eq!(l.complements_of(0), vec![4]);
    }

    #[test]
    fn pentagon_complement_of_a_is_c() {
        let l = pentagon();
        assert_eq!(l.complements_of(1), vec![3]);
        let w = l.is_modular();
        let (x, y, z) = *w.witness().unwrap();
        assert!(l.leq(x, z));
        assert_ne!(l.join(x, l.meet(y, z)), l.meet(l.join(x, y), z));
    }

    #[test]
    fn missing_top_is_unbounded() {
        let err =
            Lattice::from_covers(&["0", "a", "b", "c"], &[(0, 1), (0, 2), (0, 3)]).unwrap_err();
        assert!(matches!(err, Error::Unbounded("top")));
    }

    #[test]
    fn cycle_is_not_a_partial_order() {
        let err = Lattice::from_covers(&["0", "a", "1"], &[(0, 1), (1, 2), (2, 1)]).unwrap_err();
        assert!(matches!(err, Error::NotAPartialOrder(_)));
    }

    #[test]
    fn two_upper_bounds_without_join_is_not_a_lattice() {
        // 0 < a, b < c, d < 1: a and b have two minimal upper bounds.
        let err = Lattice::from_covers(
            &["0", "a", "b", "c", "d", "1"],
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap_err();
        match err {
            Error::NotALattice { a, b, op } => {
                assert_eq!((a.as_str(), b.as_str(), op), ("a", "b", "join"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn input_order_is_normalised() {
        let l = Lattice::from_covers(&["1", "a", "0"], &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(l.labels(), &["0", "a", "1"]);
        assert_eq!(l.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn leq_input_must_be_transitive() {
        let leq = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(
            Lattice::from_leq(&["0", "a", "1"], &leq),
            Err(Error::NotAPartialOrder(_))
        ));
    }

    #[test]
    fn bounds_are_neutral() {
        for l in [diamond(), pentagon(), chain2()] {
            for e in [l.bottom(), l.top()] {
                let p = l.element_profile(e);
                assert!(p.neutral && p.standard && p.dually_standard);
                assert!(p.distributive && p.dually_distributive);
            }
        }
    }

    #[test]
    fn diamond_atom_has_no_distributivity() {
        let p = diamond().element_profile(1);
        assert!(!p.distributive && !p.dually_distributive);
        assert!(!p.standard && !p.dually_standard && !p.neutral);
    }

    #[test]
    fn diamond_profile() {
        let p = diamond().profile();
        assert_eq!((p.length, p.width), (2, 3));
        assert_eq!(p.atoms, vec![1, 2, 3]);
        assert_eq!(p.coatoms, vec![1, 2, 3]);
        assert!(diamond().is_modular().holds());
        assert!(!diamond().is_distributive().holds());
    }

    #[test]
    fn one_element_lattice() {
        let l = Lattice::from_covers(&["0"], &[]).unwrap();
        assert_eq!(l.top(), l.bottom());
        assert_eq!(l.profile().length, 0);
        assert_eq!(l.width(), 1);
    }
}
