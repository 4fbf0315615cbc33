//! Structure-preserving maps and the subuniverses they act on.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::algebra::Algebra;
use crate::construct::{boolean_algebra, boolean_lattice, direct_product, make_mn_prime};
use crate::{Elem, Error, Result, Verdict};

/// A bijection between two carriers, stored as `map[a] = image of a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isomorphism {
    pub map: Vec<Elem>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        Isomorphism {
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Isomorphism { map: inv }
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Isomorphism) -> Self {
        Isomorphism {
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "map": self.map })
    }
}

/// Checks that `map` is an isomorphism from `a` onto `b`.
pub fn is_isomorphism(a: &Algebra, b: &Algebra, map: &[Elem]) -> bool {
    if a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    let mut seen = vec![false; b.size()];
    for &m in map {
        if m >= b.size() || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    map[a.bottom()] == b.bottom()
        && map[a.top()] == b.top()
        && a.elements().all(|x| map[a.comp(x)] == b.comp(map[x]))
        && a.elements().all(|x| {
            a.elements().all(|y| {
                map[a.join(x, y)] == b.join(map[x], map[y])
                    && map[a.meet(x, y)] == b.meet(map[x], map[y])
            })
        })
}

/// Isomorphism-invariant data of an element used to prune the search.
fn signatures(alg: &Algebra) -> Vec<(usize, usize, usize, usize, usize, usize)> {
    let l = alg.lattice();
    let heights = l.heights();
    alg.elements()
        .map(|a| {
            // Shape of the ′-orbit: steps until a repeat, and cycle length.
            let mut seen = vec![usize::MAX; alg.size()];
            let mut x = a;
            let mut step = 0;
            while seen[x] == usize::MAX {
                seen[x] = step;
                x = alg.comp(x);
                step += 1;
            }
            let cycle = step - seen[x];
            let tail = seen[x];
            (
                heights[a],
                l.up_set(a).count_ones(..),
                l.down_set(a).count_ones(..),
                l.complements_of(a).len(),
                tail,
                cycle,
            )
        })
        .collect()
}

struct IsoSearch<'a> {
    a: &'a Algebra,
    b: &'a Algebra,
    candidates: Vec<Vec<Elem>>,
    map: Vec<Elem>,
    used: Vec<bool>,
    /// For embeddings the target may be larger and we check operations
    /// rather than order reflection.
    embedding: bool,
}

impl IsoSearch<'_> {
    fn consistent(&self, x: Elem) -> bool {
        let (a, b, map) = (self.a, self.b, &self.map);
        let y = map[x];
        let assigned = |e: Elem| e <= x;
        if assigned(a.comp(x)) && map[a.comp(x)] != b.comp(y) {
            return false;
        }
        for e in 0..x {
            if a.comp(e) == x && b.comp(map[e]) != y {
                return false;
            }
        }
        if self.embedding {
            for e in 0..=x {
                for (p, q) in [(e, x), (x, e)] {
                    let (j, m) = (a.join(p, q), a.meet(p, q));
                    if assigned(j) && map[j] != b.join(map[p], map[q]) {
                        return false;
                    }
                    if assigned(m) && map[m] != b.meet(map[p], map[q]) {
                        return false;
                    }
                }
                // Joins and meets landing on x from earlier pairs.
                for f in 0..x {
                    if a.join(e, f) == x && b.join(map[e], map[f]) != y {
                        return false;
                    }
                    if a.meet(e, f) == x && b.meet(map[e], map[f]) != y {
                        return false;
                    }
                }
            }
            true
        } else {
            (0..x).all(|e| a.leq(e, x) == b.leq(map[e], y) && a.leq(x, e) == b.leq(y, map[e]))
        }
    }

    /// Depth-first over elements in index order, images in increasing
    /// order. Calls `visit` on every complete map; stops when it returns
    /// false.
    fn run(&mut self, x: Elem, visit: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        if x == self.a.size() {
            return visit(&self.map);
        }
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.used[y] {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            let go_on = !self.consistent(x) || self.run(x + 1, visit);
            self.used[y] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn iso_search<'a>(a: &'a Algebra, b: &'a Algebra) -> Option<IsoSearch<'a>> {
    if a.size() != b.size() {
        return None;
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut ms_a = sa.clone();
    let mut ms_b = sb.clone();
    ms_a.sort();
    ms_b.sort();
    if ms_a != ms_b {
        return None;
    }
    let candidates = sa
        .iter()
        .map(|s| b.elements().filter(|&y| &sb[y] == s).collect())
        .collect();
    Some(IsoSearch {
        a,
        b,
        candidates,
        map: vec![0; a.size()],
        used: vec![false; b.size()],
        embedding: false,
    })
}

/// The lexicographically least isomorphism from `a` onto `b`, if any.
pub fn find_isomorphism(a: &Algebra, b: &Algebra) -> Option<Isomorphism> {
    let mut search = iso_search(a, b)?;
    let mut found = None;
    search.run(0, &mut |m| {
        found = Some(Isomorphism { map: m.to_vec() });
        false
    });
    found
}

/// Every automorphism, in lexicographic order.
pub fn automorphisms(alg: &Algebra) -> Vec<Isomorphism> {
    let mut search = iso_search(alg, alg).expect("an algebra matches itself");
    let mut out = Vec::new();
    search.run(0, &mut |m| {
        out.push(Isomorphism { map: m.to_vec() });
        true
    });
    out
}

#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub elements: Vec<Isomorphism>,
    pub generators: Vec<Isomorphism>,
    pub is_cyclic: bool,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn element_order(g: &Isomorphism) -> usize {
    let mut p = g.clone();
    let mut k = 1;
    while !p.is_identity() {
        p = p.then(g);
        k += 1;
    }
    k
}

fn generated_group(gens: &[Isomorphism], n: usize) -> HashSet<Isomorphism> {
    let mut group: HashSet<Isomorphism> = HashSet::new();
    let mut frontier = vec![Isomorphism::identity(n)];
    group.insert(frontier[0].clone());
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.then(h);
            if group.insert(gh.clone()) {
                frontier.push(gh);
            }
        }
    }
    group
}

/// The automorphism group with a small generating set. The group is cyclic
/// when some automorphism has order equal to the group order; then the
/// lexicographically least such element is the single generator.
pub fn automorphism_group(alg: &Algebra) -> AutomorphismGroup {
    let elements = automorphisms(alg);
    let order = elements.len();
    if let Some(g) = elements.iter().find(|g| element_order(g) == order) {
        return AutomorphismGroup {
            generators: vec![g.clone()],
            is_cyclic: true,
            elements,
        };
    }
    let mut generators: Vec<Isomorphism> = Vec::new();
    let mut reached = generated_group(&generators, alg.size());
    for g in &elements {
        if !reached.contains(g) {
            generators.push(g.clone());
            reached = generated_group(&generators, alg.size());
        }
    }
    AutomorphismGroup {
        elements,
        generators,
        is_cyclic: false,
    }
}

fn close(alg: &Algebra, set: &mut FixedBitSet) {
    let mut members: Vec<Elem> = set.ones().collect();
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        let mut new = vec![alg.comp(x)];
        for j in 0..=i {
            let y = members[j];
            new.push(alg.join(x, y));
            new.push(alg.meet(x, y));
        }
        for z in new {
            if !set.put(z) {
                members.push(z);
            }
        }
        i += 1;
    }
}

fn base_set(alg: &Algebra) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(alg.size());
    s.insert(alg.bottom());
    s.insert(alg.top());
    s
}

/// The least subuniverse containing `seed` and the constants, sorted.
pub fn generated_subuniverse(alg: &Algebra, seed: &[Elem]) -> Vec<Elem> {
    let mut s = base_set(alg);
    s.extend(seed.iter().copied());
    close(alg, &mut s);
    s.ones().collect()
}

/// Every subuniverse, sorted by size and then by elements.
///
/// A subuniverse is the join of the closures of its singletons, so the
/// family is the closure of `{⟨0,1⟩}` under joining with singleton
/// closures.
pub fn all_subuniverses(alg: &Algebra, cap: usize) -> Result<Vec<Vec<Elem>>> {
    let mut base = base_set(alg);
    close(alg, &mut base);
    let singles: Vec<FixedBitSet> = alg
        .elements()
        .map(|x| {
            let mut s = base.clone();
            s.insert(x);
            close(alg, &mut s);
            s
        })
        .collect();
    let mut family = vec![base.clone()];
    let mut seen: HashSet<FixedBitSet> = HashSet::from([base]);
    let mut i = 0;
    while i < family.len() {
        for x in alg.elements() {
            if family[i].contains(x) {
                continue;
            }
            let mut s = family[i].clone();
            s.union_with(&singles[x]);
            close(alg, &mut s);
            if seen.insert(s.clone()) {
                if family.len() >= cap {
                    return Err(Error::budget(
                        format!("more than {cap} subuniverses"),
                        cap as u64,
                    ));
                }
                family.push(s);
            }
        }
        i += 1;
    }
    let mut out: Vec<Vec<Elem>> = family.into_iter().map(|s| s.ones().collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// The subalgebra on a subuniverse; elements keep their order and labels.
pub fn subalgebra(alg: &Algebra, elems: &[Elem]) -> Algebra {
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let labels = sorted.iter().map(|&e| alg.label(e).to_string()).collect();
    let lattice = alg.lattice().restrict(&sorted, labels);
    let comp = sorted
        .iter()
        .map(|&e| {
            sorted
                .binary_search(&alg.comp(e))
                .expect("subuniverse is closed under ′")
        })
        .collect();
    Algebra::new(lattice, comp).expect("restriction of a complementation")
}

/// The lexicographically least embedding of `a` into `b`, if any.
pub fn find_embedding(a: &Algebra, b: &Algebra) -> Option<Vec<Elem>> {
    if a.size() > b.size() {
        return None;
    }
    let sa = signatures(a);
    let heights_b = b.lattice().heights();
    let candidates = a
        .elements()
        .map(|x| {
            if x == a.bottom() {
                vec![b.bottom()]
            } else if x == a.top() {
                vec![b.top()]
            } else {
                // Images of non-bounds cannot be bounds and heights can
                // only grow along an embedding.
                b.elements()
                    .filter(|&y| y != b.bottom() && y != b.top() && heights_b[y] >= sa[x].0)
                    .collect()
            }
        })
        .collect();
    let mut search = IsoSearch {
        a,
        b,
        candidates,
        map: vec![0; a.size()],
        used: vec![false; b.size()],
        embedding: true,
    };
    let mut found = None;
    search.run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// Compares the subuniverses of `M_n′ × 2^k` with the family built from
/// all pairs `(X, Y)` where `X` is a `{0}`-sublattice of `2^k`, `Y` is empty
/// or a Boolean subalgebra, `Y ⊆ X ∩ X′`, `X ∨ Y ⊆ Y`, `X′ ∧ Y ⊆ Y`,
/// `X ∨ X′ ⊆ X′` and `X ∧ X′ ⊆ X`, via
/// `Z = {0}×X ∪ {a_i}×Y ∪ {1}×X′`.
///
/// Returns both families (sorted) and the verdict; on failure the witness
/// is the first subset in one family but not the other.
pub fn check_mnxb_subuniverse_characterization(
    n: usize,
    k: usize,
) -> Result<SubuniverseComparison> {
    if n < 3 {
        return Err(Error::BadParams(format!("need n >= 3, got {n}")));
    }
    if k > 3 {
        return Err(Error::budget(format!("2^(2^{k}) subsets of 2^{k}"), 256));
    }
    let m = make_mn_prime(n)?;
    let b = boolean_algebra(k)?;
    let prod = direct_product(&m, &b)?;
    let brute = all_subuniverses(&prod, 1 << 20)?;

    let nb = 1usize << k;
    let full = nb - 1;
    let bl = boolean_lattice(k)?;
    let subsets: Vec<Vec<usize>> = (0u64..1 << nb)
        .map(|bits| (0..nb).filter(|&x| bits >> x & 1 == 1).collect())
        .collect();
    let closed = |s: &[usize]| {
        s.iter().all(|&x| {
            s.iter()
                .all(|&y| s.contains(&bl.join(x, y)) && s.contains(&bl.meet(x, y)))
        })
    };
    let xs: Vec<&Vec<usize>> = subsets
        .iter()
        .filter(|s| s.contains(&0) && closed(s))
        .collect();
    let ys: Vec<&Vec<usize>> = subsets
        .iter()
        .filter(|s| {
            s.is_empty()
                || (s.contains(&0)
                    && s.contains(&full)
                    && closed(s)
                    && s.iter().all(|&y| s.contains(&(y ^ full))))
        })
        .collect();
    let mut from_pairs: Vec<Vec<Elem>> = Vec::new();
    let width = m.size();
    for x in &xs {
        let xc: Vec<usize> = x.iter().map(|&e| e ^ full).collect();
        for y in &ys {
            let ok = y.iter().all(|e| x.contains(e) && xc.contains(e))
                && x.iter().all(|&p| y.iter().all(|&q| y.contains(&(p | q))))
                && xc.iter().all(|&p| y.iter().all(|&q| y.contains(&(p & q))))
                && x.iter().all(|&p| xc.iter().all(|&q| xc.contains(&(p | q))))
                && x.iter().all(|&p| xc.iter().all(|&q| x.contains(&(p & q))));
            if !ok {
                continue;
            }
            let mut z: Vec<Elem> = Vec::new();
            z.extend(x.iter().copied());
            for a in 1..width - 1 {
                z.extend(y.iter().map(|&e| a * nb + e));
            }
            z.extend(xc.iter().map(|&e| (width - 1) * nb + e));
            z.sort_unstable();
            z.dedup();
            from_pairs.push(z);
        }
    }
    from_pairs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    from_pairs.dedup();
    let witness = brute
        .iter()
        .find(|z| !from_pairs.contains(z))
        .or_else(|| from_pairs.iter().find(|z| !brute.contains(z)))
        .cloned();
    Ok(SubuniverseComparison {
        verdict: Verdict::from_witness(witness),
        brute_force: brute,
        from_pairs,
    })
}

#[derive(Clone, Debug)]
pub struct SubuniverseComparison {
    pub verdict: Verdict<Vec<Elem>>,
    pub brute_force: Vec<Vec<Elem>>,
    pub from_pairs: Vec<Vec<Elem>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_prime_automorphisms() {
        let m = make_mn_prime(3).unwrap();
        let g = automorphism_group(&m);
        assert_eq!(g.order(), 3);
        assert!(g.is_cyclic);
        assert_eq!(g.generators[0].map, vec![0, 2, 3, 1, 4]);
    }

    #[test]
    fn square_has_swap() {
        let b = boolean_algebra(2).unwrap();
        assert_eq!(automorphism_group(&b).order(), 2);
    }

    #[test]
    fn reverse_cycle_is_isomorphic() {
        let m = make_mn_prime(3).unwrap();
        let rev = Algebra::new(m.lattice().clone(), vec![4, 3, 1, 2, 0]).unwrap();
        let iso = find_isomorphism(&m, &rev).unwrap();
        assert!(is_isomorphism(&m, &rev, &iso.map));
        assert!(is_isomorphism(&rev, &m, &iso.inverse().map));
    }

    #[test]
    fn m3_prime_subuniverses() {
        let m = make_mn_prime(3).unwrap();
        let subs = all_subuniverses(&m, 100).unwrap();
        assert_eq!(subs, vec![vec![0, 4], vec![0, 1, 2, 3, 4]]);
        assert_eq!(generated_subuniverse(&m, &[]), vec![0, 4]);
        assert_eq!(generated_subuniverse(&m, &[1]).len(), 5);
    }

    #[test]
    fn m3_embeds_diagonally_but_not_into_m4_or_m3_times_2() {
        let m3 = make_mn_prime(3).unwrap();
        let m4 = make_mn_prime(4).unwrap();
        let b = boolean_algebra(1).unwrap();
        // The odd cycle a0 → a1 → a2 → a0 cannot flip the Boolean bit consistently.
        assert!(find_embedding(&m3, &direct_product(&m3, &b).unwrap()).is_none());
        assert!(find_embedding(&m3, &direct_product(&m3, &m3).unwrap()).is_some());
        assert!(find_embedding(&m3, &m4).is_none());
        assert!(find_embedding(&b, &m4).is_some());
    }
}
