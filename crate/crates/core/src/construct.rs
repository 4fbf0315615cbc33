//! Named constructions: `M_n′`, Boolean algebras, products, horizontal
//! sums, the action construction on `K × 2^k`, interval algebras at neutral
//! elements, and free algebras of the varieties generated by `M_n′`.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::congruence::Congruence;
use crate::lattice::Lattice;
use crate::morphism;
use crate::term::{discriminator_term, eval_term};
use crate::{Elem, Error, Result, Verdict};

/// Largest carrier any materialising construction will build.
pub const MAX_CARRIER: usize = 4096;

/// The lattice `M_n` with elements `0, a_0, …, a_{n−1}, 1`.
pub fn make_mn(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::BadParams(format!("M_n needs n >= 2, got {n}")));
    }
    if n + 2 > MAX_CARRIER {
        return Err(Error::budget(n + 2, MAX_CARRIER as u64));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((0..n).map(|i| format!("a_{i}")));
    labels.push("1".to_string());
    let covers: Vec<(usize, usize)> = (1..=n).flat_map(|i| [(0, i), (i, n + 1)]).collect();
    Lattice::from_covers(&labels, &covers)
}

/// `M_n` with the atoms complemented cyclically, `a_i′ = a_{i+1 mod n}`.
pub fn make_mn_prime(n: usize) -> Result<Algebra> {
    let l = make_mn(n)?;
    let mut comp = vec![n + 1];
    comp.extend((0..n).map(|i| (i + 1) % n + 1));
    comp.push(0);
    Algebra::new(l, comp)
}

/// Bitstring label of a mask in `2^k`; character `i` is bit `i`.
pub fn bit_label(mask: usize, k: usize) -> String {
    if k == 0 {
        return "0".to_string();
    }
    (0..k)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bit_label(s: &str, k: usize) -> Result<usize> {
    if k == 0 && s == "0" {
        return Ok(0);
    }
    if s.len() != k || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Input(format!(
            "{s:?} is not a bitstring of length {k}"
        )));
    }
    Ok(s.chars()
        .enumerate()
        .filter(|&(_, c)| c == '1')
        .map(|(i, _)| 1 << i)
        .sum())
}

/// The Boolean lattice `2^k` on masks `0..2^k`.
pub fn boolean_lattice(k: usize) -> Result<Lattice> {
    if k >= usize::BITS as usize || (1usize << k) > MAX_CARRIER {
        return Err(Error::BadParams(format!(
            "2^{k} exceeds the carrier cap {MAX_CARRIER}"
        )));
    }
    let n = 1usize << k;
    let labels = (0..n).map(|m| bit_label(m, k)).collect();
    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = (a & b) as u32;
            join[a * n + b] = (a | b) as u32;
        }
    }
    Ok(Lattice::from_tables(labels, meet, join))
}

/// `2^k` with set complement.
pub fn boolean_algebra(k: usize) -> Result<Algebra> {
    let l = boolean_lattice(k)?;
    let full = l.size() - 1;
    let comp = (0..l.size()).map(|m| m ^ full).collect();
    Algebra::new(l, comp)
}

/// Componentwise product; `(a, b)` sits at index `a·|B| + b`.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let n = a.size() * b.size();
    if n > MAX_CARRIER {
        return Err(Error::budget(n, MAX_CARRIER as u64));
    }
    let l = Lattice::product(a.lattice(), b.lattice());
    let nb = b.size();
    let comp = (0..n)
        .map(|p| a.comp(p / nb) * nb + b.comp(p % nb))
        .collect();
    Algebra::new(l, comp)
}

/// Glues two algebras at their bounds. The result lists `0`, then the
/// interior of `a`, then the interior of `b`, then `1`.
pub fn horizontal_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.size() < 3 || b.size() < 3 {
        return Err(Error::BadParams(
            "horizontal sum needs two algebras with interior elements".into(),
        ));
    }
    let (ia, ib) = (a.size() - 2, b.size() - 2);
    let n = ia + ib + 2;
    let top = n - 1;
    // Position in the sum of an element of `a` (side 0) or `b` (side 1).
    let place = |side: usize, x: Elem, alg: &Algebra| -> Elem {
        if x == alg.bottom() {
            0
        } else if x == alg.top() {
            top
        } else if side == 0 {
            x
        } else {
            ia + x
        }
    };
    // (side, element) for each position; bounds are attributed to `a`.
    let origin = |p: Elem| -> (usize, Elem) {
        if p == 0 {
            (0, a.bottom())
        } else if p == top {
            (0, a.top())
        } else if p <= ia {
            (0, p)
        } else {
            (1, p - ia)
        }
    };
    let mut labels = vec![a.label(a.bottom()).to_string()];
    labels.extend((1..=ia).map(|x| a.label(x).to_string()));
    for x in 1..=ib {
        let mut l = b.label(x).to_string();
        while labels.contains(&l) {
            l.push_str("_2");
        }
        labels.push(l);
    }
    labels.push(a.label(a.top()).to_string());
    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    let mut comp = vec![0; n];
    for p in 0..n {
        let (sp, xp) = origin(p);
        let alg_p = if sp == 0 { a } else { b };
        comp[p] = place(sp, alg_p.comp(xp), alg_p);
        for q in 0..n {
            let (sq, xq) = origin(q);
            let bound_q = q == 0 || q == top;
            let (m, j) = if sp == sq || p == 0 || p == top || bound_q {
                // Same block, or one side is a bound: compute in the block of
                // the non-bound operand.
                let side = if p == 0 || p == top { sq } else { sp };
                let alg = if side == 0 { a } else { b };
                let lift = |pos: Elem, s: usize, x: Elem| -> Elem {
                    if pos == 0 {
                        alg.bottom()
                    } else if pos == top {
                        alg.top()
                    } else {
                        debug_assert_eq!(s, side);
                        x
                    }
                };
                let (u, v) = (lift(p, sp, xp), lift(q, sq, xq));
                (
                    place(side, alg.meet(u, v), alg),
                    place(side, alg.join(u, v), alg),
                )
            } else {
                (0, top)
            };
            meet[p * n + q] = m as u32;
            join[p * n + q] = j as u32;
        }
    }
    Algebra::new(Lattice::from_tables(labels, meet, join), comp)
}

/// A map from `2^k` to complementations on a lattice `K`: `maps[x]` is the
/// complement table `S_x`, indexed by the mask `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub k: usize,
    pub maps: Vec<Vec<Elem>>,
}

#[derive(Serialize, Deserialize)]
struct ActionDoc {
    k: usize,
    #[serde(rename = "S")]
    s: BTreeMap<String, Vec<Elem>>,
}

impl Action {
    pub fn constant(k: usize, map: Vec<Elem>) -> Action {
        Action {
            k,
            maps: vec![map; 1 << k],
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let s = self
            .maps
            .iter()
            .enumerate()
            .map(|(x, m)| (bit_label(x, self.k), m.clone()))
            .collect();
        serde_json::to_value(ActionDoc { k: self.k, s }).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Action> {
        let doc: ActionDoc = serde_json::from_value(v.clone())?;
        if doc.k > 12 {
            return Err(Error::BadParams(format!("k = {} is too large", doc.k)));
        }
        let mut maps = vec![None; 1 << doc.k];
        for (key, table) in doc.s {
            let x = parse_bit_label(&key, doc.k)?;
            maps[x] = Some(table);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(x, m)| {
                m.ok_or_else(|| Error::Input(format!("action misses S_{}", bit_label(x, doc.k))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Action { k: doc.k, maps })
    }
}

/// `K × 2^k` with `(a, x)′ = (S_x(a), x′)`.
pub fn l_construction(k_lattice: &Lattice, action: &Action) -> Result<Algebra> {
    let nb = 1usize << action.k;
    if action.maps.len() != nb {
        return Err(Error::Input(format!(
            "action has {} maps, expected {nb}",
            action.maps.len()
        )));
    }
    if k_lattice.size() * nb > MAX_CARRIER {
        return Err(Error::budget(k_lattice.size() * nb, MAX_CARRIER as u64));
    }
    for (x, s) in action.maps.iter().enumerate() {
        if s.len() != k_lattice.size() {
            return Err(Error::Input(format!(
                "S_{} has the wrong length",
                bit_label(x, action.k)
            )));
        }
        for (a, &c) in s.iter().enumerate() {
            let ok = c < k_lattice.size()
                && k_lattice.join(a, c) == k_lattice.top()
                && k_lattice.meet(a, c) == k_lattice.bottom();
            if !ok {
                return Err(Error::InvalidAction {
                    x: bit_label(x, action.k),
                    a: k_lattice.label(a).to_string(),
                });
            }
        }
    }
    let b = boolean_lattice(action.k)?;
    let full = nb - 1;
    let l = Lattice::product(k_lattice, &b);
    let comp = (0..l.size())
        .map(|p| {
            let (a, x) = (p / nb, p % nb);
            action.maps[x][a] * nb + (x ^ full)
        })
        .collect();
    Algebra::new(l, comp)
}

/// Recovers the action from a complementation on `K × 2^k` (carrier laid
/// out as by [`Lattice::product`]).
pub fn action_from_complementation(k_lattice: &Lattice, k: usize, alg: &Algebra) -> Result<Action> {
    let nb = 1usize << k;
    if alg.size() != k_lattice.size() * nb {
        return Err(Error::Input("algebra is not of the shape K × 2^k".into()));
    }
    let full = nb - 1;
    let mut maps = vec![vec![0; k_lattice.size()]; nb];
    for p in alg.elements() {
        let (a, x) = (p / nb, p % nb);
        let c = alg.comp(p);
        if c % nb != x ^ full {
            return Err(Error::NotActionShaped {
                a: k_lattice.label(a).to_string(),
                x: bit_label(x, k),
            });
        }
        maps[x][a] = c / nb;
    }
    Ok(Action { k, maps })
}

/// `θ_0, …, θ_k` on `K × 2^k`: `θ_0` is the kernel of the projection onto
/// `2^k`, and `θ_i` the kernel of deleting the `i`-th Boolean coordinate.
pub fn theta_projections(k_size: usize, k: usize) -> Vec<Congruence> {
    let nb = 1usize << k;
    let n = k_size * nb;
    let mut out = vec![Congruence::from_keys((0..n).map(|p| p % nb))];
    for i in 0..k {
        out.push(Congruence::from_keys((0..n).map(|p| p & !(1 << i))));
    }
    out
}

/// The interval algebras `[0, e]` with `x♭ = x′ ∧ e` and `[e, 1]` with
/// `x♯ = x′ ∨ e`, for a neutral element `e`.
pub fn interval_algebra(alg: &Algebra, e: Elem) -> Result<(Algebra, Algebra)> {
    let l = alg.lattice();
    if !l.is_neutral_element(e) {
        return Err(Error::NotNeutral(alg.label(e).to_string()));
    }
    let build = |elems: Vec<Elem>, comp: &dyn Fn(Elem) -> Elem| -> Result<Algebra> {
        let labels = elems.iter().map(|&x| alg.label(x).to_string()).collect();
        let sub = l.restrict(&elems, labels);
        let pos = |x: Elem| {
            elems
                .iter()
                .position(|&y| y == x)
                .expect("interval is closed")
        };
        let table = elems.iter().map(|&x| pos(comp(x))).collect();
        Algebra::new(sub, table)
    };
    let lower: Vec<Elem> = l.down_set(e).ones().collect();
    let upper: Vec<Elem> = l.up_set(e).ones().collect();
    Ok((
        build(lower, &|x| alg.meet(alg.comp(x), e))?,
        build(upper, &|x| alg.join(alg.comp(x), e))?,
    ))
}

/// `q = ((n+2)^k − 2^k) / n`, the number of `M_n′` factors of the free
/// `k`-generated algebra.
pub fn free_rank(n: usize, k: usize) -> Result<u64> {
    if n < 3 || k < 1 {
        return Err(Error::BadParams(format!(
            "free algebras need n >= 3 and k >= 1, got n={n}, k={k}"
        )));
    }
    let big = (n as u64 + 2)
        .checked_pow(k as u32)
        .ok_or_else(|| Error::BadParams("(n+2)^k overflows".into()))?;
    let diff = big - (1u64 << k);
    if !diff.is_multiple_of(n as u64) {
        return Err(Error::BadParams(format!("{diff} is not divisible by {n}")));
    }
    Ok(diff / n as u64)
}

/// Generating valuations of `x_1..x_k` into `M_n′`, grouped into orbits
/// under the rotation automorphisms. Returns the lexicographically least
/// member of every orbit together with the orbit sizes.
pub fn generating_valuations(n: usize, k: usize) -> Result<(Vec<Vec<Elem>>, Vec<usize>)> {
    free_rank(n, k)?;
    let m = make_mn_prime(n)?;
    let size = n + 2;
    let total = size
        .checked_pow(k as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::budget(format!("{size}^{k}"), 1 << 24))?;
    let rotate = |v: &[Elem], r: usize| -> Vec<Elem> {
        v.iter()
            .map(|&e| {
                if e == 0 || e == n + 1 {
                    e
                } else {
                    (e - 1 + r) % n + 1
                }
            })
            .collect()
    };
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for idx in 0..total {
        let mut v = vec![0; k];
        let mut c = idx;
        for slot in v.iter_mut().rev() {
            *slot = c % size;
            c /= size;
        }
        if seen.contains(&v) {
            continue;
        }
        if morphism::generated_subuniverse(&m, &v).len() != size {
            continue;
        }
        let orbit: HashSet<Vec<Elem>> = (0..n).map(|r| rotate(&v, r)).collect();
        sizes.push(orbit.len());
        seen.extend(orbit);
        reps.push(v);
    }
    Ok((reps, sizes))
}

/// The free algebra on `k` generators of the variety generated by `M_n′`,
/// realised inside `(M_n′)^q × 2^(2^k)`.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    /// `(n+2)^q · 2^(2^k)`.
    pub target_size: u128,
    pub orbit_sizes: Vec<usize>,
    pub algebra: Algebra,
    pub generators: Vec<Elem>,
    /// The generators produce the entire product.
    pub verified_shape: bool,
}

/// Materialises the subalgebra generated by the canonical generator tuples.
pub fn free_algebra(n: usize, k: usize) -> Result<FreeAlgebra> {
    let q = free_rank(n, k)?;
    let target = free_target_size(n, k, q);
    if target > MAX_CARRIER as u128 {
        return Err(Error::budget(target, MAX_CARRIER as u64));
    }
    let (reps, orbit_sizes) = generating_valuations(n, k)?;
    let m = make_mn_prime(n)?;
    let mut product = boolean_algebra(1 << k)?;
    for _ in 0..q {
        product = direct_product(&m, &product)?;
    }
    // Index of a tuple: M coordinates first (most significant), then the
    // Boolean mask whose bit `u` is valuation `u` of x_j.
    let nb = 1usize << (1 << k);
    let generators: Vec<Elem> = (0..k)
        .map(|j| {
            let mut idx = 0;
            for rep in &reps {
                idx = idx * (n + 2) + rep[j];
            }
            let mask: usize = (0..1usize << k)
                .filter(|u| u >> j & 1 == 1)
                .map(|u| 1 << u)
                .sum();
            idx * nb + mask
        })
        .collect();
    let closure = morphism::generated_subuniverse(&product, &generators);
    let verified_shape = closure.len() == product.size();
    let algebra = morphism::subalgebra(&product, &closure);
    let generators = generators
        .iter()
        .map(|g| {
            closure
                .iter()
                .position(|c| c == g)
                .expect("generator in closure")
        })
        .collect();
    Ok(FreeAlgebra {
        n,
        k,
        q,
        target_size: target,
        orbit_sizes,
        algebra,
        generators,
        verified_shape,
    })
}

fn free_target_size(n: usize, k: usize, q: u64) -> u128 {
    (n as u128 + 2)
        .saturating_pow(q as u32)
        .saturating_mul(1u128 << (1u32 << k))
}

/// Counts the subalgebra of `(M_n′)^q × 2^(2^k)` generated by the canonical
/// generators without materialising operation tables.
///
/// Elements are coordinate tuples. The search first closes a prefix of
/// the discovered elements under all pairs; then, using as hubs the atoms
/// and coatoms of the product found so far, it expands every element `x`
/// to `x′`, `x ∨ h` and `x ∧ h`. Every element reached is a term value, so
/// reaching the full product proves the generated subalgebra is everything.
/// If the hub pass falls short, a full pairwise closure finishes the count.
pub fn free_closure_count(n: usize, k: usize, cap: u64) -> Result<FreeClosure> {
    let q = free_rank(n, k)? as usize;
    let target = free_target_size(n, k, q as u64);
    if target > cap as u128 {
        return Err(Error::budget(target, cap));
    }
    let (reps, _) = generating_valuations(n, k)?;
    let engine = TupleEngine::new(n, q, 1 << k);
    if engine.coords > 16 {
        return Err(Error::BadParams("more than 16 coordinates".into()));
    }
    let generators: Vec<u64> = (0..k)
        .map(|j| {
            let mut coords: Vec<u8> = reps.iter().map(|r| r[j] as u8).collect();
            coords.extend((0..1usize << k).map(|u| (u >> j & 1) as u8));
            engine.pack(&coords)
        })
        .collect();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut elems: Vec<u64> = Vec::new();
    let push = |x: u64, seen: &mut HashSet<u64>, elems: &mut Vec<u64>| {
        if seen.insert(x) {
            elems.push(x);
        }
    };
    push(engine.bottom, &mut seen, &mut elems);
    push(engine.top, &mut seen, &mut elems);
    for &g in &generators {
        push(g, &mut seen, &mut elems);
    }
    // Pairwise closure of the first `prefix` elements.
    let prefix = 6000usize;
    let mut i = 0;
    while i < elems.len() && i < prefix {
        let x = elems[i];
        push(engine.comp(x), &mut seen, &mut elems);
        for j in 0..=i {
            let y = elems[j];
            push(engine.join(x, y), &mut seen, &mut elems);
            push(engine.meet(x, y), &mut seen, &mut elems);
        }
        i += 1;
    }
    let hubs: Vec<u64> = elems
        .iter()
        .copied()
        .filter(|&x| engine.is_atom(x) || engine.is_atom(engine.dual(x)))
        .collect();
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head];
        head += 1;
        push(engine.comp(x), &mut seen, &mut elems);
        for &h in &hubs {
            push(engine.join(x, h), &mut seen, &mut elems);
            push(engine.meet(x, h), &mut seen, &mut elems);
        }
    }
    let mut full_pairwise = false;
    if (elems.len() as u128) < target {
        // Fall back to the exact closure.
        full_pairwise = true;
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            push(engine.comp(x), &mut seen, &mut elems);
            let new: Vec<u64> = (0..=i)
                .into_par_iter()
                .flat_map_iter(|j| [engine.join(x, elems[j]), engine.meet(x, elems[j])])
                .collect();
            for y in new {
                push(y, &mut seen, &mut elems);
            }
            i += 1;
        }
    }
    Ok(FreeClosure {
        n,
        k,
        q: q as u64,
        target_size: target,
        reached: elems.len() as u64,
        hubs: hubs.len(),
        full_pairwise,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeClosure {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub target_size: u128,
    pub reached: u64,
    pub hubs: usize,
    pub full_pairwise: bool,
}

/// Tuples over `q` copies of `M_n` followed by `r` copies of `2`, packed
/// four bits per coordinate.
struct TupleEngine {
    coords: usize,
    q: usize,
    mn: Algebra,
    bottom: u64,
    top: u64,
}

impl TupleEngine {
    fn new(n: usize, q: usize, r: usize) -> Self {
        let mn = make_mn_prime(n).expect("n >= 3");
        let coords = q + r;
        let mut e = TupleEngine {
            coords,
            q,
            mn,
            bottom: 0,
            top: 0,
        };
        let top: Vec<u8> = (0..coords)
            .map(|c| if c < q { (n + 1) as u8 } else { 1 })
            .collect();
        e.top = e.pack(&top);
        e
    }

    fn pack(&self, coords: &[u8]) -> u64 {
        coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (c as u64) << (4 * i))
            .sum()
    }

    #[inline]
    fn get(x: u64, i: usize) -> usize {
        (x >> (4 * i) & 0xf) as usize
    }

    #[inline]
    fn zip(
        &self,
        x: u64,
        y: u64,
        m_op: impl Fn(usize, usize) -> usize,
        b_op: impl Fn(usize, usize) -> usize,
    ) -> u64 {
        let mut out = 0u64;
        for i in 0..self.coords {
            let (a, b) = (Self::get(x, i), Self::get(y, i));
            let c = if i < self.q { m_op(a, b) } else { b_op(a, b) };
            out |= (c as u64) << (4 * i);
        }
        out
    }

    fn join(&self, x: u64, y: u64) -> u64 {
        self.zip(x, y, |a, b| self.mn.join(a, b), |a, b| a | b)
    }

    fn meet(&self, x: u64, y: u64) -> u64 {
        self.zip(x, y, |a, b| self.mn.meet(a, b), |a, b| a & b)
    }

    fn comp(&self, x: u64) -> u64 {
        self.zip(x, x, |a, _| self.mn.comp(a), |a, _| a ^ 1)
    }

    /// Order dual: swaps bottom and top in every coordinate, keeping atoms
    /// of `M_n` in place, so coatoms of the product map to atoms.
    fn dual(&self, x: u64) -> u64 {
        let top = self.mn.top();
        self.zip(
            x,
            x,
            |a, _| {
                if a == 0 {
                    top
                } else if a == top {
                    0
                } else {
                    a
                }
            },
            |a, _| a ^ 1,
        )
    }

    fn is_atom(&self, x: u64) -> bool {
        let nonzero: Vec<usize> = (0..self.coords).filter(|&i| Self::get(x, i) != 0).collect();
        match nonzero.as_slice() {
            [i] => *i >= self.q || Self::get(x, *i) != self.mn.top(),
            _ => false,
        }
    }
}

/// Checks that `(τ_n(d) ∧ x) ∨ (τ_n(d)′ ∧ z)` is a discriminator on `M_n′`,
/// with `d = x ⊕ y` or, if `use_plus`, `d = x + y`. Fails with the first
/// triple `(a, b, c)` where it is not.
pub fn discriminator_check(n: usize, use_plus: bool) -> Result<Verdict<(Elem, Elem, Elem)>> {
    let m = make_mn_prime(n)?;
    let t = discriminator_term(n, use_plus)?;
    for a in m.elements() {
        for b in m.elements() {
            for c in m.elements() {
                let v = eval_term(&m, &t, &[("x", a), ("y", b), ("z", c)])?;
                let expected = if a == b { c } else { a };
                if v != expected {
                    return Ok(Verdict::Fails((a, b, c)));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_prime_cycles_atoms() {
        let m = make_mn_prime(3).unwrap();
        let a2 = m.index_of("a_2").unwrap();
        assert_eq!(m.label(m.comp(a2)), "a_0");
        assert!(matches!(make_mn(1), Err(Error::BadParams(_))));
    }

    #[test]
    fn boolean_zero_is_trivial() {
        let b = boolean_algebra(0).unwrap();
        assert_eq!(b.size(), 1);
        assert_eq!(b.comp(0), 0);
        let b2 = boolean_algebra(2).unwrap();
        assert_eq!(b2.lattice().atoms().len(), 2);
    }

    #[test]
    fn horizontal_sum_of_two_squares() {
        let b = boolean_algebra(2).unwrap();
        let h = horizontal_sum(&b, &b).unwrap();
        assert_eq!(h.size(), 6);
        assert_eq!(h.lattice().atoms().len(), 4);
        assert_eq!(h.meet(1, 3), 0);
        assert_eq!(h.join(1, 3), 5);
        assert!(h.is_involutive());
        let labels: HashSet<&str> = h.lattice().labels().iter().map(|s| s.as_str()).collect();
        assert_eq!(labels.len(), 6);
        assert!(matches!(
            horizontal_sum(&boolean_algebra(1).unwrap(), &b),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn free_ranks() {
        assert_eq!(free_rank(3, 1).unwrap(), 1);
        assert_eq!(free_rank(4, 1).unwrap(), 1);
        assert_eq!(free_rank(3, 2).unwrap(), 7);
        assert_eq!(free_rank(4, 2).unwrap(), 8);
        assert!(free_rank(2, 1).is_err());
    }

    #[test]
    fn action_round_trip_json() {
        let k3 = make_mn(3).unwrap();
        let s = Action {
            k: 1,
            maps: vec![vec![4, 2, 3, 1, 0], vec![4, 3, 1, 2, 0]],
        };
        let back = Action::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let alg = l_construction(&k3, &s).unwrap();
        assert_eq!(action_from_complementation(&k3, 1, &alg).unwrap(), s);
    }

    #[test]
    fn invalid_action_is_reported() {
        let k3 = make_mn(3).unwrap();
        let s = Action {
            k: 1,
            maps: vec![vec![4, 1, 3, 1, 0], vec![4, 3, 1, 2, 0]],
        };
        match l_construction(&k3, &s) {
            Err(Error::InvalidAction { x, a }) => {
                assert_eq!((x.as_str(), a.as_str()), ("0", "a_0"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
