//! Brute-force oracles. Each one works from the raw operation tables only
//! and enumerates its search space exhaustively,
//! so it shares no algorithm with the library code it is compared against.
#![allow(dead_code)]

use latcomp::Algebra;

pub fn closed(alg: &Algebra, set: &[bool]) -> bool {
    let n = alg.size();
    (0..n).filter(|&a| set[a]).all(|a| {
        set[alg.comp(a)]
            && (0..n)
                .filter(|&b| set[b])
                .all(|b| set[alg.meet(a, b)] && set[alg.join(a, b)])
    })
}

/// Every subset closed under the operations and containing 0 and 1, sorted
/// by size and then lexicographically.
pub fn subuniverses(alg: &Algebra) -> Vec<Vec<usize>> {
    let n = alg.size();
    assert!(n <= 22, "subset oracle is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if set[alg.bottom()] && set[alg.top()] && closed(alg, &set) {
            out.push((0..n).filter(|&i| set[i]).collect::<Vec<_>>());
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// All set partitions of `0..n` as block-id vectors in restricted growth form.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            go(i + 1, n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    let mut cur = vec![0];
    go(1, n, &mut cur, 0, &mut out);
    out
}

pub fn compatible(alg: &Algebra, ids: &[usize], with_comp: bool) -> bool {
    let n = alg.size();
    for a in 0..n {
        for b in 0..n {
            if ids[a] != ids[b] {
                continue;
            }
            if with_comp && ids[alg.comp(a)] != ids[alg.comp(b)] {
                return false;
            }
            for c in 0..n {
                if ids[alg.meet(a, c)] != ids[alg.meet(b, c)]
                    || ids[alg.join(a, c)] != ids[alg.join(b, c)]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Congruences as sorted lists of sorted blocks.
pub fn congruences(alg: &Algebra, with_comp: bool) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = set_partitions(alg.size())
        .into_iter()
        .filter(|ids| compatible(alg, ids, with_comp))
        .map(|ids| blocks_of(&ids))
        .collect();
    out.sort();
    out
}

pub fn blocks_of(ids: &[usize]) -> Vec<Vec<usize>> {
    let k = ids.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); k];
    for (i, &b) in ids.iter().enumerate() {
        blocks[b].push(i);
    }
    blocks.sort();
    blocks
}

/// The least congruence containing `(a, b)`: the meet of all congruences
/// that relate `a` and `b`.
pub fn principal(alg: &Algebra, a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = alg.size();
    let mut rel = vec![vec![true; n]; n];
    for ids in set_partitions(n) {
        if ids[a] == ids[b] && compatible(alg, &ids, true) {
            for x in 0..n {
                for y in 0..n {
                    rel[x][y] &= ids[x] == ids[y];
                }
            }
        }
    }
    let mut ids = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if ids[x] == usize::MAX {
            for y in 0..n {
                if rel[x][y] {
                    ids[y] = next;
                }
            }
            next += 1;
        }
    }
    blocks_of(&ids)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn preserves(a: &Algebra, b: &Algebra, f: &[usize]) -> bool {
    let n = a.size();
    (0..n).all(|x| {
        f[a.comp(x)] == b.comp(f[x])
            && (0..n).all(|y| {
                f[a.meet(x, y)] == b.meet(f[x], f[y]) && f[a.join(x, y)] == b.join(f[x], f[y])
            })
    })
}

pub fn automorphisms(alg: &Algebra) -> Vec<Vec<usize>> {
    assert!(alg.size() <= 9, "permutation oracle is factorial");
    permutations(alg.size())
        .into_iter()
        .filter(|p| preserves(alg, alg, p))
        .collect()
}

pub fn isomorphic(a: &Algebra, b: &Algebra) -> bool {
    a.size() == b.size() && permutations(a.size()).iter().any(|p| preserves(a, b, p))
}

/// Largest antichain, by trying every subset.
pub fn width(alg: &Algebra) -> usize {
    let n = alg.size();
    assert!(n <= 20);
    (0u32..(1 << n))
        .filter(|&m| {
            let s: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            s.iter()
                .all(|&x| s.iter().all(|&y| x == y || !alg.leq(x, y)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Modular exactly when no five elements form a pentagon sublattice.
pub fn modular_by_pentagon(alg: &Algebra) -> bool {
    let n = alg.size();
    for o in 0..n {
        for a in 0..n {
            for b in 0..n {
                if !(alg.leq(o, a) && a != o && alg.leq(a, b) && a != b) {
                    continue;
                }
                for c in 0..n {
                    if alg.leq(c, b) || alg.leq(a, c) || alg.leq(b, c) || alg.leq(c, a) {
                        continue;
                    }
                    if alg.meet(b, c) == o
                        && alg.meet(a, c) == o
                        && alg.join(a, c) == alg.join(b, c)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn complements(alg: &Algebra, a: usize) -> Vec<usize> {
    alg.elements()
        .filter(|&b| alg.meet(a, b) == alg.bottom() && alg.join(a, b) == alg.top())
        .collect()
}

/// Does `x′∧y = 0 = x∧y′ ⇒ x = y` hold, by checking every pair?
pub fn satisfies_w(alg: &Algebra) -> bool {
    let z = alg.bottom();
    alg.elements().all(|x| {
        alg.elements()
            .all(|y| x == y || alg.meet(alg.comp(x), y) != z || alg.meet(x, alg.comp(y)) != z)
    })
}

/// Every complementation of the lattice of `alg` (a map with `a ∨ a′ = 1`
/// and `a ∧ a′ = 0` everywhere), found by a product over complement sets.
pub fn all_complementation_tables(alg: &Algebra) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = alg.elements().map(|a| complements(alg, a)).collect();
    let mut out = vec![Vec::new()];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}
