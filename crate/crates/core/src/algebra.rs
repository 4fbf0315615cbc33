//! Lattices with a designated complementation.

use crate::lattice::Lattice;
use crate::morphism;
use crate::term::{builtin_formula, check_formula_with_budget, Formula};
use crate::{Elem, Error, Result, Verdict};

/// A finite algebra `(L, ∨, ∧, ′, 0, 1)` in which every `a′` is a
/// complement of `a`. The complementation need not be injective,
/// involutive or antitone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    lattice: Lattice,
    comp: Vec<u32>,
}

/// Membership flags, each decided by its own exhaustive check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
pub struct ClassReport {
    pub satisfies_w: bool,
    pub satisfies_dm: bool,
    pub modular: bool,
    pub weakly_orthomodular: bool,
    pub dually_weakly_orthomodular: bool,
    pub comp_injective: bool,
    pub comp_involutive: bool,
    pub is_boolean_algebra: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompFilters {
    pub injective_only: bool,
    pub de_morgan_only: bool,
    pub in_w_only: bool,
    pub up_to_iso: bool,
}

impl Algebra {
    pub fn new(lattice: Lattice, comp: Vec<Elem>) -> Result<Self> {
        if comp.len() != lattice.size() {
            return Err(Error::Input(format!(
                "complement table has {} entries for {} elements",
                comp.len(),
                lattice.size()
            )));
        }
        for (a, &b) in comp.iter().enumerate() {
            if b >= lattice.size() {
                return Err(Error::Input(format!("complement index {b} out of range")));
            }
            if lattice.join(a, b) != lattice.top() || lattice.meet(a, b) != lattice.bottom() {
                return Err(Error::NotAComplement {
                    element: lattice.label(a).to_string(),
                    complement: lattice.label(b).to_string(),
                });
            }
        }
        Ok(Algebra {
            lattice,
            comp: comp.into_iter().map(|c| c as u32).collect(),
        })
    }

    /// Attaches a complementation given by labels, e.g. `[("a", "b"), ...]`.
    /// Bounds may be omitted and map to each other.
    pub fn from_labels(lattice: Lattice, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut comp: Vec<Option<Elem>> = vec![None; lattice.size()];
        comp[lattice.bottom()] = Some(lattice.top());
        comp[lattice.top()] = Some(lattice.bottom());
        let find = |l: &str| {
            lattice
                .index_of(l)
                .ok_or_else(|| Error::Input(format!("unknown element {l}")))
        };
        for (a, b) in pairs {
            comp[find(a)?] = Some(find(b)?);
        }
        let comp = comp
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    Error::Input(format!("no complement given for {}", lattice.label(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(lattice, comp)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn comp(&self, a: Elem) -> Elem {
        self.comp[a] as usize
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn label(&self, a: Elem) -> &str {
        self.lattice.label(a)
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.lattice.index_of(label)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.lattice.elements()
    }

    pub fn comp_table(&self) -> Vec<Elem> {
        self.comp.iter().map(|&c| c as usize).collect()
    }

    /// `a + b = (a′ ∧ b) ∨ (a ∧ b′)`.
    pub fn symmetric_difference(&self, a: Elem, b: Elem) -> Elem {
        self.join(self.meet(self.comp(a), b), self.meet(a, self.comp(b)))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.size()];
        self.comp
            .iter()
            .all(|&c| !std::mem::replace(&mut seen[c as usize], true))
    }

    pub fn is_involutive(&self) -> bool {
        self.elements().all(|a| self.comp(self.comp(a)) == a)
    }

    /// Checks a formula with no evaluation cap; meant for the small,
    /// two- or three-variable laws used internally.
    pub(crate) fn satisfies(&self, f: &Formula) -> bool {
        check_formula_with_budget(self, f, u64::MAX)
            .expect("unbounded budget")
            .holds()
    }

    pub(crate) fn satisfies_builtin(&self, name: &str) -> bool {
        self.satisfies(&builtin_formula(name, &[]).expect("registered formula"))
    }

    pub fn classify(&self) -> ClassReport {
        let distributive = self.lattice.is_distributive().holds();
        let involutive = self.is_involutive();
        let dm = self.satisfies_builtin("DM");
        ClassReport {
            satisfies_w: self.satisfies_builtin("W"),
            satisfies_dm: dm,
            modular: self.lattice.is_modular().holds(),
            weakly_orthomodular: self.satisfies_builtin("WOML"),
            dually_weakly_orthomodular: self.satisfies_builtin("DWOML"),
            comp_injective: self.is_injective(),
            comp_involutive: involutive,
            is_boolean_algebra: distributive && involutive && dm,
        }
    }

    /// `(neutral, unique complement, a″ = a)`, each computed on its own.
    pub fn neutral_equivalence_check(&self, a: Elem) -> (bool, bool, bool) {
        (
            self.lattice.is_neutral_element(a),
            self.lattice.complements_of(a).len() == 1,
            self.comp(self.comp(a)) == a,
        )
    }

    /// First `(a, b, c)` with `a < b`, `c ∧ b = 0` and `c ∨ a = 1`, i.e. a
    /// pentagon `{0, a, b, c, 1}` sharing the bounds of the whole lattice.
    pub fn find_bounded_pentagon(&self) -> Option<(Elem, Elem, Elem)> {
        let l = &self.lattice;
        let interior = 1..l.size().saturating_sub(1);
        for a in interior.clone() {
            for b in l.up_set(a).ones().filter(|&b| b != a && b != l.top()) {
                for c in interior.clone() {
                    if l.meet(c, b) == l.bottom() && l.join(c, a) == l.top() {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First bounded pentagon `{0, a, b, c, 1}` that is also closed under
    /// complementation, i.e. a subalgebra whose lattice reduct is a
    /// pentagon.
    pub fn find_pentagon_subalgebra(&self) -> Option<(Elem, Elem, Elem)> {
        let l = &self.lattice;
        let interior = 1..l.size().saturating_sub(1);
        for a in interior.clone() {
            for b in l.up_set(a).ones().filter(|&b| b != a && b != l.top()) {
                for c in interior.clone() {
                    if l.meet(c, b) != l.bottom() || l.join(c, a) != l.top() {
                        continue;
                    }
                    let set = [l.bottom(), a, b, c, l.top()];
                    if [a, b, c].iter().all(|&x| set.contains(&self.comp(x))) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// Every complementation on `lattice` passing `filters`, in lexicographic
/// order of complement tables.
///
/// Coordinates are fixed in index order and each filter prunes as soon as
/// the elements it mentions are assigned. With `up_to_iso`, only the first
/// (hence lexicographically least) algebra of each isomorphism class is
/// kept.
pub fn enumerate_complementations(
    lattice: &Lattice,
    filters: CompFilters,
    budget: u64,
) -> Result<Vec<Algebra>> {
    let n = lattice.size();
    let options: Vec<Vec<Elem>> = lattice
        .elements()
        .map(|a| lattice.complements_of(a))
        .collect();
    let total = options
        .iter()
        .try_fold(1u64, |acc, o| acc.checked_mul(o.len() as u64))
        .unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::budget(total, budget));
    }
    if options.iter().any(|o| o.is_empty()) {
        return Ok(Vec::new());
    }
    let mut search = Search {
        lattice,
        filters,
        options,
        comp: vec![0; n],
        found: Vec::new(),
    };
    search.extend(0);
    if !filters.up_to_iso {
        return Ok(search.found);
    }
    let mut reps: Vec<Algebra> = Vec::new();
    for alg in search.found {
        if !reps
            .iter()
            .any(|r| morphism::find_isomorphism(r, &alg).is_some())
        {
            reps.push(alg);
        }
    }
    Ok(reps)
}

struct Search<'a> {
    lattice: &'a Lattice,
    filters: CompFilters,
    options: Vec<Vec<Elem>>,
    comp: Vec<Elem>,
    found: Vec<Algebra>,
}

impl Search<'_> {
    fn extend(&mut self, a: Elem) {
        let n = self.lattice.size();
        if a == n {
            let alg = Algebra::new(self.lattice.clone(), self.comp.clone())
                .expect("complements by construction");
            let keep = (!self.filters.in_w_only || alg.satisfies_builtin("W"))
                && (!self.filters.de_morgan_only || alg.satisfies_builtin("DM"))
                && (!self.filters.injective_only || alg.is_injective());
            if keep {
                self.found.push(alg);
            }
            return;
        }
        for i in 0..self.options[a].len() {
            let c = self.options[a][i];
            self.comp[a] = c;
            if self.consistent(a) {
                self.extend(a + 1);
            }
        }
    }

    /// Checks the filters on every constraint whose elements are all among
    /// `0..=a` and which mentions `a`.
    fn consistent(&self, a: Elem) -> bool {
        let l = self.lattice;
        let comp = &self.comp;
        if self.filters.injective_only && (0..a).any(|b| comp[b] == comp[a]) {
            return false;
        }
        if self.filters.in_w_only {
            // (W) fails at (a, b) exactly when a′ ∧ b = 0 = a ∧ b′ with a ≠ b;
            // the condition is symmetric in a and b.
            for b in 0..a {
                if l.meet(comp[a], b) == l.bottom() && l.meet(a, comp[b]) == l.bottom() {
                    return false;
                }
            }
        }
        if self.filters.de_morgan_only {
            for x in 0..=a {
                for y in 0..=a {
                    let (j, m) = (l.join(x, y), l.meet(x, y));
                    if j > a || (x != a && y != a && j != a && m != a) {
                        continue;
                    }
                    if comp[j] != l.meet(comp[x], comp[y]) || comp[m] != l.join(comp[x], comp[y]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The three pentagon conditions of one algebra, strongest first:
/// `(no bounded pentagon, PENTA-II holds, no pentagon subalgebra)`.
pub fn pentagon_conditions(alg: &Algebra) -> (bool, bool, bool) {
    let penta = builtin_formula("PENTA-II", &[]).expect("registered formula");
    (
        alg.find_bounded_pentagon().is_none(),
        alg.satisfies(&penta),
        alg.find_pentagon_subalgebra().is_none(),
    )
}

/// Checks a registered formula by name.
pub fn check_named(
    alg: &Algebra,
    name: &str,
    params: &[usize],
    budget: u64,
) -> Result<Verdict<crate::term::Counterexample>> {
    check_formula_with_budget(alg, &builtin_formula(name, params)?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Lattice {
        Lattice::from_covers(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn chain_with_fixed_bottom_is_rejected() {
        let l = Lattice::from_covers(&["0", "1"], &[(0, 1)]).unwrap();
        assert!(matches!(
            Algebra::new(l, vec![0, 0]),
            Err(Error::NotAComplement { .. })
        ));
    }

    #[test]
    fn repeat_complementation_is_valid_but_not_injective() {
        let alg = Algebra::from_labels(diamond(), &[("a", "b"), ("b", "c"), ("c", "b")]).unwrap();
        assert!(!alg.is_injective());
        assert!(!alg.classify().satisfies_w);
    }

    #[test]
    fn diamond_has_eight_complementations() {
        let all = enumerate_complementations(&diamond(), CompFilters::default(), 1000).unwrap();
        assert_eq!(all.len(), 8);
        let inj = CompFilters {
            injective_only: true,
            ..Default::default()
        };
        assert_eq!(
            enumerate_complementations(&diamond(), inj, 1000)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_complementations(&diamond(), CompFilters::default(), 7).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn symmetric_difference_laws() {
        let alg = Algebra::from_labels(diamond(), &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        for a in alg.elements() {
            assert_eq!(alg.symmetric_difference(a, a), alg.bottom());
            assert_eq!(alg.symmetric_difference(a, alg.top()), alg.comp(a));
        }
    }
}
