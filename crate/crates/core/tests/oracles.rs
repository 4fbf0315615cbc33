//! Library results compared against the brute-force oracles in `common`.

mod common;

use latcomp::algebra::enumerate_complementations;
use latcomp::congruence::{congruence_lattice, principal_congruence};
use latcomp::construct::{boolean_algebra, direct_product, make_mn_prime};
use latcomp::fixtures::{fixture, fixture_lattice};
use latcomp::morphism::{all_subuniverses, automorphism_group, find_isomorphism};
use latcomp::verify::corpus;
use latcomp::{Algebra, CompFilters, Subject};

fn small_corpus(max: usize) -> Vec<(String, Algebra)> {
    corpus()
        .unwrap()
        .into_iter()
        .filter(|n| n.alg.size() <= max)
        .map(|n| (n.name, n.alg))
        .collect()
}

fn sorted_blocks(c: &latcomp::Congruence) -> Vec<Vec<usize>> {
    let mut b = c.blocks();
    for x in &mut b {
        x.sort();
    }
    b.sort();
    b
}

#[test]
fn congruences_match_set_partition_search() {
    for (name, alg) in small_corpus(10) {
        for (subject, with_comp) in [(Subject::Algebra, true), (Subject::LatticeReduct, false)] {
            let mut got: Vec<_> = congruence_lattice(&alg, subject)
                .unwrap()
                .congruences
                .iter()
                .map(sorted_blocks)
                .collect();
            got.sort();
            assert_eq!(
                got,
                common::congruences(&alg, with_comp),
                "{name} {subject:?}"
            );
        }
    }
}

#[test]
fn principal_congruences_are_least() {
    for (name, alg) in small_corpus(6) {
        for a in alg.elements() {
            for b in alg.elements() {
                let got = sorted_blocks(&principal_congruence(&alg, a, b, Subject::Algebra));
                assert_eq!(got, common::principal(&alg, a, b), "{name} ({a}, {b})");
            }
        }
    }
}

#[test]
fn subuniverses_match_subset_search() {
    let mut algs = small_corpus(10);
    algs.push((
        "M3' x 2".into(),
        direct_product(&make_mn_prime(3).unwrap(), &boolean_algebra(1).unwrap()).unwrap(),
    ));
    algs.push((
        "M3' x 2^2".into(),
        direct_product(&make_mn_prime(3).unwrap(), &boolean_algebra(2).unwrap()).unwrap(),
    ));
    for (name, alg) in algs {
        let mut got = all_subuniverses(&alg, 1 << 20).unwrap();
        got.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        assert_eq!(got, common::subuniverses(&alg), "{name}");
    }
}

#[test]
fn automorphism_groups_match_permutation_search() {
    let mut algs = small_corpus(8);
    for n in 3..=7 {
        algs.push((format!("M{n}'"), make_mn_prime(n).unwrap()));
    }
    for (name, alg) in algs {
        let g = automorphism_group(&alg);
        let mut got: Vec<Vec<usize>> = g
            .elements
            .iter()
            .map(|m| alg.elements().map(|e| m.apply(e)).collect())
            .collect();
        got.sort();
        assert_eq!(got, common::automorphisms(&alg), "{name}");
    }
}

#[test]
fn isomorphism_search_agrees_with_permutation_search() {
    let algs = small_corpus(6);
    for (na, a) in &algs {
        for (nb, b) in &algs {
            if a.size() == b.size() {
                assert_eq!(
                    find_isomorphism(a, b).is_some(),
                    common::isomorphic(a, b),
                    "{na} vs {nb}"
                );
            }
        }
    }
}

#[test]
fn lattice_profile_matches_direct_search() {
    for (name, alg) in small_corpus(16) {
        let l = alg.lattice();
        assert_eq!(l.width(), common::width(&alg), "{name}");
        assert_eq!(
            l.is_modular().holds(),
            common::modular_by_pentagon(&alg),
            "{name}"
        );
        for a in alg.elements() {
            assert_eq!(
                l.complements_of(a),
                common::complements(&alg, a),
                "{name} {a}"
            );
        }
    }
}

#[test]
fn w_complementations_match_table_product() {
    let lattices = ["diamond", "pentagon", "fig3", "fig5"];
    for name in lattices {
        let l = fixture_lattice(name).unwrap();
        let any = Algebra::new(
            l.clone(),
            (0..l.size()).map(|a| l.complements_of(a)[0]).collect(),
        )
        .unwrap();
        let tables = common::all_complementation_tables(&any);
        let all = enumerate_complementations(&l, CompFilters::default(), u64::MAX).unwrap();
        assert_eq!(
            all.iter().map(|a| a.comp_table()).collect::<Vec<_>>(),
            tables,
            "{name}"
        );
        let in_w = CompFilters {
            in_w_only: true,
            ..Default::default()
        };
        let got: Vec<Vec<usize>> = enumerate_complementations(&l, in_w, u64::MAX)
            .unwrap()
            .iter()
            .map(|a| a.comp_table())
            .collect();
        let want: Vec<Vec<usize>> = tables
            .into_iter()
            .filter(|t| common::satisfies_w(&Algebra::new(l.clone(), t.clone()).unwrap()))
            .collect();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn classification_of_w_matches_pairwise_search() {
    for (name, alg) in small_corpus(16) {
        assert_eq!(
            alg.classify().satisfies_w,
            common::satisfies_w(&alg),
            "{name}"
        );
    }
    assert!(common::satisfies_w(&fixture("H1").unwrap()));
}
