//! Randomized invariants that hold for every input.

use latcomp::congruence::congruence_lattice;
use latcomp::construct::{action_from_complementation, l_construction, make_mn, Action};
use latcomp::json::{algebra_from_str, algebra_to_json};
use latcomp::morphism::find_isomorphism;
use latcomp::verify::corpus;
use latcomp::{Algebra, Subject, Term};
use proptest::prelude::*;

fn congruence_lattice_len(a: &Algebra) -> usize {
    congruence_lattice(a, Subject::Algebra).unwrap().len()
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z", "w_1"]).prop_map(latcomp::term::var),
        Just(Term::Bot),
        Just(Term::Top),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(latcomp::term::comp),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| latcomp::term::join(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| latcomp::term::meet(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn printed_terms_parse_back(t in arb_term()) {
        prop_assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn renaming_preserves_the_invariants(seed in 0usize..1000, pick in 0usize..64) {
        let all = corpus().unwrap();
        let alg = &all[pick % all.len()].alg;
        let n = alg.size();
        // Shuffle element positions and labels in the document, then reload.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) % (i + 1));
        }
        let labels: Vec<String> = (0..n).map(|i| format!("e{}", perm[i])).collect();
        let mut covers: Vec<[usize; 2]> = alg.lattice().covers().iter().map(|&(a, b)| [perm[a], perm[b]]).collect();
        covers.sort();
        let mut placed = vec![String::new(); n];
        let mut comp = vec![0; n];
        for i in 0..n {
            placed[perm[i]] = labels[i].clone();
            comp[perm[i]] = perm[alg.comp(i)];
        }
        let doc = serde_json::json!({ "labels": placed, "covers": covers, "complement": comp });
        let renamed = algebra_from_str(&doc.to_string()).unwrap();
        prop_assert_eq!(renamed.classify(), alg.classify());
        prop_assert_eq!(congruence_lattice_len(&renamed), congruence_lattice_len(alg));
        prop_assert!(find_isomorphism(alg, &renamed).is_some());
        prop_assert_eq!(algebra_from_str(&algebra_to_json(&renamed).to_string()).unwrap(), renamed);
    }

    #[test]
    fn actions_survive_construction_and_json(n in 3usize..=4, k in 0usize..=2, choices in prop::collection::vec(0usize..1000, 16)) {
        let m = make_mn(n).unwrap();
        let maps: Vec<Vec<usize>> = (0..1usize << k)
            .map(|x| {
                m.elements()
                    .map(|a| {
                        let c = m.complements_of(a);
                        c[choices[(x * 7 + a) % choices.len()] % c.len()]
                    })
                    .collect()
            })
            .collect();
        let action = Action { k, maps };
        let alg = l_construction(&m, &action).unwrap();
        prop_assert_eq!(&action_from_complementation(&m, k, &alg).unwrap(), &action);
        prop_assert_eq!(&Action::from_json(&action.to_json()).unwrap(), &action);
    }
}
