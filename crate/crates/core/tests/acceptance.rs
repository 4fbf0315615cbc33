//! Acceptance suite: one line per criterion, library verdicts cross-checked
//! against independent brute-force computations.
//!
//! Criterion 11 contains one sub-check whose claim is false (both algebras
//! fail the fourth tau identity). It is run as written and is expected to be
//! the only failing check; any other failure makes the suite exit non-zero.

mod common;

use std::process::Command;

use latcomp::construct::{
    boolean_algebra, direct_product, horizontal_sum, l_construction, make_mn, make_mn_prime, Action,
};
use latcomp::fixtures::fixture;
use latcomp::verify::{run_criterion, Criterion};
use latcomp::Algebra;

struct Outcome {
    passed: bool,
    note: String,
}

fn ok(passed: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        note: note.into(),
    }
}

fn lib(id: u8) -> Criterion {
    run_criterion(id).expect("criterion runs")
}

fn failing(c: &Criterion) -> Vec<String> {
    c.checks
        .iter()
        .filter(|k| !k.passed)
        .map(|k| format!("{} ({})", k.name, k.detail))
        .collect()
}

fn lib_and(id: u8, oracle: bool, what: &str) -> Outcome {
    let c = lib(id);
    let mut note = failing(&c).join("; ");
    if !oracle {
        note = format!("oracle disagrees: {what}. {note}");
    }
    ok(c.passed && oracle, note)
}

fn el(alg: &Algebra, label: &str) -> usize {
    alg.index_of(label)
        .unwrap_or_else(|| panic!("no element {label}"))
}

fn satisfies_dm(alg: &Algebra) -> bool {
    alg.elements().all(|x| {
        alg.elements().all(|y| {
            alg.comp(alg.join(x, y)) == alg.meet(alg.comp(x), alg.comp(y))
                && alg.comp(alg.meet(x, y)) == alg.join(alg.comp(x), alg.comp(y))
        })
    })
}

fn m3p_x_bool(k: usize) -> Algebra {
    direct_product(&make_mn_prime(3).unwrap(), &boolean_algebra(k).unwrap()).unwrap()
}

/// Is the algebra subdirectly irreducible, judged from all congruences?
fn si_by_partitions(alg: &Algebra) -> bool {
    let cons = common::congruences(alg, true);
    let n = alg.size();
    let nontrivial: Vec<_> = cons.iter().filter(|c| c.len() < n).collect();
    let related = |c: &Vec<Vec<usize>>, a: usize, b: usize| {
        c.iter().any(|bl| bl.contains(&a) && bl.contains(&b))
    };
    // SI iff the non-identity congruences have a least element.
    nontrivial.iter().any(|m| {
        nontrivial
            .iter()
            .all(|c| (0..n).all(|a| (0..n).all(|b| !related(m, a, b) || related(c, a, b))))
    })
}

fn c1() -> Outcome {
    let table = [
        ["0", "a_0", "a_1", "a_2", "1"],
        ["a_0", "0", "a_1", "a_0", "a_1"],
        ["a_1", "a_1", "0", "a_2", "a_2"],
        ["a_2", "a_0", "a_2", "0", "a_0"],
        ["1", "a_1", "a_2", "a_0", "0"],
    ];
    let m = make_mn_prime(3).unwrap();
    let order = ["0", "a_0", "a_1", "a_2", "1"];
    let mut cells = 0;
    for (i, x) in order.iter().enumerate() {
        for (j, y) in order.iter().enumerate() {
            let (x, y) = (el(&m, x), el(&m, y));
            let s = m.join(m.meet(m.comp(x), y), m.meet(x, m.comp(y)));
            cells += usize::from(m.label(s) == table[i][j]);
        }
    }
    lib_and(1, cells == 25, &format!("{cells} of 25 cells"))
}

fn c2() -> Outcome {
    let dc = fixture("diamond-cyclic").unwrap();
    let dr = fixture("diamond-repeat").unwrap();
    let p1 = fixture("pentagon-1").unwrap();
    let p2 = fixture("pentagon-2").unwrap();
    let z = dr.bottom();
    let (a, b, c) = (el(&dr, "a"), el(&dr, "b"), el(&dr, "c"));
    let witness = dr.meet(dr.comp(a), c) == z
        && dr.comp(a) == b
        && dr.meet(a, dr.comp(c)) == z
        && dr.comp(dr.join(a, c)) == z
        && dr.meet(dr.comp(a), dr.comp(c)) == b;
    let pent = [&p1, &p2].iter().all(|p| {
        let (a, b) = (el(p, "a"), el(p, "b"));
        satisfies_dm(p) && p.meet(p.comp(a), b) == p.bottom() && p.meet(a, p.comp(b)) == p.bottom()
    });
    let oracle = common::satisfies_w(&dc)
        && satisfies_dm(&dc)
        && !common::satisfies_w(&dr)
        && !satisfies_dm(&dr)
        && witness
        && pent;
    lib_and(2, oracle, "W/DM verdicts or witnesses")
}

fn c3() -> Outcome {
    let counts: Vec<usize> = (2..=6)
        .map(|k| {
            let l = make_mn(k).unwrap();
            let seed = Algebra::new(
                l.clone(),
                l.elements().map(|a| l.complements_of(a)[0]).collect(),
            )
            .unwrap();
            common::all_complementation_tables(&seed)
                .into_iter()
                .filter(|t| common::satisfies_w(&Algebra::new(l.clone(), t.clone()).unwrap()))
                .count()
        })
        .collect();
    let oracle = counts[0] > 0 && counts[1] > 0 && counts[2..].iter().all(|&c| c == 0);
    lib_and(3, oracle, &format!("W-complementation counts {counts:?}"))
}

fn c4() -> Outcome {
    let h1 = fixture("H1").unwrap();
    let h2 = fixture("H2").unwrap();
    let iso = common::isomorphic(&h1, &m3p_x_bool(1)) && !common::isomorphic(&h1, &h2);
    let mut want: Vec<Vec<usize>> = vec![
        ["0", "a", "b", "c", "d"]
            .iter()
            .map(|l| el(&h2, l))
            .collect(),
        ["e", "f", "g", "h", "1"]
            .iter()
            .map(|l| el(&h2, l))
            .collect(),
    ];
    want.sort();
    let cons = common::congruences(&h2, true);
    let n = h2.size();
    // The monolith is the unique atom of the congruence lattice.
    let atoms: Vec<_> = cons
        .iter()
        .filter(|c| c.len() < n && c.len() > 1)
        .filter(|c| {
            !cons.iter().any(|d| {
                d != *c
                    && d.len() < n
                    && d.len() > c.len()
                    && d.iter()
                        .all(|bl| c.iter().any(|cb| bl.iter().all(|x| cb.contains(x))))
            })
        })
        .collect();
    let monolith = si_by_partitions(&h2) && atoms.len() == 1 && *atoms[0] == want;
    lib_and(
        4,
        iso && monolith,
        "H1 ≅ M_3' × 2, H1 ≇ H2 and the monolith of H2",
    )
}

fn c5() -> Outcome {
    let w: Vec<bool> = ["PG22-c1", "PG22-c2", "PG22-c3"]
        .iter()
        .map(|n| common::satisfies_w(&fixture(n).unwrap()))
        .collect();
    let dm: Vec<bool> = ["PG22-c1", "PG22-c2"]
        .iter()
        .map(|n| satisfies_dm(&fixture(n).unwrap()))
        .collect();
    let c3 = fixture("PG22-c3").unwrap();
    let (g, c) = (el(&c3, "g"), el(&c3, "c"));
    let at_gc = c3.meet(c3.comp(g), c) == c3.bottom() && c3.meet(g, c3.comp(c)) == c3.bottom();
    let oracle = w == [true, true, false] && dm == [false, false] && at_gc;
    lib_and(
        5,
        oracle,
        &format!("W {w:?}, DM {dm:?}, (g,c) witness {at_gc}"),
    )
}

fn c6() -> Outcome {
    let m3x2 = m3p_x_bool(1);
    let total = common::all_complementation_tables(&m3x2).len();
    lib_and(
        6,
        total == 64,
        &format!("{total} complementations of M_3 × 2"),
    )
}

fn c7() -> Outcome {
    // Every injective action on (M_3, 2): SI ⇔ θ_1 (kill the Boolean bit) is
    // not compatible with the complementation.
    let m3 = make_mn(3).unwrap();
    let atoms: Vec<usize> = m3.atoms();
    let rotations: Vec<Vec<usize>> = [1usize, 2]
        .iter()
        .map(|&s| {
            let mut t = vec![0; m3.size()];
            t[m3.bottom()] = m3.top();
            t[m3.top()] = m3.bottom();
            for (i, &a) in atoms.iter().enumerate() {
                t[a] = atoms[(i + s) % 3];
            }
            t
        })
        .collect();
    let mut checked = 0;
    let mut agree = true;
    for s0 in &rotations {
        for s1 in &rotations {
            let alg = l_construction(
                &m3,
                &Action {
                    k: 1,
                    maps: vec![s0.clone(), s1.clone()],
                },
            )
            .unwrap();
            let first: Vec<usize> = alg.elements().map(|e| e / 2).collect();
            let theta_ok = common::compatible(&alg, &first, true);
            agree &= si_by_partitions(&alg) == !theta_ok;
            checked += 1;
        }
    }
    lib_and(
        7,
        agree && checked == 4,
        &format!("{checked} injective actions"),
    )
}

fn c8() -> Outcome {
    let a = common::subuniverses(&m3p_x_bool(1)).len();
    let b = common::subuniverses(&m3p_x_bool(2)).len();
    lib_and(8, (a, b) == (3, 7), &format!("{a} and {b} subuniverses"))
}

fn c9() -> Outcome {
    let h1 = fixture("H1").unwrap();
    let e = el(&h1, "e");
    let (lo, hi): (Vec<usize>, Vec<usize>) = (
        h1.elements().filter(|&x| h1.leq(x, e)).collect(),
        h1.elements().filter(|&x| h1.leq(e, x)).collect(),
    );
    let bijective = lo.len() * hi.len() == h1.size()
        && h1
            .elements()
            .map(|x| (h1.meet(x, e), h1.join(x, e)))
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            == h1.size();
    lib_and(9, bijective, "x ↦ (x∧e, x∨e) on H1")
}

fn c10() -> Outcome {
    let h1 = fixture("H1").unwrap();
    let h2 = fixture("H2").unwrap();
    let h1_four =
        common::congruences(&h1, true).len() == 4 && common::congruences(&h1, false).len() == 4;
    let h2_differs = common::congruences(&h2, true) != common::congruences(&h2, false);
    lib_and(10, h1_four && h2_differs, "congruence counts of H1 and H2")
}

/// Evaluates x∧(τ_4(y)∨z) = (x∧τ_4(y))∨(x∧z) everywhere.
fn t4_holds(alg: &Algebra) -> bool {
    let c = |x| alg.comp(x);
    let tau = |y| alg.meet(alg.join(y, c(c(y))), alg.join(y, c(c(c(y)))));
    alg.elements().all(|x| {
        alg.elements().all(|y| {
            alg.elements().all(|z| {
                alg.meet(x, alg.join(tau(y), z)) == alg.join(alg.meet(x, tau(y)), alg.meet(x, z))
            })
        })
    })
}

fn c11() -> Outcome {
    let c = lib(11);
    let bad = failing(&c);
    let caveat_only = bad.len() == 1 && bad[0].contains("(T_4)");
    let b22 = boolean_algebra(2).unwrap();
    let sum = horizontal_sum(&b22, &b22).unwrap();
    let oracle_t4 = (t4_holds(&sum), t4_holds(&make_mn_prime(3).unwrap()));
    let caveat_false = oracle_t4 == (false, false);
    ok(
        false,
        format!(
            "expected failure: every check passes except the n=4 caveat, which is false \
             (direct evaluation of (T_4): 2^2 ⊕ 2^2 {}, M_3' {}); library agrees: {}",
            oracle_t4.0,
            oracle_t4.1,
            caveat_only && caveat_false
        ),
    )
    .expect_known(caveat_only && caveat_false)
}

/// Size of the subalgebra of `M_n'^(M_n')` generated by the identity map.
fn unary_term_functions(n: usize) -> usize {
    let m = make_mn_prime(n).unwrap();
    let size = m.size();
    let id: Vec<usize> = m.elements().collect();
    let mut seen =
        std::collections::BTreeSet::from([id.clone(), vec![m.bottom(); size], vec![m.top(); size]]);
    loop {
        let cur: Vec<Vec<usize>> = seen.iter().cloned().collect();
        let before = seen.len();
        for f in &cur {
            seen.insert(f.iter().map(|&v| m.comp(v)).collect());
            for g in &cur {
                seen.insert(f.iter().zip(g).map(|(&a, &b)| m.meet(a, b)).collect());
                seen.insert(f.iter().zip(g).map(|(&a, &b)| m.join(a, b)).collect());
            }
        }
        if seen.len() == before {
            return seen.len();
        }
    }
}

fn c12() -> Outcome {
    let sizes = (unary_term_functions(3), unary_term_functions(4));
    let q = |n: u64, k: u32| ((n + 2).pow(k) - 2u64.pow(k)) / n;
    let oracle = sizes == (20, 24) && (q(3, 2), q(4, 2)) == (7, 8);
    lib_and(12, oracle, &format!("term-function counts {sizes:?}"))
}

fn c13() -> Outcome {
    let m3 = make_mn_prime(3).unwrap();
    let b22 = boolean_algebra(2).unwrap();
    let sum = horizontal_sum(&b22, &b22).unwrap();
    let atom = sum.lattice().atoms()[0];
    let involutive_not_neutral =
        sum.comp(sum.comp(atom)) == atom && !sum.lattice().is_neutral_element(atom);
    lib_and(
        13,
        common::satisfies_w(&m3) && involutive_not_neutral,
        "M_3' in W; an atom of 2^2 ⊕ 2^2",
    )
}

fn c14() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_latcomp");
    let run = |jobs: Option<&str>| {
        let mut cmd = Command::new(exe);
        cmd.args(["verify-paper", "--json"]);
        if let Some(j) = jobs {
            cmd.args(["--jobs", j]);
        }
        cmd.output().expect("binary runs").stdout
    };
    let outs = [
        run(None),
        run(None),
        run(None),
        run(Some("1")),
        run(Some("4")),
    ];
    let same = !outs[0].is_empty() && outs.iter().all(|o| o == &outs[0]);
    ok(
        same,
        format!("{} bytes, {} runs", outs[0].len(), outs.len()),
    )
}

impl Outcome {
    /// Marks a failure that has been analysed and is expected.
    fn expect_known(mut self, as_expected: bool) -> Outcome {
        if !as_expected {
            self.note = format!("UNEXPECTED: {}", self.note);
        } else {
            self.note = format!("[known] {}", self.note);
        }
        self
    }
}

fn main() {
    let criteria: [(u8, &str, fn() -> Outcome); 14] = [
        (1, "symmetric difference table of M_3'", c1),
        (2, "diamond and pentagon complementations", c2),
        (3, "no W-complementation on M_k for k in 4..6", c3),
        (
            4,
            "the two W-complementations of the ten-element lattice",
            c4,
        ),
        (5, "complementations of the Fano plane lattice", c5),
        (6, "action construction round trip", c6),
        (7, "subdirect irreducibility of action algebras", c7),
        (8, "subuniverses of M_3' x 2^k", c8),
        (
            9,
            "pentagon chain, weak orthomodularity, neutral elements",
            c9,
        ),
        (10, "congruence properties", c10),
        (11, "identities of M_n' and the n=4 caveat", c11),
        (12, "free algebras", c12),
        (13, "consequences of (M_3) and the tau identity", c13),
        (14, "deterministic verify-paper output", c14),
    ];
    let mut unexpected = 0;
    for (id, title, f) in criteria {
        let out = f();
        let verdict = if out.passed { "PASS" } else { "FAIL" };
        let suffix = if out.note.is_empty() {
            String::new()
        } else {
            format!(" -- {}", out.note)
        };
        println!("acceptance {id:>2} {verdict}: {title}{suffix}");
        let known = id == 11 && out.note.starts_with("[known]");
        if !out.passed && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
