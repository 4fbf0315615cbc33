//! The named example algebras, transcribed table by table.
//!
//! Each lattice is given by its Hasse diagram and each complementation by
//! its table on the non-bound elements; `0 ↦ 1` and `1 ↦ 0` are implied.
//! Everything else in the crate that needs one of these examples goes
//! through [`fixture`] or [`fixture_lattice`].

use crate::algebra::Algebra;
use crate::construct::{boolean_algebra, make_mn_prime};
use crate::lattice::Lattice;
use crate::{Error, Result};

struct LatticeTable {
    name: &'static str,
    labels: &'static [&'static str],
    covers: &'static [(&'static str, &'static str)],
}

struct AlgebraTable {
    name: &'static str,
    lattice: &'static str,
    comp: &'static [(&'static str, &'static str)],
}

const LATTICES: &[LatticeTable] = &[
    LatticeTable {
        name: "diamond",
        labels: &["0", "a", "b", "c", "1"],
        covers: &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    },
    LatticeTable {
        name: "pentagon",
        labels: &["0", "a", "b", "c", "1"],
        covers: &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    },
    LatticeTable {
        name: "fig3",
        labels: &["0", "a", "b", "c", "d", "e", "f", "g", "h", "1"],
        covers: &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("0", "e"),
            ("a", "d"),
            ("b", "d"),
            ("c", "d"),
            ("e", "f"),
            ("e", "g"),
            ("e", "h"),
            ("a", "f"),
            ("b", "g"),
            ("c", "h"),
            ("d", "1"),
            ("f", "1"),
            ("g", "1"),
            ("h", "1"),
        ],
    },
    // Subspaces of the three-dimensional space over the two-element field:
    // points a..g, lines h..n, each line above its three points.
    LatticeTable {
        name: "fig4",
        labels: &[
            "0", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "1",
        ],
        covers: &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("0", "d"),
            ("0", "e"),
            ("0", "f"),
            ("0", "g"),
            ("a", "h"),
            ("b", "h"),
            ("d", "h"),
            ("b", "i"),
            ("c", "i"),
            ("f", "i"),
            ("a", "j"),
            ("e", "j"),
            ("f", "j"),
            ("c", "k"),
            ("d", "k"),
            ("e", "k"),
            ("a", "l"),
            ("c", "l"),
            ("g", "l"),
            ("b", "m"),
            ("e", "m"),
            ("g", "m"),
            ("d", "n"),
            ("f", "n"),
            ("g", "n"),
            ("h", "1"),
            ("i", "1"),
            ("j", "1"),
            ("k", "1"),
            ("l", "1"),
            ("m", "1"),
            ("n", "1"),
        ],
    },
    LatticeTable {
        name: "fig5",
        labels: &["0", "a", "b", "c", "d", "1"],
        covers: &[
            ("0", "a"),
            ("a", "b"),
            ("b", "1"),
            ("0", "c"),
            ("c", "1"),
            ("0", "d"),
            ("d", "1"),
        ],
    },
    LatticeTable {
        name: "benzene",
        labels: &["0", "a", "b", "a''", "b''", "1"],
        covers: &[
            ("0", "a"),
            ("a", "b"),
            ("b", "1"),
            ("0", "a''"),
            ("a''", "b''"),
            ("b''", "1"),
        ],
    },
];

const ALGEBRAS: &[AlgebraTable] = &[
    AlgebraTable {
        name: "diamond-cyclic",
        lattice: "diamond",
        comp: &[("a", "b"), ("b", "c"), ("c", "a")],
    },
    AlgebraTable {
        name: "diamond-repeat",
        lattice: "diamond",
        comp: &[("a", "b"), ("b", "c"), ("c", "b")],
    },
    AlgebraTable {
        name: "pentagon-1",
        lattice: "pentagon",
        comp: &[("a", "c"), ("c", "b"), ("b", "c")],
    },
    AlgebraTable {
        name: "pentagon-2",
        lattice: "pentagon",
        comp: &[("b", "c"), ("c", "a"), ("a", "c")],
    },
    AlgebraTable {
        name: "fig5-invol",
        lattice: "fig5",
        comp: &[("a", "c"), ("c", "a"), ("b", "d"), ("d", "b")],
    },
    AlgebraTable {
        name: "fig5-noninj",
        lattice: "fig5",
        comp: &[("a", "c"), ("b", "c"), ("c", "d"), ("d", "c")],
    },
    AlgebraTable {
        name: "H1",
        lattice: "fig3",
        comp: &[
            ("a", "g"),
            ("b", "h"),
            ("c", "f"),
            ("d", "e"),
            ("e", "d"),
            ("f", "b"),
            ("g", "c"),
            ("h", "a"),
        ],
    },
    AlgebraTable {
        name: "H2",
        lattice: "fig3",
        comp: &[
            ("a", "g"),
            ("b", "h"),
            ("c", "f"),
            ("d", "e"),
            ("e", "d"),
            ("f", "c"),
            ("g", "a"),
            ("h", "b"),
        ],
    },
    AlgebraTable {
        name: "PG22-c1",
        lattice: "fig4",
        comp: &[
            ("a", "k"),
            ("b", "j"),
            ("c", "m"),
            ("d", "i"),
            ("e", "n"),
            ("f", "l"),
            ("g", "h"),
            ("h", "g"),
            ("i", "d"),
            ("j", "b"),
            ("k", "a"),
            ("l", "f"),
            ("m", "c"),
            ("n", "e"),
        ],
    },
    AlgebraTable {
        name: "PG22-c2",
        lattice: "fig4",
        comp: &[
            ("a", "m"),
            ("b", "n"),
            ("c", "h"),
            ("d", "j"),
            ("e", "i"),
            ("f", "l"),
            ("g", "k"),
            ("h", "e"),
            ("i", "a"),
            ("j", "g"),
            ("k", "f"),
            ("l", "d"),
            ("m", "c"),
            ("n", "b"),
        ],
    },
    AlgebraTable {
        name: "PG22-c3",
        lattice: "fig4",
        comp: &[
            ("a", "n"),
            ("b", "k"),
            ("c", "j"),
            ("d", "l"),
            ("e", "i"),
            ("f", "m"),
            ("g", "h"),
            ("h", "g"),
            ("i", "e"),
            ("j", "c"),
            ("k", "b"),
            ("l", "d"),
            ("m", "f"),
            ("n", "a"),
        ],
    },
];

/// Names accepted by [`fixture`], in registry order.
pub fn fixture_names() -> Vec<&'static str> {
    ALGEBRAS.iter().map(|t| t.name).collect()
}

/// Names accepted by [`fixture_lattice`], in registry order.
pub fn lattice_names() -> Vec<&'static str> {
    LATTICES.iter().map(|t| t.name).collect()
}

pub fn fixture_lattice(name: &str) -> Result<Lattice> {
    let t = LATTICES
        .iter()
        .find(|t| t.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let index = |s: &str| {
        t.labels
            .iter()
            .position(|&l| l == s)
            .expect("cover endpoints are labels")
    };
    let covers: Vec<(usize, usize)> = t
        .covers
        .iter()
        .map(|&(a, b)| (index(a), index(b)))
        .collect();
    Lattice::from_covers(t.labels, &covers)
}

/// A named algebra from the registry. Lookup ignores ASCII case, so `h1`
/// and `pg22-c1` resolve as well.
pub fn fixture(name: &str) -> Result<Algebra> {
    if name.eq_ignore_ascii_case("benzene") {
        return Err(Error::Input(
            "benzene is a lattice without a designated complementation".into(),
        ));
    }
    let t = ALGEBRAS
        .iter()
        .find(|t| t.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    Algebra::from_labels(fixture_lattice(t.lattice)?, t.comp)
}

/// Resolves an algebra name as used on the command line: a registry
/// fixture, `m<n>p` for `M_n′`, or `bool<k>` for `2^k`.
pub fn resolve_algebra(name: &str) -> Result<Algebra> {
    let lower = name.to_ascii_lowercase();
    if let Some(n) = lower
        .strip_prefix('m')
        .and_then(|r| r.strip_suffix('p'))
        .and_then(|d| d.parse().ok())
    {
        return make_mn_prime(n);
    }
    if let Some(k) = lower.strip_prefix("bool").and_then(|d| d.parse().ok()) {
        return boolean_algebra(k);
    }
    fixture(name)
}
