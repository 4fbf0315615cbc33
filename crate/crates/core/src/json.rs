//! JSON documents for lattices and algebras.
//!
//! A lattice is `{"labels": [...], "covers": [[i, j], ...]}` or
//! `{"labels": [...], "leq": [[bool, ...], ...]}` with indices into
//! `labels`. An algebra adds `"complement": [j_0, j_1, ...]`. Readers accept
//! any element order; the lattice may renumber elements, so complements are
//! carried over by label. Writers always emit the covers form.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::lattice::Lattice;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Doc {
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    covers: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    leq: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complement: Option<Vec<usize>>,
}

fn lattice_from_doc(doc: &Doc) -> Result<Lattice> {
    let n = doc.labels.len();
    match (&doc.covers, &doc.leq) {
        (Some(covers), None) => {
            let pairs: Vec<(usize, usize)> = covers.iter().map(|&[a, b]| (a, b)).collect();
            if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
                return Err(Error::Input(format!("cover [{a}, {b}] is out of range")));
            }
            Lattice::from_covers(&doc.labels, &pairs)
        }
        (None, Some(leq)) => {
            if leq.len() != n || leq.iter().any(|row| row.len() != n) {
                return Err(Error::Input(format!("leq must be a {n}×{n} matrix")));
            }
            Lattice::from_leq(&doc.labels, leq)
        }
        _ => Err(Error::Input(
            "give exactly one of \"covers\" and \"leq\"".into(),
        )),
    }
}

pub fn lattice_from_str(text: &str) -> Result<Lattice> {
    lattice_from_doc(&serde_json::from_str(text)?)
}

pub fn algebra_from_str(text: &str) -> Result<Algebra> {
    let doc: Doc = serde_json::from_str(text)?;
    let lattice = lattice_from_doc(&doc)?;
    let comp = doc
        .complement
        .as_ref()
        .ok_or_else(|| Error::Input("algebra document needs \"complement\"".into()))?;
    if comp.len() != doc.labels.len() {
        return Err(Error::Input(format!(
            "complement has {} entries for {} labels",
            comp.len(),
            doc.labels.len()
        )));
    }
    let mut table = vec![0; lattice.size()];
    for (i, &j) in comp.iter().enumerate() {
        let target = doc
            .labels
            .get(j)
            .ok_or_else(|| Error::Input(format!("complement index {j} out of range")))?;
        let from = lattice
            .index_of(&doc.labels[i])
            .expect("labels survive renumbering");
        table[from] = lattice
            .index_of(target)
            .expect("labels survive renumbering");
    }
    Algebra::new(lattice, table)
}

fn lattice_doc(l: &Lattice) -> Doc {
    let mut covers: Vec<[usize; 2]> = l.covers().into_iter().map(|(a, b)| [a, b]).collect();
    covers.sort_unstable();
    Doc {
        labels: l.labels().to_vec(),
        covers: Some(covers),
        leq: None,
        complement: None,
    }
}

pub fn lattice_to_json(l: &Lattice) -> serde_json::Value {
    serde_json::to_value(lattice_doc(l)).expect("plain data")
}

pub fn algebra_to_json(a: &Algebra) -> serde_json::Value {
    let mut doc = lattice_doc(a.lattice());
    doc.complement = Some(a.comp_table());
    serde_json::to_value(doc).expect("plain data")
}
