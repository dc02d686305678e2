use std::collections::{BTreeMap, BTreeSet};

use super::DiffVar;

/// Reductive derivations for each element of a finite set of derivatives.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JanetTable {
    /// Order in which derivations are scanned by the assignment rule.
    pub scan: Vec<usize>,
    pub entries: BTreeMap<DiffVar, Vec<bool>>,
}

impl JanetTable {
    pub fn reductive(&self, w: &DiffVar) -> Option<&[bool]> {
        self.entries.get(w).map(|v| v.as_slice())
    }

    /// The apex of the cone containing `v`.
    pub fn find_cone(&self, v: &DiffVar) -> Option<&DiffVar> {
        self.entries.iter().find(|(w, r)| in_cone(w, r, v)).map(|(w, _)| w)
    }

    /// `(w, k)` for every non-reductive derivation `k` of every `w`.
    pub fn nonreductive(&self) -> Vec<(DiffVar, usize)> {
        let mut out = Vec::new();
        for (w, r) in &self.entries {
            for (k, red) in r.iter().enumerate() {
                if !red {
                    out.push((w.clone(), k));
                }
            }
        }
        out
    }
}

/// Whether `v` lies in the cone of `apex` generated by the derivations flagged in `reductive`.
pub fn in_cone(apex: &DiffVar, reductive: &[bool], v: &DiffVar) -> bool {
    match apex.divides(v) {
        None => false,
        Some(d) => d.iter().zip(reductive).all(|(i, r)| *r || *i == 0),
    }
}

/// Janet assignment: derivation `scan[l]` is reductive for `w` iff `w` attains the
/// maximal exponent in it among the members of the same indeterminate that agree
/// with `w` in `scan[0..l]`.
pub fn janet_assign(w: &[DiffVar], scan: &[usize]) -> JanetTable {
    let mut entries = BTreeMap::new();
    for a in w {
        let n = a.index.len();
        let mut red = vec![false; n];
        for (l, &d) in scan.iter().enumerate() {
            let max = w
                .iter()
                .filter(|b| b.indet == a.indet && scan[..l].iter().all(|&k| b.index[k] == a.index[k]))
                .map(|b| b.index[d])
                .max()
                .unwrap();
            red[d] = a.index[d] == max;
        }
        entries.insert(a.clone(), red);
    }
    JanetTable { scan: scan.to_vec(), entries }
}

/// Adds non-reductive derivatives outside all cones until the cones cover the
/// derivative closure of `w`.
pub fn janet_completion(w: &[DiffVar], scan: &[usize]) -> BTreeSet<DiffVar> {
    let mut set: BTreeSet<DiffVar> = w.iter().cloned().collect();
    loop {
        let list: Vec<DiffVar> = set.iter().cloned().collect();
        let table = janet_assign(&list, scan);
        let missing = table
            .nonreductive()
            .into_iter()
            .map(|(v, k)| v.shift(k))
            .filter(|v| table.find_cone(v).is_none())
            .min_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        match missing {
            Some(v) => {
                set.insert(v);
            }
            None => return set,
        }
    }
}

/// The minimal elements of `v` under the derivative relation.
pub fn nu_generators(v: &[DiffVar]) -> BTreeSet<DiffVar> {
    v.iter()
        .filter(|a| !v.iter().any(|b| b != *a && b.divides(a).is_some()))
        .cloned()
        .collect()
}
