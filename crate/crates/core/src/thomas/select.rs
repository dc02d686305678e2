use std::cmp::Ordering;

use super::{Kind, Relation, Strategy};
use crate::poly::{Poly, Variable};

fn init_chain<V: Variable>(p: &Poly<V>) -> Vec<V> {
    let mut out = Vec::new();
    let mut cur = p.clone();
    while let Some(x) = cur.leader().cloned() {
        out.push(x);
        cur = cur.init();
    }
    out
}

fn kind_rank(k: Kind) -> u8 {
    match k {
        Kind::Eq => 0,
        Kind::Neq => 1,
    }
}

fn compare<V: Variable>(a: &Relation<V>, b: &Relation<V>, strategy: Strategy) -> Ordering {
    let primary = match strategy {
        Strategy::EquationsFirst => kind_rank(a.kind)
            .cmp(&kind_rank(b.kind))
            .then_with(|| a.leader().cmp(&b.leader())),
        Strategy::LeaderFirst => a
            .leader()
            .cmp(&b.leader())
            .then_with(|| kind_rank(a.kind).cmp(&kind_rank(b.kind))),
    };
    primary
        .then_with(|| init_chain(&a.poly).cmp(&init_chain(&b.poly)))
        .then_with(|| a.poly.cmp(&b.poly))
}

/// Index of the relation the strategy picks from a nonempty queue.
pub fn select_index<V: Variable>(queue: &[Relation<V>], strategy: Strategy) -> usize {
    assert!(!queue.is_empty(), "select from an empty queue");
    let mut best = 0;
    for i in 1..queue.len() {
        if compare(&queue[i], &queue[best], strategy) == Ordering::Less {
            best = i;
        }
    }
    best
}

/// An equation may only be chosen when no queued equation has a smaller leader,
/// an inequation only when no queued equation has a leader at most its own.
pub fn selection_respects_axioms<V: Variable>(queue: &[Relation<V>], idx: usize) -> bool {
    let q = &queue[idx];
    let x = q.leader();
    queue.iter().enumerate().all(|(j, r)| {
        if j == idx || r.kind != Kind::Eq {
            return true;
        }
        match q.kind {
            Kind::Eq => r.leader() >= x,
            Kind::Neq => r.leader() > x,
        }
    })
}
