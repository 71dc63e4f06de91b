//! Canonical labelling of diagrams.
//!
//! Two diagrams are equivalent when they differ by renaming, by moving the
//! common basepoint of a sister pair, by reversing both curves of a pair, by
//! exchanging the two curves of a pair, or by reversing the orientation of
//! the surface. The canonical form is found by labelling the diagram from
//! every possible starting visit, direction and orientation, and keeping
//! the lexicographically least encoding.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::diagram::{Diagram, DiagramBuilder, Slot};
use crate::format::render;

/// One labelling of a connected component.
struct Labelling {
    /// (original entry curve, basepoint, reversed) per labelled pair.
    pairs: Vec<(usize, usize, bool)>,
    key: Vec<u32>,
}

fn slot_along(d: &Diagram, curve: usize, base: usize, reversed: bool, k: usize) -> Slot {
    let n = d.len_of(curve);
    let i = if reversed { (base + n - k % n) % n } else { (base + k) % n };
    Slot::new(curve, i)
}

/// Labels the component containing `start` by breadth-first reading.
fn label_from(d: &Diagram, start: Slot, reversed: bool, mirror: bool) -> Labelling {
    let mut pair_of_curve: HashMap<usize, usize> = HashMap::new();
    let mut pairs: Vec<(usize, usize, bool)> = vec![(start.curve, start.index, reversed)];
    pair_of_curve.insert(start.curve, 0);
    pair_of_curve.insert(d.sister(start.curve), 0);
    let mut crossing_label: HashMap<usize, u32> = HashMap::new();
    let mut key = Vec::new();
    let mut signs: Vec<(u32, u32)> = Vec::new();
    let mut p = 0;
    while p < pairs.len() {
        let (entry, base, rev) = pairs[p];
        let n = d.len_of(entry);
        key.push(n as u32);
        for curve in [entry, d.sister(entry)] {
            for k in 0..n {
                let slot = slot_along(d, curve, base, rev, k);
                let x = d.crossing_at(slot);
                let next = crossing_label.len() as u32;
                let label = *crossing_label.entry(x).or_insert(next);
                key.push(label);
                if label != next {
                    continue;
                }
                let other = d.partner(slot);
                let new_rev = if pair_of_curve.contains_key(&other.curve) {
                    None
                } else {
                    // Orient the new pair so that the frame (this strand,
                    // new strand) is positive in the chosen orientation.
                    let frame = d.frame_sign(slot).value() * if rev { -1 } else { 1 };
                    let frame = if mirror { -frame } else { frame };
                    Some(frame < 0)
                };
                if let Some(r) = new_rev {
                    let id = pairs.len();
                    pairs.push((other.curve, other.index, r));
                    pair_of_curve.insert(other.curve, id);
                    pair_of_curve.insert(d.sister(other.curve), id);
                }
                let dir_here = if rev { -1 } else { 1 };
                let (_, _, orev) = pairs[pair_of_curve[&other.curve]];
                let dir_there = if orev { -1 } else { 1 };
                let frame = d.frame_sign(slot).value() * dir_here * dir_there * if mirror { -1 } else { 1 };
                signs.push((label, u32::from(frame < 0)));
            }
        }
        p += 1;
    }
    signs.sort_unstable();
    key.push(u32::MAX);
    key.extend(signs.iter().map(|s| s.1));
    Labelling { pairs, key }
}

fn components(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.curve_count();
    let mut uf = UnionFind::<usize>::new(n);
    for c in 0..n {
        uf.union(c, d.sister(c));
    }
    for x in 0..d.crossing_count() {
        let [a, b] = d.strands(x);
        uf.union(a.curve, b.curve);
    }
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for c in 0..n {
        by_root.entry(uf.find_mut(c)).or_default().push(c);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
    out.sort();
    out
}

fn best_labelling(d: &Diagram, component: &[usize], mirror: bool) -> Labelling {
    let mut best: Option<Labelling> = None;
    for &c in component {
        for i in 0..d.len_of(c) {
            for rev in [false, true] {
                let l = label_from(d, Slot::new(c, i), rev, mirror);
                if best.as_ref().is_none_or(|b| l.key < b.key) {
                    best = Some(l);
                }
            }
        }
    }
    best.expect("components are non-empty")
}

/// The diagram relabelled canonically: sister pairs are named `aK`/`aK*`
/// and crossings `PK` in order of first appearance.
pub fn canonical_diagram(d: &Diagram) -> Diagram {
    if !d.is_valid() {
        return d.clone();
    }
    let comps = components(d);
    let mut best: Option<(Vec<u32>, bool, Vec<Labelling>)> = None;
    for mirror in [false, true] {
        let mut ls: Vec<Labelling> = comps.iter().map(|c| best_labelling(d, c, mirror)).collect();
        ls.sort_by(|a, b| a.key.cmp(&b.key));
        let mut key = Vec::new();
        for l in &ls {
            key.extend_from_slice(&l.key);
        }
        if best.as_ref().is_none_or(|b| key < b.0) {
            best = Some((key, mirror, ls));
        }
    }
    let (_, mirror, ls) = best.expect("two orientations tried");
    let pairs: Vec<(usize, usize, bool)> = ls.into_iter().flat_map(|l| l.pairs).collect();
    relabel(d, &pairs, mirror)
}

/// Rebuilds `d` with the pairs in the given order, each read from the
/// given entry curve, basepoint and direction.
fn relabel(d: &Diagram, pairs: &[(usize, usize, bool)], mirror: bool) -> Diagram {
    let mut b = DiagramBuilder::new();
    let mut new_slot: HashMap<Slot, Slot> = HashMap::new();
    let mut reversed = vec![false; d.curve_count()];
    let mut crossing_label: HashMap<usize, usize> = HashMap::new();
    let mut words = Vec::new();
    for (k, &(entry, base, rev)) in pairs.iter().enumerate() {
        for (j, curve) in [entry, d.sister(entry)].into_iter().enumerate() {
            reversed[curve] = rev;
            let n = d.len_of(curve);
            let new_curve = 2 * k + j;
            let mut word = Vec::with_capacity(n);
            for i in 0..n {
                let slot = slot_along(d, curve, base, rev, i);
                new_slot.insert(slot, Slot::new(new_curve, i));
                let x = d.crossing_at(slot);
                let next = crossing_label.len();
                word.push(*crossing_label.entry(x).or_insert(next));
            }
            let name = if j == 0 {
                format!("a{}", k + 1)
            } else {
                format!("a{}*", k + 1)
            };
            words.push((name, word));
        }
    }
    for (name, word) in words {
        b.add_curve(&name, word);
    }
    for k in 0..pairs.len() {
        b.pair(2 * k, 2 * k + 1);
    }
    let mut by_label: Vec<(usize, usize)> = crossing_label.into_iter().map(|(x, l)| (l, x)).collect();
    by_label.sort_unstable();
    for (l, x) in by_label {
        let [s1, s2] = d.strands(x);
        let mut sign = d.sign(x);
        if reversed[s1.curve] != reversed[s2.curve] {
            sign = sign.flip();
        }
        if mirror {
            sign = sign.flip();
        }
        let added = b.add_crossing(&format!("P{}", l + 1), new_slot[&s1], sign);
        debug_assert_eq!(added, l);
    }
    b.declared_genus(d.declared_genus());
    b.build()
}

/// Byte string identifying the equivalence class of a valid diagram.
pub fn canonical_form(d: &Diagram) -> Vec<u8> {
    render(&canonical_diagram(d).with_declared_genus(None)).into_bytes()
}
