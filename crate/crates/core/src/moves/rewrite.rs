//! Mutable working copy of a diagram used by the local rewrites.
//!
//! Every visit carries a stable id so that insertions do not invalidate the
//! references held by a rewrite in progress.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::diagram::{Diagram, DiagramBuilder, Sign, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub uid: usize,
    pub crossing: usize,
}

#[derive(Clone, Debug)]
pub struct EditCurve {
    pub name: String,
    pub visits: Vec<Visit>,
}

#[derive(Clone, Debug)]
pub struct EditCrossing {
    pub name: String,
    /// The sign is that of the frame whose first vector is the tangent at
    /// this visit.
    pub first: usize,
    pub sign: Sign,
    pub removed: bool,
}

#[derive(Clone, Debug)]
pub struct Editor {
    pub curves: Vec<EditCurve>,
    pub sister: Vec<usize>,
    pub crossings: Vec<EditCrossing>,
    pub removed_curves: HashSet<usize>,
    /// Uids of the visits of the original diagram, by curve and index.
    original: Vec<Vec<usize>>,
    next_uid: usize,
    genus: Option<u32>,
}

impl Editor {
    pub fn new(d: &Diagram) -> Self {
        let mut uid_of = HashMap::new();
        let mut curves = Vec::new();
        let mut next_uid = 0;
        for (c, curve) in d.curves().iter().enumerate() {
            let mut visits = Vec::new();
            for (i, &x) in curve.visits.iter().enumerate() {
                uid_of.insert(Slot::new(c, i), next_uid);
                visits.push(Visit {
                    uid: next_uid,
                    crossing: x,
                });
                next_uid += 1;
            }
            curves.push(EditCurve {
                name: curve.name.clone(),
                visits,
            });
        }
        let crossings = (0..d.crossing_count())
            .map(|x| EditCrossing {
                name: d.crossings()[x].name.clone(),
                first: uid_of[&d.strands(x)[0]],
                sign: d.sign(x),
                removed: false,
            })
            .collect();
        let original = curves.iter().map(|c: &EditCurve| c.visits.iter().map(|v| v.uid).collect()).collect();
        Editor {
            original,
            curves,
            sister: (0..d.curve_count()).map(|c| d.sister(c)).collect(),
            crossings,
            removed_curves: HashSet::new(),
            next_uid,
            genus: None,
        }
    }

    /// Uid of the visit at `slot` of the original diagram.
    pub fn uid(&self, slot: Slot) -> usize {
        self.original[slot.curve][slot.index]
    }

    pub fn fresh_uid(&mut self) -> usize {
        self.next_uid += 1;
        self.next_uid - 1
    }

    fn fresh_name(&self, prefix: &str, taken: &HashSet<&str>) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| !taken.contains(n.as_str()))
            .expect("unbounded")
    }

    pub fn add_crossing(&mut self, first: usize, sign: Sign) -> usize {
        let taken: HashSet<&str> = self.crossings.iter().map(|c| c.name.as_str()).collect();
        let name = self.fresh_name("P", &taken);
        self.crossings.push(EditCrossing {
            name,
            first,
            sign,
            removed: false,
        });
        self.crossings.len() - 1
    }

    /// Adds a sister pair with the given visit lists.
    pub fn add_pair(&mut self, a: Vec<Visit>, b: Vec<Visit>) -> (usize, usize) {
        let taken: HashSet<&str> = self.curves.iter().map(|c| c.name.as_str()).collect();
        let name = self.fresh_name("n", &taken);
        let ia = self.curves.len();
        self.curves.push(EditCurve {
            name: name.clone(),
            visits: a,
        });
        self.curves.push(EditCurve {
            name: format!("{name}*"),
            visits: b,
        });
        self.sister.push(ia + 1);
        self.sister.push(ia);
        (ia, ia + 1)
    }

    pub fn position(&self, curve: usize, uid: usize) -> usize {
        self.curves[curve]
            .visits
            .iter()
            .position(|v| v.uid == uid)
            .expect("visit on curve")
    }

    /// Inserts visits right after the visit `after` of `curve`.
    pub fn insert_after(&mut self, curve: usize, after: usize, new: &[Visit]) {
        let k = self.position(curve, after) + 1;
        self.curves[curve].visits.splice(k..k, new.iter().copied());
    }

    /// Inserts visits right before the visit `before` of `curve`.
    pub fn insert_before(&mut self, curve: usize, before: usize, new: &[Visit]) {
        let k = self.position(curve, before);
        self.curves[curve].visits.splice(k..k, new.iter().copied());
    }

    /// Exchanges the positions of two visits of `curve`.
    pub fn swap(&mut self, curve: usize, a: usize, b: usize) {
        let (i, j) = (self.position(curve, a), self.position(curve, b));
        self.curves[curve].visits.swap(i, j);
    }

    pub fn remove_crossing(&mut self, x: usize) {
        self.crossings[x].removed = true;
        for c in &mut self.curves {
            c.visits.retain(|v| v.crossing != x);
        }
    }

    pub fn remove_pair(&mut self, c: usize) {
        self.removed_curves.insert(c);
        self.removed_curves.insert(self.sister[c]);
    }

    pub fn set_genus(&mut self, g: Option<u32>) {
        self.genus = g;
    }

    pub fn build(&self) -> Diagram {
        let mut b = DiagramBuilder::new();
        let mut new_curve = vec![usize::MAX; self.curves.len()];
        let mut slot_of: HashMap<usize, Slot> = HashMap::new();
        let mut new_crossing = vec![usize::MAX; self.crossings.len()];
        let mut crossing_count = 0;
        for (x, cr) in self.crossings.iter().enumerate() {
            if !cr.removed {
                new_crossing[x] = crossing_count;
                crossing_count += 1;
            }
        }
        for (c, curve) in self.curves.iter().enumerate() {
            if self.removed_curves.contains(&c) {
                continue;
            }
            let id = b.add_curve(&curve.name, curve.visits.iter().map(|v| new_crossing[v.crossing]).collect());
            new_curve[c] = id;
            for (i, v) in curve.visits.iter().enumerate() {
                slot_of.insert(v.uid, Slot::new(id, i));
            }
        }
        for (c, &s) in self.sister.iter().enumerate() {
            if c < s && new_curve[c] != usize::MAX {
                b.pair(new_curve[c], new_curve[s]);
            }
        }
        for cr in &self.crossings {
            if !cr.removed {
                b.add_crossing(&cr.name, slot_of[&cr.first], cr.sign);
            }
        }
        b.declared_genus(self.genus);
        b.build()
    }
}

/// Rebuilds a diagram whose curves have been cut and reconnected. `step`
/// moves a walker standing on a kept visit, in the given direction
/// (`true` = forward), to the next kept visit of its new curve and reports
/// the new direction, or `None` if the walk is lost. Visits for which `kept` is false are dropped together
/// with their crossings. Fails if the walks do not close up or cannot be
/// paired into index-aligned sisters.
pub(crate) fn reconnect(
    d: &Diagram,
    step: impl Fn(Slot, bool) -> Option<(Slot, bool)>,
    kept: impl Fn(Slot) -> bool,
) -> Option<Diagram> {
    let mut walks: Vec<Vec<(Slot, bool)>> = Vec::new();
    let mut walk_of: BTreeMap<Slot, (usize, usize, bool)> = BTreeMap::new();
    let n = d.curve_count();
    let all: Vec<Slot> = (0..n).flat_map(|c| (0..d.len_of(c)).map(move |i| Slot::new(c, i))).collect();
    for &start in &all {
        if walk_of.contains_key(&start) || !kept(start) {
            continue;
        }
        let mut w = Vec::new();
        let (mut s, mut f) = (start, true);
        loop {
            if walk_of.contains_key(&s) {
                // The walk closes at its start; anything else is a bad site.
                if s != start || !f || w.is_empty() {
                    return None;
                }
                break;
            }
            walk_of.insert(s, (walks.len(), w.len(), f));
            w.push((s, f));
            (s, f) = step(s, f)?;
        }
        walks.push(w);
    }
    // Sister pairing: the walk through the related visits, started at the
    // visit related to the first one and in the same direction, must be a
    // reconnected curve with the same length.
    let mut sister = vec![usize::MAX; walks.len()];
    for k in 0..walks.len() {
        if sister[k] != usize::MAX {
            continue;
        }
        let (s0, f0) = walks[k][0];
        let k2 = walk_of.get(&d.related(s0))?.0;
        if k2 == k || sister[k2] != usize::MAX || walks[k2].len() != walks[k].len() {
            return None;
        }
        let mut w2 = Vec::with_capacity(walks[k].len());
        let (mut s, mut f) = (d.related(s0), f0);
        for &(t, g) in &walks[k] {
            if (s, f) != (d.related(t), g) {
                return None;
            }
            w2.push((s, f));
            (s, f) = step(s, f)?;
        }
        if (s, f) != w2[0] {
            return None;
        }
        for (j, &(t, g)) in w2.iter().enumerate() {
            walk_of.insert(t, (k2, j, g));
        }
        walks[k2] = w2;
        sister[k] = k2;
        sister[k2] = k;
    }
    // Unchanged curves keep their names; others get fresh ones.
    let unchanged = |w: &Vec<(Slot, bool)>| {
        let c = w[0].0.curve;
        w.len() == d.len_of(c) && w.iter().enumerate().all(|(i, &(s, f))| f && s == Slot::new(c, i))
    };
    let taken: HashSet<String> = d.curves().iter().map(|c| c.name.clone()).collect();
    let mut fresh = (1..).map(|k| format!("n{k}")).filter(|m| !taken.contains(m) && !taken.contains(&format!("{m}*")));
    let mut names = vec![String::new(); walks.len()];
    for k in 0..walks.len() {
        if !names[k].is_empty() {
            continue;
        }
        let s = sister[k];
        if unchanged(&walks[k]) && unchanged(&walks[s]) {
            names[k] = d.curves()[walks[k][0].0.curve].name.clone();
            names[s] = d.curves()[walks[s][0].0.curve].name.clone();
        } else {
            let m = fresh.next().expect("unbounded");
            names[s] = format!("{m}*");
            names[k] = m;
        }
    }
    let mut renumber = vec![usize::MAX; d.crossing_count()];
    let mut kept_crossings = Vec::new();
    for x in 0..d.crossing_count() {
        if d.strands(x).iter().all(|s| walk_of.contains_key(s)) {
            renumber[x] = kept_crossings.len();
            kept_crossings.push(x);
        } else if d.strands(x).iter().any(|s| walk_of.contains_key(s)) {
            return None;
        }
    }
    let mut b = DiagramBuilder::new();
    for (k, w) in walks.iter().enumerate() {
        b.add_curve(&names[k], w.iter().map(|&(s, _)| renumber[d.crossing_at(s)]).collect());
    }
    for k in 0..walks.len() {
        if k < sister[k] {
            b.pair(k, sister[k]);
        }
    }
    for &x in &kept_crossings {
        let [s1, s2] = d.strands(x);
        let (k1, i1, f1) = walk_of[&s1];
        let (_, _, f2) = walk_of[&s2];
        let dir = |f: bool| if f { Sign::Pos } else { Sign::Neg };
        let sign = d.sign(x).times(dir(f1)).times(dir(f2));
        b.add_crossing(&d.crossings()[x].name, Slot::new(k1, i1), sign);
    }
    b.declared_genus(d.declared_genus());
    Some(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::canonical::canonical_form;

    #[test]
    fn untouched_editor_rebuilds_the_diagram() {
        let d = crate::fixtures::load("s2xs1");
        let e = Editor::new(&d);
        assert_eq!(canonical_form(&e.build()), canonical_form(&d));
    }

    #[test]
    fn identity_walk_rebuilds_the_diagram() {
        let d = crate::fixtures::load("johansson_s3");
        let step = |s: Slot, f: bool| Some(if f { (d.next_index(s), true) } else { (d.prev_index(s), false) });
        let r = reconnect(&d, step, |_| true).unwrap();
        assert_eq!(canonical_form(&r), canonical_form(&d));
        assert_eq!(r.curves()[0].name, d.curves()[0].name);
    }
}
