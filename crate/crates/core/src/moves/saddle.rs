//! Saddle moves.
//!
//! Two arcs `a`, `b` bounding a common face, together with their sister
//! arcs bounding a common face, are joined by a band in each face: each arc
//! is cut and the loose ends are reconnected across the band. No crossings
//! are created or destroyed. The band joins the incoming end of `a` to the
//! outgoing end of `b` when the face boundary runs along both arcs in the
//! same direction, and to the incoming end of `b` otherwise.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::rewrite::reconnect;
use super::ArcSide;
use crate::diagram::{Diagram, Slot};
use crate::gclass::{partition_unchecked, NeighbouringSide, Side};
use crate::surface::{trace_unchecked, Dart};

/// Both sides of both arcs, in the face `a`, `b` share and in the face
/// their sister arcs share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SaddleSite {
    pub a: ArcSide,
    pub b: ArcSide,
    pub sister_a: Side,
    pub sister_b: Side,
}

fn sister_arc(d: &Diagram, s: Slot) -> Slot {
    d.related(s)
}

fn dart_of(faces: &crate::surface::FaceSet, s: ArcSide) -> Dart {
    Dart {
        arc: faces.arcs.arc(s.arc),
        forward: s.side == Side::Left,
    }
}

/// Sites whose four neighbouring sides lie in one G-class. Arcs paired with
/// themselves or with their own sister arc are excluded, and each saddle
/// is listed once.
pub fn saddle_sites(d: &Diagram) -> Vec<SaddleSite> {
    let faces = trace_unchecked(d);
    let classes = partition_unchecked(d);
    let class = |s: Slot, side: Side| classes.class_of(NeighbouringSide { curve: s.curve, side });
    let mut sides_of_face: Vec<BTreeSet<ArcSide>> = vec![BTreeSet::new(); faces.len()];
    for (f, face) in faces.faces.iter().enumerate() {
        for dart in face {
            sides_of_face[f].insert(ArcSide {
                arc: faces.arcs.start(dart.arc),
                side: if dart.forward { Side::Left } else { Side::Right },
            });
        }
    }
    let face_of = |s: ArcSide| faces.face_of(dart_of(&faces, s));
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for sides in &sides_of_face {
        for &a in sides {
            for &b in sides {
                if a.arc >= b.arc || sister_arc(d, a.arc) == b.arc {
                    continue;
                }
                let k = class(a.arc, a.side);
                if class(b.arc, b.side) != k {
                    continue;
                }
                let (ta, tb) = (sister_arc(d, a.arc), sister_arc(d, b.arc));
                for sa in [Side::Left, Side::Right] {
                    for sb in [Side::Left, Side::Right] {
                        if class(ta, sa) != k || class(tb, sb) != k {
                            continue;
                        }
                        let (pa, pb) = (ArcSide { arc: ta, side: sa }, ArcSide { arc: tb, side: sb });
                        if face_of(pa) != face_of(pb) {
                            continue;
                        }
                        let site = SaddleSite {
                            a,
                            b,
                            sister_a: sa,
                            sister_b: sb,
                        };
                        let mirror = if pa < pb {
                            SaddleSite {
                                a: pa,
                                b: pb,
                                sister_a: a.side,
                                sister_b: b.side,
                            }
                        } else {
                            SaddleSite {
                                a: pb,
                                b: pa,
                                sister_a: b.side,
                                sister_b: a.side,
                            }
                        };
                        if seen.insert(site.min(mirror)) {
                            out.push(site);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Loose end of a cut arc: the end still attached to its start visit
/// (`true`) or to its finish visit (`false`).
type LooseEnd = (Slot, bool);

/// Applies a saddle move. Returns `None` if the site is malformed or the
/// reconnected curves cannot be paired into sisters.
pub fn saddle(d: &Diagram, site: SaddleSite) -> Option<Diagram> {
    let n = d.curve_count();
    let ok = |s: Slot| s.curve < n && s.index < d.len_of(s.curve);
    if !ok(site.a.arc) || !ok(site.b.arc) || site.a.arc == site.b.arc {
        return None;
    }
    if sister_arc(d, site.a.arc) == site.b.arc {
        return None;
    }
    let faces = trace_unchecked(d);
    let ta = ArcSide {
        arc: sister_arc(d, site.a.arc),
        side: site.sister_a,
    };
    let tb = ArcSide {
        arc: sister_arc(d, site.b.arc),
        side: site.sister_b,
    };
    let face_of = |s: ArcSide| faces.face_of(dart_of(&faces, s));
    if face_of(site.a) != face_of(site.b) || face_of(ta) != face_of(tb) {
        return None;
    }
    // Loose-end pairing, one band per face.
    let mut joined: HashMap<LooseEnd, LooseEnd> = HashMap::new();
    for (p, q) in [(site.a, site.b), (ta, tb)] {
        let same = p.side == q.side;
        let pairs = if same {
            [((p.arc, true), (q.arc, false)), ((q.arc, true), (p.arc, false))]
        } else {
            [((p.arc, true), (q.arc, true)), ((p.arc, false), (q.arc, false))]
        };
        for (x, y) in pairs {
            joined.insert(x, y);
            joined.insert(y, x);
        }
    }
    // Walk the reconnected curves. A walker stands on a visit with a
    // direction; leaving forward from visit i crosses arc i, leaving
    // backward crosses arc i - 1.
    let step = |s: Slot, forward: bool| -> Option<(Slot, bool)> {
        let arc = if forward { s } else { d.prev_index(s) };
        let end: LooseEnd = (arc, forward);
        Some(match joined.get(&end) {
            None => {
                if forward {
                    (d.next_index(s), true)
                } else {
                    (d.prev_index(s), false)
                }
            }
            // Arriving at the start-side end of an arc means walking
            // backward into its start visit; at the finish-side end,
            // forward into its finish visit.
            Some(&(arc2, true)) => (arc2, false),
            Some(&(arc2, false)) => (d.next_index(arc2), true),
        })
    };
    // A band may change the surface, so any genus declaration is dropped.
    reconnect(d, step, |_| true).map(|r| r.with_declared_genus(None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saddles_keep_crossings_and_validity() {
        let d = crate::fixtures::load("s2xs1");
        let sites = saddle_sites(&d);
        assert_eq!(sites.len(), 2);
        for s in sites {
            let r = saddle(&d, s).unwrap();
            assert!(r.is_valid());
            assert_eq!(r.crossing_count(), d.crossing_count());
            assert_eq!(r.declared_genus(), None);
        }
    }

    #[test]
    fn malformed_sites_are_rejected() {
        let d = crate::fixtures::load("s2xs1");
        let a = ArcSide { arc: Slot::new(0, 0), side: Side::Left };
        let site = SaddleSite { a, b: a, sister_a: Side::Left, sister_b: Side::Left };
        assert!(saddle(&d, site).is_none());
    }
}
