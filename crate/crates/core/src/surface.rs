//! Recognition of the ambient surface from the rotation system at the
//! crossings.
//!
//! Arc `(c, k)` runs along curve `c` from visit `k` to visit `k + 1`. Each
//! crossing has four ends; the cyclic counter-clockwise order of the ends is
//! fixed by the crossing sign. Faces are traced keeping the face on the left
//! of every dart, so a forward dart bounds the left face of its arc and a
//! backward dart the right face.

use serde::Serialize;

use crate::diagram::{Diagram, Sign, Slot};
use crate::error::{Error, Result};

/// One of the four half-edges at a crossing: the outgoing or incoming end
/// of the strand through `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub slot: Slot,
    pub out: bool,
}

/// An arc traversed in one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub arc: usize,
    pub forward: bool,
}

/// Counter-clockwise order of the ends at a crossing.
pub fn rotation(d: &Diagram, x: usize) -> [End; 4] {
    let [s1, s2] = d.strands(x);
    let e = |slot, out| End { slot, out };
    match d.sign(x) {
        Sign::Pos => [e(s1, false), e(s2, false), e(s1, true), e(s2, true)],
        Sign::Neg => [e(s1, false), e(s2, true), e(s1, true), e(s2, false)],
    }
}

/// Position of an end within the rotation of its crossing.
pub fn rotation_index(d: &Diagram, end: End) -> usize {
    let rot = rotation(d, d.crossing_at(end.slot));
    rot.iter().position(|&e| e == end).expect("end belongs to its crossing")
}

/// Numbering of the arcs of a diagram.
#[derive(Clone, Debug)]
pub struct ArcIndex {
    offsets: Vec<usize>,
    start: Vec<Slot>,
}

impl ArcIndex {
    pub fn new(d: &Diagram) -> Self {
        let mut offsets = Vec::with_capacity(d.curve_count());
        let mut start = Vec::new();
        for c in 0..d.curve_count() {
            offsets.push(start.len());
            for k in 0..d.len_of(c) {
                start.push(Slot::new(c, k));
            }
        }
        ArcIndex { offsets, start }
    }

    pub fn len(&self) -> usize {
        self.start.len()
    }

    pub fn is_empty(&self) -> bool {
        self.start.is_empty()
    }

    /// Arc leaving the visit `slot`.
    pub fn arc(&self, slot: Slot) -> usize {
        self.offsets[slot.curve] + slot.index
    }

    /// The visit at which an arc starts.
    pub fn start(&self, arc: usize) -> Slot {
        self.start[arc]
    }

    /// The visit at which an arc ends.
    pub fn finish(&self, d: &Diagram, arc: usize) -> Slot {
        d.next_index(self.start[arc])
    }

    /// The dart leaving a crossing through the given end.
    pub fn departing(&self, d: &Diagram, end: End) -> Dart {
        if end.out {
            Dart {
                arc: self.arc(end.slot),
                forward: true,
            }
        } else {
            Dart {
                arc: self.arc(d.prev_index(end.slot)),
                forward: false,
            }
        }
    }

    /// The end through which a dart arrives at its head crossing.
    pub fn arriving(&self, d: &Diagram, dart: Dart) -> End {
        if dart.forward {
            End {
                slot: self.finish(d, dart.arc),
                out: false,
            }
        } else {
            End {
                slot: self.start(dart.arc),
                out: true,
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FaceSet {
    pub arcs: ArcIndex,
    /// Faces as cyclic dart sequences.
    pub faces: Vec<Vec<Dart>>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn left_face(&self, arc: usize) -> usize {
        self.left[arc]
    }

    pub fn right_face(&self, arc: usize) -> usize {
        self.right[arc]
    }

    pub fn face_of(&self, dart: Dart) -> usize {
        if dart.forward {
            self.left[dart.arc]
        } else {
            self.right[dart.arc]
        }
    }

    /// Face occupying sector `q` of a crossing, between rotation ends `q`
    /// and `q + 1`.
    pub fn sector_face(&self, d: &Diagram, x: usize, q: usize) -> usize {
        let rot = rotation(d, x);
        self.face_of(self.arcs.departing(d, rot[q % 4]))
    }
}

pub fn trace_faces(d: &Diagram) -> Result<FaceSet> {
    d.ensure_valid()?;
    Ok(trace_unchecked(d))
}

/// Face tracing for diagrams whose crossings are all visited twice.
pub(crate) fn trace_unchecked(d: &Diagram) -> FaceSet {
    let arcs = ArcIndex::new(d);
    let n = arcs.len();
    let mut left = vec![usize::MAX; n];
    let mut right = vec![usize::MAX; n];
    let mut faces = Vec::new();
    for arc in 0..n {
        for forward in [true, false] {
            let used = if forward { left[arc] } else { right[arc] };
            if used != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Vec::new();
            let mut dart = Dart { arc, forward };
            loop {
                let slot = if dart.forward {
                    &mut left[dart.arc]
                } else {
                    &mut right[dart.arc]
                };
                if *slot != usize::MAX {
                    break;
                }
                *slot = id;
                face.push(dart);
                let end = arcs.arriving(d, dart);
                let rot = rotation(d, d.crossing_at(end.slot));
                let q = rot.iter().position(|&e| e == end).expect("end in rotation");
                dart = arcs.departing(d, rot[(q + 3) % 4]);
            }
            faces.push(face);
        }
    }
    FaceSet {
        arcs,
        faces,
        left,
        right,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceDescriptor {
    pub euler_characteristic: i64,
    pub genus: u32,
    pub face_count: usize,
    pub edge_count: usize,
    pub vertex_count: usize,
}

pub fn surface_of(d: &Diagram) -> Result<SurfaceDescriptor> {
    d.ensure_valid()?;
    if !d.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let faces = trace_unchecked(d);
    let v = d.crossing_count();
    let e = faces.arcs.len();
    let f = faces.len();
    let chi = v as i64 - e as i64 + f as i64;
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::NonSurface(chi));
    }
    let genus = ((2 - chi) / 2) as u32;
    if let Some(declared) = d.declared_genus() {
        if declared != genus {
            return Err(Error::GenusMismatch {
                declared,
                traced: genus,
            });
        }
    }
    Ok(SurfaceDescriptor {
        euler_characteristic: chi,
        genus,
        face_count: f,
        edge_count: e,
        vertex_count: v,
    })
}

/// Whether the complement of the curves in the traced surface is a union
/// of open disks.
pub fn fills_surface(d: &Diagram) -> bool {
    if !d.is_valid() || !d.is_connected() {
        return false;
    }
    if d.curves().iter().any(|c| c.visits.is_empty()) {
        return false;
    }
    let faces = trace_unchecked(d);
    let mut seen = vec![0u8; 2 * faces.arcs.len()];
    for face in &faces.faces {
        if face.is_empty() {
            return false;
        }
        for dart in face {
            seen[2 * dart.arc + usize::from(!dart.forward)] += 1;
        }
        // A single boundary cycle: following successors from the first dart
        // returns to it after exactly face.len() steps.
        let first = face[0];
        let mut cur = first;
        for step in 1..=face.len() {
            let end = faces.arcs.arriving(d, cur);
            let rot = rotation(d, d.crossing_at(end.slot));
            let q = rot.iter().position(|&e| e == end).expect("end in rotation");
            cur = faces.arcs.departing(d, rot[(q + 3) % 4]);
            if cur == first && step != face.len() {
                return false;
            }
        }
        if cur != first {
            return false;
        }
    }
    seen.iter().all(|&k| k == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramBuilder;

    /// Two sister curves crossing each other once: not riveted, but face
    /// tracing only needs each crossing visited twice.
    fn one_crossing(sign: Sign) -> Diagram {
        let mut b = DiagramBuilder::new();
        let a = b.add_curve("a", vec![0]);
        let c = b.add_curve("b", vec![0]);
        b.pair(a, c);
        b.add_crossing("x", Slot::new(0, 0), sign);
        b.build()
    }

    #[test]
    fn two_loops_through_one_point() {
        // Two closed curves meeting transversally once are a meridian and
        // a longitude of a torus: V=1, E=2, F=1.
        for sign in [Sign::Pos, Sign::Neg] {
            let d = one_crossing(sign);
            let f = trace_unchecked(&d);
            assert_eq!(f.len(), 1);
        }
    }

    #[test]
    fn every_dart_used_once() {
        let d = one_crossing(Sign::Pos);
        let f = trace_unchecked(&d);
        let total: usize = f.faces.iter().map(|x| x.len()).sum();
        assert_eq!(total, 2 * f.arcs.len());
    }
}
