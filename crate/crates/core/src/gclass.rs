//! Neighbouring sides of the diagram curves and their G-classes.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::diagram::{count_roots, Diagram, Sign, Slot};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NeighbouringSide {
    pub curve: usize,
    pub side: Side,
}

impl NeighbouringSide {
    pub fn id(self) -> usize {
        2 * self.curve + usize::from(self.side == Side::Right)
    }

    pub fn from_id(id: usize) -> Self {
        NeighbouringSide {
            curve: id / 2,
            side: if id.is_multiple_of(2) { Side::Left } else { Side::Right },
        }
    }

    pub fn opposite(self) -> Self {
        NeighbouringSide {
            curve: self.curve,
            side: self.side.opposite(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Upper,
    Lower,
    Unassigned,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GClassPartition {
    class_of: Vec<usize>,
    pub classes: Vec<Vec<NeighbouringSide>>,
    pub tags: Vec<Tag>,
}

impl GClassPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, s: NeighbouringSide) -> usize {
        self.class_of[s.id()]
    }

    pub fn tag(&self, s: NeighbouringSide) -> Tag {
        self.tags[self.class_of(s)]
    }

    pub fn is_upper(&self, s: NeighbouringSide) -> bool {
        self.tag(s) == Tag::Upper
    }

    /// Curves whose two sides share a class.
    pub fn conflicts(&self) -> Vec<usize> {
        (0..self.class_of.len() / 2)
            .filter(|&c| self.class_of[2 * c] == self.class_of[2 * c + 1])
            .collect()
    }
}

/// The side of the crossing curve met by the curve through `slot` just
/// before it reaches the crossing.
///
/// If the curve through `slot` is α and the other strand is β, the frame
/// (α, β) is positive exactly when β points to the left of α; then the part
/// of α before the crossing lies on the left of β. In terms of the stored
/// sign ε and the role of α:
///
/// ```text
///              α is strand 1   α is strand 2
///   ε = +1        Left(β)        Right(β)
///   ε = -1        Right(β)       Left(β)
/// ```
pub fn side_before(d: &Diagram, slot: Slot) -> NeighbouringSide {
    const TABLE: [[Side; 2]; 2] = [[Side::Left, Side::Right], [Side::Right, Side::Left]];
    let eps = usize::from(d.sign(d.crossing_at(slot)) == Sign::Neg);
    NeighbouringSide {
        curve: d.partner(slot).curve,
        side: TABLE[eps][d.strand_role(slot)],
    }
}

pub fn side_after(d: &Diagram, slot: Slot) -> NeighbouringSide {
    side_before(d, slot).opposite()
}

pub fn gclass_partition(d: &Diagram) -> Result<GClassPartition> {
    d.ensure_valid()?;
    Ok(partition_unchecked(d))
}

pub(crate) fn partition_unchecked(d: &Diagram) -> GClassPartition {
    let n = d.curve_count();
    let mut uf = UnionFind::<usize>::new(2 * n);
    for c in 0..n {
        let s = d.sister(c);
        uf.union(2 * c, 2 * s + 1);
    }
    for c in 0..n {
        for i in 0..d.len_of(c) {
            let u = Slot::new(c, i);
            let v = d.related(u);
            uf.union(side_before(d, u).id(), side_before(d, v).id());
            uf.union(side_after(d, u).id(), side_after(d, v).id());
        }
    }
    let mut class_of = vec![usize::MAX; 2 * n];
    let mut classes: Vec<Vec<NeighbouringSide>> = Vec::new();
    let mut root_class = std::collections::HashMap::new();
    for id in 0..2 * n {
        let root = uf.find_mut(id);
        let k = *root_class.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        class_of[id] = k;
        classes[k].push(NeighbouringSide::from_id(id));
    }
    let tags = vec![Tag::Unassigned; classes.len()];
    GClassPartition {
        class_of,
        classes,
        tags,
    }
}

pub fn is_realizable(d: &Diagram) -> Result<bool> {
    Ok(gclass_partition(d)?.conflicts().is_empty())
}

/// Connected components of the singular set: sister pairs joined whenever
/// they meet at a crossing.
pub fn singular_components(d: &Diagram) -> Result<usize> {
    d.ensure_valid()?;
    let n = d.curve_count();
    let mut uf = UnionFind::<usize>::new(n);
    for c in 0..n {
        uf.union(c, d.sister(c));
    }
    for x in 0..d.crossing_count() {
        let [a, b] = d.strands(x);
        uf.union(a.curve, b.curve);
    }
    Ok(count_roots(&mut uf, n))
}

/// Tags the two G-classes of a realizable diagram. The class containing
/// the left side of the curve with the smallest name is upper.
pub fn sheet_assignment(d: &Diagram) -> Result<GClassPartition> {
    let mut p = gclass_partition(d)?;
    if !p.conflicts().is_empty() {
        return Err(Error::NotRealizable);
    }
    if p.class_count() != 2 {
        return Err(Error::NotTwoClasses(p.class_count()));
    }
    let first = (0..d.curve_count())
        .min_by(|&a, &b| d.curves()[a].name.cmp(&d.curves()[b].name))
        .expect("non-empty diagram");
    let upper = p.class_of(NeighbouringSide {
        curve: first,
        side: Side::Left,
    });
    p.tags = (0..2)
        .map(|k| if k == upper { Tag::Upper } else { Tag::Lower })
        .collect();
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_two_opposite_classes() {
        for name in ["johansson_s3", "s2xs1", "s333_torus"] {
            let d = crate::fixtures::load(name);
            let p = sheet_assignment(&d).unwrap();
            assert_eq!(p.class_count(), 2);
            assert!(p.conflicts().is_empty());
            for c in 0..d.curve_count() {
                let left = NeighbouringSide { curve: c, side: Side::Left };
                assert_ne!(p.class_of(left), p.class_of(left.opposite()), "{name}");
                assert_ne!(p.tag(left), p.tag(left.opposite()));
            }
            assert_eq!(p.class_count(), 2 * singular_components(&d).unwrap());
        }
    }

    #[test]
    fn upper_class_holds_left_of_least_curve() {
        let d = crate::fixtures::load("s2xs1");
        let first = (0..d.curve_count()).min_by_key(|&c| d.curves()[c].name.clone()).unwrap();
        let p = sheet_assignment(&d).unwrap();
        assert!(p.is_upper(NeighbouringSide { curve: first, side: Side::Left }));
    }

    #[test]
    fn side_ids_round_trip() {
        for id in 0..8 {
            assert_eq!(NeighbouringSide::from_id(id).id(), id);
        }
    }
}
