//! Regions of the complement of the Dehn surface and the fillingness tests.
//!
//! The boundary of each region is tiled by face-sides (a face of the
//! diagram seen from one side of the surface), glued along quadrants (the
//! four wedges around a singular arc) and meeting at octants (the eight
//! corners around a triple point).

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::diagram::{triplet_of, triplets_unchecked, Diagram, Slot};
use crate::error::{Error, Result};
use crate::gclass::{sheet_assignment, GClassPartition, NeighbouringSide, Side};
use crate::surface::{fills_surface, rotation_index, surface_of, trace_unchecked, End, FaceSet};

/// A face seen from the side its normal points to (`positive`) or from the
/// other side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceSide {
    pub face: usize,
    pub positive: bool,
}

impl FaceSide {
    fn id(self) -> usize {
        2 * self.face + usize::from(!self.positive)
    }
}

/// A singular arc: arc `index` of the representative curve of a sister
/// pair, identified with arc `index` of its sister.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SingularArc {
    pub curve: usize,
    pub index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcSign {
    pub arc: SingularArc,
    /// +1 when the left side of the representative curve is upper.
    pub delta: i8,
    pub start_consistent: bool,
    pub finish_consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Quadrant {
    pub arc: usize,
    pub label: usize,
    pub sides: [FaceSide; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct Octant {
    pub triplet: usize,
    pub label: usize,
    /// (crossing, sector, positive side) of the three corners.
    pub corners: [(usize, usize, bool); 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionComplex {
    pub face_count: usize,
    pub arcs: Vec<SingularArc>,
    pub quadrants: Vec<Quadrant>,
    pub octants: Vec<Octant>,
    /// Region of every face-side, indexed by `2 * face + (negative side)`.
    pub face_side_region: Vec<usize>,
    pub quadrant_region: Vec<usize>,
    pub octant_region: Vec<usize>,
    pub region_count: usize,
}

impl RegionComplex {
    pub fn region_of_face_side(&self, fs: FaceSide) -> usize {
        self.face_side_region[fs.id()]
    }

    pub fn face_sides_in(&self, region: usize) -> usize {
        self.face_side_region.iter().filter(|&&r| r == region).count()
    }
}

/// Euler characteristic of the boundary of one region.
pub fn boundary_euler(rc: &RegionComplex, region: usize) -> i64 {
    let v = rc.octant_region.iter().filter(|&&r| r == region).count() as i64;
    let e = rc.quadrant_region.iter().filter(|&&r| r == region).count() as i64;
    let f = rc.face_side_region.iter().filter(|&&r| r == region).count() as i64;
    v - e + f
}

struct Local<'a> {
    d: &'a Diagram,
    faces: FaceSet,
    tags: GClassPartition,
    arcs: Vec<SingularArc>,
}

impl Local<'_> {
    fn sigma(&self, curve: usize) -> bool {
        self.tags.is_upper(NeighbouringSide {
            curve,
            side: Side::Left,
        })
    }

    fn lift_faces(&self, slot: Slot) -> (usize, usize) {
        let arc = self.faces.arcs.arc(slot);
        (self.faces.left_face(arc), self.faces.right_face(arc))
    }

    /// The four quadrants around a singular arc, each as the two face-sides
    /// bounding it: one along the representative curve and one along its
    /// sister. The table is read off the local model of two sheets crossing
    /// along the arc; it depends only on whether the left side of the
    /// representative curve lies in the upper class.
    fn quadrants(&self, j: usize) -> [[(usize, Side, bool); 2]; 4] {
        let a = self.arcs[j];
        let upper = self.sigma(a.curve);
        // Entries: (0 = representative, 1 = sister; side of that lift's arc;
        // positive face-side).
        let l = Side::Left;
        let r = Side::Right;
        let rep = |side, pos| (0usize, side, pos);
        let sis = |side, pos| (1usize, side, pos);
        
        if upper {
            [
                [rep(l, true), sis(r, true)],
                [rep(r, true), sis(r, false)],
                [rep(r, false), sis(l, false)],
                [rep(l, false), sis(l, true)],
            ]
        } else {
            [
                [rep(l, true), sis(l, false)],
                [rep(r, true), sis(l, true)],
                [rep(r, false), sis(r, true)],
                [rep(l, false), sis(r, false)],
            ]
        }
    }

    fn face_side(&self, j: usize, which: usize, side: Side, positive: bool) -> FaceSide {
        let a = self.arcs[j];
        let curve = if which == 0 { a.curve } else { self.d.sister(a.curve) };
        let (lf, rf) = self.lift_faces(Slot::new(curve, a.index));
        FaceSide {
            face: if side == Side::Left { lf } else { rf },
            positive,
        }
    }

    /// Corner of the face on `side` of the lift arc at one of its ends.
    fn corner(&self, j: usize, which: usize, side: Side, finish: bool) -> (usize, usize) {
        let a = self.arcs[j];
        let curve = if which == 0 { a.curve } else { self.d.sister(a.curve) };
        let start = Slot::new(curve, a.index);
        let end = if finish {
            End {
                slot: self.d.next_index(start),
                out: false,
            }
        } else {
            End {
                slot: start,
                out: true,
            }
        };
        let q = rotation_index(self.d, end);
        // The sector counter-clockwise from an outgoing end lies on the left
        // of the arc, from an incoming end on the right.
        let ccw_is_left = !finish;
        let sector = if (side == Side::Left) == ccw_is_left { q } else { (q + 3) % 4 };
        (self.d.crossing_at(end.slot), sector)
    }
}

struct OctantData {
    octants: Vec<Octant>,
    /// Quadrant-ends lying on a cycle that is not a proper octant.
    bad_ends: Vec<(usize, usize)>,
    degree_error: Option<String>,
}

fn build_octants(loc: &Local, triplet_of_crossing: &[usize]) -> OctantData {
    let d = loc.d;
    let nx = d.crossing_count();
    // Corner-side ids: 8 * crossing + 2 * sector + negative.
    let cs_id = |x: usize, q: usize, pos: bool| 8 * x + 2 * q + usize::from(!pos);
    // Quadrant-end ids: 8 * arc + 4 * end + quadrant.
    let qe_id = |j: usize, e: usize, m: usize| 8 * j + 4 * e + m;
    let mut cs_adj: Vec<Vec<usize>> = vec![Vec::new(); 8 * nx];
    let mut qe_adj: Vec<Vec<usize>> = vec![Vec::new(); 8 * loc.arcs.len()];
    for j in 0..loc.arcs.len() {
        let quads = loc.quadrants(j);
        for (m, q) in quads.iter().enumerate() {
            for e in 0..2 {
                for &(which, side, pos) in q {
                    let (x, sector) = loc.corner(j, which, side, e == 1);
                    let c = cs_id(x, sector, pos);
                    let qe = qe_id(j, e, m);
                    cs_adj[c].push(qe);
                    qe_adj[qe].push(c);
                }
            }
        }
    }
    let mut degree_error = None;
    for (c, adj) in cs_adj.iter().enumerate() {
        if adj.len() != 2 {
            degree_error = Some(format!(
                "corner {} of crossing {} meets {} quadrant ends",
                (c % 8) / 2,
                d.crossings()[c / 8].name,
                adj.len()
            ));
            break;
        }
    }
    let mut octants = Vec::new();
    let mut bad_ends = Vec::new();
    if degree_error.is_some() {
        return OctantData {
            octants,
            bad_ends,
            degree_error,
        };
    }
    let mut seen_cs = vec![false; 8 * nx];
    let mut per_triplet = vec![0usize; triplet_of_crossing.iter().copied().max().map_or(0, |m| m + 1)];
    for start in 0..8 * nx {
        if seen_cs[start] {
            continue;
        }
        let mut corners = Vec::new();
        let mut ends = Vec::new();
        let mut c = start;
        let mut via = usize::MAX;
        loop {
            seen_cs[c] = true;
            corners.push(c);
            let qe = if cs_adj[c][0] != via { cs_adj[c][0] } else { cs_adj[c][1] };
            ends.push(qe);
            let next = if qe_adj[qe][0] != c { qe_adj[qe][0] } else { qe_adj[qe][1] };
            via = qe;
            if next == start {
                break;
            }
            if seen_cs[next] {
                break;
            }
            c = next;
        }
        let xs: Vec<usize> = corners.iter().map(|&c| c / 8).collect();
        let proper = corners.len() == 3
            && triplet_of_crossing[xs[0]] == triplet_of_crossing[xs[1]]
            && triplet_of_crossing[xs[1]] == triplet_of_crossing[xs[2]]
            && xs[0] != xs[1]
            && xs[1] != xs[2]
            && xs[0] != xs[2];
        if !proper {
            bad_ends.extend(ends.iter().map(|&qe| (qe / 8, (qe / 4) % 2)));
            continue;
        }
        let t = triplet_of_crossing[xs[0]];
        let label = per_triplet[t];
        per_triplet[t] += 1;
        let mut cs: Vec<(usize, usize, bool)> = corners.iter().map(|&c| (c / 8, (c % 8) / 2, c % 2 == 0)).collect();
        cs.sort_unstable();
        octants.push(Octant {
            triplet: t,
            label,
            corners: [cs[0], cs[1], cs[2]],
        });
    }
    bad_ends.sort_unstable();
    bad_ends.dedup();
    OctantData {
        octants,
        bad_ends,
        degree_error,
    }
}

fn local(d: &Diagram) -> Result<Local<'_>> {
    let tags = sheet_assignment(d)?;
    let faces = trace_unchecked(d);
    let arcs = d
        .pair_representatives()
        .into_iter()
        .flat_map(|c| (0..d.len_of(c)).map(move |index| SingularArc { curve: c, index }))
        .collect();
    Ok(Local { d, faces, tags, arcs })
}

fn arc_name(d: &Diagram, a: SingularArc) -> String {
    format!("{}[{}]", d.curves()[a.curve].name, a.index)
}

/// Side data of every singular arc, checked at both of its ends.
pub fn arc_signs(d: &Diagram) -> Result<Vec<ArcSign>> {
    let loc = local(d)?;
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let oct = build_octants(&loc, &of);
    if let Some(msg) = oct.degree_error {
        return Err(Error::OctantInconsistent(msg));
    }
    let out: Vec<ArcSign> = loc
        .arcs
        .iter()
        .enumerate()
        .map(|(j, &arc)| ArcSign {
            arc,
            delta: if loc.sigma(arc.curve) { 1 } else { -1 },
            start_consistent: !oct.bad_ends.contains(&(j, 0)),
            finish_consistent: !oct.bad_ends.contains(&(j, 1)),
        })
        .collect();
    if let Some(bad) = out.iter().find(|a| !a.start_consistent || !a.finish_consistent) {
        return Err(Error::ArcInconsistent(arc_name(d, bad.arc)));
    }
    Ok(out)
}

pub fn region_complex(d: &Diagram) -> Result<RegionComplex> {
    arc_signs(d)?;
    let loc = local(d)?;
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let oct = build_octants(&loc, &of);
    if oct.octants.len() != 8 * ts.len() {
        return Err(Error::OctantInconsistent(format!(
            "{} octants for {} triple points",
            oct.octants.len(),
            ts.len()
        )));
    }
    let nf = loc.faces.len();
    let mut uf = UnionFind::<usize>::new(2 * nf);
    let mut quadrants = Vec::new();
    for j in 0..loc.arcs.len() {
        for (m, q) in loc.quadrants(j).iter().enumerate() {
            let sides = q.map(|(which, side, pos)| loc.face_side(j, which, side, pos));
            uf.union(sides[0].id(), sides[1].id());
            quadrants.push(Quadrant {
                arc: j,
                label: m,
                sides,
            });
        }
    }
    // Regions are numbered by their least face-side.
    let mut region_id: HashMap<usize, usize> = HashMap::new();
    let mut face_side_region = Vec::with_capacity(2 * nf);
    for id in 0..2 * nf {
        let root = uf.find_mut(id);
        let next = region_id.len();
        face_side_region.push(*region_id.entry(root).or_insert(next));
    }
    let quadrant_region = quadrants.iter().map(|q| face_side_region[q.sides[0].id()]).collect();
    let octant_region = oct
        .octants
        .iter()
        .map(|o| {
            let (x, sector, pos) = o.corners[0];
            let face = loc.faces.sector_face(d, x, sector);
            face_side_region[FaceSide { face, positive: pos }.id()]
        })
        .collect();
    Ok(RegionComplex {
        face_count: nf,
        arcs: loc.arcs.clone(),
        quadrants,
        octants: oct.octants,
        face_side_region,
        quadrant_region,
        octant_region,
        region_count: region_id.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FillingVerdict {
    pub realizable: bool,
    pub fills_surface: bool,
    pub region_count: usize,
    pub per_region_euler: Vec<i64>,
    pub is_filling: bool,
    pub counting_criterion: bool,
}

pub fn is_filling(d: &Diagram) -> Result<FillingVerdict> {
    d.ensure_valid()?;
    let partition = crate::gclass::gclass_partition(d)?;
    let realizable = partition.conflicts().is_empty();
    let fills = fills_surface(d);
    let mut verdict = FillingVerdict {
        realizable,
        fills_surface: fills,
        region_count: 0,
        per_region_euler: Vec::new(),
        is_filling: false,
        counting_criterion: false,
    };
    if !realizable || partition.class_count() != 2 {
        return Ok(verdict);
    }
    let rc = region_complex(d)?;
    verdict.region_count = rc.region_count;
    verdict.per_region_euler = (0..rc.region_count).map(|r| boundary_euler(&rc, r)).collect();
    if !fills {
        return Ok(verdict);
    }
    let chi = surface_of(d)?.euler_characteristic;
    let p = d.crossing_count() as i64 / 3;
    verdict.is_filling = verdict.per_region_euler.iter().all(|&e| e == 2);
    verdict.counting_criterion = rc.region_count as i64 == p + chi;
    if verdict.is_filling != verdict.counting_criterion {
        return Err(Error::Internal(format!(
            "region Euler characteristics and region count disagree ({} regions, p = {p}, chi = {chi})",
            rc.region_count
        )));
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Index2Verdict {
    Filling,
    Inconclusive,
}

/// Sufficient condition for fillingness on the sphere: a diagram group
/// without index-2 subgroups, i.e. whose abelianization has no Z/2 quotient.
/// Diagrams outside the hypotheses (not connected, not on S², not
/// realizable) are inconclusive.
pub fn filling_by_index2(d: &Diagram) -> Result<Index2Verdict> {
    d.ensure_valid()?;
    let on_sphere = d.is_connected() && surface_of(d).is_ok_and(|s| s.genus == 0);
    if !on_sphere || !crate::gclass::is_realizable(d)? {
        return Ok(Index2Verdict::Inconclusive);
    }
    let group = crate::algebra::diagram_group(d)?;
    Ok(if crate::algebra::z2_cover_exists(&group) {
        Index2Verdict::Inconclusive
    } else {
        Index2Verdict::Filling
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_counts_follow_triplets_and_euler_characteristic() {
        for (name, regions) in [("johansson_s3", 4), ("s333_torus", 1)] {
            let d = crate::fixtures::load(name);
            let v = is_filling(&d).unwrap();
            assert!(v.is_filling && v.counting_criterion, "{name}");
            assert_eq!(v.region_count, regions);
            assert!(v.per_region_euler.iter().all(|&e| e == 2));
        }
    }

    #[test]
    fn arc_signs_close_at_both_ends() {
        for name in ["johansson_s3", "s2xs1", "s333_torus"] {
            let d = crate::fixtures::load(name);
            for a in arc_signs(&d).unwrap() {
                assert!(a.start_consistent && a.finish_consistent);
                assert!(a.delta == 1 || a.delta == -1);
            }
        }
    }

    #[test]
    fn index2_verdicts() {
        let verdict = |n| filling_by_index2(&crate::fixtures::load(n)).unwrap();
        assert_eq!(verdict("johansson_s3"), Index2Verdict::Filling);
        assert_eq!(verdict("s2xs1"), Index2Verdict::Inconclusive);
        assert_eq!(verdict("s333_torus"), Index2Verdict::Inconclusive);
    }
}
