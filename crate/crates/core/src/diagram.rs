//! Combinatorial model of an abstract Johansson diagram.
//!
//! A diagram is a finite set of oriented closed curves on an oriented
//! surface, given as cyclic words of crossing visits, together with a
//! fixed-point-free involution `sister` on the curves. Visit `i` of a curve
//! is identified with visit `i` of its sister; a curve and its sister always
//! have the same number of visits.
//!
//! Every crossing is visited exactly twice. The first visit in textual order
//! (curve order, then visit order) is *strand 1*, the second *strand 2*, and
//! the crossing sign records whether the tangent frame (strand 1, strand 2)
//! is positively oriented on the surface.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};

/// A visit slot: the `index`-th visit of curve `curve`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub curve: usize,
    pub index: usize,
}

impl Slot {
    pub fn new(curve: usize, index: usize) -> Self {
        Slot { curve, index }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_bool(positive: bool) -> Sign {
        if positive {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_bool(self == other)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    /// Crossing indices in traversal order; index 0 is the basepoint.
    pub visits: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub name: String,
    /// Sign of the frame (strand 1, strand 2).
    pub sign: Sign,
}

/// Three pairwise related crossings, the preimage of one triple point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triplet {
    pub crossings: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub element: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: &'static str, element: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            element: element.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} ({}): {}", v.rule, v.element, v.message))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Debug)]
pub struct Diagram {
    curves: Vec<Curve>,
    sister: Vec<Option<usize>>,
    crossings: Vec<Crossing>,
    declared_genus: Option<u32>,
    /// Visit slots of each crossing in textual order.
    occurrences: Vec<Vec<Slot>>,
    report: OnceLock<ValidationReport>,
}

impl Clone for Diagram {
    fn clone(&self) -> Self {
        Diagram {
            curves: self.curves.clone(),
            sister: self.sister.clone(),
            crossings: self.crossings.clone(),
            declared_genus: self.declared_genus,
            occurrences: self.occurrences.clone(),
            report: self.report.clone(),
        }
    }
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.curves == other.curves
            && self.sister == other.sister
            && self.crossings == other.crossings
            && self.declared_genus == other.declared_genus
    }
}

impl Eq for Diagram {}

impl Diagram {
    /// Assembles a diagram without validating it. Crossing indices in the
    /// curve words must be in range.
    pub fn from_parts(
        curves: Vec<Curve>,
        sister: Vec<Option<usize>>,
        crossings: Vec<Crossing>,
        declared_genus: Option<u32>,
    ) -> Diagram {
        assert_eq!(curves.len(), sister.len(), "one sister entry per curve");
        let mut occurrences = vec![Vec::new(); crossings.len()];
        for (c, curve) in curves.iter().enumerate() {
            for (i, &x) in curve.visits.iter().enumerate() {
                assert!(x < crossings.len(), "crossing index out of range");
                occurrences[x].push(Slot::new(c, i));
            }
        }
        Diagram {
            curves,
            sister,
            crossings,
            declared_genus,
            occurrences,
            report: OnceLock::new(),
        }
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn declared_genus(&self) -> Option<u32> {
        self.declared_genus
    }

    pub fn with_declared_genus(&self, genus: Option<u32>) -> Diagram {
        Diagram::from_parts(self.curves.clone(), self.sister.clone(), self.crossings.clone(), genus)
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn visit_count(&self) -> usize {
        self.curves.iter().map(|c| c.visits.len()).sum()
    }

    pub fn curve_index(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    pub fn crossing_index(&self, name: &str) -> Option<usize> {
        self.crossings.iter().position(|c| c.name == name)
    }

    /// Sister of a curve. Panics on curves without a sister, which never
    /// pass validation.
    pub fn sister(&self, curve: usize) -> usize {
        self.sister[curve].expect("curve without sister")
    }

    pub fn sister_of(&self, curve: usize) -> Option<usize> {
        self.sister[curve]
    }

    /// Representative curve of each sister pair (the smaller index).
    pub fn pair_representatives(&self) -> Vec<usize> {
        (0..self.curves.len()).filter(|&c| self.sister[c].is_some_and(|s| c < s)).collect()
    }

    pub fn len_of(&self, curve: usize) -> usize {
        self.curves[curve].visits.len()
    }

    pub fn crossing_at(&self, slot: Slot) -> usize {
        self.curves[slot.curve].visits[slot.index]
    }

    /// Strand 1 and strand 2 of a crossing. Valid diagrams only.
    pub fn strands(&self, crossing: usize) -> [Slot; 2] {
        let occ = &self.occurrences[crossing];
        [occ[0], occ[1]]
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.crossings[crossing].sign
    }

    /// Which strand (0 or 1) of its crossing a slot is.
    pub fn strand_role(&self, slot: Slot) -> usize {
        let s = self.strands(self.crossing_at(slot));
        if s[0] == slot {
            0
        } else {
            1
        }
    }

    /// The other visit at the same crossing.
    pub fn partner(&self, slot: Slot) -> Slot {
        let s = self.strands(self.crossing_at(slot));
        if s[0] == slot {
            s[1]
        } else {
            s[0]
        }
    }

    /// Orientation sign of the frame (this strand, other strand).
    pub fn frame_sign(&self, slot: Slot) -> Sign {
        let sign = self.sign(self.crossing_at(slot));
        if self.strand_role(slot) == 0 {
            sign
        } else {
            sign.flip()
        }
    }

    /// The visit identified with `slot` by the diagram.
    pub fn related(&self, slot: Slot) -> Slot {
        Slot::new(self.sister(slot.curve), slot.index)
    }

    pub fn next_index(&self, slot: Slot) -> Slot {
        Slot::new(slot.curve, (slot.index + 1) % self.len_of(slot.curve))
    }

    pub fn prev_index(&self, slot: Slot) -> Slot {
        let n = self.len_of(slot.curve);
        Slot::new(slot.curve, (slot.index + n - 1) % n)
    }

    pub fn validation(&self) -> &ValidationReport {
        self.report.get_or_init(|| validate_structure(self))
    }

    pub fn is_valid(&self) -> bool {
        self.validation().is_ok()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validation();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid(report.clone()))
        }
    }

    /// Connected components of the curve graph on the surface (curves
    /// joined whenever they share a crossing).
    pub fn curve_components(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.curves.len());
        for occ in &self.occurrences {
            for w in occ.windows(2) {
                uf.union(w[0].curve, w[1].curve);
            }
        }
        count_roots(&mut uf, self.curves.len())
    }

    pub fn is_connected(&self) -> bool {
        !self.curves.is_empty() && self.curve_components() == 1
    }

    /// Same diagram with every crossing sign negated (the mirror surface).
    pub fn mirrored(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                name: c.name.clone(),
                sign: c.sign.flip(),
            })
            .collect();
        Diagram::from_parts(self.curves.clone(), self.sister.clone(), crossings, self.declared_genus)
    }

    /// Rotates every curve by `shift` visits, moving sisters together.
    pub fn rotated(&self, shift: usize) -> Diagram {
        let mut b = DiagramBuilder::new();
        let mut new_slot = HashMap::new();
        for (c, curve) in self.curves.iter().enumerate() {
            let n = curve.visits.len();
            let visits: Vec<usize> = (0..n).map(|i| curve.visits[(i + shift) % n]).collect();
            for i in 0..n {
                new_slot.insert(Slot::new(c, (i + shift) % n), Slot::new(c, i));
            }
            b.add_curve(&curve.name, visits);
        }
        for c in self.pair_representatives() {
            b.pair(c, self.sister(c));
        }
        for (x, cr) in self.crossings.iter().enumerate() {
            let s = self.strands(x);
            b.add_crossing(&cr.name, new_slot[&s[0]], cr.sign);
        }
        b.declared_genus(self.declared_genus);
        b.build()
    }
}

pub(crate) fn count_roots(uf: &mut UnionFind<usize>, n: usize) -> usize {
    let mut roots: Vec<usize> = (0..n).map(|i| uf.find_mut(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Incremental construction of a diagram where crossing signs are given
/// relative to an explicitly chosen strand. `build` converts them to the
/// textual strand order.
#[derive(Default)]
pub struct DiagramBuilder {
    curves: Vec<Curve>,
    sister: Vec<Option<usize>>,
    crossings: Vec<(String, Option<(Slot, Sign)>)>,
    genus: Option<u32>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_curve(&mut self, name: &str, visits: Vec<usize>) -> usize {
        self.curves.push(Curve {
            name: name.to_string(),
            visits,
        });
        self.sister.push(None);
        self.curves.len() - 1
    }

    pub fn pair(&mut self, a: usize, b: usize) {
        self.sister[a] = Some(b);
        self.sister[b] = Some(a);
    }

    /// Declares a crossing. `sign` is the sign of the frame whose first
    /// vector is the tangent at `first`.
    pub fn add_crossing(&mut self, name: &str, first: Slot, sign: Sign) -> usize {
        self.crossings.push((name.to_string(), Some((first, sign))));
        self.crossings.len() - 1
    }

    pub fn declared_genus(&mut self, genus: Option<u32>) {
        self.genus = genus;
    }

    pub fn build(self) -> Diagram {
        let mut occurrences: Vec<Vec<Slot>> = vec![Vec::new(); self.crossings.len()];
        for (c, curve) in self.curves.iter().enumerate() {
            for (i, &x) in curve.visits.iter().enumerate() {
                occurrences[x].push(Slot::new(c, i));
            }
        }
        let crossings = self
            .crossings
            .into_iter()
            .enumerate()
            .map(|(x, (name, decl))| {
                let (first, sign) = decl.expect("crossing without sign");
                let sign = match occurrences[x].first() {
                    Some(&s) if s != first => sign.flip(),
                    _ => sign,
                };
                Crossing { name, sign }
            })
            .collect();
        Diagram::from_parts(self.curves, self.sister, crossings, self.genus)
    }
}

fn validate_structure(d: &Diagram) -> ValidationReport {
    let mut report = ValidationReport::default();
    if d.curves.is_empty() {
        report.push("empty-diagram", "diagram", "a diagram needs at least one sister pair");
        return report;
    }

    let mut names = HashMap::new();
    for curve in &d.curves {
        if names.insert(curve.name.as_str(), ()).is_some() {
            report.push("duplicate-name", &curve.name, "curve name declared twice");
        }
    }
    let mut xnames = HashMap::new();
    for cr in &d.crossings {
        if xnames.insert(cr.name.as_str(), ()).is_some() {
            report.push("duplicate-name", &cr.name, "crossing name declared twice");
        }
    }

    for (c, curve) in d.curves.iter().enumerate() {
        if curve.visits.is_empty() {
            report.push("empty-curve", &curve.name, "curve has no crossings");
        }
        match d.sister[c] {
            None => report.push("sister-missing", &curve.name, "curve has no sister"),
            Some(s) if s == c => {
                report.push("self-sister", &curve.name, "a curve cannot be its own sister")
            }
            Some(s) if s >= d.curves.len() || d.sister[s] != Some(c) => {
                report.push("sister-involution", &curve.name, "sister map is not an involution")
            }
            Some(s) => {
                if c < s && curve.visits.len() != d.curves[s].visits.len() {
                    report.push(
                        "sister-length",
                        format!("{}/{}", curve.name, d.curves[s].name),
                        format!(
                            "sister curves have {} and {} visits",
                            curve.visits.len(),
                            d.curves[s].visits.len()
                        ),
                    );
                }
            }
        }
    }

    for (x, occ) in d.occurrences.iter().enumerate() {
        if occ.len() != 2 {
            report.push(
                "crossing-multiplicity",
                &d.crossings[x].name,
                format!("crossing is visited {} times, expected 2", occ.len()),
            );
        }
    }

    if !report.is_ok() {
        return report;
    }

    for x in 0..d.crossings.len() {
        if let Err(msg) = riveted_at(d, x) {
            report.push("riveted", &d.crossings[x].name, msg);
        }
    }
    report
}

/// The two crossings related to `x`, if the triplet condition holds there.
fn riveted_at(d: &Diagram, x: usize) -> std::result::Result<[usize; 2], String> {
    let [u, v] = d.strands(x);
    let u1 = d.related(u);
    let v1 = d.related(v);
    let p1 = d.crossing_at(u1);
    let p2 = d.crossing_at(v1);
    if p1 == x || p2 == x {
        return Err("double point is related to itself".into());
    }
    if p1 == p2 {
        return Err("both related points coincide".into());
    }
    let w1 = d.partner(u1);
    let w2 = d.partner(v1);
    if d.related(w1) != w2 {
        return Err(format!(
            "related points {} and {} are not related to each other",
            d.crossings[p1].name, d.crossings[p2].name
        ));
    }
    Ok([p1, p2])
}

/// Validation is total: structural problems and triplet closure are all
/// reported, never raised.
pub fn validate(d: &Diagram) -> ValidationReport {
    d.validation().clone()
}

/// Partition of the crossings into triplets, ordered by least member.
pub fn triplets(d: &Diagram) -> Result<Vec<Triplet>> {
    d.ensure_valid()?;
    Ok(triplets_unchecked(d))
}

pub(crate) fn triplets_unchecked(d: &Diagram) -> Vec<Triplet> {
    let mut seen = vec![false; d.crossing_count()];
    let mut out = Vec::new();
    for x in 0..d.crossing_count() {
        if seen[x] {
            continue;
        }
        let [a, b] = riveted_at(d, x).expect("validated");
        let mut t = [x, a, b];
        t.sort_unstable();
        for &y in &t {
            seen[y] = true;
        }
        out.push(Triplet { crossings: t });
    }
    out
}

/// Triplet index of every crossing.
pub(crate) fn triplet_of(d: &Diagram, ts: &[Triplet]) -> Vec<usize> {
    let mut of = vec![usize::MAX; d.crossing_count()];
    for (t, tr) in ts.iter().enumerate() {
        for &x in &tr.crossings {
            of[x] = t;
        }
    }
    of
}

/// Swaps the roles of every curve and its sister: curve `c` takes the word
/// of its sister. Index alignment is preserved.
pub fn sister_swapped(d: &Diagram) -> Diagram {
    let mut b = DiagramBuilder::new();
    let n = d.curve_count();
    let mut slot_map = HashMap::new();
    for c in 0..n {
        let s = d.sister(c);
        for i in 0..d.len_of(s) {
            slot_map.insert(Slot::new(s, i), Slot::new(c, i));
        }
        b.add_curve(&d.curves[c].name, d.curves[s].visits.clone());
    }
    for c in d.pair_representatives() {
        b.pair(c, d.sister(c));
    }
    for (x, cr) in d.crossings.iter().enumerate() {
        let s = d.strands(x);
        b.add_crossing(&cr.name, slot_map[&s[0]], cr.sign);
    }
    b.declared_genus(d.declared_genus);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(words: &[(&str, &[usize])], pairs: &[(usize, usize)], signs: &[Sign]) -> Diagram {
        let curves = words
            .iter()
            .map(|(n, w)| Curve {
                name: n.to_string(),
                visits: w.to_vec(),
            })
            .collect();
        let mut sister = vec![None; words.len()];
        for &(a, b) in pairs {
            sister[a] = Some(b);
            sister[b] = Some(a);
        }
        let crossings = signs
            .iter()
            .enumerate()
            .map(|(i, &s)| Crossing {
                name: format!("x{i}"),
                sign: s,
            })
            .collect();
        Diagram::from_parts(curves, sister, crossings, None)
    }

    #[test]
    fn sister_length_is_reported() {
        let d = raw(
            &[("a", &[0, 1]), ("b", &[0]), ("c", &[1])],
            &[(0, 1)],
            &[Sign::Pos, Sign::Pos],
        );
        let r = validate(&d);
        assert!(r.has_rule("sister-length"));
        assert!(r.has_rule("sister-missing"));
    }

    #[test]
    fn empty_curve_and_empty_diagram() {
        let d = raw(&[], &[], &[]);
        assert!(validate(&d).has_rule("empty-diagram"));
        let d = raw(&[("a", &[]), ("b", &[])], &[(0, 1)], &[]);
        assert!(validate(&d).has_rule("empty-curve"));
    }

    #[test]
    fn crossing_multiplicity() {
        let d = raw(&[("a", &[0, 0]), ("b", &[0, 1])], &[(0, 1)], &[Sign::Pos, Sign::Pos]);
        assert!(validate(&d).has_rule("crossing-multiplicity"));
    }

    #[test]
    fn self_related_crossing_is_not_riveted() {
        // Two sister pairs (a, a*) and (b, b*). Crossing x0 joins a[0] with
        // a*[0]: its related points are x0 itself.
        let d = raw(
            &[("a", &[0]), ("as", &[0]), ("b", &[1]), ("bs", &[1])],
            &[(0, 1), (2, 3)],
            &[Sign::Pos, Sign::Pos],
        );
        let r = validate(&d);
        assert!(r.has_rule("riveted"), "{r}");
    }

    #[test]
    fn builder_normalizes_strand_order() {
        let mut b = DiagramBuilder::new();
        let a = b.add_curve("a", vec![0]);
        let c = b.add_curve("c", vec![0]);
        b.pair(a, c);
        // Sign given relative to the second textual strand.
        b.add_crossing("x", Slot::new(1, 0), Sign::Pos);
        let d = b.build();
        assert_eq!(d.sign(0), Sign::Neg);
        assert_eq!(d.frame_sign(Slot::new(1, 0)), Sign::Pos);
    }
}
