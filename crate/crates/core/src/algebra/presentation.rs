//! Finitely presented groups attached to a diagram.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::matrix::{AbelianInvariants, IntMatrix};
use crate::diagram::{triplet_of, triplets_unchecked, Diagram, Slot};
use crate::error::{Error, Result};
use crate::surface::{fills_surface, trace_unchecked};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

/// Free reduction of a word.
pub fn reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
fn cyclic_reduce(word: &[Letter]) -> Word {
    let mut w = reduce(word);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators.iter().map(|r| reduce(r)).collect();
        GroupPresentation { generators, relators }
    }

    /// Relator exponent-sum matrix: one row per relator, one column per
    /// generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                let v = m.get(i, l.generator) + if l.inverse { -1 } else { 1 };
                m.set(i, l.generator, v);
            }
        }
        m
    }

    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = w
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.generators[l.generator])
                } else {
                    self.generators[l.generator].clone()
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Tietze simplification: repeatedly uses a relator in which some
    /// generator occurs exactly once to eliminate that generator. The
    /// result presents an isomorphic group.
    pub fn simplified(&self) -> GroupPresentation {
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<Word> = self.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        loop {
            let mut found = None;
            'search: for (ri, r) in rels.iter().enumerate() {
                let mut counts = std::collections::BTreeMap::new();
                for l in r {
                    *counts.entry(l.generator).or_insert(0usize) += 1;
                }
                for (&g, &c) in &counts {
                    if c == 1 {
                        found = Some((ri, g));
                        break 'search;
                    }
                }
            }
            let Some((ri, g)) = found else { break };
            let r = rels.remove(ri);
            let k = r.iter().position(|l| l.generator == g).expect("occurs once");
            // r = u g^e v = 1, so g^e = u^-1 v^-1, g = (v u)^-e.
            let mut vu: Word = r[k + 1..].to_vec();
            vu.extend_from_slice(&r[..k]);
            let replacement: Word = if r[k].inverse {
                vu
            } else {
                vu.iter().rev().map(|l| l.inv()).collect()
            };
            let inv_replacement: Word = replacement.iter().rev().map(|l| l.inv()).collect();
            for other in rels.iter_mut() {
                let mut w = Vec::with_capacity(other.len());
                for &l in other.iter() {
                    if l.generator == g {
                        w.extend_from_slice(if l.inverse { &inv_replacement } else { &replacement });
                    } else {
                        w.push(l);
                    }
                }
                *other = cyclic_reduce(&w);
            }
            rels.retain(|r| !r.is_empty());
            gens[g] = None;
        }
        let mut renumber = vec![usize::MAX; gens.len()];
        let mut names = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if let Some(name) = g {
                renumber[i] = names.len();
                names.push(name.clone());
            }
        }
        let mut relators: Vec<Word> = rels
            .iter()
            .map(|r| r.iter().map(|l| Letter::new(renumber[l.generator], l.inverse)).collect())
            .collect();
        relators.sort();
        relators.dedup();
        GroupPresentation {
            generators: names,
            relators,
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", self.word_string(r))?;
        }
        Ok(())
    }
}

/// One generator per curve; relators `α·τα` and, for every triplet, the
/// product of the three jumps around the triple point.
///
/// A generator is the loop that leaves the basepoint along the surface,
/// jumps from a point of α to the related point of τα, and returns. Around
/// a triplet {P, P1, P2} with P on α and β: jump along α from P to P1,
/// along the curve γ crossing τα at P1 to P2 (where τγ crosses τβ), and
/// along τβ back to P.
pub fn diagram_group(d: &Diagram) -> Result<GroupPresentation> {
    d.ensure_valid()?;
    let generators = d.curves().iter().map(|c| c.name.clone()).collect();
    let mut relators = Vec::new();
    for c in d.pair_representatives() {
        relators.push(vec![Letter::new(c, false), Letter::new(d.sister(c), false)]);
    }
    for t in triplets_unchecked(d) {
        let p = t.crossings[0];
        let [u, v] = d.strands(p);
        let p1_slot = d.related(u);
        let gamma = d.partner(p1_slot);
        let tau_beta = d.related(v);
        relators.push(vec![
            Letter::new(u.curve, false),
            Letter::new(gamma.curve, false),
            Letter::new(tau_beta.curve, false),
        ]);
    }
    Ok(GroupPresentation::new(generators, relators))
}

/// Cellular presentation of the fundamental group of the Dehn surface:
/// triple points are vertices, singular arcs are edges and the faces of
/// the diagram are 2-cells. Requires the diagram to fill its surface; valid
/// on surfaces of any genus.
pub fn surface_group(d: &Diagram) -> Result<GroupPresentation> {
    d.ensure_valid()?;
    if !fills_surface(d) {
        return Err(Error::NotFilling("the diagram does not fill its surface".into()));
    }
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let reps = d.pair_representatives();
    // Singular arcs, with the triplets at their ends.
    let mut arc_id = vec![usize::MAX; d.curve_count()];
    let mut ends = Vec::new();
    let mut names = Vec::new();
    for &c in &reps {
        arc_id[c] = ends.len();
        arc_id[d.sister(c)] = ends.len();
        for k in 0..d.len_of(c) {
            let s = Slot::new(c, k);
            ends.push((of[d.crossing_at(s)], of[d.crossing_at(d.next_index(s))]));
            names.push(format!("{}[{}]", d.curves()[c].name, k));
        }
    }
    // Spanning forest of the singular graph; tree edges become trivial.
    let mut uf = UnionFind::<usize>::new(ts.len());
    let mut in_tree = vec![false; ends.len()];
    for (e, &(a, b)) in ends.iter().enumerate() {
        if uf.union(a, b) {
            in_tree[e] = true;
        }
    }
    let mut gen_of = vec![usize::MAX; ends.len()];
    let mut generators = Vec::new();
    for e in 0..ends.len() {
        if !in_tree[e] {
            gen_of[e] = generators.len();
            generators.push(names[e].clone());
        }
    }
    let faces = trace_unchecked(d);
    let mut relators = Vec::new();
    for face in &faces.faces {
        let mut w = Vec::new();
        for dart in face {
            let s = faces.arcs.start(dart.arc);
            let e = arc_id[s.curve] + s.index;
            if !in_tree[e] {
                w.push(Letter::new(gen_of[e], !dart.forward));
            }
        }
        relators.push(w);
    }
    Ok(GroupPresentation::new(generators, relators))
}

/// Presentation of the fundamental group of the manifold: the diagram
/// group on the sphere, the cellular presentation on other surfaces.
pub fn manifold_group(d: &Diagram) -> Result<GroupPresentation> {
    if crate::surface::surface_of(d)?.genus == 0 {
        diagram_group(d)
    } else {
        surface_group(d)
    }
}

pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    AbelianInvariants::from_relation_matrix(&p.relation_matrix())
}

/// Whether the group surjects onto the group of order two.
pub fn z2_cover_exists(p: &GroupPresentation) -> bool {
    let inv = abelianization(p);
    let two = BigInt::from(2);
    inv.free_rank > 0 || inv.torsion.iter().any(|t| (t % &two).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(usize, bool)]) -> Word {
        letters.iter().map(|&(g, i)| Letter::new(g, i)).collect()
    }

    #[test]
    fn reduction_cancels() {
        assert!(reduce(&w(&[(0, false), (1, false), (1, true), (0, true)])).is_empty());
    }

    #[test]
    fn simplification_keeps_invariants() {
        // <a, b, c | a b, b c^-1 c c, a^3>  ~  Z/3
        let p = GroupPresentation::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![w(&[(0, false), (1, false)]), w(&[(1, false), (2, false)]), w(&[(0, false); 3])],
        );
        let s = p.simplified();
        assert_eq!(abelianization(&p), abelianization(&s));
        assert_eq!(s.generators.len(), 1);
    }

    #[test]
    fn z2_covers() {
        let trivial = GroupPresentation::new(vec!["a".into()], vec![w(&[(0, false)])]);
        let z = GroupPresentation::new(vec!["a".into()], vec![]);
        let z3 = GroupPresentation::new(vec!["a".into()], vec![w(&[(0, false); 3])]);
        assert!(!z2_cover_exists(&trivial));
        assert!(z2_cover_exists(&z));
        assert!(!z2_cover_exists(&z3));
    }
}
