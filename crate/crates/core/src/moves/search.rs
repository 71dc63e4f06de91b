//! Bounded bidirectional search for a path of filling-preserving moves.
//!
//! Nodes are canonical forms. Frontiers are expanded in parallel, but
//! discoveries are merged in the sorted order of the frontier, so the
//! result does not depend on the number of threads.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::canonical::{canonical_diagram, canonical_form};
use super::{apply_move, find_sites, fills_like, MoveKind, MovePath, MoveStep};
use crate::algebra::{abelianization, manifold_group, AbelianInvariants};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::manifold::is_filling;
use crate::surface::surface_of;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotFoundReason {
    DifferentH1 { h1: [String; 2] },
    DifferentGenus { genus: [u32; 2] },
    BudgetExhausted { explored: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Path(MovePath),
    NotFound(NotFoundReason),
}

type Form = Vec<u8>;

/// A node reached from its parent by a move. For the forward tree the move
/// leads from the parent to the node; for the backward tree it leads from
/// the node's parent away from the target, and is inverted when the path
/// is assembled.
struct Visit {
    diagram: Diagram,
    parent: Option<(Form, MoveKind)>,
    step: Option<MoveStep>,
}

fn neighbours(d: &Diagram, max_triplets: usize) -> Result<Vec<(Form, Diagram, MoveStep)>> {
    let p = d.crossing_count() / 3;
    let mut out = Vec::new();
    for kind in MoveKind::ALL {
        if p as i64 + kind.delta_p() > max_triplets as i64 || (p as i64 + kind.delta_p()) < 0 {
            continue;
        }
        for site in find_sites(d, kind)? {
            let r = apply_move(d, &site)?;
            if !fills_like(d, &r)? {
                continue;
            }
            let step = MoveStep {
                kind,
                site: site.describe(d),
            };
            out.push((canonical_form(&r), canonical_diagram(&r), step));
        }
    }
    Ok(out)
}

struct Tree {
    nodes: BTreeMap<Form, Visit>,
    frontier: BTreeSet<Form>,
    depth: usize,
}

impl Tree {
    fn new(d: &Diagram) -> Self {
        let form = canonical_form(d);
        let mut nodes = BTreeMap::new();
        nodes.insert(
            form.clone(),
            Visit {
                diagram: canonical_diagram(d),
                parent: None,
                step: None,
            },
        );
        Tree {
            nodes,
            frontier: BTreeSet::from([form]),
            depth: 0,
        }
    }

    fn expand(&mut self, max_triplets: usize) -> Result<()> {
        let frontier: Vec<&Form> = self.frontier.iter().collect();
        let found: Vec<Vec<(Form, Diagram, MoveStep)>> = frontier
            .par_iter()
            .map(|f| neighbours(&self.nodes[*f].diagram, max_triplets))
            .collect::<Result<_>>()?;
        let mut next = BTreeSet::new();
        let parents: Vec<Form> = frontier.into_iter().cloned().collect();
        for (parent, list) in parents.into_iter().zip(found) {
            for (form, diagram, step) in list {
                if self.nodes.contains_key(&form) {
                    continue;
                }
                self.nodes.insert(
                    form.clone(),
                    Visit {
                        diagram,
                        parent: Some((parent.clone(), step.kind)),
                        step: Some(step),
                    },
                );
                next.insert(form);
            }
        }
        self.frontier = next;
        self.depth += 1;
        Ok(())
    }

    /// Forms from the root to `form`, inclusive.
    fn chain(&self, form: &Form) -> Vec<Form> {
        let mut out = vec![form.clone()];
        let mut cur = form;
        while let Some((p, _)) = &self.nodes[cur].parent {
            out.push(p.clone());
            cur = p;
        }
        out.reverse();
        out
    }
}

/// The step turning canonical diagram `from` into the node `to`, found
/// among the sites of `kind`.
fn step_between(from: &Diagram, to: &Form, kind: MoveKind) -> Result<MoveStep> {
    for site in find_sites(from, kind)? {
        if canonical_form(&apply_move(from, &site)?) == *to {
            return Ok(MoveStep {
                kind,
                site: site.describe(from),
            });
        }
    }
    Err(Error::Internal(format!("no {kind} move inverts a search step")))
}

fn h1(d: &Diagram) -> Result<AbelianInvariants> {
    Ok(abelianization(&manifold_group(d)?))
}

/// Searches for a path of filling-preserving moves from `d1` to `d2`
/// through diagrams with at most `max_triplets` triplets, using at most
/// `max_steps` moves.
pub fn search_equivalent(d1: &Diagram, d2: &Diagram, max_triplets: usize, max_steps: usize) -> Result<SearchOutcome> {
    for d in [d1, d2] {
        if !is_filling(d)?.is_filling {
            return Err(Error::NotFilling("search needs filling diagrams".into()));
        }
    }
    let (h1a, h1b) = (h1(d1)?, h1(d2)?);
    if h1a != h1b {
        return Ok(SearchOutcome::NotFound(NotFoundReason::DifferentH1 {
            h1: [h1a.to_string(), h1b.to_string()],
        }));
    }
    let (ga, gb) = (surface_of(d1)?.genus, surface_of(d2)?.genus);
    if ga != gb {
        return Ok(SearchOutcome::NotFound(NotFoundReason::DifferentGenus { genus: [ga, gb] }));
    }
    let mut fwd = Tree::new(d1);
    let mut bwd = Tree::new(d2);
    loop {
        let meet = fwd.nodes.keys().filter(|f| bwd.nodes.contains_key(*f)).min().cloned();
        if let Some(m) = meet {
            return Ok(SearchOutcome::Path(assemble(&fwd, &bwd, &m)?));
        }
        let done = fwd.depth + bwd.depth >= max_steps;
        if done || (fwd.frontier.is_empty() && bwd.frontier.is_empty()) {
            let explored = fwd.nodes.len() + bwd.nodes.len();
            return Ok(SearchOutcome::NotFound(NotFoundReason::BudgetExhausted { explored }));
        }
        let forward = !fwd.frontier.is_empty() && (bwd.frontier.is_empty() || fwd.frontier.len() <= bwd.frontier.len());
        if forward {
            fwd.expand(max_triplets)?;
        } else {
            bwd.expand(max_triplets)?;
        }
    }
}

fn assemble(fwd: &Tree, bwd: &Tree, meet: &Form) -> Result<MovePath> {
    let mut steps = Vec::new();
    for f in fwd.chain(meet).iter().skip(1) {
        steps.push(fwd.nodes[f].step.clone().expect("non-root"));
    }
    let mut back = bwd.chain(meet);
    back.reverse();
    for pair in back.windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let (_, kind) = bwd.nodes[from].parent.as_ref().expect("non-root");
        steps.push(step_between(&bwd.nodes[from].diagram, to, kind.inverse())?);
    }
    Ok(MovePath { steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_diagrams_give_empty_path() {
        let d = crate::fixtures::load("s2xs1");
        assert_eq!(
            search_equivalent(&d, &d, 4, 2).unwrap(),
            SearchOutcome::Path(MovePath::default())
        );
    }

    #[test]
    fn different_h1_short_circuits() {
        let a = crate::fixtures::load("johansson_s3");
        let b = crate::fixtures::load("s2xs1");
        let r = search_equivalent(&a, &b, 4, 2).unwrap();
        assert!(matches!(r, SearchOutcome::NotFound(NotFoundReason::DifferentH1 { .. })));
    }

    #[test]
    fn single_finger_move_is_found() {
        let d = crate::fixtures::load("johansson_s3");
        let site = find_sites(&d, MoveKind::Finger1Plus).unwrap()[0];
        let e = apply_move(&d, &site).unwrap();
        let SearchOutcome::Path(path) = search_equivalent(&d, &e, 4, 1).unwrap() else {
            panic!("not found");
        };
        assert_eq!(path.steps.len(), 1);
        assert_eq!(canonical_form(&path.replay(&d).unwrap()), canonical_form(&e));
    }

    #[test]
    fn path_through_a_common_ancestor_replays() {
        let d = crate::fixtures::load("johansson_s3");
        let sites = find_sites(&d, MoveKind::Finger1Plus).unwrap();
        let e1 = apply_move(&d, &sites[0]).unwrap();
        let e2 = sites[1..]
            .iter()
            .map(|s| apply_move(&d, s).unwrap())
            .find(|e| canonical_form(e) != canonical_form(&e1))
            .expect("two distinct results");
        let SearchOutcome::Path(path) = search_equivalent(&e1, &e2, 4, 2).unwrap() else {
            panic!("not found");
        };
        assert_eq!(path.steps.len(), 2);
        assert_eq!(canonical_form(&path.replay(&e1).unwrap()), canonical_form(&e2));
    }
}
