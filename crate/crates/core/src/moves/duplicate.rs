//! Duplication: a diagram of the sphere obtained by piping the surface
//! with a parallel copy of itself near a triple point.
//!
//! The doubled diagram lives on `S ⊔ S⁺`. On `S` every curve `c` keeps its
//! copy `s_c` and gains `m_c`, the parallel of `c` on its upper side. On
//! `S⁺` it has the copy `t_c` and `n_c`, the parallel of `t_c` on its lower
//! side. Sisters are `s_c ↔ s_τc`, `t_c ↔ t_τc` and `m_c ↔ n_τc`. The copy
//! `S⁺` enters the connected sum with the opposite orientation, so all its
//! crossing signs are flipped.

use std::collections::{HashMap, HashSet};

use super::finger::{finger1_plus, finger1_plus_sites};
use super::rewrite::reconnect;
use crate::algebra::{abelianization, manifold_group};
use crate::diagram::{triplets, Diagram, DiagramBuilder, Sign, Slot, Triplet};
use crate::error::{Error, Result};
use crate::gclass::{sheet_assignment, NeighbouringSide, Side};
use crate::manifold::is_filling;
use crate::surface::surface_of;

/// Curve families of the doubled diagram, in curve-index order.
const S: usize = 0;
const M: usize = 1;
const T: usize = 2;
const N: usize = 3;

struct Doubled {
    diagram: Diagram,
    /// Curve count of the original diagram.
    n: usize,
    /// Offset (0 or 1) of the parallel crossing within the visit pair, per
    /// original slot, on `S` and on `S⁺`.
    par_first: [HashMap<Slot, bool>; 2],
}

impl Doubled {
    fn curve(&self, family: usize, c: usize) -> usize {
        family * self.n + c
    }

    /// Visit of curve `family`/`c` at the crossing over original slot `s`
    /// with the original (`parallel = false`) or parallel partner.
    fn slot(&self, family: usize, s: Slot, parallel: bool) -> Slot {
        let sheet = usize::from(family >= T);
        let first = self.par_first[sheet][&s] == parallel;
        Slot::new(self.curve(family, s.curve), 2 * s.index + usize::from(!first))
    }
}

fn unique_names(d: &Diagram) -> Vec<String> {
    let mut taken: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for suffix in ["", "_m", "_t", "_n"] {
        for c in d.curves() {
            let mut name = format!("{}{suffix}", c.name);
            while !taken.insert(name.clone()) {
                name.push('_');
            }
            out.push(name);
        }
    }
    out
}

fn doubled(d: &Diagram) -> Result<Doubled> {
    let sheets = sheet_assignment(d)?;
    let n = d.curve_count();
    let h = |c: usize| {
        Sign::from_bool(sheets.is_upper(NeighbouringSide {
            curve: c,
            side: Side::Left,
        }))
    };
    let mut par_first = [HashMap::new(), HashMap::new()];
    for c in 0..n {
        for i in 0..d.len_of(c) {
            let s = Slot::new(c, i);
            let k = h(d.partner(s).curve).times(d.frame_sign(s));
            par_first[0].insert(s, k == Sign::Pos);
            par_first[1].insert(s, k == Sign::Neg);
        }
    }
    let mut dbl = Doubled {
        diagram: DiagramBuilder::new().build(),
        n,
        par_first,
    };
    let names = unique_names(d);
    let mut b = DiagramBuilder::new();
    let mut words: Vec<Vec<usize>> = (0..4 * n).map(|k| vec![usize::MAX; 2 * d.len_of(k % n)]).collect();
    let mut crossings = Vec::new();
    for x in 0..d.crossing_count() {
        let [u, v] = d.strands(x);
        let sign = d.sign(x);
        for (orig, par, sign) in [(S, M, sign), (T, N, sign.flip())] {
            for (fu, fv) in [(orig, orig), (orig, par), (par, orig), (par, par)] {
                let su = dbl.slot(fu, u, fv == par);
                let sv = dbl.slot(fv, v, fu == par);
                let k = crossings.len();
                words[su.curve][su.index] = k;
                words[sv.curve][sv.index] = k;
                crossings.push((su, sign));
            }
        }
    }
    for (k, w) in words.into_iter().enumerate() {
        b.add_curve(&names[k], w);
    }
    for c in 0..n {
        let t = d.sister(c);
        if c < t {
            b.pair(dbl.curve(S, c), dbl.curve(S, t));
            b.pair(dbl.curve(T, c), dbl.curve(T, t));
        }
        b.pair(dbl.curve(M, c), dbl.curve(N, t));
    }
    for (k, &(first, sign)) in crossings.iter().enumerate() {
        b.add_crossing(&format!("x{}", k + 1), first, sign);
    }
    dbl.diagram = b.build();
    Ok(dbl)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Fate {
    Skip,
    Teleport(Slot),
}

/// Pipes the doubled diagram at the crossing `pa` of the original.
fn pipe(d: &Diagram, dbl: &Doubled, pa: usize) -> Option<Diagram> {
    let dd = &dbl.diagram;
    let [a, b] = d.strands(pa);
    let (ra, rb) = (d.related(a), d.related(b));
    let sa = dbl.slot(S, a, false);
    let sb = dbl.slot(S, b, false);
    let sra = dbl.slot(S, ra, false);
    let srb = dbl.slot(S, rb, false);
    let na = dbl.slot(N, a, true);
    let nb = dbl.slot(N, b, true);
    let (ma, mb) = (dd.related(na), dd.related(nb));
    let mut fate: HashMap<Slot, Fate> = HashMap::new();
    for (p, q) in [(sa, na), (sb, nb), (sra, ma), (srb, mb)] {
        fate.insert(p, Fate::Teleport(q));
        fate.insert(q, Fate::Teleport(p));
    }
    for s in [sra, srb, ma, mb] {
        let other = dd.partner(s);
        fate.entry(other).or_insert(Fate::Skip);
    }
    if fate.len() != 12 {
        return None;
    }
    let total = dd.visit_count();
    let step = |s: Slot, f: bool| -> Option<(Slot, bool)> {
        let (mut s, mut f) = (s, f);
        for _ in 0..total {
            s = if f { dd.next_index(s) } else { dd.prev_index(s) };
            match fate.get(&s) {
                None => return Some((s, f)),
                Some(Fate::Skip) => {}
                Some(&Fate::Teleport(q)) => {
                    s = q;
                    f = !f;
                }
            }
        }
        None
    };
    reconnect(dd, step, |s| !fate.contains_key(&s))
}

/// Duplicates a filling diagram at the triplet `at`. Each crossing of the
/// triplet is tried as the piping point; the first result that is a
/// filling diagram of the sphere with `8p - 2` triplets and the same
/// abelianization is returned.
pub fn duplicate(d: &Diagram, at: &Triplet) -> Result<Diagram> {
    let ts = triplets(d)?;
    if !ts.contains(at) {
        return Err(Error::SiteStale(format!("no triplet {:?}", at.crossings)));
    }
    if !is_filling(d)?.is_filling {
        return Err(Error::NotFilling("duplication needs a filling diagram".into()));
    }
    let h1 = abelianization(&manifold_group(d)?);
    let dbl = doubled(d)?;
    for &pa in &at.crossings {
        let Some(r) = pipe(d, &dbl, pa) else { continue };
        if accept(&r, 8 * ts.len() - 2, &h1) {
            return Ok(r.with_declared_genus(Some(0)));
        }
    }
    let names: Vec<&str> = at.crossings.iter().map(|&x| d.crossings()[x].name.as_str()).collect();
    Err(Error::SiteNotPipeable(names.join(",")))
}

fn accept(r: &Diagram, p: usize, h1: &crate::algebra::AbelianInvariants) -> bool {
    if !r.is_valid() || !r.is_connected() || r.crossing_count() != 3 * p {
        return false;
    }
    if !matches!(surface_of(r), Ok(s) if s.genus == 0) {
        return false;
    }
    if !matches!(is_filling(r), Ok(v) if v.is_filling) {
        return false;
    }
    matches!(manifold_group(r), Ok(g) if abelianization(&g) == *h1)
}

/// Applies a finger move +1 at the first site and returns the result with
/// one of the two triplets it creates.
pub fn prepare_duplicate(d: &Diagram) -> Result<(Diagram, Triplet)> {
    d.ensure_valid()?;
    let (a, b) = *finger1_plus_sites(d)
        .first()
        .ok_or_else(|| Error::DegenerateResult("no finger move +1 site".into()))?;
    let d2 = finger1_plus(d, a, b).ok_or_else(|| Error::Internal("finger move +1 failed".into()))?;
    let old: HashSet<&str> = d.crossings().iter().map(|c| c.name.as_str()).collect();
    let t = triplets(&d2)?
        .into_iter()
        .find(|t| t.crossings.iter().all(|&x| !old.contains(d2.crossings()[x].name.as_str())))
        .ok_or_else(|| Error::Internal("finger move +1 created no triplet".into()))?;
    Ok((d2, t))
}
