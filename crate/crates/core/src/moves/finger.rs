//! Finger moves of index one and two.
//!
//! Local picture of a +1 move: two arcs `a` (curve x) and `b` (curve y) on
//! the boundary of one face of a sheet C are pushed across each other,
//! creating two crossings X1, X2 (first along `a`). If x lies on C ∩ A and
//! y on C ∩ B, the related points are on τx in A and on τy in B, where a
//! small circle ν (in A) and its sister τν (in B) appear, each crossing the
//! sister arc twice.

use std::collections::BTreeSet;

use super::rewrite::{Editor, Visit};
use super::canonical::canonical_form;
use super::ArcSide;
use crate::diagram::{triplet_of, triplets_unchecked, Diagram, Sign, Slot};
use crate::gclass::{partition_unchecked, Side};
use crate::surface::{trace_unchecked, Dart};

/// Every unordered pair of distinct arc sides bounding a common face,
/// excluding an arc paired with its own sister arc.
pub fn finger1_plus_sites(d: &Diagram) -> Vec<(ArcSide, ArcSide)> {
    let faces = trace_unchecked(d);
    let mut out = BTreeSet::new();
    for face in &faces.faces {
        let sides: BTreeSet<ArcSide> = face.iter().map(|dart| arc_side(&faces.arcs, *dart)).collect();
        for &p in &sides {
            for &q in &sides {
                if p < q && p.arc != q.arc && !is_sister_arc(d, p.arc, q.arc) {
                    out.insert((p, q));
                }
            }
        }
    }
    out.into_iter().collect()
}

fn arc_side(arcs: &crate::surface::ArcIndex, dart: Dart) -> ArcSide {
    ArcSide {
        arc: arcs.start(dart.arc),
        side: if dart.forward { Side::Left } else { Side::Right },
    }
}

fn is_sister_arc(d: &Diagram, a: Slot, b: Slot) -> bool {
    d.sister(a.curve) == b.curve && a.index == b.index
}

/// Applies a +1 finger move. Returns `None` when the sides do not bound a
/// common face or no identification of ν and τν is realizable.
pub fn finger1_plus(d: &Diagram, a: ArcSide, b: ArcSide) -> Option<Diagram> {
    finger1_plus_candidates(d, a, b)?
        .into_iter()
        .find(|c| partition_unchecked(c).conflicts().is_empty())
}

/// Both identifications of ν and τν, before the G-class filter.
pub(crate) fn finger1_plus_candidates(d: &Diagram, a: ArcSide, b: ArcSide) -> Option<Vec<Diagram>> {
    if a.arc == b.arc || is_sister_arc(d, a.arc, b.arc) {
        return None;
    }
    let faces = trace_unchecked(d);
    let face = |s: ArcSide| {
        faces.face_of(Dart {
            arc: faces.arcs.arc(s.arc),
            forward: s.side == Side::Left,
        })
    };
    if a.arc.curve >= d.curve_count()
        || b.arc.curve >= d.curve_count()
        || a.arc.index >= d.len_of(a.arc.curve)
        || b.arc.index >= d.len_of(b.arc.curve)
        || face(a) != face(b)
    {
        return None;
    }
    // With b drawn horizontally and the face below it, `la` says whether a
    // runs eastward, `eb` whether b does.
    let la = a.side == Side::Left;
    let eb = b.side == Side::Right;
    let x1_first_on_b = la == eb;
    let (x, y) = (a.arc.curve, b.arc.curve);
    let (tx, ty) = (d.sister(x), d.sister(y));
    let mut out = Vec::new();
    for ccw in [true, false] {
        let mut e = Editor::new(d);
        e.set_genus(d.declared_genus());
        let ua = e.uid(a.arc);
        let ub = e.uid(b.arc);
        let uta = e.uid(Slot::new(tx, a.arc.index));
        let utb = e.uid(Slot::new(ty, b.arc.index));
        let xv: Vec<usize> = (0..2).map(|_| e.fresh_uid()).collect();
        let yv: Vec<usize> = (0..2).map(|_| e.fresh_uid()).collect();
        let nv: Vec<usize> = (0..2).map(|_| e.fresh_uid()).collect();
        let nu: Vec<usize> = (0..2).map(|_| e.fresh_uid()).collect();
        let tv: Vec<usize> = (0..2).map(|_| e.fresh_uid()).collect();
        let tn: Vec<usize> = (0..2).map(|_| e.fresh_uid()).collect();
        // X_i = x-visit xv[i] and y-visit yv[i].
        let east = if eb { Sign::Pos } else { Sign::Neg };
        let xc = [e.add_crossing(xv[0], east.flip()), e.add_crossing(xv[1], east)];
        // N_i on τx, aligned with X_i; ν counter-clockwise.
        let nc = [e.add_crossing(nv[0], Sign::Neg), e.add_crossing(nv[1], Sign::Pos)];
        // T_i on τy, aligned with the y-visit of X_i.
        let (t_first, t_second) = if ccw { (Sign::Neg, Sign::Pos) } else { (Sign::Pos, Sign::Neg) };
        let tc = if x1_first_on_b {
            [e.add_crossing(tv[0], t_first), e.add_crossing(tv[1], t_second)]
        } else {
            [e.add_crossing(tv[0], t_second), e.add_crossing(tv[1], t_first)]
        };
        let v = |uid, crossing| Visit { uid, crossing };
        e.insert_after(x, ua, &[v(xv[0], xc[0]), v(xv[1], xc[1])]);
        e.insert_after(tx, uta, &[v(nv[0], nc[0]), v(nv[1], nc[1])]);
        if x1_first_on_b {
            e.insert_after(y, ub, &[v(yv[0], xc[0]), v(yv[1], xc[1])]);
            e.insert_after(ty, utb, &[v(tv[0], tc[0]), v(tv[1], tc[1])]);
        } else {
            e.insert_after(y, ub, &[v(yv[1], xc[1]), v(yv[0], xc[0])]);
            e.insert_after(ty, utb, &[v(tv[1], tc[1]), v(tv[0], tc[0])]);
        }
        e.add_pair(
            vec![v(nu[0], nc[0]), v(nu[1], nc[1])],
            vec![v(tn[0], tc[0]), v(tn[1], tc[1])],
        );
        out.push(e.build());
    }
    Some(out)
}

/// Sister pairs of length two that could have been created by a +1 move:
/// ν crosses one curve at two consecutive visits, and the other two
/// crossings of the two triplets are consecutive on their curves as well.
/// Returns the pair representatives; the caller verifies by replay.
pub fn finger1_minus_candidates(d: &Diagram) -> Vec<usize> {
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let mut out = Vec::new();
    for nu in d.pair_representatives() {
        let tnu = d.sister(nu);
        if d.len_of(nu) != 2 {
            continue;
        }
        let p0 = d.partner(Slot::new(nu, 0));
        let p1 = d.partner(Slot::new(nu, 1));
        if p0.curve == nu || p0.curve == tnu || p1.curve == nu || p1.curve == tnu {
            continue;
        }
        if of[d.crossing_at(Slot::new(nu, 0))] == of[d.crossing_at(Slot::new(nu, 1))] {
            continue;
        }
        if !consecutive(d, p0, p1) {
            continue;
        }
        let q0 = d.partner(Slot::new(tnu, 0));
        let q1 = d.partner(Slot::new(tnu, 1));
        if q0.curve == nu || q0.curve == tnu || !consecutive(d, q0, q1) {
            continue;
        }
        out.push(nu);
    }
    out
}

fn consecutive(d: &Diagram, p: Slot, q: Slot) -> bool {
    p.curve == q.curve && p != q && (d.next_index(p) == q || d.next_index(q) == p)
}

/// Removes the pair ν, τν and the six crossings of its two triplets.
pub(crate) fn remove_pair_with_triplets(d: &Diagram, nu: usize) -> Diagram {
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let mut e = Editor::new(d);
    e.set_genus(d.declared_genus());
    let mut doomed = BTreeSet::new();
    for i in 0..d.len_of(nu) {
        doomed.insert(of[d.crossing_at(Slot::new(nu, i))]);
    }
    for t in doomed {
        for x in ts[t].crossings {
            e.remove_crossing(x);
        }
    }
    e.remove_pair(nu);
    e.build()
}

/// Applies a -1 finger move removing the pair of `nu`. The removal is
/// accepted only if a +1 move on the result restores the diagram.
pub fn finger1_minus(d: &Diagram, nu: usize) -> Option<Diagram> {
    if !finger1_minus_candidates(d).contains(&nu) {
        return None;
    }
    let tx = d.partner(Slot::new(nu, 0)).curve;
    let ty = d.partner(Slot::new(d.sister(nu), 0)).curve;
    let names = [&d.curves()[d.sister(tx)].name, &d.curves()[d.sister(ty)].name];
    let reduced = remove_pair_with_triplets(d, nu);
    if !reduced.is_valid() {
        return None;
    }
    let target = canonical_form(d);
    let on_site = |s: &ArcSide| names.contains(&&reduced.curves()[s.arc.curve].name);
    let restores = finger1_plus_sites(&reduced)
        .into_iter()
        .filter(|(a, b)| on_site(a) && on_site(b))
        .any(|(a, b)| finger1_plus(&reduced, a, b).is_some_and(|r| canonical_form(&r) == target));
    restores.then_some(reduced)
}

/// Sites of a +2 move: a singular arc and the end it is pushed through.
/// The pushed sheet meets the double line at the other end of the arc. Arcs
/// whose ends lie at the same triplet are excluded, and each singular arc
/// is listed once, through its pair representative.
pub fn finger2_plus_sites(d: &Diagram) -> Vec<(Slot, bool)> {
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let mut out = Vec::new();
    for c in d.pair_representatives() {
        for k in 0..d.len_of(c) {
            let s = Slot::new(c, k);
            if of[d.crossing_at(s)] != of[d.crossing_at(d.next_index(s))] {
                out.push((s, true));
                out.push((s, false));
            }
        }
    }
    out
}

/// Applies a +2 move: the sheet through the triple point Q at one end of
/// the singular arc is pushed along the arc through the triple point P at
/// the other end (`through_finish` says whether P is at the finish of the
/// arc). In each of the two sheets C, D containing the arc, the curve x
/// through Q is dragged past P, crossing the curve y through P twice; in
/// the pushed sheet a circle ν appears around Q, in the sheet through P
/// its sister τν appears around P.
pub fn finger2_plus(d: &Diagram, arc: Slot, through_finish: bool) -> Option<Diagram> {
    if arc.curve >= d.curve_count() || arc.index >= d.len_of(arc.curve) {
        return None;
    }
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let (sq, sp) = if through_finish {
        (arc, d.next_index(arc))
    } else {
        (d.next_index(arc), arc)
    };
    if of[d.crossing_at(sq)] == of[d.crossing_at(sp)] {
        return None;
    }
    let dw = if through_finish { Sign::Pos } else { Sign::Neg };
    let mut e = Editor::new(d);
    e.set_genus(d.declared_genus());
    let v = |uid, crossing| Visit { uid, crossing };
    // Per sheet: (τx slot, τy slot, uid of the τx visit before / after Q_A
    // keyed by ±1, and for each position ε on x the position on y).
    struct Sheet {
        tx_before: usize,
        tx_after: usize,
        ty_before: usize,
        ty_after: usize,
        x_to_y: [Sign; 2],
    }
    let mut sheets = Vec::new();
    for (wq, wp) in [(sq, sp), (d.related(sq), d.related(sp))] {
        let xs = d.partner(wq);
        let ys = d.partner(wp);
        let dx = d.frame_sign(wq).times(dw);
        let dy = d.frame_sign(wp).times(dw);
        let m = dx.times(dy);
        let (ux, lx, uy, ly) = (e.fresh_uid(), e.fresh_uid(), e.fresh_uid(), e.fresh_uid());
        let cu = e.add_crossing(ux, m.flip());
        let cl = e.add_crossing(lx, m);
        let (x_first, x_second) = if dx == Sign::Neg {
            (v(ux, cu), v(lx, cl))
        } else {
            (v(lx, cl), v(ux, cu))
        };
        let (y_first, y_second) = if dy == Sign::Pos {
            (v(ly, cl), v(uy, cu))
        } else {
            (v(uy, cu), v(ly, cl))
        };
        let (uxq, uyp) = (e.uid(xs), e.uid(ys));
        e.insert_before(xs.curve, uxq, &[x_first]);
        e.insert_after(xs.curve, uxq, &[x_second]);
        e.insert_before(ys.curve, uyp, &[y_first]);
        e.insert_after(ys.curve, uyp, &[y_second]);
        let (uwq, uwp) = (e.uid(wq), e.uid(wp));
        e.swap(wq.curve, uwq, uwp);
        // The x visit before Q is the first inserted one; it sits before P
        // on y exactly when it is also the first inserted there.
        let first_is_first = x_first.crossing == y_first.crossing;
        let before_maps = if first_is_first { Sign::Neg } else { Sign::Pos };
        sheets.push((xs, ys, before_maps));
    }
    // Sister visits of the new x and y visits.
    let mut nu_visits = Vec::new();
    let mut tnu_visits = Vec::new();
    let qa = d.related(sheets[0].0);
    let pb = d.related(sheets[0].1);
    let s_a = d.frame_sign(qa);
    let s_b = d.frame_sign(pb);
    let mut tsheets = Vec::new();
    for &(_, _, before_maps) in &sheets {
        let (txb, txa, tyb, tya) = (e.fresh_uid(), e.fresh_uid(), e.fresh_uid(), e.fresh_uid());
        tsheets.push(Sheet {
            tx_before: txb,
            tx_after: txa,
            ty_before: tyb,
            ty_after: tya,
            x_to_y: [before_maps, before_maps.flip()],
        });
    }
    // ν runs counter-clockwise around Q_A starting after Q_A on τx_C.
    let nu_seq = [(0, Sign::Pos), (1, s_a), (0, Sign::Neg), (1, s_a.flip())];
    let map = |sheet: usize, eps: Sign| -> Sign {
        let t = &tsheets[sheet];
        if eps == Sign::Neg {
            t.x_to_y[0]
        } else {
            t.x_to_y[1]
        }
    };
    let tnu_seq: Vec<(usize, Sign)> = nu_seq.iter().map(|&(s, eps)| (s, map(s, eps))).collect();
    let o_b = tnu_seq[1].1.times(tnu_seq[0].1).times(s_b);
    let mut tx_new = [[None; 2]; 2];
    let mut ty_new = [[None; 2]; 2];
    for i in 0..4 {
        let (s, eps) = nu_seq[i];
        let t = &tsheets[s];
        let first = if eps == Sign::Neg { t.tx_before } else { t.tx_after };
        let cx = e.add_crossing(first, eps);
        let (s2, eps2) = tnu_seq[i];
        let t2 = &tsheets[s2];
        let first2 = if eps2 == Sign::Neg { t2.ty_before } else { t2.ty_after };
        let cy = e.add_crossing(first2, eps2.times(o_b));
        tx_new[s][usize::from(eps == Sign::Pos)] = Some(v(first, cx));
        ty_new[s2][usize::from(eps2 == Sign::Pos)] = Some(v(first2, cy));
        let nu_uid = e.fresh_uid();
        let tnu_uid = e.fresh_uid();
        nu_visits.push(v(nu_uid, cx));
        tnu_visits.push(v(tnu_uid, cy));
    }
    for (s, &(xs, ys, _)) in sheets.iter().enumerate() {
        let tx = d.related(xs);
        let ty = d.related(ys);
        let (utx, uty) = (e.uid(tx), e.uid(ty));
        e.insert_before(tx.curve, utx, &[tx_new[s][0]?]);
        e.insert_after(tx.curve, utx, &[tx_new[s][1]?]);
        e.insert_before(ty.curve, uty, &[ty_new[s][0]?]);
        e.insert_after(ty.curve, uty, &[ty_new[s][1]?]);
    }
    e.add_pair(nu_visits, tnu_visits);
    Some(e.build())
}

/// The crossing that every crossing of `c` is adjacent to on its other
/// strand, i.e. the centre of a small circle.
fn circle_centre(d: &Diagram, c: usize) -> Option<usize> {
    let mut common: Option<BTreeSet<usize>> = None;
    for i in 0..d.len_of(c) {
        let s = d.partner(Slot::new(c, i));
        let near: BTreeSet<usize> = [d.prev_index(s), d.next_index(s)]
            .iter()
            .map(|&t| d.crossing_at(t))
            .collect();
        common = Some(match common {
            None => near,
            Some(prev) => prev.intersection(&near).copied().collect(),
        });
    }
    let common = common?;
    (common.len() == 1).then(|| *common.iter().next().expect("one element"))
}

/// Sister pairs of length four circling a crossing on each side.
pub fn finger2_minus_candidates(d: &Diagram) -> Vec<usize> {
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    d.pair_representatives()
        .into_iter()
        .filter(|&nu| {
            if d.len_of(nu) != 4 {
                return false;
            }
            let (Some(q), Some(p)) = (circle_centre(d, nu), circle_centre(d, d.sister(nu))) else {
                return false;
            };
            let own: BTreeSet<usize> = (0..4).map(|i| of[d.crossing_at(Slot::new(nu, i))]).collect();
            of[q] != of[p] && !own.contains(&of[q]) && !own.contains(&of[p])
        })
        .collect()
}

/// Applies a -2 move removing the pair of `nu`: its four triplets go and
/// the two triplets it circled are moved back past each other. Accepted
/// only if a +2 move on the result restores the diagram.
pub fn finger2_minus(d: &Diagram, nu: usize) -> Option<Diagram> {
    if !finger2_minus_candidates(d).contains(&nu) {
        return None;
    }
    let ts = triplets_unchecked(d);
    let of = triplet_of(d, &ts);
    let q = circle_centre(d, nu)?;
    let p = circle_centre(d, d.sister(nu))?;
    let ends: BTreeSet<usize> = [of[q], of[p]].into_iter().collect();
    let end_names: BTreeSet<&str> = ends
        .iter()
        .flat_map(|&t| ts[t].crossings)
        .map(|x| d.crossings()[x].name.as_str())
        .collect();
    let doomed: BTreeSet<usize> = (0..4).map(|i| of[d.crossing_at(Slot::new(nu, i))]).collect();
    let target = canonical_form(d);
    for alpha in d.pair_representatives() {
        if alpha == nu {
            continue;
        }
        for k in 0..d.len_of(alpha) {
            let s = Slot::new(alpha, k);
            let t = d.next_index(s);
            let (xs, xt) = (d.crossing_at(s), d.crossing_at(t));
            let pair: BTreeSet<usize> = [of[xs], of[xt]].into_iter().collect();
            if pair != ends || [q, p].contains(&xs) || [q, p].contains(&xt) {
                continue;
            }
            let mut e = Editor::new(d);
            e.set_genus(d.declared_genus());
            for &tr in &doomed {
                for x in ts[tr].crossings {
                    e.remove_crossing(x);
                }
            }
            e.remove_pair(nu);
            for (a, b) in [(s, t), (d.related(s), d.related(t))] {
                let (ua, ub) = (e.uid(a), e.uid(b));
                e.swap(a.curve, ua, ub);
            }
            let reduced = e.build();
            if !reduced.is_valid() {
                continue;
            }
            let named = |slot: Slot| end_names.contains(reduced.crossings()[reduced.crossing_at(slot)].name.as_str());
            let restores = finger2_plus_sites(&reduced)
                .into_iter()
                .filter(|&(a, _)| named(a) && named(reduced.next_index(a)))
                .any(|(a, fwd)| finger2_plus(&reduced, a, fwd).is_some_and(|r| canonical_form(&r) == target));
            if restores {
                return Some(reduced);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_one_then_minus_one_restores() {
        for name in ["johansson_s3", "s2xs1", "s333_torus"] {
            let d = crate::fixtures::load(name);
            let target = canonical_form(&d);
            for (a, b) in finger1_plus_sites(&d).into_iter().take(6) {
                let Some(e) = finger1_plus(&d, a, b) else { continue };
                assert_eq!(triplets_unchecked(&e).len(), triplets_unchecked(&d).len() + 2);
                let back = finger1_minus_candidates(&e)
                    .into_iter()
                    .filter_map(|nu| finger1_minus(&e, nu))
                    .any(|r| canonical_form(&r) == target);
                assert!(back, "{name}");
            }
        }
    }

    #[test]
    fn plus_two_then_minus_two_restores() {
        for name in ["johansson_s3", "s2xs1"] {
            let d = crate::fixtures::load(name);
            let target = canonical_form(&d);
            for (arc, t) in finger2_plus_sites(&d) {
                let e = finger2_plus(&d, arc, t).unwrap();
                assert_eq!(triplets_unchecked(&e).len(), triplets_unchecked(&d).len() + 4);
                let back = finger2_minus_candidates(&e)
                    .into_iter()
                    .filter_map(|nu| finger2_minus(&e, nu))
                    .any(|r| canonical_form(&r) == target);
                assert!(back, "{name}");
            }
        }
    }

    #[test]
    fn fixtures_have_no_minus_sites() {
        let d = crate::fixtures::load("johansson_s3");
        assert!(finger1_minus_candidates(&d).iter().all(|&nu| finger1_minus(&d, nu).is_none()));
        assert!(finger2_minus_candidates(&d).is_empty());
    }
}
