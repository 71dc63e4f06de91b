//! Diagram rewrites: finger moves, saddles, duplication, canonical forms
//! and the bounded equivalence search.

pub mod canonical;
pub mod duplicate;
pub mod finger;
pub mod saddle;
pub mod search;
pub(crate) mod rewrite;

use serde::Serialize;

use crate::diagram::Slot;
use crate::gclass::Side;

/// One side of the arc leaving `arc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcSide {
    pub arc: Slot,
    pub side: Side,
}

use std::fmt;
use std::str::FromStr;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::manifold::is_filling;
use crate::surface::surface_of;
use saddle::SaddleSite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Finger1Plus,
    Finger1Minus,
    Finger2Plus,
    Finger2Minus,
    Saddle,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::Finger1Plus,
        MoveKind::Finger1Minus,
        MoveKind::Finger2Plus,
        MoveKind::Finger2Minus,
        MoveKind::Saddle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Finger1Plus => "finger1+",
            MoveKind::Finger1Minus => "finger1-",
            MoveKind::Finger2Plus => "finger2+",
            MoveKind::Finger2Minus => "finger2-",
            MoveKind::Saddle => "saddle",
        }
    }

    pub fn inverse(self) -> MoveKind {
        match self {
            MoveKind::Finger1Plus => MoveKind::Finger1Minus,
            MoveKind::Finger1Minus => MoveKind::Finger1Plus,
            MoveKind::Finger2Plus => MoveKind::Finger2Minus,
            MoveKind::Finger2Minus => MoveKind::Finger2Plus,
            MoveKind::Saddle => MoveKind::Saddle,
        }
    }

    /// Change in the number of triplets.
    pub fn delta_p(self) -> i64 {
        match self {
            MoveKind::Finger1Plus => 2,
            MoveKind::Finger1Minus => -2,
            MoveKind::Finger2Plus => 4,
            MoveKind::Finger2Minus => -4,
            MoveKind::Saddle => 0,
        }
    }

    pub fn is_finger(self) -> bool {
        self != MoveKind::Saddle
    }
}

impl Serialize for MoveKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::BadSite(format!("unknown move kind `{s}`")))
    }
}

/// Where a move applies. Curves are referred to by index into the diagram
/// the site was found in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveSite {
    /// Two arc sides bounding a common face, pushed across each other.
    Finger1Plus { a: ArcSide, b: ArcSide },
    /// The sister pair (by its representative) to be removed.
    Finger1Minus { curve: usize },
    /// A singular arc and the end it is pushed through.
    Finger2Plus { arc: Slot, through_finish: bool },
    Finger2Minus { curve: usize },
    Saddle(SaddleSite),
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::Finger1Plus { .. } => MoveKind::Finger1Plus,
            MoveSite::Finger1Minus { .. } => MoveKind::Finger1Minus,
            MoveSite::Finger2Plus { .. } => MoveKind::Finger2Plus,
            MoveSite::Finger2Minus { .. } => MoveKind::Finger2Minus,
            MoveSite::Saddle(_) => MoveKind::Saddle,
        }
    }

    /// Whitespace-free text naming the site in `d`: arc sides are
    /// `curve:index:L|R`, a +2 site is `curve:index@crossing` with the
    /// crossing pushed through, minus sites are a curve name.
    pub fn describe(&self, d: &Diagram) -> String {
        let name = |c: usize| d.curves()[c].name.as_str();
        let slot = |s: Slot| format!("{}:{}", name(s.curve), s.index);
        let side = |s: Side| if s == Side::Left { 'L' } else { 'R' };
        let arc_side = |a: ArcSide| format!("{}:{}", slot(a.arc), side(a.side));
        match *self {
            MoveSite::Finger1Plus { a, b } => format!("{},{}", arc_side(a), arc_side(b)),
            MoveSite::Finger1Minus { curve } | MoveSite::Finger2Minus { curve } => name(curve).to_string(),
            MoveSite::Finger2Plus { arc, through_finish } => {
                let end = if through_finish { d.next_index(arc) } else { arc };
                format!("{}@{}", slot(arc), d.crossings()[d.crossing_at(end)].name)
            }
            MoveSite::Saddle(s) => {
                let ta = ArcSide {
                    arc: d.related(s.a.arc),
                    side: s.sister_a,
                };
                let tb = ArcSide {
                    arc: d.related(s.b.arc),
                    side: s.sister_b,
                };
                [s.a, s.b, ta, tb].map(arc_side).join(",")
            }
        }
    }

    /// Inverse of [`MoveSite::describe`]. Only checks that the names
    /// resolve; whether the site applies is decided by [`apply_move`].
    pub fn parse(d: &Diagram, kind: MoveKind, text: &str) -> Result<MoveSite> {
        let bad = || Error::BadSite(format!("malformed {kind} site `{text}`"));
        let curve = |s: &str| d.curve_index(s).ok_or_else(|| Error::BadSite(format!("unknown curve `{s}`")));
        let slot = |s: &str| -> Result<Slot> {
            let (c, i) = s.split_once(':').ok_or_else(bad)?;
            let c = curve(c)?;
            let i: usize = i.parse().map_err(|_| bad())?;
            if i >= d.len_of(c) {
                return Err(bad());
            }
            Ok(Slot::new(c, i))
        };
        let arc_side = |s: &str| -> Result<ArcSide> {
            let (rest, side) = s.rsplit_once(':').ok_or_else(bad)?;
            let side = match side {
                "L" => Side::Left,
                "R" => Side::Right,
                _ => return Err(bad()),
            };
            Ok(ArcSide { arc: slot(rest)?, side })
        };
        let parts: Vec<&str> = text.split(',').collect();
        match kind {
            MoveKind::Finger1Plus => match parts[..] {
                [a, b] => Ok(MoveSite::Finger1Plus {
                    a: arc_side(a)?,
                    b: arc_side(b)?,
                }),
                _ => Err(bad()),
            },
            MoveKind::Finger1Minus => Ok(MoveSite::Finger1Minus { curve: curve(text)? }),
            MoveKind::Finger2Minus => Ok(MoveSite::Finger2Minus { curve: curve(text)? }),
            MoveKind::Finger2Plus => {
                let (s, x) = text.split_once('@').ok_or_else(bad)?;
                let arc = slot(s)?;
                let x = d.crossing_index(x).ok_or_else(bad)?;
                let through_finish = if d.crossing_at(d.next_index(arc)) == x {
                    true
                } else if d.crossing_at(arc) == x {
                    false
                } else {
                    return Err(bad());
                };
                Ok(MoveSite::Finger2Plus { arc, through_finish })
            }
            MoveKind::Saddle => match parts[..] {
                [a, b, ta, tb] => {
                    let (a, b, ta, tb) = (arc_side(a)?, arc_side(b)?, arc_side(ta)?, arc_side(tb)?);
                    if ta.arc != d.related(a.arc) || tb.arc != d.related(b.arc) {
                        return Err(bad());
                    }
                    Ok(MoveSite::Saddle(SaddleSite {
                        a,
                        b,
                        sister_a: ta.side,
                        sister_b: tb.side,
                    }))
                }
                _ => Err(bad()),
            },
        }
    }
}

/// All sites of moves of kind `k`, in a deterministic order. Minus sites
/// are only those whose removal is undone by the matching plus move.
pub fn find_sites(d: &Diagram, k: MoveKind) -> Result<Vec<MoveSite>> {
    d.ensure_valid()?;
    Ok(match k {
        MoveKind::Finger1Plus => finger::finger1_plus_sites(d)
            .into_iter()
            .filter(|&(a, b)| finger::finger1_plus(d, a, b).is_some())
            .map(|(a, b)| MoveSite::Finger1Plus { a, b })
            .collect(),
        MoveKind::Finger1Minus => finger::finger1_minus_candidates(d)
            .into_iter()
            .filter(|&c| finger::finger1_minus(d, c).is_some())
            .map(|curve| MoveSite::Finger1Minus { curve })
            .collect(),
        MoveKind::Finger2Plus => finger::finger2_plus_sites(d)
            .into_iter()
            .filter(|&(arc, t)| finger::finger2_plus(d, arc, t).is_some())
            .map(|(arc, through_finish)| MoveSite::Finger2Plus { arc, through_finish })
            .collect(),
        MoveKind::Finger2Minus => finger::finger2_minus_candidates(d)
            .into_iter()
            .filter(|&c| finger::finger2_minus(d, c).is_some())
            .map(|curve| MoveSite::Finger2Minus { curve })
            .collect(),
        MoveKind::Saddle => saddle::saddle_sites(d)
            .into_iter()
            .filter(|&s| saddle::saddle(d, s).is_some_and(|r| r.is_valid()))
            .map(MoveSite::Saddle)
            .collect(),
    })
}

/// Applies a move. A finger move on a filling diagram must give a filling
/// diagram; a violation is reported as an internal inconsistency. A saddle
/// result is returned whether or not it is filling.
pub fn apply_move(d: &Diagram, s: &MoveSite) -> Result<Diagram> {
    d.ensure_valid()?;
    let stale = || Error::SiteStale(format!("{} site {:?} does not apply", s.kind(), s));
    let in_range = |c: usize| c < d.curve_count();
    let slot_ok = |s: Slot| in_range(s.curve) && s.index < d.len_of(s.curve);
    let r = match *s {
        MoveSite::Finger1Plus { a, b } if slot_ok(a.arc) && slot_ok(b.arc) => {
            finger::finger1_plus(d, a, b)
        }
        MoveSite::Finger1Minus { curve } if in_range(curve) => finger::finger1_minus(d, curve),
        MoveSite::Finger2Plus { arc, through_finish } => finger::finger2_plus(d, arc, through_finish),
        MoveSite::Finger2Minus { curve } if in_range(curve) => finger::finger2_minus(d, curve),
        MoveSite::Saddle(site) if slot_ok(site.a.arc) && slot_ok(site.b.arc) => {
            if !saddle::saddle_sites(d).contains(&site) {
                return Err(stale());
            }
            saddle::saddle(d, site)
        }
        _ => None,
    }
    .ok_or_else(stale)?;
    if !r.is_valid() {
        return Err(Error::Internal(format!("{} produced an invalid diagram: {}", s.kind(), r.validation())));
    }
    if s.kind().is_finger() && is_filling(d)?.is_filling && !fills_like(d, &r)? {
        return Err(Error::Internal(format!("{} broke fillingness", s.kind())));
    }
    Ok(r)
}

/// Whether `r` is a filling diagram of the same surface as `d`.
pub(crate) fn fills_like(d: &Diagram, r: &Diagram) -> Result<bool> {
    if !r.is_connected() || surface_of(r)?.genus != surface_of(d)?.genus {
        return Ok(false);
    }
    Ok(is_filling(r)?.is_filling)
}

/// Whether applying the move gives a filling diagram of the same surface.
pub fn is_filling_preserving(d: &Diagram, s: &MoveSite) -> Result<bool> {
    let r = apply_move(d, s)?;
    fills_like(d, &r)
}

/// One step of a path: a move and its site descriptor, read in the
/// canonical relabelling of the current diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MoveStep {
    pub kind: MoveKind,
    pub site: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MovePath {
    pub steps: Vec<MoveStep>,
}

impl MovePath {
    /// Applies the steps from `start`, returning the canonical end diagram.
    pub fn replay(&self, start: &Diagram) -> Result<Diagram> {
        let mut cur = canonical::canonical_diagram(start);
        for step in &self.steps {
            let site = MoveSite::parse(&cur, step.kind, &step.site)?;
            cur = canonical::canonical_diagram(&apply_move(&cur, &site)?);
        }
        Ok(cur)
    }

    /// One move per line: `<kind> <site>`.
    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{} {}\n", s.kind, s.site)).collect()
    }

    pub fn from_text(text: &str) -> Result<MovePath> {
        let mut steps = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (kind, site) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::BadSite(format!("malformed path line `{line}`")))?;
            steps.push(MoveStep {
                kind: kind.parse()?,
                site: site.trim().to_string(),
            });
        }
        Ok(MovePath { steps })
    }
}
