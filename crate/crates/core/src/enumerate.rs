//! Exhaustive generation of small valid diagrams.
//!
//! A diagram with `p` triplets is determined by the lengths of its sister
//! pairs (summing to `3p`), a partition of the `3p` pair positions into
//! triples, a choice of which curve of each pair lies on which sheet at
//! every triple point, and the crossing signs. Results are deduplicated up
//! to equivalence.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::diagram::{Crossing, Curve, Diagram, Sign};
use crate::moves::canonical::{canonical_diagram, canonical_form};

fn integer_partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        integer_partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

fn triple_partitions(items: &mut Vec<usize>, acc: &mut Vec<[usize; 3]>, out: &mut Vec<Vec<[usize; 3]>>) {
    if items.is_empty() {
        out.push(acc.clone());
        return;
    }
    let first = items.remove(0);
    for j in 0..items.len() {
        for k in j + 1..items.len() {
            let (b, c) = (items[j], items[k]);
            let mut rest: Vec<usize> = items
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j && i != k)
                .map(|(_, &v)| v)
                .collect();
            acc.push([first, b, c]);
            triple_partitions(&mut rest, acc, out);
            acc.pop();
        }
    }
    items.insert(0, first);
}

/// Builds one diagram. `lift` bit set means the sister curve takes the
/// first sheet of that branch.
fn assemble(lengths: &[usize], positions: &[(usize, usize)], triples: &[[usize; 3]], lift: u64, signs: u64) -> Diagram {
    let mut words: Vec<Vec<usize>> = lengths.iter().flat_map(|&l| [vec![usize::MAX; l], vec![usize::MAX; l]]).collect();
    let curve_on = |branch: usize, second: bool| {
        let (pair, _) = positions[branch];
        let flip = (lift >> branch) & 1 == 1;
        2 * pair + usize::from(flip != second)
    };
    let mut x = 0;
    for t in triples {
        // Branches A, B, C meet sheets (1,2), (2,3), (3,1) respectively;
        // the crossing on each sheet joins the two branches lying on it.
        let [a, b, c] = *t;
        let on_sheet = [[(a, false), (c, true)], [(a, true), (b, false)], [(b, true), (c, false)]];
        for sheet in on_sheet {
            for (branch, second) in sheet {
                let curve = curve_on(branch, second);
                words[curve][positions[branch].1] = x;
            }
            x += 1;
        }
    }
    let curves = words
        .into_iter()
        .enumerate()
        .map(|(i, visits)| Curve {
            name: if i % 2 == 0 {
                format!("a{}", i / 2 + 1)
            } else {
                format!("a{}*", i / 2 + 1)
            },
            visits,
        })
        .collect();
    let sister = (0..2 * lengths.len()).map(|i| Some(i ^ 1)).collect();
    let crossings = (0..x)
        .map(|k| Crossing {
            name: format!("P{}", k + 1),
            sign: Sign::from_bool((signs >> k) & 1 == 0),
        })
        .collect();
    Diagram::from_parts(curves, sister, crossings, None)
}

/// All valid diagrams with exactly `p` triplets, one per equivalence class,
/// in canonical labelling, sorted by canonical form.
pub fn enumerate_diagrams(p: usize) -> Vec<Diagram> {
    let n = 3 * p;
    let mut shapes = Vec::new();
    integer_partitions(n, n, &mut Vec::new(), &mut shapes);
    let mut jobs = Vec::new();
    for lengths in &shapes {
        let positions: Vec<(usize, usize)> = lengths
            .iter()
            .enumerate()
            .flat_map(|(pair, &l)| (0..l).map(move |i| (pair, i)))
            .collect();
        let mut tps = Vec::new();
        triple_partitions(&mut (0..n).collect(), &mut Vec::new(), &mut tps);
        // Exchanging the curves of a pair is an equivalence, so the first
        // branch of every pair keeps its default lift.
        let free: Vec<usize> = (0..n).filter(|&b| positions[b].1 != 0).collect();
        for triples in tps {
            for lift_bits in 0..(1u64 << free.len()) {
                let mut lift = 0;
                for (k, &b) in free.iter().enumerate() {
                    lift |= ((lift_bits >> k) & 1) << b;
                }
                jobs.push((lengths.clone(), positions.clone(), triples.clone(), lift));
            }
        }
    }
    let forms: Vec<(Vec<u8>, Diagram)> = jobs
        .par_iter()
        .flat_map_iter(|(lengths, positions, triples, lift)| {
            // Mirroring is an equivalence: the first crossing is positive.
            (0..(1u64 << (n - 1))).filter_map(move |s| {
                let d = assemble(lengths, positions, triples, *lift, s << 1);
                if d.is_valid() {
                    Some((canonical_form(&d), d))
                } else {
                    None
                }
            })
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out: Vec<(Vec<u8>, Diagram)> = forms
        .into_iter()
        .filter(|(f, _)| seen.insert(f.clone()))
        .map(|(f, d)| (f, canonical_diagram(&d)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, d)| d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_six() {
        let mut out = Vec::new();
        integer_partitions(6, 6, &mut Vec::new(), &mut out);
        assert_eq!(out.len(), 11);
    }

    #[test]
    fn triple_partition_count() {
        let mut out = Vec::new();
        triple_partitions(&mut (0..6).collect(), &mut Vec::new(), &mut out);
        assert_eq!(out.len(), 10);
    }

    #[test]
    fn one_triplet_diagrams_are_valid_and_distinct() {
        let ds = enumerate_diagrams(1);
        assert!(!ds.is_empty());
        let forms: HashSet<Vec<u8>> = ds.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), ds.len());
        assert!(ds.iter().all(|d| d.crossing_count() == 3 && d.is_valid()));
    }
}
