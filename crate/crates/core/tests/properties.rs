mod common;

use jdiagram::algebra::{abelianization, manifold_group};
use jdiagram::diagram::sister_swapped;
use jdiagram::gclass::is_realizable;
use jdiagram::manifold::is_filling;
use jdiagram::moves::canonical::canonical_form;
use jdiagram::moves::{apply_move, find_sites, MoveKind};
use jdiagram::{parse, serialize, triplets, Diagram};
use proptest::prelude::*;

fn fixture() -> impl Strategy<Value = Diagram> {
    prop::sample::select(common::FIXTURES.to_vec()).prop_map(common::load)
}

/// Applies up to `picks.len()` filling-preserving finger moves chosen by
/// `picks`, keeping at most eight triplets.
fn walk(d: &Diagram, picks: &[(usize, usize)]) -> Diagram {
    let mut d = d.clone();
    for &(k, i) in picks {
        let kind = [MoveKind::Finger1Plus, MoveKind::Finger1Minus, MoveKind::Finger2Plus, MoveKind::Finger2Minus][k % 4];
        let p = triplets(&d).unwrap().len() as i64;
        if p + kind.delta_p() > 8 {
            continue;
        }
        let sites = find_sites(&d, kind).unwrap();
        if sites.is_empty() {
            continue;
        }
        d = apply_move(&d, &sites[i % sites.len()]).unwrap();
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn text_round_trip(d in fixture(), picks in prop::collection::vec((0usize..4, 0usize..64), 0..4)) {
        let d = walk(&d, &picks);
        let text = serialize(&d);
        let back = parse(&text).unwrap();
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(canonical_form(&back), canonical_form(&d));
    }

    #[test]
    fn canonical_form_ignores_presentation(d in fixture(), shift in 0usize..16, picks in prop::collection::vec((0usize..4, 0usize..64), 0..3)) {
        let d = walk(&d, &picks);
        let form = canonical_form(&d);
        prop_assert_eq!(canonical_form(&d.rotated(shift)), form.clone());
        prop_assert_eq!(canonical_form(&d.mirrored()), form.clone());
        prop_assert_eq!(canonical_form(&sister_swapped(&d)), form);
    }

    #[test]
    fn finger_moves_keep_parity_and_h1(d in fixture(), picks in prop::collection::vec((0usize..4, 0usize..64), 1..5)) {
        let h1 = abelianization(&manifold_group(&d).unwrap());
        let e = walk(&d, &picks);
        prop_assert_eq!(e.crossing_count() % 3, 0);
        let p0 = triplets(&d).unwrap().len() as i64;
        let p1 = triplets(&e).unwrap().len() as i64;
        prop_assert_eq!((p1 - p0).rem_euclid(2), 0);
        prop_assert_eq!(abelianization(&manifold_group(&e).unwrap()), h1);
        prop_assert!(is_realizable(&e).unwrap());
        let v = is_filling(&e).unwrap();
        prop_assert!(v.is_filling);
        prop_assert!(v.per_region_euler.iter().all(|&x| x == 2));
    }

    #[test]
    fn site_lists_are_deterministic(d in fixture(), picks in prop::collection::vec((0usize..4, 0usize..64), 0..3)) {
        let d = walk(&d, &picks);
        for kind in MoveKind::ALL {
            prop_assert_eq!(find_sites(&d, kind).unwrap(), find_sites(&d, kind).unwrap());
            let e = parse(&serialize(&d)).unwrap();
            prop_assert_eq!(find_sites(&e, kind).unwrap().len(), find_sites(&d, kind).unwrap().len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parser_never_panics(text in "(jdg 1\n)?((curve|sister|sign|genus|#)[ a-zA-Z0-9_*:+-]{0,16}\n){0,8}") {
        if let Err(e) = parse(&text) {
            prop_assert!(!e.code.as_str().is_empty());
        }
    }

    #[test]
    fn parser_never_panics_on_noise(text in "\\PC{0,64}") {
        let _ = parse(&text);
    }
}
