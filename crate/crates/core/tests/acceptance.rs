//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use jdiagram::algebra::{abelianization, coset_enumeration, manifold_group, CosetResult};
use jdiagram::enumerate::enumerate_diagrams;
use jdiagram::gclass::{gclass_partition, singular_components};
use jdiagram::manifold::is_filling;
use jdiagram::moves::canonical::canonical_form;
use jdiagram::moves::duplicate::{duplicate, prepare_duplicate};
use jdiagram::moves::search::search_equivalent;
use jdiagram::moves::{apply_move, find_sites, MoveKind};
use jdiagram::surface::surface_of;
use jdiagram::{triplets, validate, Diagram, Error};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn h1_string(d: &Diagram) -> Result<String, String> {
    Ok(abelianization(&manifold_group(d).map_err(err)?).to_string())
}

fn enumerated() -> Vec<Diagram> {
    (1..=2).flat_map(enumerate_diagrams).collect()
}

fn c1_johansson() -> Check {
    let d = common::load("johansson_s3");
    ensure(validate(&d).is_ok(), "validate")?;
    let p = triplets(&d).map_err(err)?.len();
    ensure(p == 2, format!("p = {p}"))?;
    let g = surface_of(&d).map_err(err)?.genus;
    ensure(g == 0, format!("genus {g}"))?;
    let part = gclass_partition(&d).map_err(err)?;
    ensure(part.conflicts().is_empty() && part.class_count() == 2, "two G-classes, realizable")?;
    let v = is_filling(&d).map_err(err)?;
    ensure(v.is_filling, "fills")?;
    ensure(v.region_count == 4, format!("region_count {}", v.region_count))?;
    ensure(v.per_region_euler.iter().all(|&e| e == 2), "region boundary chi")?;
    let group = manifold_group(&d).map_err(err)?;
    ensure(abelianization(&group).is_trivial(), "H1 trivial")?;
    let order = coset_enumeration(&group, 10_000);
    ensure(order == CosetResult::Order(1), format!("coset enumeration {order:?}"))?;
    Ok("p=2 genus=0 classes=2 regions=4 chi=[2,2,2,2] H1=0 order=1".into())
}

fn c2_s2xs1() -> Check {
    let d = common::load("s2xs1");
    let v = is_filling(&d).map_err(err)?;
    ensure(v.is_filling, "fills")?;
    let h = abelianization(&manifold_group(&d).map_err(err)?);
    ensure(h.free_rank == 1 && h.torsion.is_empty(), format!("H1 = {h}"))?;
    let p = triplets(&d).map_err(err)?.len();
    ensure(v.region_count == p + 2, format!("regions {} with p = {p}", v.region_count))?;
    Ok(format!("H1={h} p={p} regions={}", v.region_count))
}

fn c3_torus() -> Check {
    let d = common::load("s333_torus");
    let s = surface_of(&d).map_err(err)?;
    ensure(s.genus == 1, format!("genus {}", s.genus))?;
    let p = triplets(&d).map_err(err)?.len();
    ensure(p == 1, format!("p = {p}"))?;
    let v = is_filling(&d).map_err(err)?;
    ensure(v.region_count == 1, format!("regions {}", v.region_count))?;
    let h = abelianization(&manifold_group(&d).map_err(err)?);
    let torsion: Vec<i128> = h.torsion.iter().map(|t| i128::try_from(t.clone()).unwrap()).collect();
    let oracle = common::seifert_h1(-1, &[(3, 1), (3, 1), (3, 1)], false);
    ensure((h.free_rank, torsion) == oracle, format!("H1 = {h}, oracle {oracle:?}"))?;
    Ok(format!("genus=1 p=1 regions=1 H1={h} (Seifert oracle)"))
}

fn c4_duplication() -> Check {
    let mut notes = Vec::new();
    for name in ["johansson_s3", "s2xs1"] {
        let d = common::load(name);
        let (d2, t) = prepare_duplicate(&d).map_err(err)?;
        let p2 = triplets(&d2).map_err(err)?.len();
        let dup = duplicate(&d2, &t).map_err(err)?;
        let pd = triplets(&dup).map_err(err)?.len();
        ensure(pd == 8 * p2 - 2, format!("{name}: {pd} triplets, p' = {p2}"))?;
        ensure(is_filling(&dup).map_err(err)?.is_filling, format!("{name}: not filling"))?;
        ensure(h1_string(&dup)? == h1_string(&d)?, format!("{name}: H1 changed"))?;
        notes.push(format!("{name}: p'={p2} dup={pd}"));
    }
    Ok(notes.join(", "))
}

/// A seeded random walk of moves from a fixture, run until `applications`
/// finger moves have been applied.
fn walk(name: &str, seed: u64, applications: usize) -> Result<String, String> {
    let start = common::load(name);
    let genus = surface_of(&start).map_err(err)?.genus;
    let h1 = h1_string(&start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = start.clone();
    let mut applied = 0;
    let mut saddles = 0;
    let mut round_trips = 0;
    let mut attempts = 0;
    while applied < applications {
        attempts += 1;
        ensure(attempts < 100 * applications, format!("{name}: walk stuck"))?;
        let p = triplets(&cur).map_err(err)?.len();
        let kinds: Vec<MoveKind> = MoveKind::ALL
            .into_iter()
            .filter(|k| p as i64 + k.delta_p() <= 8 && p as i64 + k.delta_p() >= 1)
            .collect();
        let kind = *kinds.choose(&mut rng).expect("some kind");
        let sites = find_sites(&cur, kind).map_err(err)?;
        let Some(site) = sites.choose(&mut rng) else {
            if rng.gen_bool(0.05) {
                cur = start.clone();
            }
            continue;
        };
        let r = apply_move(&cur, site).map_err(|e| format!("{name}: {kind}: {e}"))?;
        if kind.is_finger() {
            applied += 1;
        } else {
            saddles += 1;
        }
        let pr = triplets(&r).map_err(err)?.len();
        ensure(pr % 2 == p % 2, format!("{name}: {kind} changed parity"))?;
        ensure(pr as i64 == p as i64 + kind.delta_p(), format!("{name}: {kind} changed p by {}", pr as i64 - p as i64))?;
        let fills = r.is_connected()
            && surface_of(&r).map(|s| s.genus).ok() == Some(genus)
            && is_filling(&r).map(|v| v.is_filling).unwrap_or(false);
        if kind.is_finger() {
            ensure(fills, format!("{name}: {kind} broke fillingness"))?;
        }
        if matches!(kind, MoveKind::Finger1Plus | MoveKind::Finger2Plus) {
            let target = canonical_form(&cur);
            let back = find_sites(&r, kind.inverse())
                .map_err(err)?
                .iter()
                .any(|s| apply_move(&r, s).is_ok_and(|b| canonical_form(&b) == target));
            ensure(back, format!("{name}: {kind} has no inverse"))?;
            round_trips += 1;
        }
        if fills {
            ensure(h1_string(&r)? == h1, format!("{name}: {kind} changed H1"))?;
            cur = r;
        }
    }
    Ok(format!("{name}: {applied} finger moves, {saddles} saddles, {round_trips} round trips"))
}

fn c5_moves() -> Check {
    let mut notes = Vec::new();
    for (k, name) in common::FIXTURES.iter().enumerate() {
        notes.push(walk(name, 2024 + k as u64, 100)?);
    }
    Ok(notes.join("; "))
}

fn c6_lemma_equivalence() -> Check {
    let mut compared = 0;
    let mut diagrams: Vec<Diagram> = common::FIXTURES.iter().map(|n| common::load(n)).collect();
    diagrams.extend(enumerated());
    for d in &diagrams {
        if !gclass_partition(d).map_err(err)?.conflicts().is_empty() {
            continue;
        }
        match is_filling(d) {
            Ok(v) if v.realizable && v.fills_surface && v.region_count > 0 => {
                ensure(v.is_filling == v.counting_criterion, "criteria disagree")?;
                compared += 1;
            }
            Ok(_) => {}
            Err(Error::Internal(m)) => return Err(m),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("{compared} realizable diagrams filling their surface, 0 disagreements"))
}

fn is_simple(d: &Diagram, c: usize) -> bool {
    (0..d.crossing_count()).all(|x| d.strands(x).iter().any(|s| s.curve != c))
}

fn c7_two_curves() -> Check {
    let (mut simple, mut non_simple, mut orders) = (0, 0, 0);
    for d in enumerated() {
        if d.curve_count() != 2 || !d.is_connected() {
            continue;
        }
        if !gclass_partition(&d).map_err(err)?.conflicts().is_empty() || surface_of(&d).map_err(err)?.genus != 0 {
            continue;
        }
        ensure(is_filling(&d).map_err(err)?.is_filling, "two-curve diagram not filling")?;
        let (a, b) = (is_simple(&d, 0), is_simple(&d, 1));
        ensure(a == b, "one curve simple, the other not")?;
        let group = manifold_group(&d).map_err(err)?;
        let h = abelianization(&group).to_string();
        let (want_h, want_order) = if a { ("Z/3", 3) } else { ("0", 1) };
        ensure(h == want_h, format!("H1 = {h}, simple = {a}"))?;
        if let CosetResult::Order(n) = coset_enumeration(&group, 10_000) {
            ensure(n == want_order, format!("order {n}, simple = {a}"))?;
            orders += 1;
        }
        if a {
            simple += 1;
        } else {
            non_simple += 1;
        }
    }
    ensure(simple + non_simple > 0, "no two-curve diagrams found")?;
    Ok(format!("{simple} simple, {non_simple} non-simple, {orders} group orders confirmed"))
}

fn c8_snf() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let got: Vec<i128> = jdiagram::algebra::smith_normal_form(&jdiagram::algebra::IntMatrix::from_rows(&m))
            .iter()
            .map(|x| i128::try_from(x.clone()).unwrap())
            .collect();
        ensure(got == common::invariant_factors_by_minors(&m), format!("mismatch on {m:?}"))?;
        ensure(got.windows(2).all(|w| w[1] % w[0] == 0), format!("divisibility on {m:?}"))?;
        if r == c {
            let det = common::determinant(&m).abs();
            if det != 0 {
                ensure(got.iter().product::<i128>() == det, format!("determinant on {m:?}"))?;
            }
        }
    }
    Ok("500 matrices".into())
}

fn c9_gclass_count() -> Check {
    let mut checked = 0;
    let mut diagrams: Vec<Diagram> = common::FIXTURES.iter().map(|n| common::load(n)).collect();
    diagrams.extend(enumerated());
    for d in &diagrams {
        let part = gclass_partition(d).map_err(err)?;
        if !part.conflicts().is_empty() {
            continue;
        }
        let k = singular_components(d).map_err(err)?;
        ensure(part.class_count() == 2 * k, format!("{} classes, {k} components", part.class_count()))?;
        checked += 1;
    }
    Ok(format!("{checked} realizable diagrams"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_jdg")).args(args).output().expect("run jdg");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn c10_determinism() -> Check {
    let paths: Vec<String> = common::FIXTURES.iter().map(|n| common::fixture_path(n).display().to_string()).collect();
    let mut runs = 0;
    for f in &paths {
        let mut commands: Vec<Vec<&str>> = ["validate", "surface", "realizable", "gclasses", "regions", "fills"]
            .iter()
            .map(|c| vec![*c, f.as_str()])
            .collect();
        commands.push(vec!["group", f]);
        commands.push(vec!["group", f, "--abelianize"]);
        commands.push(vec!["group", f, "--mod2"]);
        commands.push(vec!["group", f, "--enumerate", "10000"]);
        for k in MoveKind::ALL {
            commands.push(vec!["moves", f, "--kind", k.as_str(), "--list"]);
        }
        commands.push(vec!["duplicate", f]);
        for g in &paths {
            commands.push(vec!["search", f, g, "--max-triplets", "4", "--max-steps", "2"]);
        }
        for c in commands {
            for json in [false, true] {
                let mut args = c.clone();
                if json {
                    args.push("--json");
                }
                let a = cli(&args);
                let b = cli(&args);
                ensure(a == b, format!("`{}` differs between runs", args.join(" ")))?;
                runs += 1;
            }
        }
    }
    let a = common::load("s2xs1");
    let site = find_sites(&a, MoveKind::Finger1Plus).map_err(err)?[3];
    let b = apply_move(&a, &site).map_err(err)?;
    let search = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| search_equivalent(&b, &a, 6, 3))
            .map_err(err)
    };
    let one = search(1)?;
    let many = search(4)?;
    ensure(one == many, "search differs between 1 and 4 threads")?;
    Ok(format!("{runs} report pairs byte-identical; search identical on 1 and 4 threads"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 johansson_s3 fixture", c1_johansson),
        ("2 s2xs1 fixture", c2_s2xs1),
        ("3 s333_torus fixture", c3_torus),
        ("4 duplication", c4_duplication),
        ("5 move properties", c5_moves),
        ("6 fillingness criteria agree", c6_lemma_equivalence),
        ("7 two-curve diagrams", c7_two_curves),
        ("8 Smith normal form oracle", c8_snf),
        ("9 G-class count", c9_gclass_count),
        ("10 determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
