use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jdiagram::algebra::{abelianization, coset_enumeration, manifold_group, z2_cover_exists};
use jdiagram::diagram::{triplets, Triplet};
use jdiagram::gclass::{gclass_partition, sheet_assignment, singular_components, Side};
use jdiagram::manifold::{boundary_euler, filling_by_index2, is_filling, region_complex};
use jdiagram::moves::duplicate::{duplicate, prepare_duplicate};
use jdiagram::moves::search::{search_equivalent, SearchOutcome};
use jdiagram::moves::{apply_move, find_sites, MoveKind, MovePath, MoveSite};
use jdiagram::report::ReportDocument;
use jdiagram::surface::surface_of;
use jdiagram::{parse, serialize, validate, Diagram, Error};

#[derive(Parser)]
#[command(name = "jdg", version, about = "Johansson diagrams of Dehn surfaces")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural rules of a diagram file.
    Validate { file: String },
    /// Euler characteristic and genus of the surface the curves fill.
    Surface { file: String },
    /// Realizability by the G-class criterion.
    Realizable { file: String },
    /// The G-classes of neighbouring curves.
    Gclasses { file: String },
    /// Regions of the complement of the surface.
    Regions { file: String },
    /// Fillingness verdict.
    Fills { file: String },
    /// Group presentation and invariants.
    Group(GroupArgs),
    /// List or apply diagram moves.
    Moves(MovesArgs),
    /// Duplicate a filling diagram.
    Duplicate {
        file: String,
        /// Triplet to pipe at, named by any of its crossings.
        #[arg(long)]
        at: Option<String>,
    },
    /// Bounded search for a path of filling-preserving moves.
    Search {
        file1: String,
        file2: String,
        #[arg(long)]
        max_triplets: usize,
        #[arg(long)]
        max_steps: usize,
    },
    /// Replay a move path file.
    Replay { file: String, path: String },
}

#[derive(Args)]
#[group(multiple = false)]
struct GroupMode {
    #[arg(long)]
    abelianize: bool,
    #[arg(long)]
    mod2: bool,
    /// Coset enumeration with at most N cosets.
    #[arg(long, value_name = "N")]
    enumerate: Option<usize>,
}

#[derive(Args)]
struct GroupArgs {
    file: String,
    #[command(flatten)]
    mode: GroupMode,
}

#[derive(Args)]
struct MovesArgs {
    file: String,
    #[arg(long, value_parser = parse_kind)]
    kind: MoveKind,
    #[arg(long, conflicts_with = "apply")]
    list: bool,
    #[arg(long, value_name = "SITE")]
    apply: Option<String>,
}

fn parse_kind(s: &str) -> Result<MoveKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure together with the exit code it maps to.
struct Failure {
    code: &'static str,
    message: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
            exit: if e.is_internal() { 2 } else { 1 },
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &str) -> Result<Diagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: "io-error",
        message: format!("{path}: {e}"),
        exit: 1,
    })?;
    Ok(parse(&text).map_err(Error::from)?)
}

fn load_valid(path: &str) -> Result<Diagram, Failure> {
    let d = load(path)?;
    triplets(&d)?;
    Ok(d)
}

fn side_name(d: &Diagram, c: usize, s: Side) -> String {
    format!("{}:{}", d.curves()[c].name, if s == Side::Left { 'L' } else { 'R' })
}

fn triplet_names(d: &Diagram, t: &Triplet) -> Vec<String> {
    t.crossings.iter().map(|&x| d.crossings()[x].name.clone()).collect()
}

fn run(cmd: &Command, r: &mut ReportDocument) -> Outcome {
    match cmd {
        Command::Validate { file } => {
            let d = load(file)?;
            let v = validate(&d);
            r.add("valid", v.is_ok());
            r.add("violations", &v.violations);
            r.add("curve_count", d.curve_count());
            r.add("crossing_count", d.crossing_count());
            if v.is_ok() {
                r.add("triplet_count", triplets(&d)?.len());
            }
        }
        Command::Surface { file } => {
            let d = load_valid(file)?;
            let s = surface_of(&d)?;
            r.add("euler_characteristic", s.euler_characteristic);
            r.add("genus", s.genus);
            r.add("vertex_count", s.vertex_count);
            r.add("edge_count", s.edge_count);
            r.add("face_count", s.face_count);
        }
        Command::Realizable { file } => {
            let d = load_valid(file)?;
            let p = gclass_partition(&d)?;
            let conflicts: Vec<&str> = p.conflicts().iter().map(|&c| d.curves()[c].name.as_str()).collect();
            r.add("realizable", conflicts.is_empty());
            r.add("class_count", p.class_count());
            r.add("conflicting_curves", conflicts);
            r.add("singular_components", singular_components(&d)?);
        }
        Command::Gclasses { file } => {
            let d = load_valid(file)?;
            let p = match sheet_assignment(&d) {
                Ok(p) => p,
                Err(Error::NotRealizable | Error::NotTwoClasses(_)) => gclass_partition(&d)?,
                Err(e) => return Err(e.into()),
            };
            let classes: Vec<Vec<String>> = p
                .classes
                .iter()
                .map(|c| c.iter().map(|s| side_name(&d, s.curve, s.side)).collect())
                .collect();
            r.add("class_count", p.class_count());
            r.add("classes", classes);
            r.add("tags", &p.tags);
        }
        Command::Regions { file } => {
            let d = load_valid(file)?;
            let rc = region_complex(&d)?;
            let euler: Vec<i64> = (0..rc.region_count).map(|k| boundary_euler(&rc, k)).collect();
            let sizes: Vec<usize> = (0..rc.region_count).map(|k| rc.face_sides_in(k)).collect();
            r.add("region_count", rc.region_count);
            r.add("per_region_euler", euler);
            r.add("face_sides_per_region", sizes);
            r.add("quadrant_count", rc.quadrants.len());
            r.add("octant_count", rc.octants.len());
        }
        Command::Fills { file } => {
            let d = load_valid(file)?;
            let v = is_filling(&d)?;
            r.add("is_filling", v.is_filling);
            r.add("realizable", v.realizable);
            r.add("fills_surface", v.fills_surface);
            r.add("region_count", v.region_count);
            r.add("per_region_euler", &v.per_region_euler);
            r.add("counting_criterion", v.counting_criterion);
            r.add("index2_criterion", filling_by_index2(&d)?);
        }
        Command::Group(args) => {
            let d = load_valid(&args.file)?;
            let g = manifold_group(&d)?;
            let kind = if surface_of(&d)?.genus == 0 { "diagram" } else { "cellular" };
            r.add("presentation", kind);
            let m = &args.mode;
            if m.abelianize {
                let h = abelianization(&g);
                r.add("h1", h.to_string());
                r.add("invariants", &h);
            } else if m.mod2 {
                let h = abelianization(&g);
                let even = h.torsion.iter().filter(|t| (*t % 2u32) == 0u32.into()).count();
                r.add("h1_mod2_dimension", h.free_rank + even);
                r.add("index2_subgroup_exists", z2_cover_exists(&g));
            } else if let Some(n) = m.enumerate {
                r.add("max_cosets", n);
                r.add("coset_enumeration", coset_enumeration(&g, n));
            } else {
                let s = g.simplified();
                r.add("generators", &s.generators);
                let rels: Vec<String> = s.relators.iter().map(|w| s.word_string(w)).collect();
                r.add("relators", rels);
            }
        }
        Command::Moves(args) => {
            let d = load_valid(&args.file)?;
            r.add("kind", args.kind);
            match &args.apply {
                None => {
                    let sites: Vec<String> = find_sites(&d, args.kind)?.iter().map(|s| s.describe(&d)).collect();
                    r.add("site_count", sites.len());
                    r.add("sites", sites);
                }
                Some(text) => {
                    let site = MoveSite::parse(&d, args.kind, text)?;
                    let out = apply_move(&d, &site)?;
                    let before = is_filling(&d)?.is_filling;
                    let after = is_filling(&out).map(|v| v.is_filling).unwrap_or(false);
                    let same_surface = surface_of(&out).map(|s| s.genus).ok() == Some(surface_of(&d)?.genus);
                    r.add("site", text);
                    r.add("triplet_count", triplets(&out)?.len());
                    r.add("is_filling", after && same_surface);
                    r.add("filling_preserving", !before || (after && same_surface));
                    r.add("diagram", serialize(&out));
                }
            }
        }
        Command::Duplicate { file, at } => {
            let d = load_valid(file)?;
            let (base, t) = match at {
                Some(name) => {
                    let x = d.crossing_index(name).ok_or_else(|| Error::BadSite(format!("unknown crossing `{name}`")))?;
                    let t = *triplets(&d)?.iter().find(|t| t.crossings.contains(&x)).expect("every crossing has a triplet");
                    (d.clone(), t)
                }
                None => prepare_duplicate(&d)?,
            };
            let out = duplicate(&base, &t)?;
            r.add("prepared", at.is_none());
            r.add("base_triplet_count", triplets(&base)?.len());
            r.add("at", triplet_names(&base, &t));
            r.add("triplet_count", triplets(&out)?.len());
            r.add("is_filling", is_filling(&out)?.is_filling);
            r.add("h1", abelianization(&manifold_group(&out)?).to_string());
            r.add("diagram", serialize(&out));
        }
        Command::Search {
            file1,
            file2,
            max_triplets,
            max_steps,
        } => {
            let (a, b) = (load_valid(file1)?, load_valid(file2)?);
            r.add("max_triplets", max_triplets);
            r.add("max_steps", max_steps);
            r.add("h1", [abelianization(&manifold_group(&a)?).to_string(), abelianization(&manifold_group(&b)?).to_string()]);
            match search_equivalent(&a, &b, *max_triplets, *max_steps)? {
                SearchOutcome::Path(path) => {
                    r.add("found", true);
                    r.add("length", path.steps.len());
                    r.add("path", path.to_text());
                }
                SearchOutcome::NotFound(reason) => {
                    r.add("found", false);
                    r.add("not_found", reason);
                }
            }
        }
        Command::Replay { file, path } => {
            let d = load_valid(file)?;
            let text = fs::read_to_string(path).map_err(|e| Failure {
                code: "io-error",
                message: format!("{path}: {e}"),
                exit: 1,
            })?;
            let p = MovePath::from_text(&text)?;
            let out = p.replay(&d)?;
            r.add("steps", p.steps.len());
            r.add("triplet_count", triplets(&out)?.len());
            r.add("is_filling", is_filling(&out)?.is_filling);
            r.add("diagram", serialize(&out));
        }
    }
    Ok(())
}

fn header(cmd: &Command) -> ReportDocument {
    match cmd {
        Command::Validate { file } => ReportDocument::new("validate", &[file]),
        Command::Surface { file } => ReportDocument::new("surface", &[file]),
        Command::Realizable { file } => ReportDocument::new("realizable", &[file]),
        Command::Gclasses { file } => ReportDocument::new("gclasses", &[file]),
        Command::Regions { file } => ReportDocument::new("regions", &[file]),
        Command::Fills { file } => ReportDocument::new("fills", &[file]),
        Command::Group(a) => ReportDocument::new("group", &[&a.file]),
        Command::Moves(a) => ReportDocument::new("moves", &[&a.file]),
        Command::Duplicate { file, .. } => ReportDocument::new("duplicate", &[file]),
        Command::Search { file1, file2, .. } => ReportDocument::new("search", &[file1, file2]),
        Command::Replay { file, path } => ReportDocument::new("replay", &[file, path]),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = header(&cli.command);
    let exit = match run(&cli.command, &mut report) {
        Ok(()) => 0,
        Err(f) => {
            report.fields.clear();
            report.add("error", f.code);
            report.add("message", &f.message);
            eprintln!("error: {}", f.message);
            f.exit
        }
    };
    let text = if cli.json { report.to_json() } else { report.to_text() };
    print!("{text}");
    ExitCode::from(exit)
}
