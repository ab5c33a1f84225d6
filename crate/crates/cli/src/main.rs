//! `gact`: batch front end. Reports go to stdout as JSON.
//!
//! Exit status: 0 when the checked property holds, 1 when it fails or the
//! answer is unknown, 2 on errors, budget exhaustion and bad usage.

use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gact::covering::{
    construct_covering, is_covering, lifting_criterion, CoveringMap, LiftOutcome, NotCovering, SubgroupSpec,
};
use gact::homotopy::{homotopic_bounded, pi0, pi1_presentation, HomotopyAnswer, HomotopyMode, Path};
use gact::io::{emit_action, frame_graph_dot, parse_action, parse_map, GridDocument, MorphismDocument};
use gact::morphism::{
    check_infimum_sufficiency, exponential_law, is_infimum, is_strong_infimum, is_z_normal, MorSpace,
};
use gact::{Budget, GlobalAction, Verdict};

#[derive(Parser)]
#[command(name = "gact", version, about = "Finite global actions: frames, morphism spaces, fundamental groups, coverings")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on the number of functions or indices an enumeration may visit.
    #[arg(long, global = true, default_value_t = Budget::default().functions)]
    budget: u64,
    /// Row width for the bounded homotopy search.
    #[arg(long, global = true, default_value_t = Budget::default().width)]
    width: usize,
    /// Cap on live cosets during coset enumeration.
    #[arg(long, global = true, default_value_t = Budget::default().cosets)]
    max_cosets: usize,
    /// Cap on visited rows in the bounded homotopy search.
    #[arg(long, global = true, default_value_t = 200_000)]
    max_states: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an action document.
    Validate { file: PathBuf },
    /// Indices at which a comma-separated point set is a frame.
    Frames { set: String, file: PathBuf },
    /// Path components.
    Pi0 { file: PathBuf },
    /// Presentation of the fundamental group.
    Pi1 {
        #[arg(long)]
        base: Option<String>,
        file: PathBuf,
    },
    /// Abelianization of the fundamental group.
    Abelian {
        #[arg(long)]
        base: Option<String>,
        file: PathBuf,
    },
    /// Bounded search for a homotopy between two paths.
    Homotopic {
        /// Path as comma-separated labels, optionally prefixed by `@offset:`.
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long, default_value = "fixed-end-point")]
        mode: HomotopyMode,
        file: PathBuf,
    },
    /// Validate a grid homotopy document against an action.
    Grid { grid: PathBuf, file: PathBuf },
    /// Decide whether a map document is a covering.
    CheckCovering { file: PathBuf },
    /// Lift a path through a covering.
    LiftPath {
        #[arg(long)]
        path: String,
        /// Start of the lift, a point of the covering space.
        #[arg(long)]
        start: String,
        cover: PathBuf,
    },
    /// Lift a map through a covering or name an obstructing generator.
    LiftCriterion {
        /// Map document `Z -> X` whose `base` is the source base point.
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        start: String,
        cover: PathBuf,
    },
    /// Build the covering attached to a subgroup of the fundamental group.
    Cover {
        #[arg(long)]
        base: String,
        /// Comma-separated generating words such as `g^2,g1 g2^-1`.
        #[arg(long, default_value = "")]
        subgroup: String,
        file: PathBuf,
    },
    /// Materialize the morphism space between two actions.
    Morspace {
        source: PathBuf,
        target: PathBuf,
        /// Print the space as an action document instead of a summary.
        #[arg(long)]
        emit: bool,
    },
    /// Check the exponential law for three actions.
    Explaw { x: PathBuf, y: PathBuf, z: PathBuf },
    /// Whether postcomposition with a map is a morphism of morphism spaces.
    Normality {
        #[arg(long)]
        probe: PathBuf,
        map: PathBuf,
    },
    /// Infimum conditions.
    Infimum {
        #[arg(long)]
        strong: bool,
        /// Comma-separated index names for the plain condition.
        #[arg(long, default_value = "")]
        delta: String,
        file: PathBuf,
    },
    /// Frame graph in Graphviz format.
    Dot { file: PathBuf },
    /// Print a bundled fixture as an action document.
    Fixture { name: String },
}

enum Outcome {
    Holds(Value),
    Fails(Value),
    Text(String),
}

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_action(path: &FsPath) -> Result<GlobalAction> {
    parse_action(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn point(a: &GlobalAction, label: &str) -> Result<usize> {
    a.point_id(label).ok_or_else(|| anyhow!("unknown point '{label}'"))
}

fn labels(a: &GlobalAction, ps: &[usize]) -> Vec<String> {
    ps.iter().map(|&p| a.label(p).to_string()).collect()
}

fn index_names(a: &GlobalAction, ix: &[usize]) -> Vec<String> {
    ix.iter().map(|&i| a.index(i).name.clone()).collect()
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_path(a: &GlobalAction, s: &str) -> Result<Path> {
    let (offset, rest) = match s.strip_prefix('@') {
        Some(r) => {
            let (o, body) = r.split_once(':').ok_or_else(|| anyhow!("expected '@offset:points'"))?;
            (o.trim().parse::<i64>().context("path offset")?, body)
        }
        None => (0, s),
    };
    let points = split_list(rest).map(|l| point(a, l)).collect::<Result<Vec<_>>>()?;
    Ok(Path::new(offset, points)?)
}

fn path_json(a: &GlobalAction, p: &Path) -> Value {
    json!({ "offset": p.offset(), "points": labels(a, p.points()) })
}

fn base_point(a: &GlobalAction, base: &Option<String>) -> Result<usize> {
    match base {
        Some(l) => point(a, l),
        None => (0..a.point_count()).find(|&x| !a.containing(x).is_empty()).ok_or_else(|| anyhow!("no covered point")),
    }
}

fn verdict<C>(v: Verdict<C>, report: impl FnOnce(Option<C>) -> Value) -> Outcome {
    match v {
        Verdict::Holds => Outcome::Holds(report(None)),
        Verdict::Fails(c) => Outcome::Fails(report(Some(c))),
    }
}

fn not_covering_json(y: &GlobalAction, x: &GlobalAction, e: &NotCovering) -> Value {
    match e {
        NotCovering::NotMorphism(c) => json!({
            "reason": "not a morphism",
            "index": y.index(c.index).name,
            "orbit": labels(y, &c.orbit),
            "image": labels(x, &c.image),
        }),
        NotCovering::Failed { star, lift } => json!({
            "reason": "not a covering",
            "star": format!("{star:?}"),
            "frame": labels(x, &lift.frame),
            "fiber_point": y.label(lift.fiber_point),
            "lifts": lift.lifts.iter().map(|l| labels(y, l)).collect::<Vec<_>>(),
        }),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let b = &cli.budget;
    Ok(match cli.command {
        Command::Validate { file } => {
            let a = load_action(&file)?;
            let summary = json!({ "points": a.point_count(), "indices": a.index_count() });
            verdict(a.validate(), |v| match v {
                None => json!({ "valid": true, "summary": summary }),
                Some(v) => json!({ "valid": false, "clause": v.clause(), "violation": v.to_string() }),
            })
        }
        Command::Frames { set, file } => {
            let a = load_action(&file)?;
            let s = split_list(&set).map(|l| point(&a, l)).collect::<Result<Vec<_>>>()?;
            let found = a.frame_indices(&s)?;
            let report = json!({
                "set": labels(&a, &s),
                "frame": !found.is_empty(),
                "witness": found.first().map(|&i| a.index(i).name.clone()),
                "indices": index_names(&a, &found),
            });
            if found.is_empty() { Outcome::Fails(report) } else { Outcome::Holds(report) }
        }
        Command::Pi0 { file } => {
            let a = load_action(&file)?;
            let comps = pi0(&a);
            Outcome::Holds(json!({
                "count": comps.len(),
                "components": comps.iter().map(|c| labels(&a, c)).collect::<Vec<_>>(),
            }))
        }
        Command::Pi1 { base, file } => {
            let a = load_action(&file)?;
            let p = pi1_presentation(&a, base_point(&a, &base)?)?;
            let rels = p.nontrivial_relations();
            Outcome::Holds(json!({
                "base": a.label(p.base),
                "generators": p.names,
                "relations": rels.iter().map(|r| p.format_word(r)).collect::<Vec<_>>(),
                "summary": format!(
                    "{} generator{}, {} relation{}",
                    p.generator_count(),
                    if p.generator_count() == 1 { "" } else { "s" },
                    rels.len(),
                    if rels.len() == 1 { "" } else { "s" },
                ),
                "generator_loops": (0..p.generator_count())
                    .map(|g| p.word_to_loop(&gact::homotopy::Word::letter(g)).map(|l| labels(&a, l.points())))
                    .collect::<Result<Vec<_>, _>>()?,
            }))
        }
        Command::Abelian { base, file } => {
            let a = load_action(&file)?;
            let p = pi1_presentation(&a, base_point(&a, &base)?)?;
            let inv = p.abelianization();
            Outcome::Holds(json!({
                "free_rank": inv.free_rank(),
                "torsion": inv.torsion(),
                "trivial": inv.is_trivial(),
                "summary": format!("free rank {}", inv.free_rank()),
            }))
        }
        Command::Homotopic { first, second, mode, file } => {
            let a = load_action(&file)?;
            let (p, q) = (parse_path(&a, &first)?, parse_path(&a, &second)?);
            match homotopic_bounded(&a, &p, &q, b.width, mode, b.max_states)? {
                HomotopyAnswer::Yes(h) => Outcome::Holds(json!({
                    "answer": "yes",
                    "certificate": GridDocument::from_grid(&a, &h),
                })),
                HomotopyAnswer::Unknown => Outcome::Fails(json!({ "answer": "unknown", "width": b.width })),
            }
        }
        Command::Grid { grid, file } => {
            let a = load_action(&file)?;
            let doc: GridDocument = serde_json::from_str(&read(&grid)?)?;
            let h = doc.to_grid(&a)?;
            verdict(h.validate(&a), |v| match v {
                None => json!({ "valid": true, "init": path_json(&a, h.init()), "term": path_json(&a, h.term()) }),
                Some(v) => json!({ "valid": false, "violation": format!("{v:?}") }),
            })
        }
        Command::CheckCovering { file } => {
            let m = parse_map(&read(&file)?)?;
            match is_covering(&m.source, &m.target, &m.map)? {
                Ok(c) => Outcome::Holds(json!({
                    "covering": true,
                    "fibers": (0..c.target.point_count()).map(|x| c.fiber(x).len()).collect::<Vec<_>>(),
                })),
                Err(e) => Outcome::Fails(json!({ "covering": false, "counterexample": not_covering_json(&m.source, &m.target, &e) })),
            }
        }
        Command::LiftPath { path, start, cover } => {
            let m = parse_map(&read(&cover)?)?;
            let c = CoveringMap::new(&m.source, &m.target, &m.map)?;
            let w = parse_path(&c.target, &path)?;
            let lifted = c.lift_path(&w, point(&c.source, &start)?)?;
            Outcome::Holds(json!({ "lift": path_json(&c.source, &lifted), "closed": lifted.is_loop() }))
        }
        Command::LiftCriterion { map, start, cover } => {
            let cm = parse_map(&read(&cover)?)?;
            let c = CoveringMap::new(&cm.source, &cm.target, &cm.map)?;
            let f = parse_map(&read(&map)?)?;
            if f.target != c.target {
                bail!("the map's target differs from the covering's base action");
            }
            let z0 = f.base.ok_or_else(|| anyhow!("the map document needs a base point"))?;
            match lifting_criterion(&c, &f.source, &f.map, z0, point(&c.source, &start)?)? {
                LiftOutcome::Lift(l) => Outcome::Holds(json!({ "lifts": true, "lift": labels(&c.source, &l) })),
                LiftOutcome::FailingGenerator { name, lifted_term, .. } => Outcome::Fails(json!({
                    "lifts": false,
                    "generator": name,
                    "lifted_term": c.source.label(lifted_term),
                })),
            }
        }
        Command::Cover { base, subgroup, file } => {
            let a = load_action(&file)?;
            let base = point(&a, &base)?;
            let pres = pi1_presentation(&a, base)?;
            let words = split_list(&subgroup).map(|w| pres.parse_word(w)).collect::<Result<Vec<_>, _>>()?;
            let cover = construct_covering(&a, &SubgroupSpec { base, words }, b.max_cosets)?;
            let doc = MorphismDocument::new(&cover.action, &a, &cover.projection, Some(cover.base));
            Outcome::Text(serde_json::to_string_pretty(&doc)?)
        }
        Command::Morspace { source, target, emit } => {
            let (x, y) = (load_action(&source)?, load_action(&target)?);
            let space = MorSpace::build(&x, &y, b.budget)?;
            if emit {
                Outcome::Text(emit_action(&space.action))
            } else {
                let report = json!({
                    "morphisms": space.morphisms.iter().map(|f| labels(&y, f)).collect::<Vec<_>>(),
                    "indices": space.betas.iter().map(|be| index_names(&y, be)).collect::<Vec<_>>(),
                    "valid": space.action.validate().holds(),
                    "violation": space.action.validate().counterexample().map(|v| v.to_string()),
                });
                Outcome::Holds(report)
            }
        }
        Command::Explaw { x, y, z } => {
            let (x, y, z) = (load_action(&x)?, load_action(&y)?, load_action(&z)?);
            let (_, r) = exponential_law(&x, &y, &z, b.budget)?;
            let report = json!({
                "curried_count": r.curried_count,
                "uncurried_count": r.uncurried_count,
                "uncurry_total": r.e_total,
                "curry_total": r.e_prime_total,
                "curried_round_trip": r.curried_round_trip,
                "uncurried_round_trip": r.uncurried_round_trip,
                "uncurry_regular": r.e_regular.as_ref().map(Verdict::holds),
                "curry_morphism": r.e_prime_morphism.as_ref().map(Verdict::holds),
                "curry_regular": r.e_prime_regular.as_ref().map(Verdict::holds),
            });
            if r.passes() { Outcome::Holds(report) } else { Outcome::Fails(report) }
        }
        Command::Normality { probe, map } => {
            let z = load_action(&probe)?;
            let m = parse_map(&read(&map)?)?;
            verdict(is_z_normal(&m.map, &m.source, &m.target, &z, b.budget)?, |c| {
                json!({ "normal": c.is_none(), "counterexample": c.map(|c| format!("{c:?}")) })
            })
        }
        Command::Infimum { strong, delta, file } => {
            let a = load_action(&file)?;
            let render = |c: Option<gact::morphism::InfimumCounterexample>| match c {
                None => json!({ "holds": true }),
                Some(c) => json!({
                    "holds": false,
                    "delta": index_names(&a, &c.delta),
                    "frame": labels(&a, &c.subset),
                    "witnesses": index_names(&a, &c.witnesses),
                }),
            };
            if strong {
                let s = check_infimum_sufficiency(&a)?;
                let mut out = verdict(is_strong_infimum(&a)?, render);
                if let Outcome::Holds(v) | Outcome::Fails(v) = &mut out {
                    v["order_clause"] = json!(s.order_clause.holds());
                    v["intersection_clause"] = json!(s.intersection_clause.holds());
                }
                out
            } else {
                let d = split_list(&delta)
                    .map(|n| a.index_id(n).ok_or_else(|| anyhow!("unknown index '{n}'")))
                    .collect::<Result<Vec<_>>>()?;
                verdict(is_infimum(&a, &d)?, render)
            }
        }
        Command::Dot { file } => Outcome::Text(frame_graph_dot(&load_action(&file)?)),
        Command::Fixture { name } => {
            let a = gact::fixtures::by_name(&name).ok_or_else(|| anyhow!("unknown fixture '{name}'"))?;
            Outcome::Text(emit_action(&a))
        }
    })
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe downstream is not an error for a batch tool
    let _ = out.write_all(text.as_bytes()).and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = |v: &Value| serde_json::to_string_pretty(v).expect("json");
    match run(cli) {
        Ok(Outcome::Holds(v)) => {
            emit(&json(&v));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fails(v)) => {
            emit(&json(&v));
            ExitCode::from(1)
        }
        Ok(Outcome::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
