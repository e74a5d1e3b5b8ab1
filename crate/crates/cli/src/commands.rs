//! Command dispatch shared by the binary and the integration tests.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use logchow::blowup::{
    barycentric, common_refinement, ideal_blowup, resolve, star_subdivision, MonoidIdeal,
    Subdivision,
};
use logchow::chow::{
    chow_presentation, cup_seeded, gysin_subdivision, minkowski_weight_basis,
    pushforward_subdivision, weight_pullback,
};
use logchow::lattice::Int;
use logchow::logchow::{
    act, deepen, equals, excision_report, poincare_pair, polytope_class, LogCycleClass,
    PolytopeClass,
};
use num_traits::One;
use serde_json::{json, Value};

use crate::schema::{
    CycleJson, FanJson, LogClassJson, PolytopeJson, SubdivisionJson, WeightClassJson, WeightJson,
    SCHEMA_VERSION,
};
use crate::suites::{self, SuiteCtx};

#[derive(Debug)]
pub enum CliError {
    /// Usage problems: exit code 1.
    Usage(String),
    /// Domain problems (bad input data, math errors): exit code 2 with a
    /// machine-readable error object.
    Domain { kind: String, message: String },
}

impl CliError {
    fn domain(kind: &str, message: impl Into<String>) -> CliError {
        CliError::Domain { kind: kind.into(), message: message.into() }
    }

    pub fn error_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({
                "schema_version": SCHEMA_VERSION,
                "error": {"kind": "usage", "message": m},
            }),
            CliError::Domain { kind, message } => json!({
                "schema_version": SCHEMA_VERSION,
                "error": {"kind": kind, "message": message},
            }),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "logchow", version, about = "Exact log Chow calculations on toric fans")]
pub struct Cli {
    /// Seed for all randomized searches (displacement vectors, suite
    /// instances). Same seed, same bytes out.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Depth bound for subdivision-tower searches in verification suites.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    /// Write the result JSON to this path instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Subdivision file: transport class inputs at least this deep.
    #[arg(long, global = true)]
    pub level: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fan queries.
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Subdivision constructions.
    Blowup {
        #[command(subcommand)]
        cmd: BlowupCmd,
    },
    /// Chow group presentations.
    Chow {
        #[command(subcommand)]
        cmd: ChowCmd,
    },
    /// Minkowski weights.
    Mw {
        #[command(subcommand)]
        cmd: MwCmd,
    },
    /// Cup product of two weights on the same fan.
    Cup { w1: PathBuf, w2: PathBuf },
    /// Push a cycle forward along a subdivision.
    Push { subdivision: PathBuf, cycle: PathBuf },
    /// Pull a weight back along a subdivision.
    Pull { subdivision: PathBuf, weight: PathBuf },
    /// Gysin pullback of a cycle along a subdivision.
    Gysin { subdivision: PathBuf, cycle: PathBuf },
    /// Log Chow class operations.
    Logchow {
        #[command(subcommand)]
        cmd: LogchowCmd,
    },
    /// Run a verification suite (or "all").
    Verify {
        suite: String,
        /// Restrict suites to this base fan.
        #[arg(long)]
        fan: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FanCmd {
    /// Report local freeness and completeness.
    Check { fan: PathBuf },
    /// Resolve to a locally free subdivision.
    Resolve { fan: PathBuf },
    /// Star fan of a cone.
    Star {
        fan: PathBuf,
        #[arg(long)]
        cone: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BlowupCmd {
    /// Stellar subdivision at a lattice point, e.g. --at 1,1
    Star {
        fan: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Blow-up of a monomial ideal on a cone, e.g. --gens "1,0;0,1"
    Ideal {
        fan: PathBuf,
        #[arg(long)]
        cone: usize,
        #[arg(long)]
        gens: String,
    },
    /// Barycentric refinement.
    Barycentric { fan: PathBuf },
    /// Common refinement of two subdivisions of the same fan.
    Refine { s1: PathBuf, s2: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ChowCmd {
    /// Presentation of the codimension-k Chow group.
    Present {
        fan: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum MwCmd {
    /// Basis of Minkowski weights of codimension p.
    Basis {
        fan: PathBuf,
        #[arg(long)]
        p: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum LogchowCmd {
    /// Decide equality of two log cycle classes.
    Eq { a: PathBuf, b: PathBuf },
    /// Act on a class by a polytope or weight class.
    Act { p: PathBuf, a: PathBuf },
    /// Duality pairing of a weight class with a cycle class.
    Pair { p: PathBuf, a: PathBuf },
    /// Excision report for the orbit closure of a cone.
    Excision {
        fan: PathBuf,
        #[arg(long)]
        cone: usize,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::domain("io", format!("cannot read {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::domain("parse", format!("{}: {e}", path.display()))
    })
}

fn load_fan(path: &Path) -> Result<logchow::fan::Fan, CliError> {
    let j: FanJson = read_json(path)?;
    j.to_fan().map_err(|e| CliError::domain("fan", e.0))
}

fn load_subdivision(path: &Path) -> Result<Subdivision, CliError> {
    let j: SubdivisionJson = read_json(path)?;
    j.to_subdivision().map_err(|e| CliError::domain("subdivision", e.0))
}

fn load_class(path: &Path) -> Result<LogCycleClass, CliError> {
    let j: LogClassJson = read_json(path)?;
    j.to_class().map_err(|e| CliError::domain("class", e.0))
}

fn parse_vec(text: &str) -> Result<Vec<Int>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<Int>()
                .map_err(|_| CliError::Usage(format!("bad integer '{t}' in vector")))
        })
        .collect()
}

fn domain<E: std::fmt::Display>(kind: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::domain(kind, format!("{e}"))
}

/// Load a cohomology class: either a weight-class bundle or a polytope (the
/// base is taken from the accompanying cycle class).
fn load_weight_class(
    path: &Path,
    base: &logchow::fan::Fan,
) -> Result<PolytopeClass, CliError> {
    let raw: Value = read_json(path)?;
    if raw.get("vertices").is_some() {
        let j: PolytopeJson = serde_json::from_value(raw)
            .map_err(|e| CliError::domain("parse", format!("{}: {e}", path.display())))?;
        let p = j.to_polytope().map_err(|e| CliError::domain("polytope", e.0))?;
        polytope_class(&p, base).map_err(domain("polytope-class"))
    } else {
        let j: WeightClassJson = serde_json::from_value(raw)
            .map_err(|e| CliError::domain("parse", format!("{}: {e}", path.display())))?;
        j.to_class().map_err(|e| CliError::domain("class", e.0))
    }
}

fn maybe_deepen(
    cli: &Cli,
    a: LogCycleClass,
) -> Result<LogCycleClass, CliError> {
    match &cli.level {
        None => Ok(a),
        Some(path) => {
            let lvl = load_subdivision(path)?;
            deepen(&a, &lvl).map_err(domain("level"))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Fan { cmd } => match cmd {
            FanCmd::Check { fan } => {
                let f = load_fan(fan)?;
                Ok(json!({
                    "schema_version": SCHEMA_VERSION,
                    "locally_free": f.is_locally_free(),
                    "complete": f.is_complete(),
                }))
            }
            FanCmd::Resolve { fan } => {
                let f = load_fan(fan)?;
                let s = resolve(&f).map_err(domain("resolve"))?;
                Ok(serde_json::to_value(SubdivisionJson::from_subdivision(&s)).unwrap())
            }
            FanCmd::Star { fan, cone } => {
                let f = load_fan(fan)?;
                let s = f.star(*cone).map_err(domain("star"))?;
                Ok(serde_json::to_value(FanJson::from_fan(&s)).unwrap())
            }
        },
        Command::Blowup { cmd } => match cmd {
            BlowupCmd::Star { fan, at } => {
                let f = load_fan(fan)?;
                let v = parse_vec(at)?;
                let s = star_subdivision(&f, &v).map_err(domain("blowup"))?;
                Ok(serde_json::to_value(SubdivisionJson::from_subdivision(&s)).unwrap())
            }
            BlowupCmd::Ideal { fan, cone, gens } => {
                let f = load_fan(fan)?;
                if *cone >= f.num_cones() {
                    return Err(CliError::domain("blowup", "cone index out of range"));
                }
                let generators: Vec<Vec<Int>> = gens
                    .split(';')
                    .map(parse_vec)
                    .collect::<Result<_, _>>()?;
                let ideal = MonoidIdeal::new(f.cone(*cone).clone(), generators)
                    .map_err(domain("ideal"))?;
                let s = ideal_blowup(&f, &ideal).map_err(domain("blowup"))?;
                Ok(serde_json::to_value(SubdivisionJson::from_subdivision(&s)).unwrap())
            }
            BlowupCmd::Barycentric { fan } => {
                let f = load_fan(fan)?;
                let s = barycentric(&f).map_err(domain("blowup"))?;
                Ok(serde_json::to_value(SubdivisionJson::from_subdivision(&s)).unwrap())
            }
            BlowupCmd::Refine { s1, s2 } => {
                let a = load_subdivision(s1)?;
                let b = load_subdivision(s2)?;
                let (fan, to1, to2) = common_refinement(&a, &b).map_err(domain("refine"))?;
                Ok(json!({
                    "schema_version": SCHEMA_VERSION,
                    "fan": FanJson::from_fan(&fan),
                    "to_first": SubdivisionJson::from_subdivision(&to1),
                    "to_second": SubdivisionJson::from_subdivision(&to2),
                }))
            }
        },
        Command::Chow { cmd } => match cmd {
            ChowCmd::Present { fan, k } => {
                let f = load_fan(fan)?;
                let (gens, rel, factors) =
                    chow_presentation(&f, *k).map_err(domain("chow"))?;
                let torsion: Vec<String> = factors
                    .iter()
                    .filter(|x| !x.is_one())
                    .map(|x| x.to_string())
                    .collect();
                Ok(json!({
                    "schema_version": SCHEMA_VERSION,
                    "k": k,
                    "generators": gens,
                    "relations": rel
                        .relation_vectors
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "invariant_factors": factors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "free_rank": gens.len() - factors.len(),
                    "torsion": torsion,
                }))
            }
        },
        Command::Mw { cmd } => match cmd {
            MwCmd::Basis { fan, p } => {
                let f = load_fan(fan)?;
                let basis = minkowski_weight_basis(&f, *p).map_err(domain("mw"))?;
                Ok(json!({
                    "schema_version": SCHEMA_VERSION,
                    "codim": p,
                    "basis": basis
                        .iter()
                        .map(WeightJson::from_weight)
                        .collect::<Vec<_>>(),
                }))
            }
        },
        Command::Cup { w1, w2 } => {
            let a: WeightJson = read_json(w1)?;
            let b: WeightJson = read_json(w2)?;
            let a = a.to_weight().map_err(|e| CliError::domain("weight", e.0))?;
            let b = b.to_weight().map_err(|e| CliError::domain("weight", e.0))?;
            let c = cup_seeded(&a, &b, cli.seed).map_err(domain("cup"))?;
            Ok(serde_json::to_value(WeightJson::from_weight(&c)).unwrap())
        }
        Command::Push { subdivision, cycle } => {
            let s = load_subdivision(subdivision)?;
            let c: CycleJson = read_json(cycle)?;
            let c = c.to_cycle().map_err(|e| CliError::domain("cycle", e.0))?;
            let pushed = pushforward_subdivision(&s, &c).map_err(domain("push"))?;
            Ok(serde_json::to_value(CycleJson::from_cycle(&pushed)).unwrap())
        }
        Command::Pull { subdivision, weight } => {
            let s = load_subdivision(subdivision)?;
            let w: WeightJson = read_json(weight)?;
            let w = w.to_weight().map_err(|e| CliError::domain("weight", e.0))?;
            let pulled = weight_pullback(&s, &w).map_err(domain("pull"))?;
            Ok(serde_json::to_value(WeightJson::from_weight(&pulled)).unwrap())
        }
        Command::Gysin { subdivision, cycle } => {
            let s = load_subdivision(subdivision)?;
            let c: CycleJson = read_json(cycle)?;
            let c = c.to_cycle().map_err(|e| CliError::domain("cycle", e.0))?;
            let pulled = gysin_subdivision(&s, &c).map_err(domain("gysin"))?;
            Ok(serde_json::to_value(CycleJson::from_cycle(&pulled)).unwrap())
        }
        Command::Logchow { cmd } => match cmd {
            LogchowCmd::Eq { a, b } => {
                let a = maybe_deepen(cli, load_class(a)?)?;
                let b = maybe_deepen(cli, load_class(b)?)?;
                let eq = equals(&a, &b).map_err(domain("eq"))?;
                Ok(json!({"schema_version": SCHEMA_VERSION, "equal": eq}))
            }
            LogchowCmd::Act { p, a } => {
                let a = maybe_deepen(cli, load_class(a)?)?;
                let p = load_weight_class(p, a.base())?;
                let out = act(&p, &a).map_err(domain("act"))?;
                Ok(serde_json::to_value(LogClassJson::from_class(&out)).unwrap())
            }
            LogchowCmd::Pair { p, a } => {
                let a = maybe_deepen(cli, load_class(a)?)?;
                let p = load_weight_class(p, a.base())?;
                let v = poincare_pair(&p, &a).map_err(domain("pair"))?;
                Ok(json!({
                    "schema_version": SCHEMA_VERSION,
                    "pairing": v.to_string().parse::<i64>().map(Value::from)
                        .unwrap_or_else(|_| Value::from(v.to_string())),
                }))
            }
            LogchowCmd::Excision { fan, cone } => {
                let f = load_fan(fan)?;
                let rep = excision_report(&f, *cone).map_err(domain("excision"))?;
                let rows: Vec<Value> = rep
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "k": r.k,
                            "closed": {"generators": r.closed.generators, "free_rank": r.closed.free_rank,
                                        "torsion": r.closed.torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>()},
                            "total": {"generators": r.total.generators, "free_rank": r.total.free_rank,
                                       "torsion": r.total.torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>()},
                            "open": {"generators": r.open.generators, "free_rank": r.open.free_rank,
                                      "torsion": r.open.torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>()},
                            "pushforward": r.pushforward.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                            "restriction": r.restriction.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                            "surjective": r.surjective,
                            "exact_at_middle": r.exact_at_middle,
                        })
                    })
                    .collect();
                Ok(json!({
                    "schema_version": SCHEMA_VERSION,
                    "cone": cone,
                    "rows": rows,
                    "exact": rep.exact,
                }))
            }
        },
        Command::Verify { suite, fan } => {
            let fan = match fan {
                Some(p) => Some(load_fan(p)?),
                None => None,
            };
            let ctx = SuiteCtx { seed: cli.seed, depth: cli.depth, fan };
            if suite == "all" {
                let rep = suites::run_all(&ctx);
                return Ok(serde_json::to_value(rep).unwrap());
            }
            match suites::run_suite(suite, &ctx) {
                Some(rep) => Ok(serde_json::to_value(rep).unwrap()),
                None => Err(CliError::Usage(format!(
                    "unknown suite '{suite}'; expected one of all, {}",
                    suites::SUITE_NAMES.join(", ")
                ))),
            }
        }
    }
}
