//! Command-line front end for `localaut-core`.
//!
//! [`run`] parses arguments and executes one command, returning the exit
//! status and the text that `main` prints. Exit status 0 is success, 1 a
//! negative answer under `--expect`, 2 a usage or input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use localaut_core::ball::BallGroup;
use localaut_core::compat::{c_core, check_c, check_d, find_involutive_cocycles_with_limit};
use localaut_core::constructions::{
    build_tower, check_tower_level, diagonal_swap, parse_group, parse_perm, AbelianHom, ConstructionSpec, PhiVariant,
    TowerKind, Transversal,
};
use localaut_core::enumerate::{census_c_classes, census_cd_lifts, format_table, s3_table, CensusRow};
use localaut_core::permcore::{classify_action, PartitionOfPoints};
use localaut_core::universal::{count_restrictions, is_discrete_universal, pk_local_action};
use localaut_core::PermGroup;

pub mod document;

use document::{DocumentError, GroupDocument};

/// Flags such as (C) and (D) are computed for output only up to this order.
const FLAG_ORDER_CAP: usize = 20_000;

#[derive(Parser, Debug)]
#[command(name = "localaut", version, about = "Local actions of universal groups acting on regular trees")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// List every element, not only generators, in JSON group documents.
    #[arg(long, global = true)]
    pub elements: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A group given either as a document or as a named local group.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Group document (JSON, flat-word-map encoding).
    #[arg(long = "in", value_name = "FILE", conflicts_with = "group")]
    pub input: Option<PathBuf>,
    /// Named subgroup of S_d, read as a group of radius 1 (e.g. S3, D4, "4:(0 1 2 3)").
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Permutation-group properties of a subgroup of S_d.
    Classify {
        /// Named group, e.g. S3, D4 or "4:(0 1 2 3)".
        #[arg(long)]
        group: String,
    },
    /// Condition (C).
    CheckC {
        #[command(flatten)]
        input: Input,
        /// Exit with status 1 when the condition fails.
        #[arg(long)]
        expect: bool,
    },
    /// Condition (D).
    CheckD {
        #[command(flatten)]
        input: Input,
        /// Exit with status 1 when the condition fails.
        #[arg(long)]
        expect: bool,
    },
    /// The largest subgroup satisfying (C).
    Ccore {
        #[command(flatten)]
        input: Input,
    },
    /// Involutive compatibility cocycles.
    Cocycles {
        #[command(flatten)]
        input: Input,
        /// Stop after this many cocycles.
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Build one construction.
    Construct(ConstructArgs),
    /// Build the levels of a tower.
    Tower(TowerArgs),
    /// Conjugacy classes of (C)-subgroups of Aut(B_{d,k}) with transitive projection.
    Census {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// (CD) lifts one level above a census, with Γ-image flags.
    CdLifts {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Base groups as documents instead of the census; marked incomplete.
        #[arg(long = "in", value_name = "FILE")]
        base: Vec<PathBuf>,
    },
    /// The degree-3 table of (C)-classes and (CD) lifts.
    S3Table,
    /// Number of restrictions to B_{d,n} of elements of U_k(F).
    CountRestrictions {
        #[command(flatten)]
        input: Input,
        /// Radius n of the ball B_{d,n} restricted to.
        #[arg(long)]
        ball: usize,
        /// Count restrictions of the vertex stabilizer.
        #[arg(long)]
        stabilizer: bool,
    },
    /// Whether U_k(F) is discrete.
    Discrete {
        #[command(flatten)]
        input: Input,
        /// Exit with status 1 when U_k(F) is not discrete.
        #[arg(long)]
        expect: bool,
    },
    /// The m-local action of the (P_k)-closure of U_k(F).
    PkLocal {
        #[command(flatten)]
        input: Input,
        /// Radius m of the local action.
        #[arg(long)]
        target: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Gamma,
    Gammak,
    Delta,
    Phi,
    Phik,
    Pi,
    Sigma,
    Wreath,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum TransversalArg {
    #[default]
    LexLeast,
    LexGreatest,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    #[command(flatten)]
    pub input: Input,
    /// Target radius for gamma, phik and pi.
    #[arg(short, long)]
    pub k: Option<usize>,
    /// Central subgroup C for delta.
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub transversal: TransversalArg,
    /// Normal subgroup N of the point stabilizer for phi.
    #[arg(long)]
    pub normal: Option<String>,
    /// Partition for phi, blocks separated by '|', e.g. "0,1|2,3".
    #[arg(long)]
    pub partition: Option<String>,
    /// Radius set X for pi (sign character), e.g. "0,1".
    #[arg(long, value_delimiter = ',')]
    pub radii: Vec<usize>,
    /// Document whose generators generate the kernel K for sigma.
    #[arg(long)]
    pub kernel: Option<PathBuf>,
    /// Use the diagonal swap (degree 3) as the kernel for sigma.
    #[arg(long)]
    pub diagonal_swap: bool,
    /// Top group P for wreath.
    #[arg(long)]
    pub top: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TowerKindArg {
    PinnedOrbit,
    Partition,
    PinnedCenter,
}

#[derive(Args, Debug)]
pub struct TowerArgs {
    #[arg(value_enum)]
    pub kind: TowerKindArg,
    /// Named starting group F.
    #[arg(long)]
    pub group: String,
    /// Number of levels above F.
    #[arg(long)]
    pub steps: usize,
    /// Pinned point.
    #[arg(long, default_value_t = 0)]
    pub omega0: usize,
    /// Partition of the points, e.g. "0,1|2,3".
    #[arg(long)]
    pub partition: Option<String>,
    /// Central element τ in cycle notation, e.g. "(0 1)(2 3)".
    #[arg(long)]
    pub tau: Option<String>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Document(PathBuf, DocumentError),
    Core(localaut_core::Error),
}

impl From<localaut_core::Error> for Failure {
    fn from(e: localaut_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "{s}"),
            Failure::Document(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Core(e) => {
                write!(f, "{e}")?;
                if matches!(e, localaut_core::Error::Capacity { .. }) {
                    write!(f, " (for larger balls use cd-lifts over a smaller census)")?;
                }
                Ok(())
            }
        }
    }
}

type CmdResult = Result<(bool, String), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let expect = matches!(
        cli.command,
        Command::CheckC { expect: true, .. } | Command::CheckD { expect: true, .. } | Command::Discrete { expect: true, .. }
    );
    match execute(&cli) {
        Ok((positive, stdout)) => Outcome { code: if expect && !positive { 1 } else { 0 }, stdout, stderr: String::new() },
        Err(f) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {f}\n") },
    }
}

fn read_document(path: &Path) -> Result<GroupDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    GroupDocument::parse(&text).map_err(|e| Failure::Document(path.to_path_buf(), e))
}

fn read_group(path: &Path) -> Result<BallGroup, Failure> {
    read_document(path)?.to_group().map_err(|e| Failure::Document(path.to_path_buf(), e))
}

fn local_group(name: &str) -> Result<PermGroup, Failure> {
    Ok(parse_group(name)?)
}

fn load(input: &Input) -> Result<BallGroup, Failure> {
    match (&input.input, &input.group) {
        (Some(p), _) => read_group(p),
        (None, Some(g)) => Ok(BallGroup::from_local(&local_group(g)?)?),
        (None, None) => Err(Failure::Usage("give a group with --in FILE or --group NAME".into())),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn flags(g: &BallGroup) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    m.insert("order".into(), json!(g.order()));
    if g.order() <= FLAG_ORDER_CAP {
        m.insert("has_c".into(), json!(check_c(g).holds));
        m.insert("has_d".into(), json!(check_d(g).holds));
    }
    m
}

fn group_report(cli: &Cli, g: &BallGroup, description: &str) -> String {
    let mut meta = flags(g);
    meta.insert("description".into(), json!(description));
    match cli.format {
        Format::Json => {
            let mut s = GroupDocument::from_group(g, cli.elements, meta).to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("{description}\ndegree {} radius {} order {}\n", g.degree(), g.radius(), g.order());
            if let (Some(c), Some(d)) = (meta.get("has_c"), meta.get("has_d")) {
                let _ = writeln!(s, "C: {}\nD: {}", yes_no(c == &json!(true)), yes_no(d == &json!(true)));
            }
            s
        }
    }
}

fn condition(cli: &Cli, name: &str, holds: bool, witness: Option<(usize, usize)>, g: &BallGroup) -> CmdResult {
    let out = match cli.format {
        Format::Json => pretty(&json!({
            "condition": name,
            "holds": holds,
            "witness": witness.map(|(a, w)| json!({"element": document::word_map(&g.element(a)), "direction": w})),
        })),
        Format::Text => {
            let mut s = format!("{name}: {}\n", yes_no(holds));
            if let Some((a, w)) = witness {
                let _ = writeln!(s, "witness: element {} in direction {w}", g.element(a));
            }
            s
        }
    };
    Ok((holds, out))
}

fn parse_partition(degree: usize, s: &str) -> Result<PartitionOfPoints, Failure> {
    let blocks = s
        .split('|')
        .map(|b| {
            b.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad partition {s:?}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PartitionOfPoints::new(degree, blocks)?)
}

fn need<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T, Failure> {
    v.as_ref().ok_or_else(|| Failure::Usage(format!("this construction needs {what}")))
}

fn local_of(input: &Input) -> Result<PermGroup, Failure> {
    local_group(need(&input.group, "--group NAME")?)
}

fn construct_spec(a: &ConstructArgs) -> Result<ConstructionSpec, Failure> {
    Ok(match a.kind {
        ConstructKind::Gamma => ConstructionSpec::Gamma { f: local_of(&a.input)?, k: a.k.unwrap_or(2) },
        ConstructKind::Gammak => ConstructionSpec::GammaK { f: load(&a.input)?, cocycle: None },
        ConstructKind::Delta => {
            let f = local_of(&a.input)?;
            let c = a.c.as_deref().map(local_group).transpose()?;
            let transversal = match a.transversal {
                TransversalArg::LexLeast => Transversal::LexLeast,
                TransversalArg::LexGreatest => Transversal::LexGreatest,
            };
            ConstructionSpec::Delta { f, c, transversal }
        }
        ConstructKind::Phi => {
            let f = load(&a.input)?;
            let variant = match (&a.normal, &a.partition) {
                (Some(_), Some(_)) => return Err(Failure::Usage("give at most one of --normal and --partition".into())),
                (Some(n), None) => PhiVariant::Normal(local_group(n)?),
                (None, Some(p)) => PhiVariant::Partition(parse_partition(f.degree(), p)?),
                (None, None) => PhiVariant::Full,
            };
            ConstructionSpec::Phi { f, variant }
        }
        ConstructKind::Phik => ConstructionSpec::PhiK { f: local_of(&a.input)?, k: *need(&a.k, "-k")? },
        ConstructKind::Pi => {
            let f = local_of(&a.input)?;
            if a.radii.is_empty() {
                return Err(Failure::Usage("pi needs --radii".into()));
            }
            let rho = AbelianHom::sign(&f);
            ConstructionSpec::Pi { f, rho, radii: a.radii.clone(), k: a.k.unwrap_or(2) }
        }
        ConstructKind::Sigma => {
            let f = load(&a.input)?;
            let kernel = match (&a.kernel, a.diagonal_swap) {
                (Some(p), false) => read_group(p)?.generators(),
                (None, true) => vec![diagonal_swap(f.radius() + 1)?],
                _ => return Err(Failure::Usage("sigma needs exactly one of --kernel FILE and --diagonal-swap".into())),
            };
            ConstructionSpec::Sigma { f, cocycle: None, kernel }
        }
        ConstructKind::Wreath => {
            ConstructionSpec::Wreath { f: local_of(&a.input)?, p: local_group(need(&a.top, "--top NAME")?)? }
        }
    })
}

fn tower_kind(a: &TowerArgs, f: &PermGroup) -> Result<TowerKind, Failure> {
    let tau = a.tau.as_deref().map(|t| parse_perm(f.degree(), t)).transpose()?;
    Ok(match a.kind {
        TowerKindArg::PinnedOrbit => TowerKind::PinnedOrbit { omega0: a.omega0 },
        TowerKindArg::Partition => {
            let p = parse_partition(f.degree(), need(&a.partition, "--partition")?)?;
            TowerKind::Partition { partition: p, tau }
        }
        TowerKindArg::PinnedCenter => TowerKind::PinnedCenter { omega0: a.omega0, tau: need(&tau, "--tau")?.clone() },
    })
}

fn row_json(cli: &Cli, r: &CensusRow) -> Value {
    json!({
        "description": r.description,
        "k": r.k,
        "projection": r.projection,
        "order": r.order,
        "has_c": r.has_c,
        "has_d": r.has_d,
        "has_icc": r.has_icc,
        "gamma_image": r.gamma_image,
        "group": GroupDocument::from_group(&r.group, cli.elements, BTreeMap::new()),
    })
}

fn rows_report(cli: &Cli, rows: &[CensusRow], warnings: &[String], flagged: bool) -> String {
    match cli.format {
        Format::Json => pretty(&json!({
            "rows": rows.iter().map(|r| row_json(cli, r)).collect::<Vec<_>>(),
            "warnings": warnings,
        })),
        Format::Text => {
            let mut s = format_table(rows);
            if flagged {
                for r in rows.iter().filter(|r| r.gamma_image) {
                    let _ = writeln!(s, "Γ-image of a lower (CD) row: {}", r.description);
                }
            }
            for w in warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
    }
}

fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Classify { group } => {
            let g = local_group(group)?;
            let r = classify_action(&g)?;
            let v = json!({
                "degree": g.degree(),
                "order": g.order(),
                "transitive": r.transitive,
                "semiregular": r.semiregular,
                "regular": r.regular,
                "primitive": r.primitive,
                "quasiprimitive": r.quasiprimitive,
                "semiprimitive": r.semiprimitive,
                "rank": r.rank,
                "orbits": r.orbits.blocks(),
                "minimal_block_systems": r.minimal_blocks.iter().map(|p| p.blocks().to_vec()).collect::<Vec<_>>(),
            });
            let out = match cli.format {
                Format::Json => pretty(&v),
                Format::Text => {
                    let mut s = format!("degree {} order {}\n", g.degree(), g.order());
                    for key in ["transitive", "semiregular", "regular", "primitive", "quasiprimitive", "semiprimitive"] {
                        let _ = writeln!(s, "{key}: {}", yes_no(v[key] == json!(true)));
                    }
                    let _ = writeln!(s, "rank: {}", r.rank);
                    s
                }
            };
            Ok((true, out))
        }
        Command::CheckC { input, .. } => {
            let g = load(input)?;
            let c = check_c(&g);
            condition(cli, "C", c.holds, c.witness, &g)
        }
        Command::CheckD { input, .. } => {
            let g = load(input)?;
            let c = check_d(&g);
            condition(cli, "D", c.holds, c.witness, &g)
        }
        Command::Ccore { input } => {
            let g = load(input)?;
            Ok((true, group_report(cli, &c_core(&g)?, "C(F)")))
        }
        Command::Cocycles { input, limit } => {
            let g = load(input)?;
            let zs = find_involutive_cocycles_with_limit(&g, *limit)?;
            let out = match cli.format {
                Format::Json => {
                    let values: Vec<Vec<Vec<usize>>> = zs
                        .iter()
                        .map(|z| (0..g.order()).map(|a| (0..g.degree()).map(|w| z.value(a, w)).collect()).collect())
                        .collect();
                    pretty(&json!({
                        "count": zs.len(),
                        "limit": limit,
                        "elements": g.elements().map(|a| document::word_map(&a)).collect::<Vec<_>>(),
                        "cocycles": values,
                    }))
                }
                Format::Text => {
                    let mut s = format!("involutive compatibility cocycles: {}", zs.len());
                    if zs.len() == *limit {
                        s.push_str(" (limit reached)");
                    }
                    s.push('\n');
                    if let Some(z) = zs.first() {
                        s.push_str("first cocycle on generators:\n");
                        for a in g.generators() {
                            let i = g.index_of(&a).expect("generator");
                            let vals: Vec<String> = (0..g.degree()).map(|w| format!("{}", g.element(z.value(i, w)))).collect();
                            let _ = writeln!(s, "  z({a}, ·) = [{}]", vals.join(", "));
                        }
                    }
                    s
                }
            };
            Ok((!zs.is_empty(), out))
        }
        Command::Construct(a) => {
            let spec = construct_spec(a)?;
            let built = spec.build()?;
            let g = built.groups.last().expect("one group");
            Ok((true, group_report(cli, g, &built.description)))
        }
        Command::Tower(a) => {
            let f = local_group(&a.group)?;
            let kind = tower_kind(a, &f)?;
            let levels = build_tower(&f, &kind, a.steps)?;
            let checks: Vec<Result<(), String>> =
                levels.iter().map(|l| check_tower_level(&f, &kind, l).map_err(|e| e.to_string())).collect();
            let out = match cli.format {
                Format::Json => pretty(&json!({
                    "levels": levels.iter().zip(&checks).map(|(l, c)| {
                        let mut meta = flags(l);
                        meta.insert("claims".into(), json!(c.as_ref().err().cloned().unwrap_or_else(|| "ok".into())));
                        GroupDocument::from_group(l, cli.elements, meta)
                    }).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut s = String::new();
                    for (l, c) in levels.iter().zip(&checks) {
                        let claims = c.as_ref().err().map(String::as_str).unwrap_or("ok");
                        let _ = writeln!(s, "level {}: order {}, claims {claims}", l.radius(), l.order());
                    }
                    s
                }
            };
            Ok((checks.iter().all(Result::is_ok), out))
        }
        Command::Census { degree, radius } => {
            let rows = census_c_classes(*degree, *radius)?;
            Ok((true, rows_report(cli, &rows, &[], false)))
        }
        Command::CdLifts { degree, radius, base } => {
            let (rows, complete) = if base.is_empty() {
                (census_c_classes(*degree, *radius)?, true)
            } else {
                let mut rows = Vec::new();
                for p in base {
                    let g = read_group(p)?;
                    rows.push(CensusRow {
                        description: p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
                        k: g.radius(),
                        projection: localaut_core::enumerate::local_name(&g.level1()),
                        order: g.order(),
                        has_c: check_c(&g).holds,
                        has_d: check_d(&g).holds,
                        has_icc: check_c(&g).holds && !find_involutive_cocycles_with_limit(&g, 1)?.is_empty(),
                        gamma_image: false,
                        group: g,
                    });
                }
                (rows, false)
            };
            let report = census_cd_lifts(&rows, complete)?;
            Ok((true, rows_report(cli, &report.rows, &report.warnings, true)))
        }
        Command::S3Table => Ok((true, rows_report(cli, &s3_table()?, &[], false))),
        Command::CountRestrictions { input, ball, stabilizer } => {
            let g = load(input)?;
            let c = count_restrictions(&g, *ball, *stabilizer)?;
            let out = match cli.format {
                Format::Json => pretty(&json!({
                    "ball": ball,
                    "value": c.value(),
                    "factors": c.factors().iter().map(|(p, e)| json!([p, e])).collect::<Vec<_>>(),
                    "display": c.to_string(),
                })),
                Format::Text => format!("{c}\n"),
            };
            Ok((true, out))
        }
        Command::Discrete { input, .. } => {
            let g = load(input)?;
            let d = is_discrete_universal(&g)?;
            let out = match cli.format {
                Format::Json => pretty(&json!({ "discrete": d })),
                Format::Text => format!("discrete: {}\n", yes_no(d)),
            };
            Ok((d, out))
        }
        Command::PkLocal { input, target } => {
            let g = load(input)?;
            let h = pk_local_action(&g, *target)?;
            Ok((true, group_report(cli, &h, &format!("{target}-local action of the closure"))))
        }
    }
}
