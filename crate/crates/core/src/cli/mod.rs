//! Command-line surface: `norm`, `dist`, `check` and `generate`.
//!
//! Exit codes: 0 on success, 1 when a property suite fails, 2 on input
//! errors. `NORMCAT_SEED` supplies the default seed.

pub mod instance;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::category::{check_norm_axioms, check_seminorm_axioms, dual_seminorm, induced_pqmetric, Side, Symmetrize};
use crate::discrete::{grothendieck_norm, group_distance, set_norm, simplicial_set_norm, word_norm, WORD_RADIUS};
use crate::ext::ExtReal;
use crate::gen;
use crate::linear::{operator_left_dual, operator_seminorm};
use crate::measure::{prokhorov_distance, prokhorov_seminorm, volume_norm, MMMap, ProkhorovVariant};
use crate::metric::{
    codiameter_seminorm, dil_distance, dilatation_left_dual, dilatation_norm, dilatation_norm_capacity, gh_distance,
    FiniteMetricSpace, MultiMap,
};
use crate::topo::{component_seminorm, dimension_seminorm, monotone_light_report, topological_norm, TopologicalMap};
use crate::wasserstein::{
    kr_compare, w1_transport, wasserstein_capacity, wasserstein_seminorm, ProjectiveMMSpace, TestFunction, WDirection,
    WSearch,
};
use instance::{parse_instance, typed_kind, Instance, Typed};
pub use report::{Format, Report};
use suites::SuiteName;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unknown kind: {0}")]
    UnknownKind(String),
    #[error("size {size} out of bounds for {kind} (allowed {min}..={max})")]
    SizeOutOfBounds {
        kind: String,
        size: usize,
        min: usize,
        max: usize,
    },
    #[error("{0}")]
    Compute(String),
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "normcat", version, about = "Seminorms on finite categories and induced distances")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "NORMCAT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a seminorm of a morphism.
    Norm(NormArgs),
    /// Distance between two objects.
    Dist(DistArgs),
    /// Run randomized property suites.
    Check(CheckArgs),
    /// Write a random instance file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    Set,
    Dil,
    DilDual,
    Codiam,
    Comp,
    Dim,
    Top,
    Prokhorov,
    Wasserstein,
    Op,
    Groth,
    Word,
    /// Axioms, duals and induced distances of a category file.
    Cat,
}

#[derive(Debug, clap::Args)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub kind: NormKind,
    /// Morphism file: a map, finfun, matrix, monoid or category.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Object file, for norms of canonical morphisms (`M → point`, `∅ → M`).
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Prokhorov: use the co-seminorm variant.
    #[arg(long)]
    pub co: bool,
    /// Wasserstein: flip the order of the two capacities.
    #[arg(long)]
    pub reversed: bool,
    /// Wasserstein: test-function grid resolution.
    #[arg(long, default_value_t = 10)]
    pub grid: usize,
    /// Grothendieck: `f₊` of the morphism `a → b`.
    #[arg(long)]
    pub plus: Option<String>,
    /// Grothendieck: `f₋` of the morphism `a → b`.
    #[arg(long)]
    pub minus: Option<String>,
    #[arg(long)]
    pub from: Option<String>,
    #[arg(long)]
    pub to: Option<String>,
    /// Word norm: comma-separated generators.
    #[arg(long, value_delimiter = ',')]
    pub generators: Vec<String>,
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long, default_value_t = WORD_RADIUS)]
    pub radius: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Gh,
    Dil,
    DilPlus,
    Prokhorov,
    W1,
}

#[derive(Debug, clap::Args)]
pub struct DistArgs {
    #[arg(long, value_enum)]
    pub kind: DistKind,
    pub a: PathBuf,
    pub b: PathBuf,
    /// Prokhorov: average both directions.
    #[arg(long)]
    pub symmetrize: bool,
}

#[derive(Debug, clap::Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = SuiteName::All)]
    pub suite: SuiteName,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Points in the unit cube with Euclidean distances.
    Metric,
    /// Random symmetric matrix repaired by shortest paths.
    MetricMatrix,
    /// Integer-valued metric.
    IntegerMetric,
    /// Metric space with Dirichlet masses.
    Mm,
    Poset,
    Simplicial,
    Matrix,
    Finfun,
    /// Map between two random metric spaces of the given size.
    Map,
}

impl GenKind {
    fn bounds(self) -> (usize, usize) {
        match self {
            GenKind::Metric | GenKind::MetricMatrix | GenKind::IntegerMetric | GenKind::Map => (1, 64),
            GenKind::Mm | GenKind::Poset => (1, 16),
            GenKind::Simplicial => (1, 10),
            GenKind::Matrix => (1, 16),
            GenKind::Finfun => (0, 1024),
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long, default_value_t = 4)]
    pub size: usize,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Outcome of one invocation: the rendered output and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match dispatch(&cli, echo) {
        Ok(Dispatched::Report(r)) => Outcome {
            stdout: r.render(cli.format),
            stderr: String::new(),
            code: if r.passed() { 0 } else { 1 },
        },
        Ok(Dispatched::File(text)) => Outcome {
            stdout: text,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        },
    }
}

pub enum Dispatched {
    Report(Report),
    /// Instance text written to stdout by `generate`.
    File(String),
}

pub fn dispatch(cli: &Cli, command: Vec<String>) -> Result<Dispatched, CliError> {
    let start = Instant::now();
    let mut report = Report::new(command, cli.seed);
    match &cli.command {
        Command::Norm(a) => norm(a, cli.seed, &mut report)?,
        Command::Dist(a) => dist(a, &mut report)?,
        Command::Check(a) => {
            let mut rng = gen::rng(cli.seed);
            report.suites = suites::run(a.suite, a.cases, &mut rng);
        }
        Command::Generate(a) => {
            let text = generate(a.kind, a.size, cli.seed)?.to_json();
            return match &a.out {
                Some(p) => {
                    std::fs::write(p, &text).map_err(|e| CliError::Io(p.display().to_string(), e.to_string()))?;
                    report.witness("written", p.display().to_string());
                    report.elapsed_ms = start.elapsed().as_millis();
                    Ok(Dispatched::Report(report))
                }
                None => Ok(Dispatched::File(text)),
            };
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(Dispatched::Report(report))
}

fn load(path: &Option<PathBuf>, flag: &str) -> Result<Typed, CliError> {
    let p = path
        .as_ref()
        .ok_or_else(|| CliError::Schema(format!("--{flag} is required for this kind")))?;
    parse_instance(p)
}

fn wrong(kind: NormKind, t: &Typed) -> CliError {
    CliError::Invariant(format!("norm kind {kind:?} does not apply to a {}", typed_kind(t)))
}

fn to_point(sp: &FiniteMetricSpace) -> MultiMap {
    MultiMap::single(sp.clone(), FiniteMetricSpace::point(), &vec![0; sp.len()]).expect("constant map")
}

fn metric_map(kind: NormKind, a: &NormArgs) -> Result<MultiMap, CliError> {
    if a.map.is_none() {
        return match load(&a.space, "space")? {
            Typed::Metric(sp) => Ok(to_point(&sp)),
            Typed::MM(mm) => Ok(to_point(mm.base())),
            t => Err(wrong(kind, &t)),
        };
    }
    match load(&a.map, "map")? {
        Typed::MetricMap(f) => Ok(f),
        Typed::MMMap(f) => {
            let assign = f.assign().iter().map(|&y| vec![y]).collect();
            MultiMap::new(f.source().base().clone(), f.target().base().clone(), assign).map_err(compute)
        }
        t => Err(wrong(kind, &t)),
    }
}

fn elem(m: &crate::discrete::NormedMonoid, name: &Option<String>, flag: &str) -> Result<usize, CliError> {
    let name = name
        .as_ref()
        .ok_or_else(|| CliError::Schema(format!("--{flag} is required")))?;
    m.elements
        .iter()
        .position(|e| e == name)
        .ok_or_else(|| CliError::Invariant(format!("unknown element {name:?}")))
}

fn norm(a: &NormArgs, seed: u64, r: &mut Report) -> Result<(), CliError> {
    let kind = a.kind;
    match kind {
        NormKind::Set => match load(&a.map, "map")? {
            Typed::Function(f) => {
                r.value("set_norm", set_norm(&f, None));
                r.flag("injective", f.is_injective());
            }
            Typed::SimplicialMap(f) => {
                let rep = simplicial_set_norm(f.source(), f.target(), f.vmap()).map_err(compute)?;
                r.value("set_norm", rep.norm);
                r.flag("zero_norm_both_ways", rep.zero_norm_both_ways);
                if let Some(iso) = rep.isomorphism {
                    r.witness("isomorphism", iso);
                }
            }
            t => return Err(wrong(kind, &t)),
        },
        NormKind::Dil => {
            let f = metric_map(kind, a)?;
            r.value("dilatation", dilatation_norm(&f));
            r.value("dilatation_capacity_form", dilatation_norm_capacity(&f));
        }
        NormKind::DilDual => r.value("dilatation_left_dual", dilatation_left_dual(&metric_map(kind, a)?)),
        NormKind::Codiam => r.value("codiameter", codiameter_seminorm(&metric_map(kind, a)?)),
        NormKind::Comp => match load(&a.map, "map")? {
            Typed::PosetMap(f) => {
                r.value("component", component_seminorm(&f).map_err(compute)?);
                let m = monotone_light_report(&f).map_err(compute)?;
                r.flag("monotone", m.monotone);
                r.flag("light", m.light);
                r.flag("closed", m.closed);
                r.value("mon_defect", m.mon_defect);
            }
            t => return Err(wrong(kind, &t)),
        },
        NormKind::Dim => match load(&a.map, "map")? {
            Typed::SimplicialMap(f) => {
                let d = dimension_seminorm(&f).map_err(compute)?;
                r.value("dimension", d.capacity_form);
                r.value("dimension_fiber_form", d.fiber_form);
            }
            t => return Err(wrong(kind, &t)),
        },
        NormKind::Top => {
            let m = match load(&a.map, "map")? {
                Typed::PosetMap(f) => TopologicalMap {
                    poset: Some(f),
                    simplicial: None,
                },
                Typed::SimplicialMap(f) => TopologicalMap {
                    poset: None,
                    simplicial: Some(f),
                },
                t => return Err(wrong(kind, &t)),
            };
            let t = topological_norm(&m).map_err(compute)?;
            r.value("component", t.comp);
            r.value("dimension", t.dim);
            r.value("topological", t.total);
        }
        NormKind::Prokhorov => {
            if a.map.is_none() {
                return match load(&a.space, "space")? {
                    Typed::MM(sp) => {
                        let v = volume_norm(&sp).map_err(compute)?;
                        r.value("prokhorov_initial", v.norm_of_initial);
                        r.value("volume", ExtReal::new(v.volume));
                        Ok(())
                    }
                    t => Err(wrong(kind, &t)),
                };
            }
            match load(&a.map, "map")? {
                Typed::MMMap(f) => {
                    let variant = if a.co {
                        ProkhorovVariant::CoSeminorm
                    } else {
                        ProkhorovVariant::Seminorm
                    };
                    r.value("prokhorov", prokhorov_seminorm(&f, variant).map_err(compute)?);
                }
                t => return Err(wrong(kind, &t)),
            }
        }
        NormKind::Wasserstein => match load(&a.map, "map")? {
            Typed::MMMap(f) => wasserstein_norm(&f, a, seed, r)?,
            Typed::TestFunction(sp, phi) => {
                let sp = ProjectiveMMSpace::new(sp).map_err(compute)?;
                let c = wasserstein_capacity(&sp, &TestFunction(phi));
                r.value("wasserstein_capacity", c.value);
                if let Some(w) = c.warning {
                    r.witness("warning", w);
                }
            }
            t => return Err(wrong(kind, &t)),
        },
        NormKind::Op => match load(&a.map, "map")? {
            Typed::Matrix(m) => {
                r.value("operator", operator_seminorm(&m));
                r.value("operator_left_dual", operator_left_dual(&m));
                r.witness("singular_values", m.singular_values());
            }
            t => return Err(wrong(kind, &t)),
        },
        NormKind::Groth => match load(&a.map, "map")? {
            Typed::Monoid(m) => {
                let from = elem(&m, &a.from, "from")?;
                let to = elem(&m, &a.to, "to")?;
                if a.plus.is_some() || a.minus.is_some() {
                    let plus = elem(&m, &a.plus, "plus")?;
                    let minus = elem(&m, &a.minus, "minus")?;
                    r.value("grothendieck", grothendieck_norm(&m, &plus, &minus, &from, &to).map_err(compute)?);
                }
                r.value("group_distance", group_distance(&m, &from, &to));
            }
            t => return Err(wrong(kind, &t)),
        },
        NormKind::Word => match load(&a.map, "map")? {
            Typed::Monoid(m) => {
                let gens = a
                    .generators
                    .iter()
                    .map(|g| elem(&m, &Some(g.clone()), "generators"))
                    .collect::<Result<Vec<_>, _>>()?;
                let g = elem(&m, &a.element, "element")?;
                r.value("word", word_norm(&m, &gens, &g, a.radius));
            }
            t => return Err(wrong(kind, &t)),
        },
        NormKind::Cat => match load(&a.map, "map")? {
            Typed::Category(cat, Some(n)) => {
                r.flag("seminorm_axioms", check_seminorm_axioms(&cat, &n).passed());
                r.flag("norm_axioms", check_norm_axioms(&cat, &n).passed());
                let left = dual_seminorm(&cat, &n, Side::Left).map_err(compute)?;
                let right = dual_seminorm(&cat, &n, Side::Right).map_err(compute)?;
                for (i, m) in cat.morphisms().iter().enumerate() {
                    r.value(format!("left_dual[{}]", m.id), left.get(i));
                    r.value(format!("right_dual[{}]", m.id), right.get(i));
                }
                let d = induced_pqmetric(&cat, &n, Symmetrize::None);
                r.witness("induced_distance", &d.dist);
            }
            Typed::Category(_, None) => {
                return Err(CliError::Schema("every morphism needs a norm".into()));
            }
            t => return Err(wrong(kind, &t)),
        },
    }
    Ok(())
}

fn wasserstein_norm(f: &MMMap, a: &NormArgs, seed: u64, r: &mut Report) -> Result<(), CliError> {
    let search = WSearch {
        k: a.grid,
        seed,
        direction: if a.reversed {
            WDirection::Reversed
        } else {
            WDirection::Displayed
        },
        ..WSearch::default()
    };
    let w = wasserstein_seminorm(f, search).map_err(compute)?;
    r.value("wasserstein_lower_bound", w.lower_bound);
    r.flag("exhaustive", w.exhaustive);
    r.witness("test_function", w.witness);
    let kr = kr_compare(f, search).map_err(compute)?;
    r.value("kr_rhs", kr.rhs);
    r.value("kr_w1", ExtReal::new(kr.w1));
    r.value("kr_hoeld", kr.hoeld);
    Ok(())
}

fn dist(a: &DistArgs, r: &mut Report) -> Result<(), CliError> {
    let (x, y) = (parse_instance(&a.a)?, parse_instance(&a.b)?);
    let metric = |t: Typed| match t {
        Typed::Metric(sp) => Ok(sp),
        Typed::MM(mm) => Ok(mm.base().clone()),
        t => Err(CliError::Invariant(format!("expected a metric space, got {}", typed_kind(&t)))),
    };
    let mm = |t: Typed| match t {
        Typed::MM(mm) => Ok(mm),
        t => Err(CliError::Invariant(format!("expected a metric space with mass, got {}", typed_kind(&t)))),
    };
    match a.kind {
        DistKind::Gh => {
            let g = gh_distance(&metric(x)?, &metric(y)?).map_err(compute)?;
            r.value("gh", g.value);
            r.witness("correspondence", g.correspondence);
        }
        DistKind::Dil | DistKind::DilPlus => {
            let mode = if a.kind == DistKind::Dil {
                Symmetrize::None
            } else {
                Symmetrize::Plus
            };
            let d = dil_distance(&metric(x)?, &metric(y)?, mode).map_err(compute)?;
            r.value(if mode == Symmetrize::None { "dil" } else { "dil_plus" }, d.value);
            r.flag("exact", d.exact);
            r.witness("forward", d.forward);
            if let Some(b) = d.backward {
                r.witness("backward", b);
            }
        }
        DistKind::Prokhorov => {
            let d = prokhorov_distance(&mm(x)?, &mm(y)?, a.symmetrize).map_err(compute)?;
            r.value("prokhorov", d);
        }
        DistKind::W1 => {
            let f = MMMap::identity_between(mm(x)?, mm(y)?).map_err(compute)?;
            let t = w1_transport(&f).map_err(compute)?;
            r.value("w1", ExtReal::new(t.cost));
            r.flag("certified", t.certified);
            r.witness("coupling", t.coupling);
        }
    }
    Ok(())
}

/// Random instance of the given kind; deterministic per seed.
pub fn generate(kind: GenKind, size: usize, seed: u64) -> Result<Instance, CliError> {
    let (min, max) = kind.bounds();
    if size < min || size > max {
        return Err(CliError::SizeOutOfBounds {
            kind: format!("{kind:?}").to_lowercase(),
            size,
            min,
            max,
        });
    }
    let mut rng = gen::rng(seed);
    Ok(match kind {
        GenKind::Metric => instance::metric_file(&gen::euclidean_space(&mut rng, size), None),
        GenKind::MetricMatrix => instance::metric_file(&gen::repaired_space(&mut rng, size), None),
        GenKind::IntegerMetric => instance::metric_file(&gen::integer_space(&mut rng, size, 5), None),
        GenKind::Mm => {
            let sp = gen::mm_space(&mut rng, size);
            instance::metric_file(sp.base(), Some(sp.mass()))
        }
        GenKind::Poset => instance::top_file(&gen::poset(&mut rng, size, 0.4)),
        GenKind::Simplicial => {
            let facets = rng.gen_range(1..=size);
            instance::simplicial_file(&gen::simplicial(&mut rng, size, facets, 3))
        }
        GenKind::Matrix => instance::matrix_file(&gen::matrix(&mut rng, size, size)),
        GenKind::Finfun => {
            let target = rng.gen_range(1..=size.max(1));
            let f = gen::finite_function(&mut rng, size, target);
            Instance::Finfun(instance::FinFunFile {
                source: f.source,
                target: f.target,
                assign: f.assign,
            })
        }
        GenKind::Map => {
            let x = gen::metric_space(&mut rng, size);
            let y = gen::metric_space(&mut rng, size);
            let f = gen::multimap(&mut rng, x.clone(), y.clone(), 2);
            instance::map_file(
                instance::metric_file(&x, None),
                instance::metric_file(&y, None),
                x.points(),
                y.points(),
                f.assign(),
            )
        }
    })
}

/// Writes `inst` to `path` in canonical form.
pub fn write_instance(path: &Path, inst: &Instance) -> Result<(), CliError> {
    std::fs::write(path, inst.to_json()).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}
