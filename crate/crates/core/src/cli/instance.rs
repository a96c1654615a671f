//! JSON instance files. Every file carries a `kind` discriminator; maps
//! embed or reference (by relative path) their source and target.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::CliError;
use crate::category::{FiniteCategory, NormAssignment};
use crate::discrete::{CostSystem, FiniteFunction, NormedMonoid, SimplicialComplex};
use crate::ext::ExtReal;
use crate::linear::Matrix;
use crate::measure::{FiniteMMSpace, MMMap};
use crate::metric::{FiniteMetricSpace, MultiMap};
use crate::topo::{ContinuousPosetMap, FiniteTopSpace, SimplicialMap};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Category(CategoryFile),
    Finfun(FinFunFile),
    Simplicial(SimplicialFile),
    Monoid(MonoidFile),
    Costs(CostsFile),
    Matrix(MatrixFile),
    MetricSpace(MetricSpaceFile),
    Map(MapFile),
    TopSpace(TopSpaceFile),
    Testfn(TestFnFile),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Category(_) => "category",
            Instance::Finfun(_) => "finfun",
            Instance::Simplicial(_) => "simplicial",
            Instance::Monoid(_) => "monoid",
            Instance::Costs(_) => "costs",
            Instance::Matrix(_) => "matrix",
            Instance::MetricSpace(_) => "metric_space",
            Instance::Map(_) => "map",
            Instance::TopSpace(_) => "top_space",
            Instance::Testfn(_) => "testfn",
        }
    }

    /// Pretty JSON with a trailing newline; the canonical on-disk form.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instances serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<ExtReal>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    /// Object to identity morphism; defaults to `id_<object>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Map<String, Value>>,
    pub compose: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinFunFile {
    pub source: usize,
    pub target: usize,
    pub assign: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplicialFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    /// `table[a][b]` is the name of `a·b`.
    pub table: Vec<Vec<String>>,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<String>>,
    pub norm: Vec<ExtReal>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostsFile {
    pub points: Vec<String>,
    pub cost: Vec<Vec<ExtReal>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSpaceFile {
    pub points: Vec<String>,
    pub dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub pseudo: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub quasi: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopSpaceFile {
    pub points: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

/// An embedded instance or a path relative to the referring file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceRef {
    Path(String),
    Inline(Box<Instance>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: InstanceRef,
    pub target: InstanceRef,
    /// Source point name to a target point name or a list of them.
    pub assign: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFnFile {
    pub space: InstanceRef,
    pub values: Map<String, Value>,
}

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    Instance::from_json(&text).map_err(|e| match e {
        CliError::Schema(m) => CliError::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// A parsed file together with the directory used to resolve references.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub instance: Instance,
    pub dir: PathBuf,
}

impl Loaded {
    pub fn open(path: &Path) -> Result<Self, CliError> {
        Ok(Loaded {
            instance: read_instance(path)?,
            dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        })
    }

    fn resolve(&self, r: &InstanceRef) -> Result<Loaded, CliError> {
        match r {
            InstanceRef::Inline(i) => Ok(Loaded {
                instance: (**i).clone(),
                dir: self.dir.clone(),
            }),
            InstanceRef::Path(p) => Loaded::open(&self.dir.join(p)),
        }
    }
}

/// A typed, validated instance.
#[derive(Debug, Clone)]
pub enum Typed {
    Category(FiniteCategory, Option<NormAssignment>),
    Function(FiniteFunction),
    Simplicial(SimplicialComplex),
    Monoid(NormedMonoid),
    Costs(CostSystem),
    Matrix(Matrix),
    Metric(FiniteMetricSpace),
    MM(FiniteMMSpace),
    Top(FiniteTopSpace),
    MetricMap(MultiMap),
    MMMap(MMMap),
    PosetMap(ContinuousPosetMap),
    SimplicialMap(SimplicialMap),
    TestFunction(FiniteMMSpace, Vec<f64>),
}

fn invariant(e: impl std::fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

fn index_of(names: &[String], what: &str) -> Result<HashMap<String, usize>, CliError> {
    let mut m = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if m.insert(n.clone(), i).is_some() {
            return Err(CliError::Invariant(format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(m)
}

fn lookup(ix: &HashMap<String, usize>, name: &str, what: &str) -> Result<usize, CliError> {
    ix.get(name)
        .copied()
        .ok_or_else(|| CliError::Invariant(format!("unknown {what} {name:?}")))
}

pub fn parse_instance(path: &Path) -> Result<Typed, CliError> {
    type_check(&Loaded::open(path)?)
}

pub fn type_check(l: &Loaded) -> Result<Typed, CliError> {
    Ok(match &l.instance {
        Instance::Category(c) => {
            let (cat, norm) = category(c)?;
            Typed::Category(cat, norm)
        }
        Instance::Finfun(f) => {
            if f.assign.len() != f.source {
                return Err(CliError::Invariant(format!(
                    "finfun source has {} points but assign has {} entries",
                    f.source,
                    f.assign.len()
                )));
            }
            Typed::Function(FiniteFunction::new(f.target, f.assign.clone()).map_err(invariant)?)
        }
        Instance::Simplicial(s) => Typed::Simplicial(simplicial(s)?),
        Instance::Monoid(m) => Typed::Monoid(monoid(m)?),
        Instance::Costs(c) => Typed::Costs(CostSystem::new(c.points.clone(), c.cost.clone()).map_err(invariant)?),
        Instance::Matrix(m) => {
            if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
                return Err(CliError::Invariant(format!("matrix entries are not {}x{}", m.rows, m.cols)));
            }
            Typed::Matrix(Matrix::from_rows(m.entries.clone()).map_err(invariant)?)
        }
        Instance::MetricSpace(m) => {
            let base = metric(m)?;
            match &m.mass {
                Some(mass) => Typed::MM(FiniteMMSpace::new(base, mass.clone()).map_err(invariant)?),
                None => Typed::Metric(base),
            }
        }
        Instance::TopSpace(t) => Typed::Top(FiniteTopSpace::new(t.points.clone(), t.leq.clone()).map_err(invariant)?),
        Instance::Map(m) => map(l, m)?,
        Instance::Testfn(t) => {
            let space = l.resolve(&t.space)?;
            let mm = match type_check(&space)? {
                Typed::MM(mm) => mm,
                other => return Err(CliError::Invariant(format!("test function space must carry a mass, got {}", typed_kind(&other)))),
            };
            let ix = index_of(mm.base().points(), "point")?;
            let mut values = vec![f64::NAN; mm.len()];
            for (k, v) in &t.values {
                let i = lookup(&ix, k, "point")?;
                let x = v.as_f64().ok_or_else(|| CliError::Schema(format!("value of {k:?} is not a number")))?;
                if !(0.0..=1.0).contains(&x) {
                    return Err(CliError::Invariant(format!("test function value at {k:?} is outside [0, 1]")));
                }
                values[i] = x;
            }
            if let Some(i) = values.iter().position(|v| v.is_nan()) {
                return Err(CliError::Invariant(format!("test function has no value at {:?}", mm.base().points()[i])));
            }
            Typed::TestFunction(mm, values)
        }
    })
}

pub fn typed_kind(t: &Typed) -> &'static str {
    match t {
        Typed::Category(..) => "category",
        Typed::Function(_) => "finfun",
        Typed::Simplicial(_) => "simplicial",
        Typed::Monoid(_) => "monoid",
        Typed::Costs(_) => "costs",
        Typed::Matrix(_) => "matrix",
        Typed::Metric(_) => "metric_space",
        Typed::MM(_) => "metric_space with mass",
        Typed::Top(_) => "top_space",
        Typed::MetricMap(_) => "map of metric spaces",
        Typed::MMMap(_) => "map of mm-spaces",
        Typed::PosetMap(_) => "map of top spaces",
        Typed::SimplicialMap(_) => "simplicial map",
        Typed::TestFunction(..) => "testfn",
    }
}

fn metric(m: &MetricSpaceFile) -> Result<FiniteMetricSpace, CliError> {
    FiniteMetricSpace::with_flags(m.points.clone(), m.dist.clone(), m.pseudo, m.quasi).map_err(invariant)
}

fn simplicial(s: &SimplicialFile) -> Result<SimplicialComplex, CliError> {
    let ix = index_of(&s.vertices, "vertex")?;
    let facets = s
        .facets
        .iter()
        .map(|f| f.iter().map(|v| lookup(&ix, v, "vertex")).collect())
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    SimplicialComplex::from_facets(s.vertices.clone(), &facets).map_err(invariant)
}

fn monoid(m: &MonoidFile) -> Result<NormedMonoid, CliError> {
    let ix = index_of(&m.elements, "element")?;
    let op = m
        .table
        .iter()
        .map(|r| r.iter().map(|e| lookup(&ix, e, "element")).collect())
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    let inverse = m
        .inverse
        .as_ref()
        .map(|inv| inv.iter().map(|e| lookup(&ix, e, "element")).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    NormedMonoid::new(m.elements.clone(), op, lookup(&ix, &m.unit, "element")?, inverse, m.norm.clone()).map_err(invariant)
}

fn category(c: &CategoryFile) -> Result<(FiniteCategory, Option<NormAssignment>), CliError> {
    let identities = c
        .objects
        .iter()
        .map(|o| {
            let id = match c.identities.as_ref().and_then(|m| m.get(o)) {
                Some(Value::String(s)) => s.clone(),
                Some(_) => return Err(CliError::Schema(format!("identity of {o:?} is not a string"))),
                None => format!("id_{o}"),
            };
            Ok((o.clone(), id))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cat = FiniteCategory::new(
        c.objects.clone(),
        c.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect(),
        identities,
        c.compose.clone(),
    )
    .map_err(invariant)?;
    let norm = if c.morphisms.iter().all(|m| m.norm.is_some()) {
        let values = cat
            .morphisms()
            .iter()
            .map(|m| {
                c.morphisms
                    .iter()
                    .find(|e| e.id == m.id)
                    .and_then(|e| e.norm)
                    .ok_or_else(|| CliError::Invariant(format!("no norm for {:?}", m.id)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Some(NormAssignment::new(&cat, values).map_err(invariant)?)
    } else {
        None
    };
    Ok((cat, norm))
}

fn assignment(m: &MapFile, src: &[String], tgt: &[String]) -> Result<Vec<Vec<usize>>, CliError> {
    let ti = index_of(tgt, "target point")?;
    let si = index_of(src, "source point")?;
    for k in m.assign.keys() {
        lookup(&si, k, "source point")?;
    }
    src.iter()
        .map(|x| {
            let v = m
                .assign
                .get(x)
                .ok_or_else(|| CliError::Invariant(format!("map has no value for source point {x:?}")))?;
            let names: Vec<&str> = match v {
                Value::String(s) => vec![s.as_str()],
                Value::Array(a) => a
                    .iter()
                    .map(|e| e.as_str().ok_or_else(|| CliError::Schema(format!("value of {x:?} must be point names"))))
                    .collect::<Result<_, _>>()?,
                _ => return Err(CliError::Schema(format!("value of {x:?} must be a name or a list of names"))),
            };
            if names.is_empty() {
                return Err(CliError::Invariant(format!("nonempty assignment: point {x:?} has an empty value set")));
            }
            let mut out = names.iter().map(|n| lookup(&ti, n, "target point")).collect::<Result<Vec<_>, _>>()?;
            out.sort_unstable();
            out.dedup();
            Ok(out)
        })
        .collect()
}

fn single_valued(a: Vec<Vec<usize>>) -> Result<Vec<usize>, CliError> {
    a.into_iter()
        .enumerate()
        .map(|(i, v)| match v.as_slice() {
            [y] => Ok(*y),
            _ => Err(CliError::Invariant(format!("map must be single-valued, point {i} has {} values", v.len()))),
        })
        .collect()
}

fn map(l: &Loaded, m: &MapFile) -> Result<Typed, CliError> {
    let src = type_check(&l.resolve(&m.source)?)?;
    let tgt = type_check(&l.resolve(&m.target)?)?;
    Ok(match (src, tgt) {
        (Typed::Metric(x), Typed::Metric(y)) => {
            let a = assignment(m, x.points(), y.points())?;
            Typed::MetricMap(MultiMap::new(x, y, a).map_err(invariant)?)
        }
        (Typed::MM(x), Typed::MM(y)) => {
            let a = single_valued(assignment(m, x.base().points(), y.base().points())?)?;
            Typed::MMMap(MMMap::new(x, y, a).map_err(invariant)?)
        }
        (Typed::Top(x), Typed::Top(y)) => {
            let a = single_valued(assignment(m, x.points(), y.points())?)?;
            Typed::PosetMap(ContinuousPosetMap::new(x, y, a).map_err(invariant)?)
        }
        (Typed::Simplicial(x), Typed::Simplicial(y)) => {
            let a = single_valued(assignment(m, x.vertices(), y.vertices())?)?;
            Typed::SimplicialMap(SimplicialMap::new(x, y, a).map_err(invariant)?)
        }
        (s, t) => {
            return Err(CliError::Invariant(format!(
                "no maps from {} to {}",
                typed_kind(&s),
                typed_kind(&t)
            )))
        }
    })
}

/// File form of a metric or metric measure space.
pub fn metric_file(sp: &FiniteMetricSpace, mass: Option<&[f64]>) -> Instance {
    Instance::MetricSpace(MetricSpaceFile {
        points: sp.points().to_vec(),
        dist: sp.matrix().to_vec(),
        mass: mass.map(<[f64]>::to_vec),
        pseudo: sp.is_pseudo(),
        quasi: sp.is_quasi(),
    })
}

pub fn top_file(sp: &FiniteTopSpace) -> Instance {
    let n = sp.len();
    Instance::TopSpace(TopSpaceFile {
        points: sp.points().to_vec(),
        leq: (0..n).map(|i| (0..n).map(|j| sp.leq(i, j)).collect()).collect(),
    })
}

pub fn simplicial_file(k: &SimplicialComplex) -> Instance {
    let v = k.vertices();
    Instance::Simplicial(SimplicialFile {
        vertices: v.to_vec(),
        facets: k.facets().iter().map(|f| f.iter().map(|&i| v[i].clone()).collect()).collect(),
    })
}

pub fn matrix_file(m: &Matrix) -> Instance {
    Instance::Matrix(MatrixFile {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.to_rows(),
    })
}

/// Map file with inline source and target.
pub fn map_file(source: Instance, target: Instance, src_names: &[String], tgt_names: &[String], assign: &[Vec<usize>]) -> Instance {
    let assign = src_names
        .iter()
        .zip(assign)
        .map(|(x, ys)| {
            let v = if ys.len() == 1 {
                Value::String(tgt_names[ys[0]].clone())
            } else {
                Value::Array(ys.iter().map(|&y| Value::String(tgt_names[y].clone())).collect())
            };
            (x.clone(), v)
        })
        .collect();
    Instance::Map(MapFile {
        source: InstanceRef::Inline(Box::new(source)),
        target: InstanceRef::Inline(Box::new(target)),
        assign,
    })
}
