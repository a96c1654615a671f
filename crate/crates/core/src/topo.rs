//! Finite topological spaces as specialization preorders, the component
//! seminorm, and the dimension seminorm on finite simplicial complexes.
//!
//! Opens are up-sets and closed sets are down-sets. A map is continuous
//! iff it preserves the preorder, and a subset is connected iff its
//! comparability graph is.

use serde::{Deserialize, Serialize};

use crate::discrete::{DiscreteError, SimplicialComplex};
use crate::ext::{sup0, ExtReal};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum TopoError {
    #[error("order matrix must be {0}x{0}")]
    Shape(usize),
    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order is not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("map has {got} entries, source has {expected} points")]
    Length { expected: usize, got: usize },
    #[error("point {0} maps outside the target")]
    OutOfRange(usize),
    #[error("map is not order preserving at ({0}, {1})")]
    NotContinuous(usize, usize),
    #[error("poset and simplicial parts act on different carriers")]
    IncompatibleCarriers,
    #[error("space has {0} points, subset enumeration is limited to {1}")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Simplicial(#[from] DiscreteError),
}

/// Largest carrier for which closed subsets are enumerated.
pub const SUBSET_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteTopSpace {
    points: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FiniteTopSpace {
    pub fn new(points: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, TopoError> {
        let n = points.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(TopoError::Shape(n));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(TopoError::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(TopoError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(FiniteTopSpace { points, leq })
    }

    /// Points `0..n` with the given preorder relation.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, TopoError> {
        let m = (0..n).map(|i| (0..n).map(|j| i == j || leq(i, j)).collect()).collect();
        Self::new((0..n).map(|i| i.to_string()).collect(), m)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_relation(n, |_, _| false).expect("discrete order is valid")
    }

    /// Two points `0 <= 1`: `{1}` is open, `{0}` is closed.
    pub fn sierpinski() -> Self {
        Self::from_relation(2, |i, j| i <= j).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Down-sets, i.e. closed subsets, as sorted index lists.
    pub fn is_closed(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&y| (0..self.len()).all(|x| !self.leq[x][y] || subset.contains(&x)))
    }

    /// All closed subsets, including the empty one.
    pub fn closed_subsets(&self) -> Result<Vec<Vec<usize>>, TopoError> {
        let n = self.len();
        if n > SUBSET_LIMIT {
            return Err(TopoError::TooLarge(n, SUBSET_LIMIT));
        }
        let below: Vec<u32> = (0..n)
            .map(|y| (0..n).filter(|&x| self.leq[x][y]).fold(0, |m, x| m | 1 << x))
            .collect();
        Ok((0u32..1 << n)
            .filter(|&mask| (0..n).all(|y| mask >> y & 1 == 0 || below[y] & !mask == 0))
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
            .collect())
    }
}

/// Components of `subset` in the comparability graph, each sorted.
pub fn connected_components(sp: &FiniteTopSpace, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut comp: Vec<Option<usize>> = vec![None; subset.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..subset.len() {
        if comp[s].is_some() {
            continue;
        }
        let id = out.len();
        comp[s] = Some(id);
        let mut stack = vec![s];
        let mut members = Vec::new();
        while let Some(a) = stack.pop() {
            members.push(subset[a]);
            for b in 0..subset.len() {
                if comp[b].is_none() && (sp.leq(subset[a], subset[b]) || sp.leq(subset[b], subset[a])) {
                    comp[b] = Some(id);
                    stack.push(b);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// `|log #components|`, with `|log 0| = ∞`.
pub fn component_capacity(sp: &FiniteTopSpace, subset: &[usize]) -> ExtReal {
    ExtReal::ln(connected_components(sp, subset).len() as f64).abs()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousPosetMap {
    source: FiniteTopSpace,
    target: FiniteTopSpace,
    assign: Vec<usize>,
}

impl ContinuousPosetMap {
    pub fn new(source: FiniteTopSpace, target: FiniteTopSpace, assign: Vec<usize>) -> Result<Self, TopoError> {
        if assign.len() != source.len() {
            return Err(TopoError::Length {
                expected: source.len(),
                got: assign.len(),
            });
        }
        if let Some(x) = assign.iter().position(|&y| y >= target.len()) {
            return Err(TopoError::OutOfRange(x));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(assign[a], assign[b]) {
                    return Err(TopoError::NotContinuous(a, b));
                }
            }
        }
        Ok(ContinuousPosetMap { source, target, assign })
    }

    pub fn identity(sp: &FiniteTopSpace) -> Self {
        Self::new(sp.clone(), sp.clone(), (0..sp.len()).collect()).expect("identity is continuous")
    }

    pub fn source(&self) -> &FiniteTopSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteTopSpace {
        &self.target
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn preimage(&self, c: &[usize]) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| c.contains(&self.assign[x])).collect()
    }
}

/// `sup0 |log #I(f*C)|` over nonempty closed connected `C`.
pub fn component_seminorm(f: &ContinuousPosetMap) -> Result<ExtReal, TopoError> {
    let closed = f.target.closed_subsets()?;
    Ok(sup0(
        closed
            .iter()
            .filter(|c| !c.is_empty() && connected_components(&f.target, c).len() == 1)
            .map(|c| component_capacity(&f.source, &f.preimage(c))),
    ))
}

/// Capacity form over every nonempty closed `C`:
/// `sup0 { |log #I(f*C)| - |log #I(C)| }`.
pub fn component_seminorm_capacity(f: &ContinuousPosetMap) -> Result<ExtReal, TopoError> {
    let closed = f.target.closed_subsets()?;
    Ok(sup0(closed.iter().filter(|c| !c.is_empty()).map(|c| {
        component_capacity(&f.source, &f.preimage(c))
            .checked_sub(component_capacity(&f.target, c))
            .expect("target capacity is finite")
    })))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneLightReport {
    pub monotone: bool,
    pub light: bool,
    pub closed: bool,
    /// `sup0` over points of `|log #I(fiber)|`.
    pub mon_defect: ExtReal,
}

pub fn monotone_light_report(f: &ContinuousPosetMap) -> Result<MonotoneLightReport, TopoError> {
    let mut monotone = true;
    let mut light = true;
    let mut defect = ExtReal::ZERO;
    for y in 0..f.target.len() {
        let fiber = f.preimage(&[y]);
        let comps = connected_components(&f.source, &fiber);
        monotone &= comps.len() == 1;
        light &= comps.iter().all(|c| c.len() == 1);
        defect = defect.max(ExtReal::ln(comps.len() as f64).abs());
    }
    let closed = f.source.closed_subsets()?.iter().all(|a| {
        let mut img: Vec<usize> = a.iter().map(|&x| f.assign[x]).collect();
        img.sort_unstable();
        img.dedup();
        f.target.is_closed(&img)
    });
    Ok(MonotoneLightReport {
        monotone,
        light,
        closed,
        mon_defect: defect,
    })
}

/// A simplicial vertex map between finite complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vmap: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, vmap: Vec<usize>) -> Result<Self, TopoError> {
        if vmap.len() != source.n_vertices() {
            return Err(TopoError::Length {
                expected: source.n_vertices(),
                got: vmap.len(),
            });
        }
        source.check_simplicial(&target, &vmap)?;
        Ok(SimplicialMap { source, target, vmap })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vmap(&self) -> &[usize] {
        &self.vmap
    }

    /// Simplices of the source whose image lies in `a`.
    pub fn preimage<'a>(&'a self, a: &'a [Vec<usize>]) -> impl Iterator<Item = &'a Vec<usize>> + 'a {
        self.source
            .simplices()
            .filter(move |s| a.contains(&SimplicialComplex::image(&self.vmap, s)))
    }
}

/// `|log(1 + Dim)|` of a family of simplices, with value 0 on the empty family.
fn dimension_capacity<'a>(simplices: impl Iterator<Item = &'a Vec<usize>>) -> ExtReal {
    match simplices.map(Vec::len).max() {
        None => ExtReal::ZERO,
        Some(size) => ExtReal::ln(size as f64),
    }
}

/// Largest target for which subcomplexes are enumerated.
pub const SUBCOMPLEX_SIMPLEX_LIMIT: usize = 31;

/// Every subcomplex (downward-closed family of simplices), empty included.
pub fn subcomplexes(k: &SimplicialComplex) -> Result<Vec<Vec<Vec<usize>>>, TopoError> {
    let mut simplices: Vec<&Vec<usize>> = k.simplices().collect();
    if simplices.len() > SUBCOMPLEX_SIMPLEX_LIMIT {
        return Err(TopoError::TooLarge(simplices.len(), SUBCOMPLEX_SIMPLEX_LIMIT));
    }
    simplices.sort_by_key(|s| s.len());
    let mut out = Vec::new();
    let mut cur: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, simplices: &[&Vec<usize>], cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == simplices.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, simplices, cur, out);
        let s = simplices[i];
        let faces_present = s.len() == 1
            || (0..s.len()).all(|drop| {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &v)| v).collect();
                cur.contains(&face)
            });
        if faces_present {
            cur.push(s.clone());
            rec(i + 1, simplices, cur, out);
            cur.pop();
        }
    }
    rec(0, &simplices, &mut cur, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionSeminorm {
    /// `sup` over vertices `y` of `|log(1 + Dim f*{y})|`.
    pub fiber_form: ExtReal,
    /// `sup0` over nonempty subcomplexes `A` of the capacity difference.
    pub capacity_form: ExtReal,
}

pub fn dimension_seminorm(f: &SimplicialMap) -> Result<DimensionSeminorm, TopoError> {
    let fiber_form = sup0((0..f.target.n_vertices()).map(|y| {
        let a = [vec![y]];
        dimension_capacity(f.preimage(&a))
    }));
    let mut capacity_form = ExtReal::ZERO;
    for a in subcomplexes(&f.target)? {
        if a.is_empty() {
            continue;
        }
        let term = dimension_capacity(f.preimage(&a))
            .checked_sub(dimension_capacity(a.iter()))
            .expect("finite capacities");
        capacity_form = capacity_form.max(term);
    }
    Ok(DimensionSeminorm {
        fiber_form,
        capacity_form,
    })
}

/// A map carrying a poset part, a simplicial part, or both on one carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologicalMap {
    pub poset: Option<ContinuousPosetMap>,
    pub simplicial: Option<SimplicialMap>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TopologicalNorm {
    pub comp: ExtReal,
    pub dim: ExtReal,
    pub total: ExtReal,
}

/// `‖f‖_comp + ‖f‖_dim`; an absent part contributes 0.
pub fn topological_norm(f: &TopologicalMap) -> Result<TopologicalNorm, TopoError> {
    if let (Some(p), Some(s)) = (&f.poset, &f.simplicial) {
        if p.source.len() != s.source.n_vertices()
            || p.target.len() != s.target.n_vertices()
            || p.assign != s.vmap
        {
            return Err(TopoError::IncompatibleCarriers);
        }
    }
    let comp = match &f.poset {
        Some(p) => component_seminorm(p)?,
        None => ExtReal::ZERO,
    };
    let dim = match &f.simplicial {
        Some(s) => dimension_seminorm(s)?.capacity_form,
        None => ExtReal::ZERO,
    };
    Ok(TopologicalNorm {
        comp,
        dim,
        total: comp.checked_add(dim).expect("nonnegative"),
    })
}
