//! Discrete example categories: finite sets with the set norm, simplicial
//! complexes, Grothendieck norms on monoids, word norms and cost systems.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::category::{CategoryError, FiniteCategory, Morphism, NormAssignment, PqMetricMatrix};
use crate::ext::{ExtReal, TOL};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DiscreteError {
    #[error("value {value} at position {position} is outside a target of size {size}")]
    OutOfRange { position: usize, value: usize, size: usize },
    #[error("map is not injective")]
    NonInjective,
    #[error("simplex {0:?} has no image simplex")]
    NotSimplicial(Vec<usize>),
    #[error("({plus}, {minus}) does not satisfy plus * a = b * minus")]
    NotAMorphism { plus: String, minus: String },
    #[error("word repeats a letter at position {0}")]
    NotSquareFree(usize),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("cost table must be square with {0} rows")]
    CostShape(usize),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A total function between finite sets, stored by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteFunction {
    pub source: usize,
    pub target: usize,
    pub assign: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(target: usize, assign: Vec<usize>) -> Result<Self, DiscreteError> {
        if let Some((position, &value)) = assign.iter().enumerate().find(|(_, &v)| v >= target) {
            return Err(DiscreteError::OutOfRange {
                position,
                value,
                size: target,
            });
        }
        Ok(FiniteFunction {
            source: assign.len(),
            target,
            assign,
        })
    }

    pub fn identity(n: usize) -> Self {
        FiniteFunction {
            source: n,
            target: n,
            assign: (0..n).collect(),
        }
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target];
        for &y in &self.assign {
            sizes[y] += 1;
        }
        sizes
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FiniteFunction) -> FiniteFunction {
        assert_eq!(self.target, other.source);
        FiniteFunction {
            source: self.source,
            target: other.target,
            assign: self.assign.iter().map(|&y| other.assign[y]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.fiber_sizes().iter().all(|&s| s <= 1)
    }

    pub fn is_surjective(&self) -> bool {
        self.fiber_sizes().iter().all(|&s| s >= 1)
    }
}

/// `log` of the largest fiber (floor 1), or of the fiber through `at`.
pub fn set_norm(f: &FiniteFunction, at: Option<usize>) -> ExtReal {
    let sizes = f.fiber_sizes();
    match at {
        Some(x) => ExtReal::ln(sizes[f.assign[x]] as f64),
        None => ExtReal::ln(sizes.into_iter().max().unwrap_or(0).max(1) as f64),
    }
}

/// For injections both ways between finite sets, returns a bijection `X → Y`.
pub fn csb_witness(f: &FiniteFunction, g: &FiniteFunction) -> Result<FiniteFunction, DiscreteError> {
    assert_eq!(f.target, g.source);
    assert_eq!(g.target, f.source);
    if !f.is_injective() || !g.is_injective() {
        return Err(DiscreteError::NonInjective);
    }
    // finite pigeonhole: |X| <= |Y| <= |X|
    debug_assert!(f.is_surjective());
    Ok(f.clone())
}

/// Downward-closed family of nonempty vertex sets containing all singletons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Closes the facets under nonempty subsets and adds all singletons.
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self, DiscreteError> {
        let n = vertices.len();
        let mut simplices = BTreeSet::new();
        for v in 0..n {
            simplices.insert(vec![v]);
        }
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(DiscreteError::OutOfRange {
                    position: 0,
                    value: bad,
                    size: n,
                });
            }
            for mask in 1u64..1 << f.len() {
                simplices.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        Ok(SimplicialComplex { vertices, simplices })
    }

    /// Unlabelled constructor with vertices `0..n`.
    pub fn on_vertices(n: usize, facets: &[Vec<usize>]) -> Result<Self, DiscreteError> {
        Self::from_facets((0..n).map(|i| i.to_string()).collect(), facets)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Sorted vertex lists of every simplex.
    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        s.dedup();
        self.simplices.contains(&s)
    }

    /// Largest simplex size minus one; `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.iter().map(|s| s.len() as i64).max().unwrap_or(0) - 1
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)))
            })
            .cloned()
            .collect()
    }

    /// Image of a simplex under a vertex map, sorted and deduplicated.
    pub fn image(vmap: &[usize], simplex: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = simplex.iter().map(|&v| vmap[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Checks that every simplex maps onto a simplex of `target`.
    pub fn check_simplicial(&self, target: &SimplicialComplex, vmap: &[usize]) -> Result<(), DiscreteError> {
        assert_eq!(vmap.len(), self.n_vertices());
        if let Some((i, &v)) = vmap.iter().enumerate().find(|(_, &v)| v >= target.n_vertices()) {
            return Err(DiscreteError::OutOfRange {
                position: i,
                value: v,
                size: target.n_vertices(),
            });
        }
        for s in &self.simplices {
            if !target.simplices.contains(&Self::image(vmap, s)) {
                return Err(DiscreteError::NotSimplicial(s.clone()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplicialNormReport {
    pub norm: ExtReal,
    /// Zero-norm (injective) simplicial maps exist in both directions.
    pub zero_norm_both_ways: bool,
    /// A simplicial isomorphism source → target, when one exists.
    pub isomorphism: Option<Vec<usize>>,
}

/// Set norm of the vertex map plus the normedness witness search.
pub fn simplicial_set_norm(
    src: &SimplicialComplex,
    tgt: &SimplicialComplex,
    vmap: &[usize],
) -> Result<SimplicialNormReport, DiscreteError> {
    src.check_simplicial(tgt, vmap)?;
    let f = FiniteFunction::new(tgt.n_vertices(), vmap.to_vec())?;
    let both = injective_simplicial_map(src, tgt).is_some() && injective_simplicial_map(tgt, src).is_some();
    let isomorphism = if both { simplicial_isomorphism(src, tgt) } else { None };
    Ok(SimplicialNormReport {
        norm: set_norm(&f, None),
        zero_norm_both_ways: both,
        isomorphism,
    })
}

/// Backtracking over injective vertex maps, checking each simplex as soon
/// as all of its vertices are assigned.
fn search_simplicial(
    src: &SimplicialComplex,
    tgt: &SimplicialComplex,
    accept: &dyn Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let n = src.n_vertices();
    let m = tgt.n_vertices();
    if n > m {
        return None;
    }
    // simplices grouped by their largest vertex
    let mut by_last: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n];
    for s in &src.simplices {
        by_last[*s.last().expect("nonempty")].push(s);
    }
    let mut assign = Vec::with_capacity(n);
    let mut used = vec![false; m];
    fn rec(
        v: usize,
        n: usize,
        assign: &mut Vec<usize>,
        used: &mut [bool],
        by_last: &[Vec<&Vec<usize>>],
        tgt: &SimplicialComplex,
        accept: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if v == n {
            return accept(assign);
        }
        for w in 0..used.len() {
            if used[w] {
                continue;
            }
            assign.push(w);
            used[w] = true;
            let ok = by_last[v]
                .iter()
                .all(|s| tgt.simplices.contains(&SimplicialComplex::image(assign, s)));
            if ok && rec(v + 1, n, assign, used, by_last, tgt, accept) {
                return true;
            }
            used[w] = false;
            assign.pop();
        }
        false
    }
    rec(0, n, &mut assign, &mut used, &by_last, tgt, accept).then_some(assign)
}

pub fn injective_simplicial_map(src: &SimplicialComplex, tgt: &SimplicialComplex) -> Option<Vec<usize>> {
    search_simplicial(src, tgt, &|_| true)
}

/// A vertex bijection mapping simplices exactly onto simplices.
pub fn simplicial_isomorphism(src: &SimplicialComplex, tgt: &SimplicialComplex) -> Option<Vec<usize>> {
    if src.n_vertices() != tgt.n_vertices() || src.simplices.len() != tgt.simplices.len() {
        return None;
    }
    // an injective simplicial map between complexes with equally many
    // simplices is a bijection on simplices
    search_simplicial(src, tgt, &|_| true)
}

/// A monoid with an element norm, as needed for Grothendieck norms.
pub trait NormedMonoidLike {
    type Elem: Clone + Eq + Hash + Debug;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn elem_norm(&self, a: &Self::Elem) -> ExtReal;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Elements searched by enumeration-based queries.
    fn elements(&self) -> Vec<Self::Elem>;
}

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormedMonoid {
    pub elements: Vec<String>,
    pub op: Vec<Vec<usize>>,
    pub unit: usize,
    #[serde(default)]
    pub inverse: Option<Vec<usize>>,
    pub norm: Vec<ExtReal>,
}

impl NormedMonoid {
    /// Validates associativity, unit laws, inverses, nonnegativity and
    /// subadditivity of the element norm.
    pub fn new(
        elements: Vec<String>,
        op: Vec<Vec<usize>>,
        unit: usize,
        inverse: Option<Vec<usize>>,
        norm: Vec<ExtReal>,
    ) -> Result<Self, DiscreteError> {
        let m = NormedMonoid {
            elements,
            op,
            unit,
            inverse,
            norm,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), DiscreteError> {
        let n = self.elements.len();
        let bad = |s: String| Err(DiscreteError::InvalidMonoid(s));
        if n == 0 || self.unit >= n {
            return bad("empty carrier or unit out of range".into());
        }
        if self.op.len() != n || self.op.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("multiplication table is not total".into());
        }
        if self.norm.len() != n {
            return bad("norm table has wrong length".into());
        }
        for a in 0..n {
            if self.op[self.unit][a] != a || self.op[a][self.unit] != a {
                return bad(format!("unit law fails at {}", self.elements[a]));
            }
            if self.norm[a] < ExtReal::ZERO {
                return bad(format!("negative norm at {}", self.elements[a]));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.op[self.op[a][b]][c] != self.op[a][self.op[b][c]] {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            self.elements[a], self.elements[b], self.elements[c]
                        ));
                    }
                }
                let sum = self.norm[a].checked_add(self.norm[b]).expect("nonnegative");
                if !self.norm[self.op[a][b]].le_tol(sum, TOL) {
                    return bad(format!(
                        "norm not subadditive at ({}, {})",
                        self.elements[a], self.elements[b]
                    ));
                }
            }
        }
        if let Some(inv) = &self.inverse {
            if inv.len() != n {
                return bad("inverse table has wrong length".into());
            }
            for a in 0..n {
                if inv[a] >= n || self.op[a][inv[a]] != self.unit || self.op[inv[a]][a] != self.unit {
                    return bad(format!("inverse fails at {}", self.elements[a]));
                }
            }
        }
        Ok(())
    }

    /// `Z/n` with the given norm per residue.
    pub fn cyclic(n: usize, norm: impl Fn(usize) -> f64) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let op = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inverse = Some((0..n).map(|a| (n - a) % n).collect());
        let norm = (0..n).map(|a| ExtReal::new(norm(a))).collect();
        NormedMonoid::new(elements, op, 0, inverse, norm).expect("cyclic group is valid")
    }

    /// `Z/n` normed by the word length for generators `±1`.
    pub fn cyclic_word(n: usize) -> Self {
        Self::cyclic(n, |a| a.min(n - a) as f64)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl NormedMonoidLike for NormedMonoid {
    type Elem = usize;
    fn op(&self, a: &usize, b: &usize) -> usize {
        self.op[*a][*b]
    }
    fn unit(&self) -> usize {
        self.unit
    }
    fn elem_norm(&self, a: &usize) -> ExtReal {
        self.norm[*a]
    }
    fn inverse(&self, a: &usize) -> Option<usize> {
        self.inverse.as_ref().map(|inv| inv[*a])
    }
    fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

/// `(Z, +, |·|)`; enumeration is restricted to `[-bound, bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integers {
    pub bound: i64,
}

impl NormedMonoidLike for Integers {
    type Elem = i64;
    fn op(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn unit(&self) -> i64 {
        0
    }
    fn elem_norm(&self, a: &i64) -> ExtReal {
        ExtReal::new(a.abs() as f64)
    }
    fn inverse(&self, a: &i64) -> Option<i64> {
        Some(-a)
    }
    fn elements(&self) -> Vec<i64> {
        (-self.bound..=self.bound).collect()
    }
}

/// `‖f₊‖ + ‖f₋‖` for a morphism `(f₊, f₋): a → b`, i.e. `f₊·a = b·f₋`.
pub fn grothendieck_norm<M: NormedMonoidLike>(
    m: &M,
    plus: &M::Elem,
    minus: &M::Elem,
    a: &M::Elem,
    b: &M::Elem,
) -> Result<ExtReal, DiscreteError> {
    if m.op(plus, a) != m.op(b, minus) {
        return Err(DiscreteError::NotAMorphism {
            plus: format!("{plus:?}"),
            minus: format!("{minus:?}"),
        });
    }
    Ok(m.elem_norm(plus).checked_add(m.elem_norm(minus)).expect("nonnegative norms"))
}

/// Minimum Grothendieck norm over all enumerated morphisms `a → b`
/// (`∞` if there are none).
pub fn group_distance<M: NormedMonoidLike>(m: &M, a: &M::Elem, b: &M::Elem) -> ExtReal {
    let elems = m.elements();
    let mut best = ExtReal::PosInf;
    for plus in &elems {
        let lhs = m.op(plus, a);
        for minus in &elems {
            if m.op(b, minus) == lhs {
                best = best.min(m.elem_norm(plus).checked_add(m.elem_norm(minus)).expect("nonnegative"));
            }
        }
    }
    best
}

/// The Grothendieck category of a finite monoid: objects are elements,
/// morphisms `a → b` are pairs `(f₊, f₋)` with `f₊·a = b·f₋`, and
/// composition is componentwise. Returns the category, the norm and the
/// `(f₊, f₋)` pair of each morphism.
pub fn grothendieck_category(
    m: &NormedMonoid,
) -> Result<(FiniteCategory, NormAssignment, Vec<(usize, usize)>), DiscreteError> {
    let n = m.len();
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for p in 0..n {
                for q in 0..n {
                    if m.op[p][a] == m.op[b][q] {
                        index.insert((a, b, p, q), morphisms.len());
                        morphisms.push((format!("({p},{q}):{a}->{b}"), a, b));
                        pairs.push((p, q));
                    }
                }
            }
        }
    }
    let identities = (0..n).map(|a| index[&(a, a, m.unit, m.unit)]).collect();
    let mut out_of = vec![Vec::new(); n];
    for (g, &(_, s, _)) in morphisms.iter().enumerate() {
        out_of[s].push(g);
    }
    let mut compose = HashMap::new();
    for (f, &(_, a, b)) in morphisms.iter().enumerate() {
        let (fp, fq) = pairs[f];
        for &g in &out_of[b] {
            let c = morphisms[g].2;
            let (gp, gq) = pairs[g];
            compose.insert((g, f), index[&(a, c, m.op[gp][fp], m.op[gq][fq])]);
        }
    }
    let objects = (0..n).map(|a| m.elements[a].clone()).collect();
    let morphisms = morphisms
        .into_iter()
        .map(|(id, src, tgt)| Morphism { id, src, tgt })
        .collect();
    let cat = FiniteCategory::from_parts(objects, morphisms, identities, compose, false)?;
    let norm = NormAssignment::from_fn(&cat, |i| {
        let (p, q) = pairs[i];
        m.norm[p].checked_add(m.norm[q]).expect("nonnegative")
    });
    Ok((cat, norm?, pairs))
}

/// Default search radius for [`word_norm`].
pub const WORD_RADIUS: usize = 12;

/// Breadth-first word length of `g` over `generators`, within `radius`
/// multiplications and inside the enumerated elements. `∞` if unreached.
pub fn word_norm<M: NormedMonoidLike>(m: &M, generators: &[M::Elem], g: &M::Elem, radius: usize) -> ExtReal {
    let universe: HashSet<M::Elem> = m.elements().into_iter().collect();
    let start = m.unit();
    if &start == g {
        return ExtReal::ZERO;
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((x, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for s in generators {
            let y = m.op(&x, s);
            if !universe.contains(&y) || !seen.insert(y.clone()) {
                continue;
            }
            if &y == g {
                return ExtReal::new((d + 1) as f64);
            }
            queue.push_back((y, d + 1));
        }
    }
    ExtReal::PosInf
}

/// Costs on ordered pairs of distinct points; the diagonal is ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSystem {
    pub points: Vec<String>,
    pub cost: Vec<Vec<ExtReal>>,
}

impl CostSystem {
    pub fn new(points: Vec<String>, cost: Vec<Vec<ExtReal>>) -> Result<Self, DiscreteError> {
        let n = points.len();
        if cost.len() != n || cost.iter().any(|r| r.len() != n) {
            return Err(DiscreteError::CostShape(n));
        }
        if cost.iter().flatten().any(|&c| c < ExtReal::ZERO) {
            return Err(DiscreteError::InvalidMonoid("negative cost".into()));
        }
        Ok(CostSystem { points, cost })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Sum of consecutive costs along a square-free word.
pub fn word_cost(cs: &CostSystem, word: &[usize]) -> Result<ExtReal, DiscreteError> {
    let mut total = ExtReal::ZERO;
    for (i, w) in word.windows(2).enumerate() {
        if w[0] == w[1] {
            return Err(DiscreteError::NotSquareFree(i + 1));
        }
        total = total.checked_add(cs.cost[w[0]][w[1]]).expect("nonnegative costs");
    }
    Ok(total)
}

/// Largest pseudometric below the symmetrized cost: Floyd–Warshall on
/// `min(c(x,y), c(y,x))`.
pub fn cost_pseudometric(cs: &CostSystem) -> PqMetricMatrix {
    let n = cs.len();
    let mut d: Vec<Vec<ExtReal>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        ExtReal::ZERO
                    } else {
                        cs.cost[i][j].min(cs.cost[j][i])
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].checked_add(d[k][j]).expect("nonnegative");
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    PqMetricMatrix::new(cs.points.clone(), d).expect("shortest paths form a pseudometric")
}
