//! Finite categories carrying a norm value per morphism.
//!
//! Composition is stored as `compose(g, f) = g ∘ f` (apply `f` first), defined
//! exactly when `target(f) = source(g)`. Every check in this module is by
//! exhaustive enumeration, so only small categories are practical.

use std::collections::HashMap;

use serde::Serialize;

use crate::ext::{sup0, ConventionError, ExtReal, TOL};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CategoryError {
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("duplicate id {0:?}")]
    Duplicate(String),
    #[error("identity {morphism:?} of object {object:?} is not an endomorphism of it")]
    BadIdentity { object: String, morphism: String },
    #[error("composition {g:?} after {f:?} is not defined but they are composable")]
    MissingComposite { g: String, f: String },
    #[error("composition {g:?} after {f:?} is given but they are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite of {g:?} after {f:?} has the wrong source or target")]
    CompositeEndpoints { g: String, f: String },
    #[error("identity law fails for {0:?}")]
    IdentityLaw(String),
    #[error("associativity fails for ({h:?} after {g:?}) after {f:?}")]
    Associativity { h: String, g: String, f: String },
    #[error("object {0:?} has no identity")]
    NoIdentity(String),
    #[error("composition is not closed: {0}")]
    NotClosed(String),
    #[error("norm assignment has {got} values for {expected} morphisms")]
    NormLength { expected: usize, got: usize },
    #[error("norm value of {morphism:?} is {value}, outside [0, inf]")]
    NormRange { morphism: String, value: ExtReal },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

impl FiniteCategory {
    /// Builds a category from named parts and validates the unit and
    /// associativity laws over every composable pair and triple.
    ///
    /// `compose` entries are `(g, f, g∘f)`.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: Vec<(String, String)>,
        compose: Vec<(String, String, String)>,
    ) -> Result<Self, CategoryError> {
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(CategoryError::Duplicate(o.clone()));
            }
        }
        let obj = |name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
        };
        let mut mor_index = HashMap::new();
        let mut mors = Vec::with_capacity(morphisms.len());
        for (i, (id, s, t)) in morphisms.into_iter().enumerate() {
            if mor_index.insert(id.clone(), i).is_some() {
                return Err(CategoryError::Duplicate(id));
            }
            mors.push(Morphism {
                id,
                src: obj(&s)?,
                tgt: obj(&t)?,
            });
        }
        let mor = |name: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
        };
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, m) in &identities {
            ids[obj(o)?] = mor(m)?;
        }
        let mut table = HashMap::new();
        for (g, f, gf) in &compose {
            table.insert((mor(g)?, mor(f)?), mor(gf)?);
        }
        Self::from_parts(objects, mors, ids, table, true)
    }

    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
        check_associativity: bool,
    ) -> Result<Self, CategoryError> {
        let n = objects.len();
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (i, m) in morphisms.iter().enumerate() {
            hom.entry((m.src, m.tgt)).or_default().push(i);
            incoming[m.tgt].push(i);
            outgoing[m.src].push(i);
        }
        let cat = FiniteCategory {
            objects,
            morphisms,
            identities,
            compose,
            hom,
            incoming,
            outgoing,
        };
        cat.validate(check_associativity)?;
        Ok(cat)
    }

    fn validate(&self, check_associativity: bool) -> Result<(), CategoryError> {
        let name = |m: usize| self.morphisms[m].id.clone();
        for (o, &id) in self.identities.iter().enumerate() {
            if id == usize::MAX {
                return Err(CategoryError::NoIdentity(self.objects[o].clone()));
            }
            let m = &self.morphisms[id];
            if m.src != o || m.tgt != o {
                return Err(CategoryError::BadIdentity {
                    object: self.objects[o].clone(),
                    morphism: m.id.clone(),
                });
            }
        }
        for (&(g, f), &gf) in &self.compose {
            if self.morphisms[f].tgt != self.morphisms[g].src {
                return Err(CategoryError::NotComposable {
                    g: name(g),
                    f: name(f),
                });
            }
            let c = &self.morphisms[gf];
            if c.src != self.morphisms[f].src || c.tgt != self.morphisms[g].tgt {
                return Err(CategoryError::CompositeEndpoints {
                    g: name(g),
                    f: name(f),
                });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].tgt] {
                if !self.compose.contains_key(&(g, f)) {
                    return Err(CategoryError::MissingComposite {
                        g: name(g),
                        f: name(f),
                    });
                }
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose[&(self.identities[m.tgt], f)] != f
                || self.compose[&(f, self.identities[m.src])] != f
            {
                return Err(CategoryError::IdentityLaw(m.id.clone()));
            }
        }
        if !check_associativity {
            return Ok(());
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].tgt] {
                let gf = self.compose[&(g, f)];
                for &h in &self.outgoing[self.morphisms[g].tgt] {
                    let hg = self.compose[&(h, g)];
                    if self.compose[&(h, gf)] != self.compose[&(hg, f)] {
                        return Err(CategoryError::Associativity {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds the category generated by the given functions between finite
    /// carriers (`objects[i].1` points each): identities are added and the
    /// set is closed under function composition. Returns the category and
    /// the assignment of every morphism.
    pub fn from_functions(
        objects: Vec<(String, usize)>,
        functions: Vec<(usize, usize, Vec<usize>)>,
    ) -> Result<(Self, Vec<Vec<usize>>), CategoryError> {
        let mut key: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        let mut morphisms: Vec<Morphism> = Vec::new();
        let mut assigns: Vec<Vec<usize>> = Vec::new();
        fn push(
            key: &mut HashMap<(usize, usize, Vec<usize>), usize>,
            morphisms: &mut Vec<Morphism>,
            assigns: &mut Vec<Vec<usize>>,
            s: usize,
            t: usize,
            a: Vec<usize>,
        ) -> usize {
            if let Some(&i) = key.get(&(s, t, a.clone())) {
                return i;
            }
            let i = morphisms.len();
            morphisms.push(Morphism {
                id: format!("m{i}"),
                src: s,
                tgt: t,
            });
            key.insert((s, t, a.clone()), i);
            assigns.push(a);
            i
        }
        let mut identities = Vec::new();
        for (o, (_, size)) in objects.iter().enumerate() {
            identities.push(push(&mut key, &mut morphisms, &mut assigns, o, o, (0..*size).collect()));
        }
        for (s, t, a) in functions {
            assert_eq!(a.len(), objects[s].1, "function length differs from source size");
            assert!(a.iter().all(|&y| y < objects[t].1), "function leaves its target");
            push(&mut key, &mut morphisms, &mut assigns, s, t, a);
        }
        let mut compose = HashMap::new();
        // worklist closure: every pair is composed exactly once
        let mut done = 0;
        while done < morphisms.len() {
            let upto = morphisms.len();
            for f in 0..upto {
                for g in 0..upto {
                    if f < done && g < done {
                        continue;
                    }
                    if morphisms[f].tgt != morphisms[g].src {
                        continue;
                    }
                    let gf: Vec<usize> = assigns[f].iter().map(|&x| assigns[g][x]).collect();
                    let (s, t) = (morphisms[f].src, morphisms[g].tgt);
                    let c = push(&mut key, &mut morphisms, &mut assigns, s, t, gf);
                    compose.insert((g, f), c);
                }
            }
            done = upto;
        }
        let names = objects.into_iter().map(|(n, _)| n).collect();
        // function composition is associative
        let cat = Self::from_parts(names, morphisms, identities, compose, false)?;
        Ok((cat, assigns))
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, i: usize) -> &Morphism {
        &self.morphisms[i]
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].src] == m
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Morphisms whose target is `x`.
    pub fn into_object(&self, x: usize) -> &[usize] {
        &self.incoming[x]
    }

    /// Morphisms whose source is `x`.
    pub fn out_of_object(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    /// All composition entries as `(g, f, g∘f)`, sorted.
    pub fn composition_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.compose.iter().map(|(&(g, f), &c)| (g, f, c)).collect();
        v.sort_unstable();
        v
    }
}

/// One norm value in `[0, inf]` per morphism of a category.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormAssignment {
    values: Vec<ExtReal>,
}

impl NormAssignment {
    pub fn new(cat: &FiniteCategory, values: Vec<ExtReal>) -> Result<Self, CategoryError> {
        if values.len() != cat.morphisms.len() {
            return Err(CategoryError::NormLength {
                expected: cat.morphisms.len(),
                got: values.len(),
            });
        }
        for (m, v) in cat.morphisms.iter().zip(&values) {
            if *v < ExtReal::ZERO {
                return Err(CategoryError::NormRange {
                    morphism: m.id.clone(),
                    value: *v,
                });
            }
        }
        Ok(NormAssignment { values })
    }

    pub fn from_fn(
        cat: &FiniteCategory,
        mut f: impl FnMut(usize) -> ExtReal,
    ) -> Result<Self, CategoryError> {
        Self::new(cat, (0..cat.morphisms.len()).map(&mut f).collect())
    }

    pub fn get(&self, m: usize) -> ExtReal {
        self.values[m]
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct N1Violation {
    pub object: String,
    pub morphism: String,
    pub value: ExtReal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct N2Violation {
    /// Applied second.
    pub g: String,
    /// Applied first.
    pub f: String,
    pub composite: ExtReal,
    pub bound: ExtReal,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SeminormReport {
    pub n1: Vec<N1Violation>,
    pub n2: Vec<N2Violation>,
}

impl SeminormReport {
    pub fn passed(&self) -> bool {
        self.n1.is_empty() && self.n2.is_empty()
    }
}

pub fn check_seminorm_axioms(cat: &FiniteCategory, n: &NormAssignment) -> SeminormReport {
    let mut report = SeminormReport::default();
    for (o, &id) in cat.identities.iter().enumerate() {
        let v = n.get(id);
        if !v.le_tol(ExtReal::ZERO, TOL) {
            report.n1.push(N1Violation {
                object: cat.objects[o].clone(),
                morphism: cat.morphisms[id].id.clone(),
                value: v,
            });
        }
    }
    for (g, f, gf) in cat.composition_entries() {
        // values are nonnegative, so the sum is never indeterminate
        let bound = n.get(g).checked_add(n.get(f)).expect("nonnegative sum");
        if !n.get(gf).le_tol(bound, TOL) {
            report.n2.push(N2Violation {
                g: cat.morphisms[g].id.clone(),
                f: cat.morphisms[f].id.clone(),
                composite: n.get(gf),
                bound,
            });
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    /// Object pairs with modulators both ways but no norm isomorphism.
    pub n3: Vec<(String, String)>,
    /// On a finite category the infimum over a hom-set is attained.
    pub n4_vacuous: bool,
}

impl NormReport {
    pub fn passed(&self) -> bool {
        self.n3.is_empty()
    }
}

pub fn is_modulator(n: &NormAssignment, m: usize) -> bool {
    n.get(m).le_tol(ExtReal::ZERO, TOL)
}

pub fn check_norm_axioms(cat: &FiniteCategory, n: &NormAssignment) -> NormReport {
    let mut n3 = Vec::new();
    for x in 0..cat.objects.len() {
        for y in x + 1..cat.objects.len() {
            let fwd: Vec<usize> = cat.hom(x, y).iter().copied().filter(|&m| is_modulator(n, m)).collect();
            let back: Vec<usize> = cat.hom(y, x).iter().copied().filter(|&m| is_modulator(n, m)).collect();
            if fwd.is_empty() || back.is_empty() {
                continue;
            }
            let iso = fwd.iter().any(|&f| {
                back.iter().any(|&g| {
                    cat.compose(g, f) == Some(cat.identity(x)) && cat.compose(f, g) == Some(cat.identity(y))
                })
            });
            if !iso {
                n3.push((cat.objects[x].clone(), cat.objects[y].clone()));
            }
        }
    }
    NormReport {
        n3,
        n4_vacuous: true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Dual seminorm by enumeration over the morphisms present in `cat`.
///
/// Left: `sup0 over f': X' -> X of ‖f'‖ - ‖f ∘ f'‖`.
/// Right: `sup0 over f'': Y -> Y' of ‖f''‖ - ‖f'' ∘ f‖`.
pub fn dual_seminorm(
    cat: &FiniteCategory,
    n: &NormAssignment,
    side: Side,
) -> Result<NormAssignment, ConventionError> {
    let mut out = Vec::with_capacity(cat.morphisms.len());
    for (f, m) in cat.morphisms.iter().enumerate() {
        let terms: Result<Vec<ExtReal>, ConventionError> = match side {
            Side::Left => cat.incoming[m.src]
                .iter()
                .map(|&fp| n.get(fp).checked_sub(n.get(cat.compose[&(f, fp)])))
                .collect(),
            Side::Right => cat.outgoing[m.tgt]
                .iter()
                .map(|&fpp| n.get(fpp).checked_sub(n.get(cat.compose[&(fpp, f)])))
                .collect(),
        };
        out.push(sup0(terms?));
    }
    Ok(NormAssignment { values: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Symmetrize {
    None,
    /// `max(D(x,y), D(y,x))`
    Max,
    /// `(D(x,y) + D(y,x)) / 2`
    Plus,
    /// `(D(x,y)^p + D(y,x)^p)^(1/p)`, `p >= 1`
    P(f64),
}

impl Symmetrize {
    pub fn apply(self, a: ExtReal, b: ExtReal) -> ExtReal {
        match self {
            Symmetrize::None => a,
            Symmetrize::Max => a.max(b),
            Symmetrize::Plus => match (a.finite(), b.finite()) {
                (Some(a), Some(b)) => ExtReal::new((a + b) / 2.0),
                _ => ExtReal::PosInf,
            },
            Symmetrize::P(p) => {
                assert!(p >= 1.0, "p-symmetrization needs p >= 1");
                match (a.finite(), b.finite()) {
                    (Some(a), Some(b)) => ExtReal::new((a.powf(p) + b.powf(p)).powf(1.0 / p)),
                    _ => ExtReal::PosInf,
                }
            }
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PqMetricError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("nonzero diagonal at {0}")]
    Diagonal(usize),
    #[error("negative entry at ({0}, {1})")]
    Negative(usize, usize),
    #[error("triangle inequality fails: d({x},{z}) > d({x},{y}) + d({y},{z})")]
    Triangle { x: usize, y: usize, z: usize },
}

/// Square matrix of extended distances with zero diagonal satisfying the
/// triangle inequality (not necessarily symmetric).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PqMetricMatrix {
    pub objects: Vec<String>,
    pub dist: Vec<Vec<ExtReal>>,
}

impl PqMetricMatrix {
    pub fn new(objects: Vec<String>, dist: Vec<Vec<ExtReal>>) -> Result<Self, PqMetricError> {
        let m = PqMetricMatrix { objects, dist };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), PqMetricError> {
        let n = self.dist.len();
        if self.objects.len() != n || self.dist.iter().any(|r| r.len() != n) {
            return Err(PqMetricError::NotSquare);
        }
        for i in 0..n {
            if self.dist[i][i] != ExtReal::ZERO {
                return Err(PqMetricError::Diagonal(i));
            }
            for j in 0..n {
                if self.dist[i][j] < ExtReal::ZERO {
                    return Err(PqMetricError::Negative(i, j));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let via = self.dist[x][y].checked_add(self.dist[y][z]).expect("nonnegative");
                    if !self.dist[x][z].le_tol(via, TOL) {
                        return Err(PqMetricError::Triangle { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> ExtReal {
        self.dist[i][j]
    }
}

/// `Dist(X, Y) = min over hom(X, Y)` of the norm (`inf` if empty), symmetrized.
pub fn induced_pqmetric(cat: &FiniteCategory, n: &NormAssignment, mode: Symmetrize) -> PqMetricMatrix {
    let k = cat.objects.len();
    let raw: Vec<Vec<ExtReal>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    cat.hom(x, y)
                        .iter()
                        .map(|&m| n.get(m))
                        .min()
                        .unwrap_or(ExtReal::PosInf)
                })
                .collect()
        })
        .collect();
    let dist = (0..k)
        .map(|x| (0..k).map(|y| mode.apply(raw[x][y], raw[y][x])).collect())
        .collect();
    PqMetricMatrix {
        objects: cat.objects.clone(),
        dist,
    }
}

/// The wide subcategory of modulators, with the index of each kept morphism
/// in the original category.
pub fn modulator_subcategory(
    cat: &FiniteCategory,
    n: &NormAssignment,
) -> Result<(FiniteCategory, Vec<usize>), CategoryError> {
    let kept: Vec<usize> = (0..cat.morphisms.len()).filter(|&m| is_modulator(n, m)).collect();
    let mut new_index = HashMap::new();
    for (i, &m) in kept.iter().enumerate() {
        new_index.insert(m, i);
    }
    let morphisms = kept.iter().map(|&m| cat.morphisms[m].clone()).collect();
    let mut identities = Vec::new();
    for &id in &cat.identities {
        match new_index.get(&id) {
            Some(&i) => identities.push(i),
            None => return Err(CategoryError::NotClosed(format!("identity {} has positive norm", cat.morphisms[id].id))),
        }
    }
    let mut compose = HashMap::new();
    for (&(g, f), &gf) in &cat.compose {
        if let (Some(&gi), Some(&fi)) = (new_index.get(&g), new_index.get(&f)) {
            match new_index.get(&gf) {
                Some(&c) => {
                    compose.insert((gi, fi), c);
                }
                None => {
                    return Err(CategoryError::NotClosed(format!(
                        "{} after {} leaves the modulators",
                        cat.morphisms[g].id, cat.morphisms[f].id
                    )))
                }
            }
        }
    }
    let sub = FiniteCategory::from_parts(cat.objects.clone(), morphisms, identities, compose, false)?;
    Ok((sub, kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::PosInf;

    fn s(x: &str) -> String {
        x.to_string()
    }

    /// Objects X, Y; morphisms idX, idY, f: X -> Y, g: Y -> X with g∘f = idX,
    /// f∘g = idY (an isomorphism pair).
    fn iso_pair() -> FiniteCategory {
        FiniteCategory::new(
            vec![s("X"), s("Y")],
            vec![
                (s("idX"), s("X"), s("X")),
                (s("idY"), s("Y"), s("Y")),
                (s("f"), s("X"), s("Y")),
                (s("g"), s("Y"), s("X")),
            ],
            vec![(s("X"), s("idX")), (s("Y"), s("idY"))],
            vec![
                (s("idX"), s("idX"), s("idX")),
                (s("idY"), s("idY"), s("idY")),
                (s("f"), s("idX"), s("f")),
                (s("idY"), s("f"), s("f")),
                (s("g"), s("idY"), s("g")),
                (s("idX"), s("g"), s("g")),
                (s("g"), s("f"), s("idX")),
                (s("f"), s("g"), s("idY")),
            ],
        )
        .unwrap()
    }

    /// Two objects, each with an idempotent non-identity endomorphism, and
    /// maps both ways that never compose to an identity.
    fn non_invertible_modulators() -> FiniteCategory {
        // carriers of size 2 and 1; f: X -> Y constant, g: Y -> X constant 0,
        // e = g∘f: X -> X constant 0
        let (cat, _) = FiniteCategory::from_functions(
            vec![(s("X"), 2), (s("Y"), 1)],
            vec![(0, 1, vec![0, 0]), (1, 0, vec![0])],
        )
        .unwrap();
        cat
    }

    fn f(x: f64) -> ExtReal {
        ExtReal::new(x)
    }

    #[test]
    fn rejects_broken_identity_law() {
        let err = FiniteCategory::new(
            vec![s("X")],
            vec![(s("id"), s("X"), s("X")), (s("e"), s("X"), s("X"))],
            vec![(s("X"), s("id"))],
            vec![
                (s("id"), s("id"), s("id")),
                (s("id"), s("e"), s("e")),
                (s("e"), s("id"), s("id")),
                (s("e"), s("e"), s("e")),
            ],
        )
        .unwrap_err();
        assert_eq!(err, CategoryError::IdentityLaw(s("e")));
    }

    #[test]
    fn rejects_missing_composite() {
        let err = FiniteCategory::new(
            vec![s("X")],
            vec![(s("id"), s("X"), s("X"))],
            vec![(s("X"), s("id"))],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, CategoryError::MissingComposite { .. }));
    }

    #[test]
    fn n1_violation_reported() {
        let cat = iso_pair();
        let n = NormAssignment::new(&cat, vec![f(0.1), f(0.0), f(1.0), f(1.0)]).unwrap();
        let r = check_seminorm_axioms(&cat, &n);
        assert_eq!(r.n1.len(), 1);
        assert_eq!(r.n1[0].object, "X");
    }

    #[test]
    fn n2_violation_names_pair() {
        // idX, idY, f, g with ‖f‖ = ‖g‖ = 0 but ‖g∘f‖ = ‖idX‖ forced 0; use a
        // category where the composite is a separate morphism
        let (cat, _) = FiniteCategory::from_functions(
            vec![(s("X"), 2), (s("Y"), 2)],
            vec![(0, 1, vec![0, 0]), (1, 0, vec![1, 0]), (0, 0, vec![1, 1])],
        )
        .unwrap();
        // find f: X->Y const 0 and g: Y->X swap, g∘f = const 1 on X
        let values = (0..cat.morphisms().len())
            .map(|m| {
                let mm = cat.morphism(m);
                if cat.is_identity(m) {
                    f(0.0)
                } else if mm.src == 0 && mm.tgt == 0 {
                    f(1.0)
                } else {
                    f(0.0)
                }
            })
            .collect();
        let n = NormAssignment::new(&cat, values).unwrap();
        let r = check_seminorm_axioms(&cat, &n);
        assert!(!r.n2.is_empty());
        assert!(r.n2.iter().all(|v| v.composite == f(1.0)));
    }

    #[test]
    fn n3_detects_missing_isomorphism() {
        let cat = non_invertible_modulators();
        let zero = NormAssignment::from_fn(&cat, |_| ExtReal::ZERO).unwrap();
        let r = check_norm_axioms(&cat, &zero);
        assert_eq!(r.n3, vec![(s("X"), s("Y"))]);
        assert!(r.n4_vacuous);

        let iso = iso_pair();
        let zero = NormAssignment::from_fn(&iso, |_| ExtReal::ZERO).unwrap();
        assert!(check_norm_axioms(&iso, &zero).passed());
    }

    #[test]
    fn identity_only_duals_vanish() {
        let (cat, _) = FiniteCategory::from_functions(vec![(s("X"), 3), (s("Y"), 1)], vec![]).unwrap();
        let n = NormAssignment::from_fn(&cat, |_| ExtReal::ZERO).unwrap();
        for side in [Side::Left, Side::Right] {
            let d = dual_seminorm(&cat, &n, side).unwrap();
            assert!(d.values().iter().all(|v| *v == ExtReal::ZERO));
        }
    }

    #[test]
    fn induced_metric_symmetrizations() {
        let cat = iso_pair();
        let n = NormAssignment::new(&cat, vec![f(0.0), f(0.0), f(3.0), f(1.0)]).unwrap();
        let raw = induced_pqmetric(&cat, &n, Symmetrize::None);
        raw.validate().unwrap();
        assert_eq!(raw.get(0, 1), f(3.0));
        assert_eq!(raw.get(1, 0), f(1.0));
        assert_eq!(raw.get(0, 0), f(0.0));
        assert_eq!(induced_pqmetric(&cat, &n, Symmetrize::Plus).get(0, 1), f(2.0));
        assert_eq!(induced_pqmetric(&cat, &n, Symmetrize::Max).get(1, 0), f(3.0));
        assert_eq!(induced_pqmetric(&cat, &n, Symmetrize::P(1.0)).get(0, 1), f(4.0));
        let p2 = induced_pqmetric(&cat, &n, Symmetrize::P(2.0)).get(0, 1);
        assert!(p2.approx_eq(f(10f64.sqrt()), 1e-12));
    }

    #[test]
    fn empty_hom_is_infinite() {
        let (cat, _) = FiniteCategory::from_functions(vec![(s("X"), 1), (s("Y"), 1)], vec![]).unwrap();
        let n = NormAssignment::from_fn(&cat, |_| ExtReal::ZERO).unwrap();
        let d = induced_pqmetric(&cat, &n, Symmetrize::None);
        assert_eq!(d.get(0, 1), PosInf);
        d.validate().unwrap();
    }

    #[test]
    fn modulators_keep_identities() {
        let cat = iso_pair();
        let n = NormAssignment::new(&cat, vec![f(0.0), f(0.0), f(2.0), f(0.0)]).unwrap();
        let (sub, kept) = modulator_subcategory(&cat, &n).unwrap();
        assert_eq!(kept, vec![0, 1, 3]);
        assert_eq!(sub.morphisms().len(), 3);
        assert!(sub.is_identity(0) && sub.is_identity(1));
    }

    #[test]
    fn pqmetric_rejects_triangle_violation() {
        let d = vec![
            vec![f(0.0), f(1.0), f(5.0)],
            vec![f(1.0), f(0.0), f(1.0)],
            vec![f(5.0), f(1.0), f(0.0)],
        ];
        let err = PqMetricMatrix::new(vec![s("a"), s("b"), s("c")], d).unwrap_err();
        assert_eq!(err, PqMetricError::Triangle { x: 0, y: 1, z: 2 });
    }
}
