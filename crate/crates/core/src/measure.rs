//! Finite metric measure spaces, the Prokhorov capacity and the seminorm
//! and distance it induces.
//!
//! Everything here is exact breakpoint arithmetic. For a subset `A`, the
//! open-thickening mass `δ ↦ μ(A^{δ)})` is a step function that jumps just
//! after each distinct value `t_i` of `d(·, A)`. Hence
//! `c(A, v) = inf { δ > 0 : μ(A^{δ)}) + δ >= v }` is piecewise linear and
//! continuous in `v` with finitely many kinks.

use serde::{Deserialize, Serialize};

use crate::ext::ExtReal;
use crate::metric::{FiniteMetricSpace, MetricError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MeasureError {
    #[error("mass vector has {got} entries, space has {expected} points")]
    MassLength { expected: usize, got: usize },
    #[error("mass at point {0} is negative or not finite")]
    BadMass(usize),
    #[error("point {0} has zero mass in a space declared fully supported")]
    NotFullySupported(usize),
    #[error("the two measures live on different metric spaces")]
    BaseMismatch,
    #[error("map has {got} entries, source has {expected} points")]
    Length { expected: usize, got: usize },
    #[error("point {0} maps outside the target")]
    OutOfRange(usize),
    #[error("space has {0} points, subset enumeration is limited to {1}")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Largest target for which subsets are enumerated.
pub const SUBSET_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMMSpace {
    base: FiniteMetricSpace,
    mass: Vec<f64>,
}

impl FiniteMMSpace {
    pub fn new(base: FiniteMetricSpace, mass: Vec<f64>) -> Result<Self, MeasureError> {
        if mass.len() != base.len() {
            return Err(MeasureError::MassLength {
                expected: base.len(),
                got: mass.len(),
            });
        }
        if let Some(i) = mass.iter().position(|m| !m.is_finite() || *m < 0.0) {
            return Err(MeasureError::BadMass(i));
        }
        Ok(FiniteMMSpace { base, mass })
    }

    /// Like [`FiniteMMSpace::new`] but rejects zero masses.
    pub fn fully_supported(base: FiniteMetricSpace, mass: Vec<f64>) -> Result<Self, MeasureError> {
        let sp = Self::new(base, mass)?;
        if let Some(i) = sp.mass.iter().position(|&m| m == 0.0) {
            return Err(MeasureError::NotFullySupported(i));
        }
        Ok(sp)
    }

    pub fn empty() -> Self {
        FiniteMMSpace {
            base: FiniteMetricSpace::new(vec![], vec![]).expect("empty space is valid"),
            mass: vec![],
        }
    }

    pub fn base(&self) -> &FiniteMetricSpace {
        &self.base
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn volume(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn measure_of(&self, subset: &[usize]) -> f64 {
        subset.iter().map(|&i| self.mass[i]).sum()
    }

    pub fn is_fully_supported(&self) -> bool {
        self.mass.iter().all(|&m| m > 0.0)
    }
}

/// A single-valued map between metric measure spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct MMMap {
    source: FiniteMMSpace,
    target: FiniteMMSpace,
    assign: Vec<usize>,
}

impl MMMap {
    pub fn new(source: FiniteMMSpace, target: FiniteMMSpace, assign: Vec<usize>) -> Result<Self, MeasureError> {
        if assign.len() != source.len() {
            return Err(MeasureError::Length {
                expected: source.len(),
                got: assign.len(),
            });
        }
        if let Some(x) = assign.iter().position(|&y| y >= target.len()) {
            return Err(MeasureError::OutOfRange(x));
        }
        Ok(MMMap { source, target, assign })
    }

    /// The identity of the underlying points from `(X, d, μ)` to `(X, d, ν)`.
    pub fn identity_between(mu: FiniteMMSpace, nu: FiniteMMSpace) -> Result<Self, MeasureError> {
        if mu.base != nu.base {
            return Err(MeasureError::BaseMismatch);
        }
        let n = mu.len();
        Self::new(mu, nu, (0..n).collect())
    }

    pub fn source(&self) -> &FiniteMMSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteMMSpace {
        &self.target
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MMMap) -> MMMap {
        assert_eq!(self.target.len(), g.source.len());
        MMMap {
            source: self.source.clone(),
            target: g.target.clone(),
            assign: self.assign.iter().map(|&y| g.assign[y]).collect(),
        }
    }

    pub fn preimage(&self, a: &[usize]) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| a.contains(&self.assign[x])).collect()
    }
}

/// Distinct values `t_i` of `d(·, A)` with `m_i = μ{ d(·, A) <= t_i }`,
/// ascending. Empty for `A = ∅`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThickeningProfile {
    pub steps: Vec<(f64, f64)>,
}

impl ThickeningProfile {
    pub fn new(sp: &FiniteMMSpace, a: &[usize]) -> Self {
        if a.is_empty() {
            return ThickeningProfile { steps: vec![] };
        }
        let mut pts: Vec<(f64, f64)> = (0..sp.len())
            .map(|x| (sp.base.dist_to_set(x, a), sp.mass[x]))
            .collect();
        pts.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut steps: Vec<(f64, f64)> = Vec::new();
        let mut acc = 0.0;
        for (t, m) in pts {
            acc += m;
            match steps.last_mut() {
                Some(last) if last.0 == t => last.1 = acc,
                _ => steps.push((t, acc)),
            }
        }
        ThickeningProfile { steps }
    }

    /// `inf { δ > 0 : μ(A^{δ)}) + δ >= v }`.
    pub fn capacity(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        if self.steps.is_empty() {
            return v;
        }
        // before the first jump, mass is 0 on (0, t_0]
        let t0 = self.steps[0].0;
        if v <= t0 {
            return v;
        }
        for (i, &(t, m)) in self.steps.iter().enumerate() {
            let next = self.steps.get(i + 1).map_or(f64::INFINITY, |s| s.0);
            if v - m <= next {
                return t.max(v - m);
            }
        }
        unreachable!("last interval is unbounded")
    }

    /// Values of `v` at which [`ThickeningProfile::capacity`] changes slope.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        if let Some(&(t0, _)) = self.steps.first() {
            out.push(t0);
        }
        for (i, &(t, m)) in self.steps.iter().enumerate() {
            out.push(m + t);
            if let Some(&(next, _)) = self.steps.get(i + 1) {
                out.push(m + next);
            }
        }
        out
    }
}

pub fn prokhorov_capacity(sp: &FiniteMMSpace, a: &[usize], v: f64) -> ExtReal {
    ExtReal::new(ThickeningProfile::new(sp, a).capacity(v))
}

/// `sup_{v >= 0} (c_p(v) - c_q(v))`, attained at a kink of either side.
fn sup_capacity_difference(p: &ThickeningProfile, q: &ThickeningProfile) -> f64 {
    p.breakpoints()
        .into_iter()
        .chain(q.breakpoints())
        .map(|v| p.capacity(v) - q.capacity(v))
        .fold(0.0, f64::max)
}

fn subsets(n: usize) -> Result<impl Iterator<Item = Vec<usize>>, MeasureError> {
    if n > SUBSET_LIMIT {
        return Err(MeasureError::TooLarge(n, SUBSET_LIMIT));
    }
    Ok((0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ProkhorovVariant {
    /// `sup_{A,v} c^μ(f*A, v) - c^ν(A, v)`
    #[default]
    Seminorm,
    /// `sup_{A,v} c^ν(A, v) - c^μ(f*A, v)` over `A` with nonempty preimage.
    CoSeminorm,
}

/// Prokhorov seminorm of `f: (X, μ) → (Y, ν)`.
///
/// For the default variant, the difference in `v` is maximal where
/// `c^ν(A, ·)` leaves a flat piece, i.e. at `v = ν_j + t_j`, so the value is
/// `sup0 { c^μ(f*A, ν_j + t_j) - t_j }` over nonempty `A` and steps `j`.
pub fn prokhorov_seminorm(f: &MMMap, variant: ProkhorovVariant) -> Result<ExtReal, MeasureError> {
    let mut best = 0.0f64;
    for a in subsets(f.target.len())? {
        if a.is_empty() {
            continue;
        }
        let pre = f.preimage(&a);
        let src = ThickeningProfile::new(&f.source, &pre);
        let tgt = ThickeningProfile::new(&f.target, &a);
        match variant {
            ProkhorovVariant::Seminorm => {
                for &(t, m) in &tgt.steps {
                    best = best.max(src.capacity(m + t) - t);
                }
            }
            ProkhorovVariant::CoSeminorm => {
                if !pre.is_empty() {
                    best = best.max(sup_capacity_difference(&tgt, &src));
                }
            }
        }
    }
    Ok(ExtReal::new(best))
}

/// `inf { δ > 0 : μ(A^{δ)}) + δ >= ν(A) for all A } = sup_A c^μ(A, ν(A))`,
/// or the average of both directions when `symmetrize`.
pub fn prokhorov_distance(mu: &FiniteMMSpace, nu: &FiniteMMSpace, symmetrize: bool) -> Result<ExtReal, MeasureError> {
    if mu.base != nu.base {
        return Err(MeasureError::BaseMismatch);
    }
    let directed = |p: &FiniteMMSpace, q: &FiniteMMSpace| -> Result<f64, MeasureError> {
        Ok(subsets(p.len())?
            .map(|a| ThickeningProfile::new(p, &a).capacity(q.measure_of(&a)))
            .fold(0.0, f64::max))
    };
    let fwd = directed(mu, nu)?;
    if !symmetrize {
        return Ok(ExtReal::new(fwd));
    }
    Ok(ExtReal::new((fwd + directed(nu, mu)?) / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeReport {
    /// Prokhorov seminorm of the initial morphism `∅ → M`.
    pub norm_of_initial: ExtReal,
    pub volume: f64,
}

/// Norm of `∅ → M` by the capacity form, where `c(∅, v) = v`.
pub fn volume_norm(sp: &FiniteMMSpace) -> Result<VolumeReport, MeasureError> {
    let empty = ThickeningProfile { steps: vec![] };
    let mut best = 0.0f64;
    for a in subsets(sp.len())? {
        best = best.max(sup_capacity_difference(&empty, &ThickeningProfile::new(sp, &a)));
    }
    Ok(VolumeReport {
        norm_of_initial: ExtReal::new(best),
        volume: sp.volume(),
    })
}
