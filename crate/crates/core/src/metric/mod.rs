//! Finite metric spaces with multi-valued maps.
//!
//! The dilatation seminorm of `f: X → P(Y)` is
//! `sup0 { d(x,y) - d(y1,y2) : y1 ∈ f[x], y2 ∈ f[y] }`, which coincides with
//! the capacity form `sup0 { diam f*A - diam A }` over subsets `A` of `Y`.
//! Subsets are passed as sorted index slices.

mod distance;
mod packing;

pub use distance::{
    dil_distance, dil_distance_directed, distortion, expansive_endomorphisms, gh_distance,
    isometry_search, DilDistance, GhResult, DIL_EXHAUSTIVE_LIMIT,
};
pub use packing::{packing_stats, PackingStats, PACKING_LIMIT};

use serde::{Deserialize, Serialize};

use crate::ext::{sup0, ExtReal, TOL};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MetricError {
    #[error("distance matrix must be {0}x{0}")]
    Shape(usize),
    #[error("distance ({0}, {1}) is negative or not finite")]
    BadEntry(usize, usize),
    #[error("diagonal entry {0} is nonzero")]
    Diagonal(usize),
    #[error("distance between distinct points {0} and {1} is zero")]
    Pseudo(usize, usize),
    #[error("distance is asymmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("triangle inequality fails at ({0}, {1}, {2})")]
    Triangle(usize, usize, usize),
    #[error("space is empty")]
    EmptySpace,
    #[error("point {0} has an empty value set")]
    EmptyValue(usize),
    #[error("point {0} maps outside the target")]
    OutOfRange(usize),
    #[error("map is multi-valued at point {0}")]
    MultiValued(usize),
    #[error("map has {got} value sets, source has {expected} points")]
    Length { expected: usize, got: usize },
    #[error("space has {0} points, exhaustive search is limited to {1}")]
    TooLarge(usize, usize),
}

/// Points with a distance matrix. Pseudo- and quasi-metrics must be
/// requested explicitly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    points: Vec<String>,
    dist: Vec<Vec<f64>>,
    #[serde(default)]
    allow_pseudo: bool,
    #[serde(default)]
    allow_quasi: bool,
}

impl FiniteMetricSpace {
    pub fn new(points: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        Self::with_flags(points, dist, false, false)
    }

    pub fn with_flags(
        points: Vec<String>,
        dist: Vec<Vec<f64>>,
        allow_pseudo: bool,
        allow_quasi: bool,
    ) -> Result<Self, MetricError> {
        let sp = FiniteMetricSpace {
            points,
            dist,
            allow_pseudo,
            allow_quasi,
        };
        sp.validate()?;
        Ok(sp)
    }

    /// Subspace of the real line, points labelled by their coordinates.
    pub fn from_line(xs: &[f64]) -> Self {
        let points = xs.iter().map(|x| format!("{x}")).collect();
        let dist = xs.iter().map(|a| xs.iter().map(|b| (a - b).abs()).collect()).collect();
        Self::new(points, dist).expect("distinct reals form a metric space")
    }

    /// Unlabelled metric on `0..n`.
    pub fn from_matrix(dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        Self::new((0..dist.len()).map(|i| i.to_string()).collect(), dist)
    }

    pub fn point() -> Self {
        Self::from_line(&[0.0])
    }

    /// Two points at distance `r`.
    pub fn two_point(r: f64) -> Self {
        Self::from_line(&[0.0, r])
    }

    pub fn validate(&self) -> Result<(), MetricError> {
        let n = self.points.len();
        if self.dist.len() != n || self.dist.iter().any(|r| r.len() != n) {
            return Err(MetricError::Shape(n));
        }
        for i in 0..n {
            if self.dist[i][i] != 0.0 {
                return Err(MetricError::Diagonal(i));
            }
            for j in 0..n {
                let d = self.dist[i][j];
                if !d.is_finite() || d < 0.0 {
                    return Err(MetricError::BadEntry(i, j));
                }
                if i != j && d == 0.0 && !self.allow_pseudo {
                    return Err(MetricError::Pseudo(i, j));
                }
                if (d - self.dist[j][i]).abs() > TOL && !self.allow_quasi {
                    return Err(MetricError::Asymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.dist[i][k] > self.dist[i][j] + self.dist[j][k] + TOL {
                        return Err(MetricError::Triangle(i, j, k));
                    }
                }
            }
        }
        Ok(())
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

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn is_pseudo(&self) -> bool {
        self.allow_pseudo
    }

    pub fn is_quasi(&self) -> bool {
        self.allow_quasi
    }

    /// Same points with all distances multiplied by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0);
        FiniteMetricSpace {
            points: self.points.clone(),
            dist: self.dist.iter().map(|r| r.iter().map(|d| d * lambda).collect()).collect(),
            allow_pseudo: self.allow_pseudo,
            allow_quasi: self.allow_quasi,
        }
    }

    /// `d(x, A)`; `∞` for empty `A`.
    pub fn dist_to_set(&self, x: usize, a: &[usize]) -> f64 {
        a.iter().map(|&y| self.dist[x][y]).fold(f64::INFINITY, f64::min)
    }

    pub fn all_points(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

/// `sup0` of pairwise distances in `subset`.
pub fn diameter(sp: &FiniteMetricSpace, subset: &[usize]) -> ExtReal {
    sup0(
        subset
            .iter()
            .flat_map(|&i| subset.iter().map(move |&j| ExtReal::new(sp.d(i, j)))),
    )
}

/// A multi-valued map with nonempty value sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiMap {
    source: FiniteMetricSpace,
    target: FiniteMetricSpace,
    assign: Vec<Vec<usize>>,
}

impl MultiMap {
    pub fn new(
        source: FiniteMetricSpace,
        target: FiniteMetricSpace,
        assign: Vec<Vec<usize>>,
    ) -> Result<Self, MetricError> {
        if assign.len() != source.len() {
            return Err(MetricError::Length {
                expected: source.len(),
                got: assign.len(),
            });
        }
        let mut assign = assign;
        for (x, values) in assign.iter_mut().enumerate() {
            if values.is_empty() {
                return Err(MetricError::EmptyValue(x));
            }
            if values.iter().any(|&y| y >= target.len()) {
                return Err(MetricError::OutOfRange(x));
            }
            values.sort_unstable();
            values.dedup();
        }
        Ok(MultiMap { source, target, assign })
    }

    pub fn single(source: FiniteMetricSpace, target: FiniteMetricSpace, f: &[usize]) -> Result<Self, MetricError> {
        Self::new(source, target, f.iter().map(|&y| vec![y]).collect())
    }

    pub fn identity(sp: &FiniteMetricSpace) -> Self {
        Self::single(sp.clone(), sp.clone(), &sp.all_points()).expect("identity is valid")
    }

    pub fn source(&self) -> &FiniteMetricSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteMetricSpace {
        &self.target
    }

    pub fn values(&self, x: usize) -> &[usize] {
        &self.assign[x]
    }

    pub fn assign(&self) -> &[Vec<usize>] {
        &self.assign
    }

    /// The underlying function when every value set is a singleton.
    pub fn as_function(&self) -> Result<Vec<usize>, MetricError> {
        self.assign
            .iter()
            .enumerate()
            .map(|(x, v)| if v.len() == 1 { Ok(v[0]) } else { Err(MetricError::MultiValued(x)) })
            .collect()
    }

    /// `g ∘ self`: `x ↦ ⋃ g[f[x]]`.
    pub fn then(&self, g: &MultiMap) -> MultiMap {
        assert_eq!(self.target.len(), g.source.len());
        let assign = self
            .assign
            .iter()
            .map(|ys| ys.iter().flat_map(|&y| g.assign[y].iter().copied()).collect())
            .collect();
        MultiMap::new(self.source.clone(), g.target.clone(), assign).expect("composite is valid")
    }

    /// `f*A = { x : f[x] ∩ A ≠ ∅ }`.
    pub fn preimage(&self, a: &[usize]) -> Vec<usize> {
        (0..self.source.len())
            .filter(|&x| self.assign[x].iter().any(|y| a.contains(y)))
            .collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.assign.iter().flatten().copied().collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// Pointwise sup over pairs and selections of `term(d_X(x,y), d_Y(y1,y2))`.
fn sup_over_selections(f: &MultiMap, term: impl Fn(f64, f64) -> f64) -> ExtReal {
    let (x_sp, y_sp) = (&f.source, &f.target);
    let mut best = 0.0f64;
    for x in 0..x_sp.len() {
        for y in 0..x_sp.len() {
            for &y1 in &f.assign[x] {
                for &y2 in &f.assign[y] {
                    best = best.max(term(x_sp.d(x, y), y_sp.d(y1, y2)));
                }
            }
        }
    }
    ExtReal::new(best)
}

/// `sup0 { d(x,y) - d(y1,y2) }` over pairs and selections.
pub fn dilatation_norm(f: &MultiMap) -> ExtReal {
    sup_over_selections(f, |dx, dy| dx - dy)
}

/// `sup0 { d(y1,y2) - d(x,y) }` over pairs and selections.
pub fn dilatation_left_dual(f: &MultiMap) -> ExtReal {
    sup_over_selections(f, |dx, dy| dy - dx)
}

fn mask_to_set(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Diameters of all subsets, indexed by bitmask.
fn subset_diameters(sp: &FiniteMetricSpace) -> Vec<f64> {
    let n = sp.len();
    assert!(n <= 20, "subset enumeration limited to 20 points");
    let mut diam = vec![0.0f64; 1 << n];
    for mask in 1u64..1 << n {
        let top = 63 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let far = mask_to_set(rest, n).into_iter().map(|j| sp.d(top, j)).fold(0.0, f64::max);
        diam[mask as usize] = diam[rest as usize].max(far);
    }
    diam
}

fn preimage_masks(f: &MultiMap) -> Vec<u64> {
    let n = f.target.len();
    let value_masks: Vec<u64> = f.assign.iter().map(|v| v.iter().fold(0u64, |m, &y| m | 1 << y)).collect();
    (0u64..1 << n)
        .map(|a| {
            value_masks
                .iter()
                .enumerate()
                .filter(|(_, &vm)| vm & a != 0)
                .fold(0u64, |m, (x, _)| m | 1 << x)
        })
        .collect()
}

/// `sup0 { diam f*A - diam A }` over all subsets `A` of the target.
/// Exponential in the target size.
pub fn dilatation_norm_capacity(f: &MultiMap) -> ExtReal {
    let dx = subset_diameters(&f.source);
    let dy = subset_diameters(&f.target);
    let pre = preimage_masks(f);
    ExtReal::new(
        pre.iter()
            .enumerate()
            .map(|(a, &p)| dx[p as usize] - dy[a])
            .fold(0.0, f64::max),
    )
}

/// `sup0 { diam A - diam f*A }` over subsets `A` whose preimage is nonempty.
pub fn codiameter_seminorm(f: &MultiMap) -> ExtReal {
    let dx = subset_diameters(&f.source);
    let dy = subset_diameters(&f.target);
    let pre = preimage_masks(f);
    ExtReal::new(
        pre.iter()
            .enumerate()
            .filter(|(_, &p)| p != 0)
            .map(|(a, &p)| dy[a] - dx[p as usize])
            .fold(0.0, f64::max),
    )
}

/// `d'(x,y) = d(f x, f y)` on the source points.
pub fn pullback_metric(f: &MultiMap) -> Result<FiniteMetricSpace, MetricError> {
    let g = f.as_function()?;
    let dist = g.iter().map(|&a| g.iter().map(|&b| f.target.d(a, b)).collect()).collect();
    FiniteMetricSpace::with_flags(f.source.points.clone(), dist, true, f.target.allow_quasi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Thickening {
    /// `{ x : d(x,A) < r }`
    Open,
    /// `{ x : d(x,A) <= r }`
    Closed,
}

pub fn thicken(sp: &FiniteMetricSpace, a: &[usize], r: f64, mode: Thickening) -> Vec<usize> {
    (0..sp.len())
        .filter(|&x| {
            let d = sp.dist_to_set(x, a);
            match mode {
                Thickening::Open => d < r,
                Thickening::Closed => d <= r,
            }
        })
        .collect()
}

/// `max` of one-sided distances; `∞` when exactly one set is empty.
pub fn hausdorff_distance(sp: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> ExtReal {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return ExtReal::ZERO,
        (true, false) | (false, true) => return ExtReal::PosInf,
        _ => {}
    }
    let one_sided = |p: &[usize], q: &[usize]| p.iter().map(|&x| sp.dist_to_set(x, q)).fold(0.0, f64::max);
    ExtReal::new(one_sided(a, b).max(one_sided(b, a)))
}

/// Whether the closed `l`-thickening of `a` covers the space.
pub fn l_dense_check(sp: &FiniteMetricSpace, a: &[usize], l: f64) -> bool {
    thicken(sp, a, l, Thickening::Closed).len() == sp.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> FiniteMetricSpace {
        FiniteMetricSpace::from_line(xs)
    }

    fn collapse_to_ends() -> MultiMap {
        MultiMap::single(line(&[0.0, 1.0, 2.0]), line(&[0.0, 2.0]), &[0, 1, 1]).unwrap()
    }

    #[test]
    fn diameters() {
        let sp = line(&[0.0, 1.0, 2.0]);
        assert_eq!(diameter(&sp, &[1]), ExtReal::ZERO);
        assert_eq!(diameter(&sp, &[0, 1, 2]), ExtReal::new(2.0));
        assert_eq!(diameter(&sp, &[]), ExtReal::ZERO);
    }

    #[test]
    fn dilatation_examples() {
        let sp = line(&[0.0, 1.0, 3.0]);
        let id = MultiMap::identity(&sp);
        assert_eq!(dilatation_norm(&id), ExtReal::ZERO);
        assert_eq!(dilatation_norm_capacity(&id), ExtReal::ZERO);
        assert_eq!(dilatation_left_dual(&id), ExtReal::ZERO);
        assert_eq!(codiameter_seminorm(&id), ExtReal::ZERO);

        let f = collapse_to_ends();
        assert_eq!(dilatation_norm(&f), ExtReal::new(1.0));
        assert_eq!(dilatation_norm_capacity(&f), ExtReal::new(1.0));
        assert_eq!(dilatation_left_dual(&f), ExtReal::new(1.0));
        assert_eq!(codiameter_seminorm(&f), ExtReal::ZERO);

        let pq = FiniteMetricSpace::new(vec!["p".into(), "q".into()], vec![vec![0.0, 10.0], vec![10.0, 0.0]]).unwrap();
        let multi = MultiMap::new(line(&[0.0, 1.0]), pq, vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!(dilatation_norm(&multi), ExtReal::new(1.0));
        assert_eq!(dilatation_norm_capacity(&multi), ExtReal::new(1.0));
    }

    #[test]
    fn doubling_and_halving() {
        let doubling = MultiMap::single(line(&[0.0, 1.0]), line(&[0.0, 2.0]), &[0, 1]).unwrap();
        assert_eq!(codiameter_seminorm(&doubling), ExtReal::new(1.0));
        assert_eq!(dilatation_norm(&doubling), ExtReal::ZERO);
        let halving = MultiMap::single(line(&[0.0, 2.0]), line(&[0.0, 1.0]), &[0, 1]).unwrap();
        assert_eq!(dilatation_left_dual(&halving), ExtReal::ZERO);
        assert_eq!(dilatation_norm(&halving), ExtReal::new(1.0));
        let constant = MultiMap::single(line(&[0.0, 1.0]), FiniteMetricSpace::point(), &[0, 0]).unwrap();
        assert_eq!(dilatation_norm_capacity(&constant), ExtReal::new(1.0));
    }

    #[test]
    fn pullbacks() {
        let doubling = MultiMap::single(line(&[0.0, 1.0]), line(&[0.0, 2.0]), &[0, 1]).unwrap();
        assert_eq!(pullback_metric(&doubling).unwrap().d(0, 1), 2.0);
        let constant = MultiMap::single(line(&[0.0, 1.0]), FiniteMetricSpace::point(), &[0, 0]).unwrap();
        let pb = pullback_metric(&constant).unwrap();
        assert!(pb.is_pseudo() && pb.d(0, 1) == 0.0);
        let multi = MultiMap::new(line(&[0.0]), line(&[0.0, 1.0]), vec![vec![0, 1]]).unwrap();
        assert_eq!(pullback_metric(&multi), Err(MetricError::MultiValued(0)));
    }

    #[test]
    fn thickenings_and_hausdorff() {
        let sp = line(&[0.0, 1.0, 2.0]);
        assert_eq!(thicken(&sp, &[0], 1.0, Thickening::Open), vec![0]);
        assert_eq!(thicken(&sp, &[0], 1.0, Thickening::Closed), vec![0, 1]);
        assert!(thicken(&sp, &[], 5.0, Thickening::Closed).is_empty());
        assert_eq!(hausdorff_distance(&sp, &[0, 2], &[0, 2]), ExtReal::ZERO);
        let two = line(&[0.0, 3.0]);
        assert_eq!(hausdorff_distance(&two, &[0], &[0, 1]), ExtReal::new(3.0));
        assert_eq!(hausdorff_distance(&two, &[], &[0]), ExtReal::PosInf);
        assert!(l_dense_check(&sp, &[0], 2.0));
        assert!(!l_dense_check(&sp, &[0], 0.5));
        assert!(l_dense_check(&sp, &[0, 1, 2], 0.0));
    }

    #[test]
    fn validation() {
        assert_eq!(
            FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(MetricError::Asymmetric(0, 1))
        );
        assert_eq!(
            FiniteMetricSpace::from_matrix(vec![vec![0.0, 0.0], vec![0.0, 0.0]]),
            Err(MetricError::Pseudo(0, 1))
        );
        let tri = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        assert!(matches!(FiniteMetricSpace::from_matrix(tri), Err(MetricError::Triangle(..))));
        assert_eq!(
            MultiMap::new(line(&[0.0]), line(&[0.0]), vec![vec![]]),
            Err(MetricError::EmptyValue(0))
        );
    }

    #[test]
    fn composition_of_multimaps() {
        let x = line(&[0.0, 1.0]);
        let f = MultiMap::new(x.clone(), x.clone(), vec![vec![0, 1], vec![1]]).unwrap();
        let g = MultiMap::single(x.clone(), x.clone(), &[1, 0]).unwrap();
        assert_eq!(f.then(&g).assign(), &[vec![0, 1], vec![0]]);
        assert_eq!(f.preimage(&[0]), vec![0]);
    }
}
