//! Gromov–Hausdorff distance, dilatation distance and isometry search.

use serde::Serialize;

use super::{FiniteMetricSpace, MetricError};
use crate::category::Symmetrize;
use crate::ext::ExtReal;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhResult {
    /// Half the minimal distortion.
    pub value: ExtReal,
    /// An optimal correspondence as `(x, y)` pairs.
    pub correspondence: Vec<(usize, usize)>,
}

/// Gromov–Hausdorff distance via correspondences.
///
/// Every correspondence contains one of the form `graph(f) ∪ graph(g)ᵀ`
/// with no larger distortion, and `g` only matters on points outside the
/// image of `f`. Branch and bound over those choices is therefore exact.
pub fn gh_distance(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<GhResult, MetricError> {
    if x.is_empty() || y.is_empty() {
        return Err(MetricError::EmptySpace);
    }
    let diam = |s: &FiniteMetricSpace| s.matrix().iter().flatten().copied().fold(0.0, f64::max);
    let lower = (diam(x) - diam(y)).abs();
    let mut search = GhSearch {
        x,
        y,
        rel: Vec::new(),
        covered: vec![0; y.len()],
        best: f64::INFINITY,
        best_rel: Vec::new(),
        lower,
    };
    search.assign_x(0, 0.0);
    Ok(GhResult {
        value: ExtReal::new(search.best / 2.0),
        correspondence: search.best_rel,
    })
}

struct GhSearch<'a> {
    x: &'a FiniteMetricSpace,
    y: &'a FiniteMetricSpace,
    rel: Vec<(usize, usize)>,
    covered: Vec<usize>,
    best: f64,
    best_rel: Vec<(usize, usize)>,
    lower: f64,
}

impl GhSearch<'_> {
    fn added_distortion(&self, a: usize, b: usize) -> f64 {
        self.rel
            .iter()
            .map(|&(p, q)| (self.x.d(a, p) - self.y.d(b, q)).abs())
            .fold(0.0, f64::max)
    }

    fn done(&self) -> bool {
        self.best <= self.lower + 1e-12
    }

    fn assign_x(&mut self, i: usize, cur: f64) {
        if i == self.x.len() {
            self.cover_y(0, cur);
            return;
        }
        for b in 0..self.y.len() {
            let d = cur.max(self.added_distortion(i, b));
            if d >= self.best {
                continue;
            }
            self.rel.push((i, b));
            self.covered[b] += 1;
            self.assign_x(i + 1, d);
            self.covered[b] -= 1;
            self.rel.pop();
            if self.done() {
                return;
            }
        }
    }

    fn cover_y(&mut self, j: usize, cur: f64) {
        if j == self.y.len() {
            if cur < self.best {
                self.best = cur;
                self.best_rel = self.rel.clone();
            }
            return;
        }
        if self.covered[j] > 0 {
            self.cover_y(j + 1, cur);
            return;
        }
        for a in 0..self.x.len() {
            let d = cur.max(self.added_distortion(a, j));
            if d >= self.best {
                continue;
            }
            self.rel.push((a, j));
            self.cover_y(j + 1, d);
            self.rel.pop();
            if self.done() {
                return;
            }
        }
    }
}

/// Distortion of a relation, for callers holding an explicit correspondence.
pub fn distortion(x: &FiniteMetricSpace, y: &FiniteMetricSpace, rel: &[(usize, usize)]) -> f64 {
    let mut best = 0.0f64;
    for &(a, b) in rel {
        for &(p, q) in rel {
            best = best.max((x.d(a, p) - y.d(b, q)).abs());
        }
    }
    best
}

/// Maps `X → Y` enumerated exhaustively up to this many candidates.
pub const DIL_EXHAUSTIVE_LIMIT: usize = 3125;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DilDistance {
    pub value: ExtReal,
    /// False when a heuristic search was used; the value is then an upper bound.
    pub exact: bool,
    /// Best map `X → Y` found.
    pub forward: Vec<usize>,
    /// Best map `Y → X` found, for symmetrized modes.
    pub backward: Option<Vec<usize>>,
}

/// Dilatation of `f` restricted to the first `f.len()` source points.
fn function_dilatation(x: &FiniteMetricSpace, y: &FiniteMetricSpace, f: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for a in 0..f.len() {
        for b in a + 1..f.len() {
            best = best.max(x.d(a, b) - y.d(f[a], f[b])).max(x.d(b, a) - y.d(f[b], f[a]));
        }
    }
    best
}

fn candidate_count(x: usize, y: usize) -> Option<usize> {
    (y as u128)
        .checked_pow(x as u32)
        .filter(|&c| c <= DIL_EXHAUSTIVE_LIMIT as u128)
        .map(|c| c as usize)
}

/// `min` over single-valued maps `X → Y` of the dilatation norm.
pub fn dil_distance_directed(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<DilDistance, MetricError> {
    if x.is_empty() || y.is_empty() {
        return Err(MetricError::EmptySpace);
    }
    let (value, forward, exact) = match candidate_count(x.len(), y.len()) {
        Some(_) => {
            let (v, f) = exhaustive_min(x, y);
            (v, f, true)
        }
        None => {
            let (v, f) = local_search_min(x, y);
            (v, f, false)
        }
    };
    Ok(DilDistance {
        value: ExtReal::new(value),
        exact,
        forward,
        backward: None,
    })
}

fn exhaustive_min(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> (f64, Vec<usize>) {
    let (n, m) = (x.len(), y.len());
    let mut f = vec![0usize; n];
    let mut best = (f64::INFINITY, f.clone());
    loop {
        let v = function_dilatation(x, y, &f);
        if v < best.0 {
            best = (v, f.clone());
        }
        let mut i = 0;
        while i < n {
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

/// Greedy construction from every choice of the first image, then
/// single-point improvement moves until none helps.
fn local_search_min(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> (f64, Vec<usize>) {
    let (n, m) = (x.len(), y.len());
    let mut best = (f64::INFINITY, Vec::new());
    for start in 0..m {
        let mut f = vec![start];
        for _ in 1..n {
            let choice = (0..m)
                .map(|b| {
                    f.push(b);
                    let v = function_dilatation(x, y, &f);
                    f.pop();
                    (v, b)
                })
                .min_by(|p, q| p.0.total_cmp(&q.0))
                .expect("nonempty target");
            f.push(choice.1);
        }
        let mut cur = function_dilatation(x, y, &f);
        loop {
            let mut improved = false;
            for a in 0..n {
                let old = f[a];
                for b in 0..m {
                    if b == old {
                        continue;
                    }
                    f[a] = b;
                    let v = function_dilatation(x, y, &f);
                    if v < cur - 1e-12 {
                        cur = v;
                        improved = true;
                        break;
                    }
                    f[a] = old;
                }
            }
            if !improved {
                break;
            }
        }
        if cur < best.0 {
            best = (cur, f);
        }
    }
    best
}

/// Dilatation distance, symmetrized per `mode`.
pub fn dil_distance(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    mode: Symmetrize,
) -> Result<DilDistance, MetricError> {
    let fwd = dil_distance_directed(x, y)?;
    if mode == Symmetrize::None {
        return Ok(fwd);
    }
    let bwd = dil_distance_directed(y, x)?;
    Ok(DilDistance {
        value: mode.apply(fwd.value, bwd.value),
        exact: fwd.exact && bwd.exact,
        forward: fwd.forward,
        backward: Some(bwd.forward),
    })
}

/// A distance-preserving bijection `X → Y`, if one exists.
pub fn isometry_search(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    let n = x.len();
    let mut assign = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        x: &FiniteMetricSpace,
        y: &FiniteMetricSpace,
        assign: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = assign.len();
        if i == x.len() {
            return true;
        }
        for b in 0..y.len() {
            if used[b] {
                continue;
            }
            let ok = assign.iter().enumerate().all(|(p, &q)| {
                (x.d(i, p) - y.d(b, q)).abs() <= 1e-9 && (x.d(p, i) - y.d(q, b)).abs() <= 1e-9
            });
            if !ok {
                continue;
            }
            assign.push(b);
            used[b] = true;
            if rec(x, y, assign, used) {
                return true;
            }
            used[b] = false;
            assign.pop();
        }
        false
    }
    rec(x, y, &mut assign, &mut used).then_some(assign)
}

/// All maps `h: X → X` with dilatation norm 0, i.e. `d(h a, h b) >= d(a, b)`.
pub fn expansive_endomorphisms(x: &FiniteMetricSpace) -> Vec<Vec<usize>> {
    let n = x.len();
    let mut out = Vec::new();
    let mut h = Vec::with_capacity(n);
    fn rec(x: &FiniteMetricSpace, h: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = h.len();
        if i == x.len() {
            out.push(h.clone());
            return;
        }
        for b in 0..x.len() {
            let ok = h
                .iter()
                .enumerate()
                .all(|(p, &q)| x.d(b, q) >= x.d(i, p) - 1e-9 && x.d(q, b) >= x.d(p, i) - 1e-9);
            if ok {
                h.push(b);
                rec(x, h, out);
                h.pop();
            }
        }
    }
    rec(x, &mut h, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> FiniteMetricSpace {
        FiniteMetricSpace::from_line(xs)
    }

    #[test]
    fn gh_examples() {
        let a = line(&[0.0, 1.0, 3.0]);
        let b = line(&[5.0, 3.0, 2.0]);
        assert_eq!(gh_distance(&a, &b).unwrap().value, ExtReal::ZERO);
        assert_eq!(gh_distance(&line(&[0.0, 1.0]), &line(&[0.0, 2.0])).unwrap().value, ExtReal::new(0.5));
        let r = gh_distance(&FiniteMetricSpace::point(), &line(&[0.0, 2.0])).unwrap();
        assert_eq!(r.value, ExtReal::new(1.0));
        assert_eq!(distortion(&FiniteMetricSpace::point(), &line(&[0.0, 2.0]), &r.correspondence), 2.0);
    }

    #[test]
    fn dil_examples() {
        let a = line(&[0.0, 1.0]);
        let b = line(&[0.0, 2.0]);
        assert_eq!(dil_distance(&a, &a, Symmetrize::None).unwrap().value, ExtReal::ZERO);
        assert_eq!(dil_distance(&a, &b, Symmetrize::None).unwrap().value, ExtReal::ZERO);
        assert_eq!(dil_distance(&b, &a, Symmetrize::None).unwrap().value, ExtReal::new(1.0));
        let plus = dil_distance(&a, &b, Symmetrize::Plus).unwrap();
        assert_eq!(plus.value, ExtReal::new(0.5));
        assert!(plus.exact);
    }

    #[test]
    fn dil_switches_to_heuristic() {
        let xs: Vec<f64> = (0..6).map(f64::from).collect();
        let r = dil_distance_directed(&line(&xs), &line(&xs)).unwrap();
        assert!(!r.exact);
        assert_eq!(r.value, ExtReal::ZERO);
    }

    #[test]
    fn isometries() {
        let a = line(&[0.0, 1.0, 3.0]);
        assert_eq!(isometry_search(&a, &a), Some(vec![0, 1, 2]));
        assert_eq!(isometry_search(&line(&[0.0, 1.0]), &line(&[0.0, 2.0])), None);
        // same distance multiset {1,1,1,1,2,2}: path 0-1-2-3 scaled vs a different arrangement
        let p = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 1.0, 0.0],
        ])
        .unwrap();
        let q = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 1.0, 2.0],
            vec![1.0, 0.0, 2.0, 1.0],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![2.0, 1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(isometry_search(&p, &q).is_some());
        let r = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 2.0, 2.0, 1.0],
            vec![2.0, 0.0, 1.0, 1.0],
            vec![2.0, 1.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(isometry_search(&p, &r), None);
    }

    #[test]
    fn expansive_maps_of_line_segment() {
        let ends = expansive_endomorphisms(&line(&[0.0, 1.0, 3.0]));
        assert_eq!(ends, vec![vec![0, 1, 2]]);
        assert_eq!(expansive_endomorphisms(&line(&[0.0, 1.0])).len(), 2);
    }
}
