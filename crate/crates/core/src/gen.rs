//! Seeded random instances for property checks and the `generate` command.
//! Every generator draws from the caller's RNG, so a single seed fixes a
//! whole run.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::discrete::{cost_pseudometric, CostSystem, FiniteFunction, SimplicialComplex};
use crate::ext::ExtReal;
use crate::linear::Matrix;
use crate::measure::{FiniteMMSpace, MMMap};
use crate::metric::{FiniteMetricSpace, MultiMap};
use crate::topo::FiniteTopSpace;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    rand::SeedableRng::seed_from_u64(seed)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Points drawn uniformly from the unit cube with Euclidean distances.
pub fn euclidean_space(rng: &mut Rng64, n: usize) -> FiniteMetricSpace {
    let pts: Vec<[f64; 3]> = (0..n).map(|_| [rng.gen(), rng.gen(), rng.gen()]).collect();
    let dist = pts
        .iter()
        .map(|a| {
            pts.iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
                .collect()
        })
        .collect();
    FiniteMetricSpace::new(labels(n), dist).expect("distinct random points")
}

/// Random symmetric costs repaired to a metric by shortest-path closure.
pub fn repaired_space(rng: &mut Rng64, n: usize) -> FiniteMetricSpace {
    repair(n, |_, _| rng.gen_range(0.05..1.0))
}

/// Integer-valued metric with entries in `1..=max`; exact arithmetic keeps
/// breakpoint identities free of rounding.
pub fn integer_space(rng: &mut Rng64, n: usize, max: u32) -> FiniteMetricSpace {
    repair(n, |_, _| f64::from(rng.gen_range(1..=max.max(1))))
}

fn repair(n: usize, mut cost: impl FnMut(usize, usize) -> f64) -> FiniteMetricSpace {
    let mut c = vec![vec![ExtReal::ZERO; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = ExtReal::new(cost(i, j));
            c[i][j] = v;
            c[j][i] = v;
        }
    }
    let d = cost_pseudometric(&CostSystem::new(labels(n), c).expect("nonnegative costs"));
    let dist = d.dist.iter().map(|r| r.iter().map(|v| v.to_f64()).collect()).collect();
    FiniteMetricSpace::new(labels(n), dist).expect("positive costs give a metric")
}

/// Either generator, chosen at random.
pub fn metric_space(rng: &mut Rng64, n: usize) -> FiniteMetricSpace {
    if rng.gen_bool(0.5) {
        euclidean_space(rng, n)
    } else {
        repaired_space(rng, n)
    }
}

/// Dirichlet(1, ..., 1) weights, summing to 1.
pub fn dirichlet(rng: &mut Rng64, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|x| x / s).collect()
}

/// Probability measure on `base`; with `zero_prob`, individual atoms are
/// dropped (at least one survives).
pub fn measure_on(rng: &mut Rng64, base: FiniteMetricSpace, zero_prob: f64) -> FiniteMMSpace {
    let n = base.len();
    let mut w = dirichlet(rng, n);
    if n > 0 && zero_prob > 0.0 {
        let keep = rng.gen_range(0..n);
        for (i, x) in w.iter_mut().enumerate() {
            if i != keep && rng.gen_bool(zero_prob) {
                *x = 0.0;
            }
        }
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= s);
    }
    FiniteMMSpace::new(base, w).expect("valid weights")
}

pub fn mm_space(rng: &mut Rng64, n: usize) -> FiniteMMSpace {
    let base = metric_space(rng, n);
    measure_on(rng, base, 0.0)
}

pub fn function(rng: &mut Rng64, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

pub fn finite_function(rng: &mut Rng64, n: usize, m: usize) -> FiniteFunction {
    FiniteFunction::new(m, function(rng, n, m)).expect("in range")
}

/// Nonempty value sets of size at most `max_values`.
pub fn multimap(rng: &mut Rng64, x: FiniteMetricSpace, y: FiniteMetricSpace, max_values: usize) -> MultiMap {
    let m = y.len();
    let all: Vec<usize> = (0..m).collect();
    let assign = (0..x.len())
        .map(|_| {
            let k = rng.gen_range(1..=max_values.clamp(1, m));
            let mut v: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
            v.sort_unstable();
            v
        })
        .collect();
    MultiMap::new(x, y, assign).expect("nonempty values in range")
}

pub fn mm_map(rng: &mut Rng64, x: FiniteMMSpace, y: FiniteMMSpace) -> MMMap {
    let f = function(rng, x.len(), y.len());
    MMMap::new(x, y, f).expect("in range")
}

/// Random order relation: each pair `i < j` related with probability `p`,
/// then closed transitively. The result is a partial order.
pub fn poset(rng: &mut Rng64, n: usize, p: f64) -> FiniteTopSpace {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
        for x in row.iter_mut().skip(i + 1) {
            *x = rng.gen_bool(p);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    FiniteTopSpace::new(labels(n), r).expect("transitive closure of a DAG")
}

/// Random facets on `n` vertices, closed downward.
pub fn simplicial(rng: &mut Rng64, n: usize, facets: usize, max_dim: usize) -> SimplicialComplex {
    let all: Vec<usize> = (0..n).collect();
    let fs: Vec<Vec<usize>> = (0..facets)
        .map(|_| {
            let k = rng.gen_range(1..=(max_dim + 1).min(n).max(1));
            all.choose_multiple(rng, k).copied().collect()
        })
        .collect();
    SimplicialComplex::from_facets(labels(n), &fs).expect("in range")
}

/// Entries uniform in `[-1, 1]`.
pub fn matrix(rng: &mut Rng64, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect())
        .expect("finite entries")
}

/// Values in `[0, 1]`.
pub fn test_function(rng: &mut Rng64, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(metric_space(&mut rng(7), 5), metric_space(&mut rng(7), 5));
        assert_eq!(mm_space(&mut rng(1), 4), mm_space(&mut rng(1), 4));
    }

    #[test]
    fn masses_form_probability() {
        let sp = mm_space(&mut rng(1), 3);
        assert!(sp.mass().iter().all(|&m| m >= 0.0));
        assert!((sp.volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integer_metrics_are_integral() {
        let sp = integer_space(&mut rng(3), 6, 5);
        assert!(sp.matrix().iter().flatten().all(|d| d.fract() == 0.0));
    }

    #[test]
    fn posets_are_antisymmetric() {
        let p = poset(&mut rng(9), 6, 0.4);
        for i in 0..6 {
            for j in 0..6 {
                assert!(!(i != j && p.leq(i, j) && p.leq(j, i)));
            }
        }
    }
}
