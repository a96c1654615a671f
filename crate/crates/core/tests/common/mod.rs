//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library routine it is compared against.
#![allow(dead_code)]

use normcat::ext::ExtReal;
use normcat::metric::FiniteMetricSpace;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

/// All maps `0..n → 0..m`.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..m).map(move |y| {
                    let mut q = p.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    all_maps(n, n)
        .into_iter()
        .filter(|p| {
            let mut s = p.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == n
        })
        .collect()
}

pub fn is_bijection(h: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    h.iter().for_each(|&y| seen[y] = true);
    h.len() == m && seen.iter().all(|&s| s)
}

/// Largest contraction over all selections of a multi-valued map.
pub fn dilatation_oracle(x: &FiniteMetricSpace, y: &FiniteMetricSpace, assign: &[Vec<usize>]) -> f64 {
    let n = x.len();
    let mut sel = vec![0usize; n];
    let mut best = 0.0f64;
    loop {
        for a in 0..n {
            for b in 0..n {
                best = best.max(x.d(a, b) - y.d(assign[a][sel[a]], assign[b][sel[b]]));
            }
        }
        let mut i = 0;
        while i < n {
            sel[i] += 1;
            if sel[i] < assign[i].len() {
                break;
            }
            sel[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

pub fn map_dilatation(x: &FiniteMetricSpace, y: &FiniteMetricSpace, f: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for a in 0..x.len() {
        for b in 0..x.len() {
            best = best.max(x.d(a, b) - y.d(f[a], f[b]));
        }
    }
    best
}

/// `min_f ‖f‖_dil` over all single-valued maps.
pub fn dil_distance_oracle(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    all_maps(x.len(), y.len())
        .iter()
        .map(|f| map_dilatation(x, y, f))
        .fold(f64::INFINITY, f64::min)
}

/// Half the least distortion over every relation with full projections.
pub fn gh_oracle(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    let (n, m) = (x.len(), y.len());
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
    let mut best = f64::INFINITY;
    for mask in 1u64..1 << cells.len() {
        let rel: Vec<(usize, usize)> = cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        let covers_x = (0..n).all(|a| rel.iter().any(|&(p, _)| p == a));
        let covers_y = (0..m).all(|b| rel.iter().any(|&(_, q)| q == b));
        if !covers_x || !covers_y {
            continue;
        }
        let mut dis = 0.0f64;
        for &(a, b) in &rel {
            for &(c, d) in &rel {
                dis = dis.max((x.d(a, c) - y.d(b, d)).abs());
            }
        }
        best = best.min(dis);
    }
    best / 2.0
}

pub fn is_isometry(x: &FiniteMetricSpace, y: &FiniteMetricSpace, h: &[usize]) -> bool {
    is_bijection(h, y.len())
        && (0..x.len()).all(|a| (0..x.len()).all(|b| (x.d(a, b) - y.d(h[a], h[b])).abs() <= 1e-9))
}

/// `μ{ x : d(x, A) < δ }`.
pub fn open_mass(sp: &FiniteMetricSpace, mass: &[f64], a: &[usize], delta: f64) -> f64 {
    (0..sp.len())
        .filter(|&x| a.iter().any(|&p| sp.d(x, p) < delta))
        .map(|x| mass[x])
        .sum()
}

/// Least `δ` satisfying a monotone predicate on `(0, hi]`, by bisection.
fn least(hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    let (mut lo, mut hi) = (0.0f64, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `inf { δ > 0 : μ(A^{δ)}) + δ >= v }` straight from the definition.
pub fn prokhorov_capacity_oracle(sp: &FiniteMetricSpace, mass: &[f64], a: &[usize], v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    least(v, |d| open_mass(sp, mass, a, d) + d >= v)
}

/// `inf { δ > 0 : μ(A^{δ)}) + δ >= ν(A) for all A }`.
pub fn prokhorov_distance_oracle(sp: &FiniteMetricSpace, mu: &[f64], nu: &[f64]) -> f64 {
    let sets = subsets(sp.len());
    let hi = nu.iter().sum::<f64>().max(1e-300);
    least(hi, |d| {
        sets.iter()
            .all(|a| open_mass(sp, mu, a, d) + d >= a.iter().map(|&i| nu[i]).sum::<f64>())
    })
}

/// Every `v` at which a capacity of either side can bend: a distance (or 0)
/// plus the mass of some subset.
fn kink_candidates(sp: &FiniteMetricSpace, mass: &[f64]) -> Vec<f64> {
    let mut ds = vec![0.0];
    for a in 0..sp.len() {
        for b in 0..sp.len() {
            ds.push(sp.d(a, b));
        }
    }
    let masses: Vec<f64> = subsets(sp.len()).iter().map(|s| s.iter().map(|&i| mass[i]).sum()).collect();
    ds.iter().flat_map(|d| masses.iter().map(move |m| d + m)).collect()
}

/// `sup_{A ⊆ Y, v > 0} c^μ(f*A, v) - c^ν(A, v)` evaluated at every kink.
pub fn prokhorov_seminorm_oracle(
    x: &FiniteMetricSpace,
    mu: &[f64],
    y: &FiniteMetricSpace,
    nu: &[f64],
    f: &[usize],
) -> f64 {
    let mut vs = kink_candidates(x, mu);
    vs.extend(kink_candidates(y, nu));
    vs.push(1e3 + mu.iter().sum::<f64>() + nu.iter().sum::<f64>());
    vs.retain(|&v| v > 0.0);
    let mut best = 0.0f64;
    for a in subsets(y.len()) {
        let pre: Vec<usize> = (0..x.len()).filter(|&p| a.contains(&f[p])).collect();
        for &v in &vs {
            let cx = if pre.is_empty() { v } else { prokhorov_capacity_oracle(x, mu, &pre, v) };
            let cy = if a.is_empty() { v } else { prokhorov_capacity_oracle(y, nu, &a, v) };
            best = best.max(cx - cy);
        }
    }
    best
}

/// Sup of `∫ φ d(ν/λ)` over a geometric `λ` grid on which `φ` is
/// 1-Lipschitz for `λ d`; `∞` past `1e6`.
pub fn wasserstein_capacity_grid(sp: &FiniteMetricSpace, mass: &[f64], phi: &[f64], points: usize) -> ExtReal {
    let (lo, hi) = (1e-12f64, 1e12f64);
    let step = (hi / lo).ln() / (points - 1) as f64;
    let integral: f64 = phi.iter().zip(mass).map(|(p, m)| p * m).sum();
    let mut best = 0.0f64;
    for i in 0..points {
        let lambda = lo * (step * i as f64).exp();
        let mut lip = 0.0f64;
        for a in 0..sp.len() {
            for b in 0..sp.len() {
                let diff = (phi[a] - phi[b]).abs();
                if a != b && diff > 0.0 {
                    lip = lip.max(diff / (lambda * sp.d(a, b)));
                }
            }
        }
        if lip <= 1.0 {
            best = best.max(integral / lambda);
        }
    }
    if best > 1e6 {
        ExtReal::PosInf
    } else {
        ExtReal::new(best)
    }
}

/// Minimum-cost transport by enumerating the spanning-tree bases of the
/// transportation polytope.
pub fn transport_vertex_oracle(cost: &[Vec<f64>], supply: &[f64], demand: &[f64]) -> f64 {
    let (n, m) = (supply.len(), demand.len());
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let k = n + m - 1;
    let mut best = f64::INFINITY;
    for mask in 0u32..1 << cells.len() {
        if mask.count_ones() as usize != k {
            continue;
        }
        let basis: Vec<(usize, usize)> = cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        if let Some(flow) = solve_tree(&basis, supply, demand) {
            if flow.iter().all(|&(_, x)| x >= -1e-12) {
                best = best.min(flow.iter().map(|&((i, j), x)| x * cost[i][j]).sum());
            }
        }
    }
    best
}

/// Unique flow on a spanning tree of the bipartite graph, by leaf peeling.
fn solve_tree(basis: &[(usize, usize)], supply: &[f64], demand: &[f64]) -> Option<Vec<((usize, usize), f64)>> {
    let (n, m) = (supply.len(), demand.len());
    let mut rest: Vec<f64> = supply.iter().chain(demand).copied().collect();
    let mut edges: Vec<(usize, usize)> = basis.iter().map(|&(i, j)| (i, n + j)).collect();
    let mut out = vec![];
    while !edges.is_empty() {
        let mut deg = vec![0usize; n + m];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let (e, leaf) = edges
            .iter()
            .enumerate()
            .find_map(|(e, &(a, b))| {
                if deg[a] == 1 {
                    Some((e, a))
                } else if deg[b] == 1 {
                    Some((e, b))
                } else {
                    None
                }
            })?; // a cycle: not a tree
        let (a, b) = edges.remove(e);
        let other = if leaf == a { b } else { a };
        let x = rest[leaf];
        rest[leaf] = 0.0;
        rest[other] -= x;
        out.push(((a, b - n), x));
    }
    // a forest with fewer components would leave unmatched mass
    if rest.iter().any(|r| r.abs() > 1e-9) {
        return None;
    }
    Some(out)
}

/// `min |Ax|` over the unit sphere: uniform samples, then a shrinking
/// random local search from the best sample.
pub fn smallest_stretch_oracle(rows: &[Vec<f64>], samples: usize, rng: &mut ChaCha8Rng) -> f64 {
    let n = rows[0].len();
    let norm_ax = |x: &[f64]| -> f64 {
        let nx: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        rows.iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().powi(2))
            .sum::<f64>()
            .sqrt()
            / nx
    };
    let gauss = |rng: &mut ChaCha8Rng| -> f64 {
        let (u, v): (f64, f64) = (1.0 - rng.gen::<f64>(), rng.gen());
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    };
    let mut best_x: Vec<f64> = vec![1.0; n];
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| gauss(rng)).collect();
        let v = norm_ax(&x);
        if v < best {
            best = v;
            best_x = x;
        }
    }
    let nx: f64 = best_x.iter().map(|v| v * v).sum::<f64>().sqrt();
    best_x.iter_mut().for_each(|v| *v /= nx);
    let mut step = 0.1;
    while step > 1e-9 {
        let mut improved = false;
        for _ in 0..200 {
            let y: Vec<f64> = best_x.iter().map(|v| v + step * gauss(rng)).collect();
            let v = norm_ax(&y);
            if v < best {
                best = v;
                let ny: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                best_x = y.iter().map(|v| v / ny).collect();
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Down-closed families of subsets of `0..n` containing every singleton.
pub fn all_complexes(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut big: Vec<Vec<usize>> = subsets(n).into_iter().filter(|s| s.len() >= 2).collect();
    big.sort_by_key(Vec::len);
    let mut out = vec![];
    fn rec(i: usize, big: &[Vec<usize>], chosen: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == big.len() {
            out.push(chosen.clone());
            return;
        }
        rec(i + 1, big, chosen, out);
        let s = &big[i];
        let faces_present = s.len() == 2
            || (0..s.len()).all(|k| {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                chosen.contains(&face)
            });
        if faces_present {
            chosen.push(s.clone());
            rec(i + 1, big, chosen, out);
            chosen.pop();
        }
    }
    rec(0, &big, &mut vec![], &mut out);
    out
}

/// Whether `p` carries every simplex of `k` into `l`.
pub fn carries(k: &[Vec<usize>], l: &[Vec<usize>], p: &[usize]) -> bool {
    k.iter().all(|s| {
        let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
        img.sort_unstable();
        img.dedup();
        img.len() < 2 || l.contains(&img)
    })
}

/// Posets on `0..n`, every reflexive transitive antisymmetric relation.
pub fn all_posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = vec![];
    for mask in 0u64..1 << pairs.len() {
        let mut r = vec![vec![false; n]; n];
        (0..n).for_each(|i| r[i][i] = true);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            r[i][j] = mask >> k & 1 == 1;
        }
        let anti = pairs.iter().all(|&(i, j)| !(r[i][j] && r[j][i]));
        let trans = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r[i][j] && r[j][k]) || r[i][k])));
        if anti && trans {
            out.push(r);
        }
    }
    out
}
