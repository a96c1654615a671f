//! Lipschitz seminorm, the Wasserstein capacity of a test function, the
//! test-function seminorm `‖f‖_W`, balanced W1 transport and a
//! Kantorovich–Rubinstein comparison harness.
//!
//! A projective metric measure space is a representative `(X, d, ν)` up to
//! `(X, λd, ν/λ)`. Normalizing a test function `φ` with Lipschitz constant
//! `L` means passing to `(X, L·d, ν/L)`, on which `φ` is 1-Lipschitz.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ext::{ExtReal, TOL};
use crate::measure::{FiniteMMSpace, MMMap};
use crate::metric::FiniteMetricSpace;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum WassersteinError {
    #[error("test function has {got} values, space has {expected} points")]
    Length { expected: usize, got: usize },
    #[error("test function value at point {0} is outside [0, 1]")]
    Range(usize),
    #[error("Lipschitz constant {0} cannot be normalized to 1")]
    NonNormalizable(ExtReal),
    #[error("total masses differ: {0} vs {1}")]
    MassMismatch(f64, f64),
    #[error("a projective space needs nonzero total mass")]
    ZeroMass,
}

/// Values in `[0, 1]`, one per point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction(pub Vec<f64>);

impl TestFunction {
    pub fn new(sp: &FiniteMetricSpace, values: Vec<f64>) -> Result<Self, WassersteinError> {
        if values.len() != sp.len() {
            return Err(WassersteinError::Length {
                expected: sp.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(WassersteinError::Range(i));
        }
        Ok(TestFunction(values))
    }

    /// `ψ ∘ f`.
    pub fn pull_back(&self, assign: &[usize]) -> TestFunction {
        TestFunction(assign.iter().map(|&y| self.0[y]).collect())
    }
}

/// `sup0 |φ(x) - φ(y)| / d(x,y)`; zero distance with differing values is `∞`.
pub fn lipschitz_seminorm(phi: &[f64], sp: &FiniteMetricSpace) -> ExtReal {
    let mut best = ExtReal::ZERO;
    for x in 0..sp.len() {
        for y in 0..sp.len() {
            if x == y {
                continue;
            }
            let diff = (phi[x] - phi[y]).abs();
            let d = sp.d(x, y);
            let q = if d == 0.0 {
                if diff == 0.0 {
                    continue;
                }
                ExtReal::PosInf
            } else {
                ExtReal::new(diff / d)
            };
            best = best.max(q);
        }
    }
    best
}

/// A representative with nonzero measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMMSpace(FiniteMMSpace);

impl ProjectiveMMSpace {
    pub fn new(rep: FiniteMMSpace) -> Result<Self, WassersteinError> {
        if rep.volume() <= 0.0 {
            return Err(WassersteinError::ZeroMass);
        }
        Ok(ProjectiveMMSpace(rep))
    }

    pub fn representative(&self) -> &FiniteMMSpace {
        &self.0
    }

    /// The equivalent representative `(X, λd, ν/λ)`.
    pub fn rescaled(&self, lambda: f64) -> FiniteMMSpace {
        FiniteMMSpace::new(
            self.0.base().scaled(lambda),
            self.0.mass().iter().map(|m| m / lambda).collect(),
        )
        .expect("rescaling preserves validity")
    }
}

/// `(X, L·d, ν/L)` for `L = Lip(φ)`.
pub fn normalize_representative(sp: &ProjectiveMMSpace, phi: &TestFunction) -> Result<FiniteMMSpace, WassersteinError> {
    let l = lipschitz_seminorm(&phi.0, sp.0.base());
    match l.finite() {
        Some(l) if l > 0.0 => Ok(sp.rescaled(l)),
        _ => Err(WassersteinError::NonNormalizable(l)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityValue {
    pub value: ExtReal,
    /// Set when the input falls outside the cases the closed form covers.
    pub warning: Option<String>,
}

fn integral(phi: &[f64], mass: &[f64]) -> f64 {
    phi.iter().zip(mass).map(|(p, m)| p * m).sum()
}

/// Closed form: `(1/L) Σ φ ν` for `L ∈ (0, ∞)`, `∞` for `L = 0` with
/// `φ > 0`, and `0` for `L = ∞` or `φ ≡ 0`.
pub fn wasserstein_capacity(sp: &ProjectiveMMSpace, phi: &TestFunction) -> CapacityValue {
    let rep = &sp.0;
    let l = lipschitz_seminorm(&phi.0, rep.base());
    let ok = |value| CapacityValue { value, warning: None };
    if phi.0.iter().all(|&p| p == 0.0) || l.is_pos_inf() {
        return ok(ExtReal::ZERO);
    }
    match l.finite() {
        Some(l) if l > 0.0 => ok(ExtReal::new(integral(&phi.0, rep.mass()) / l)),
        _ if phi.0.iter().all(|&p| p > 0.0) => ok(ExtReal::PosInf),
        _ => CapacityValue {
            value: ExtReal::ZERO,
            warning: Some("Lipschitz constant 0 with a test function that vanishes somewhere but not everywhere".into()),
        },
    }
}

/// Geometric grid of scale factors `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        LambdaGrid {
            min: 1e-12,
            max: 1e12,
            points: 200_000,
        }
    }
}

impl LambdaGrid {
    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        let ratio = (self.max / self.min).ln() / (self.points - 1) as f64;
        (0..self.points).map(move |i| self.min * (ratio * i as f64).exp())
    }
}

/// Values above this are reported as `∞` by the grid oracle.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

/// Supremum of `∫ φ d(ν/λ)` over the grid representatives `(X, λd, ν/λ)`
/// on which `φ` is at most 1-Lipschitz.
pub fn wasserstein_capacity_oracle(sp: &ProjectiveMMSpace, phi: &TestFunction, grid: LambdaGrid) -> ExtReal {
    let rep = &sp.0;
    let base = rep.base();
    let total = integral(&phi.0, rep.mass());
    let pairs: Vec<(f64, f64)> = (0..base.len())
        .flat_map(|x| (0..base.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y)
        .map(|(x, y)| ((phi.0[x] - phi.0[y]).abs(), base.d(x, y)))
        .collect();
    let mut best = 0.0f64;
    for lambda in grid.iter() {
        if pairs.iter().all(|&(diff, d)| diff <= lambda * d) {
            best = best.max(total / lambda);
        }
    }
    if best > DIVERGENCE_THRESHOLD {
        ExtReal::PosInf
    } else {
        ExtReal::new(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum WDirection {
    /// `c_W(M, ψ∘f) - c_W(N, ψ)`
    #[default]
    Displayed,
    /// `c_W(N, ψ) - c_W(M, ψ∘f)`
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WSearch {
    /// Grid resolution: values in `{0, 1/k, ..., 1}`.
    pub k: usize,
    pub restarts: usize,
    pub local_steps: usize,
    pub seed: u64,
    pub direction: WDirection,
}

impl Default for WSearch {
    fn default() -> Self {
        WSearch {
            k: 10,
            restarts: 16,
            local_steps: 200,
            seed: 0,
            direction: WDirection::Displayed,
        }
    }
}

/// Largest target searched exhaustively over the grid.
pub const W_EXHAUSTIVE_TARGET: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WResult {
    /// Best value found; a lower bound for the supremum.
    pub lower_bound: ExtReal,
    pub witness: Vec<f64>,
    pub exhaustive: bool,
    /// Grid points where both capacities were infinite.
    pub skipped_indeterminate: usize,
}

/// The objective at one test function; `None` for `∞ - ∞`.
pub fn w_objective(
    src: &ProjectiveMMSpace,
    tgt: &ProjectiveMMSpace,
    assign: &[usize],
    psi: &TestFunction,
    direction: WDirection,
) -> Option<ExtReal> {
    let a = wasserstein_capacity(src, &psi.pull_back(assign)).value;
    let b = wasserstein_capacity(tgt, psi).value;
    match direction {
        WDirection::Displayed => a.checked_sub(b).ok(),
        WDirection::Reversed => b.checked_sub(a).ok(),
    }
}

/// For a constant map onto `q`, the test function `ψ(y) = min(d(q, y), 1)`.
pub fn constant_map_witness(f: &MMMap) -> Option<Vec<f64>> {
    let q = *f.assign().first()?;
    if f.assign().iter().any(|&y| y != q) {
        return None;
    }
    let tgt = f.target().base();
    Some((0..tgt.len()).map(|y| tgt.d(q, y).min(1.0)).collect())
}

/// Grid search for `sup_ψ` of the objective, exhaustive on small targets
/// and multi-start coordinate ascent otherwise. The constant-map witness is
/// always evaluated as well.
pub fn wasserstein_seminorm(f: &MMMap, search: WSearch) -> Result<WResult, WassersteinError> {
    let extra: Vec<Vec<f64>> = constant_map_witness(f).into_iter().collect();
    wasserstein_seminorm_with(f, search, &extra)
}

/// As [`wasserstein_seminorm`], additionally evaluating the given off-grid
/// candidate test functions.
pub fn wasserstein_seminorm_with(f: &MMMap, search: WSearch, candidates: &[Vec<f64>]) -> Result<WResult, WassersteinError> {
    let src = ProjectiveMMSpace::new(f.source().clone())?;
    let tgt = ProjectiveMMSpace::new(f.target().clone())?;
    let n = tgt.0.len();
    let k = search.k.max(1);
    let grid = |i: usize| i as f64 / k as f64;
    let mut skipped = 0usize;
    let mut eval = |levels: &[usize]| -> Option<ExtReal> {
        let psi = TestFunction(levels.iter().map(|&i| grid(i)).collect());
        let v = w_objective(&src, &tgt, f.assign(), &psi, search.direction);
        if v.is_none() {
            skipped += 1;
        }
        v
    };
    let mut best = (ExtReal::ZERO, vec![0usize; n]);
    let exhaustive = n <= W_EXHAUSTIVE_TARGET;
    if exhaustive {
        let mut levels = vec![0usize; n];
        loop {
            if let Some(v) = eval(&levels) {
                if v > best.0 {
                    best = (v, levels.clone());
                }
            }
            let mut i = 0;
            while i < n {
                levels[i] += 1;
                if levels[i] <= k {
                    break;
                }
                levels[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
        for _ in 0..search.restarts.max(1) {
            let mut levels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=k)).collect();
            let mut cur = eval(&levels).unwrap_or(ExtReal::NegInf);
            for _ in 0..search.local_steps {
                let mut improved = false;
                for i in 0..n {
                    let old = levels[i];
                    for lv in 0..=k {
                        if lv == old {
                            continue;
                        }
                        levels[i] = lv;
                        match eval(&levels) {
                            Some(v) if v > cur => {
                                cur = v;
                                improved = true;
                                break;
                            }
                            _ => levels[i] = old,
                        }
                    }
                }
                if !improved {
                    break;
                }
            }
            if cur > best.0 {
                best = (cur, levels);
            }
        }
    }
    let mut result = WResult {
        lower_bound: best.0,
        witness: best.1.iter().map(|&i| grid(i)).collect(),
        exhaustive,
        skipped_indeterminate: skipped,
    };
    for c in candidates {
        let psi = TestFunction::new(tgt.0.base(), c.clone())?;
        match w_objective(&src, &tgt, f.assign(), &psi, search.direction) {
            Some(v) if v > result.lower_bound => {
                result.lower_bound = v;
                result.witness = psi.0;
            }
            Some(_) => {}
            None => result.skipped_indeterminate += 1,
        }
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transport {
    pub cost: f64,
    /// `coupling[x][y]`: mass moved from source point `x` to target point `y`.
    pub coupling: Vec<Vec<f64>>,
    /// Dual potentials with `u[x] + v[y] <= d(f x, y)`.
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// Dual feasibility, complementary slackness and zero duality gap hold.
    pub certified: bool,
}

const MASS_EPS: f64 = 1e-12;

/// Balanced transport of the source measure onto the target measure with
/// cost `d(f(x), y)`, by successive shortest paths.
pub fn w1_transport(f: &MMMap) -> Result<Transport, WassersteinError> {
    let mu = f.source().mass();
    let nu = f.target().mass();
    let (sm, sn) = (mu.iter().sum::<f64>(), nu.iter().sum::<f64>());
    if (sm - sn).abs() > TOL {
        return Err(WassersteinError::MassMismatch(sm, sn));
    }
    let y_sp = f.target().base();
    let cost: Vec<Vec<f64>> = f
        .assign()
        .iter()
        .map(|&fx| (0..y_sp.len()).map(|y| y_sp.d(fx, y)).collect())
        .collect();
    Ok(solve_transport(&cost, mu, nu))
}

/// Transportation problem with a dense nonnegative cost matrix and equal
/// total supply and demand.
pub fn solve_transport(cost: &[Vec<f64>], supply: &[f64], demand: &[f64]) -> Transport {
    let (n, m) = (supply.len(), demand.len());
    let mut flow = vec![vec![0.0f64; m]; n];
    let mut sup: Vec<f64> = supply.to_vec();
    let mut dem: Vec<f64> = demand.to_vec();
    // nodes: sources 0..n, sinks n..n+m
    loop {
        if sup.iter().all(|&s| s <= MASS_EPS) || dem.iter().all(|&d| d <= MASS_EPS) {
            break;
        }
        let (dist, pred) = residual_shortest_paths(cost, &flow, Some(&sup));
        let Some(sink) = (0..m)
            .filter(|&y| dem[y] > MASS_EPS && dist[n + y].is_finite())
            .min_by(|&a, &b| dist[n + a].total_cmp(&dist[n + b]))
        else {
            break;
        };
        let mut path = vec![n + sink];
        while let Some(p) = pred[*path.last().expect("nonempty")] {
            path.push(p);
        }
        path.reverse();
        let src = path[0];
        let mut amount = sup[src].min(dem[sink]);
        for w in path.windows(2) {
            if w[0] >= n {
                // backward residual edge sink -> source cancels flow
                amount = amount.min(flow[w[1]][w[0] - n]);
            }
        }
        for w in path.windows(2) {
            if w[0] < n {
                flow[w[0]][w[1] - n] += amount;
            } else {
                flow[w[1]][w[0] - n] -= amount;
            }
        }
        sup[src] -= amount;
        dem[sink] -= amount;
    }
    let primal: f64 = (0..n).flat_map(|x| (0..m).map(move |y| (x, y))).map(|(x, y)| flow[x][y] * cost[x][y]).sum();
    let (pi, _) = residual_shortest_paths(cost, &flow, None);
    let u: Vec<f64> = (0..n).map(|x| -pi[x]).collect();
    let v: Vec<f64> = (0..m).map(|y| pi[n + y]).collect();
    let scale = cost.iter().flatten().fold(1.0f64, |a, &c| a.max(c.abs()));
    let feasible = (0..n).all(|x| (0..m).all(|y| u[x] + v[y] <= cost[x][y] + 1e-9 * scale));
    let slack = (0..n).all(|x| (0..m).all(|y| flow[x][y] <= MASS_EPS || (u[x] + v[y] - cost[x][y]).abs() <= 1e-9 * scale));
    let dual: f64 = u.iter().zip(supply).map(|(a, b)| a * b).sum::<f64>() + v.iter().zip(demand).map(|(a, b)| a * b).sum::<f64>();
    let mass: f64 = supply.iter().sum::<f64>().max(1.0);
    Transport {
        cost: primal,
        coupling: flow,
        certified: feasible && slack && (primal - dual).abs() <= 1e-9 * scale * mass,
        u,
        v,
    }
}

/// Bellman–Ford on the residual graph. With `origins`, paths start at
/// sources with remaining supply; without, every node starts at 0, which
/// yields feasible potentials.
fn residual_shortest_paths(
    cost: &[Vec<f64>],
    flow: &[Vec<f64>],
    origins: Option<&[f64]>,
) -> (Vec<f64>, Vec<Option<usize>>) {
    let (n, m) = (cost.len(), cost.first().map_or(0, Vec::len));
    let mut dist = vec![f64::INFINITY; n + m];
    let mut pred = vec![None; n + m];
    match origins {
        Some(sup) => {
            for x in 0..n {
                if sup[x] > MASS_EPS {
                    dist[x] = 0.0;
                }
            }
        }
        None => dist.iter_mut().for_each(|d| *d = 0.0),
    }
    for _ in 0..n + m {
        let mut changed = false;
        for x in 0..n {
            for y in 0..m {
                if dist[x].is_finite() && dist[x] + cost[x][y] < dist[n + y] - 1e-15 {
                    dist[n + y] = dist[x] + cost[x][y];
                    pred[n + y] = Some(x);
                    changed = true;
                }
                if flow[x][y] > MASS_EPS && dist[n + y].is_finite() && dist[n + y] - cost[x][y] < dist[x] - 1e-15 {
                    dist[x] = dist[n + y] - cost[x][y];
                    pred[x] = Some(n + y);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (dist, pred)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KrRow {
    /// Lower bound for `‖f‖_W`.
    pub lhs: ExtReal,
    /// `W1 + (1 - hoeld)`.
    pub rhs: ExtReal,
    /// `rhs - lhs`, absent when both sides are infinite.
    pub gap: Option<ExtReal>,
    pub w1: f64,
    /// Lipschitz constant of `f` between the volume-rescaled spaces.
    pub hoeld: ExtReal,
}

impl KrRow {
    pub const CSV_HEADER: &'static str = "lhs,rhs,gap,w1,hoeld";

    pub fn csv(&self) -> String {
        let gap = self.gap.map_or_else(|| "nan".to_string(), |g| g.to_string());
        format!("{},{},{},{},{}", self.lhs, self.rhs, gap, self.w1, self.hoeld)
    }
}

/// Evaluates both sides of the Kantorovich–Rubinstein comparison. W1 is
/// taken with the target measure rescaled to the source mass, and the
/// Hölder term on `(X, |μ| d) → (Y, |ν| d')`. No inequality is asserted.
pub fn kr_compare(f: &MMMap, search: WSearch) -> Result<KrRow, WassersteinError> {
    let vm = f.source().volume();
    let vn = f.target().volume();
    if vm <= 0.0 || vn <= 0.0 {
        return Err(WassersteinError::ZeroMass);
    }
    let lhs = wasserstein_seminorm(f, search)?.lower_bound;
    let nu_scaled: Vec<f64> = f.target().mass().iter().map(|m| m * vm / vn).collect();
    let y_sp = f.target().base();
    let cost: Vec<Vec<f64>> = f
        .assign()
        .iter()
        .map(|&fx| (0..y_sp.len()).map(|y| y_sp.d(fx, y)).collect())
        .collect();
    let w1 = solve_transport(&cost, f.source().mass(), &nu_scaled).cost;
    let x_sp = f.source().base();
    let mut hoeld = ExtReal::ZERO;
    for a in 0..x_sp.len() {
        for b in 0..x_sp.len() {
            if a == b {
                continue;
            }
            let num = vn * y_sp.d(f.assign()[a], f.assign()[b]);
            let den = vm * x_sp.d(a, b);
            let q = if den == 0.0 {
                if num == 0.0 {
                    continue;
                }
                ExtReal::PosInf
            } else {
                ExtReal::new(num / den)
            };
            hoeld = hoeld.max(q);
        }
    }
    let rhs = ExtReal::new(w1 + 1.0).checked_sub(hoeld).expect("finite minus extended");
    Ok(KrRow {
        lhs,
        rhs,
        gap: rhs.checked_sub(lhs).ok(),
        w1,
        hoeld,
    })
}
