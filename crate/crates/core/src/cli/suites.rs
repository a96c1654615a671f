//! Randomized property suites behind `check`. Each property draws `cases`
//! instances from one seeded generator and stops at the first
//! counterexample.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::report::SuiteOutcome;
use crate::capacity::{check_capacity_monotone, Capacity, Direction, SubobjectFamily};
use crate::category::{check_seminorm_axioms, dual_seminorm, Side, Symmetrize};
use crate::discrete::{
    cost_pseudometric, csb_witness, group_distance, grothendieck_category, set_norm, CostSystem, NormedMonoid,
    NormedMonoidLike,
};
use crate::ext::{ExtReal, TOL};
use crate::gen::{self, Rng64};
use crate::measure::{prokhorov_capacity, prokhorov_distance, prokhorov_seminorm, volume_norm, MMMap, ProkhorovVariant};
use crate::metric::{
    dil_distance, dilatation_norm, dilatation_norm_capacity, expansive_endomorphisms, gh_distance, isometry_search,
    thicken, FiniteMetricSpace, MultiMap, Thickening,
};
use crate::topo::{
    component_seminorm, component_seminorm_capacity, dimension_seminorm, monotone_light_report, ContinuousPosetMap,
    FiniteTopSpace, SimplicialMap,
};
use crate::wasserstein::{
    lipschitz_seminorm, w1_transport, wasserstein_capacity, wasserstein_capacity_oracle, wasserstein_seminorm,
    LambdaGrid, ProjectiveMMSpace, TestFunction, WSearch,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    Core,
    Metric,
    Topo,
    Measure,
    Wasserstein,
    All,
}

type Check = Result<(), Value>;

struct Runner<'a> {
    suite: &'static str,
    cases: usize,
    rng: &'a mut Rng64,
    out: Vec<SuiteOutcome>,
}

impl Runner<'_> {
    fn property(&mut self, name: &str, mut case: impl FnMut(&mut Rng64) -> Check) {
        let mut counterexample = None;
        for _ in 0..self.cases {
            if let Err(c) = case(self.rng) {
                counterexample = Some(c);
                break;
            }
        }
        self.out.push(SuiteOutcome {
            suite: self.suite.to_string(),
            property: name.to_string(),
            cases: self.cases,
            passed: counterexample.is_none(),
            counterexample,
        });
    }
}

fn ensure(ok: bool, witness: impl FnOnce() -> Value) -> Check {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

pub fn run(suite: SuiteName, cases: usize, rng: &mut Rng64) -> Vec<SuiteOutcome> {
    let all = suite == SuiteName::All;
    let mut out = vec![];
    let mut go = |name: SuiteName, label: &'static str, f: fn(&mut Runner)| {
        if all || suite == name {
            let mut r = Runner {
                suite: label,
                cases,
                rng: &mut *rng,
                out: vec![],
            };
            f(&mut r);
            out.append(&mut r.out);
        }
    };
    go(SuiteName::Core, "core", core);
    go(SuiteName::Metric, "metric", metric);
    go(SuiteName::Topo, "topo", topo);
    go(SuiteName::Measure, "measure", measure);
    go(SuiteName::Wasserstein, "wasserstein", wasserstein);
    out
}

/// `ℤ/n` with the weighted word norm of a random symmetric generating set
/// containing 1.
pub fn random_cyclic_group(rng: &mut Rng64, n: usize) -> NormedMonoid {
    let mut w = vec![f64::INFINITY; n];
    for g in 1..=n / 2 {
        if g == 1 || rng.gen_bool(0.3) {
            w[g] = f64::from(rng.gen_range(1..=4u32));
            w[n - g] = w[g];
        }
    }
    let mut norm = vec![f64::INFINITY; n];
    norm[0] = 0.0;
    for _ in 0..n {
        for a in 0..n {
            for g in 1..n {
                let b = (a + g) % n;
                if norm[a] + w[g] < norm[b] {
                    norm[b] = norm[a] + w[g];
                }
            }
        }
    }
    let op = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    NormedMonoid::new(
        (0..n).map(|i| i.to_string()).collect(),
        op,
        0,
        Some((0..n).map(|a| (n - a) % n).collect()),
        norm.into_iter().map(ExtReal::new).collect(),
    )
    .expect("weighted word norms are subadditive")
}

fn core(r: &mut Runner) {
    r.property("set_norm_triangle", |rng| {
        let (a, b, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let f = gen::finite_function(rng, a, b);
        let g = gen::finite_function(rng, b, c);
        let lhs = set_norm(&f.then(&g), None);
        let rhs = set_norm(&f, None).checked_add(set_norm(&g, None)).expect("nonnegative");
        ensure(lhs.le_tol(rhs, TOL), || json!({"f": f.assign, "g": g.assign}))
    });
    r.property("set_norm_zero_iff_injective", |rng| {
        let (a, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let f = gen::finite_function(rng, a, b);
        ensure((set_norm(&f, None) == ExtReal::ZERO) == f.is_injective(), || json!({"f": f.assign}))
    });
    r.property("csb_bijection", |rng| {
        let n = rng.gen_range(1..=4);
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        let f = crate::discrete::FiniteFunction::new(n, p.clone()).expect("permutation");
        p.shuffle(rng);
        let g = crate::discrete::FiniteFunction::new(n, p).expect("permutation");
        let ok = csb_witness(&f, &g).map(|h| h.is_injective() && h.is_surjective()).unwrap_or(false);
        ensure(ok, || json!({"f": f.assign, "g": g.assign}))
    });
    r.property("cost_pseudometric_largest", |rng| {
        let n = rng.gen_range(2..=6);
        let cost: Vec<Vec<ExtReal>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ExtReal::ZERO } else { ExtReal::new(rng.gen_range(0.0..2.0)) }).collect())
            .collect();
        let cs = CostSystem::new((0..n).map(|i| i.to_string()).collect(), cost.clone()).expect("nonnegative");
        let d = cost_pseudometric(&cs);
        let sym = |i: usize, j: usize| cost[i][j].min(cost[j][i]);
        let e = gen::repaired_space(rng, n);
        let scale = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| sym(i, j).to_f64() / e.d(i, j))
            .fold(f64::INFINITY, f64::min);
        let below = (0..n).all(|i| (0..n).all(|j| i == j || d.get(i, j).le_tol(sym(i, j), TOL)));
        let largest = (0..n).all(|i| (0..n).all(|j| ExtReal::new(scale * e.d(i, j)).le_tol(d.get(i, j), 1e-9)));
        ensure(below && largest, || json!({"cost": cost}))
    });
    r.property("group_distance_translation", |rng| {
        let n = rng.gen_range(2..=12);
        let m = random_cyclic_group(rng, n);
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let inv_b = m.inverse(&b).expect("group");
        let expect = m.elem_norm(&m.op(&inv_b, &a));
        ensure(group_distance(&m, &a, &b).approx_eq(expect, TOL), || json!({"n": n, "norm": m.norm, "a": a, "b": b}))
    });
    r.property("group_category_duals_equal_norm", |rng| {
        let n = rng.gen_range(2..=8);
        let m = random_cyclic_group(rng, n);
        let (cat, norm, _) = grothendieck_category(&m).expect("group category");
        let left = dual_seminorm(&cat, &norm, Side::Left).expect("finite norms");
        let right = dual_seminorm(&cat, &norm, Side::Right).expect("finite norms");
        let ok = (0..cat.morphisms().len())
            .all(|i| left.get(i).approx_eq(norm.get(i), TOL) && right.get(i).approx_eq(norm.get(i), TOL));
        ensure(ok, || json!({"n": n, "norm": m.norm}))
    });
    r.property("duals_are_seminorms_below_norm", |rng| {
        let n = rng.gen_range(2..=6);
        let m = random_cyclic_group(rng, n);
        let (cat, norm, _) = grothendieck_category(&m).expect("group category");
        let mut ok = true;
        for side in [Side::Left, Side::Right] {
            let d = dual_seminorm(&cat, &norm, side).expect("finite");
            let dd = dual_seminorm(&cat, &d, side).expect("finite");
            ok &= check_seminorm_axioms(&cat, &d).passed();
            ok &= (0..cat.morphisms().len()).all(|i| dd.get(i).le_tol(norm.get(i), TOL));
        }
        ensure(ok, || json!({"n": n, "norm": m.norm}))
    });
}

fn single_map(rng: &mut Rng64, x: FiniteMetricSpace, y: FiniteMetricSpace) -> MultiMap {
    let f = gen::function(rng, x.len(), y.len());
    MultiMap::single(x, y, &f).expect("in range")
}

fn metric(r: &mut Runner) {
    r.property("dilatation_forms_agree", |rng| {
        let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let x = gen::metric_space(rng, a);
        let y = gen::metric_space(rng, b);
        let f = gen::multimap(rng, x, y, 3);
        let (p, c) = (dilatation_norm(&f), dilatation_norm_capacity(&f));
        ensure(p.approx_eq(c, TOL), || json!({"assign": f.assign(), "pointwise": p, "capacity": c}))
    });
    r.property("diameter_is_dilatation_to_point", |rng| {
        let n_x = rng.gen_range(1..=6);
        let x = gen::metric_space(rng, n_x);
        let n = x.len();
        let f = single_map(rng, x.clone(), FiniteMetricSpace::point());
        let diam = crate::metric::diameter(&x, &(0..n).collect::<Vec<_>>());
        ensure(dilatation_norm(&f).approx_eq(diam, TOL), || json!({"dist": x.matrix()}))
    });
    r.property("dilatation_triangle", |rng| {
        let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=4)).collect();
        let spaces: Vec<FiniteMetricSpace> = sizes.iter().map(|&n| gen::metric_space(rng, n)).collect();
        let f = single_map(rng, spaces[0].clone(), spaces[1].clone());
        let g = single_map(rng, spaces[1].clone(), spaces[2].clone());
        let lhs = dilatation_norm(&f.then(&g));
        let rhs = dilatation_norm(&f).checked_add(dilatation_norm(&g)).expect("nonnegative");
        ensure(lhs.le_tol(rhs, TOL), || json!({"f": f.assign(), "g": g.assign()}))
    });
    r.property("dil_plus_at_most_twice_gh", |rng| {
        let n_x = rng.gen_range(1..=4);
        let x = gen::metric_space(rng, n_x);
        let n_y = rng.gen_range(1..=4);
        let y = gen::metric_space(rng, n_y);
        let gh = gh_distance(&x, &y).expect("small").value;
        let dil = dil_distance(&x, &y, Symmetrize::Plus).expect("small").value;
        ensure(dil.le_tol(ExtReal::new(2.0 * gh.to_f64()), TOL), || {
            json!({"x": x.matrix(), "y": y.matrix(), "gh": gh, "dil_plus": dil})
        })
    });
    r.property("expansive_endomorphisms_are_isometries", |rng| {
        let n_x = rng.gen_range(1..=6);
        let x = gen::integer_space(rng, n_x, 2);
        let n = x.len();
        let bad = expansive_endomorphisms(&x).into_iter().find(|h| {
            let mut seen = vec![false; n];
            h.iter().for_each(|&i| seen[i] = true);
            !seen.iter().all(|&s| s) || (0..n).any(|a| (0..n).any(|b| (x.d(h[a], h[b]) - x.d(a, b)).abs() > TOL))
        });
        ensure(bad.is_none(), || json!({"dist": x.matrix(), "map": bad}))
    });
    r.property("mutual_expansive_maps_give_isometry", |rng| {
        let n_x = rng.gen_range(1..=5);
        let x = gen::integer_space(rng, n_x, 2);
        let y = if rng.gen_bool(0.5) {
            let mut p: Vec<usize> = (0..x.len()).collect();
            p.shuffle(rng);
            FiniteMetricSpace::from_matrix(p.iter().map(|&i| p.iter().map(|&j| x.d(i, j)).collect()).collect())
                .expect("permuted metric")
        } else {
            gen::integer_space(rng, x.len(), 2)
        };
        let fwd = dil_distance(&x, &y, Symmetrize::None).expect("small").value;
        let bwd = dil_distance(&y, &x, Symmetrize::None).expect("small").value;
        let both_zero = fwd == ExtReal::ZERO && bwd == ExtReal::ZERO;
        ensure(!both_zero || isometry_search(&x, &y).is_some(), || json!({"x": x.matrix(), "y": y.matrix()}))
    });
    r.property("thickening_inclusions", |rng| {
        let n_x = rng.gen_range(1..=6);
        let x = gen::metric_space(rng, n_x);
        let a: Vec<usize> = (0..x.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let (s, t) = (rng.gen_range(0.0..0.8), rng.gen_range(0.0..0.8));
        let mut ok = true;
        for mode in [Thickening::Open, Thickening::Closed] {
            let twice = thicken(&x, &thicken(&x, &a, s, mode), t, mode);
            let once = thicken(&x, &a, s + t, mode);
            ok &= twice.iter().all(|p| once.contains(p));
        }
        ensure(ok, || json!({"dist": x.matrix(), "a": a, "r": s, "s": t}))
    });
}

fn random_poset_map(rng: &mut Rng64, max: usize) -> ContinuousPosetMap {
    loop {
        let n_x = rng.gen_range(1..=max);
        let x = gen::poset(rng, n_x, 0.4);
        let n_y = rng.gen_range(1..=max);
        let y = gen::poset(rng, n_y, 0.4);
        let f = gen::function(rng, x.len(), y.len());
        if let Ok(m) = ContinuousPosetMap::new(x, y, f) {
            return m;
        }
    }
}

fn random_simplicial_map(rng: &mut Rng64, src: &crate::discrete::SimplicialComplex, m: usize) -> SimplicialMap {
    let tgt = if rng.gen_bool(0.5) {
        gen::simplicial(rng, m, 3, 2)
    } else {
        crate::discrete::SimplicialComplex::on_vertices(m, &[(0..m).collect()]).expect("simplex")
    };
    for _ in 0..50 {
        let f = gen::function(rng, src.n_vertices(), m);
        if let Ok(s) = SimplicialMap::new(src.clone(), tgt.clone(), f) {
            return s;
        }
    }
    let full = crate::discrete::SimplicialComplex::on_vertices(m, &[(0..m).collect()]).expect("simplex");
    SimplicialMap::new(src.clone(), full, gen::function(rng, src.n_vertices(), m)).expect("full simplex")
}

fn topo(r: &mut Runner) {
    r.property("closed_monotone_maps_have_zero_norm", |rng| {
        let f = random_poset_map(rng, 4);
        let rep = monotone_light_report(&f).expect("small");
        let norm = component_seminorm(&f).expect("small");
        ensure(!(rep.closed && rep.monotone) || norm == ExtReal::ZERO, || json!({"assign": f.assign()}))
    });
    r.property("component_forms_agree", |rng| {
        let f = random_poset_map(rng, 5);
        let (a, b) = (component_seminorm(&f).expect("small"), component_seminorm_capacity(&f).expect("small"));
        ensure(a.approx_eq(b, TOL), || json!({"assign": f.assign(), "direct": a, "capacity": b}))
    });
    r.property("discrete_zero_norm_is_bijective", |rng| {
        let (a, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let f = ContinuousPosetMap::new(FiniteTopSpace::discrete(a), FiniteTopSpace::discrete(b), gen::function(rng, a, b))
            .expect("discrete maps are continuous");
        let zero = component_seminorm(&f).expect("small") == ExtReal::ZERO;
        let bij = a == b && {
            let mut seen = vec![false; b];
            f.assign().iter().for_each(|&y| seen[y] = true);
            seen.iter().all(|&s| s)
        };
        ensure(!zero || bij, || json!({"assign": f.assign()}))
    });
    r.property("dimension_capacity_triangle", |rng| {
        let n_k = rng.gen_range(1..=4);
        let k = gen::simplicial(rng, n_k, 2, 2);
        let n_f = rng.gen_range(1..=4);
        let f = random_simplicial_map(rng, &k, n_f);
        let n_g = rng.gen_range(1..=4);
        let g = random_simplicial_map(rng, f.target(), n_g);
        let gf: Vec<usize> = f.vmap().iter().map(|&v| g.vmap()[v]).collect();
        let h = SimplicialMap::new(k.clone(), g.target().clone(), gf).expect("composite");
        let c = |m: &SimplicialMap| dimension_seminorm(m).expect("small").capacity_form;
        let ok = c(&h).le_tol(c(&f).checked_add(c(&g)).expect("nonnegative"), TOL);
        ensure(ok, || json!({"f": f.vmap(), "g": g.vmap()}))
    });
}

fn measure(r: &mut Runner) {
    r.property("prokhorov_identity_equals_distance", |rng| {
        let n_base = rng.gen_range(1..=5);
        let base = gen::integer_space(rng, n_base, 3);
        let mu = gen::measure_on(rng, base.clone(), 0.3);
        let nu = gen::measure_on(rng, base, 0.3);
        let id = MMMap::identity_between(mu.clone(), nu.clone()).expect("same base");
        let s = prokhorov_seminorm(&id, ProkhorovVariant::Seminorm).expect("small");
        let d = prokhorov_distance(&mu, &nu, false).expect("small");
        ensure(s.approx_eq(d, 1e-12), || json!({"mu": mu.mass(), "nu": nu.mass(), "seminorm": s, "distance": d}))
    });
    r.property("prokhorov_symmetric_on_probabilities", |rng| {
        let n_base = rng.gen_range(1..=5);
        let base = gen::metric_space(rng, n_base);
        let mu = gen::measure_on(rng, base.clone(), 0.3);
        let nu = gen::measure_on(rng, base, 0.3);
        let a = prokhorov_distance(&mu, &nu, false).expect("small");
        let b = prokhorov_distance(&nu, &mu, false).expect("small");
        ensure(a.approx_eq(b, 1e-12), || json!({"mu": mu.mass(), "nu": nu.mass()}))
    });
    r.property("volume_bounds_initial_norm", |rng| {
        let n_base = rng.gen_range(1..=5);
        let base = gen::metric_space(rng, n_base);
        let sp = gen::measure_on(rng, base, 0.3);
        let v = volume_norm(&sp).expect("small");
        ensure(v.norm_of_initial.le_tol(ExtReal::new(v.volume), TOL), || json!({"mass": sp.mass()}))
    });
    r.property("prokhorov_capacity_monotone", |rng| {
        let n_base = rng.gen_range(1..=5);
        let base = gen::metric_space(rng, n_base);
        let sp = gen::measure_on(rng, base, 0.3);
        let n = sp.len();
        let v = rng.gen_range(0.0..1.2);
        let fam = SubobjectFamily::from_order(
            "subsets",
            (0u32..1 << n).map(|m| format!("{m:b}")).collect(),
            |a, b| a & !b == 0,
            |a| a == 0,
        )
        .expect("inclusion order");
        let values = (0u32..1 << n)
            .map(|m| prokhorov_capacity(&sp, &(0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>(), v))
            .collect();
        // larger sets need less thickening: antimonotone in A
        let ok = Capacity::new(&fam, values, Direction::Antimonotone)
            .map(|c| check_capacity_monotone(&fam, &c).monotone)
            .unwrap_or(false);
        let a: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let w = v + rng.gen_range(0.0..0.5);
        let in_v = prokhorov_capacity(&sp, &a, v).le_tol(prokhorov_capacity(&sp, &a, w), TOL);
        ensure(ok && in_v, || json!({"dist": sp.base().matrix(), "mass": sp.mass(), "v": v}))
    });
}

fn wasserstein(r: &mut Runner) {
    r.property("capacity_matches_grid_oracle", |rng| {
        let n_base = rng.gen_range(2..=4);
        let base = gen::metric_space(rng, n_base);
        let sp = ProjectiveMMSpace::new(gen::measure_on(rng, base.clone(), 0.0)).expect("nonzero");
        let phi = TestFunction(gen::test_function(rng, base.len()));
        let (c, o) = (
            wasserstein_capacity(&sp, &phi).value,
            wasserstein_capacity_oracle(&sp, &phi, LambdaGrid::default()),
        );
        let tol = 1e-3 * c.to_f64().abs().max(1.0);
        ensure(c.approx_eq(o, tol), || json!({"phi": phi.0, "closed": c, "oracle": o}))
    });
    r.property("capacity_monotone_in_test_function_order", |rng| {
        let n_base = rng.gen_range(2..=5);
        let base = gen::metric_space(rng, n_base);
        let sp = ProjectiveMMSpace::new(gen::measure_on(rng, base.clone(), 0.0)).expect("nonzero");
        let phi = gen::test_function(rng, base.len());
        let a = rng.gen_range(0.05..1.0);
        let psi: Vec<f64> = phi.iter().map(|p| a * p + (1.0 - a)).collect();
        let ordered = lipschitz_seminorm(&phi, &base) >= lipschitz_seminorm(&psi, &base);
        let lo = wasserstein_capacity(&sp, &TestFunction(phi.clone())).value;
        let hi = wasserstein_capacity(&sp, &TestFunction(psi)).value;
        ensure(!ordered || lo.le_tol(hi, TOL), || json!({"phi": phi, "a": a}))
    });
    r.property("capacity_scale_invariant", |rng| {
        let n_base = rng.gen_range(2..=5);
        let base = gen::metric_space(rng, n_base);
        let sp = ProjectiveMMSpace::new(gen::measure_on(rng, base.clone(), 0.0)).expect("nonzero");
        let phi = TestFunction(gen::test_function(rng, base.len()));
        let c = wasserstein_capacity(&sp, &phi).value;
        let ok = [0.5, 2.0, 10.0].iter().all(|&l| {
            let other = ProjectiveMMSpace::new(sp.rescaled(l)).expect("nonzero");
            wasserstein_capacity(&other, &phi).value.approx_eq(c, 1e-9 * c.to_f64().abs().max(1.0))
        });
        ensure(ok, || json!({"phi": phi.0}))
    });
    r.property("transport_certified", |rng| {
        let n_base = rng.gen_range(1..=5);
        let base = gen::metric_space(rng, n_base);
        let mu = gen::measure_on(rng, base.clone(), 0.3);
        let nu = gen::measure_on(rng, base, 0.3);
        let t = w1_transport(&MMMap::identity_between(mu.clone(), nu.clone()).expect("same base")).expect("balanced");
        ensure(t.certified, || json!({"mu": mu.mass(), "nu": nu.mass()}))
    });
    r.property("identity_has_zero_norm", |rng| {
        let n_sp = rng.gen_range(1..=4);
        let sp = gen::mm_space(rng, n_sp);
        let id = MMMap::identity_between(sp.clone(), sp).expect("same");
        let w = wasserstein_seminorm(
            &id,
            WSearch {
                k: 4,
                ..WSearch::default()
            },
        )
        .expect("nonzero mass");
        ensure(w.lower_bound == ExtReal::ZERO, || json!({"witness": w.witness}))
    });
}
