//! Dual inequalities on capacitated categories of finite metric spaces
//! with the diameter capacity.

use normcat::capacity::{
    dual_inequality_report, CapacitatedCategory, CapacitatedObject, Capacity, Direction, Preimage, SubobjectFamily,
};
use normcat::category::FiniteCategory;
use normcat::ext::ExtReal;
use normcat::gen;
use normcat::metric::{diameter, FiniteMetricSpace};
use rand::seq::SliceRandom;
use rand::Rng;

fn subsets(n: usize) -> SubobjectFamily {
    let labels = (0..1usize << n).map(|m| format!("{m:b}")).collect();
    SubobjectFamily::from_order("X", labels, |a, b| a & !b == 0, |a| a == 0).unwrap()
}

fn diameter_category(spaces: &[FiniteMetricSpace], functions: Vec<(usize, usize, Vec<usize>)>) -> CapacitatedCategory {
    let objects = spaces.iter().enumerate().map(|(i, s)| (format!("X{i}"), s.len())).collect();
    let (cat, assigns) = FiniteCategory::from_functions(objects, functions).unwrap();
    let objs = spaces
        .iter()
        .map(|sp| {
            let n = sp.len();
            let family = subsets(n);
            let values = (0..1usize << n)
                .map(|m| diameter(sp, &(0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
                .collect();
            let capacity = Capacity::new(&family, values, Direction::Monotone).unwrap();
            CapacitatedObject { family, capacity }
        })
        .collect();
    let pre = cat
        .morphisms()
        .iter()
        .zip(&assigns)
        .map(|(m, a)| {
            Preimage(
                (0..1usize << spaces[m.tgt].len())
                    .map(|mask| a.iter().enumerate().filter(|(_, &y)| mask >> y & 1 == 1).fold(0, |acc, (x, _)| acc | 1 << x))
                    .collect(),
            )
        })
        .collect();
    CapacitatedCategory::new(cat, objs, pre).unwrap()
}

/// The left-dual lower bound needs more than an annihilator: for the
/// inclusion of a point into `{0, 5}` the co-seminorm is 5 while every
/// probe through the point sees no loss.
#[test]
fn annihilator_bound_fails_for_point_inclusion() {
    let point = FiniteMetricSpace::point();
    let pair = FiniteMetricSpace::from_line(&[0.0, 5.0]);
    let cc = diameter_category(&[point, pair], vec![(0, 1, vec![0]), (1, 0, vec![0, 0])]);
    let report = dual_inequality_report(&cc, true).unwrap();
    let f = report
        .rows
        .iter()
        .find(|r| r.co_norm == ExtReal::new(5.0) && r.norm == ExtReal::ZERO)
        .expect("the inclusion row");
    assert_eq!(f.has_left_annihilator, Some(true));
    assert_eq!(f.left_dual, ExtReal::ZERO);
    assert_eq!(f.left_dual_ge_co, Some(false));
    assert!(report.upper_bounds_hold());
}

/// Surjective generators do not rescue the annihilator lower bound either,
/// and neither do two-point probes for every realized distance. The upper
/// bounds hold throughout.
#[test]
fn annihilator_bound_can_fail_for_surjections() {
    let mut rng = gen::rng(21);
    let (mut plain, mut probed) = (0, 0);
    for _ in 0..100 {
        let k = rng.gen_range(1..=2);
        let mut spaces: Vec<FiniteMetricSpace> = (0..k)
            .map(|_| {
                let n = rng.gen_range(1..=3);
                gen::metric_space(&mut rng, n)
            })
            .collect();
        let mut functions = vec![];
        for _ in 0..rng.gen_range(1..=2) {
            let (s, t) = (rng.gen_range(0..k), rng.gen_range(0..k));
            let (n, m) = (spaces[s].len(), spaces[t].len());
            if n < m {
                continue;
            }
            let mut f: Vec<usize> = (0..m).chain((m..n).map(|_| rng.gen_range(0..m))).collect();
            f.shuffle(&mut rng);
            functions.push((s, t, f));
        }
        let fails = |spaces: &[FiniteMetricSpace], functions: Vec<(usize, usize, Vec<usize>)>| {
            let report = dual_inequality_report(&diameter_category(spaces, functions), true).unwrap();
            assert!(report.upper_bounds_hold());
            report.rows.iter().any(|r| r.has_left_annihilator == Some(true) && r.left_dual_ge_co == Some(false))
        };
        plain += usize::from(fails(&spaces, functions.clone()));
        for o in 0..k {
            let n = spaces[o].len();
            for a in 0..n {
                for b in a + 1..n {
                    spaces.push(FiniteMetricSpace::two_point(spaces[o].d(a, b)));
                    functions.push((spaces.len() - 1, o, vec![a, b]));
                }
            }
        }
        probed += usize::from(fails(&spaces, functions));
    }
    assert!(plain > 0 && probed > 0, "plain {plain}, probed {probed}");
}
