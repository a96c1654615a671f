// Capacity seminorms and the dual inequalities on a capacitated category of
// finite metric spaces, with the diameter as capacity.
//
//     cargo run --example capacity_duals

use std::error::Error;

use normcat::capacity::{
    check_capacity_monotone, dual_inequality_report, CapacitatedCategory, CapacitatedObject, Capacity, Direction,
    Preimage, SubobjectFamily,
};
use normcat::category::FiniteCategory;
use normcat::ext::ExtReal;
use normcat::metric::{diameter, FiniteMetricSpace};

fn show(v: ExtReal) -> String {
    v.finite().map_or_else(|| v.to_string(), |x| format!("{x:.4}"))
}

fn members(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spaces = [FiniteMetricSpace::from_line(&[0.0, 1.0, 3.0]), FiniteMetricSpace::from_line(&[0.0, 2.0])];
    // collapse the last two points, and a section back
    let functions = vec![(0, 1, vec![0, 1, 1]), (1, 0, vec![0, 2])];
    let objects = spaces.iter().enumerate().map(|(i, s)| (format!("X{i}"), s.len())).collect();
    let (cat, assigns) = FiniteCategory::from_functions(objects, functions)?;

    let mut objs = vec![];
    for sp in &spaces {
        let n = sp.len();
        let labels = (0..1usize << n).map(|m| format!("{:?}", members(m, n))).collect();
        let family = SubobjectFamily::from_order("X", labels, |a, b| a & !b == 0, |a| a == 0)?;
        let values = (0..1usize << n).map(|m| diameter(sp, &members(m, n))).collect();
        let capacity = Capacity::new(&family, values, Direction::Monotone)?;
        println!("diameter is monotone on {n} points: {}", check_capacity_monotone(&family, &capacity).monotone);
        objs.push(CapacitatedObject { family, capacity });
    }
    // preimage of each subset mask, as a subset mask of the source
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
    let cc = CapacitatedCategory::new(cat, objs, pre)?;

    let report = dual_inequality_report(&cc, true)?;
    println!("{:<12}{:>10}{:>10}{:>12}", "morphism", "norm", "co-norm", "left dual");
    for r in &report.rows {
        println!("{:<12}{:>10}{:>10}{:>12}", r.morphism, show(r.norm), show(r.co_norm), show(r.left_dual));
    }
    println!("upper bounds hold: {}", report.upper_bounds_hold());
    // the left dual only sees probes inside this small category
    println!("lower bounds hold: {}", report.lower_bounds_hold());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
