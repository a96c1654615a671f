// Dilatation and codiameter seminorms on finite metric spaces, and the
// Gromov-Hausdorff and dilatation distances between them.
//
//     cargo run --example metric_distances

use std::error::Error;

use normcat::category::Symmetrize;
use normcat::metric::{
    codiameter_seminorm, dil_distance, dilatation_left_dual, dilatation_norm, dilatation_norm_capacity, gh_distance,
    hausdorff_distance, packing_stats, FiniteMetricSpace, MultiMap,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let line = FiniteMetricSpace::from_line(&[0.0, 1.0, 3.0]);
    let ends = FiniteMetricSpace::from_line(&[0.0, 2.0]);

    // collapse onto the two ends; the middle point may go either way
    let f = MultiMap::new(line.clone(), ends.clone(), vec![vec![0], vec![0, 1], vec![1]])?;
    println!("dilatation norm: {}", dilatation_norm(&f));
    println!("capacity form:   {}", dilatation_norm_capacity(&f));
    println!("left dual:       {}", dilatation_left_dual(&f));
    println!("codiameter:      {}", codiameter_seminorm(&f));

    let gh = gh_distance(&line, &ends)?;
    println!("GH distance {} via correspondence {:?}", gh.value, gh.correspondence);
    for mode in [Symmetrize::None, Symmetrize::Max, Symmetrize::Plus] {
        let d = dil_distance(&line, &ends, mode)?;
        println!("dilatation distance ({mode:?}): {} exact={} forward={:?}", d.value, d.exact, d.forward);
    }

    println!("Hausdorff distance of {{0}} and {{1, 2}}: {}", hausdorff_distance(&line, &[0], &[1, 2]));
    let p = packing_stats(&line, 1.5)?;
    println!("1.5-packing number {} with packing {:?}", p.pack_number, p.packing);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
