// The Wasserstein capacity on projective mm-spaces, W1 optimal transport
// with a dual certificate, and the Kantorovich-Rubinstein comparison.
//
//     cargo run --example wasserstein

use std::error::Error;

use normcat::measure::{FiniteMMSpace, MMMap};
use normcat::metric::FiniteMetricSpace;
use normcat::wasserstein::{
    kr_compare, w1_transport, wasserstein_capacity, wasserstein_capacity_oracle, wasserstein_seminorm, KrRow,
    LambdaGrid, ProjectiveMMSpace, TestFunction, WSearch,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = FiniteMetricSpace::from_line(&[0.0, 1.0, 3.0]);
    let sp = ProjectiveMMSpace::new(FiniteMMSpace::new(base.clone(), vec![0.2, 0.3, 0.5])?)?;
    let phi = TestFunction::new(&base, vec![0.0, 0.5, 1.0])?;
    let closed = wasserstein_capacity(&sp, &phi);
    let grid = wasserstein_capacity_oracle(&sp, &phi, LambdaGrid::default());
    println!("capacity: closed form {} vs scale search {}", closed.value, grid);

    // move all mass from the left end towards the right
    let mu = FiniteMMSpace::new(base.clone(), vec![1.0, 0.0, 0.0])?;
    let nu = FiniteMMSpace::new(base, vec![0.0, 0.5, 0.5])?;
    let id = MMMap::identity_between(mu, nu)?;
    let t = w1_transport(&id)?;
    println!("W1 = {} (certified: {})", t.cost, t.certified);
    for (x, row) in t.coupling.iter().enumerate() {
        println!("  from {x}: {row:?}");
    }

    let search = WSearch { k: 4, restarts: 4, ..WSearch::default() };
    let w = wasserstein_seminorm(&id, search.clone())?;
    println!("seminorm lower bound {} at {:?} (exhaustive: {})", w.lower_bound, w.witness, w.exhaustive);
    println!("{}", KrRow::CSV_HEADER);
    println!("{}", kr_compare(&id, search)?.csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
