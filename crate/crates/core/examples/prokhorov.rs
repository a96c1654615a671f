// Prokhorov capacities, seminorms and distances on finite metric measure
// spaces.
//
//     cargo run --example prokhorov

use std::error::Error;

use normcat::measure::{
    prokhorov_capacity, prokhorov_distance, prokhorov_seminorm, volume_norm, FiniteMMSpace, MMMap, ProkhorovVariant,
    ThickeningProfile,
};
use normcat::metric::FiniteMetricSpace;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = FiniteMetricSpace::from_line(&[0.0, 1.0, 2.0]);
    let mu = FiniteMMSpace::new(base.clone(), vec![0.5, 0.25, 0.25])?;
    let nu = FiniteMMSpace::new(base, vec![0.25, 0.25, 0.5])?;

    // how far {0} must be thickened to capture a given mass
    let profile = ThickeningProfile::new(&mu, &[0]);
    println!("thickening breakpoints of {{0}}: {:?}", profile.breakpoints());
    for v in [0.25, 0.5, 0.75, 1.0] {
        println!("  c({{0}}, {v}) = {}", prokhorov_capacity(&mu, &[0], v));
    }

    println!("Prokhorov distance mu -> nu: {}", prokhorov_distance(&mu, &nu, false)?);
    println!("Prokhorov distance nu -> mu: {}", prokhorov_distance(&nu, &mu, false)?);
    println!("symmetrized: {}", prokhorov_distance(&mu, &nu, true)?);

    let id = MMMap::identity_between(mu.clone(), nu)?;
    println!("identity seminorm: {}", prokhorov_seminorm(&id, ProkhorovVariant::Seminorm)?);
    println!("identity co-seminorm: {}", prokhorov_seminorm(&id, ProkhorovVariant::CoSeminorm)?);

    let vol = volume_norm(&mu)?;
    println!("norm of the empty inclusion {} against volume {}", vol.norm_of_initial, vol.volume);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
