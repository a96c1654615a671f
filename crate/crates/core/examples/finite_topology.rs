// Finite topological spaces as posets: the component seminorm, the
// monotone-light report, and the dimension seminorm of simplicial maps.
//
//     cargo run --example finite_topology

use std::error::Error;

use normcat::discrete::SimplicialComplex;
use normcat::topo::{
    component_seminorm, component_seminorm_capacity, dimension_seminorm, monotone_light_report, topological_norm,
    ContinuousPosetMap, FiniteTopSpace, SimplicialMap, TopologicalMap,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // the identity from the discrete 2-point space onto the Sierpinski space
    let f = ContinuousPosetMap::new(FiniteTopSpace::discrete(2), FiniteTopSpace::sierpinski(), vec![0, 1])?;
    println!("Sierpinski bijection: component seminorm {}", component_seminorm(&f)?);
    println!("  capacity form {}", component_seminorm_capacity(&f)?);
    let r = monotone_light_report(&f)?;
    println!("  monotone {} light {} closed {} defect {}", r.monotone, r.light, r.closed, r.mon_defect);

    // a V-shaped poset folded onto a chain
    let v = FiniteTopSpace::from_relation(3, |a, b| a == b || (a == 0 && b > 0))?;
    let chain = FiniteTopSpace::from_relation(2, |a, b| a <= b)?;
    let fold = ContinuousPosetMap::new(v, chain, vec![0, 1, 1])?;
    let r = monotone_light_report(&fold)?;
    println!("V folded onto a chain: norm {}, monotone {} light {}", component_seminorm(&fold)?, r.monotone, r.light);

    // a filled triangle collapsed onto an edge
    let triangle = SimplicialComplex::on_vertices(3, &[vec![0, 1, 2]])?;
    let edge = SimplicialComplex::on_vertices(2, &[vec![0, 1]])?;
    let s = SimplicialMap::new(triangle, edge, vec![0, 0, 1])?;
    let d = dimension_seminorm(&s)?;
    println!("triangle onto edge: dimension seminorm {} (capacity form {})", d.fiber_form, d.capacity_form);

    let total = topological_norm(&TopologicalMap { poset: Some(fold), simplicial: None })?;
    println!("topological norm of the fold: {} = {} + {}", total.total, total.comp, total.dim);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
