// Norms on finite sets, simplicial complexes, normed monoids and cost
// systems.
//
//     cargo run --example discrete_norms

use std::error::Error;

use normcat::discrete::{
    cost_pseudometric, csb_witness, grothendieck_norm, group_distance, simplicial_set_norm, word_cost, CostSystem,
    FiniteFunction, NormedMonoid, SimplicialComplex, set_norm,
};
use normcat::ext::ExtReal;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // a 4-point set collapsed onto 2 points with fibers of sizes 3 and 1
    let f = FiniteFunction::new(2, vec![0, 0, 1, 0])?;
    println!("set norm: {} (ln 3 = {:.6})", set_norm(&f, None), 3f64.ln());
    println!("set norm at point 2: {}", set_norm(&f, Some(2)));

    // injections both ways between 3-point sets give a bijection
    let g = FiniteFunction::new(3, vec![2, 0, 1])?;
    let h = FiniteFunction::new(3, vec![1, 2, 0])?;
    println!("bijection from injections: {:?}", csb_witness(&g, &h)?.assign);

    // the boundary of a triangle mapped onto an edge
    let circle = SimplicialComplex::on_vertices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]])?;
    let edge = SimplicialComplex::on_vertices(2, &[vec![0, 1]])?;
    let r = simplicial_set_norm(&circle, &edge, &[0, 1, 1])?;
    println!("collapse of the circle: norm {}, zero-norm maps both ways: {}", r.norm, r.zero_norm_both_ways);

    // Z/6 with word length: the morphism (3, 0): 1 -> 4 satisfies 3 + 1 = 4 + 0
    let z6 = NormedMonoid::cyclic_word(6);
    println!("d(1, 4) in Z/6: {}", group_distance(&z6, &1, &4));
    println!("Grothendieck norm of (3, 0): 1 -> 4: {}", grothendieck_norm(&z6, &3, &0, &1, &4)?);

    // three sites with one-way travel costs
    let inf = ExtReal::PosInf;
    let costs = CostSystem::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![ExtReal::ZERO, ExtReal::new(1.0), inf],
            vec![ExtReal::new(4.0), ExtReal::ZERO, ExtReal::new(2.0)],
            vec![ExtReal::new(1.0), inf, ExtReal::ZERO],
        ],
    )?;
    println!("cost of the word a->b->c: {}", word_cost(&costs, &[0, 1, 2])?);
    let d = cost_pseudometric(&costs);
    for (i, row) in d.dist.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>5}", v.to_string())).collect();
        println!("  {} {}", d.objects[i], cells.join(""));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
