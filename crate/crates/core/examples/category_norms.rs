// Seminorm axioms, dual seminorms and the induced pseudo-quasimetric on a
// small category of finite sets normed by the log of the largest fiber.
//
//     cargo run --example category_norms

use std::error::Error;

use normcat::category::{
    check_norm_axioms, check_seminorm_axioms, dual_seminorm, induced_pqmetric, FiniteCategory, NormAssignment, Side,
    Symmetrize,
};
use normcat::discrete::{set_norm, FiniteFunction};
use normcat::ext::ExtReal;

fn show(v: ExtReal) -> String {
    v.finite().map_or_else(|| v.to_string(), |x| format!("{x:.4}"))
}


pub fn run_example() -> Result<(), Box<dyn Error>> {
    // a 2-point set, a 3-point set and a point, with a collapse and a section
    let sizes = [2, 3, 1];
    let objects = ["Two", "Three", "Pt"].iter().zip(sizes).map(|(n, s)| (n.to_string(), s)).collect();
    let functions = vec![(1, 0, vec![0, 0, 1]), (0, 1, vec![0, 2]), (0, 2, vec![0, 0])];
    let (cat, assigns) = FiniteCategory::from_functions(objects, functions)?;
    println!("{} objects, {} morphisms after closing under composition", cat.objects().len(), cat.morphisms().len());

    let norm = NormAssignment::from_fn(&cat, |m| {
        let tgt = cat.morphism(m).tgt;
        let n = FiniteFunction::new(sizes[tgt], assigns[m].clone()).expect("valid assignment");
        set_norm(&n, None)
    })?;
    let semi = check_seminorm_axioms(&cat, &norm);
    let full = check_norm_axioms(&cat, &norm);
    println!("seminorm axioms hold: {}", semi.passed());
    println!("norm axiom (iso from zero-norm maps both ways) holds: {}", full.passed());

    let left = dual_seminorm(&cat, &norm, Side::Left)?;
    for (m, mor) in cat.morphisms().iter().enumerate() {
        println!("  {:<4} {} -> {}  |f| = {:<8} left dual = {}", mor.id, cat.objects()[mor.src], cat.objects()[mor.tgt], show(norm.get(m)), show(left.get(m)));
    }

    let d = induced_pqmetric(&cat, &norm, Symmetrize::Max);
    println!("induced distance (max-symmetrized):");
    for (i, row) in d.dist.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>8}", show(*v))).collect();
        println!("  {:<6}{}", d.objects[i], cells.join(""));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
