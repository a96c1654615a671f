// The operator seminorm max(0, -ln σ_min) and its left dual on matrices.
//
//     cargo run --example operator_seminorm

use std::error::Error;

use normcat::ext::ExtReal;
use normcat::linear::{operator_left_dual, operator_seminorm, Matrix};

fn show(v: ExtReal) -> String {
    v.finite().map_or_else(|| v.to_string(), |x| format!("{x:.4}"))
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cases = [
        ("identity", Matrix::identity(2)),
        ("halving", Matrix::diag(&[1.0, 0.5])),
        ("stretch", Matrix::diag(&[2.0, 3.0])),
        ("shear", Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]])?),
        ("rank one", Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]])?),
        ("embedding", Matrix::from_rows(vec![vec![1.0], vec![1.0]])?),
    ];
    println!("{:<10}{:>24}{:>10}{:>10}", "matrix", "singular values", "norm", "dual");
    for (name, a) in &cases {
        let sv: Vec<String> = a.singular_values().iter().map(|s| format!("{s:.4}")).collect();
        println!("{name:<10}{:>24}{:>10}{:>10}", sv.join(" "), show(operator_seminorm(a)), show(operator_left_dual(a)));
    }
    // seminorms are subadditive under composition
    let (a, b) = (&cases[1].1, &cases[3].1);
    let ab = a.mul(b);
    println!(
        "|halving . shear| = {} <= {} + {}",
        operator_seminorm(&ab),
        operator_seminorm(a),
        operator_seminorm(b)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
