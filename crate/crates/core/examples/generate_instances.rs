// Seeded instance generation and the command surface as a library call.
//
//     cargo run --example generate_instances

use std::error::Error;

use normcat::cli::instance::metric_file;
use normcat::cli::{generate, run, GenKind};
use normcat::gen;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("normcat-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, json: String| -> Result<String, Box<dyn Error>> {
        let path = dir.join(name);
        std::fs::write(&path, json)?;
        Ok(path.display().to_string())
    };

    // two random metric spaces for the metric distances
    let x = write("x.json", generate(GenKind::Metric, 3, 1)?.to_json())?;
    let y = write("y.json", generate(GenKind::Metric, 4, 2)?.to_json())?;
    println!("{}", std::fs::read_to_string(&x)?);

    // two measures on one base space for the transport distances
    let mut rng = gen::rng(5);
    let base = gen::metric_space(&mut rng, 3);
    let (a, b) = (gen::dirichlet(&mut rng, 3), gen::dirichlet(&mut rng, 3));
    let mu = write("mu.json", metric_file(&base, Some(&a)).to_json())?;
    let nu = write("nu.json", metric_file(&base, Some(&b)).to_json())?;

    for (kind, p, q) in [("gh", &x, &y), ("dil-plus", &x, &y), ("w1", &mu, &nu), ("prokhorov", &mu, &nu)] {
        let out = run(["normcat", "--format", "csv", "dist", "--kind", kind, p, q]);
        print!("{}", out.stdout);
        if out.code != 0 {
            return Err(out.stderr.into());
        }
    }
    let out = run(["normcat", "check", "--suite", "metric", "--cases", "20", "--seed", "3"]);
    print!("{}", out.stdout);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
