//! Every runnable example also runs as a test.

mod category_norms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/category_norms.rs"));
}

#[test]
fn category_norms_runs() {
    category_norms::run_example().expect("category_norms example should run");
}

mod capacity_duals {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/capacity_duals.rs"));
}

#[test]
fn capacity_duals_runs() {
    capacity_duals::run_example().expect("capacity_duals example should run");
}

mod discrete_norms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/discrete_norms.rs"));
}

#[test]
fn discrete_norms_runs() {
    discrete_norms::run_example().expect("discrete_norms example should run");
}

mod operator_seminorm {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/operator_seminorm.rs"));
}

#[test]
fn operator_seminorm_runs() {
    operator_seminorm::run_example().expect("operator_seminorm example should run");
}

mod metric_distances {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/metric_distances.rs"));
}

#[test]
fn metric_distances_runs() {
    metric_distances::run_example().expect("metric_distances example should run");
}

mod finite_topology {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/finite_topology.rs"));
}

#[test]
fn finite_topology_runs() {
    finite_topology::run_example().expect("finite_topology example should run");
}

mod prokhorov {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/prokhorov.rs"));
}

#[test]
fn prokhorov_runs() {
    prokhorov::run_example().expect("prokhorov example should run");
}

mod wasserstein {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/wasserstein.rs"));
}

#[test]
fn wasserstein_runs() {
    wasserstein::run_example().expect("wasserstein example should run");
}

mod generate_instances {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generate_instances.rs"));
}

#[test]
fn generate_instances_runs() {
    generate_instances::run_example().expect("generate_instances example should run");
}
