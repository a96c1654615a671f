pub mod capacity;
pub mod cli;
pub mod category;
pub mod discrete;
pub mod ext;
pub mod gen;
pub mod linear;
pub mod measure;
pub mod metric;
pub mod topo;
pub mod wasserstein;
