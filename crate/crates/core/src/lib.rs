pub mod graph;
pub mod vocab;
pub mod schema;
pub mod lint;
pub mod cq;
pub mod template;
pub mod populate;
pub mod enrich;
