//! Enrichment: patches, lint-driven internal fixes, the
//! evaluate/enrich/re-evaluate loop, and FEKR export.

mod fekr;
mod iterate;
mod patch;

pub use fekr::{export_fekr, fekr_graph, header_node, provenance_triples, ExportError, FekrMetadata, FEKR_STATUS};
pub use iterate::{run_iteration, IterationLog, IterationOptions, IterationRecord};
pub use patch::{
    apply_patch, load_patch_dir, parse_patch, suggest_internal_fixes, ApplyReport, Patch, PatchError, Provenance,
};
