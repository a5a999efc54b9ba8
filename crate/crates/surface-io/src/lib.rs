//! Mesh sampling, exporters, verification reports, and the CLI driver for
//! the minimal-disk engine in `wrep-core`.

pub mod cli;
pub mod export;
pub mod mesh;
pub mod multigraph;
pub mod report;
pub mod verify;

pub use export::MeshFormat;
pub use mesh::{MeshSource, SurfaceMesh};
pub use multigraph::{decompose_multigraph, DecomposeError, DecomposeOptions, SheetDescriptor};
pub use report::ReportDocument;

/// Errors of the IO layer, wrapping the core engine's.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] wrep_core::Error),
    #[error("sink failure: {0}")]
    Sink(#[from] std::io::Error),
    #[error(transparent)]
    Decompose(#[from] multigraph::DecomposeError),
}

pub type Result<T> = std::result::Result<T, Error>;
