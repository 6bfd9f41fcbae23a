//! Spectral GRID invariants of Legendrian links.
//!
//! Grid diagrams go in; out come the filtered tilde grid complex, the
//! invariants `n^±` and `λ^±_i`, chain-level maps for Legendrian isotopy,
//! pinch and birth moves, and the resulting cobordism obstructions.

pub mod cli;
pub mod complex;
pub mod error;
pub mod grid;
pub mod maps;
pub mod spectral;

pub use complex::{build_complex, F2Chain, FilteredComplex};
pub use error::{ComplexError, GridError, MapError};
pub use grid::{parse_grid, Bigrading, GridDiagram, GridState, Sign};
pub use maps::{verify_map, ChainMapRecord, MapKind, VerificationReport};
pub use spectral::{compute_verdict, PageCount, SpectralVerdict};
