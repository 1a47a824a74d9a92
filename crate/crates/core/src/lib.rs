//! ZX-calculus diagrams with exact semantics, rewriting, and the sharp multi-copy functor.

pub mod diagram;
pub mod error;
pub mod iso;
mod io;
pub mod phase;
pub mod rules;
pub mod scalar;
pub mod scalar_diagrams;
pub mod semantics;
pub mod sharp;
pub mod twins;

pub use diagram::{Colour, Diagram, Endpoint, Generator, VertexId, VertexKind, Wire};
pub use error::{Result, ZxError};
pub use phase::Phase;
pub use scalar::CycloNumber;
