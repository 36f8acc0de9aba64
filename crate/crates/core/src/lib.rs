//! Quadrilateral embeddings of complete 3-uniform hypergraphs `mK_n^3`
//! through their Levi graphs, described combinatorially by embedding sets
//! of Eulerian circuits.

pub mod builder;
pub mod census;
pub mod circuits;
pub mod cli;
pub mod error;
pub mod format;
pub mod levi;
pub mod scheme;

pub use circuits::{is_embedding_set, Circuit, EmbeddingSet, Transition};
pub use error::{Error, Result};
pub use levi::{build_levi, genus_formula, HypergraphSpec, LeviGraph, Vertex};
pub use scheme::{scheme_to_set, set_to_scheme, trace_faces, EmbeddingScheme, FaceReport};
