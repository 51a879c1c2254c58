//! Exact computations on eventually periodic infinite graphs: ends,
//! domination, star–comb certificates, connected envelopes, layered
//! exhaustions, tree-decompositions displaying the topological ends and
//! end-faithful spanning trees, each paired with an independent checker.

pub mod cli;
pub mod ends;
pub mod envelope;
pub mod epvs;
pub mod error;
pub mod exhaustion;
pub mod export;
pub mod finite;
pub mod periodic;
pub mod presentation;
pub mod spanning_tree;
pub mod starcomb;
pub mod text;
pub mod treedecomp;
pub mod upis;
pub mod verify;
pub mod zoo;

pub use epvs::Epvs;
pub use error::{Error, Result};
pub use presentation::{EpgPresentation, HubRule, TailSpec, VertexId};
pub use upis::Upis;
