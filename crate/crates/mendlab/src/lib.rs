//! Mendability of locally checkable labeling problems: verifiers, instance
//! generators, menders, and the radius machinery around them.

pub mod automata;
pub mod census;
pub mod cli;
pub mod error;
pub mod graph;
pub mod instances;
pub mod io;
pub mod lcl;
pub mod local_sim;
pub mod mender;
pub mod pointer;
pub mod problems;
pub mod tree_mend;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, Port};
pub use lcl::{Label, LclProblem, Mend, PartialLabeling};
