//! Exact computations around perfect H-subdivision tilings.
//!
//! The crate computes the threshold parameters of a pattern graph, builds the
//! absorber and exchanger gadgets, decides subdivision containment and
//! perfect subdivision tilings on small hosts by exhaustive search, and
//! produces certified extremal constructions.

pub mod absorb;
pub mod domination;
pub mod embedding;
pub mod error;
pub mod extremal;
pub mod gadgets;
pub mod graph;
pub mod params;
pub mod rational;
pub mod report;
pub mod subdivision;
pub mod tiling;

pub use absorb::{select_family, verify_family, FamilySelection, SplitMix64, System};
pub use domination::{domination, DominationReport};
pub use embedding::{find_spanning_subdivision, is_subdivision, SearchLimits};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use extremal::{construct_extremal, verify_extremal, Construction, ExtremalInstance};
pub use gadgets::{build_gadget, verify_gadget, GadgetGraph, GadgetKind, Role};
pub use graph::{bipartition, build, parse_graph, BipartiteCheck, Bipartition, Graph, GraphFormat};
pub use params::{construct_hat_h, HatGraph, ParamReport, Parity};
pub use rational::{Hcf, Rational};
pub use subdivision::{CoverMode, SubdivisionCertificate};
pub use tiling::{
    find_perfect_subdivision_tiling, hat_tiling_complete_bipartite, obstruction_certificate, verify_tiling,
    ObstructionCertificate, TilingCertificate,
};
