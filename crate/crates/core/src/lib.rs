//! Exact matching counts for lex, colex and threshold graphs, Young diagram
//! moves for the bipartite case, and exhaustive verification sweeps.

pub mod compression;
pub mod error;
pub mod graph;
pub mod io;
pub mod matchings;
pub mod verify;
pub mod young;

pub use error::{Error, Result};
pub use graph::{
    clique_split, colex_graph, d2, is_bipartite_threshold, is_lex_across, is_threshold,
    lex_bipartite, lex_graph, vicinal_comparable, BipartiteGraph, CliqueSplit, Graph, Side,
};
pub use matchings::{
    bipartite_matching_vector, m2_closed_form, matching_vector, matching_vector_bruteforce,
    telephone, threshold_matching_total, MatchingVector,
};
pub use young::{minimize_to_lex, rook_vector, Cell, Move, MoveTrace, YoungDiagram};
