//! Graph products over simplicial graphs: word combinatorics, a formal
//! graph product *-algebra, truncated graph product Fock spaces, graph
//! products of groups and of positive-definite functions, and numerical
//! checks for graph products of unital completely positive maps.

pub mod dilate;
pub mod fock;
pub mod formats;
pub mod graphwords;
pub mod groups;
pub mod mathcore;
pub mod report;
pub mod rng;
pub mod staralg;
pub mod verify;
