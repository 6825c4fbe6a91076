//! Combinatorial oracle for the components and loops of the complement.

mod moves;
mod path;
mod winding;

pub use moves::{classify, component_count, enumerate_states, moves, MoveGraph, MoveKind};
pub use path::{check_path, connect, path_to_base, Connection, PathSample};
pub use winding::{winding, LoopSpec};
