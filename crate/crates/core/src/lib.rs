pub mod catalog;
pub mod codesearch;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod graphstate;
pub mod stabilizer;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, VertexSet};
pub use graph::Graph;
pub use graphstate::{PauliOperator, Phase};
