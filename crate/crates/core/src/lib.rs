pub mod bott;
pub mod cech;
pub mod error;
pub mod killing;
pub mod linalg;
pub mod polyspaces;
pub mod reconf;
pub mod weights;
pub mod young_map;

pub use error::{Error, Result};
