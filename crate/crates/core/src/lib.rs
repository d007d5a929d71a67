//! Exact computations in the field reduction of PG(2,q³) into PG(8,q).

pub mod bruckbose;
pub mod error;
pub mod figueroa;
pub mod fixed;
pub mod gf;
pub mod linsets;
pub mod linalg;
pub mod pg;
pub mod properties;
pub mod reduction;
pub mod report;

pub use error::{GeomError, Result};
