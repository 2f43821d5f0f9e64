pub mod adjoint;
pub mod branches;
pub mod curvekit;
pub mod error;
pub mod exact;
pub mod families;
pub mod ivhs;
pub mod report;

pub use error::{Error, Result};
