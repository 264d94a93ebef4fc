//! Ramsey-type spaces at finite truncation: approximations, games on them,
//! and verification of their axioms.

pub mod error;
pub mod games;
pub mod gowers;
pub mod product;
pub mod space;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
pub use space::{ARElem, Depth, Payload, Space, SubspaceGen, Tail, WSpace};
