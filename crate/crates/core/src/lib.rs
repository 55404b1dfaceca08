pub mod catalog;
pub mod cert;
pub mod error;
pub mod kr;
pub mod oracle;
pub mod qfactor;
pub mod recur;
pub mod report;
pub mod series;

pub use error::{Error, Result};
