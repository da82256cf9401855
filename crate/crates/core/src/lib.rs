pub mod cli;
pub mod error;
pub mod ncsym;
pub mod oracle;
pub mod qcoeff;
pub mod ring;
pub mod setpart;

pub use error::{Error, Result};
