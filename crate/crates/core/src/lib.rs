pub mod error;
pub mod exec;
pub mod ffield;
pub mod group;
pub mod permstat;
pub mod structure;
pub mod word;
pub mod wordmap;

pub use error::{Error, Result};
pub use exec::Exec;
pub use word::{parse_word, Letter, Sign, Variable, Word};
