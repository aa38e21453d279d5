pub mod dextrodual;
pub mod error;
pub mod hardy;
pub mod kaczmarz;
pub mod measure;
pub mod partial_sum;
pub mod realline;
pub mod testfns;

pub use error::{Error, Result};
