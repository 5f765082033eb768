pub mod chowk;
pub mod cli;
pub mod curvebundles;
pub mod error;
pub mod exact;
pub mod groebner;
pub mod poly;
pub mod resolver;
pub mod schemes;

pub use error::{Error, Result};
