//! Integral cohomology of spaces of real binary forms whose real root lines
//! all have multiplicity below a threshold `k`.
//!
//! ```
//! use discomp::resolution::{closed_form_groups, crosscheck, Problem};
//!
//! let pr = Problem::new(4, 2)?;
//! assert_eq!(closed_form_groups(&pr).to_string(), "{0: ℤ³, 1: ℤ²}");
//! assert!(crosscheck(&pr).passed());
//! # Ok::<(), discomp::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module.

pub mod error;
pub mod forms;
pub mod groups;
pub mod oracle;
pub mod poly;
pub mod resolution;
pub mod simplicial;

pub use error::{Error, Result};
