//! Command-line tool and local HTTP service around `sdrd-core`.
//!
//! `sdrd evaluate` writes JSON, CSV, SVG and ZIP reports for a dataset and a
//! rule file. `sdrd serve` exposes the same evaluation as a JSON API; every
//! number it returns comes from the same [`sdrd_core::ResultDocument`] the
//! CLI exports.

pub mod cli;
pub mod load;
pub mod server;
pub mod session;

pub use load::{evaluate_sources, ErrorBody, InputError, Source};
pub use server::{router, ServerConfig};
pub use session::{Session, SessionStore};
