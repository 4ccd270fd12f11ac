//! File formats, multi-threaded drivers and the command line for
//! [`orbit_codes`].

pub mod commands;
pub mod formats;
pub mod parallel;
pub mod pipeline;
