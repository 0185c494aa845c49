//! Relaxed polar codes.
//!
//! Polarization is stopped early at bit-channels that are already good
//! enough or bad enough; the skipped butterflies are saved at both the
//! encoder and the successive-cancellation decoder. The crate covers
//! channel figures, an exact small-alphabet polarization oracle, reliability
//! trees and constructions, the encoder and decoders, complexity bounds and
//! a Monte-Carlo harness.

pub mod analysis;
pub mod bounds;
pub mod channels;
pub mod cli;
pub mod codec;
pub mod error;
pub mod oracle;
pub mod sim;
pub mod verify;

pub use error::{Error, Result};
