//! Deterministic cellular-link simulator for TR (thermal radiation) mode.
//!
//! A device whose downlink received power drops below a threshold switches
//! from full-duplex active mode (AM) to a half-duplex, downlink-only TR mode.
//! The crate models the pieces needed to evaluate that behaviour:
//!
//! - [`channel`]: free-space path loss, Rayleigh power fading, SINR and outage.
//! - [`trmode`]: the AM/TR switching controller and service gating.
//! - [`frames`]: numerology and the FDD/TDD frame layouts with TR slots.
//! - [`rrc`]: the four-state RRC machine including the energy-efficient state.
//! - [`exposure`]: power density, E-field and exposure ratio metrics.
//! - [`sim`]: the slot-stepped scenario engine.
//! - [`cli`]: config parsing, subcommand dispatch and output emitters.

// `!(x > 0.0)` is used on purpose throughout: it rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod error;
pub mod exposure;
pub mod frames;
pub mod rrc;
pub mod sim;
pub mod trmode;

pub use error::{Error, Result};
