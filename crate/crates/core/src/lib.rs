//! Link-level simulation of cluster index modulation (CIM) over clustered
//! mmWave channels with ULA, URA, UCA and CCA antenna arrays.
//!
//! Modules, bottom up:
//!
//! - [`geometry`]: element positions and steering vectors.
//! - [`channel`]: clustered channel realizations with path loss.
//! - [`codebook`]: cluster selection, beamformers/combiners and the
//!   fixed-phase-shifter realization of analog weights.
//! - [`link`]: bit mapping, received signal and ML detection.
//! - [`pattern`]: radiation patterns, directivity, HPBW and side lobes.
//! - [`harness`]: seeded Monte Carlo BER sweeps and result files.
//! - [`verify`]: oracle checks used by the CLI.

// `!(x > 0.0)` is used on purpose so NaN inputs fail validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod codebook;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod link;
pub mod pattern;
pub mod seed;
pub mod verify;

pub use channel::{sample_realization, ChannelConfig, ChannelRealization, PathLossModel};
pub use codebook::{build_codebook, compose_switch_vector, CimCodebook, FpsBank, Hardware, SwitchVector};
pub use error::{Error, Result};
pub use geometry::{element_positions, steering_vector, wave_number, GeometryKind, GeometrySpec};
pub use harness::{aggregate_and_emit, run_sweep, BerResult, SimConfig};
pub use link::{ml_detect, transmit_and_receive, DetectorReference, LinkConfig};
pub use pattern::{compute_pattern, summarize, PatternSummary, RadiationPattern};
