//! Quantized rational chip-firing.
//!
//! A set `S` of non-sink vertices fires by sending `c` chips to the sink and
//! `a/b` chips along every edge leaving `S`, with each vertex's total gain or
//! loss rounded down. The crate covers:
//!
//! * [`model`]: the general model on any sinked graph, with stabilization
//!   strategies and exhaustive search over stabilizations;
//! * [`complete`]: the closed-form complete-graph case with coprime `(a, b)`;
//! * [`paths`] and [`labeled`]: rational lattice paths, cyclic shifts and
//!   the labeled-path encoding of configurations;
//! * [`skeletal`]: fast `k`-skeletal tests, superstabilization and duality;
//! * [`group`]: the critical group `Z_a^(b-1)`;
//! * [`oracles`]: brute-force reference checks, independent of the above,
//!   and [`verify`], which sweeps both against each other;
//! * [`render`]: ASCII and SVG path diagrams.

pub mod complete;
pub mod config;
pub mod error;
pub mod group;
pub mod labeled;
pub mod model;
pub mod oracles;
pub mod paths;
pub mod render;
pub mod skeletal;
pub mod verify;

pub use complete::RatParams;
pub use config::{ChipConfig, Move, MoveKind, VertexSet};
pub use error::{Error, Result};
pub use group::GroupElement;
pub use labeled::{decode, lpath, LabeledPath};
pub use model::{GeneralParams, SinkedGraph, Strategy};
pub use paths::{LatticePath, Step};
pub use render::RenderOptions;
pub use skeletal::{find_k_skeletal_config, is_k_skeletal_config, superstabilize};
