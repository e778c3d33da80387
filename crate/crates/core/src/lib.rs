//! Class-separability estimation for point clouds from the distribution of
//! H0 persistence times of the Vietoris-Rips filtration, together with the
//! supervised and unsupervised baseline metrics it is compared against.
//!
//! The crate is `no_std`-compatible (with `alloc`); all IO, file formats and
//! the command line live in the companion `phsep` crate.

#![cfg_attr(not(feature = "std"), no_std)]
// index loops here usually mutate the slice they scan or walk several
// buffers in lockstep; iterator rewrites would obscure that
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod homology;
pub mod learners;
pub mod metrics;
pub mod rng;
pub mod summaries;
pub mod synth;
pub mod toylab;

mod mathx;

pub use error::{Error, Result};
pub use geometry::{diameter, pairwise_distances, DistanceMatrix, PointCloud};
pub use homology::{
    h0_persistence, h0_persistence_oracle, normalize_diagram, NormalizedPersistences,
    PersistenceDiagram,
};
pub use summaries::{
    density_distance, detect_convergence, persistence_density, persistence_statistic, Density,
    StatisticSeries,
};
