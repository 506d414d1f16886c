//! Long-jump random walks on finite nilpotent groups.

pub mod cost;
pub mod error;
pub mod euclid;
pub mod experiments;
pub mod geometry;
pub mod group;
pub mod io;
pub mod measure;
pub mod mixing;
pub mod spectral;
mod fourier;
mod numeric;

pub use error::{Error, Result};
pub use group::{Element, GroupSpec, WalkSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cost.md")]
    mod cost {}
    #[doc = include_str!("../../../book/src/euclid.md")]
    mod euclid {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/mixing.md")]
    mod mixing {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
