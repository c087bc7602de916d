//! Exact verification toolkit for star surgeries on 4-manifolds.

pub mod catalog;
pub mod error;
pub mod exactlin;
pub mod handlebody;
pub mod homblowup;
pub mod json;
pub mod mcg;
pub mod plumbing;
pub mod swsearch;

pub use error::{Error, Result};
pub use exactlin::{IntegerMatrix, Rational};
pub use homblowup::{BlowupClass, SphereConfiguration};
pub use handlebody::{GroupPresentation, Handlebody};
pub use mcg::{BraidWord, LoopCoordinates, TwistWord};
pub use plumbing::StarPlumbing;
pub use swsearch::{CharTuple, SearchBasis, StageCounts};
