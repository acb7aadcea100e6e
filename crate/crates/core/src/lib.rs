//! Monocular 3D object localization.
//!
//! A 2D bounding box plus a distance estimate gives a 3D position: the box
//! center is back-projected, scaled to the estimated z-depth, moved into the
//! world frame and shifted from the object's back face to its center.
//!
//! - [`camera`]: pinhole projection and rig frames.
//! - [`depth`]: depth maps, the 16-bit PNG depth codec and the distance
//!   estimators (known object height, median over a depth crop), selected by
//!   name through [`depth::EstimatorRegistry`].
//! - [`localization`]: box + distance to ground-plane position, and the
//!   per-frame pipeline.
//! - [`scene`]: analytic ground-truth generator for vehicle-following runs.
//! - [`metrics`]: 3D recall and average translational error.
//! - [`dataset`]: on-disk dataset layout and CSV traces.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bbox;
pub mod camera;
pub mod dataset;
pub mod depth;
pub mod error;
pub mod frame;
pub mod localization;
pub mod metrics;
pub mod object;
pub mod scene;

pub use bbox::BBox2D;
pub use camera::{CameraExtrinsic, CameraIntrinsics, Pose3D};
pub use depth::{DepthConfig, DepthMap};
pub use error::{Error, Result};
pub use frame::{DepthRef, FrameId, FrameRecord};
pub use localization::{BoxSource, Detection3D, Pipeline};
pub use object::ObjectSpec;
pub use scene::Scene;
