//! Analytic stand-in for a driving simulator: vehicles are oriented boxes on
//! a flat ground plane, depth comes from exact ray casting.

pub mod raycast;
pub mod render;
pub mod sequence;
pub mod track;

pub use raycast::{ray_box_intersect, ray_ground_intersect, Ray};
pub use render::{render_frame, Scene};
pub use sequence::{generate_following_sequence, FollowingParams, FollowingSequence};
pub use track::{CenterlinePoint, Segment, TrackSpec};
