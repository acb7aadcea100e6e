use std::path::PathBuf;

use thiserror::Error;

use crate::frame::FrameId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid camera intrinsics: {0}")]
    InvalidIntrinsics(String),

    #[error("invalid pose: {0}")]
    InvalidPose(String),

    #[error("point is behind the camera (z = {z})")]
    PointBehindCamera { z: f64 },

    #[error("scale factor must be positive and keep the image non-empty, got {0}")]
    InvalidScale(f64),

    #[error("invalid bounding box: {0}")]
    InvalidBox(String),

    #[error("bounding box {0} lies entirely outside the {1}x{2} image")]
    BoxOutsideImage(String, u32, u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("depth value {value} m at pixel {index} is outside [0, {max_range}] m")]
    DepthOutOfRange {
        value: f64,
        index: usize,
        max_range: f64,
    },

    #[error("invalid depth map: {0}")]
    InvalidDepthMap(String),

    #[error("depth png: {0}")]
    DepthFormat(String),

    #[error("no depth file for frame {frame_id} (expected {path})")]
    MissingDepthFile { frame_id: FrameId, path: PathBuf },

    #[error("frame {0} carries no depth reference")]
    NoDepth(FrameId),

    #[error("unknown depth configuration `{0}` (known: {1})")]
    UnknownEstimator(String, String),

    #[error("depth configuration `{0}` is already registered")]
    DuplicateEstimator(String),

    #[error("resolution mismatch: {0}")]
    ResolutionMismatch(String),

    #[error("degenerate track: {0}")]
    DegenerateTrack(String),

    #[error("no ground-truth objects to evaluate")]
    EmptyGroundTruth,

    #[error("no detections to average over")]
    NoDetections,

    #[error("frame sets do not match: {0}")]
    FrameSetMismatch(String),

    #[error("dataset schema: {0}")]
    Schema(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// True for errors caused by bad inputs on disk rather than bad arguments
    /// or bugs.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::DepthFormat(_)
                | Error::MissingDepthFile { .. }
                | Error::NoDepth(_)
                | Error::ResolutionMismatch(_)
                | Error::Schema(_)
                | Error::Io { .. }
                | Error::Json(_)
                | Error::FrameSetMismatch(_)
                | Error::EmptyGroundTruth
                | Error::NoDetections
                | Error::InvalidDepthMap(_)
                | Error::DepthOutOfRange { .. }
        )
    }

    pub fn is_usage_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownEstimator(..)
                | Error::InvalidArgument(_)
                | Error::InvalidScale(_)
                | Error::DegenerateTrack(_)
                | Error::InvalidIntrinsics(_)
        )
    }
}
