use std::path::PathBuf;
use std::sync::Arc;

use crate::bbox::BBox2D;
use crate::camera::Pose3D;
use crate::depth::{codec, DepthMap};
use crate::error::{Error, Result};

pub type FrameId = u64;

/// File name of a frame's depth image, `<frame_id:06>.png`.
pub fn depth_file_name(frame_id: FrameId) -> String {
    format!("{frame_id:06}.png")
}

#[derive(Debug, Clone, Default)]
pub enum DepthRef {
    #[default]
    None,
    Inline(Arc<DepthMap>),
    File(PathBuf),
}

impl DepthRef {
    pub fn load(&self, frame_id: FrameId) -> Result<Arc<DepthMap>> {
        match self {
            DepthRef::None => Err(Error::NoDepth(frame_id)),
            DepthRef::Inline(d) => Ok(Arc::clone(d)),
            DepthRef::File(path) => load_depth_file(frame_id, path).map(Arc::new),
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, DepthRef::None)
    }
}

pub(crate) fn load_depth_file(frame_id: FrameId, path: &std::path::Path) -> Result<DepthMap> {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::MissingDepthFile {
                frame_id,
                path: path.to_path_buf(),
            })
        }
        Err(e) => return Err(Error::io(format!("reading {}", path.display()), e)),
    };
    codec::decode_depth_png(&bytes).map_err(|e| match e {
        Error::DepthFormat(msg) => Error::DepthFormat(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// One timestep of a sequence.
#[derive(Debug, Clone)]
pub struct FrameRecord {
    pub frame_id: FrameId,
    pub timestamp: f64,
    pub ego_pose: Pose3D,
    /// Ground-truth object pose; the position is the center of the object's
    /// footprint on the ground.
    pub object_pose: Pose3D,
    /// Present iff the object is visible.
    pub gt_box: Option<BBox2D>,
    pub depth: DepthRef,
}

impl FrameRecord {
    pub fn without_depth(mut self) -> Self {
        self.depth = DepthRef::None;
        self
    }
}
