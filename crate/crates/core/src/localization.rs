//! From a 2D box and an estimated distance to a ground-plane object position.

use std::collections::BTreeMap;

use nalgebra::{Point3, Vector2};
use rayon::prelude::*;

use crate::bbox::BBox2D;
use crate::camera::{backproject_ray, CameraExtrinsic, CameraIntrinsics, Pose3D};
use crate::depth::{
    DepthConfig, DepthEstimator, EstimateInput, EstimatorContext, EstimatorRegistry,
};
use crate::error::{Error, Result};
use crate::frame::{FrameId, FrameRecord};
use crate::object::ObjectSpec;
use crate::scene::Scene;

#[derive(Debug, Clone, PartialEq)]
pub struct Detection3D {
    pub frame_id: FrameId,
    /// Estimated object center on the ground plane, world frame.
    pub position_world: Vector2<f64>,
    pub z_depth_est: f64,
    /// Tag of the depth configuration that produced it.
    pub source: String,
}

/// World ground-plane point seen through the box center at z-depth `depth`.
pub fn localize(
    bbox: &BBox2D,
    depth: f64,
    intrinsics: &CameraIntrinsics,
    extrinsic: &CameraExtrinsic,
    ego: &Pose3D,
) -> Result<Vector2<f64>> {
    if !(depth > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "depth must be positive, got {depth}"
        )));
    }
    let c = bbox.center();
    let ray = backproject_ray(intrinsics, c.x, c.y);
    if !(ray.z > 0.0) {
        return Err(Error::InvalidBox(format!(
            "box center {c:?} gives a ray without forward component"
        )));
    }
    let p_cam = Point3::from(ray.into_inner() * (depth / ray.z));
    let p_world = extrinsic.world_from_optical(ego) * p_cam;
    Ok(p_world.coords.xy())
}

/// Shifts a back-face point half a length forward along `heading`.
pub fn apply_center_offset(back: &Vector2<f64>, heading: f64, length: f64) -> Vector2<f64> {
    back + Vector2::new(heading.cos(), heading.sin()) * (length / 2.0)
}

/// Where the 2D boxes fed to the estimators come from.
#[derive(Debug, Clone, Default)]
pub enum BoxSource {
    /// Exact projected boxes from the dataset.
    #[default]
    Gt,
    /// Dataset boxes with every edge snapped to an integer pixel.
    GtRounded,
    /// Boxes from an annotation file or an external detector.
    Annotations(BTreeMap<FrameId, BBox2D>),
}

impl BoxSource {
    pub fn box_for(&self, frame: &FrameRecord) -> Option<BBox2D> {
        match self {
            BoxSource::Gt => frame.gt_box,
            BoxSource::GtRounded => frame.gt_box.and_then(|b| b.rounded()),
            BoxSource::Annotations(m) => m.get(&frame.frame_id).copied(),
        }
    }
}

/// 2D box + depth estimate + center offset, one frame at a time. No tracking
/// or smoothing across frames.
pub struct Pipeline {
    pub scene: Scene,
    pub estimator: Box<dyn DepthEstimator>,
    pub boxes: BoxSource,
}

impl Pipeline {
    pub fn new(scene: Scene, estimator: Box<dyn DepthEstimator>, boxes: BoxSource) -> Self {
        Pipeline {
            scene,
            estimator,
            boxes,
        }
    }

    pub fn tag(&self) -> String {
        self.estimator.tag()
    }

    pub fn process_frame(&self, frame: &FrameRecord) -> Result<Option<Detection3D>> {
        let Some(bbox) = self.boxes.box_for(frame) else {
            return Ok(None);
        };
        let k = &self.scene.intrinsics;
        if bbox.clip_to_image(k.width, k.height).is_none() {
            return Err(Error::ResolutionMismatch(format!(
                "box {bbox} of frame {} lies outside the {}x{} image",
                frame.frame_id, k.width, k.height
            )));
        }
        let input = EstimateInput {
            frame,
            bbox: &bbox,
            intrinsics: k,
            object: &self.scene.object,
        };
        let Some(depth) = self.estimator.estimate(&input)? else {
            return Ok(None);
        };
        let back = localize(&bbox, depth, k, &self.scene.extrinsic, &frame.ego_pose)?;
        let center = apply_center_offset(&back, frame.ego_pose.yaw, self.scene.object.length);
        Ok(Some(Detection3D {
            frame_id: frame.frame_id,
            position_world: center,
            z_depth_est: depth,
            source: self.tag(),
        }))
    }

    /// Detections ordered by frame id; frames without an estimate yield none.
    pub fn run(&self, frames: &[FrameRecord]) -> Result<Vec<Detection3D>> {
        let per_frame = frames
            .par_iter()
            .map(|f| self.process_frame(f))
            .collect::<Result<Vec<_>>>()?;
        let mut dets: Vec<_> = per_frame.into_iter().flatten().collect();
        dets.sort_by_key(|d| d.frame_id);
        Ok(dets)
    }
}

/// Runs one built-in configuration over `frames` with ground-truth boxes.
pub fn run_pipeline(
    frames: &[FrameRecord],
    cfg: &DepthConfig,
    intrinsics: &CameraIntrinsics,
    extrinsic: &CameraExtrinsic,
    object: &ObjectSpec,
) -> Result<Vec<Detection3D>> {
    let estimator = EstimatorRegistry::with_builtins().create(cfg, &EstimatorContext::default())?;
    Pipeline::new(
        Scene::new(*intrinsics, *extrinsic, *object),
        estimator,
        BoxSource::Gt,
    )
    .run(frames)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::camera::normalize_angle;
    use approx::assert_relative_eq;
    use nalgebra::Vector3;
    use std::f64::consts::FRAC_PI_2;

    fn k() -> CameraIntrinsics {
        CameraIntrinsics::new(900.0, 900.0, 640.0, 360.0, 1280, 720).unwrap()
    }

    fn centered_box() -> BBox2D {
        BBox2D::new(620.0, 340.0, 660.0, 380.0).unwrap()
    }

    #[test]
    fn principal_point_box_lands_straight_ahead() {
        let ext = CameraExtrinsic::at_height(0.0).unwrap();
        let p = localize(
            &centered_box(),
            20.0,
            &k(),
            &ext,
            &Pose3D::planar(0.0, 0.0, 0.0),
        )
        .unwrap();
        assert_relative_eq!(p, Vector2::new(20.0, 0.0), epsilon = 1e-12);
    }

    #[test]
    fn ego_pose_is_applied() {
        let ext = CameraExtrinsic::at_height(1.0).unwrap();
        let p = localize(
            &centered_box(),
            20.0,
            &k(),
            &ext,
            &Pose3D::planar(10.0, 5.0, FRAC_PI_2),
        )
        .unwrap();
        assert_relative_eq!(p, Vector2::new(10.0, 25.0), epsilon = 1e-12);
    }

    #[test]
    fn depth_is_scaled_along_the_optical_axis() {
        // box center 900 px right of the principal point: 45 degrees off-axis
        let b = BBox2D::new(1530.0, 350.0, 1550.0, 370.0).unwrap();
        let ext = CameraExtrinsic::at_height(1.0).unwrap();
        let p = localize(&b, 10.0, &k(), &ext, &Pose3D::planar(0.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(p, Vector2::new(10.0, -10.0), epsilon = 1e-9);
        assert!(localize(&b, 0.0, &k(), &ext, &Pose3D::planar(0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn center_offset() {
        assert_relative_eq!(
            apply_center_offset(&Vector2::zeros(), 0.0, 4.0),
            Vector2::new(2.0, 0.0),
            epsilon = 1e-15
        );
    }

    /// Center error when the offset is applied along the ego heading but the
    /// object is rotated by `dtheta`: compare both offset vectors directly.
    fn heading_mismatch_error(length: f64, dtheta: f64) -> f64 {
        let back = Vector2::new(3.0, -1.0);
        let assumed = apply_center_offset(&back, 0.2, length);
        let truth = apply_center_offset(&back, 0.2 + dtheta, length);
        (assumed - truth).norm()
    }

    #[test]
    fn heading_mismatch_error_matches_chord() {
        assert_relative_eq!(
            heading_mismatch_error(4.8, 30f64.to_radians()),
            1.2423,
            epsilon = 1e-4
        );
        assert_eq!(heading_mismatch_error(4.8, 0.0), 0.0);
        for d in [0.1, 0.4, 1.0, 2.0] {
            assert_relative_eq!(
                heading_mismatch_error(4.8, d),
                4.8 * (d / 2.0).sin(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn rigid_motion_equivariance() {
        let ext = CameraExtrinsic::new(
            Pose3D::new(Vector3::new(0.5, 0.1, 1.2), 0.05, 0.02, 0.0).unwrap(),
        )
        .unwrap();
        let b = BBox2D::new(700.0, 300.0, 760.0, 350.0).unwrap();
        let ego = Pose3D::planar(3.0, -2.0, 0.4);
        let base =
            apply_center_offset(&localize(&b, 23.0, &k(), &ext, &ego).unwrap(), ego.yaw, 4.8);
        let (dx, dy, rot): (f64, f64, f64) = (-40.0, 12.5, 2.3);
        let (c, s) = (rot.cos(), rot.sin());
        let moved_ego = Pose3D::planar(
            c * ego.position.x - s * ego.position.y + dx,
            s * ego.position.x + c * ego.position.y + dy,
            normalize_angle(ego.yaw + rot),
        );
        let moved = apply_center_offset(
            &localize(&b, 23.0, &k(), &ext, &moved_ego).unwrap(),
            moved_ego.yaw,
            4.8,
        );
        let expected = Vector2::new(c * base.x - s * base.y + dx, s * base.x + c * base.y + dy);
        assert!((moved - expected).norm() < 1e-9);
    }

    #[test]
    fn empty_frame_list_gives_no_detections() {
        let ext = CameraExtrinsic::at_height(1.0).unwrap();
        let dets = run_pipeline(
            &[],
            &DepthConfig::known_height(),
            &k(),
            &ext,
            &ObjectSpec::default(),
        )
        .unwrap();
        assert!(dets.is_empty());
    }

    #[test]
    fn box_sources() {
        let f = FrameRecord {
            frame_id: 4,
            timestamp: 0.0,
            ego_pose: Pose3D::planar(0.0, 0.0, 0.0),
            object_pose: Pose3D::planar(0.0, 0.0, 0.0),
            gt_box: Some(BBox2D::new(1.4, 1.6, 9.5, 9.2).unwrap()),
            depth: Default::default(),
        };
        assert_eq!(BoxSource::Gt.box_for(&f), f.gt_box);
        assert_eq!(
            BoxSource::GtRounded.box_for(&f),
            Some(BBox2D::new(1.0, 2.0, 10.0, 9.0).unwrap())
        );
        let ann = BoxSource::Annotations(BTreeMap::from([(5, centered_box())]));
        assert_eq!(ann.box_for(&f), None);
    }
}
