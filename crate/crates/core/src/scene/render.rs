use std::sync::Arc;

use nalgebra::{Isometry3, Point3, Translation3, Vector3};
use rayon::prelude::*;

use super::raycast::slab_entry;
use crate::bbox::BBox2D;
use crate::camera::{project_box_to_bbox, CameraExtrinsic, CameraIntrinsics, OrientedBox, Pose3D};
use crate::depth::{DepthMap, DEPTH_MAX_RANGE};
use crate::frame::{DepthRef, FrameId, FrameRecord};
use crate::object::ObjectSpec;

/// Camera rig plus the single object class present in the scene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scene {
    pub intrinsics: CameraIntrinsics,
    pub extrinsic: CameraExtrinsic,
    pub object: ObjectSpec,
}

impl Scene {
    pub fn new(
        intrinsics: CameraIntrinsics,
        extrinsic: CameraExtrinsic,
        object: ObjectSpec,
    ) -> Self {
        Scene {
            intrinsics,
            extrinsic,
            object,
        }
    }

    /// World-frame box of an object whose footprint center sits at `pose`.
    pub fn object_box(&self, pose: &Pose3D) -> OrientedBox {
        let lift = Isometry3::from_parts(
            Translation3::new(0.0, 0.0, self.object.height / 2.0),
            Default::default(),
        );
        OrientedBox::new(
            pose.isometry() * lift,
            self.object.length,
            self.object.width,
            self.object.height,
        )
    }

    pub fn camera_from_world(&self, ego: &Pose3D) -> Isometry3<f64> {
        self.extrinsic.world_from_optical(ego).inverse()
    }

    pub fn object_in_camera(&self, ego: &Pose3D, obj: &Pose3D) -> OrientedBox {
        self.object_box(obj)
            .transformed(&self.camera_from_world(ego))
    }

    pub fn gt_box(&self, ego: &Pose3D, obj: &Pose3D) -> Option<BBox2D> {
        project_box_to_bbox(&self.intrinsics, &self.object_in_camera(ego, obj))
    }

    /// Smallest z-depth over the object's corners: the depth of its near face.
    pub fn near_face_depth(&self, ego: &Pose3D, obj: &Pose3D) -> f64 {
        self.object_in_camera(ego, obj)
            .corners()
            .iter()
            .map(|c| c.z)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn render_depth(&self, ego: &Pose3D, obj: &Pose3D) -> DepthMap {
        render_depth(self, ego, obj, self.gt_box(ego, obj).as_ref())
    }

    pub fn render(
        &self,
        frame_id: FrameId,
        timestamp: f64,
        ego: &Pose3D,
        obj: &Pose3D,
    ) -> FrameRecord {
        let gt_box = self.gt_box(ego, obj);
        let depth = render_depth(self, ego, obj, gt_box.as_ref());
        FrameRecord {
            frame_id,
            timestamp,
            ego_pose: *ego,
            object_pose: *obj,
            gt_box,
            depth: DepthRef::Inline(Arc::new(depth)),
        }
    }
}

/// Renders one frame: ground-truth depth from exact ray casting plus the
/// projected object box.
pub fn render_frame(
    ego: &Pose3D,
    obj: &Pose3D,
    dims: &ObjectSpec,
    intrinsics: &CameraIntrinsics,
    extrinsic: &CameraExtrinsic,
) -> FrameRecord {
    Scene::new(*intrinsics, *extrinsic, *dims).render(0, 0.0, ego, obj)
}

// One ray per pixel center; depth is the nearer of the object and ground
// hits, 0 for no hit or anything beyond the encodable range.
fn render_depth(scene: &Scene, ego: &Pose3D, obj: &Pose3D, hull: Option<&BBox2D>) -> DepthMap {
    let k = &scene.intrinsics;
    let cam_from_world = scene.camera_from_world(ego);
    let world_from_cam = cam_from_world.inverse();
    // world height of a camera-frame point: up . (R p) + t_z
    let up = world_from_cam.rotation.inverse() * Vector3::z();
    let cam_height = world_from_cam.translation.vector.z;
    let bx = scene.object_in_camera(ego, obj);
    let box_inv = bx.pose.inverse();
    let o_local = (box_inv * Point3::origin()).coords;
    // pixels whose center can hit the object
    let (u_range, v_range) = match hull {
        Some(b) => (
            (b.u_min - 0.5).floor().max(0.0) as u32..((b.u_max + 0.5).ceil() as u32).min(k.width),
            (b.v_min - 0.5).floor().max(0.0) as u32..((b.v_max + 0.5).ceil() as u32).min(k.height),
        ),
        None => (0..0, 0..0),
    };
    let w = k.width as usize;
    let mut values = vec![0f32; w * k.height as usize];
    values.par_chunks_mut(w).enumerate().for_each(|(row, out)| {
        let v = row as u32;
        let y = (v as f64 + 0.5 - k.c_v) / k.f_v;
        for (u, px) in out.iter_mut().enumerate() {
            let u = u as u32;
            // unnormalized ray with unit forward component: t is z-depth
            let d = Vector3::new((u as f64 + 0.5 - k.c_u) / k.f_u, y, 1.0);
            let mut best = f64::INFINITY;
            let rise = up.dot(&d);
            if rise < 0.0 && cam_height > 0.0 {
                best = -cam_height / rise;
            }
            if u_range.contains(&u) && v_range.contains(&v) {
                let d_local = box_inv.rotation * d;
                if let Some(t) = slab_entry(&o_local, &d_local, &bx.half_extents) {
                    best = best.min(t);
                }
            }
            if best <= DEPTH_MAX_RANGE {
                *px = best as f32;
            }
        }
    });
    DepthMap::new(k.width, k.height, values, DEPTH_MAX_RANGE).expect("rendered depths are in range")
}
