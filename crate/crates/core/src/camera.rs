//! Ideal pinhole camera: projection, back-projection and the rigid frames that
//! connect the world, the ego body and the optical frame.
//!
//! Frame conventions:
//! - world: right-handed, z up, ground plane at z = 0;
//! - body (ego, object, camera mount): x forward, y left, z up;
//! - optical: x right, y down, z forward.

use std::f64::consts::PI;

use nalgebra::{
    Isometry3, Matrix3, Point3, Rotation3, Translation3, UnitQuaternion, UnitVector3, Vector3,
};
use serde::{Deserialize, Serialize};

use crate::bbox::BBox2D;
use crate::error::{Error, Result};

/// Points closer than this to the camera plane are treated as crossing it.
pub const NEAR_PLANE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraIntrinsics {
    pub f_u: f64,
    pub f_v: f64,
    pub c_u: f64,
    pub c_v: f64,
    pub width: u32,
    pub height: u32,
}

impl CameraIntrinsics {
    pub fn new(f_u: f64, f_v: f64, c_u: f64, c_v: f64, width: u32, height: u32) -> Result<Self> {
        let k = CameraIntrinsics {
            f_u,
            f_v,
            c_u,
            c_v,
            width,
            height,
        };
        k.validate()?;
        Ok(k)
    }

    /// Square pixels with the principal point at the image center.
    pub fn centered(focal: f64, width: u32, height: u32) -> Result<Self> {
        Self::new(
            focal,
            focal,
            width as f64 / 2.0,
            height as f64 / 2.0,
            width,
            height,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.f_u, self.f_v, self.c_u, self.c_v]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidIntrinsics("non-finite parameter".into()));
        }
        if self.f_u <= 0.0 || self.f_v <= 0.0 {
            return Err(Error::InvalidIntrinsics(format!(
                "focal lengths must be positive (f_u = {}, f_v = {})",
                self.f_u, self.f_v
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidIntrinsics(
                "image must be at least 1x1".into(),
            ));
        }
        if !(0.0..=self.width as f64).contains(&self.c_u)
            || !(0.0..=self.height as f64).contains(&self.c_v)
        {
            return Err(Error::InvalidIntrinsics(format!(
                "principal point ({}, {}) outside the {}x{} image",
                self.c_u, self.c_v, self.width, self.height
            )));
        }
        Ok(())
    }
}

/// Result of projecting a camera-frame point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub u: f64,
    pub v: f64,
    /// Forward (optical-axis) component of the point.
    pub depth: f64,
}

pub fn project_point(k: &CameraIntrinsics, p_cam: &Vector3<f64>) -> Result<Projection> {
    if !(p_cam.z > 0.0) {
        return Err(Error::PointBehindCamera { z: p_cam.z });
    }
    Ok(Projection {
        u: k.f_u * p_cam.x / p_cam.z + k.c_u,
        v: k.f_v * p_cam.y / p_cam.z + k.c_v,
        depth: p_cam.z,
    })
}

/// Unit ray through pixel `(u, v)` in the optical frame. Pixels outside the
/// image still define valid rays.
pub fn backproject_ray(k: &CameraIntrinsics, u: f64, v: f64) -> UnitVector3<f64> {
    UnitVector3::new_normalize(Vector3::new((u - k.c_u) / k.f_u, (v - k.c_v) / k.f_v, 1.0))
}

/// Scales focal lengths and principal point by `s`; the image size is scaled
/// and rounded to the nearest pixel.
pub fn scale_intrinsics(k: &CameraIntrinsics, s: f64) -> Result<CameraIntrinsics> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidScale(s));
    }
    let width = (k.width as f64 * s).round();
    let height = (k.height as f64 * s).round();
    if width < 1.0 || height < 1.0 || width > u32::MAX as f64 || height > u32::MAX as f64 {
        return Err(Error::InvalidScale(s));
    }
    let scaled = CameraIntrinsics {
        f_u: k.f_u * s,
        f_v: k.f_v * s,
        c_u: k.c_u * s,
        c_v: k.c_v * s,
        width: width as u32,
        height: height as u32,
    };
    // rounding the size can leave the principal point a fraction outside
    Ok(CameraIntrinsics {
        c_u: scaled.c_u.min(scaled.width as f64),
        c_v: scaled.c_v.min(scaled.height as f64),
        ..scaled
    })
}

/// Wraps an angle into (-pi, pi].
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Position plus yaw/pitch/roll, applied yaw first, then pitch, then roll,
/// each about the already-rotated body axes. Positive pitch turns the body x
/// axis towards -z (nose down).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose3D {
    pub position: Vector3<f64>,
    pub yaw: f64,
    pub pitch: f64,
    pub roll: f64,
}

impl Pose3D {
    pub fn new(position: Vector3<f64>, yaw: f64, pitch: f64, roll: f64) -> Result<Self> {
        let all = [position.x, position.y, position.z, yaw, pitch, roll];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPose(format!(
                "non-finite component in {all:?}"
            )));
        }
        Ok(Pose3D {
            position,
            yaw: normalize_angle(yaw),
            pitch: normalize_angle(pitch),
            roll: normalize_angle(roll),
        })
    }

    /// Pose on the ground plane with only a heading.
    pub fn planar(x: f64, y: f64, yaw: f64) -> Self {
        Pose3D {
            position: Vector3::new(x, y, 0.0),
            yaw: normalize_angle(yaw),
            pitch: 0.0,
            roll: 0.0,
        }
    }

    pub fn rotation(&self) -> Rotation3<f64> {
        Rotation3::from_euler_angles(self.roll, self.pitch, self.yaw)
    }

    /// Maps body coordinates into the parent frame.
    pub fn isometry(&self) -> Isometry3<f64> {
        Isometry3::from_parts(
            Translation3::from(self.position),
            UnitQuaternion::from_rotation_matrix(&self.rotation()),
        )
    }

    pub fn ground_position(&self) -> nalgebra::Vector2<f64> {
        self.position.xy()
    }
}

/// Camera mount relative to the ego body. With zero orientation the optical
/// axis is the ego +x axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraExtrinsic {
    pub mount: Pose3D,
}

impl CameraExtrinsic {
    pub fn new(mount: Pose3D) -> Result<Self> {
        if mount.position.z < 0.0 {
            return Err(Error::InvalidPose(format!(
                "camera mounted below the ground plane (z = {})",
                mount.position.z
            )));
        }
        Ok(CameraExtrinsic { mount })
    }

    /// Forward-looking camera at `height` above the ego origin.
    pub fn at_height(height: f64) -> Result<Self> {
        Self::new(Pose3D::new(Vector3::new(0.0, 0.0, height), 0.0, 0.0, 0.0)?)
    }

    /// Maps optical-frame coordinates into the ego body frame.
    pub fn body_from_optical(&self) -> Isometry3<f64> {
        self.mount.isometry() * optical_to_body()
    }

    pub fn world_from_optical(&self, ego: &Pose3D) -> Isometry3<f64> {
        ego.isometry() * self.body_from_optical()
    }
}

fn optical_to_body() -> Isometry3<f64> {
    // columns: optical x (right) -> body -y, optical y (down) -> body -z,
    // optical z (forward) -> body +x
    let m = Matrix3::new(0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, -1.0, 0.0);
    Isometry3::from_parts(
        Translation3::identity(),
        UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(m)),
    )
}

/// Box with its own frame: origin at the geometric center, x along the
/// length, y along the width, z along the height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedBox {
    /// Maps box-local coordinates into the frame the box is expressed in.
    pub pose: Isometry3<f64>,
    pub half_extents: Vector3<f64>,
}

impl OrientedBox {
    pub fn new(pose: Isometry3<f64>, length: f64, width: f64, height: f64) -> Self {
        OrientedBox {
            pose,
            half_extents: Vector3::new(length / 2.0, width / 2.0, height / 2.0),
        }
    }

    pub fn corners(&self) -> [Point3<f64>; 8] {
        let h = self.half_extents;
        let mut out = [Point3::origin(); 8];
        for (i, c) in out.iter_mut().enumerate() {
            let sx = if i & 1 == 0 { -1.0 } else { 1.0 };
            let sy = if i & 2 == 0 { -1.0 } else { 1.0 };
            let sz = if i & 4 == 0 { -1.0 } else { 1.0 };
            *c = self.pose * Point3::new(sx * h.x, sy * h.y, sz * h.z);
        }
        out
    }

    pub fn transformed(&self, by: &Isometry3<f64>) -> Self {
        OrientedBox {
            pose: by * self.pose,
            half_extents: self.half_extents,
        }
    }

    pub fn contains_local(&self, p_local: &Point3<f64>) -> bool {
        let h = self.half_extents;
        p_local.x.abs() <= h.x && p_local.y.abs() <= h.y && p_local.z.abs() <= h.z
    }
}

// corner indices differ in exactly one bit along an edge
const BOX_EDGES: [(usize, usize); 12] = [
    (0, 1),
    (2, 3),
    (4, 5),
    (6, 7),
    (0, 2),
    (1, 3),
    (4, 6),
    (5, 7),
    (0, 4),
    (1, 5),
    (2, 6),
    (3, 7),
];

/// Axis-aligned image rectangle enclosing a box given in the optical frame,
/// clipped to the image. Corners behind the near plane are replaced by the
/// points where their edges cross it. `None` when nothing is in front of the
/// camera or the clipped rectangle is empty.
pub fn project_box_to_bbox(k: &CameraIntrinsics, box_in_camera: &OrientedBox) -> Option<BBox2D> {
    let corners = box_in_camera.corners();
    let mut pts: Vec<Point3<f64>> = corners
        .iter()
        .filter(|c| c.z > NEAR_PLANE)
        .copied()
        .collect();
    if pts.is_empty() {
        return None;
    }
    for &(a, b) in &BOX_EDGES {
        let (pa, pb) = (corners[a], corners[b]);
        if (pa.z > NEAR_PLANE) != (pb.z > NEAR_PLANE) {
            let t = (NEAR_PLANE - pa.z) / (pb.z - pa.z);
            let mut p = pa + (pb - pa) * t;
            p.z = NEAR_PLANE;
            pts.push(p);
        }
    }
    let (mut u0, mut v0, mut u1, mut v1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for p in &pts {
        let u = k.f_u * p.x / p.z + k.c_u;
        let v = k.f_v * p.y / p.z + k.c_v;
        u0 = u0.min(u);
        v0 = v0.min(v);
        u1 = u1.max(u);
        v1 = v1.max(v);
    }
    let u0 = u0.max(0.0);
    let v0 = v0.max(0.0);
    let u1 = u1.min(k.width as f64);
    let v1 = v1.min(k.height as f64);
    BBox2D::new(u0, v0, u1, v1).ok()
}
