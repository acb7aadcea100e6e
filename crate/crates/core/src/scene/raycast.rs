//! Exact ray intersections with oriented boxes and the ground plane.
//!
//! Results are z-depths: the component of `hit - origin` along the camera's
//! forward axis, not the Euclidean range.

use nalgebra::{Point3, UnitVector3, Vector3};

use crate::camera::OrientedBox;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point3<f64>,
    pub dir: UnitVector3<f64>,
}

/// Entry parameter of the ray `o + t d` into the axis-aligned box
/// `[-half, half]`. `None` for misses and for origins inside the box.
pub(crate) fn slab_entry(o: &Vector3<f64>, d: &Vector3<f64>, half: &Vector3<f64>) -> Option<f64> {
    let mut t_enter = f64::NEG_INFINITY;
    let mut t_exit = f64::INFINITY;
    for i in 0..3 {
        if d[i] == 0.0 {
            if o[i].abs() > half[i] {
                return None;
            }
            continue;
        }
        let inv = 1.0 / d[i];
        let (mut t0, mut t1) = ((-half[i] - o[i]) * inv, (half[i] - o[i]) * inv);
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        t_enter = t_enter.max(t0);
        t_exit = t_exit.min(t1);
    }
    (t_enter > 0.0 && t_enter <= t_exit).then_some(t_enter)
}

/// Z-depth of the nearest hit of `ray` with `bx`, all in one frame whose
/// camera forward axis is `forward`.
pub fn ray_box_intersect(ray: &Ray, forward: &UnitVector3<f64>, bx: &OrientedBox) -> Option<f64> {
    let inv = bx.pose.inverse();
    let o = inv * ray.origin;
    let d = inv.rotation * ray.dir.into_inner();
    slab_entry(&o.coords, &d, &bx.half_extents).map(|t| t * ray.dir.dot(forward))
}

/// Z-depth of the hit with the world ground plane `z = 0`. `None` when the
/// ray is parallel to the plane or points away from it.
pub fn ray_ground_intersect(ray: &Ray, forward: &UnitVector3<f64>) -> Option<f64> {
    let dz = ray.dir.z;
    if dz == 0.0 {
        return None;
    }
    let t = -ray.origin.z / dz;
    (t > 0.0).then(|| t * ray.dir.dot(forward))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::{Isometry3, Translation3, UnitQuaternion};
    use std::f64::consts::FRAC_PI_4;

    fn fwd() -> UnitVector3<f64> {
        Vector3::z_axis()
    }

    fn ray(o: [f64; 3], d: [f64; 3]) -> Ray {
        Ray {
            origin: Point3::from(o),
            dir: UnitVector3::new_normalize(Vector3::from(d)),
        }
    }

    #[test]
    fn unit_cube_on_axis() {
        let bx = OrientedBox::new(Isometry3::translation(0.0, 0.0, 10.0), 1.0, 1.0, 1.0);
        assert_relative_eq!(
            ray_box_intersect(&ray([0.0; 3], [0.0, 0.0, 1.0]), &fwd(), &bx).unwrap(),
            9.5
        );
        assert!(ray_box_intersect(&ray([0.0; 3], [1.0, 0.0, 1.0]), &fwd(), &bx).is_none());
        assert!(ray_box_intersect(&ray([0.0; 3], [0.0, 0.0, -1.0]), &fwd(), &bx).is_none());
    }

    #[test]
    fn origin_inside_box_is_no_hit() {
        let bx = OrientedBox::new(Isometry3::identity(), 2.0, 2.0, 2.0);
        assert!(ray_box_intersect(&ray([0.0; 3], [0.0, 0.0, 1.0]), &fwd(), &bx).is_none());
    }

    /// March in 10^6 steps and report the first sample inside the box.
    fn march(r: &Ray, bx: &OrientedBox, t_max: f64, steps: usize) -> Option<f64> {
        let inv = bx.pose.inverse();
        let dt = t_max / steps as f64;
        (1..=steps).map(|i| i as f64 * dt).find(|&t| {
            let p = r.origin + r.dir.into_inner() * t;
            bx.contains_local(&(inv * p))
        })
    }

    #[test]
    fn yawed_box_matches_ray_marching() {
        // yaw about the optical vertical axis
        let rot = UnitQuaternion::from_axis_angle(&Vector3::y_axis(), FRAC_PI_4);
        let bx = OrientedBox::new(
            Isometry3::from_parts(Translation3::new(0.3, 0.2, 20.0), rot),
            4.8,
            1.2,
            2.0,
        );
        for d in [[0.0, 0.0, 1.0], [0.05, 0.01, 1.0], [0.02, -0.02, 1.0]] {
            let r = ray([0.0; 3], d);
            let analytic = ray_box_intersect(&r, &fwd(), &bx).unwrap();
            let t = march(&r, &bx, 40.0, 1_000_000).unwrap();
            let marched = t * r.dir.dot(&fwd());
            assert!(
                (analytic - marched).abs() <= 1e-4,
                "{analytic} vs {marched}"
            );
        }
    }

    #[test]
    fn ground_hits() {
        // camera 1 m up looking along +x, ray pitched 45 degrees down
        let forward = Vector3::x_axis();
        let r = ray([0.0, 0.0, 1.0], [FRAC_PI_4.cos(), 0.0, -FRAC_PI_4.sin()]);
        let z = ray_ground_intersect(&r, &forward).unwrap();
        assert_relative_eq!(z, 1.0, epsilon = 1e-12);
        let t = -r.origin.z / r.dir.z;
        assert_relative_eq!(t, 2f64.sqrt(), epsilon = 1e-12);
        assert!(ray_ground_intersect(&ray([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]), &forward).is_none());
        assert!(ray_ground_intersect(&ray([0.0, 0.0, 1.0], [1.0, 0.0, 0.3]), &forward).is_none());
    }
}
