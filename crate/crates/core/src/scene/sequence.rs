use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::render::Scene;
use super::track::TrackSpec;
use crate::camera::Pose3D;
use crate::error::{Error, Result};
use crate::frame::FrameRecord;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FollowingParams {
    /// Arc-length lead of the object over the ego vehicle, meters.
    pub gap: f64,
    pub frames: usize,
    /// Meters per second along the centerline.
    pub speed: f64,
    /// Frames per second.
    pub rate: f64,
    /// Arc length of the ego vehicle at the first frame.
    pub start: f64,
    /// Seeds a per-frame object yaw offset drawn uniformly from
    /// [-90 deg, +90 deg]; `None` keeps the object tangent to the track.
    pub yaw_offset_seed: Option<u64>,
    /// Constant object pitch, radians.
    pub object_pitch: f64,
}

impl FollowingParams {
    pub fn new(gap: f64, frames: usize) -> Self {
        FollowingParams {
            gap,
            frames,
            speed: 10.0,
            rate: 10.0,
            start: 0.0,
            yaw_offset_seed: None,
            object_pitch: 0.0,
        }
    }

    /// Track length needed by this sequence.
    pub fn required_length(&self) -> f64 {
        self.start + self.gap + self.speed * self.frames.saturating_sub(1) as f64 / self.rate
    }
}

/// Poses of a vehicle-following run; frames are rendered on demand so long
/// sequences never hold every depth image at once.
#[derive(Debug, Clone)]
pub struct FollowingSequence {
    poses: Vec<(f64, Pose3D, Pose3D)>,
}

impl FollowingSequence {
    pub fn new(track: &TrackSpec, params: &FollowingParams) -> Result<Self> {
        let p = params;
        if p.frames == 0 {
            return Err(Error::InvalidArgument(
                "a sequence needs at least one frame".into(),
            ));
        }
        if !(p.gap > 0.0)
            || !(p.rate > 0.0)
            || !(p.speed >= 0.0)
            || !(p.start >= 0.0)
            || !p.object_pitch.is_finite()
        {
            return Err(Error::InvalidArgument(format!(
                "gap and rate must be positive, speed and start non-negative: {p:?}"
            )));
        }
        if p.gap >= track.length() || p.required_length() > track.length() {
            return Err(Error::DegenerateTrack(format!(
                "sequence needs {:.3} m of track, track is {:.3} m",
                p.required_length().max(p.gap),
                track.length()
            )));
        }
        let mut rng = p.yaw_offset_seed.map(ChaCha8Rng::seed_from_u64);
        let poses = (0..p.frames)
            .map(|i| {
                let t = i as f64 / p.rate;
                let s = p.start + p.speed * t;
                let ego = track.point_at(s).expect("checked against track length");
                let obj = track
                    .point_at(s + p.gap)
                    .expect("checked against track length");
                let yaw_offset = rng
                    .as_mut()
                    .map_or(0.0, |r| r.gen_range(-FRAC_PI_2..=FRAC_PI_2));
                let ego_pose = Pose3D::planar(ego.x, ego.y, ego.heading);
                let obj_pose = Pose3D::new(
                    Vector3::new(obj.x, obj.y, 0.0),
                    obj.heading + yaw_offset,
                    p.object_pitch,
                    0.0,
                )?;
                Ok((t, ego_pose, obj_pose))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FollowingSequence { poses })
    }

    pub fn len(&self) -> usize {
        self.poses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poses.is_empty()
    }

    /// `(timestamp, ego, object)` of frame `i`.
    pub fn poses(&self, i: usize) -> (f64, Pose3D, Pose3D) {
        self.poses[i]
    }

    /// Frame `i` with rendered ground-truth depth.
    pub fn render(&self, scene: &Scene, i: usize) -> FrameRecord {
        let (t, ego, obj) = self.poses[i];
        scene.render(i as u64, t, &ego, &obj)
    }

    /// Frame `i` with the ground-truth box but no depth image.
    pub fn annotate(&self, scene: &Scene, i: usize) -> FrameRecord {
        let (t, ego, obj) = self.poses[i];
        FrameRecord {
            frame_id: i as u64,
            timestamp: t,
            ego_pose: ego,
            object_pose: obj,
            gt_box: scene.gt_box(&ego, &obj),
            depth: Default::default(),
        }
    }

    pub fn frames<'a>(
        &'a self,
        scene: &'a Scene,
        with_depth: bool,
    ) -> impl Iterator<Item = FrameRecord> + 'a {
        (0..self.len()).map(move |i| {
            if with_depth {
                self.render(scene, i)
            } else {
                self.annotate(scene, i)
            }
        })
    }
}

/// Renders a complete following sequence with inline depth images.
pub fn generate_following_sequence(
    track: &TrackSpec,
    params: &FollowingParams,
    scene: &Scene,
) -> Result<Vec<FrameRecord>> {
    let seq = FollowingSequence::new(track, params)?;
    Ok(seq.frames(scene, true).collect())
}
