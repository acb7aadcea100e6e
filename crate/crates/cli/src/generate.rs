use anyhow::{Context, Result};

use mono3d_core::dataset::DatasetWriter;
use mono3d_core::scene::{FollowingParams, FollowingSequence, TrackSpec};
use mono3d_core::{CameraExtrinsic, CameraIntrinsics, ObjectSpec, Scene};

use crate::GenerateArgs;

pub fn cmd_generate(a: &GenerateArgs) -> Result<()> {
    let intrinsics = CameraIntrinsics::centered(a.focal_px, a.width_px, a.height_px)?;
    let extrinsic = CameraExtrinsic::at_height(a.camera_height_m)?;
    let object = ObjectSpec::new(a.object_length_m, a.object_width_m, a.object_height_m)?;
    let scene = Scene::new(intrinsics, extrinsic, object);

    let mut params = FollowingParams::new(a.gap_m, a.frames);
    params.speed = a.speed_mps;
    params.rate = a.rate_hz;
    params.object_pitch = a.object_pitch_deg.to_radians();
    params.yaw_offset_seed = a.random_yaw.then_some(a.seed);
    let track = TrackSpec::preset(a.track.name(), a.radius_m, params.required_length())?;
    let seq = FollowingSequence::new(&track, &params)?;

    let name = match &a.name {
        Some(n) => n.clone(),
        None => a
            .out
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into()),
    };
    let mut writer = DatasetWriter::create(&a.out, &name, &scene)?;
    let mut visible = 0;
    for frame in seq.frames(&scene, !a.no_depth) {
        visible += usize::from(frame.gt_box.is_some());
        writer
            .write_frame(&frame)
            .with_context(|| format!("writing frame {}", frame.frame_id))?;
    }
    let manifest = writer.finish()?;
    println!(
        "wrote {} frames ({visible} with the object in view) to {}",
        seq.len(),
        manifest.display()
    );
    Ok(())
}
