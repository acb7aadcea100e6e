use mono3d_core::dataset::{read_dataset, write_dataset};
use mono3d_core::depth::{DepthEstimator, EstimateInput, EstimatorContext, EstimatorRegistry};
use mono3d_core::metrics::{summarize, FrameTruth};
use mono3d_core::scene::{generate_following_sequence, FollowingParams, TrackSpec};
use mono3d_core::{
    BoxSource, CameraExtrinsic, CameraIntrinsics, DepthConfig, ObjectSpec, Pipeline, Result, Scene,
};

fn small_scene() -> Scene {
    Scene::new(
        CameraIntrinsics::centered(225.0, 320, 180).unwrap(),
        CameraExtrinsic::at_height(1.0).unwrap(),
        ObjectSpec::default(),
    )
}

/// Always answers the true near-face distance plus a fixed bias.
struct Biased(f64);

impl DepthEstimator for Biased {
    fn tag(&self) -> String {
        format!("biased:{}", self.0)
    }

    fn estimate(&self, input: &EstimateInput) -> Result<Option<f64>> {
        let scene = Scene::new(
            *input.intrinsics,
            CameraExtrinsic::at_height(1.0)?,
            *input.object,
        );
        Ok(Some(
            scene.near_face_depth(&input.frame.ego_pose, &input.frame.object_pose) + self.0,
        ))
    }
}

#[test]
fn generate_store_reload_and_score() {
    let scene = small_scene();
    let params = FollowingParams::new(20.0, 30);
    let track = TrackSpec::preset("left-right-straight", 50.0, params.required_length()).unwrap();
    let frames = generate_following_sequence(&track, &params, &scene).unwrap();

    let dir = tempfile::tempdir().unwrap();
    write_dataset(&frames, "e2e", &scene, dir.path()).unwrap();
    let ds = read_dataset(dir.path()).unwrap();
    assert_eq!(ds.frames.len(), 30);

    let mut registry = EstimatorRegistry::with_builtins();
    registry
        .register("biased", true, |arg, _| {
            let bias = arg
                .unwrap_or("0")
                .parse()
                .map_err(|_| mono3d_core::Error::InvalidArgument(format!("bad bias {arg:?}")))?;
            Ok(Box::new(Biased(bias)))
        })
        .unwrap();
    let ctx = EstimatorContext {
        dataset_root: Some(ds.root.clone()),
    };
    let truth = FrameTruth::from_frames(&ds.frames, &ds.scene);
    let mut runs = Vec::new();
    for tag in ["gt_depth", "kh", "biased:3"] {
        let est = registry
            .create(&tag.parse::<DepthConfig>().unwrap(), &ctx)
            .unwrap();
        let dets = Pipeline::new(ds.scene, est, BoxSource::Gt)
            .run(&ds.frames)
            .unwrap();
        runs.push((tag.to_string(), dets));
    }
    let summaries = summarize(&runs, &truth, 2.0).unwrap();
    let by = |t: &str| summaries.iter().find(|s| s.config == t).unwrap();
    assert_eq!(by("gt_depth").recall_3d, 1.0);
    assert_eq!(by("kh").recall_3d, 1.0);
    // a 3 m range bias pushes every detection outside the 2 m gate
    assert_eq!(by("biased:3").recall_3d, 0.0);
    assert!(by("biased:3").ate_m.unwrap() > 2.5);
    let configs: Vec<_> = summaries.iter().map(|s| s.config.as_str()).collect();
    assert_eq!(configs, ["biased:3", "gt_depth", "kh"]);
}

#[test]
fn external_depth_directory_is_used() {
    let scene = small_scene();
    let params = FollowingParams::new(20.0, 5);
    let track = TrackSpec::straight(params.required_length()).unwrap();
    let frames = generate_following_sequence(&track, &params, &scene).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&frames, "e2e", &scene, dir.path()).unwrap();
    // an "external" network that reproduces the ground truth
    std::fs::create_dir(dir.path().join("depth_ext_copy")).unwrap();
    for e in std::fs::read_dir(dir.path().join("depth")).unwrap() {
        let p = e.unwrap().path();
        std::fs::copy(
            &p,
            dir.path()
                .join("depth_ext_copy")
                .join(p.file_name().unwrap()),
        )
        .unwrap();
    }
    let ds = read_dataset(dir.path()).unwrap();
    let ctx = EstimatorContext {
        dataset_root: Some(ds.root.clone()),
    };
    let reg = EstimatorRegistry::with_builtins();
    let run = |tag: &str| {
        let est = reg.create_from_tag(tag, &ctx).unwrap();
        Pipeline::new(ds.scene, est, BoxSource::Gt)
            .run(&ds.frames)
            .unwrap()
    };
    let (ext, gt) = (run("ext:copy"), run("gt_depth"));
    assert_eq!(ext.len(), 5);
    for (a, b) in ext.iter().zip(&gt) {
        assert_eq!(a.position_world, b.position_world);
        assert_eq!(a.source, "ext:copy");
    }
    assert!(reg.create_from_tag("ext:missing", &ctx).is_ok());
    let est = reg.create_from_tag("ext:missing", &ctx).unwrap();
    let err = Pipeline::new(ds.scene, est, BoxSource::Gt)
        .run(&ds.frames)
        .unwrap_err();
    assert!(err.is_data_error(), "{err}");
}
