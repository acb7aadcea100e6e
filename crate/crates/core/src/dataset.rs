//! On-disk dataset layout:
//!
//! ```text
//! <dir>/manifest.json          camera, object size, per-frame poses and boxes
//! <dir>/depth/<id:06>.png      ground-truth depth, 16-bit grayscale
//! <dir>/depth_ext_<tag>/...    optional externally estimated depth, same layout
//! ```
//!
//! Manifest values are SI units (meters, seconds, radians) rounded to nine
//! significant digits; orientations are `[yaw, pitch, roll]`. Unknown fields
//! are ignored on read. Writing the same frames twice gives identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::bbox::BBox2D;
use crate::camera::{CameraExtrinsic, CameraIntrinsics, Pose3D};
use crate::depth::codec::{encode_depth_png, probe_depth_png, DEPTH_MAX_RANGE};
use crate::error::{Error, Result};
use crate::frame::{depth_file_name, DepthRef, FrameId, FrameRecord};
use crate::metrics::EvalSummary;
use crate::object::ObjectSpec;
use crate::scene::Scene;

pub const FORMAT_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";
pub const DEPTH_DIR: &str = "depth";

fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestIntrinsics {
    pub f_u: f64,
    pub f_v: f64,
    pub c_u: f64,
    pub c_v: f64,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestPose {
    pub position_m: [f64; 3],
    /// yaw, pitch, roll
    pub orientation_rad: [f64; 3],
}

impl ManifestPose {
    fn from_pose(p: &Pose3D) -> Self {
        ManifestPose {
            position_m: [sig9(p.position.x), sig9(p.position.y), sig9(p.position.z)],
            orientation_rad: [sig9(p.yaw), sig9(p.pitch), sig9(p.roll)],
        }
    }

    fn to_pose(&self) -> Result<Pose3D> {
        let [x, y, z] = self.position_m;
        let [yaw, pitch, roll] = self.orientation_rad;
        Pose3D::new(Vector3::new(x, y, z), yaw, pitch, roll)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestCamera {
    pub intrinsics: ManifestIntrinsics,
    pub extrinsic: ManifestPose,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestObject {
    pub length_m: f64,
    pub width_m: f64,
    pub height_m: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestDepth {
    pub directory: String,
    pub encoding: String,
    pub max_range_m: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestBox {
    pub u_min: f64,
    pub v_min: f64,
    pub u_max: f64,
    pub v_max: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestFrame {
    pub frame_id: FrameId,
    pub timestamp_s: f64,
    pub ego_pose: ManifestPose,
    pub object_pose: ManifestPose,
    pub gt_box: Option<ManifestBox>,
    pub depth_file: Option<String>,
}

/// Contents of `manifest.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub name: String,
    pub camera: ManifestCamera,
    pub object: ManifestObject,
    pub depth: ManifestDepth,
    pub frames: Vec<ManifestFrame>,
}

/// A dataset loaded from disk; depth images stay on disk until needed.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub root: PathBuf,
    pub scene: Scene,
    pub frames: Vec<FrameRecord>,
}

/// Writes frames one by one, then the manifest.
pub struct DatasetWriter {
    root: PathBuf,
    name: String,
    scene: Scene,
    frames: Vec<ManifestFrame>,
}

impl DatasetWriter {
    pub fn create(dir: &Path, name: &str, scene: &Scene) -> Result<Self> {
        scene.intrinsics.validate()?;
        scene.object.validate()?;
        let depth_dir = dir.join(DEPTH_DIR);
        fs::create_dir_all(&depth_dir)
            .map_err(|e| Error::io(format!("creating {}", depth_dir.display()), e))?;
        Ok(DatasetWriter {
            root: dir.to_path_buf(),
            name: name.to_string(),
            scene: *scene,
            frames: Vec::new(),
        })
    }

    pub fn write_frame(&mut self, frame: &FrameRecord) -> Result<()> {
        if let Some(last) = self.frames.last() {
            if frame.frame_id <= last.frame_id {
                return Err(Error::Schema(format!(
                    "frame ids must be strictly increasing ({} after {})",
                    frame.frame_id, last.frame_id
                )));
            }
        }
        let depth_file = match &frame.depth {
            DepthRef::None => None,
            depth => {
                let map = depth.load(frame.frame_id)?;
                if map.width() != self.scene.intrinsics.width
                    || map.height() != self.scene.intrinsics.height
                {
                    return Err(Error::ResolutionMismatch(format!(
                        "depth of frame {} is {}x{}, camera is {}x{}",
                        frame.frame_id,
                        map.width(),
                        map.height(),
                        self.scene.intrinsics.width,
                        self.scene.intrinsics.height
                    )));
                }
                let rel = format!("{DEPTH_DIR}/{}", depth_file_name(frame.frame_id));
                let path = self.root.join(&rel);
                fs::write(&path, encode_depth_png(&map)?)
                    .map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
                Some(rel)
            }
        };
        self.frames.push(ManifestFrame {
            frame_id: frame.frame_id,
            timestamp_s: sig9(frame.timestamp),
            ego_pose: ManifestPose::from_pose(&frame.ego_pose),
            object_pose: ManifestPose::from_pose(&frame.object_pose),
            gt_box: frame.gt_box.map(|b| ManifestBox {
                u_min: sig9(b.u_min),
                v_min: sig9(b.v_min),
                u_max: sig9(b.u_max),
                v_max: sig9(b.v_max),
            }),
            depth_file,
        });
        Ok(())
    }

    pub fn finish(self) -> Result<PathBuf> {
        let k = &self.scene.intrinsics;
        let o = &self.scene.object;
        let doc = DatasetManifest {
            format_version: FORMAT_VERSION,
            name: self.name,
            camera: ManifestCamera {
                intrinsics: ManifestIntrinsics {
                    f_u: sig9(k.f_u),
                    f_v: sig9(k.f_v),
                    c_u: sig9(k.c_u),
                    c_v: sig9(k.c_v),
                    width: k.width,
                    height: k.height,
                },
                extrinsic: ManifestPose::from_pose(&self.scene.extrinsic.mount),
            },
            object: ManifestObject {
                length_m: sig9(o.length),
                width_m: sig9(o.width),
                height_m: sig9(o.height),
            },
            depth: ManifestDepth {
                directory: DEPTH_DIR.into(),
                encoding: "png-gray16".into(),
                max_range_m: DEPTH_MAX_RANGE,
            },
            frames: self.frames,
        };
        let mut bytes = serde_json::to_vec_pretty(&doc)?;
        bytes.push(b'\n');
        let path = self.root.join(MANIFEST_FILE);
        fs::write(&path, bytes).map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
        Ok(path)
    }
}

/// Writes `frames` as a dataset in `dir` and returns the manifest path.
pub fn write_dataset(
    frames: &[FrameRecord],
    name: &str,
    scene: &Scene,
    dir: &Path,
) -> Result<PathBuf> {
    let mut w = DatasetWriter::create(dir, name, scene)?;
    for f in frames {
        w.write_frame(f)?;
    }
    w.finish()
}

/// Loads and validates a dataset. Depth files are checked (existence, 16-bit
/// single channel, image size) but decoded only on use.
pub fn read_dataset(dir: &Path) -> Result<Dataset> {
    let path = dir.join(MANIFEST_FILE);
    let bytes = fs::read(&path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    let doc: DatasetManifest = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::Schema(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            doc.format_version
        )));
    }
    if doc.depth.max_range_m != DEPTH_MAX_RANGE {
        return Err(Error::Schema(format!(
            "unsupported depth max range {} m",
            doc.depth.max_range_m
        )));
    }
    let ki = &doc.camera.intrinsics;
    let intrinsics = CameraIntrinsics::new(ki.f_u, ki.f_v, ki.c_u, ki.c_v, ki.width, ki.height)
        .map_err(|e| Error::Schema(e.to_string()))?;
    let extrinsic = CameraExtrinsic::new(doc.camera.extrinsic.to_pose()?)
        .map_err(|e| Error::Schema(e.to_string()))?;
    let object = ObjectSpec::new(doc.object.length_m, doc.object.width_m, doc.object.height_m)
        .map_err(|e| Error::Schema(e.to_string()))?;
    let scene = Scene::new(intrinsics, extrinsic, object);

    let mut frames = Vec::with_capacity(doc.frames.len());
    let mut prev: Option<FrameId> = None;
    for f in &doc.frames {
        if prev.is_some_and(|p| f.frame_id <= p) {
            return Err(Error::Schema(format!(
                "frame ids not strictly increasing at {}",
                f.frame_id
            )));
        }
        prev = Some(f.frame_id);
        let gt_box = f
            .gt_box
            .as_ref()
            .map(|b| BBox2D::new(b.u_min, b.v_min, b.u_max, b.v_max))
            .transpose()
            .map_err(|e| Error::Schema(format!("frame {}: {e}", f.frame_id)))?;
        let depth = match &f.depth_file {
            None => DepthRef::None,
            Some(rel) => {
                let expected = format!("{DEPTH_DIR}/{}", depth_file_name(f.frame_id));
                if *rel != expected {
                    return Err(Error::Schema(format!(
                        "frame {} points at `{rel}`, expected `{expected}`",
                        f.frame_id
                    )));
                }
                let p = dir.join(rel);
                if !p.is_file() {
                    return Err(Error::MissingDepthFile {
                        frame_id: f.frame_id,
                        path: p,
                    });
                }
                let (w, h) = probe_depth_png(&p)?;
                if (w, h) != (intrinsics.width, intrinsics.height) {
                    return Err(Error::ResolutionMismatch(format!(
                        "{} is {w}x{h}, camera is {}x{}",
                        p.display(),
                        intrinsics.width,
                        intrinsics.height
                    )));
                }
                DepthRef::File(p)
            }
        };
        frames.push(FrameRecord {
            frame_id: f.frame_id,
            timestamp: f.timestamp_s,
            ego_pose: f.ego_pose.to_pose()?,
            object_pose: f.object_pose.to_pose()?,
            gt_box,
            depth,
        });
    }
    let referenced = frames.iter().filter(|f| !f.depth.is_none()).count();
    let depth_dir = dir.join(DEPTH_DIR);
    if depth_dir.is_dir() {
        let on_disk = fs::read_dir(&depth_dir)
            .map_err(|e| Error::io(format!("listing {}", depth_dir.display()), e))?
            .filter_map(|e| e.ok())
            .filter(|e| e.path().extension().is_some_and(|x| x == "png"))
            .count();
        if on_disk != referenced {
            return Err(Error::Schema(format!(
                "{} holds {on_disk} depth files but the manifest references {referenced}",
                depth_dir.display()
            )));
        }
    }
    Ok(Dataset {
        name: doc.name,
        root: dir.to_path_buf(),
        scene,
        frames,
    })
}

fn fmt_opt(out: &mut String, v: Option<f64>) {
    if let Some(v) = v {
        let _ = write!(out, "{v:.6}");
    }
}

pub const TRACE_HEADER: &str = "frame_id,gt_distance_m,est_distance_m,ground_plane_error_m,tp";

/// Per-frame trace as CSV text, meters with six decimals.
pub fn trace_csv(summary: &EvalSummary) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in &summary.trace {
        let _ = write!(out, "{},", r.frame_id);
        fmt_opt(&mut out, r.gt_distance_m);
        out.push(',');
        fmt_opt(&mut out, r.est_distance_m);
        out.push(',');
        fmt_opt(&mut out, r.ground_plane_error_m);
        let _ = writeln!(out, ",{}", u8::from(r.tp));
    }
    out
}

pub fn export_trace_csv(summary: &EvalSummary, path: &Path) -> Result<()> {
    if summary.trace.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "config `{}` has an empty trace",
            summary.config
        )));
    }
    fs::write(path, trace_csv(summary))
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Reads `frame_id,u_min,v_min,u_max,v_max` box annotations (header row
/// required, one box per frame).
pub fn read_box_annotations(path: &Path) -> Result<BTreeMap<FrameId, BBox2D>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h))
            if h.split(',')
                .map(str::trim)
                .eq(["frame_id", "u_min", "v_min", "u_max", "v_max"]) => {}
        _ => {
            return Err(Error::Schema(format!(
                "{}: expected header frame_id,u_min,v_min,u_max,v_max",
                path.display()
            )))
        }
    }
    let mut out = BTreeMap::new();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Schema(format!("{}:{}: {what}", path.display(), n + 1));
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 5 {
            return Err(bad("expected 5 columns"));
        }
        let id: FrameId = cols[0].parse().map_err(|_| bad("bad frame id"))?;
        let v: Vec<f64> = cols[1..]
            .iter()
            .map(|c| c.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("bad coordinate"))?;
        let b = BBox2D::new(v[0], v[1], v[2], v[3]).map_err(|e| bad(&e.to_string()))?;
        if out.insert(id, b).is_some() {
            return Err(bad("duplicate frame id"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{DepthMap, DEPTH_QUANTUM};
    use crate::metrics::{MatchResult, TraceRow};
    use std::sync::Arc;

    fn scene() -> Scene {
        Scene::new(
            CameraIntrinsics::new(90.0, 90.0, 16.0, 12.0, 32, 24).unwrap(),
            CameraExtrinsic::at_height(1.0).unwrap(),
            ObjectSpec::default(),
        )
    }

    fn frames() -> Vec<FrameRecord> {
        let s = scene();
        (0..3)
            .map(|i| {
                let ego = Pose3D::planar(i as f64 * 0.1, 0.0, 0.0);
                let obj = Pose3D::new(
                    Vector3::new(20.0 + i as f64 / 3.0, 0.1, 0.0),
                    0.01,
                    0.0,
                    0.0,
                )
                .unwrap();
                s.render(i, i as f64 / 3.0, &ego, &obj)
            })
            .collect()
    }

    #[test]
    fn writes_manifest_and_pngs() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_dataset(&frames(), "t", &scene(), dir.path()).unwrap();
        assert!(path.ends_with(MANIFEST_FILE));
        for i in 0..3 {
            assert!(dir
                .path()
                .join("depth")
                .join(format!("00000{i}.png"))
                .is_file());
        }
        let text = fs::read_to_string(&path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["format_version"], 1);
        assert_eq!(v["frames"].as_array().unwrap().len(), 3);
        // timestamps are stored with nine significant digits
        assert_eq!(v["frames"][1]["timestamp_s"].as_f64().unwrap(), 0.333333333);
    }

    #[test]
    fn read_inverts_write_up_to_quantization() {
        let dir = tempfile::tempdir().unwrap();
        let original = frames();
        write_dataset(&original, "t", &scene(), dir.path()).unwrap();
        let ds = read_dataset(dir.path()).unwrap();
        assert_eq!(ds.name, "t");
        assert_eq!(ds.scene, scene());
        for (a, b) in original.iter().zip(&ds.frames) {
            assert_eq!(a.frame_id, b.frame_id);
            assert!((a.ego_pose.position - b.ego_pose.position).norm() < 1e-7);
            assert!((a.object_pose.yaw - b.object_pose.yaw).abs() < 1e-9);
            let (ba, bb) = (a.gt_box.unwrap(), b.gt_box.unwrap());
            assert!((ba.u_min - bb.u_min).abs() < 1e-6 && (ba.v_max - bb.v_max).abs() < 1e-6);
            let (da, db) = (
                a.depth.load(a.frame_id).unwrap(),
                b.depth.load(b.frame_id).unwrap(),
            );
            for (x, y) in da.values().iter().zip(db.values()) {
                assert!((*x as f64 - *y as f64).abs() <= DEPTH_QUANTUM);
            }
        }
    }

    fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
        let mut files: Vec<_> = walk(dir).into_iter().collect();
        files.sort();
        files
            .into_iter()
            .map(|p| {
                (
                    p.strip_prefix(dir).unwrap().display().to_string(),
                    fs::read(&p).unwrap(),
                )
            })
            .collect()
    }

    fn walk(dir: &Path) -> Vec<PathBuf> {
        let mut out = Vec::new();
        for e in fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                out.extend(walk(&p));
            } else {
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn write_read_write_is_byte_identical() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        write_dataset(&frames(), "t", &scene(), a.path()).unwrap();
        let ds = read_dataset(a.path()).unwrap();
        write_dataset(&ds.frames, &ds.name, &ds.scene, b.path()).unwrap();
        assert_eq!(snapshot(a.path()), snapshot(b.path()));
    }

    #[test]
    fn missing_depth_file_names_the_frame() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(&frames(), "t", &scene(), dir.path()).unwrap();
        fs::remove_file(dir.path().join("depth/000001.png")).unwrap();
        match read_dataset(dir.path()) {
            Err(Error::MissingDepthFile { frame_id, .. }) => assert_eq!(frame_id, 1),
            other => panic!("expected missing depth file, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(&frames(), "t", &scene(), dir.path()).unwrap();
        let p = dir.path().join(MANIFEST_FILE);
        let mut v: serde_json::Value = serde_json::from_slice(&fs::read(&p).unwrap()).unwrap();
        v["producer"] = "someone else".into();
        v["frames"][0]["weather"] = "rain".into();
        fs::write(&p, serde_json::to_vec(&v).unwrap()).unwrap();
        assert_eq!(read_dataset(dir.path()).unwrap().frames.len(), 3);
    }

    #[test]
    fn schema_violations_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        write_dataset(&frames(), "t", &scene(), dir.path()).unwrap();
        let p = dir.path().join(MANIFEST_FILE);
        let orig: serde_json::Value = serde_json::from_slice(&fs::read(&p).unwrap()).unwrap();

        let mut v = orig.clone();
        v["format_version"] = 2.into();
        fs::write(&p, serde_json::to_vec(&v).unwrap()).unwrap();
        assert!(matches!(read_dataset(dir.path()), Err(Error::Schema(_))));

        let mut v = orig.clone();
        v["frames"][2]["frame_id"] = 0.into();
        fs::write(&p, serde_json::to_vec(&v).unwrap()).unwrap();
        assert!(matches!(read_dataset(dir.path()), Err(Error::Schema(_))));

        let mut v = orig.clone();
        v["frames"].as_array_mut().unwrap().pop();
        fs::write(&p, serde_json::to_vec(&v).unwrap()).unwrap();
        assert!(matches!(read_dataset(dir.path()), Err(Error::Schema(_))));

        fs::write(&p, serde_json::to_vec(&orig).unwrap()).unwrap();
        let mut rgb = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut rgb, 32, 24);
            enc.set_color(png::ColorType::Rgb);
            enc.set_depth(png::BitDepth::Eight);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(&vec![0; 32 * 24 * 3]).unwrap();
        }
        fs::write(dir.path().join("depth/000002.png"), rgb).unwrap();
        assert!(matches!(
            read_dataset(dir.path()),
            Err(Error::DepthFormat(_))
        ));
    }

    #[test]
    fn frames_without_depth_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let fs_: Vec<_> = frames()
            .into_iter()
            .map(FrameRecord::without_depth)
            .collect();
        write_dataset(&fs_, "t", &scene(), dir.path()).unwrap();
        let ds = read_dataset(dir.path()).unwrap();
        assert!(ds.frames.iter().all(|f| f.depth.is_none()));
    }

    #[test]
    fn writer_rejects_bad_frames() {
        let dir = tempfile::tempdir().unwrap();
        let mut w = DatasetWriter::create(dir.path(), "t", &scene()).unwrap();
        let f = frames();
        w.write_frame(&f[1]).unwrap();
        assert!(w.write_frame(&f[0]).is_err());
        let mut wrong = f[2].clone();
        wrong.depth = DepthRef::Inline(Arc::new(DepthMap::filled(8, 8, 1.0, 100.0).unwrap()));
        assert!(matches!(
            w.write_frame(&wrong),
            Err(Error::ResolutionMismatch(_))
        ));
    }

    fn summary(rows: Vec<TraceRow>) -> EvalSummary {
        EvalSummary {
            config: "kh".into(),
            threshold_m: 2.0,
            recall_3d: 0.5,
            ate_m: Some(1.0),
            counts: MatchResult::default(),
            trace: rows,
        }
    }

    #[test]
    fn trace_csv_format() {
        let s = summary(vec![
            TraceRow {
                frame_id: 0,
                gt_distance_m: Some(17.6),
                est_distance_m: Some(17.25),
                ground_plane_error_m: Some(0.35),
                tp: true,
            },
            TraceRow {
                frame_id: 1,
                gt_distance_m: Some(17.6),
                est_distance_m: None,
                ground_plane_error_m: None,
                tp: false,
            },
        ]);
        assert_eq!(
            trace_csv(&s),
            "frame_id,gt_distance_m,est_distance_m,ground_plane_error_m,tp\n\
             0,17.600000,17.250000,0.350000,1\n\
             1,17.600000,,,0\n"
        );
        let dir = tempfile::tempdir().unwrap();
        assert!(export_trace_csv(&summary(vec![]), &dir.path().join("x.csv")).is_err());
    }

    #[test]
    fn box_annotations() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("boxes.csv");
        fs::write(
            &p,
            "frame_id,u_min,v_min,u_max,v_max\n3,1,2,10,20\n5, 4.5, 1, 8, 9\n",
        )
        .unwrap();
        let m = read_box_annotations(&p).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&5], BBox2D::new(4.5, 1.0, 8.0, 9.0).unwrap());
        fs::write(&p, "frame_id,u_min,v_min,u_max,v_max\n3,1,2,0,20\n").unwrap();
        assert!(read_box_annotations(&p).is_err());
        fs::write(&p, "3,1,2,10,20\n").unwrap();
        assert!(read_box_annotations(&p).is_err());
    }
}
