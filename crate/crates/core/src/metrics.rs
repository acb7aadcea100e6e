//! 3D recall and average translational error (ATE) on the ground plane.
//!
//! Detections are matched to ground-truth centers per frame by greedy
//! nearest-first assignment on ground-plane distance. A detection within the
//! threshold of its match is a true positive; every other detection is a
//! false positive, every unmatched object a false negative. ATE averages the
//! ground-plane error of all detections, TP and FP alike.

use std::collections::BTreeMap;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{FrameId, FrameRecord};
use crate::localization::Detection3D;
use crate::scene::Scene;

pub const DEFAULT_MATCH_THRESHOLD: f64 = 2.0;

/// Ground truth of one frame as seen by the evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameTruth {
    pub frame_id: FrameId,
    /// Object center on the ground; `None` when the object is not visible.
    pub center: Option<Vector2<f64>>,
    /// True z-depth of the object's near face.
    pub distance: Option<f64>,
}

impl FrameTruth {
    pub fn from_frames(frames: &[FrameRecord], scene: &Scene) -> Vec<FrameTruth> {
        frames
            .iter()
            .map(|f| {
                let visible = f.gt_box.is_some();
                FrameTruth {
                    frame_id: f.frame_id,
                    center: visible.then(|| f.object_pose.ground_position()),
                    distance: visible.then(|| scene.near_face_depth(&f.ego_pose, &f.object_pose)),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionOutcome {
    pub tp: bool,
    /// Distance to the matched object, or to the nearest object for an
    /// unmatched detection; `None` when the frame has no object.
    pub error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrameMatch {
    /// One entry per detection, in input order.
    pub detections: Vec<DetectionOutcome>,
    pub tp: usize,
    pub fp: usize,
    pub fn_count: usize,
}

pub fn match_frame(dets: &[Vector2<f64>], gts: &[Vector2<f64>], threshold: f64) -> FrameMatch {
    let mut pairs = Vec::with_capacity(dets.len() * gts.len());
    for (i, d) in dets.iter().enumerate() {
        for (j, g) in gts.iter().enumerate() {
            pairs.push(((d - g).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut det_match: Vec<Option<f64>> = vec![None; dets.len()];
    let mut gt_taken = vec![false; gts.len()];
    for &(dist, i, j) in &pairs {
        if dist > threshold {
            break;
        }
        if det_match[i].is_none() && !gt_taken[j] {
            det_match[i] = Some(dist);
            gt_taken[j] = true;
        }
    }
    let detections: Vec<_> = dets
        .iter()
        .zip(&det_match)
        .map(|(d, m)| match m {
            Some(dist) => DetectionOutcome {
                tp: true,
                error: Some(*dist),
            },
            None => DetectionOutcome {
                tp: false,
                error: gts.iter().map(|g| (d - g).norm()).min_by(f64::total_cmp),
            },
        })
        .collect();
    let tp = det_match.iter().filter(|m| m.is_some()).count();
    FrameMatch {
        detections,
        tp,
        fp: dets.len() - tp,
        fn_count: gts.len() - tp,
    }
}

/// Sequence totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MatchResult {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_count: usize,
}

impl MatchResult {
    pub fn add(&mut self, m: &FrameMatch) {
        self.tp += m.tp;
        self.fp += m.fp;
        self.fn_count += m.fn_count;
    }

    pub fn detections(&self) -> usize {
        self.tp + self.fp
    }

    pub fn ground_truth(&self) -> usize {
        self.tp + self.fn_count
    }
}

pub fn recall_3d(m: &MatchResult) -> Result<f64> {
    if m.ground_truth() == 0 {
        return Err(Error::EmptyGroundTruth);
    }
    Ok(m.tp as f64 / m.ground_truth() as f64)
}

/// One row of a per-frame distance trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub frame_id: FrameId,
    pub gt_distance_m: Option<f64>,
    pub est_distance_m: Option<f64>,
    pub ground_plane_error_m: Option<f64>,
    pub tp: bool,
}

/// Mean ground-plane error over every detection that has one.
pub fn ate(trace: &[TraceRow]) -> Result<f64> {
    let errors: Vec<f64> = trace
        .iter()
        .filter(|r| r.est_distance_m.is_some())
        .filter_map(|r| r.ground_plane_error_m)
        .collect();
    if errors.is_empty() {
        return Err(Error::NoDetections);
    }
    Ok(errors.iter().sum::<f64>() / errors.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSummary {
    pub config: String,
    pub threshold_m: f64,
    pub recall_3d: f64,
    /// `None` when the run produced no detection.
    pub ate_m: Option<f64>,
    pub counts: MatchResult,
    pub trace: Vec<TraceRow>,
}

/// Scores one configuration's detections against the ground truth.
pub fn evaluate_run(
    config: &str,
    dets: &[Detection3D],
    truth: &[FrameTruth],
    threshold: f64,
) -> Result<EvalSummary> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "match threshold must be positive, got {threshold}"
        )));
    }
    let mut by_frame: BTreeMap<FrameId, Vec<&Detection3D>> = BTreeMap::new();
    for d in dets {
        by_frame.entry(d.frame_id).or_default().push(d);
    }
    let known: std::collections::BTreeSet<_> = truth.iter().map(|t| t.frame_id).collect();
    if let Some(stray) = by_frame.keys().find(|id| !known.contains(id)) {
        return Err(Error::FrameSetMismatch(format!(
            "config `{config}` has a detection for unknown frame {stray}"
        )));
    }
    let mut ordered: Vec<&FrameTruth> = truth.iter().collect();
    ordered.sort_by_key(|t| t.frame_id);

    let mut counts = MatchResult::default();
    let mut trace = Vec::new();
    for t in ordered {
        let frame_dets = by_frame.get(&t.frame_id).map(Vec::as_slice).unwrap_or(&[]);
        let positions: Vec<_> = frame_dets.iter().map(|d| d.position_world).collect();
        let gts: Vec<_> = t.center.into_iter().collect();
        let m = match_frame(&positions, &gts, threshold);
        counts.add(&m);
        for (d, o) in frame_dets.iter().zip(&m.detections) {
            trace.push(TraceRow {
                frame_id: t.frame_id,
                gt_distance_m: t.distance,
                est_distance_m: Some(d.z_depth_est),
                ground_plane_error_m: o.error,
                tp: o.tp,
            });
        }
        if frame_dets.is_empty() && t.center.is_some() {
            trace.push(TraceRow {
                frame_id: t.frame_id,
                gt_distance_m: t.distance,
                est_distance_m: None,
                ground_plane_error_m: None,
                tp: false,
            });
        }
    }
    Ok(EvalSummary {
        config: config.to_string(),
        threshold_m: threshold,
        recall_3d: recall_3d(&counts)?,
        ate_m: ate(&trace).ok(),
        counts,
        trace,
    })
}

/// One summary per configuration, sorted by configuration tag.
pub fn summarize(
    runs: &[(String, Vec<Detection3D>)],
    truth: &[FrameTruth],
    threshold: f64,
) -> Result<Vec<EvalSummary>> {
    let mut out = runs
        .iter()
        .map(|(cfg, dets)| evaluate_run(cfg, dets, truth, threshold))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.config.cmp(&b.config));
    Ok(out)
}
