use std::collections::BTreeSet;
use std::fs;

use anyhow::{Context, Result};

use mono3d_core::dataset::{export_trace_csv, read_box_annotations, read_dataset};
use mono3d_core::depth::{EstimatorContext, EstimatorRegistry};
use mono3d_core::metrics::{evaluate_run, EvalSummary, FrameTruth};
use mono3d_core::{BoxSource, DepthConfig, Pipeline};

use crate::{BoxSourceArg, RunConfig, UsageError};

/// File-name-safe form of a configuration tag.
pub fn tag_slug(tag: &str) -> String {
    tag.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn format_table(summaries: &[EvalSummary]) -> String {
    let w = summaries
        .iter()
        .map(|s| s.config.len())
        .max()
        .unwrap_or(0)
        .max("config".len());
    let mut out = format!("{:<w$}  {:>12}  {:>8}\n", "config", "3D recall %", "ATE m");
    for s in summaries {
        let ate = s
            .ate_m
            .map_or_else(|| "-".to_string(), |a| format!("{a:.3}"));
        out += &format!(
            "{:<w$}  {:>12.2}  {:>8}\n",
            s.config,
            s.recall_3d * 100.0,
            ate
        );
    }
    out
}

pub fn cmd_run(a: &RunConfig) -> Result<()> {
    if a.threshold_m.is_nan() || a.threshold_m <= 0.0 {
        return Err(UsageError(format!(
            "--threshold-m must be positive, got {}",
            a.threshold_m
        ))
        .into());
    }
    let boxes = match (a.box_source, &a.box_file) {
        (BoxSourceArg::File, Some(p)) => BoxSource::Annotations(read_box_annotations(p)?),
        (BoxSourceArg::File, None) => {
            return Err(UsageError("--box-source file needs --box-file".into()).into())
        }
        (_, Some(_)) => {
            return Err(UsageError("--box-file only applies to --box-source file".into()).into())
        }
        (BoxSourceArg::Gt, None) => BoxSource::Gt,
        (BoxSourceArg::GtRounded, None) => BoxSource::GtRounded,
    };

    let registry = EstimatorRegistry::with_builtins();
    let ctx = EstimatorContext {
        dataset_root: Some(a.dataset.clone()),
    };
    let mut estimators = Vec::new();
    let mut tags = BTreeSet::new();
    for c in &a.configs {
        let cfg: DepthConfig = c.parse()?;
        let est = registry.create(&cfg, &ctx)?;
        if !tags.insert(est.tag()) {
            return Err(UsageError(format!("configuration `{}` given twice", est.tag())).into());
        }
        estimators.push(est);
    }

    let dataset =
        read_dataset(&a.dataset).with_context(|| format!("loading {}", a.dataset.display()))?;
    let truth = FrameTruth::from_frames(&dataset.frames, &dataset.scene);

    let mut summaries = Vec::new();
    for est in estimators {
        let pipeline = Pipeline::new(dataset.scene, est, boxes.clone());
        let tag = pipeline.tag();
        let dets = pipeline
            .run(&dataset.frames)
            .with_context(|| format!("running `{tag}`"))?;
        summaries.push(evaluate_run(&tag, &dets, &truth, a.threshold_m)?);
    }
    summaries.sort_by(|x, y| x.config.cmp(&y.config));

    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    for s in &summaries {
        export_trace_csv(s, &a.out.join(format!("trace_{}.csv", tag_slug(&s.config))))?;
    }
    let path = a.out.join("summary.json");
    let mut json = serde_json::to_vec_pretty(&summaries)?;
    json.push(b'\n');
    fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;

    print!("{}", format_table(&summaries));
    Ok(())
}
