use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::Path;

use anyhow::{Context, Result};

use mono3d_core::metrics::EvalSummary;
use mono3d_core::{Error, FrameId};

use crate::run::{format_table, tag_slug};
use crate::ReportArgs;

fn load_summaries(path: &Path) -> Result<Vec<EvalSummary>> {
    let file = if path.is_dir() {
        path.join("summary.json")
    } else {
        path.to_path_buf()
    };
    let bytes = fs::read(&file).with_context(|| format!("reading {}", file.display()))?;
    serde_json::from_slice(&bytes)
        .map_err(|e| Error::Schema(format!("{}: {e}", file.display())))
        .map_err(Into::into)
}

/// Per-frame `(gt, est)` of a run, first trace row per frame.
fn per_frame(s: &EvalSummary) -> BTreeMap<FrameId, (Option<f64>, Option<f64>)> {
    let mut out = BTreeMap::new();
    for r in &s.trace {
        out.entry(r.frame_id)
            .or_insert((r.gt_distance_m, r.est_distance_m));
    }
    out
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

/// Merged CSV text: `frame_id,gt,est_<tag>...`, configurations in tag order.
pub fn merge(summaries: &[EvalSummary]) -> Result<String> {
    let mut by_tag = BTreeMap::new();
    for s in summaries {
        if by_tag.insert(s.config.clone(), per_frame(s)).is_some() {
            return Err(Error::FrameSetMismatch(format!(
                "configuration `{}` appears in more than one input",
                s.config
            ))
            .into());
        }
    }
    let mut runs = by_tag.iter();
    let Some((first_tag, first)) = runs.next() else {
        return Err(Error::Schema("the inputs hold no runs".into()).into());
    };
    let frames: BTreeSet<FrameId> = first.keys().copied().collect();
    for (tag, run) in runs {
        if !run.keys().copied().eq(frames.iter().copied()) {
            return Err(Error::FrameSetMismatch(format!(
                "`{tag}` and `{first_tag}` cover different frames"
            ))
            .into());
        }
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["frame_id".to_string(), "gt".to_string()];
    header.extend(by_tag.keys().map(|t| format!("est_{}", tag_slug(t))));
    w.write_record(&header)?;
    for id in &frames {
        let mut row = vec![id.to_string(), cell(first[id].0)];
        row.extend(by_tag.values().map(|run| cell(run[id].1)));
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn cmd_report(a: &ReportArgs) -> Result<()> {
    let mut summaries = Vec::new();
    for p in &a.inputs {
        summaries.extend(load_summaries(p)?);
    }
    let merged = merge(&summaries)?;
    match &a.out {
        Some(p) => {
            fs::write(p, &merged).with_context(|| format!("writing {}", p.display()))?;
            summaries.sort_by(|x, y| x.config.cmp(&y.config));
            print!("{}", format_table(&summaries));
        }
        None => {
            use io::Write;
            io::stdout().write_all(merged.as_bytes())?;
        }
    }
    Ok(())
}
