//! Distance estimators behind a common trait, registered by name.
//!
//! Built-in configurations:
//!
//! | tag        | estimator                                                     |
//! |------------|---------------------------------------------------------------|
//! | `kh`       | known object height, vertical focal length and box height     |
//! | `gt_depth` | median of the frame's own (ground-truth) depth map in the box |
//! | `ext:NAME` | median of `depth_ext_NAME/<id>.png` next to the dataset       |
//!
//! `ext:NAME=PATH` reads the depth files from `PATH` instead.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{crop_median_depth, DepthMap};
use crate::bbox::BBox2D;
use crate::camera::CameraIntrinsics;
use crate::error::{Error, Result};
use crate::frame::{depth_file_name, load_depth_file, FrameRecord};
use crate::object::ObjectSpec;

/// Distance along the optical axis to an object of known height whose image
/// spans `bbox_height` pixels.
pub fn known_height_distance(f_v: f64, object_height: f64, bbox_height: f64) -> Result<f64> {
    if !(bbox_height > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "box height must be positive, got {bbox_height}"
        )));
    }
    if !(f_v > 0.0) || !(object_height > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "focal length and object height must be positive (f_v = {f_v}, h = {object_height})"
        )));
    }
    Ok(object_height * f_v / bbox_height)
}

/// Everything an estimator may look at for one detection.
#[derive(Debug, Clone, Copy)]
pub struct EstimateInput<'a> {
    pub frame: &'a FrameRecord,
    pub bbox: &'a BBox2D,
    pub intrinsics: &'a CameraIntrinsics,
    pub object: &'a ObjectSpec,
}

pub trait DepthEstimator: Send + Sync {
    /// Canonical configuration tag, used to label results.
    fn tag(&self) -> String;

    /// Z-depth of the object's near face, or `None` when the estimator has
    /// no usable evidence for this box.
    fn estimate(&self, input: &EstimateInput<'_>) -> Result<Option<f64>>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct KnownHeight;

impl DepthEstimator for KnownHeight {
    fn tag(&self) -> String {
        "kh".into()
    }

    fn estimate(&self, input: &EstimateInput<'_>) -> Result<Option<f64>> {
        known_height_distance(
            input.intrinsics.f_v,
            input.object.height,
            input.bbox.height(),
        )
        .map(Some)
    }
}

fn check_resolution(d: &DepthMap, k: &CameraIntrinsics, what: &str) -> Result<()> {
    if d.width() != k.width || d.height() != k.height {
        return Err(Error::ResolutionMismatch(format!(
            "{what} is {}x{} but the camera is {}x{}",
            d.width(),
            d.height(),
            k.width,
            k.height
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GtDepthMedian;

impl DepthEstimator for GtDepthMedian {
    fn tag(&self) -> String {
        "gt_depth".into()
    }

    fn estimate(&self, input: &EstimateInput<'_>) -> Result<Option<f64>> {
        let d = input.frame.depth.load(input.frame.frame_id)?;
        check_resolution(&d, input.intrinsics, "ground-truth depth")?;
        crop_median_depth(&d, input.bbox)
    }
}

/// Median over depth maps produced outside this crate (e.g. by a depth
/// network), one `<frame_id:06>.png` per frame.
#[derive(Debug, Clone)]
pub struct ExternalDepthMedian {
    pub name: String,
    pub dir: PathBuf,
}

impl DepthEstimator for ExternalDepthMedian {
    fn tag(&self) -> String {
        format!("ext:{}", self.name)
    }

    fn estimate(&self, input: &EstimateInput<'_>) -> Result<Option<f64>> {
        let path = self.dir.join(depth_file_name(input.frame.frame_id));
        let d = load_depth_file(input.frame.frame_id, &path)?;
        check_resolution(&d, input.intrinsics, &path.display().to_string())?;
        crop_median_depth(&d, input.bbox)
    }
}

/// A configuration tag, `name` or `name:arg`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DepthConfig {
    pub name: String,
    pub arg: Option<String>,
}

impl DepthConfig {
    pub fn known_height() -> Self {
        DepthConfig {
            name: "kh".into(),
            arg: None,
        }
    }

    pub fn gt_depth() -> Self {
        DepthConfig {
            name: "gt_depth".into(),
            arg: None,
        }
    }

    pub fn external(name: &str) -> Self {
        DepthConfig {
            name: "ext".into(),
            arg: Some(name.into()),
        }
    }
}

impl FromStr for DepthConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a.to_string())),
            None => (s, None),
        };
        if name.is_empty() || arg.as_deref() == Some("") {
            return Err(Error::UnknownEstimator(
                s.into(),
                "empty name or argument".into(),
            ));
        }
        Ok(DepthConfig {
            name: name.to_string(),
            arg,
        })
    }
}

impl fmt::Display for DepthConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.arg {
            Some(a) => write!(f, "{}:{a}", self.name),
            None => f.write_str(&self.name),
        }
    }
}

/// What a factory may need to resolve its configuration.
#[derive(Debug, Clone, Default)]
pub struct EstimatorContext {
    pub dataset_root: Option<PathBuf>,
}

pub type EstimatorFactory =
    fn(arg: Option<&str>, ctx: &EstimatorContext) -> Result<Box<dyn DepthEstimator>>;

struct Entry {
    factory: EstimatorFactory,
    takes_arg: bool,
}

pub struct EstimatorRegistry {
    entries: BTreeMap<String, Entry>,
    aliases: BTreeMap<String, String>,
}

fn no_arg(name: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        Some(a) => Err(Error::UnknownEstimator(
            format!("{name}:{a}"),
            format!("`{name}` takes no argument"),
        )),
        None => Ok(()),
    }
}

fn make_known_height(arg: Option<&str>, _: &EstimatorContext) -> Result<Box<dyn DepthEstimator>> {
    no_arg("kh", arg)?;
    Ok(Box::new(KnownHeight))
}

fn make_gt_depth(arg: Option<&str>, _: &EstimatorContext) -> Result<Box<dyn DepthEstimator>> {
    no_arg("gt_depth", arg)?;
    Ok(Box::new(GtDepthMedian))
}

fn make_external(arg: Option<&str>, ctx: &EstimatorContext) -> Result<Box<dyn DepthEstimator>> {
    let arg = arg.ok_or_else(|| {
        Error::InvalidArgument("`ext` needs a name, e.g. `ext:densedepth`".into())
    })?;
    let (name, dir) = match arg.split_once('=') {
        Some((name, path)) => (name, PathBuf::from(path)),
        None => {
            let root = ctx.dataset_root.as_ref().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "`ext:{arg}` needs a dataset directory or an explicit `=PATH`"
                ))
            })?;
            (arg, root.join(format!("depth_ext_{arg}")))
        }
    };
    if name.is_empty()
        || !name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
    {
        return Err(Error::InvalidArgument(format!(
            "bad external depth name `{name}`"
        )));
    }
    Ok(Box::new(ExternalDepthMedian {
        name: name.to_string(),
        dir,
    }))
}

impl EstimatorRegistry {
    pub fn empty() -> Self {
        EstimatorRegistry {
            entries: BTreeMap::new(),
            aliases: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("kh", false, make_known_height)
            .expect("fresh registry");
        r.register("gt_depth", false, make_gt_depth)
            .expect("fresh registry");
        r.register("ext", true, make_external)
            .expect("fresh registry");
        for (alias, name) in [
            ("known-height", "kh"),
            ("gt", "gt_depth"),
            ("gt-depth", "gt_depth"),
            ("gt-depth-median", "gt_depth"),
            ("external-depth-median", "ext"),
        ] {
            r.aliases.insert(alias.into(), name.into());
        }
        r
    }

    pub fn register(
        &mut self,
        name: &str,
        takes_arg: bool,
        factory: EstimatorFactory,
    ) -> Result<()> {
        if self.entries.contains_key(name) || self.aliases.contains_key(name) {
            return Err(Error::DuplicateEstimator(name.into()));
        }
        self.entries
            .insert(name.into(), Entry { factory, takes_arg });
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    fn known(&self) -> String {
        self.entries
            .iter()
            .map(|(n, e)| {
                if e.takes_arg {
                    format!("{n}:ARG")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn lookup(&self, cfg: &DepthConfig) -> Result<&Entry> {
        let name = self.aliases.get(&cfg.name).unwrap_or(&cfg.name);
        self.entries
            .get(name)
            .ok_or_else(|| Error::UnknownEstimator(cfg.to_string(), self.known()))
    }

    pub fn create(
        &self,
        cfg: &DepthConfig,
        ctx: &EstimatorContext,
    ) -> Result<Box<dyn DepthEstimator>> {
        (self.lookup(cfg)?.factory)(cfg.arg.as_deref(), ctx)
    }

    /// Parses and resolves a tag in one step.
    pub fn create_from_tag(
        &self,
        tag: &str,
        ctx: &EstimatorContext,
    ) -> Result<Box<dyn DepthEstimator>> {
        self.create(&tag.parse()?, ctx)
    }
}

impl Default for EstimatorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// Resolves `cfg` against the built-in registry and runs it once.
pub fn estimate_distance(
    cfg: &DepthConfig,
    frame: &FrameRecord,
    bbox: &BBox2D,
    intrinsics: &CameraIntrinsics,
    object: &ObjectSpec,
) -> Result<Option<f64>> {
    let est = EstimatorRegistry::with_builtins().create(cfg, &EstimatorContext::default())?;
    est.estimate(&EstimateInput {
        frame,
        bbox,
        intrinsics,
        object,
    })
}
