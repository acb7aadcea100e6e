//! Depth maps and the distance estimators that read them.

pub mod codec;
pub mod estimator;

use crate::bbox::BBox2D;
use crate::error::{Error, Result};

pub use codec::{decode_depth_png, encode_depth_png, DEPTH_MAX_RANGE, DEPTH_QUANTUM};
pub use estimator::{
    estimate_distance, known_height_distance, DepthConfig, DepthEstimator, EstimateInput,
    EstimatorContext, EstimatorFactory, EstimatorRegistry, ExternalDepthMedian, GtDepthMedian,
    KnownHeight,
};

/// Per-pixel z-depth image, row-major. A value of 0 marks a pixel without
/// depth; every other value lies in `(0, max_range]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap {
    width: u32,
    height: u32,
    values: Vec<f32>,
    max_range: f64,
}

impl DepthMap {
    pub fn new(width: u32, height: u32, values: Vec<f32>, max_range: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDepthMap("empty image".into()));
        }
        if values.len() != width as usize * height as usize {
            return Err(Error::InvalidDepthMap(format!(
                "{} values for a {width}x{height} image",
                values.len()
            )));
        }
        if !(max_range > 0.0 && max_range.is_finite()) {
            return Err(Error::InvalidDepthMap(format!("max range {max_range}")));
        }
        for (index, &v) in values.iter().enumerate() {
            let v = v as f64;
            if !v.is_finite() || v < 0.0 || v > max_range {
                return Err(Error::DepthOutOfRange {
                    value: v,
                    index,
                    max_range,
                });
            }
        }
        Ok(DepthMap {
            width,
            height,
            values,
            max_range,
        })
    }

    pub fn filled(width: u32, height: u32, value: f32, max_range: f64) -> Result<Self> {
        Self::new(
            width,
            height,
            vec![value; width as usize * height as usize],
            max_range,
        )
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn max_range(&self) -> f64 {
        self.max_range
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn get(&self, u: u32, v: u32) -> f32 {
        self.values[v as usize * self.width as usize + u as usize]
    }

    /// Pixel columns (or rows) whose centers lie strictly inside `(lo, hi)`,
    /// limited to `0..n`.
    fn center_range(lo: f64, hi: f64, n: u32) -> std::ops::Range<u32> {
        let first = ((lo - 0.5).floor() + 1.0).max(0.0);
        let end = (hi - 0.5).ceil().min(n as f64);
        if end <= first {
            0..0
        } else {
            first as u32..end as u32
        }
    }

    /// Valid depths of all pixels whose centers lie strictly inside `b`.
    pub fn crop_values(&self, b: &BBox2D) -> Vec<f64> {
        let cols = Self::center_range(b.u_min, b.u_max, self.width);
        let rows = Self::center_range(b.v_min, b.v_max, self.height);
        let mut out = Vec::with_capacity(cols.len() * rows.len());
        for v in rows {
            let row = &self.values[v as usize * self.width as usize..][..self.width as usize];
            out.extend(
                row[cols.start as usize..cols.end as usize]
                    .iter()
                    .filter(|&&d| d > 0.0)
                    .map(|&d| d as f64),
            );
        }
        out
    }
}

/// Median; the mean of the two middle values for even counts.
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}

/// Median of the valid depths inside the box. `Ok(None)` when the crop holds
/// no valid pixel; an error when the box misses the image entirely.
pub fn crop_median_depth(d: &DepthMap, b: &BBox2D) -> Result<Option<f64>> {
    if b.clip_to_image(d.width, d.height).is_none() {
        return Err(Error::BoxOutsideImage(b.to_string(), d.width, d.height));
    }
    Ok(median(&mut d.crop_values(b)))
}
