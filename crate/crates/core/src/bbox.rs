use std::fmt;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Image rectangle in continuous pixel coordinates, origin at the top-left
/// corner of the image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox2D {
    pub u_min: f64,
    pub v_min: f64,
    pub u_max: f64,
    pub v_max: f64,
}

impl BBox2D {
    pub fn new(u_min: f64, v_min: f64, u_max: f64, v_max: f64) -> Result<Self> {
        let b = BBox2D {
            u_min,
            v_min,
            u_max,
            v_max,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.u_min, self.v_min, self.u_max, self.v_max]
            .iter()
            .all(|x| x.is_finite());
        if !finite || !(self.u_min < self.u_max) || !(self.v_min < self.v_max) {
            return Err(Error::InvalidBox(self.to_string()));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.u_max - self.u_min
    }

    /// Pixel height of the box.
    pub fn height(&self) -> f64 {
        self.v_max - self.v_min
    }

    pub fn center(&self) -> Vector2<f64> {
        Vector2::new(
            (self.u_min + self.u_max) / 2.0,
            (self.v_min + self.v_max) / 2.0,
        )
    }

    /// Snaps every edge to the nearest integer pixel boundary, as a human
    /// annotator or a detector head would. `None` if the box collapses.
    pub fn rounded(&self) -> Option<BBox2D> {
        BBox2D::new(
            self.u_min.round(),
            self.v_min.round(),
            self.u_max.round(),
            self.v_max.round(),
        )
        .ok()
    }

    pub fn scaled(&self, s: f64) -> Result<BBox2D> {
        BBox2D::new(
            self.u_min * s,
            self.v_min * s,
            self.u_max * s,
            self.v_max * s,
        )
    }

    /// Intersection with the `[0, width] x [0, height]` image rectangle.
    pub fn clip_to_image(&self, width: u32, height: u32) -> Option<BBox2D> {
        BBox2D::new(
            self.u_min.max(0.0),
            self.v_min.max(0.0),
            self.u_max.min(width as f64),
            self.v_max.min(height as f64),
        )
        .ok()
    }
}

impl fmt::Display for BBox2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}]",
            self.u_min, self.v_min, self.u_max, self.v_max
        )
    }
}
