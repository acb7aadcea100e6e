use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical size of the tracked object class, in meters. `height` is the
/// known real-world height used by the known-height estimator; `length`
/// gives the back-face to center offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub length: f64,
    pub width: f64,
    pub height: f64,
}

impl ObjectSpec {
    pub fn new(length: f64, width: f64, height: f64) -> Result<Self> {
        let o = ObjectSpec {
            length,
            width,
            height,
        };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<()> {
        let dims = [self.length, self.width, self.height];
        if dims.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "object dimensions must be positive, got {dims:?}"
            )));
        }
        Ok(())
    }
}

impl Default for ObjectSpec {
    /// Open-wheel race car.
    fn default() -> Self {
        ObjectSpec {
            length: 4.8,
            width: 2.0,
            height: 1.2,
        }
    }
}
