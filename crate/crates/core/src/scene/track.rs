use std::f64::consts::PI;

use crate::camera::normalize_angle;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Straight {
        length: f64,
    },
    /// Circular arc; positive sweep turns left.
    Arc {
        radius: f64,
        sweep: f64,
    },
}

impl Segment {
    pub fn length(&self) -> f64 {
        match *self {
            Segment::Straight { length } => length,
            Segment::Arc { radius, sweep } => radius * sweep.abs(),
        }
    }
}

/// Planar point on the centerline with its tangent heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterlinePoint {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

impl CenterlinePoint {
    fn advance(&self, seg: &Segment, s: f64) -> CenterlinePoint {
        match *seg {
            Segment::Straight { .. } => CenterlinePoint {
                x: self.x + s * self.heading.cos(),
                y: self.y + s * self.heading.sin(),
                heading: self.heading,
            },
            Segment::Arc { radius, sweep } => {
                let signed_radius = radius * sweep.signum();
                let turned = s / signed_radius;
                let h = self.heading + turned;
                CenterlinePoint {
                    x: self.x + signed_radius * (h.sin() - self.heading.sin()),
                    y: self.y + signed_radius * (self.heading.cos() - h.cos()),
                    heading: normalize_angle(h),
                }
            }
        }
    }
}

/// Chain of straights and arcs starting at the origin heading along +x.
/// Each segment starts where the previous one ends, with the same tangent.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackSpec {
    segments: Vec<Segment>,
    starts: Vec<(f64, CenterlinePoint)>,
    length: f64,
}

impl TrackSpec {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::DegenerateTrack("no segments".into()));
        }
        for seg in &segments {
            let ok = match *seg {
                Segment::Straight { length } => length.is_finite() && length > 0.0,
                Segment::Arc { radius, sweep } => {
                    radius.is_finite() && radius > 0.0 && sweep.is_finite() && sweep != 0.0
                }
            };
            if !ok {
                return Err(Error::DegenerateTrack(format!("invalid segment {seg:?}")));
            }
        }
        let mut starts = Vec::with_capacity(segments.len());
        let mut at = CenterlinePoint {
            x: 0.0,
            y: 0.0,
            heading: 0.0,
        };
        let mut s0 = 0.0;
        for seg in &segments {
            starts.push((s0, at));
            at = at.advance(seg, seg.length());
            s0 += seg.length();
        }
        Ok(TrackSpec {
            segments,
            starts,
            length: s0,
        })
    }

    pub fn straight(length: f64) -> Result<Self> {
        Self::new(vec![Segment::Straight { length }])
    }

    /// Lead-in straight, a left arc, an equal right arc and a closing
    /// straight that brings the total to at least `min_length`.
    pub fn left_right_straight(
        radius: f64,
        sweep: f64,
        lead_in: f64,
        min_length: f64,
    ) -> Result<Self> {
        let curves = 2.0 * radius * sweep.abs();
        let tail = (min_length - lead_in - curves).max(lead_in).max(1.0);
        Self::new(vec![
            Segment::Straight { length: lead_in },
            Segment::Arc { radius, sweep },
            Segment::Arc {
                radius,
                sweep: -sweep,
            },
            Segment::Straight { length: tail },
        ])
    }

    /// Named layouts: `straight` and `left-right-straight` (60 degree arcs).
    pub fn preset(name: &str, radius: f64, min_length: f64) -> Result<Self> {
        match name {
            "straight" => Self::straight(min_length.max(1.0)),
            "left-right-straight" => Self::left_right_straight(radius, PI / 3.0, 20.0, min_length),
            other => Err(Error::InvalidArgument(format!(
                "unknown track preset `{other}` (known: straight, left-right-straight)"
            ))),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Index of the segment containing arc length `s` (the later one at a
    /// boundary).
    pub fn segment_index(&self, s: f64) -> usize {
        self.starts
            .iter()
            .rposition(|(s0, _)| *s0 <= s)
            .unwrap_or(0)
    }

    /// Centerline point at arc length `s`; `None` outside `[0, length]`.
    pub fn point_at(&self, s: f64) -> Option<CenterlinePoint> {
        if !(0.0..=self.length).contains(&s) {
            return None;
        }
        let i = self.segment_index(s);
        let (s0, start) = self.starts[i];
        Some(start.advance(&self.segments[i], s - s0))
    }
}
