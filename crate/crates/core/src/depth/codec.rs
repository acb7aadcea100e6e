//! Depth images as single-channel 16-bit PNG.
//!
//! `meters = raw * 100 / 65535`; raw 0 means "no depth".

use std::io::Cursor;
use std::path::Path;

use super::DepthMap;
use crate::error::{Error, Result};

pub const DEPTH_MAX_RANGE: f64 = 100.0;
/// Size of one raw step in meters.
pub const DEPTH_QUANTUM: f64 = DEPTH_MAX_RANGE / 65535.0;

fn png_err(e: impl std::fmt::Display) -> Error {
    Error::DepthFormat(e.to_string())
}

/// Raw code for a depth value. Positive depths never map to the invalid
/// code 0, even below half a quantum.
pub fn depth_to_raw(meters: f64) -> u16 {
    if meters <= 0.0 {
        return 0;
    }
    ((meters * 65535.0 / DEPTH_MAX_RANGE).round() as u16).max(1)
}

pub fn raw_to_depth(raw: u16) -> f64 {
    raw as f64 * DEPTH_MAX_RANGE / 65535.0
}

pub fn encode_depth_png(d: &DepthMap) -> Result<Vec<u8>> {
    let mut data = Vec::with_capacity(d.values().len() * 2);
    for (index, &v) in d.values().iter().enumerate() {
        let v = v as f64;
        if !(0.0..=DEPTH_MAX_RANGE).contains(&v) {
            return Err(Error::DepthOutOfRange {
                value: v,
                index,
                max_range: DEPTH_MAX_RANGE,
            });
        }
        data.extend_from_slice(&depth_to_raw(v).to_be_bytes());
    }
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, d.width(), d.height());
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Sixteen);
        enc.set_compression(png::Compression::Default);
        let mut writer = enc.write_header().map_err(png_err)?;
        writer.write_image_data(&data).map_err(png_err)?;
        writer.finish().map_err(png_err)?;
    }
    Ok(out)
}

fn check_header(info: &png::Info<'_>) -> Result<()> {
    if info.color_type != png::ColorType::Grayscale {
        return Err(Error::DepthFormat(format!(
            "expected single-channel grayscale, found {:?}",
            info.color_type
        )));
    }
    if info.bit_depth != png::BitDepth::Sixteen {
        return Err(Error::DepthFormat(format!(
            "expected 16-bit samples, found {:?}",
            info.bit_depth
        )));
    }
    Ok(())
}

fn decoder(bytes: &[u8]) -> png::Decoder<Cursor<&[u8]>> {
    let mut dec = png::Decoder::new(Cursor::new(bytes));
    dec.set_transformations(png::Transformations::IDENTITY);
    dec
}

pub fn decode_depth_png(bytes: &[u8]) -> Result<DepthMap> {
    let mut reader = decoder(bytes).read_info().map_err(png_err)?;
    check_header(reader.info())?;
    let (width, height) = reader.info().size();
    let mut buf = vec![0u8; reader.output_buffer_size()];
    let frame = reader.next_frame(&mut buf).map_err(png_err)?;
    let row_bytes = width as usize * 2;
    if frame.line_size != row_bytes {
        return Err(Error::DepthFormat(format!(
            "unexpected row stride {} for width {width}",
            frame.line_size
        )));
    }
    let values = buf[..row_bytes * height as usize]
        .chunks_exact(2)
        .map(|b| raw_to_depth(u16::from_be_bytes([b[0], b[1]])) as f32)
        .collect();
    DepthMap::new(width, height, values, DEPTH_MAX_RANGE)
}

/// Reads only the header of a depth file and returns its size.
pub fn probe_depth_png(path: &Path) -> Result<(u32, u32)> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::io(format!("opening {}", path.display()), e))?;
    let reader = png::Decoder::new(std::io::BufReader::new(file))
        .read_info()
        .map_err(|e| Error::DepthFormat(format!("{}: {e}", path.display())))?;
    check_header(reader.info())
        .map_err(|e| Error::DepthFormat(format!("{}: {e}", path.display())))?;
    Ok(reader.info().size())
}
