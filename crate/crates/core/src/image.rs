use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Owned 8-bit RGB image, row-major, channels interleaved.
///
/// This is the in-memory pixel buffer every augmentation and masking
/// operation works on; decoding and encoding image files is left to the
/// companion crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl RgbImage {
    /// Wraps an interleaved RGB buffer. The buffer length must be
    /// exactly `width * height * 3`.
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self, Error> {
        let expected = width as usize * height as usize * 3;
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds an image where every pixel has the same color.
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Self {
        let n = width as usize * height as usize;
        let mut data = vec![0u8; n * 3];
        for px in data.chunks_exact_mut(3) {
            px.copy_from_slice(&rgb);
        }
        Self {
            width,
            height,
            data,
        }
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> Self {
        let mut data = Vec::with_capacity(width as usize * height as usize * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Number of pixels.
    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        debug_assert!(x < self.width && y < self.height);
        let i = (y as usize * self.width as usize + x as usize) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        debug_assert!(x < self.width && y < self.height);
        let i = (y as usize * self.width as usize + x as usize) * 3;
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    /// Raw interleaved RGB bytes.
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Pixels in row-major order.
    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    /// Applies a per-channel transform, preserving dimensions.
    pub fn map_channels(&self, f: impl Fn(u8) -> u8) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_wrong_buffer_length() {
        let err = RgbImage::new(2, 2, vec![0u8; 11]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 12,
                actual: 11
            }
        );
    }

    #[test]
    fn from_fn_matches_pixel_accessor() {
        let img = RgbImage::from_fn(3, 2, |x, y| [x as u8, y as u8, 7]);
        assert_eq!(img.pixel(2, 1), [2, 1, 7]);
        assert_eq!(img.pixel_count(), 6);
        assert_eq!(img.pixels().count(), 6);
    }

    #[test]
    fn map_channels_preserves_dimensions() {
        let img = RgbImage::filled(4, 3, [10, 20, 30]);
        let out = img.map_channels(|v| v.saturating_add(5));
        assert_eq!(out.width(), 4);
        assert_eq!(out.height(), 3);
        assert_eq!(out.pixel(0, 0), [15, 25, 35]);
    }
}
