//! Region masks and the pixel regions they select.
//!
//! Masks arrive in two ways: as binary bitmaps produced by an external
//! segmentation step, or built geometrically from eye landmarks (eye
//! contour polygon minus the iris disc) for the sclera. Either way the
//! result is a [`RegionMask`] that [`apply_mask`] turns into the
//! [`PixelRegion`] the quality scores consume.

use alloc::vec::Vec;

use crate::error::Error;
use crate::image::RgbImage;
use crate::quality::PixelRegion;

/// Default minimum pixel count for a usable sclera region.
pub const DEFAULT_MIN_SCLERA_PIXELS: usize = 32;
/// Default minimum pixel count for a usable face-skin region.
pub const DEFAULT_MIN_SKIN_PIXELS: usize = 256;

/// Per-pixel region membership for an image of matching dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl RegionMask {
    /// Wraps a row-major membership buffer of length `width * height`.
    pub fn new(width: u32, height: u32, bits: Vec<bool>) -> Result<Self, Error> {
        let expected = width as usize * height as usize;
        if bits.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: bits.len(),
            });
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                bits.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        debug_assert!(x < self.width && y < self.height);
        self.bits[y as usize * self.width as usize + x as usize]
    }

    /// Number of pixels the mask selects.
    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Ok iff the mask selects at least `min_region_pixels` pixels.
pub fn validate_mask(mask: &RegionMask, min_region_pixels: usize) -> Result<(), Error> {
    let pixels = mask.popcount();
    if pixels == 0 {
        return Err(Error::ZeroAreaMask);
    }
    if pixels < min_region_pixels {
        return Err(Error::RegionTooSmall {
            pixels,
            min_pixels: min_region_pixels,
        });
    }
    Ok(())
}

/// Collects the image pixels the mask selects, in row-major order.
///
/// The image and mask must have identical dimensions and the mask must
/// select at least `min_region_pixels` pixels.
pub fn apply_mask(
    image: &RgbImage,
    mask: &RegionMask,
    min_region_pixels: usize,
) -> Result<PixelRegion, Error> {
    if image.width() != mask.width() || image.height() != mask.height() {
        return Err(Error::DimensionMismatch {
            expected: image.pixel_count(),
            actual: mask.width() as usize * mask.height() as usize,
        });
    }
    validate_mask(mask, min_region_pixels)?;
    let mut pixels = Vec::with_capacity(mask.popcount());
    for y in 0..image.height() {
        for x in 0..image.width() {
            if mask.get(x, y) {
                pixels.push(image.pixel(x, y));
            }
        }
    }
    PixelRegion::new(pixels)
}

/// Eye contour polygon plus iris circle, in pixel coordinates.
///
/// The sclera is the part of the contour not covered by the iris disc.
#[derive(Debug, Clone, PartialEq)]
pub struct EyeAnnotation {
    polygon: Vec<[f64; 2]>,
    iris_center: [f64; 2],
    iris_radius: f64,
}

impl EyeAnnotation {
    /// Validates the polygon (at least four points, no repeated
    /// consecutive points, non-self-intersecting) and the iris radius.
    pub fn new(
        polygon: Vec<[f64; 2]>,
        iris_center: [f64; 2],
        iris_radius: f64,
    ) -> Result<Self, Error> {
        if polygon.len() < 4 {
            return Err(Error::InvalidPolygon("fewer than four points"));
        }
        let n = polygon.len();
        for i in 0..n {
            if polygon[i] == polygon[(i + 1) % n] {
                return Err(Error::InvalidPolygon("repeated consecutive points"));
            }
        }
        if polygon_self_intersects(&polygon) {
            return Err(Error::InvalidPolygon("polygon intersects itself"));
        }
        if !iris_radius.is_finite() || iris_radius <= 0.0 {
            return Err(Error::InvalidParameter("iris radius must be positive"));
        }
        Ok(Self {
            polygon,
            iris_center,
            iris_radius,
        })
    }

    pub fn polygon(&self) -> &[[f64; 2]] {
        &self.polygon
    }

    pub fn iris_center(&self) -> [f64; 2] {
        self.iris_center
    }

    pub fn iris_radius(&self) -> f64 {
        self.iris_radius
    }
}

/// Rasterizes the sclera of one or more eyes onto a `width` x `height`
/// pixel grid.
///
/// A pixel belongs to the mask iff its center `(x + 0.5, y + 0.5)` lies
/// inside any eye polygon under the even-odd rule and strictly farther
/// than the iris radius from every iris center. Errors with
/// `ZeroAreaMask` when nothing survives (for example when an iris disc
/// covers its whole polygon).
pub fn sclera_mask_from_landmarks(
    eyes: &[EyeAnnotation],
    width: u32,
    height: u32,
) -> Result<RegionMask, Error> {
    if eyes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mask = RegionMask::from_fn(width, height, |x, y| {
        let px = x as f64 + 0.5;
        let py = y as f64 + 0.5;
        let in_any_eye = eyes
            .iter()
            .any(|eye| point_in_polygon(&eye.polygon, px, py));
        if !in_any_eye {
            return false;
        }
        eyes.iter().all(|eye| {
            let dx = px - eye.iris_center[0];
            let dy = py - eye.iris_center[1];
            dx * dx + dy * dy > eye.iris_radius * eye.iris_radius
        })
    });
    if mask.popcount() == 0 {
        return Err(Error::ZeroAreaMask);
    }
    Ok(mask)
}

/// Even-odd (crossing number) point-in-polygon test.
fn point_in_polygon(polygon: &[[f64; 2]], px: f64, py: f64) -> bool {
    let n = polygon.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let [xi, yi] = polygon[i];
        let [xj, yj] = polygon[j];
        if (yi > py) != (yj > py) {
            let x_cross = xi + (py - yi) * (xj - xi) / (yj - yi);
            if px < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

/// Segment intersection including endpoint touches and collinear overlap.
fn segments_intersect(p1: [f64; 2], p2: [f64; 2], p3: [f64; 2], p4: [f64; 2]) -> bool {
    let d1 = cross(p3, p4, p1);
    let d2 = cross(p3, p4, p2);
    let d3 = cross(p1, p2, p3);
    let d4 = cross(p1, p2, p4);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p3, p4, p1))
        || (d2 == 0.0 && on_segment(p3, p4, p2))
        || (d3 == 0.0 && on_segment(p1, p2, p3))
        || (d4 == 0.0 && on_segment(p1, p2, p4))
}

/// True when any pair of non-adjacent edges intersects.
fn polygon_self_intersects(polygon: &[[f64; 2]]) -> bool {
    let n = polygon.len();
    for i in 0..n {
        let a1 = polygon[i];
        let a2 = polygon[(i + 1) % n];
        for j in (i + 1)..n {
            // Skip the shared-endpoint neighbours of edge i.
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let b1 = polygon[j];
            let b2 = polygon[(j + 1) % n];
            if segments_intersect(a1, a2, b1, b2) {
                return true;
            }
        }
    }
    false
}
