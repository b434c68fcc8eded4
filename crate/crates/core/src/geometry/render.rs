use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::hull::RatPoint;

/// Raster/vector export parameters.
#[derive(Debug, Clone, Copy)]
pub struct RasterParams {
    pub width: u32,
    pub height: u32,
    /// Margin in pixels around the point cloud.
    pub margin: u32,
}

impl Default for RasterParams {
    fn default() -> Self {
        RasterParams { width: 800, height: 800, margin: 16 }
    }
}

struct Frame {
    min: Vec<BigRational>,
    scale: BigRational,
    margin: i64,
    height: i64,
}

fn fit_frame(points: &[RatPoint], params: &RasterParams) -> Result<Frame> {
    if points.is_empty() {
        return Err(Error::invalid("no points to render"));
    }
    if points[0].len() != 2 {
        return Err(Error::invalid("rendering requires 2-D points"));
    }
    let mut min = points[0].clone();
    let mut max = points[0].clone();
    for p in points {
        for i in 0..2 {
            if p[i] < min[i] {
                min[i] = p[i].clone();
            }
            if p[i] > max[i] {
                max[i] = p[i].clone();
            }
        }
    }
    let spanx = &max[0] - &min[0];
    let spany = &max[1] - &min[1];
    let span = if spanx > spany { spanx } else { spany };
    let span = if span.is_zero() { BigRational::from_integer(BigInt::from(1)) } else { span };
    let usable = params.width.min(params.height).saturating_sub(2 * params.margin).max(1);
    let scale = BigRational::from_integer(BigInt::from(usable as i64)) / span;
    Ok(Frame {
        min,
        scale,
        margin: params.margin as i64,
        height: params.height as i64,
    })
}

impl Frame {
    fn to_pixel(&self, p: &RatPoint) -> (i64, i64) {
        let x = (&p[0] - &self.min[0]) * &self.scale;
        let y = (&p[1] - &self.min[1]) * &self.scale;
        let xi = x.floor().to_integer().to_i64().unwrap_or(0) + self.margin;
        let yi = y.floor().to_integer().to_i64().unwrap_or(0) + self.margin;
        // image rows grow downward; flip y
        (xi, self.height - 1 - yi)
    }
}

/// Binary 8-bit PGM (P5) with dark points on a white background.
pub fn render_pgm(points: &[RatPoint], params: &RasterParams) -> Result<Vec<u8>> {
    let frame = fit_frame(points, params)?;
    let w = params.width as usize;
    let h = params.height as usize;
    let mut img = vec![255u8; w * h];
    for p in points {
        let (x, y) = frame.to_pixel(p);
        if x >= 0 && (x as usize) < w && y >= 0 && (y as usize) < h {
            img[y as usize * w + x as usize] = 0;
        }
    }
    let mut out = Vec::with_capacity(img.len() + 32);
    out.extend_from_slice(format!("P5\n{} {}\n255\n", w, h).as_bytes());
    out.extend_from_slice(&img);
    Ok(out)
}

/// SVG 1.1 with one square per cloud point. `cell` is the world-coordinate
/// side of the squares (the natural choice is `‖L‖^{-n}` at level `n`).
pub fn render_svg(points: &[RatPoint], params: &RasterParams, cell: &BigRational) -> Result<String> {
    let frame = fit_frame(points, params)?;
    let side_px = {
        let s = cell * &frame.scale;
        let v = s.to_f64().unwrap_or(1.0);
        if v < 0.5 {
            0.5
        } else {
            v
        }
    };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        params.width, params.height, params.width, params.height
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for p in points {
        let (x, y) = frame.to_pixel(p);
        svg.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"black\"/>\n",
            x, y, side_px, side_px
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Helper for choosing the SVG cell size: an upper bound of `‖L^{-1}‖^n`.
pub fn natural_cell(sub: &crate::substitution::Substitution, n: u32) -> BigRational {
    let linv = crate::lattice::numeric::opnorm_inv_upper(sub.matrix())
        .unwrap_or_else(|_| BigRational::from_integer(BigInt::from(1)));
    let mut cell = BigRational::from_integer(BigInt::from(1));
    for _ in 0..n {
        cell *= &linv;
    }
    if cell.is_negative() {
        -cell
    } else {
        cell
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::tile_points;
    use crate::substitution::test_subs::twin_dragon;

    #[test]
    fn pgm_has_header_and_size() {
        let s = twin_dragon();
        let t = tile_points(&s, 8, 1 << 22).unwrap();
        assert_eq!(t.points.len(), 256);
        let params = RasterParams { width: 64, height: 64, margin: 2 };
        let img = render_pgm(&t.points, &params).unwrap();
        assert!(img.starts_with(b"P5\n64 64\n255\n"));
        assert_eq!(img.len(), b"P5\n64 64\n255\n".len() + 64 * 64);
        // some pixel is dark
        assert!(img[b"P5\n64 64\n255\n".len()..].iter().any(|&b| b == 0));
    }

    #[test]
    fn svg_is_well_formed() {
        let s = twin_dragon();
        let t = tile_points(&s, 5, 1 << 22).unwrap();
        let svg = render_svg(&t.points, &RasterParams::default(), &natural_cell(&s, 5)).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect").count(), t.points.len() + 1);
    }
}
