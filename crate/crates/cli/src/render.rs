//! Thin-plane rasters as PGM images.

use std::io::{self, Write};

use thinfree_core::setgeom::export::{set_pixels, write_pgm};
use thinfree_core::{Polynomial, ThinSet};

/// Grey level of the zero level set on overlays.
pub const LEVEL_GREY: u8 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RasterStyle {
    Contact,
    Positivity,
    Overlay,
}

/// Pixels of `set` (255 in, 0 out); overlays additionally paint the nodes on
/// the zero level set of `level` mid-grey.
pub fn raster_pixels(set: &ThinSet, style: RasterStyle, level: Option<&Polynomial>) -> Vec<u8> {
    let mut px = set_pixels(set);
    if let (RasterStyle::Overlay, Some(p)) = (style, level) {
        let d = &set.domain;
        let [nx, ny, _] = d.dims();
        let vals: Vec<f64> = (0..d.plane_count()).map(|q| p.eval_unchecked(&d.plane_point(q))).collect();
        for q in 0..d.plane_count() {
            let on_level = vals[q] == 0.0 || (vals[q] < 0.0 && d.plane_neighbors(q).any(|m| vals[m] > 0.0));
            if on_level {
                let (i, j) = d.plane_ij(q);
                px[(ny - 1 - j) * nx + i] = LEVEL_GREY;
            }
        }
    }
    px
}

pub fn render_raster<W: Write>(set: &ThinSet, style: RasterStyle, level: Option<&Polynomial>, w: W) -> io::Result<()> {
    let [nx, ny, _] = set.domain.dims();
    write_pgm(nx, ny, &raster_pixels(set, style, level), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use thinfree_core::parse_poly;
    use thinfree_core::vi_solver::build_domain;

    #[test]
    fn full_and_empty_sets() {
        let d = build_domain(2, 1.0, 0.25).unwrap();
        assert!(raster_pixels(&ThinSet::full(&d), RasterStyle::Contact, None).iter().all(|&v| v == 255));
        assert!(raster_pixels(&ThinSet::empty(&d), RasterStyle::Positivity, None).iter().all(|&v| v == 0));
    }

    #[test]
    fn overlay_marks_the_level_set() {
        let d = build_domain(2, 1.0, 0.25).unwrap();
        let p = parse_poly("x1", 2).unwrap();
        let px = raster_pixels(&ThinSet::empty(&d), RasterStyle::Overlay, Some(&p));
        // the column x1 = 0 is grey, everything else black
        let [nx, _, _] = d.dims();
        for (k, &v) in px.iter().enumerate() {
            assert_eq!(v, if k % nx == 4 { LEVEL_GREY } else { 0 });
        }
        let mut out = Vec::new();
        render_raster(&ThinSet::empty(&d), RasterStyle::Overlay, Some(&p), &mut out).unwrap();
        assert!(out.starts_with(b"P2\n9 9\n255\n"));
    }
}
