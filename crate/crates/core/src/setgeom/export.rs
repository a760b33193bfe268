//! PGM and CSV renderings of plane sets.

use std::io::{self, Write};

use super::ThinSet;

/// Grey level per plane node in image order: columns follow `i` (x
/// increasing), rows follow `j` from the top (y decreasing).
pub fn set_pixels(set: &ThinSet) -> Vec<u8> {
    let d = &set.domain;
    let [nx, ny, _] = d.dims();
    let mut px = Vec::with_capacity(nx * ny);
    for r in 0..ny {
        let j = ny - 1 - r;
        for i in 0..nx {
            px.push(if set.mask[d.plane_index(i, j)] { 255 } else { 0 });
        }
    }
    px
}

/// Plain (P2) PGM, 255 levels, at most 16 values per line.
pub fn write_pgm<W: Write>(width: usize, height: usize, pixels: &[u8], mut w: W) -> io::Result<()> {
    assert_eq!(pixels.len(), width * height);
    writeln!(w, "P2")?;
    writeln!(w, "{width} {height}")?;
    writeln!(w, "255")?;
    for row in pixels.chunks(width) {
        for line in row.chunks(16) {
            let text: Vec<String> = line.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", text.join(" "))?;
        }
    }
    Ok(())
}

pub fn write_set_pgm<W: Write>(set: &ThinSet, w: W) -> io::Result<()> {
    let [nx, ny, _] = set.domain.dims();
    write_pgm(nx, ny, &set_pixels(set), w)
}

/// CSV with header `i,j,x,y,in`.
pub fn write_set_csv<W: Write>(set: &ThinSet, mut w: W) -> io::Result<()> {
    let d = &set.domain;
    let [nx, ny, _] = d.dims();
    writeln!(w, "i,j,x,y,in")?;
    for i in 0..nx {
        for j in 0..ny {
            let y = if d.n() == 2 { d.coord(j) } else { 0.0 };
            writeln!(w, "{},{},{},{},{}", i, j, d.coord(i), y, u8::from(set.mask[d.plane_index(i, j)]))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vi_solver::build_domain;

    #[test]
    fn full_and_empty_images() {
        let d = build_domain(2, 1.0, 0.5).unwrap();
        assert!(set_pixels(&ThinSet::full(&d)).iter().all(|&p| p == 255));
        assert!(set_pixels(&ThinSet::empty(&d)).iter().all(|&p| p == 0));
        let mut out = Vec::new();
        write_set_pgm(&ThinSet::full(&d), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("P2\n5 5\n255\n255 255 255 255 255\n"));
    }

    #[test]
    fn top_row_is_largest_y() {
        let d = build_domain(2, 1.0, 0.5).unwrap();
        let s = ThinSet::from_predicate(&d, |x| x[1] == 1.0);
        let px = set_pixels(&s);
        assert!(px[..5].iter().all(|&p| p == 255));
        assert!(px[5..].iter().all(|&p| p == 0));
    }

    #[test]
    fn csv_rows() {
        let d = build_domain(1, 1.0, 0.5).unwrap();
        let mut out = Vec::new();
        write_set_csv(&ThinSet::ball(&d, &[0.0], 0.0), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().nth(3).unwrap(), "2,0,0,0,1");
    }
}
