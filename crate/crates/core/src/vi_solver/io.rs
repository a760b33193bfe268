//! Text and binary dumps of solution fields.

use std::io::{self, Read, Write};

use super::{ObstacleProblemSpec, SolutionField};

pub const CHECKPOINT_MAGIC: &[u8; 9] = b"THINFREE1";

/// CSV with header `i,j,k,x,y,z,u`, one row per node in storage order.
pub fn write_grid_csv<W: Write>(field: &SolutionField, mut w: W) -> io::Result<()> {
    let d = &field.domain;
    let [nx, ny, nz] = d.dims();
    writeln!(w, "i,j,k,x,y,z,u")?;
    for i in 0..nx {
        for j in 0..ny {
            let y = if d.n() == 2 { d.coord(j) } else { 0.0 };
            for k in 0..nz {
                let u = field.values[d.index(i, j, k)];
                writeln!(w, "{},{},{},{},{},{},{}", i, j, k, d.coord(i), y, d.height(k), u)?;
            }
        }
    }
    Ok(())
}

/// CSV with header `i,j,x,y,u,phi` for the plane `z = 0`.
pub fn write_plane_csv<W: Write>(field: &SolutionField, spec: &ObstacleProblemSpec, mut w: W) -> io::Result<()> {
    let d = &field.domain;
    let [nx, ny, _] = d.dims();
    writeln!(w, "i,j,x,y,u,phi")?;
    for i in 0..nx {
        for j in 0..ny {
            let y = if d.n() == 2 { d.coord(j) } else { 0.0 };
            let p = d.plane_index(i, j);
            writeln!(w, "{},{},{},{},{},{}", i, j, d.coord(i), y, field.values[d.index(i, j, 0)], spec.obstacle[p])?;
        }
    }
    Ok(())
}

/// Magic, three little-endian `u64` dims, then little-endian `f64` values.
pub fn write_checkpoint<W: Write>(field: &SolutionField, mut w: W) -> io::Result<()> {
    w.write_all(CHECKPOINT_MAGIC)?;
    for dim in field.domain.dims() {
        w.write_all(&(dim as u64).to_le_bytes())?;
    }
    for v in &field.values {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Read a checkpoint back as `(dims, values)`.
pub fn read_checkpoint<R: Read>(mut r: R) -> io::Result<([usize; 3], Vec<f64>)> {
    let mut magic = [0u8; 9];
    r.read_exact(&mut magic)?;
    if &magic != CHECKPOINT_MAGIC {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "bad checkpoint magic"));
    }
    let mut dims = [0usize; 3];
    let mut buf = [0u8; 8];
    for d in dims.iter_mut() {
        r.read_exact(&mut buf)?;
        *d = u64::from_le_bytes(buf) as usize;
    }
    let count = dims.iter().product::<usize>();
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        r.read_exact(&mut buf)?;
        values.push(f64::from_le_bytes(buf));
    }
    Ok((dims, values))
}
