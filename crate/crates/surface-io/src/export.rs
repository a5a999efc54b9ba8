//! Mesh exporters: ASCII OBJ and PLY for geometry, RFC 4180 CSV for the
//! full sample table.
//!
//! Output is deterministic: identical meshes serialize to identical bytes.
//! Geometry formats round to 9 decimal places; the CSV uses the shortest
//! round-trip decimal form, so re-parsing reproduces every value bit for
//! bit.

use std::io::Write;

use crate::mesh::SurfaceMesh;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
    Csv,
}

impl MeshFormat {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "obj" => Some(MeshFormat::Obj),
            "ply" => Some(MeshFormat::Ply),
            "csv" => Some(MeshFormat::Csv),
            _ => None,
        }
    }
}

struct CountingWriter<W: Write> {
    inner: W,
    count: u64,
}

impl<W: Write> Write for CountingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.count += n as u64;
        Ok(n)
    }
    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

/// Serialize `mesh` into `sink`; returns the number of bytes written.
pub fn export_mesh<W: Write>(mesh: &SurfaceMesh, format: MeshFormat, sink: W) -> Result<u64> {
    let mut w = CountingWriter { inner: sink, count: 0 };
    match format {
        MeshFormat::Obj => write_obj(mesh, &mut w)?,
        MeshFormat::Ply => write_ply(mesh, &mut w)?,
        MeshFormat::Csv => write_csv_rows(mesh.samples.iter(), &mut w)?,
    }
    w.flush()?;
    Ok(w.count)
}

fn write_obj<W: Write>(mesh: &SurfaceMesh, w: &mut W) -> Result<()> {
    let p = &mesh.provenance;
    writeln!(w, "# {} nx={} ns={} tol={}", p.source, p.nx, p.ns, p.tol)?;
    if let Some(r) = p.ball_radius {
        writeln!(w, "# ball_radius={r}")?;
    }
    for s in &mesh.samples {
        writeln!(w, "v {:.9} {:.9} {:.9}", s.position[0], s.position[1], s.position[2])?;
    }
    for t in &mesh.triangles {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    Ok(())
}

fn write_ply<W: Write>(mesh: &SurfaceMesh, w: &mut W) -> Result<()> {
    let p = &mesh.provenance;
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "comment {} nx={} ns={} tol={}", p.source, p.nx, p.ns, p.tol)?;
    if let Some(r) = p.ball_radius {
        writeln!(w, "comment ball_radius={r}")?;
    }
    writeln!(w, "element vertex {}", mesh.samples.len())?;
    for name in ["x", "y", "z", "nx", "ny", "nz", "quality"] {
        writeln!(w, "property double {name}")?;
    }
    writeln!(w, "element face {}", mesh.triangles.len())?;
    writeln!(w, "property list uchar int vertex_indices")?;
    writeln!(w, "end_header")?;
    for s in &mesh.samples {
        writeln!(
            w,
            "{:.9} {:.9} {:.9} {:.9} {:.9} {:.9} {:.9e}",
            s.position[0],
            s.position[1],
            s.position[2],
            s.normal[0],
            s.normal[1],
            s.normal[2],
            s.second_fundamental_norm_sq,
        )?;
    }
    for t in &mesh.triangles {
        writeln!(w, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    Ok(())
}

/// CSV rows for any sample sequence (meshes and slices share the schema).
pub fn write_csv_rows<'a, W: Write>(
    samples: impl Iterator<Item = &'a wrep_core::weierstrass::SurfaceSample>,
    w: &mut W,
) -> Result<()> {
    write!(w, "x,y,F1,F2,F3,u,v,K\r\n")?;
    for s in samples {
        write!(
            w,
            "{},{},{},{},{},{},{},{}\r\n",
            s.param.re,
            s.param.im,
            s.position[0],
            s.position[1],
            s.position[2],
            s.exponent.re,
            s.exponent.im,
            s.gauss_curvature,
        )?;
    }
    Ok(())
}
